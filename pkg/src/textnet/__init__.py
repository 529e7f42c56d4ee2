"""Text-to-network toolkit: corpora, similarity and hyperlink networks, network statistics."""

from .graph import EX, Network, is_external
from .formats import read_network, write_network

__version__ = "0.1.0"

__all__ = ["EX", "Network", "is_external", "read_network", "write_network", "__version__"]
