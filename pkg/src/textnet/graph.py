"""Attributed directed/undirected graph with the external-node convention.

Node ids are always strings; integers passed in are converted. A node
whose id is ``EX`` or ``EX`` followed by digits (``EX8``) stands for
documents outside the corpus, and its edges count as external links.

Parallel edges are stored once with a ``count`` attribute.
"""

from __future__ import annotations

import math
import re
from collections import deque
from pathlib import Path

from .errors import NotFoundError, ParseError

__all__ = ["EX", "is_external", "Network", "subset_network", "hyperlink_network"]

EX = "EX"
_EX_PATTERN = re.compile(r"EX\d*")


def is_external(node) -> bool:
    return _EX_PATTERN.fullmatch(str(node)) is not None


class Network:
    def __init__(self, directed: bool = True, name: str | None = None):
        self.directed = directed
        self.name = name
        self._nodes: dict[str, dict] = {}
        self._succ: dict[str, dict[str, dict]] = {}
        self._pred: dict[str, dict[str, dict]] = {} if directed else self._succ
        self._edges: dict[tuple[str, str], dict] = {}

    # -- nodes ---------------------------------------------------------

    def add_node(self, node, **attrs) -> str:
        node = str(node)
        if node not in self._nodes:
            self._nodes[node] = {}
            self._succ[node] = {}
            if self.directed:
                self._pred[node] = {}
        self._nodes[node].update(attrs)
        return node

    def has_node(self, node) -> bool:
        return str(node) in self._nodes

    def _require(self, node) -> str:
        node = str(node)
        if node not in self._nodes:
            raise NotFoundError(f"no node {node!r}")
        return node

    def remove_node(self, node) -> None:
        node = self._require(node)
        for v in list(self._succ[node]):
            self.remove_edge(node, v)
        if self.directed:
            for u in list(self._pred[node]):
                self.remove_edge(u, node)
        del self._nodes[node]
        del self._succ[node]
        if self.directed:
            del self._pred[node]

    def nodes(self) -> list[str]:
        return list(self._nodes)

    def node_attributes(self, node) -> dict:
        return self._nodes[self._require(node)]

    def get_node_attribute(self, node, name, default=None):
        return self.node_attributes(node).get(name, default)

    def set_node_attribute(self, node, name, value) -> None:
        self.node_attributes(node)[name] = value

    def set_node_weight(self, node, weight) -> None:
        self.set_node_attribute(node, "weight", weight)

    def get_node_weight(self, node):
        return self.get_node_attribute(node, "weight")

    # -- edges ---------------------------------------------------------

    def _edge_key(self, u: str, v: str):
        if (u, v) in self._edges:
            return (u, v)
        if not self.directed and (v, u) in self._edges:
            return (v, u)
        return None

    def add_edge(self, u, v, weight=None, **attrs) -> None:
        u = self.add_node(u)
        v = self.add_node(v)
        key = self._edge_key(u, v)
        if key is not None:
            data = self._edges[key]
            data["count"] = data.get("count", 1) + 1
        else:
            data = {"count": 1}
            self._edges[(u, v)] = data
            self._succ[u][v] = data
            self._pred[v][u] = data
        if weight is not None:
            data["weight"] = float(weight)
        data.update(attrs)

    def has_edge(self, u, v) -> bool:
        return self._edge_key(str(u), str(v)) is not None

    def remove_edge(self, u, v) -> None:
        u, v = str(u), str(v)
        key = self._edge_key(u, v)
        if key is None:
            raise NotFoundError(f"no edge {u!r} -> {v!r}")
        a, b = key
        del self._edges[key]
        del self._succ[a][b]
        self._pred[b].pop(a, None)

    def edges(self) -> list[tuple[str, str]]:
        return list(self._edges)

    def edge_items(self):
        return self._edges.items()

    def edge_attributes(self, u, v) -> dict:
        key = self._edge_key(str(u), str(v))
        if key is None:
            raise NotFoundError(f"no edge {u!r} -> {v!r}")
        return self._edges[key]

    def get_edge_attribute(self, u, v, name, default=None):
        return self.edge_attributes(u, v).get(name, default)

    def set_edge_attribute(self, u, v, name, value) -> None:
        self.edge_attributes(u, v)[name] = value

    def get_edge_weight(self, u, v):
        return self.get_edge_attribute(u, v, "weight")

    def set_edge_weight(self, u, v, weight) -> None:
        self.set_edge_attribute(u, v, "weight", float(weight))

    def has_weights(self) -> bool:
        return any("weight" in d for d in self._edges.values())

    # -- adjacency -----------------------------------------------------

    def successors(self, node) -> list[str]:
        return list(self._succ[self._require(node)])

    def predecessors(self, node) -> list[str]:
        return list(self._pred[self._require(node)])

    def neighbors(self, node) -> set[str]:
        """Neighbors in the undirected view, without the node itself."""
        node = self._require(node)
        nbrs = set(self._succ[node]) | set(self._pred[node])
        nbrs.discard(node)
        return nbrs

    def out_degree(self, node) -> int:
        node = self._require(node)
        return sum(1 + (v == node and not self.directed) for v in self._succ[node])

    def in_degree(self, node) -> int:
        if not self.directed:
            return self.out_degree(node)
        return len(self._pred[self._require(node)])

    def degree(self, node) -> int:
        """Total degree: in + out for directed graphs, plain degree otherwise."""
        if self.directed:
            return self.in_degree(node) + self.out_degree(node)
        return self.out_degree(node)

    # -- counts --------------------------------------------------------

    def num_nodes(self) -> int:
        return len(self._nodes)

    def num_documents(self) -> int:
        return sum(1 for n in self._nodes if not is_external(n))

    def num_pairs(self) -> int:
        n = self.num_documents()
        return n * (n - 1) // 2

    def num_edges(self) -> int:
        return len(self._edges)

    def num_links(self, external: bool = False, unique: bool = False) -> int:
        """Count links between documents, or those touching an external node.

        Parallel duplicates count once each unless ``unique`` is set.
        """
        total = 0
        for (u, v), data in self._edges.items():
            ext = is_external(u) or is_external(v)
            if ext == external:
                total += 1 if unique else data.get("count", 1)
        return total

    # -- paths ---------------------------------------------------------

    def find_path(self, u, v) -> list[str]:
        """Shortest directed path as an inclusive node list; [] if unreachable."""
        u, v = self._require(u), self._require(v)
        if u == v:
            return [u]
        parent = {u: None}
        queue = deque([u])
        while queue:
            x = queue.popleft()
            for y in sorted(self._succ[x]):
                if y in parent:
                    continue
                parent[y] = x
                if y == v:
                    path = [v]
                    while parent[path[-1]] is not None:
                        path.append(parent[path[-1]])
                    return path[::-1]
                queue.append(y)
        return []

    # -- derived graphs ------------------------------------------------

    def copy(self) -> Network:
        return self.subgraph(self._nodes)

    def subgraph(self, keep) -> Network:
        keep = {str(n) for n in keep}
        out = Network(directed=self.directed, name=self.name)
        for n, attrs in self._nodes.items():
            if n in keep:
                out.add_node(n, **attrs)
        for (u, v), data in self._edges.items():
            if u in keep and v in keep:
                out._add_edge_data(u, v, data)
        return out

    def _add_edge_data(self, u, v, data):
        self.add_edge(u, v)
        self.edge_attributes(u, v).update(data)

    def to_undirected(self) -> Network:
        out = Network(directed=False, name=self.name)
        for n, attrs in self._nodes.items():
            out.add_node(n, **attrs)
        for (u, v), data in self._edges.items():
            if out.has_edge(u, v):
                continue
            out._add_edge_data(u, v, {k: x for k, x in data.items() if k != "count"})
        return out

    # -- comparison / display -----------------------------------------

    def __eq__(self, other):
        if not isinstance(other, Network):
            return NotImplemented
        return same_graph(self, other, tol=0.0)

    __hash__ = None

    def __repr__(self):
        kind = "directed" if self.directed else "undirected"
        return f"<Network {kind} nodes={self.num_nodes()} edges={self.num_edges()}>"

    def __str__(self):
        sep = "-"
        parts = [f"{u}{sep}{v}" for u, v in sorted(self._edges)]
        linked = {n for e in self._edges for n in e}
        parts += sorted(n for n in self._nodes if n not in linked)
        return ",".join(parts)


def _canonical_edges(net: Network) -> dict:
    out = {}
    for (u, v), data in net.edge_items():
        key = (u, v) if net.directed else tuple(sorted((u, v)))
        out[key] = (data.get("count", 1), data.get("weight"))
    return out


def same_graph(a: Network, b: Network, tol: float = 1e-9) -> bool:
    """Directedness, node set, edge multiset and weights (within ``tol``)."""
    if a.directed != b.directed or set(a.nodes()) != set(b.nodes()):
        return False
    ea, eb = _canonical_edges(a), _canonical_edges(b)
    if ea.keys() != eb.keys():
        return False
    for key, (count, w) in ea.items():
        count_b, w_b = eb[key]
        if count != count_b:
            return False
        if (w is None) != (w_b is None):
            return False
        if w is not None and not math.isclose(w, w_b, rel_tol=0.0, abs_tol=tol):
            return False
    return True


def subset_network(net: Network, keep) -> Network:
    return net.subgraph(keep)


def hyperlink_network(links_path, ignore_ex: bool = False, id_map: dict | None = None) -> Network:
    """Directed network from a links file of ``src dst`` lines.

    ``id_map`` optionally relabels document ids (for example to URLs);
    external targets keep the literal ``EX`` id.
    """
    net = Network(directed=True)
    with open(Path(links_path), encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            fields = line.split()
            if not fields:
                continue
            if len(fields) != 2:
                raise ParseError("expected 'src dst'", lineno, links_path)
            u, v = fields
            if ignore_ex and (is_external(u) or is_external(v)):
                for n in (u, v):
                    if not is_external(n):
                        net.add_node(id_map.get(n, n) if id_map else n)
                continue
            if id_map:
                u, v = id_map.get(u, u), id_map.get(v, v)
            net.add_edge(u, v)
    return net
