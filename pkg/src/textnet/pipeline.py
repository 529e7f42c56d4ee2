"""File-level pipeline steps shared by the command-line tools.

Everything here takes and returns plain paths or library objects, so the
CLI stays a thin argument parser and tests can call the same code.
"""

from __future__ import annotations

from decimal import ROUND_HALF_UP, Decimal
from pathlib import Path

from .errors import InvalidParameterError
from .graph import Network
from .netstats import (
    StatsRow,
    degree_histogram,
    network_info,
    shortest_paths,
    triangles,
)
from .randnet import sample as sample_network
from .similarity import CosineMatrix, read_cos

__all__ = [
    "cutoff_grid",
    "threshold_network",
    "SweepRow",
    "sweep",
    "format_sweep",
    "write_edge_file",
    "chunk_document",
    "link_degree_hist",
    "cosine_value_hist",
    "cumulative",
    "write_xy",
    "prefix_of",
]


def prefix_of(path, *suffixes: str) -> str:
    """Basename with the first matching suffix removed."""
    name = Path(path).name
    for s in suffixes:
        if name.endswith(s):
            return name[: -len(s)]
    return name


def _round2(x) -> Decimal:
    return Decimal(str(x)).quantize(Decimal("0.01"), rounding=ROUND_HALF_UP)


def cutoff_grid(start: float, end: float, step: float) -> list[str]:
    """Two-decimal cutoffs from ``start`` to ``end`` inclusive.

    The running value is rounded to two decimals after every step, so the
    grid never drifts (0.1 + 0.2 style error never reaches a file name).
    """
    if step <= 0:
        raise InvalidParameterError(f"step must be positive, got {step}")
    if start > end:
        raise InvalidParameterError(f"start {start} is after end {end}")
    inc = Decimal(str(step))
    last = _round2(end)
    out = []
    i = _round2(start)
    while i <= last:
        out.append(f"{i:.2f}")
        nxt = _round2(i + inc)
        if nxt <= i:
            raise InvalidParameterError(f"step {step} is below the 0.01 grid resolution")
        i = nxt
    return out


def threshold_network(matrix: CosineMatrix, cutoff: float) -> Network:
    """Undirected network of the pairs with cosine >= cutoff; weight = cosine."""
    net = Network(directed=False)
    for a, b, v in matrix.pairs():
        if v >= cutoff:
            net.add_edge(a, b, weight=v)
    return net


def write_edge_file(net: Network, path, delim: str = " ") -> None:
    """``u v w`` lines in stored order, weights at full precision."""
    with open(Path(path), "w", encoding="utf-8") as fh:
        for (u, v), data in net.edge_items():
            w = data.get("weight")
            fh.write(delim.join([u, v] if w is None else [u, v, f"{w:.10g}"]) + "\n")


class SweepRow:
    __slots__ = ("cutoff", "row", "network")

    def __init__(self, cutoff: str, row: StatsRow, network: Network):
        self.cutoff = cutoff
        self.row = row
        self.network = network


def sweep(
    cos,
    start: float = 0.0,
    end: float = 1.0,
    step: float = 0.01,
    graphs_dir=None,
    prefix: str | None = None,
    sample_size: int | None = None,
    sample_type: str = "randomnode",
    seed=None,
    single: bool = False,
    details: bool = False,
    stats: bool = True,
) -> list[SweepRow]:
    """Threshold sweep over a cosine matrix (or a .cos path).

    For each cutoff the thresholded network is built, optionally sampled,
    written to ``graphs_dir/<prefix>-<cutoff>.graph`` and summarised. With
    ``details`` the triangle list and all-pairs distances are written next
    to each graph file as ``.triangles`` and ``.asp``.
    """
    if not isinstance(cos, CosineMatrix):
        if prefix is None:
            prefix = prefix_of(cos, ".cos")
        cos = read_cos(cos)
    prefix = prefix or "cos"
    cutoffs = cutoff_grid(start, end, step)
    if single:
        cutoffs = cutoffs[:1]
    if graphs_dir is not None:
        Path(graphs_dir).mkdir(parents=True, exist_ok=True)
    rows = []
    for c in cutoffs:
        net = threshold_network(cos, float(c))
        if sample_size is not None and net.num_nodes() > 0:
            size = sample_size
            limit = net.num_edges() if sample_type == "randomedge" else net.num_nodes()
            net = sample_network(net, min(size, limit), sample_type, seed=seed)
        if graphs_dir is not None:
            base = Path(graphs_dir) / f"{prefix}-{c}"
            write_edge_file(net, f"{base}.graph")
            if details:
                _write_details(net, base)
        row = network_info(net) if stats else StatsRow.zero(False)
        rows.append(SweepRow(c, row, net))
    return rows


def _write_details(net: Network, base: Path) -> None:
    labels, _, _ = triangles(net)
    Path(f"{base}.triangles").write_text("".join(t + "\n" for t in labels), encoding="utf-8")
    with open(f"{base}.asp", "w", encoding="utf-8") as fh:
        for u, dists in sorted(shortest_paths(net).items()):
            for v, d in sorted(dists.items()):
                if u != v:
                    fh.write(f"{u} {v} {d}\n")


def format_sweep(rows, delim: str = " ") -> str:
    """Header line, then ``cutoff<delim>stats`` per row."""
    lines = [delim.join(["cutoff"] + StatsRow.header(False))]
    for r in rows:
        lines.append(f"{r.cutoff}{delim}{r.row.as_line(delim)}")
    return "\n".join(lines) + "\n"


def chunk_document(input_path, out_dir, words: int = 500) -> list[Path]:
    """Split a text file into ``<name>.<words>.<k>`` files of ``words`` tokens.

    Every chunk but the last holds exactly ``words`` tokens; joining the
    chunks' tokens gives back the input's token sequence.
    """
    if words < 1:
        raise InvalidParameterError(f"words must be >= 1, got {words}")
    src = Path(input_path)
    tokens = src.read_text(encoding="utf-8").split()
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    paths = []
    chunks = [tokens[i : i + words] for i in range(0, len(tokens), words)] or [[]]
    for k, chunk in enumerate(chunks, 1):
        p = out / f"{src.name}.{words}.{k}"
        p.write_text(" ".join(chunk), encoding="utf-8")
        paths.append(p)
    return paths


def link_degree_hist(net: Network) -> list[int]:
    """Dense degree histogram: entry d is the number of nodes of degree d."""
    hist = degree_histogram(net, "total")
    if not hist:
        return []
    return [hist.get(d, 0) for d in range(max(hist) + 1)]


def cosine_value_hist(matrix: CosineMatrix, bins: int = 100) -> list[int]:
    """Counts of pair cosines per bin; bin = floor(c * bins + 1e-6)."""
    if bins < 1:
        raise InvalidParameterError(f"bins must be >= 1, got {bins}")
    out = [0] * (bins + 1)
    for _, _, v in matrix.pairs():
        out[int(v * bins + 0.000001)] += 1
    return out


def cumulative(values) -> list:
    total, out = 0, []
    for v in values:
        total += v
        out.append(total)
    return out


def write_xy(pairs, path) -> None:
    with open(Path(path), "w", encoding="utf-8") as fh:
        for x, y in pairs:
            fh.write(f"{x} {y}\n")
