"""Network statistics: degrees, power laws, paths, clustering, components."""

from __future__ import annotations

import math
from collections import Counter, deque
from dataclasses import dataclass

from .errors import InsufficientDataError, UndefinedStatisticError
from .graph import Network
from .stats import correlation_pvalue, linear_regression

__all__ = [
    "degree_histogram",
    "avg_degree",
    "PowerLawFit",
    "power_law_fit",
    "newman_power_law_exponent",
    "cumulative_distribution",
    "cumulative_power_law_exponent",
    "bfs_lengths",
    "shortest_paths",
    "shortest_path_length",
    "shortest_paths_lengths",
    "diameter",
    "average_shortest_path",
    "harmonic_mean_geodesic",
    "local_cc",
    "watts_strogatz_cc",
    "triangles",
    "newman_cc",
    "components",
    "find_largest_component",
    "degree_assortativity_coefficient",
    "average_cosines",
    "cosine_histograms",
    "StatsRow",
    "network_info",
    "network_report",
]

DIRECTIONS = ("in", "out", "total")


def _node_degree(net: Network, node, direction: str) -> int:
    if direction == "in":
        return net.in_degree(node)
    if direction == "out":
        return net.out_degree(node)
    if direction == "total":
        return net.degree(node)
    raise ValueError(f"direction must be one of {DIRECTIONS}, got {direction!r}")


def degree_histogram(net: Network, direction: str = "total") -> dict[int, int]:
    """Map degree -> number of nodes with that degree (zero degrees included)."""
    hist = Counter(_node_degree(net, n, direction) for n in net.nodes())
    return dict(sorted(hist.items()))


def avg_degree(net: Network, direction: str = "total") -> float:
    n = net.num_nodes()
    if n == 0:
        return 0.0
    return sum(_node_degree(net, v, direction) for v in net.nodes()) / n


@dataclass(frozen=True)
class PowerLawFit:
    c: float
    alpha: float
    r: float
    r_squared: float
    pscore: float
    points: int

    def __str__(self):
        return f"y = {self.c:.15g} x^{self.alpha:.15g}"


def power_law_fit(hist: dict) -> PowerLawFit:
    """Least-squares line through (ln degree, ln count).

    Bins with zero degree or zero count are dropped. ``pscore`` is the
    two-sided t-test p-value of the correlation (NaN for two points).
    """
    pts = [(math.log(k), math.log(c)) for k, c in sorted(hist.items()) if k >= 1 and c >= 1]
    if len(pts) < 2:
        raise InsufficientDataError("power-law fit needs two bins with degree >= 1")
    (intercept, slope), r = linear_regression(pts)
    return PowerLawFit(
        c=math.exp(intercept),
        alpha=slope,
        r=r,
        r_squared=r * r,
        pscore=correlation_pvalue(r, len(pts)),
        points=len(pts),
    )


def newman_power_law_exponent(hist: dict, xmin: float = 1) -> tuple[float, float]:
    """Maximum-likelihood exponent over node degrees >= ``xmin``.

    Returns ``(alpha, sigma)`` with sigma = (alpha - 1) / sqrt(n).
    """
    if xmin < 1:
        raise InsufficientDataError("xmin must be >= 1")
    n = 0
    log_sum = 0.0
    for k, c in hist.items():
        if k >= xmin and c > 0:
            n += c
            log_sum += c * math.log(k / xmin)
    if n == 0:
        raise InsufficientDataError(f"no degrees >= {xmin}")
    if log_sum == 0:
        raise InsufficientDataError("all degrees equal xmin; the estimate diverges")
    alpha = 1.0 + n / log_sum
    return alpha, (alpha - 1.0) / math.sqrt(n)


def cumulative_distribution(hist: dict) -> dict:
    """Map k -> number of observations with value >= k."""
    out = {}
    running = 0
    for k in sorted(hist, reverse=True):
        running += hist[k]
        out[k] = running
    return dict(sorted(out.items()))


def cumulative_power_law_exponent(hist: dict) -> float:
    """Slope of the log-log fit to the cumulative distribution, uncorrected."""
    return power_law_fit(cumulative_distribution(hist)).alpha


# -- paths --------------------------------------------------------------


def _adjacency(net: Network, undirected: bool) -> dict[str, list[str]]:
    if undirected or not net.directed:
        return {n: sorted(net.neighbors(n)) for n in net.nodes()}
    return {n: sorted(v for v in net.successors(n) if v != n) for n in net.nodes()}


def _bfs(adj, source) -> dict[str, int]:
    dist = {source: 0}
    queue = deque([source])
    while queue:
        x = queue.popleft()
        for y in adj[x]:
            if y not in dist:
                dist[y] = dist[x] + 1
                queue.append(y)
    return dist


def bfs_lengths(net: Network, source, undirected: bool = False) -> dict[str, int]:
    source = net._require(source)
    return _bfs(_adjacency(net, undirected), source)


def shortest_paths(net: Network, undirected: bool = False) -> dict[str, dict[str, int]]:
    """All-pairs hop distances; unreachable pairs are absent."""
    adj = _adjacency(net, undirected)
    return {n: _bfs(adj, n) for n in adj}


def shortest_path_length(net: Network, u, v, undirected: bool = False):
    """Hop distance from u to v, or None when v is unreachable."""
    net._require(v)
    return bfs_lengths(net, u, undirected).get(str(v))


def shortest_paths_lengths(net: Network, u, undirected: bool = False) -> dict[str, int]:
    return bfs_lengths(net, u, undirected)


def _reachable_distances(net, undirected):
    for u, dists in shortest_paths(net, undirected).items():
        for v, d in dists.items():
            if v != u:
                yield d


def diameter(net: Network, avg: bool = False, undirected: bool = False) -> float:
    """Longest (or mean) distance over ordered reachable pairs u != v; 0 if none."""
    ds = list(_reachable_distances(net, undirected))
    if not ds:
        return 0
    return sum(ds) / len(ds) if avg else max(ds)


def average_shortest_path(net: Network, undirected: bool = False) -> float:
    return diameter(net, avg=True, undirected=undirected)


def harmonic_mean_geodesic(net: Network, undirected: bool = False) -> float:
    n = net.num_nodes()
    inv = math.fsum(1.0 / d for d in _reachable_distances(net, undirected))
    if inv == 0:
        return 0.0
    return n * (n - 1) / inv


# -- clustering ---------------------------------------------------------


def _undirected_sets(net: Network) -> dict[str, set]:
    return {n: net.neighbors(n) for n in net.nodes()}


def local_cc(net: Network) -> dict[str, float]:
    nbrs = _undirected_sets(net)
    out = {}
    for v, ns in nbrs.items():
        k = len(ns)
        if k < 2:
            out[v] = 0.0
            continue
        links = sum(1 for a in ns for b in nbrs[a] if b in ns) / 2
        out[v] = links / (k * (k - 1) / 2)
    return out


def watts_strogatz_cc(net: Network) -> float:
    cc = local_cc(net)
    return sum(cc.values()) / len(cc) if cc else 0.0


def triangles(net: Network) -> tuple[list[str], int, int]:
    """Triangles of the undirected view as sorted ``a-b-c`` labels.

    Returns ``(labels, triangle_count, triple_count)`` where triples are
    the connected triples sum(C(deg, 2)).
    """
    nbrs = _undirected_sets(net)
    labels = []
    for a in sorted(nbrs):
        higher = sorted(x for x in nbrs[a] if x > a)
        for i, b in enumerate(higher):
            for c in higher[i + 1 :]:
                if c in nbrs[b]:
                    labels.append(f"{a}-{b}-{c}")
    triples = sum(len(s) * (len(s) - 1) // 2 for s in nbrs.values())
    return labels, len(labels), triples


def newman_cc(net: Network) -> float:
    _, count, triples = triangles(net)
    return 3.0 * count / triples if triples else 0.0


# -- components ---------------------------------------------------------


def _weak_components(net):
    nbrs = _undirected_sets(net)
    seen = set()
    comps = []
    for start in nbrs:
        if start in seen:
            continue
        comp = _flood(nbrs, start)
        seen |= comp
        comps.append(comp)
    return comps


def _flood(nbrs, start):
    comp = {start}
    stack = [start]
    while stack:
        x = stack.pop()
        for y in nbrs[x]:
            if y not in comp:
                comp.add(y)
                stack.append(y)
    return comp


def _strong_components(net):
    """Tarjan's algorithm, iterative."""
    succ = {n: [v for v in net.successors(n)] for n in net.nodes()}
    index = {}
    low = {}
    on_stack = set()
    stack = []
    comps = []
    counter = 0
    for root in succ:
        if root in index:
            continue
        work = [(root, iter(succ[root]))]
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on_stack.add(root)
        while work:
            v, it = work[-1]
            advanced = False
            for w in it:
                if w not in index:
                    index[w] = low[w] = counter
                    counter += 1
                    stack.append(w)
                    on_stack.add(w)
                    work.append((w, iter(succ[w])))
                    advanced = True
                    break
                if w in on_stack:
                    low[v] = min(low[v], index[w])
            if advanced:
                continue
            work.pop()
            if work:
                parent = work[-1][0]
                low[parent] = min(low[parent], low[v])
            if low[v] == index[v]:
                comp = set()
                while True:
                    w = stack.pop()
                    on_stack.discard(w)
                    comp.add(w)
                    if w == v:
                        break
                comps.append(comp)
    return comps


def components(net: Network, kind: str = "weak") -> list[set]:
    """Weak, strong or undirected components, largest first."""
    if kind in ("weak", "weakly", "undirected"):
        comps = _weak_components(net)
    elif kind in ("strong", "strongly"):
        comps = _strong_components(net) if net.directed else _weak_components(net)
    else:
        raise ValueError(f"unknown component kind {kind!r}")
    return sorted(comps, key=lambda c: (-len(c), min(c)))


def find_largest_component(net: Network, kind: str = "weak") -> Network:
    comps = components(net, kind)
    return net.subgraph(comps[0] if comps else ())


# -- assortativity ------------------------------------------------------


def degree_assortativity_coefficient(net: Network) -> float:
    """Pearson correlation of full degrees across edge ends (undirected view).

    A zero denominator (all endpoint degrees equal) gives 0.
    """
    nbrs = _undirected_sets(net)
    deg = {n: len(s) for n, s in nbrs.items()}
    pairs = []
    for u in nbrs:
        for v in nbrs[u]:
            if u < v:
                pairs.append((deg[u], deg[v]))
    if not pairs:
        raise UndefinedStatisticError("assortativity needs at least one edge")
    m = len(pairs)
    s_prod = math.fsum(j * k for j, k in pairs) / m
    s_mean = math.fsum(0.5 * (j + k) for j, k in pairs) / m
    s_sq = math.fsum(0.5 * (j * j + k * k) for j, k in pairs) / m
    denom = s_sq - s_mean**2
    if abs(denom) < 1e-12:
        return 0.0
    return (s_prod - s_mean**2) / denom


# -- cosine vs link -----------------------------------------------------


def _ordered_pairs(matrix):
    """Yield (u, v, value) over ordered pairs u != v.

    Accepts a nested mapping ``{u: {v: value}}`` or anything with a
    ``pairs()`` method returning unordered ``(u, v, value)`` triples.
    """
    if hasattr(matrix, "pairs"):
        for u, v, value in matrix.pairs():
            yield u, v, value
            yield v, u, value
        return
    for u, row in matrix.items():
        for v, value in row.items():
            if str(u) != str(v):
                yield str(u), str(v), value


def average_cosines(net: Network, matrix) -> tuple[float, float]:
    """Mean cosine over linked (u -> v is an edge) and non-linked ordered pairs."""
    linked, other = [], []
    for u, v, value in _ordered_pairs(matrix):
        is_link = net.has_node(u) and net.has_node(v) and u in net.predecessors(v)
        (linked if is_link else other).append(value)
    la = math.fsum(linked) / len(linked) if linked else 0.0
    nla = math.fsum(other) / len(other) if other else 0.0
    return la, nla


def cosine_bin(value: float) -> int:
    return min(100, max(0, int(math.floor(value * 100 + 1e-6))))


def cosine_histograms(net: Network, matrix) -> tuple[list[int], list[int]]:
    """101-bin histograms (bin = floor(100 * cosine)) of linked / non-linked pairs."""
    linked = [0] * 101
    other = [0] * 101
    for u, v, value in _ordered_pairs(matrix):
        is_link = net.has_node(u) and net.has_node(v) and u in net.predecessors(v)
        (linked if is_link else other)[cosine_bin(value)] += 1
    return linked, other


# -- composite row ------------------------------------------------------


@dataclass
class StatsRow:
    nodes: int = 0
    edges: int = 0
    diameter: float = 0
    lcc: int = 0
    avg_short_path: float = 0
    watts_strogatz_cc: float = 0
    hmgd: float = 0
    power_law: tuple = ()
    avg_degree: float = 0

    def values(self) -> list:
        head = [
            self.nodes, self.edges, self.diameter, self.lcc,
            self.avg_short_path, self.watts_strogatz_cc, self.hmgd,
        ]
        return head + list(self.power_law) + [self.avg_degree]

    def as_line(self, delim: str = " ") -> str:
        return delim.join(format_number(x) for x in self.values())

    @staticmethod
    def header(directed: bool) -> list[str]:
        names = [
            "nodes", "edges", "diameter", "lcc", "avg_short_path",
            "watts_strogatz_cc", "hmgd",
        ]
        blocks = ("in_link", "out_link", "total_link") if directed else ("power_law",)
        for b in blocks:
            if directed:
                names += [f"{b}_power", f"{b}_power_rsquared", f"{b}_pscore",
                          f"{b}_power_newman", f"{b}_power_newman_error"]
            else:
                names += ["power_law", "power_law_rsquared", "power_law_pscore",
                          "power_law_power_newman", "power_law_newman_error"]
        return names + ["avg_degree"]

    @classmethod
    def zero(cls, directed: bool) -> StatsRow:
        return cls(power_law=(0,) * (15 if directed else 5))


def format_number(x) -> str:
    if isinstance(x, bool):
        return str(int(x))
    if isinstance(x, int):
        return str(x)
    if isinstance(x, float) and x.is_integer():
        return str(int(x))
    return f"{x:.10g}"


def _power_law_block(net: Network, direction: str) -> tuple:
    hist = degree_histogram(net, direction)
    try:
        fit = power_law_fit(hist)
        fit_fields = (fit.alpha, fit.r_squared, fit.pscore)
    except InsufficientDataError:
        fit_fields = (0, 0, 0)
    try:
        newman = newman_power_law_exponent(hist, 1)
    except InsufficientDataError:
        newman = (0, 0)
    return fit_fields + newman


def network_info(net: Network) -> StatsRow:
    if net.num_nodes() == 0:
        return StatsRow.zero(net.directed)
    comps = components(net, "weak")
    blocks = DIRECTIONS if net.directed else ("total",)
    power = ()
    for d in blocks:
        power += _power_law_block(net, d)
    return StatsRow(
        nodes=net.num_nodes(),
        edges=net.num_edges(),
        diameter=diameter(net),
        lcc=len(comps[0]),
        avg_short_path=diameter(net, avg=True),
        watts_strogatz_cc=watts_strogatz_cc(net),
        hmgd=harmonic_mean_geodesic(net),
        power_law=power,
        avg_degree=avg_degree(net, "total"),
    )


def network_report(
    net: Network,
    components_: bool = False,
    wcc: bool = False,
    scc: bool = False,
    paths: bool = False,
    triangles_: bool = False,
    assortativity: bool = False,
    localcc: bool = False,
    delim: str = " ",
) -> str:
    """Human-readable summary followed by the optional detail sections."""
    row = network_info(net)
    lines = ["Network information:"]
    lines.append(f"  {'directed' if net.directed else 'undirected'} graph")
    for name, value in zip(StatsRow.header(net.directed), row.values()):
        lines.append(f"  {name}: {format_number(value)}")
    if net.num_nodes():
        for d in DIRECTIONS if net.directed else ("total",):
            try:
                lines.append(f"  {d} degree power law: {power_law_fit(degree_histogram(net, d))}")
            except InsufficientDataError:
                lines.append(f"  {d} degree power law: insufficient data")
        lines.append(f"  newman clustering coefficient: {format_number(newman_cc(net))}")
    if components_:
        lines.append("Components:")
        lines += [delim.join(sorted(c)) for c in components(net, "undirected")]
    if wcc:
        lines.append("Weakly connected components:")
        lines += [delim.join(sorted(c)) for c in components(net, "weak")]
    if scc:
        lines.append("Strongly connected components:")
        lines += [delim.join(sorted(c)) for c in components(net, "strong")]
    if paths:
        lines.append("Shortest paths:")
        for u, dists in sorted(shortest_paths(net).items()):
            for v, d in sorted(dists.items()):
                if u != v:
                    lines.append(f"{u}{delim}{v}{delim}{d}")
    if triangles_:
        labels, count, triples = triangles(net)
        lines.append(f"Triangles: {count} (connected triples: {triples})")
        lines += labels
    if assortativity:
        try:
            value = format_number(degree_assortativity_coefficient(net))
        except UndefinedStatisticError:
            value = "undefined"
        lines.append(f"Degree assortativity coefficient: {value}")
    if localcc:
        lines.append("Local clustering coefficients:")
        for v, c in sorted(local_cc(net).items()):
            lines.append(f"{v}{delim}{format_number(c)}")
    return "\n".join(lines) + "\n"


def row_field_names(directed: bool) -> list[str]:
    return StatsRow.header(directed)

