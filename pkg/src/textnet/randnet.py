"""Random graph generators, network samplers and synthetic collections.

Every function takes ``seed`` (an int, None, or a ``random.Random``);
the same seed and parameters give the same graph, edge order included.
"""

from __future__ import annotations

import math
import random
from pathlib import Path

from .errors import InvalidParameterError, ParseError
from .graph import Network
from .stats import DiscreteDistribution, Geometric

__all__ = [
    "erdos_renyi_gnm",
    "erdos_renyi_gnp",
    "watts_strogatz",
    "barabasi_albert",
    "sample_random_node",
    "sample_random_edge",
    "sample_forest_fire",
    "sample",
    "synthetic_collection",
    "write_collection",
    "read_collection",
    "link_collection",
]


def _rng(seed) -> random.Random:
    return seed if isinstance(seed, random.Random) else random.Random(seed)


def _ids(n: int) -> list[str]:
    return [str(i) for i in range(n)]


def _max_edges(n: int, directed: bool) -> int:
    return n * (n - 1) if directed else n * (n - 1) // 2


def _all_pairs(n: int, directed: bool):
    for i in range(n):
        for j in range(n) if directed else range(i + 1, n):
            if i != j:
                yield i, j


def _weight(rng: random.Random) -> float:
    return 1.0 - rng.random()  # Uniform(0, 1]


def erdos_renyi_gnm(
    n: int, m: int, directed: bool = True, weighted: bool = False, seed=None
) -> Network:
    """Exactly ``m`` distinct edges chosen uniformly among the simple pairs."""
    if n < 0 or m < 0:
        raise InvalidParameterError("n and m must be nonnegative")
    limit = _max_edges(n, directed)
    if m > limit:
        raise InvalidParameterError(f"m={m} exceeds the {limit} possible edges on {n} nodes")
    rng = _rng(seed)
    net = Network(directed=directed)
    ids = _ids(n)
    for v in ids:
        net.add_node(v)

    def draw():
        i = rng.randrange(n)
        j = rng.randrange(n - 1)
        if j >= i:
            j += 1
        return (i, j) if directed or i < j else (j, i)

    if m <= limit // 2:
        chosen: dict = {}
        while len(chosen) < m:
            chosen.setdefault(draw(), None)
        edges = list(chosen)
    else:
        # Dense case: reject the complement, which holds at most half the pairs.
        excluded: set = set()
        while len(excluded) < limit - m:
            excluded.add(draw())
        edges = [e for e in _all_pairs(n, directed) if e not in excluded]
        rng.shuffle(edges)
    for i, j in edges:
        net.add_edge(ids[i], ids[j], weight=_weight(rng) if weighted else None)
    return net


def erdos_renyi_gnp(
    n: int, p: float, directed: bool = True, weighted: bool = False, seed=None
) -> Network:
    """Each simple pair becomes an edge independently with probability ``p``."""
    if n < 0:
        raise InvalidParameterError("n must be nonnegative")
    if not 0.0 <= p <= 1.0:
        raise InvalidParameterError(f"p must be in [0, 1], got {p}")
    rng = _rng(seed)
    net = Network(directed=directed)
    ids = _ids(n)
    for v in ids:
        net.add_node(v)
    for i, j in _all_pairs(n, directed):
        if rng.random() < p:
            net.add_edge(ids[i], ids[j], weight=_weight(rng) if weighted else None)
    return net


def watts_strogatz(n: int, k: int, p: float, seed=None, ids=None) -> Network:
    """Ring lattice of degree ``k`` with each edge rewired with probability ``p``.

    A rewired edge keeps its source and moves its target to a uniform node
    that is neither the source nor already adjacent to it; edges with no
    such target stay put, so the edge count is always n*k/2.
    """
    if k < 0 or k % 2:
        raise InvalidParameterError(f"k must be even and nonnegative, got {k}")
    if n > 0 and k >= n:
        raise InvalidParameterError(f"k must be smaller than n (k={k}, n={n})")
    if not 0.0 <= p <= 1.0:
        raise InvalidParameterError(f"p must be in [0, 1], got {p}")
    rng = _rng(seed)
    ids = list(ids) if ids is not None else _ids(n)
    if len(ids) != n:
        raise InvalidParameterError("ids must have length n")
    adj = {i: set() for i in range(n)}
    ring = []
    for i in range(n):
        for step in range(1, k // 2 + 1):
            j = (i + step) % n
            ring.append((i, j))
            adj[i].add(j)
            adj[j].add(i)
    edges = []
    for i, j in ring:
        if p > 0 and rng.random() < p:
            options = [t for t in range(n) if t != i and t not in adj[i]]
            if options:
                t = rng.choice(options)
                adj[i].discard(j)
                adj[j].discard(i)
                adj[i].add(t)
                adj[t].add(i)
                j = t
        edges.append((i, j))
    net = Network(directed=False)
    for v in ids:
        net.add_node(v)
    for i, j in edges:
        net.add_edge(ids[i], ids[j])
    return net


def barabasi_albert(n: int, m: int, seed=None) -> Network:
    """Preferential attachment from a seed clique of ``m + 1`` nodes."""
    if m < 1:
        raise InvalidParameterError(f"m must be >= 1, got {m}")
    if n < m + 1:
        raise InvalidParameterError(f"n must be >= m + 1 (n={n}, m={m})")
    rng = _rng(seed)
    ids = _ids(n)
    net = Network(directed=False)
    for v in ids:
        net.add_node(v)
    ends: list[int] = []  # each node appears once per incident edge
    for i in range(m + 1):
        for j in range(i + 1, m + 1):
            net.add_edge(ids[i], ids[j])
            ends += [i, j]
    for new in range(m + 1, n):
        targets: list[int] = []
        while len(targets) < m:
            t = rng.choice(ends)
            if t not in targets:
                targets.append(t)
        for t in targets:
            net.add_edge(ids[new], ids[t])
            ends += [new, t]
    return net


# -- samplers -------------------------------------------------------------


def sample_random_node(net: Network, k: int, seed=None) -> Network:
    """``k`` uniform nodes and the edges among them."""
    nodes = sorted(net.nodes())
    if not 0 <= k <= len(nodes):
        raise InvalidParameterError(f"cannot sample {k} of {len(nodes)} nodes")
    return net.subgraph(_rng(seed).sample(nodes, k))


def sample_random_edge(net: Network, k_edges: int, seed=None) -> Network:
    """``k_edges`` uniform edges plus their endpoints."""
    edges = sorted(net.edges())
    if not 0 <= k_edges <= len(edges):
        raise InvalidParameterError(f"cannot sample {k_edges} of {len(edges)} edges")
    out = Network(directed=net.directed, name=net.name)
    for u, v in _rng(seed).sample(edges, k_edges):
        for x in (u, v):
            out.add_node(x, **net.node_attributes(x))
        out._add_edge_data(u, v, net.edge_attributes(u, v))
    return out


def sample_forest_fire(net: Network, k_nodes: int, p_forward: float = 0.7, seed=None) -> Network:
    """Forest Fire sampling.

    From a uniform unburned seed, each burning node ignites a
    Geometric-distributed number (mean p/(1-p)) of its unburned
    out-neighbours, chosen uniformly. When the fire dies out a new seed is
    drawn, until ``k_nodes`` nodes have burned.
    """
    nodes = sorted(net.nodes())
    if not 0 <= k_nodes <= len(nodes):
        raise InvalidParameterError(f"cannot sample {k_nodes} of {len(nodes)} nodes")
    if not 0.0 <= p_forward < 1.0:
        raise InvalidParameterError(f"p_forward must be in [0, 1), got {p_forward}")
    rng = _rng(seed)
    burns = Geometric(1.0 - p_forward)
    burned: set[str] = set()
    order: list[str] = []

    def ignite(v):
        burned.add(v)
        order.append(v)

    while len(burned) < k_nodes:
        start = rng.choice([v for v in nodes if v not in burned])
        ignite(start)
        frontier = [start]
        while frontier and len(burned) < k_nodes:
            x = frontier.pop(0)
            succ = net.successors(x) if net.directed else net.neighbors(x)
            candidates = sorted(v for v in succ if v not in burned)
            rng.shuffle(candidates)
            count = burns.draw_index(rng) - 1
            for v in candidates[:count]:
                if len(burned) >= k_nodes:
                    break
                ignite(v)
                frontier.append(v)
    return net.subgraph(order)


SAMPLERS = {
    "randomnode": sample_random_node,
    "randomedge": sample_random_edge,
    "forestfire": sample_forest_fire,
}


def sample(net: Network, size: int, kind: str = "randomedge", seed=None, **kwargs) -> Network:
    try:
        fn = SAMPLERS[kind]
    except KeyError:
        raise InvalidParameterError(f"unknown sampler {kind!r}; choose from {sorted(SAMPLERS)}") from None
    return fn(net, size, seed=seed, **kwargs)


# -- synthetic collections ------------------------------------------------


def _mapped(dist: DiscreteDistribution, table: list, rng: random.Random):
    # Indexes beyond the table wrap around (distribution sizes need not match).
    return table[(dist.draw_index(rng) - 1) % len(table)]


def synthetic_collection(
    term_map: list,
    term_dist: DiscreteDistribution,
    doclen_map: list,
    doclen_dist: DiscreteDistribution,
    size: int,
    seed=None,
) -> dict[str, list[str]]:
    """Documents whose lengths and tokens are drawn through the two maps.

    Returns ``{doc id: token list}`` with ids "0".."size-1".
    """
    if not term_map or not doclen_map:
        raise InvalidParameterError("term_map and doclen_map must be nonempty")
    if size < 1:
        raise InvalidParameterError(f"size must be >= 1, got {size}")
    rng = _rng(seed)
    docs = {}
    for i in range(size):
        length = int(_mapped(doclen_dist, doclen_map, rng))
        docs[str(i)] = [str(_mapped(term_dist, term_map, rng)) for _ in range(length)]
    return docs


def write_collection(docs: dict, directory, name: str) -> Path:
    """One ``<id>.txt`` file per document under ``directory/name``."""
    out = Path(directory) / name
    out.mkdir(parents=True, exist_ok=True)
    for doc_id, tokens in docs.items():
        (out / f"{doc_id}.txt").write_text(" ".join(tokens) + "\n", encoding="utf-8")
    return out


def read_collection(directory, name: str) -> dict[str, list[str]]:
    path = Path(directory) / name
    if not path.is_dir():
        raise ParseError(f"no collection {name!r}", None, directory)
    docs = {}
    for f in sorted(path.glob("*.txt"), key=lambda p: (len(p.stem), p.stem)):
        docs[f.stem] = f.read_text(encoding="utf-8").split()
    return docs


def link_collection(doc_ids, policy: str, p: float, k: int | None = None, seed=None) -> Network:
    """Link documents with the ``erdos`` (G(n, p), directed) or ``watts`` policy."""
    ids = [str(d) for d in doc_ids]
    if policy == "erdos":
        g = erdos_renyi_gnp(len(ids), p, directed=True, seed=seed)
        out = Network(directed=True)
        for v in ids:
            out.add_node(v)
        for u, v in g.edges():
            out.add_edge(ids[int(u)], ids[int(v)])
        return out
    if policy == "watts":
        if k is None:
            raise InvalidParameterError("watts policy needs k")
        return watts_strogatz(len(ids), k, p, seed=seed, ids=ids)
    raise InvalidParameterError(f"unknown link policy {policy!r}; choose erdos or watts")


def expected_gnp_edges(n: int, p: float, directed: bool = True) -> tuple[float, float]:
    """Mean and standard deviation of the G(n, p) edge count."""
    pairs = _max_edges(n, directed)
    return pairs * p, math.sqrt(pairs * p * (1 - p))
