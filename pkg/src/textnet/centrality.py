"""Centrality measures, PageRank/LexRank power iteration, MMR and random walks."""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass
from pathlib import Path

from .errors import (
    ConvergenceError,
    DegenerateMatrixError,
    InvalidParameterError,
    ParseError,
    UndefinedStatisticError,
)
from .graph import Network

__all__ = [
    "CentralityScores",
    "degree_centrality",
    "closeness_centrality",
    "betweenness_centrality",
    "TransitionMatrix",
    "pagerank",
    "lexrank",
    "lexrank_from_bias_sentences",
    "mmr_rerank",
    "threshold_extract",
    "threshold_extract_documents",
    "read_distribution",
    "write_distribution",
    "format_distribution",
    "write_centrality",
]

LEXRANK_ATTR = "lexrank_transition"
LEXRANK_VALUE = "lexrank_value"
PAGERANK_ATTR = "pagerank_transition"
PAGERANK_VALUE = "pagerank_value"


@dataclass
class CentralityScores:
    measure: str
    raw: dict
    normalized: dict


def _clamp01(x: float) -> float:
    return min(1.0, max(0.0, x))


def degree_centrality(net: Network) -> CentralityScores:
    """Degree (undirected) or total degree / 2 (directed), normalized by n - 1."""
    n = net.num_nodes()
    if n < 2:
        raise UndefinedStatisticError("degree centrality normalization needs n >= 2")
    if net.directed:
        raw = {v: net.degree(v) / 2 for v in net.nodes()}
    else:
        raw = {v: net.degree(v) for v in net.nodes()}
    norm = {v: _clamp01(x / (n - 1)) for v, x in raw.items()}
    return CentralityScores("degree", raw, norm)


def _out_adjacency(net: Network) -> dict[str, list[str]]:
    if net.directed:
        return {v: sorted(u for u in net.successors(v) if u != v) for v in net.nodes()}
    return {v: sorted(net.neighbors(v)) for v in net.nodes()}


def closeness_centrality(net: Network) -> CentralityScores:
    """raw = 1 / (sum of distances to reachable nodes); normalized = reached / sum."""
    adj = _out_adjacency(net)
    raw, norm = {}, {}
    for s in adj:
        dist = {s: 0}
        queue = deque([s])
        while queue:
            x = queue.popleft()
            for y in adj[x]:
                if y not in dist:
                    dist[y] = dist[x] + 1
                    queue.append(y)
        total = sum(dist.values())
        reached = len(dist) - 1
        raw[s] = 1.0 / total if total else 0.0
        norm[s] = _clamp01(reached / total) if total else 0.0
    return CentralityScores("closeness", raw, norm)


def betweenness_centrality(net: Network) -> CentralityScores:
    """Brandes accumulation over unweighted shortest paths.

    Undirected scores count each unordered pair once.
    """
    adj = _out_adjacency(net)
    nodes = list(adj)
    bc = dict.fromkeys(nodes, 0.0)
    for s in nodes:
        order = []
        preds = {v: [] for v in nodes}
        sigma = dict.fromkeys(nodes, 0)
        sigma[s] = 1
        dist = {s: 0}
        queue = deque([s])
        while queue:
            v = queue.popleft()
            order.append(v)
            for w in adj[v]:
                if w not in dist:
                    dist[w] = dist[v] + 1
                    queue.append(w)
                if dist[w] == dist[v] + 1:
                    sigma[w] += sigma[v]
                    preds[w].append(v)
        delta = dict.fromkeys(nodes, 0.0)
        for w in reversed(order):
            for v in preds[w]:
                delta[v] += sigma[v] / sigma[w] * (1.0 + delta[w])
            if w != s:
                bc[w] += delta[w]
    if not net.directed:
        bc = {v: x / 2 for v, x in bc.items()}
    n = len(nodes)
    if n < 3:
        norm = dict.fromkeys(nodes, 0.0)
    else:
        scale = (n - 1) * (n - 2) / (1 if net.directed else 2)
        norm = {v: _clamp01(x / scale) for v, x in bc.items()}
    return CentralityScores("betweenness", bc, norm)


# -- transition matrices and power iteration ----------------------------


class TransitionMatrix:
    """Sparse row map ``src -> {dst: probability}`` over a fixed node list."""

    def __init__(self, nodes=(), rows=None):
        self.nodes = [str(n) for n in nodes]
        self.rows: dict[str, dict[str, float]] = {n: {} for n in self.nodes}
        for src, row in (rows or {}).items():
            for dst, p in row.items():
                self.set(src, dst, p)

    def _ensure(self, node) -> str:
        node = str(node)
        if node not in self.rows:
            self.nodes.append(node)
            self.rows[node] = {}
        return node

    def set(self, src, dst, value: float) -> None:
        if value < 0 or math.isnan(value):
            raise InvalidParameterError(f"transition {src}->{dst} must be nonnegative")
        src, dst = self._ensure(src), self._ensure(dst)
        self.rows[src][dst] = float(value)

    def get(self, src, dst) -> float:
        return self.rows.get(str(src), {}).get(str(dst), 0.0)

    def make_stochastic(self) -> TransitionMatrix:
        """Divide each row by its sum in place; zero rows stay zero."""
        for src, row in self.rows.items():
            total = math.fsum(row.values())
            if total > 0:
                self.rows[src] = {d: p / total for d, p in row.items()}
        return self

    def is_zero(self) -> bool:
        return not any(p > 0 for row in self.rows.values() for p in row.values())

    def step(self, dist: dict) -> dict:
        """One walk step: ``dist'[j] = sum_i dist[i] * T[i][j]``."""
        out = dict.fromkeys(self.nodes, 0.0)
        for src, mass in dist.items():
            if mass:
                for dst, p in self.rows.get(str(src), {}).items():
                    out[dst] += mass * p
        return out

    def stationary(self, initial=None, eps: float = 1e-10, max_iter: int = 10000) -> dict:
        """Power iteration of ``step`` from ``initial`` (uniform by default)."""
        if self.is_zero():
            raise DegenerateMatrixError("transition matrix has no positive entry")
        return _power_iterate(self, None, 0.0, initial, eps, max_iter)

    @classmethod
    def from_network(cls, net: Network, attr: str | None = None, self_loops: bool = False):
        """Row-normalized transitions from edge attribute ``attr`` (else weight, else 1)."""
        t = cls(net.nodes())
        for (u, v), data in net.edge_items():
            w = data.get(attr) if attr else None
            if w is None:
                w = data.get("weight", 1.0)
            if u == v and not self_loops:
                continue
            t.rows[u][v] = t.rows[u].get(v, 0.0) + float(w)
            if not net.directed and u != v:
                t.rows[v][u] = t.rows[v].get(u, 0.0) + float(w)
        if self_loops:
            for n in net.nodes():
                w = net.get_node_attribute(n, attr) if attr else None
                if w is not None:
                    t.rows[n][n] = float(w)
        return t.make_stochastic()

    @classmethod
    def read(cls, path) -> TransitionMatrix:
        t = cls()
        with open(Path(path), encoding="utf-8") as fh:
            for lineno, line in enumerate(fh, 1):
                fields = line.split()
                if not fields:
                    continue
                if len(fields) != 3:
                    raise ParseError("expected 'src dst prob'", lineno, path)
                try:
                    t.set(fields[0], fields[1], float(fields[2]))
                except ValueError:
                    raise ParseError(f"bad probability {fields[2]!r}", lineno, path) from None
        return t

    def write(self, path) -> None:
        with open(Path(path), "w", encoding="utf-8") as fh:
            for src in sorted(self.rows):
                for dst in sorted(self.rows[src]):
                    fh.write(f"{src} {dst} {self.rows[src][dst]!r}\n")


def _normalize_vector(vec, nodes, what: str) -> dict:
    if vec is None:
        return {n: 1.0 / len(nodes) for n in nodes}
    vec = {str(k): float(v) for k, v in vec.items()}
    unknown = set(vec) - set(nodes)
    if unknown:
        raise InvalidParameterError(f"{what} names unknown nodes: {sorted(unknown)[:5]}")
    if any(v < 0 for v in vec.values()):
        raise InvalidParameterError(f"{what} must be nonnegative")
    total = math.fsum(vec.values())
    if total <= 0:
        raise InvalidParameterError(f"{what} must have positive mass")
    return {n: vec.get(n, 0.0) / total for n in nodes}


def _power_iterate(t: TransitionMatrix, bias, jump, initial, eps, max_iter) -> dict:
    """Iterate ``p = jump*b + (1-jump)*(T^T p + dangling*b)`` to L1 change < eps.

    With ``bias=None`` dangling mass and teleport go to the uniform vector.
    """
    nodes = t.nodes
    if not nodes:
        return {}
    b = _normalize_vector(bias, nodes, "bias")
    p = _normalize_vector(initial, nodes, "initial distribution")
    dangling = [n for n in nodes if not t.rows[n]]
    for it in range(1, max_iter + 1):
        moved = t.step(p)
        lost = math.fsum(p[n] for n in dangling)
        nxt = {n: jump * b[n] + (1 - jump) * (moved[n] + lost * b[n]) for n in nodes}
        total = math.fsum(nxt.values())
        nxt = {n: x / total for n, x in nxt.items()}
        change = math.fsum(abs(nxt[n] - p[n]) for n in nodes)
        p = nxt
        if change < eps:
            return p
    raise ConvergenceError(f"no convergence after {max_iter} iterations", last=p, iterations=max_iter)


def pagerank(
    source,
    damping: float = 0.85,
    personalization=None,
    initial=None,
    eps: float = 1e-8,
    max_iter: int = 200,
) -> dict:
    """PageRank: follow a uniform out-link with probability ``damping``.

    ``source`` is a Network (edges give uniform transitions unless they
    carry a ``pagerank_transition`` attribute) or a TransitionMatrix. The
    result is also stored as node attribute ``pagerank_value`` on networks.
    """
    if not 0 <= damping <= 1:
        raise InvalidParameterError(f"damping must be in [0, 1], got {damping}")
    if isinstance(source, TransitionMatrix):
        t = source
    else:
        t = TransitionMatrix(source.nodes())
        for (u, v), data in source.edge_items():
            w = float(data.get(PAGERANK_ATTR, 1.0))
            t.rows[u][v] = w
            if not source.directed:
                t.rows[v][u] = w
        t.make_stochastic()
    p = _power_iterate(t, personalization, 1 - damping, initial, eps, max_iter)
    if isinstance(source, Network):
        for n, x in p.items():
            source.set_node_attribute(n, PAGERANK_VALUE, x)
    return p


def lexrank(
    net: Network,
    jump: float = 0.15,
    bias=None,
    initial=None,
    eps: float = 1e-8,
    max_iter: int = 1000,
    attr: str = LEXRANK_ATTR,
) -> dict:
    """LexRank: teleport to ``bias`` with probability ``jump``.

    Transition weights come from edge attribute ``lexrank_transition``
    (falling back to ``weight``, then 1); a node attribute of the same name
    adds a self-transition. Scores are stored as ``lexrank_value``.
    """
    if not 0 <= jump <= 1:
        raise InvalidParameterError(f"jump must be in [0, 1], got {jump}")
    t = TransitionMatrix.from_network(net, attr, self_loops=True)
    if net.num_nodes() and t.is_zero():
        raise DegenerateMatrixError("all transition weights are zero")
    p = _power_iterate(t, bias, jump, initial, eps, max_iter)
    for n, x in p.items():
        net.set_node_attribute(n, LEXRANK_VALUE, x)
    return p


def lexrank_from_bias_sentences(
    sentences: dict,
    bias_sentences: list,
    jump: float = 0.15,
    threshold: float = 0.0,
    idf: dict | None = None,
    **kwargs,
) -> dict:
    """Biased LexRank over ``sentences`` (id -> text).

    Bias of a node is proportional to its summed cosine with the bias
    sentences; all-zero similarity falls back to uniform.
    """
    from .similarity import cosine, cosine_network_from_texts, term_vector

    if not bias_sentences:
        raise InvalidParameterError("need at least one bias sentence")
    net = cosine_network_from_texts(sentences, threshold=threshold, idf=idf)
    vecs = {str(k): term_vector(v) for k, v in sentences.items()}
    qvecs = [term_vector(q) for q in bias_sentences]
    bias = {k: math.fsum(cosine(v, q, idf) for q in qvecs) for k, v in vecs.items()}
    if math.fsum(bias.values()) <= 0:
        bias = None
    return lexrank(net, jump=jump, bias=bias, **kwargs)


# -- MMR ------------------------------------------------------------------


def _similarity_lookup(sim):
    if callable(sim):
        return lambda a, b: float(sim(a, b))
    if hasattr(sim, "get") and not isinstance(sim, dict):
        return lambda a, b: float(sim.get(a, b))

    def lookup(a, b):
        row = sim.get(a)
        if row is not None and b in row:
            return float(row[b])
        row = sim.get(b)
        return float(row.get(a, 0.0)) if row is not None else 0.0

    return lookup


def mmr_rerank(scores: dict, sim, lam: float = 0.5) -> tuple[list, dict]:
    """Greedy Maximal Marginal Relevance.

    Each pick maximizes ``lam*score - (1-lam)*max similarity to the picks
    so far`` (0 for the first pick); ties go to the smaller node id. The
    reranked score of a node is its objective value when picked.
    """
    if not 0 <= lam <= 1:
        raise InvalidParameterError(f"lambda must be in [0, 1], got {lam}")
    lookup = _similarity_lookup(sim)
    remaining = sorted(scores)
    chosen: list = []
    reranked: dict = {}
    redundancy = dict.fromkeys(remaining, 0.0)
    while remaining:
        best, best_val = None, -math.inf
        for v in remaining:
            val = lam * scores[v] - (1 - lam) * (redundancy[v] if chosen else 0.0)
            if val > best_val:
                best, best_val = v, val
        chosen.append(best)
        reranked[best] = best_val
        remaining.remove(best)
        for v in remaining:
            redundancy[v] = max(redundancy[v], lookup(v, best)) if len(chosen) > 1 else lookup(v, best)
    return chosen, reranked


# -- thresholding and files ---------------------------------------------


def threshold_extract(net: Network, threshold: float, attr: str = LEXRANK_VALUE) -> Network:
    keep = [n for n in net.nodes() if net.get_node_attribute(n, attr, 0.0) >= threshold]
    return net.subgraph(keep)


def threshold_extract_documents(net: Network, documents: dict, threshold: float) -> dict:
    kept = threshold_extract(net, threshold).nodes()
    return {k: documents[k] for k in kept if k in documents}


def format_distribution(dist: dict) -> str:
    return "".join(f"{n}\t{dist[n]:.12g}\n" for n in sorted(dist))


def write_distribution(dist: dict, path) -> None:
    Path(path).write_text(format_distribution(dist), encoding="utf-8")


def read_distribution(path, normalize: bool = True) -> dict:
    out = {}
    with open(Path(path), encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            fields = line.split()
            if not fields:
                continue
            if len(fields) != 2:
                raise ParseError("expected 'node prob'", lineno, path)
            try:
                out[fields[0]] = float(fields[1])
            except ValueError:
                raise ParseError(f"bad probability {fields[1]!r}", lineno, path) from None
    if normalize and out:
        total = math.fsum(out.values())
        if total <= 0:
            raise InvalidParameterError(f"{path}: distribution has no mass")
        out = {k: v / total for k, v in out.items()}
    return out


def write_centrality(values: dict, path, delim: str = " ") -> None:
    with open(Path(path), "w", encoding="utf-8") as fh:
        for n in sorted(values):
            fh.write(f"{n}{delim}{values[n]:.12g}\n")
