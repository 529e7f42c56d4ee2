"""Fixtures shared by the unit and acceptance tests."""

from __future__ import annotations

import itertools
import random
from collections import deque
from pathlib import Path

from textnet.graph import Network

FIXTURES = Path(__file__).parent / "fixtures"

# Symmetric cosine table used with the golden network.
GOLDEN_COSINES = {
    "1": {"2": 0.1, "3": 0.3, "4": 0.6},
    "2": {"1": 0.1, "3": 0.4, "4": 0.1},
    "3": {"1": 0.3, "2": 0.4, "4": 0.2},
    "4": {"1": 0.6, "2": 0.1, "3": 0.2},
}


def golden_base() -> Network:
    """Six labelled nodes and the six starting edges."""
    g = Network()
    for i, text in enumerate(
        ["Random sentence", "unique", "first name", "second name", "third name", "fourth name"],
        1,
    ):
        g.add_node(i, text=text)
    for u, v in [(1, 2), (1, 3), (2, 4), (4, 5), (5, 6), (4, 6)]:
        g.add_edge(u, v)
    return g


def golden_network() -> Network:
    """The base graph after the edit sequence, with the EX8 node attached."""
    g = golden_base()
    g.remove_edge(4, 6)
    g.add_node(7, text="")
    g.add_edge(1, 7)
    g.add_edge(7, 6)
    g.remove_node(7)
    g.add_node("EX8", text="an external node")
    g.add_edge("EX8", 4)
    g.add_edge(5, "EX8")
    return g


def random_connected_graph(rng: random.Random, n: int, directed: bool) -> Network:
    """Random spanning tree plus extra edges; ids "0".."n-1"."""
    g = Network(directed=directed)
    for i in range(n):
        g.add_node(i)
    order = list(range(n))
    rng.shuffle(order)
    for k in range(1, n):
        a, b = order[k], order[rng.randrange(k)]
        if directed and rng.random() < 0.5:
            a, b = b, a
        g.add_edge(a, b)
    for _ in range(rng.randrange(n + 1)):
        a, b = rng.sample(range(n), 2)
        if not g.has_edge(a, b):
            g.add_edge(a, b)
    return g


def _adjacency(g: Network) -> dict:
    adj = {v: set() for v in g.nodes()}
    for u, v in g.edges():
        if u == v:
            continue
        adj[u].add(v)
        if not g.directed:
            adj[v].add(u)
    return adj


def brute_force_betweenness(g: Network) -> dict:
    """Raw betweenness by enumerating every shortest path explicitly."""
    adj = _adjacency(g)
    nodes = g.nodes()
    out = dict.fromkeys(nodes, 0.0)
    for s, t in itertools.permutations(nodes, 2):
        paths = all_shortest_paths(adj, s, t)
        if not paths:
            continue
        for p in paths:
            for v in p[1:-1]:
                out[v] += 1.0 / len(paths)
    if not g.directed:
        out = {v: x / 2 for v, x in out.items()}
    return out


def all_shortest_paths(adj: dict, s, t) -> list:
    dist = {s: 0}
    queue = deque([s])
    while queue:
        x = queue.popleft()
        for y in adj[x]:
            if y not in dist:
                dist[y] = dist[x] + 1
                queue.append(y)
    if t not in dist:
        return []
    paths = [[s]]
    out = []
    while paths:
        p = paths.pop()
        if p[-1] == t:
            out.append(p)
            continue
        for y in adj[p[-1]]:
            if dist.get(y) == len(p) and dist[y] <= dist[t]:
                paths.append(p + [y])
    return out


def brute_force_distances(g: Network) -> dict:
    adj = _adjacency(g)
    out = {}
    for s in g.nodes():
        for t in g.nodes():
            if s != t:
                paths = all_shortest_paths(adj, s, t)
                if paths:
                    out[(s, t)] = len(paths[0]) - 1
    return out
