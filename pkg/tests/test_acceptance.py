"""Acceptance criteria, one test per criterion.

Each criterion gathers its individual checks and prints a single
PASS/FAIL line (visible without ``-s``). Run directly with
``python3 tests/test_acceptance.py`` for just the summary lines.
"""

from __future__ import annotations

import math
import os
import random
import re
import subprocess
import sys
import time
from pathlib import Path

import numpy as np
import pytest
from scipy.stats import chi2_contingency

sys.path.insert(0, str(Path(__file__).parent))

from helpers import (  # noqa: E402
    FIXTURES,
    GOLDEN_COSINES,
    brute_force_betweenness,
    brute_force_distances,
    golden_base,
    golden_network,
    random_connected_graph,
)

from textnet import centrality as cen  # noqa: E402
from textnet import classify as clf  # noqa: E402
from textnet import netstats as ns  # noqa: E402
from textnet import randnet as rn  # noqa: E402
from textnet import stats as st  # noqa: E402
from textnet.corpus import build_corpus, fuzzy_or_query, index_tokens  # noqa: E402
from textnet.formats import read_network, write_network  # noqa: E402
from textnet.graph import Network, same_graph  # noqa: E402


class Checks:
    """Named boolean checks for one criterion."""

    def __init__(self, number: int, title: str):
        self.number = number
        self.title = title
        self.results: list[tuple[str, bool, str]] = []
        self.started = time.perf_counter()
        self.elapsed = 0.0

    def check(self, name: str, ok, detail="") -> bool:
        self.results.append((name, bool(ok), str(detail)))
        return bool(ok)

    def close(self, budget: float | None = None) -> None:
        self.elapsed = time.perf_counter() - self.started
        if budget is not None:
            self.check(f"runtime < {budget:g} s", self.elapsed < budget, f"{self.elapsed:.3f} s")

    @property
    def failed(self):
        return [r for r in self.results if not r[1]]

    def line(self) -> str:
        status = "PASS" if not self.failed else "FAIL"
        out = (f"criterion {self.number} [{status}] {self.title}: "
               f"{len(self.results) - len(self.failed)}/{len(self.results)} checks, {self.elapsed:.2f} s")
        for name, _, detail in self.failed:
            out += f"\n    failed: {name} ({detail})"
        return out


def _close(x, target, tol):
    return abs(x - target) < tol


# -- 1 ------------------------------------------------------------------


def criterion_1(tmp: Path) -> Checks:
    c = Checks(1, "golden graph suite")
    g = golden_base()
    c.check("initial diameter 3", ns.diameter(g) == 3, ns.diameter(g))
    g.remove_edge(4, 6)
    c.check("diameter 4 after edge removal", ns.diameter(g) == 4, ns.diameter(g))
    g.add_node(7, text="")
    g.add_edge(1, 7)
    g.add_edge(7, 6)
    c.check("find_path length 3", len(g.find_path(1, 6)) == 3, g.find_path(1, 6))
    g.remove_node(7)
    c.check("find_path length 5", len(g.find_path(1, 6)) == 5, g.find_path(1, 6))
    c.check("num_documents 6", g.num_documents() == 6, g.num_documents())
    c.check("num_pairs 15", g.num_pairs() == 15, g.num_pairs())
    c.check("num_links 5", g.num_links() == 5, g.num_links())

    g = golden_network()
    c.check("num_links 5 with EX8", g.num_links() == 5, g.num_links())
    c.check("external links 2", g.num_links(external=True) == 2, g.num_links(external=True))
    h_in = ns.degree_histogram(g, "in")
    h_out = ns.degree_histogram(g, "out")
    h_tot = ns.degree_histogram(g, "total")
    c.check("in-link bin 1 = 5", h_in.get(1) == 5, h_in)
    c.check("out-link bin 1 = 3", h_out.get(1) == 3, h_out)
    c.check("total-link bin 1 = 2", h_tot.get(1) == 2, h_tot)
    c.check("avg total degree 2", ns.avg_degree(g, "total") == 2, ns.avg_degree(g, "total"))
    for direction, pattern in (
        ("out", r"y = 3 x\^-0\.5849\d+"),
        ("in", r"y = 5 x\^-2\.3219\d+"),
        ("total", r"y = 2\.204\d+ x\^0\.0629\d+"),
    ):
        text = str(ns.power_law_fit(ns.degree_histogram(g, direction)))
        c.check(f"{direction} power law string", re.search(pattern, text), text)
    c.check("final diameter 4", ns.diameter(g) == 4, ns.diameter(g))
    c.check("undirected diameter 5", ns.diameter(g, undirected=True) == 5, ns.diameter(g, undirected=True))
    avg = ns.diameter(g, avg=True)
    c.check("directed avg within 0.005 of 2.055", _close(avg, 2.055, 0.005), avg)
    avg_u = ns.diameter(g, avg=True, undirected=True)
    c.check("undirected avg within 0.005 of 2.285", _close(avg_u, 2.285, 0.005), avg_u)
    alpha, _ = ns.newman_power_law_exponent(h_tot, 1)
    c.check("Newman exponent within 0.005 of 2.635", _close(alpha, 2.635, 0.005), alpha)
    lcc = ns.find_largest_component(g, "weak")
    c.check("largest weak component 7", lcc.num_nodes() == 7, lcc.num_nodes())
    ws = ns.watts_strogatz_cc(g)
    c.check("Watts-Strogatz cc within 0.005 of 0.235", _close(ws, 0.235, 0.005), ws)
    labels, _, _ = ns.triangles(g)
    c.check("triangles", labels == ["4-5-EX8"], labels)
    c.check("d(1,4) = 2", ns.shortest_path_length(g, "1", "4") == 2)
    c.check("d(1,5) = 3", ns.shortest_paths_lengths(g, "1").get("5") == 3)
    la, nla = ns.average_cosines(g, GOLDEN_COSINES)
    c.check("average cosine linked", _close(la, 0.1665, 0.0005), la)
    c.check("average cosine not linked", _close(nla, 0.3225, 0.0005), nla)
    lb, nlb = ns.cosine_histograms(g, GOLDEN_COSINES)
    c.check("cosine histogram bin 10", lb[10] == 2 and nlb[10] == 2, (lb[10], nlb[10]))
    c.close(budget=1.0)
    return c


# -- 2 ------------------------------------------------------------------


def criterion_2(tmp: Path) -> Checks:
    c = Checks(2, "golden stats suite")
    dist = st.EmpiricalDistribution.read_from_file(FIXTURES / "j.dist")
    c.check("count 8", dist.count == 8, dist.count)
    c.check("distribution", dist.distribution == [7, 4, 1, 0, 0, 0, 0, 3], dist.distribution)
    fit = st.pl_estimate(dist.distribution)
    c.check("c_hat", _close(fit.c_hat, 4.7265, 0.0005), fit.c_hat)
    c.check("alpha_hat", _close(fit.alpha_hat, -0.465, 0.005), fit.alpha_hat)
    expected = st.gen_pl(fit.c_hat, fit.alpha_hat, dist.count)
    df, pv = st.compare_chi_square(dist.distribution, expected, 2)
    c.check("df 5", df == 5, df)
    c.check("p-value", _close(pv, 0.0895, 0.0005), pv)
    samples = st.gen_pois(8, 20, random.Random(0))
    c.check("20 poisson samples", len(samples) == 20, len(samples))
    c.check("poisson samples positive", all(s > 0 for s in samples), samples)
    big = st.gen_pois(8, 100_000, random.Random(1))
    mean = sum(big) / len(big)
    sigma = math.sqrt(8 / len(big))
    c.check("poisson mean within 3 sigma", abs(mean - 8) < 3 * sigma, mean)
    c.close(budget=1.0)
    return c


# -- 3 ------------------------------------------------------------------


def criterion_3(tmp: Path) -> Checks:
    c = Checks(3, "IR identity suite")
    corpus = build_corpus(FIXTURES / "ir6", "ir6", tmp / "produced")
    corpus.build_docno()
    n = len(corpus)
    c.check("six documents", n == 6, n)
    for stemmed in (False, True):
        idf = corpus.build_idf(stemmed)
        token_sets = [set(index_tokens(corpus.text(d), stemmed)) for d in corpus.doc_ids()]
        bad = []
        for term, value in idf.values.items():
            df = sum(term in s for s in token_sets)
            if not math.isclose(value, math.log(n / df), rel_tol=0, abs_tol=1e-12):
                bad.append(term)
        c.check(f"idf = ln(N/df) (stemmed={stemmed})", not bad and idf.values, bad[:5])
    tf = corpus.build_tf(stemmed=True)
    a = tf.phrase_query(["result", "in"])
    b = tf.phrase_query(["resulting", "in"])
    c.check("phrase 'result in' == 'resulting in'", a == b and a, (a, b))

    rng = random.Random(7)
    vocab = sorted(tf.postings) + ["zebra", "quantum"]
    bad = []
    for _ in range(100):
        x, y = rng.choice(vocab), rng.choice(vocab)
        mx = fuzzy_or_query(tf, terms=[x])
        my = fuzzy_or_query(tf, terms=[y])
        not_x = fuzzy_or_query(tf, neg_terms=[x])
        both = fuzzy_or_query(tf, terms=[x, y])
        A, B, C = len(mx), len(my), len(both)
        D = sum(1 for s in both.values() if s == 1.0)
        if len(not_x) != n - A or D > min(A, B) or C > A + B:
            bad.append((x, y, A, B, C, D, len(not_x)))
    c.check("fuzzy-OR identities on 100 random queries", not bad, bad[:3])
    c.close()
    return c


# -- 4 ------------------------------------------------------------------


def criterion_4(tmp: Path) -> Checks:
    c = Checks(4, "centrality oracle suite")
    bad_b, bad_c, bad_d, bad_sum = [], [], [], []
    nontrivial = 0
    for seed in range(50):
        rng = random.Random(seed)
        g = random_connected_graph(rng, rng.randint(2, 8), directed=rng.random() < 0.5)
        got = cen.betweenness_centrality(g).raw
        want = brute_force_betweenness(g)
        nontrivial += any(x > 0 for x in want.values())
        if any(abs(got[v] - want[v]) > 1e-9 for v in g.nodes()):
            bad_b.append(seed)
        dists = brute_force_distances(g)
        close = cen.closeness_centrality(g).raw
        for v in g.nodes():
            total = sum(d for (s, _), d in dists.items() if s == v)
            if abs(close[v] - (1 / total if total else 0.0)) > 1e-12:
                bad_c.append(seed)
                break
        deg = cen.degree_centrality(g).raw
        for v in g.nodes():
            ends = sum((u == v) + (w == v) for u, w in g.edges())
            if deg[v] != (ends / 2 if g.directed else ends):
                bad_d.append(seed)
                break
        pr = cen.pagerank(g)
        if abs(sum(pr.values()) - 1) > 1e-9:
            bad_sum.append(seed)
    c.check("Brandes == brute force on 50 graphs", not bad_b, bad_b)
    c.check("oracle graphs have positive betweenness", nontrivial >= 25, nontrivial)
    c.check("closeness == brute force", not bad_c, bad_c)
    c.check("degree == brute force", not bad_d, bad_d)
    c.check("PageRank sums to 1", not bad_sum, bad_sum)

    two = Network()
    two.add_edge("a", "b")
    two.add_edge("b", "a")
    pr = cen.pagerank(two)
    c.check("2-cycle PageRank (0.5, 0.5)", all(abs(x - 0.5) <= 1e-8 for x in pr.values()), pr)

    g = random_connected_graph(random.Random(3), 6, directed=False)
    bias = {v: i + 1.0 for i, v in enumerate(g.nodes())}
    total = sum(bias.values())
    lr = cen.lexrank(g, jump=1.0, bias=bias)
    c.check("LexRank jump=1 returns the bias",
            all(abs(lr[v] - bias[v] / total) < 1e-12 for v in g.nodes()), lr)
    c.check("LexRank sums to 1", abs(sum(lr.values()) - 1) < 1e-9)

    uniform_ok = True
    for n, w in ((5, 0.7), (4, 0.3), (7, 1.0)):
        ring = Network(directed=False)
        for i in range(n):
            ring.add_edge(i, (i + 1) % n, weight=w, lexrank_transition=w)
        scores = cen.lexrank(ring, jump=0.15)
        uniform_ok &= all(abs(x - 1 / n) <= 1e-8 for x in scores.values())
    k4 = Network(directed=False)
    for i in range(4):
        for j in range(i + 1, 4):
            k4.add_edge(i, j, lexrank_transition=0.3)
    uniform_ok &= all(abs(x - 0.25) <= 1e-8 for x in cen.lexrank(k4).values())
    c.check("symmetric equal-row-sum LexRank is uniform", uniform_ok)

    worst = 0.0
    for seed in range(20):
        rng = np.random.default_rng(seed)
        m = rng.random((4, 4)) + 0.01
        m /= m.sum(axis=1, keepdims=True)
        t = cen.TransitionMatrix([str(i) for i in range(4)])
        for i in range(4):
            for j in range(4):
                t.set(str(i), str(j), float(m[i, j]))
        got = t.stationary()
        vals, vecs = np.linalg.eig(m.T)
        v = np.real(vecs[:, np.argmin(np.abs(vals - 1))])
        v /= v.sum()
        worst = max(worst, max(abs(got[str(i)] - v[i]) for i in range(4)))
    c.check("stationary == eigen-oracle on 20 chains", worst <= 1e-6, worst)
    c.close()
    return c


# -- 5 ------------------------------------------------------------------


def _is_subgraph(sub: Network, g: Network) -> bool:
    return all(g.has_node(v) for v in sub.nodes()) and all(g.has_edge(u, v) for u, v in sub.edges())


def criterion_5(tmp: Path) -> Checks:
    c = Checks(5, "generator and sampler suite")
    g = rn.erdos_renyi_gnm(10, 20, seed=1)
    simple = all(u != v for u, v in g.edges()) and len(set(g.edges())) == len(g.edges())
    c.check("gnm(10,20) exact counts", g.num_nodes() == 10 and g.num_edges() == 20 and simple)

    mean, sd = rn.expected_gnp_edges(100, 0.1, directed=True)
    counts = [rn.erdos_renyi_gnp(100, 0.1, directed=True, seed=s).num_edges() for s in range(100)]
    avg = sum(counts) / len(counts)
    outside = sum(abs(x - mean) > 3 * sd for x in counts)
    c.check("gnp(100,0.1) mean count within 3 sigma", abs(avg - mean) < 3 * sd / math.sqrt(len(counts)),
            f"mean {avg}, expected {mean}")
    c.check("gnp(100,0.1) per-seed counts within 3 sigma", outside <= 2, f"{outside} of 100 outside")

    ring_ok = True
    for n, k in ((10, 4), (7, 2), (12, 6)):
        ws = rn.watts_strogatz(n, k, 0.0, seed=5)
        want = {frozenset((str(i), str((i + s) % n))) for i in range(n) for s in range(1, k // 2 + 1)}
        ring_ok &= {frozenset(e) for e in ws.edges()} == want and ws.num_edges() == n * k // 2
    c.check("WS(n,k,0) is the ring lattice", ring_ok)

    base = rn.erdos_renyi_gnm(60, 240, seed=2)
    sizes_ok = True
    for kind in ("randomnode", "forestfire"):
        for k in (0, 1, 17, 60):
            s = rn.sample(base, k, kind, seed=k)
            sizes_ok &= s.num_nodes() == k and _is_subgraph(s, base)
    for k in (0, 5, 100, 240):
        s = rn.sample(base, k, "randomedge", seed=k)
        sizes_ok &= s.num_edges() == k and _is_subgraph(s, base)
    c.check("samplers give subgraphs of the requested size", sizes_ok)

    def dump(net, name):
        path = tmp / name
        write_network(net, path)
        return path.read_bytes()

    same = True
    for make in (
        lambda: rn.erdos_renyi_gnm(30, 80, weighted=True, seed=11),
        lambda: rn.erdos_renyi_gnp(30, 0.2, seed=11),
        lambda: rn.watts_strogatz(30, 4, 0.3, seed=11),
        lambda: rn.barabasi_albert(30, 2, seed=11),
        lambda: rn.sample_forest_fire(base, 20, seed=11),
        lambda: rn.sample_random_edge(base, 20, seed=11),
    ):
        same &= dump(make(), "a.graph") == dump(make(), "b.graph")
    c.check("fixed seeds give byte-identical edgelists", same)
    c.close()
    return c


# -- 6 ------------------------------------------------------------------


def _random_graph(rng: random.Random) -> Network:
    g = Network(directed=rng.random() < 0.5)
    n = rng.randint(1, 25)
    names = [rng.choice(["", "n", "doc", "EX"]) + str(i) for i in range(n)]
    for v in names:
        g.add_node(v)
    weighted = rng.random() < 0.5
    for _ in range(rng.randint(0, 3 * n)):
        u, v = rng.choice(names), rng.choice(names)
        if u == v or g.has_edge(u, v):
            continue
        g.add_edge(u, v, weight=rng.uniform(-5, 5) if weighted else None)
    return g


def criterion_6(tmp: Path) -> Checks:
    c = Checks(6, "format round-trip suite")
    rng = random.Random(2024)
    bad = []
    for i in range(100):
        g = _random_graph(rng)
        write_network(g, tmp / "g.graph", "edgelist")
        a = read_network(tmp / "g.graph", "edgelist", directed=g.directed)
        write_network(a, tmp / "g.net", "pajek")
        b = read_network(tmp / "g.net", "pajek")
        write_network(b, tmp / "g.graphml", "graphml")
        d = read_network(tmp / "g.graphml", "graphml")
        write_network(d, tmp / "h.graph", "edgelist")
        e = read_network(tmp / "h.graph", "edgelist", directed=d.directed)
        if not (same_graph(g, e, 1e-9) and e.directed == g.directed):
            bad.append(i)
    c.check("100 random graphs survive edgelist->pajek->graphml->edgelist", not bad, bad[:5])

    g = golden_base()
    g.remove_edge(4, 6)
    g.name = "test_graph"
    write_network(g, tmp / "graph.pajek", "pajek")
    back = read_network(tmp / "graph.pajek", "pajek")
    c.check("Pajek write/read equality", back == g)
    c.close()
    return c


# -- 7 ------------------------------------------------------------------


def _separable(rng: random.Random, n: int, d: int, margin: float = 0.1):
    w = [rng.gauss(0, 1) for _ in range(d + 1)]
    norm = math.sqrt(sum(x * x for x in w))
    out = []
    while len(out) < n:
        x = [rng.uniform(-1, 1) for _ in range(d)]
        s = sum(a * b for a, b in zip(w, x + [1.0])) / norm
        if abs(s) >= margin:
            out.append(clf.LabeledVector(1 if s > 0 else -1, {k + 1: v for k, v in enumerate(x)}))
    return out, w


def criterion_7(tmp: Path) -> Checks:
    c = Checks(7, "classification suite")
    bad = []
    for seed in range(20):
        rng = random.Random(seed)
        vecs, w = _separable(rng, rng.randint(10, 60), rng.randint(2, 6))
        norm = math.sqrt(sum(x * x for x in w))
        aug = [list(v.features.values()) + [1.0] for v in vecs]
        radius = max(math.sqrt(sum(x * x for x in a)) for a in aug)
        gamma = min(v.label * sum(p * q for p, q in zip(w, a)) / norm for v, a in zip(vecs, aug))
        model = clf.learn(vecs)
        acc = clf.classify(vecs, model).accuracy
        if acc != 100.0 or not model.converged or model.mistakes > (radius / gamma) ** 2:
            bad.append((seed, acc, model.mistakes, (radius / gamma) ** 2))
    c.check("perceptron separates 20 fixtures within the mistake bound", not bad, bad[:3])

    rng = random.Random(9)
    words = [f"w{i}" for i in range(12)]
    docs = [(rng.choice("ab"), rng.sample(words, rng.randint(1, 8))) for _ in range(40)]
    docs[0] = ("a", docs[0][1])
    docs[1] = ("b", docs[1][1])
    scores = clf.chi_squared(docs)
    worst = 0.0
    for f, got in scores.items():
        table = [[sum(f in fs for cl, fs in docs if cl == k) for k in "ab"],
                 [sum(f not in fs for cl, fs in docs if cl == k) for k in "ab"]]
        if min(sum(r) for r in table) == 0:
            want = 0.0
        else:
            want = chi2_contingency(table, correction=False)[0]
        worst = max(worst, abs(got - want))
    c.check("chi-square matches contingency oracle", worst <= 1e-9, worst)

    vecs = [clf.LabeledVector(rng.choice((1, -1)),
                              {k: rng.choice([rng.uniform(-10, 10), float(rng.randint(0, 5))])
                               for k in sorted(rng.sample(range(1, 50), rng.randint(0, 10)))})
            for _ in range(50)]
    clf.write_svm_light(vecs, tmp / "v.svm")
    c.check("svm_light round trip", clf.read_svm_light(tmp / "v.svm") == vecs)
    c.close()
    return c


# -- 8 ------------------------------------------------------------------


def criterion_8(tmp: Path) -> Checks:
    c = Checks(8, "pipeline smoke test")
    env = dict(os.environ)
    src = str(Path(__file__).resolve().parents[1] / "src")
    env["PYTHONPATH"] = src + os.pathsep + env.get("PYTHONPATH", "")

    def run(*args, stdout=None):
        cmd = [sys.executable, "-m", "textnet", *args]
        res = subprocess.run(cmd, cwd=tmp, env=env, capture_output=stdout is None,
                             stdout=stdout, text=True)
        c.check(" ".join(args[:1]) + " exits 0", res.returncode == 0, getattr(res, "stderr", ""))
        return res

    run("directory-to-corpus", "-c", "chemical", "-b", "produced", "-d", str(FIXTURES / "html10"))
    run("index-corpus", "-c", "chemical", "-b", "produced")
    res = run("tf-query", "-c", "chemical", "-b", "produced", "-q", "health")
    c.check("tf-query finds the term", res.stdout.startswith("health "), res.stdout[:80])
    res = run("idf-query", "-c", "chemical", "-b", "produced", "-q", "health")
    c.check("idf-query prints a value", res.stdout.split()[:1] == ["health"], res.stdout[:80])
    run("corpus-to-network", "-c", "chemical", "-b", "produced")
    with open(tmp / "chemical.graph.stats", "w") as out:
        run("print-network-stats", "-i", "chemical.graph", "--all", stdout=out)
    stats = tmp / "chemical.graph.stats"
    c.check("stats file written", stats.exists() and stats.stat().st_size > 0)
    for kind in ("degree", "closeness", "betweenness"):
        f = tmp / f"chemical.{kind}-centrality"
        c.check(f"{kind} centrality file", f.exists() and f.stat().st_size > 0)
    c.close(budget=10.0)
    return c


CRITERIA = [criterion_1, criterion_2, criterion_3, criterion_4,
            criterion_5, criterion_6, criterion_7, criterion_8]


@pytest.mark.parametrize("criterion", CRITERIA, ids=[f"criterion_{i}" for i in range(1, 9)])
def test_criterion(criterion, tmp_path, capsys):
    result = criterion(tmp_path)
    with capsys.disabled():
        print("\n" + result.line())
    assert not result.failed, result.line()


if __name__ == "__main__":
    import tempfile

    failures = 0
    for crit in CRITERIA:
        with tempfile.TemporaryDirectory() as d:
            r = crit(Path(d))
        print(r.line())
        failures += bool(r.failed)
    sys.exit(1 if failures else 0)
