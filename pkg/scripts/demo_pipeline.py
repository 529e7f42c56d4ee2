#!/usr/bin/env python3
"""Corpus to cosine network to statistics, end to end through the library.

    python3 scripts/demo_pipeline.py DIR [--workdir out] [--cutoff 0.1]

Builds a corpus from DIR, indexes it, computes the tf-idf cosine matrix,
thresholds it and prints the network summary plus the top LexRank nodes.
"""

import argparse
from collections import Counter
from pathlib import Path

from textnet import centrality as cen
from textnet import netstats as ns
from textnet.corpus import build_corpus, index_tokens
from textnet.pipeline import format_sweep, sweep, threshold_network
from textnet.similarity import compute_cosine_matrix, cosine_network, write_cos


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("directory")
    ap.add_argument("--workdir", default="demo-out")
    ap.add_argument("--cutoff", type=float, default=0.1)
    ap.add_argument("--step", type=float, default=0.1)
    ap.add_argument("--top", type=int, default=5)
    args = ap.parse_args(argv)

    work = Path(args.workdir)
    corpus = build_corpus(args.directory, "demo", root=work)
    corpus.build_docno()
    idf = corpus.build_idf().values
    vectors = {d: Counter(index_tokens(corpus.text(d))) for d in corpus.doc_ids()}
    matrix = compute_cosine_matrix(vectors, idf)
    write_cos(matrix, work / "demo.cos")
    print(f"{len(corpus)} documents, {len(matrix)} cosine pairs -> {work / 'demo.cos'}")

    net = threshold_network(matrix, args.cutoff)
    print(f"cutoff {args.cutoff}: {net.num_nodes()} nodes, {net.num_edges()} edges")
    if net.num_nodes() > 1:
        print(ns.network_info(net).as_line())

    rows = sweep(matrix, 0.0, 1.0, args.step, graphs_dir=work / "graphs", prefix="demo")
    print(format_sweep(rows), end="")

    lex = cosine_network(matrix)
    if lex.num_edges():
        ranks = cen.lexrank(lex)
        print("top lexrank:")
        for doc, score in sorted(ranks.items(), key=lambda kv: -kv[1])[: args.top]:
            print(f"  {corpus.files[doc]} {score:.4f}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
