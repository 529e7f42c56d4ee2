"""``textnet`` command: corpus building, networks, statistics and classification.

Exit status is 0 on success, 1 for usage errors and 2 when the work itself
fails (unreadable input, malformed files, bad parameters).
"""

from __future__ import annotations

import argparse
import random
import sys
from collections import Counter
from dataclasses import dataclass, field
from pathlib import Path

from . import centrality as cen
from . import classify as clf
from . import netstats as ns
from . import pipeline as pl
from . import randnet as rn
from . import stats as st
from .corpus import Corpus, build_corpus, index_tokens
from .errors import InvalidParameterError, TextnetError
from .formats import FORMATS, guess_format, read_network, write_network
from .graph import hyperlink_network
from .similarity import compute_cosine_matrix, lexical_network, ngram_network, read_cos, write_cos
from .text import Document, split_sentences

USAGE_ERROR = 1
RUNTIME_ERROR = 2
# All-pairs statistics get slow past this many nodes; --force overrides.
SIZE_LIMIT = 2000


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(f"{self.prog}: error: {message}")


@dataclass
class PipelineConfig:
    """Validated sweep parameters shared by the cos-* subcommands."""

    input: Path
    start: float = 0.0
    end: float = 1.0
    step: float = 0.01
    extra: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.step <= 0:
            raise UsageError(f"--step must be positive, got {self.step}")
        if self.start > self.end:
            raise UsageError(f"--start {self.start} is after --end {self.end}")
        if not self.input.is_file():
            raise FileNotFoundError(f"no such file: {self.input}")


def _log(args, msg: str) -> None:
    if getattr(args, "verbose", False):
        print(msg, file=sys.stderr)


def _emit(text: str, output) -> None:
    if output:
        Path(output).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _corpus(args) -> Corpus:
    return Corpus(args.corpus, args.base)


# -- corpus commands ----------------------------------------------------


def cmd_directory_to_corpus(args):
    corpus = build_corpus(args.directory, args.corpus, args.base, args.type)
    for path, err in corpus.errors:
        print(f"skipped {path}: {err}", file=sys.stderr)
    _log(args, f"corpus {args.corpus}: {len(corpus)} documents under {corpus.dir}")


def cmd_index_corpus(args):
    corpus = _corpus(args)
    with corpus.lock():
        corpus.build_docno()
        variants = [False, True] if args.stemmed is None else [args.stemmed]
        for stemmed in variants:
            if args.tf:
                _log(args, f"building tf index (stemmed={stemmed})")
                corpus.build_tf(stemmed, args.punc)
            if args.idf:
                _log(args, f"building idf index (stemmed={stemmed})")
                corpus.build_idf(stemmed, args.punc)
            if args.stats:
                corpus.build_stats(stemmed)
        if args.links:
            corpus.write_links()


def cmd_tf_query(args):
    corpus = _corpus(args)
    tf = corpus.load_tf(bool(args.stemmed), args.punc)
    if args.all:
        for term in sorted(tf.postings):
            total, ndocs, _ = tf.term_query(term)
            print(f"{term} {total} {ndocs}")
        return
    if not args.query:
        raise UsageError("tf-query needs --query or --all")
    words = args.query.split()
    if len(words) > 1:
        total, ndocs, hits = tf.phrase_freq(words)
    else:
        total, ndocs, hits = tf.term_query(words[0])
    print(f"{args.query} {total} {ndocs}")
    for doc in sorted(hits, key=lambda d: (-hits[d], tf.doc_ids.index(d))):
        print(f"{corpus.urls.get(doc, doc)} {hits[doc]}")


def cmd_idf_query(args):
    corpus = _corpus(args)
    idf = corpus.load_idf(bool(args.stemmed), args.punc)
    if args.all:
        for term in sorted(idf.values):
            print(f"{term} {idf.values[term]:.10g}")
        return
    if not args.query:
        raise UsageError("idf-query needs --query or --all")
    print(f"{args.query} {idf.get(args.query):.10g}")


def cmd_corpus_to_network(args):
    corpus = _corpus(args)
    if not corpus.links_path.exists():
        corpus.write_links()
    id_map = None if args.docids else corpus.urls
    net = hyperlink_network(corpus.links_path, ignore_ex=args.ignore_ex, id_map=id_map)
    for docid in corpus.doc_ids():
        net.add_node(id_map.get(docid, docid) if id_map else docid)
    out = args.output or f"{args.corpus}.graph"
    write_network(net, out, "edgelist", weights=False)
    _log(args, f"wrote {net.num_nodes()} nodes, {net.num_edges()} edges to {out}")


def _corpus_vectors(corpus: Corpus, stemmed: bool, sample, seed) -> dict:
    ids = corpus.doc_ids()
    if sample is not None:
        ids = sorted(random.Random(seed).sample(ids, min(sample, len(ids))), key=ids.index)
    return {d: Counter(index_tokens(corpus.text(d), stemmed)) for d in ids}


def cmd_corpus_to_cos(args):
    corpus = _corpus(args)
    try:
        idf = corpus.load_idf(args.stem).values
    except TextnetError:
        idf = None
        _log(args, "no idf index found, using unit idf")
    matrix = compute_cosine_matrix(_corpus_vectors(corpus, args.stem, args.sample, args.seed), idf)
    write_cos(matrix, args.output or f"{args.corpus}.cos")


def cmd_corpus_to_lexical_network(args):
    corpus = _corpus(args)
    net = lexical_network(corpus.documents())
    write_network(net, args.output or f"{args.corpus}.lexical.graph", "edgelist")


# -- cosine sweeps -----------------------------------------------------


def _sweep_config(args) -> PipelineConfig:
    return PipelineConfig(Path(args.input), args.start, args.end, args.step)


def cmd_cos_to_stats(args):
    cfg = _sweep_config(args)
    prefix = pl.prefix_of(cfg.input, ".cos")
    rows = pl.sweep(
        cfg.input, cfg.start, cfg.end, cfg.step,
        graphs_dir=args.graphs, prefix=prefix,
        sample_size=args.sample, sample_type=args.sampletype, seed=args.seed,
        single=args.single, details=args.all, stats=args.stats,
    )
    for r in rows:
        _log(args, f"cutoff {r.cutoff}: {r.network.num_edges()} edges")
    _emit(pl.format_sweep(rows, args.delimout), args.output)


def cmd_cos_to_networks(args):
    cfg = _sweep_config(args)
    prefix = pl.prefix_of(cfg.input, ".cos")
    out_dir = Path(args.output or Path("graphs") / prefix)
    out_dir.mkdir(parents=True, exist_ok=True)
    matrix = read_cos(cfg.input)
    for c in pl.cutoff_grid(cfg.start, cfg.end, cfg.step):
        net = pl.threshold_network(matrix, float(c))
        pl.write_edge_file(net, out_dir / f"{prefix}-{c}.net")


def cmd_cos_to_histograms(args):
    cfg = _sweep_config(args)
    prefix = pl.prefix_of(cfg.input, ".cos")
    out_dir = Path(args.output or "hists")
    out_dir.mkdir(parents=True, exist_ok=True)
    matrix = read_cos(cfg.input)
    for c in pl.cutoff_grid(cfg.start, cfg.end, cfg.step):
        hist = pl.link_degree_hist(pl.threshold_network(matrix, float(c)))
        (out_dir / f"{prefix}.{c}.hist").write_text(" ".join(map(str, hist)) + "\n", encoding="utf-8")


def _write_plot_data(base: str, counts, matlab: bool, title: str, xlabel: str) -> None:
    pairs = list(enumerate(counts))
    cum = list(enumerate(pl.cumulative(counts)))
    pl.write_xy(pairs, f"{base}-hist.dat")
    pl.write_xy(cum, f"{base}-cumulative.dat")
    if matlab:
        for suffix, data in (("hist", pairs), ("cumulative", cum)):
            body = "".join(f"{x} {y}\n" for x, y in data)
            Path(f"{base}-{suffix}.m").write_text(
                f"x = [{body}];\nloglog(x(:,1), x(:,2));\n"
                f"title(['{title}']);\nxlabel('{xlabel}');\nylabel('Count');\n",
                encoding="utf-8",
            )


def cmd_cos_to_cosplots(args):
    matrix = read_cos(args.input)
    prefix = pl.prefix_of(args.input, ".cos")
    base = str(Path(args.output or ".") / f"{prefix}-cosine")
    _write_plot_data(base, pl.cosine_value_hist(matrix, args.bins), args.matlab,
                     f"Cosine distribution of {prefix}", "Cosine bin")


def cmd_network_to_plots(args):
    net = read_network(args.input, guess_format(args.input), directed=not args.undirected)
    prefix = pl.prefix_of(args.input, ".graph", ".cos")
    base = str(Path(args.output or ".") / f"{prefix}-degree")
    _write_plot_data(base, pl.link_degree_hist(net), args.matlab,
                     f"Degree distribution of {prefix}", "Degree")


# -- networks --------------------------------------------------------


def cmd_print_network_stats(args):
    path = Path(args.input)
    fmt = args.format or guess_format(path)
    net = read_network(path, fmt, directed=not args.undirected, delim=args.delim,
                       edge_property=cen.LEXRANK_ATTR)
    prefix = str(path.with_name(pl.prefix_of(path, ".graph")))
    if args.sample is not None:
        net = rn.sample(net, args.sample, args.sampletype, seed=args.seed)
    if args.extract:
        net = ns.find_largest_component(net, "weak")
    if args.pajek:
        write_network(net, f"{prefix}.net", "pajek")
    if args.graphml:
        write_network(net, f"{prefix}.graphml", "graphml")
    if args.output_graph:
        write_network(net, args.output_graph, "edgelist")
    big = net.num_nodes() > SIZE_LIMIT and not args.force
    if big:
        print(f"{net.num_nodes()} nodes exceeds {SIZE_LIMIT}; skipping all-pairs "
              "sections (use --force)", file=sys.stderr)
    want = {k: args.all or getattr(args, k) for k in
            ("paths", "triangles", "assortativity", "localcc",
             "betweenness", "closeness", "degree_centrality")}
    if args.stats:
        report = ns.network_report(
            net,
            components_=(args.all or args.components) and not net.directed,
            wcc=(args.all or args.wcc) and net.directed,
            scc=(args.all or args.scc) and net.directed,
            paths=want["paths"] and not big,
            triangles_=want["triangles"],
            assortativity=want["assortativity"],
            localcc=want["localcc"],
            delim=args.delimout,
        )
        _emit(report, args.output)
    measures = (
        ("degree", want["degree_centrality"], cen.degree_centrality),
        ("closeness", want["closeness"] and not big, cen.closeness_centrality),
        ("betweenness", want["betweenness"] and not big, cen.betweenness_centrality),
    )
    for name, on, fn in measures:
        if on and net.num_nodes() >= 2:
            cen.write_centrality(fn(net).normalized, f"{prefix}.{name}-centrality", args.delimout)
    if args.lexrank:
        for v in net.nodes():
            net.set_node_attribute(v, cen.LEXRANK_ATTR, 1)
        cen.write_centrality(cen.lexrank(net, jump=args.jump), f"{prefix}.lexrank-centrality",
                             args.delimout)


def cmd_convert_network(args):
    src_fmt = args.input_format or guess_format(args.input)
    dst_fmt = args.output_format or guess_format(args.output)
    directed = None if src_fmt != "edgelist" else not args.undirected
    net = read_network(args.input, src_fmt, directed=directed)
    write_network(net, args.output, dst_fmt, skip_duplicates=args.skip_duplicates,
                  transpose=args.transpose)
    if args.verify:
        back = read_network(args.output, dst_fmt, directed=net.directed)
        if back != net:
            raise TextnetError(f"{args.output} does not read back as the input graph")
        _log(args, "verified round trip")


def cmd_generate_random_network(args):
    n, m = args.nodes, args.edges
    if args.input:
        ref = read_network(args.input, guess_format(args.input), directed=not args.undirected)
        n = ref.num_nodes() if n is None else n
        m = ref.num_edges() if m is None else m
    if n is None:
        raise UsageError("need -n or -i")
    directed = not args.undirected
    if args.type == "erdos-renyi-gnm":
        if m is None:
            raise UsageError("erdos-renyi-gnm needs -m or -i")
        net = rn.erdos_renyi_gnm(n, m, directed, args.weights, seed=args.seed)
    elif args.type == "erdos-renyi-gnp":
        if args.probability is None:
            raise UsageError("erdos-renyi-gnp needs -p")
        net = rn.erdos_renyi_gnp(n, args.probability, directed, args.weights, seed=args.seed)
    elif args.type == "watts-strogatz":
        if args.k is None or args.probability is None:
            raise UsageError("watts-strogatz needs -k and -p")
        net = rn.watts_strogatz(n, args.k, args.probability, seed=args.seed)
    else:
        if m is None:
            raise UsageError("barabasi-albert needs -m")
        net = rn.barabasi_albert(n, m, seed=args.seed)
    if args.output:
        write_network(net, args.output, args.format or guess_format(args.output))
    else:
        write_network(net, sys.stdout, args.format or "edgelist")


def cmd_extract_ngrams(args):
    doc = Path(args.input).read_text(encoding="utf-8")
    net = ngram_network(doc, args.n)
    out = args.output or f"{pl.prefix_of(args.input)}.{args.n}grams.graph"
    write_network(net, out, "edgelist")


# -- text utilities ------------------------------------------------------


def cmd_sentences_to_docs(args):
    files = [Path(args.input)] if args.input else sorted(p for p in Path(args.directory).iterdir() if p.is_file())
    out = Path(args.output)
    out.mkdir(parents=True, exist_ok=True)
    for f in files:
        doc = Document.from_file(f, type=args.type)
        sents = split_sentences(doc.layer("text"))
        if args.singlefile:
            (out / f"{f.name}.sentences").write_text("".join(s + "\n" for s in sents), encoding="utf-8")
        else:
            for i, s in enumerate(sents, 1):
                (out / f"{f.name}.{i}").write_text(s + "\n", encoding="utf-8")


def cmd_chunk_document(args):
    paths = pl.chunk_document(args.input, args.output, args.words)
    _log(args, f"wrote {len(paths)} chunks")


# -- synthetic collections -----------------------------------------------


def cmd_make_synth_collection(args):
    if args.corpus:
        stats = _corpus(args).load_stats(args.stemmed)
        ranked = sorted(stats.term_counts, key=lambda t: (-stats.term_counts[t][0], t))
        doclens = sorted(stats.doc_len_dist, key=lambda n: (-stats.doc_len_dist[n], n))
        doclen_dist = st.from_weights([stats.doc_len_dist[n] for n in doclens])
    elif args.terms:
        ranked = Path(args.terms).read_text(encoding="utf-8").split()
        if args.doclen is None:
            raise UsageError("--terms needs --doclen")
        doclens, doclen_dist = [args.doclen], st.from_weights([1])
    else:
        raise UsageError("need --corpus or --terms for the term map")
    if not ranked:
        raise InvalidParameterError("empty term map")
    term_dist = st.zipfian(args.alpha, len(ranked))
    docs = rn.synthetic_collection(ranked, term_dist, doclens, doclen_dist, args.size, seed=args.seed)
    rn.write_collection(docs, args.output, args.name)


def cmd_link_synthetic_collection(args):
    docs = rn.read_collection(args.output, args.name)
    net = rn.link_collection(list(docs), args.policy, args.probability, args.k, seed=args.seed)
    write_network(net, args.links or Path(args.output) / f"{args.name}.links", "edgelist", weights=False)


# -- classification ------------------------------------------------------


def _read_labeled(path):
    docs = []
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.rstrip("\n")
            if not line.strip():
                continue
            cls, sep, text = line.partition("\t")
            if not sep:
                raise InvalidParameterError(f"{path}:{lineno}: expected 'class<TAB>text'")
            docs.append((cls, text))
    return docs


def cmd_features(args):
    docs = _read_labeled(args.input)
    space = clf.FeatureSpace.read(args.space) if args.space and Path(args.space).exists() else None
    if args.select:
        scores = clf.chi_squared([(c, clf.bag_of_words(t, args.stem)) for c, t in docs])
        kept = clf.select(scores, args.select)
        space = clf.FeatureSpace()
        for f in kept:
            space.id(f)
        vectors, space, labels = clf.vectorize(docs, space, args.stem, grow=False)
    else:
        vectors, space, labels = clf.vectorize(docs, space, args.stem)
    clf.write_svm_light(vectors, args.output)
    if args.space:
        space.write(args.space)
    _log(args, f"classes: {labels}")


def cmd_learn(args):
    vectors = clf.read_svm_light(args.input)
    model = clf.learn(vectors, args.eta, args.epochs)
    model.write(args.model)
    if not model.converged:
        print(f"warning: no separating weights after {model.epochs} epochs", file=sys.stderr)
    _log(args, f"{model.mistakes} mistakes over {model.epochs} epochs")


def cmd_classify(args):
    vectors = clf.read_svm_light(args.input)
    model = clf.PerceptronModel.read(args.model)
    result = clf.classify(vectors, model)
    for p in result.predictions:
        print(p)
    print(f"accuracy {result.accuracy:.4f}% ({result.correct}/{result.total})", file=sys.stderr)


# -- parser ----------------------------------------------------------------


def _corpus_flags(p, required: bool = True):
    p.add_argument("-c", "--corpus", required=required, help="corpus name")
    p.add_argument("-b", "--base", default="produced", help="base directory of corpora")


def _sweep_flags(p, step: float = 0.01):
    p.add_argument("-i", "--input", required=True, help=".cos file")
    p.add_argument("--start", type=float, default=0.0)
    p.add_argument("--end", type=float, default=1.0)
    p.add_argument("--step", type=float, default=step)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="textnet", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true", help="progress on stderr")
    sub = parser.add_subparsers(dest="command", metavar="command", parser_class=_Parser)
    sub.required = True

    def add(name, fn, help):
        p = sub.add_parser(name, help=help, description=help)
        p.add_argument("-v", "--verbose", action="store_true", default=argparse.SUPPRESS)
        p.set_defaults(func=fn)
        return p

    p = add("directory-to-corpus", cmd_directory_to_corpus, "copy a directory of files into a corpus")
    _corpus_flags(p)
    p.add_argument("-d", "--directory", required=True)
    p.add_argument("-t", "--type", default="auto", choices=("auto", "html", "text"))

    p = add("index-corpus", cmd_index_corpus, "build tf/idf indexes, statistics and links")
    _corpus_flags(p)
    p.add_argument("--stemmed", action=argparse.BooleanOptionalAction, default=None,
                   help="only the stemmed (or with --no-stemmed, unstemmed) variant")
    p.add_argument("--punc", action="store_true", help="keep punctuation tokens")
    for flag in ("tf", "idf", "links", "stats"):
        p.add_argument(f"--{flag}", action=argparse.BooleanOptionalAction, default=True)

    for name, fn in (("tf-query", cmd_tf_query), ("idf-query", cmd_idf_query)):
        p = add(name, fn, f"look up terms in the {name[:-6]} index")
        _corpus_flags(p)
        p.add_argument("-q", "--query")
        p.add_argument("-s", "--stemmed", action="store_true")
        p.add_argument("--punc", action="store_true")
        p.add_argument("-a", "--all", action="store_true", help="dump every term")

    p = add("corpus-to-network", cmd_corpus_to_network, "hyperlink network of a corpus")
    _corpus_flags(p)
    p.add_argument("-o", "--output")
    p.add_argument("--docids", action="store_true", help="label nodes by docid instead of url")
    p.add_argument("--ignore-ex", action="store_true", help="drop links leaving the corpus")

    p = add("corpus-to-cos", cmd_corpus_to_cos, "pairwise tf-idf cosines of a corpus")
    _corpus_flags(p)
    p.add_argument("-o", "--output")
    p.add_argument("--sample", type=int)
    p.add_argument("--seed", type=int)
    p.add_argument("--stem", action="store_true")

    p = add("corpus-to-lexical-network", cmd_corpus_to_lexical_network, "word co-occurrence network")
    _corpus_flags(p)
    p.add_argument("-o", "--output")

    p = add("cos-to-stats", cmd_cos_to_stats, "network statistics across cosine cutoffs")
    _sweep_flags(p)
    p.add_argument("-o", "--output")
    p.add_argument("--graphs", default="graphs", help="directory for per-cutoff graphs")
    p.add_argument("--delimout", default=" ")
    p.add_argument("--sample", type=int)
    p.add_argument("--sampletype", default="randomnode", choices=sorted(rn.SAMPLERS))
    p.add_argument("--seed", type=int)
    p.add_argument("--single", action="store_true", help="only the start cutoff")
    p.add_argument("--all", action="store_true", help="also write triangles and distances")
    p.add_argument("--stats", action=argparse.BooleanOptionalAction, default=True)

    p = add("cos-to-networks", cmd_cos_to_networks, "one edgelist per cosine cutoff")
    _sweep_flags(p)
    p.add_argument("-o", "--output", help="output directory")

    p = add("cos-to-histograms", cmd_cos_to_histograms, "degree histogram per cosine cutoff")
    _sweep_flags(p)
    p.add_argument("-o", "--output", help="output directory (default hists)")

    p = add("cos-to-cosplots", cmd_cos_to_cosplots, "distribution of cosine values")
    p.add_argument("-i", "--input", required=True)
    p.add_argument("-o", "--output", help="output directory")
    p.add_argument("--bins", type=int, default=100)
    p.add_argument("--matlab", action="store_true", help="also write .m plot scripts")

    p = add("network-to-plots", cmd_network_to_plots, "degree distribution of a network")
    p.add_argument("-i", "--input", required=True)
    p.add_argument("-o", "--output", help="output directory")
    p.add_argument("--undirected", action="store_true")
    p.add_argument("--matlab", action="store_true")

    p = add("print-network-stats", cmd_print_network_stats, "statistics and centrality of a network")
    p.add_argument("-i", "--input", required=True)
    p.add_argument("-o", "--output", help="stats file (default stdout)")
    p.add_argument("--format", choices=FORMATS)
    p.add_argument("--output-graph", help="write the (sampled/extracted) graph as an edgelist")
    p.add_argument("--delim", default=r"\s+", help="input field separator (regex)")
    p.add_argument("--delimout", default=" ")
    p.add_argument("-u", "--undirected", action="store_true")
    p.add_argument("--sample", type=int)
    p.add_argument("--sampletype", default="randomedge", choices=sorted(rn.SAMPLERS))
    p.add_argument("--seed", type=int)
    p.add_argument("--extract", action="store_true", help="keep only the largest weak component")
    p.add_argument("--pajek", action="store_true")
    p.add_argument("--graphml", action="store_true")
    p.add_argument("--stats", action=argparse.BooleanOptionalAction, default=True)
    p.add_argument("--force", action="store_true", help=f"all-pairs work above {SIZE_LIMIT} nodes")
    p.add_argument("--all", action="store_true")
    for flag in ("components", "wcc", "scc", "paths", "triangles", "assortativity", "localcc",
                 "betweenness", "closeness", "lexrank"):
        p.add_argument(f"--{flag}", action="store_true")
    p.add_argument("--degree-centrality", action="store_true")
    p.add_argument("--jump", type=float, default=0.15)

    p = add("convert-network", cmd_convert_network, "convert between edgelist, pajek and graphml")
    p.add_argument("-i", "--input", required=True)
    p.add_argument("-o", "--output", required=True)
    p.add_argument("--input-format", choices=FORMATS)
    p.add_argument("--output-format", choices=FORMATS)
    p.add_argument("-u", "--undirected", action="store_true")
    p.add_argument("--skip-duplicates", action="store_true")
    p.add_argument("--transpose", action="store_true")
    p.add_argument("--verify", action="store_true", help="read the output back and compare")

    p = add("generate-random-network", cmd_generate_random_network, "random graph generators")
    p.add_argument("-t", "--type", default="erdos-renyi-gnm",
                   choices=("erdos-renyi-gnm", "erdos-renyi-gnp", "watts-strogatz", "barabasi-albert"))
    p.add_argument("-n", "--nodes", type=int)
    p.add_argument("-m", "--edges", type=int)
    p.add_argument("-p", "--probability", type=float)
    p.add_argument("-k", type=int, help="ring degree for watts-strogatz")
    p.add_argument("-i", "--input", help="take n and m from this graph")
    p.add_argument("-u", "--undirected", action="store_true")
    p.add_argument("-w", "--weights", action="store_true")
    p.add_argument("--seed", type=int)
    p.add_argument("-o", "--output")
    p.add_argument("--format", choices=FORMATS)

    p = add("extract-ngrams", cmd_extract_ngrams, "n-gram transition network of a text")
    p.add_argument("-i", "--input", required=True)
    p.add_argument("-n", type=int, default=2)
    p.add_argument("-o", "--output")

    p = add("sentences-to-docs", cmd_sentences_to_docs, "one file per sentence")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("-i", "--input")
    src.add_argument("-d", "--directory")
    p.add_argument("-o", "--output", required=True)
    p.add_argument("--singlefile", action="store_true", help="one sentence per line in one file")
    p.add_argument("-t", "--type", default="text", choices=("text", "html"))

    p = add("chunk-document", cmd_chunk_document, "split a text into fixed-length chunks")
    p.add_argument("-i", "--input", required=True)
    p.add_argument("-o", "--output", required=True)
    p.add_argument("-w", "--words", type=int, default=500)

    p = add("make-synth-collection", cmd_make_synth_collection, "Zipfian synthetic documents")
    _corpus_flags(p, required=False)
    p.add_argument("-n", "--name", required=True)
    p.add_argument("-o", "--output", default="synth", help="collection base directory")
    p.add_argument("--size", type=int, required=True)
    p.add_argument("--alpha", type=float, default=1.0)
    p.add_argument("--terms", help="file of terms in rank order (instead of --corpus)")
    p.add_argument("--doclen", type=int, help="fixed document length with --terms")
    p.add_argument("-s", "--stemmed", action="store_true")
    p.add_argument("--seed", type=int)

    p = add("link-synthetic-collection", cmd_link_synthetic_collection, "random links between documents")
    p.add_argument("-n", "--name", required=True)
    p.add_argument("-o", "--output", default="synth", help="collection base directory")
    p.add_argument("--policy", default="erdos", choices=("erdos", "watts"))
    p.add_argument("-p", "--probability", type=float, required=True)
    p.add_argument("-k", type=int)
    p.add_argument("--links", help="links file (default <base>/<name>.links)")
    p.add_argument("--seed", type=int)

    p = add("features", cmd_features, "svm_light vectors from 'class<TAB>text' lines")
    p.add_argument("-i", "--input", required=True)
    p.add_argument("-o", "--output", required=True)
    p.add_argument("--space", help="feature id file (read if present, then written)")
    p.add_argument("--select", type=int, help="keep the top N chi-square features")
    p.add_argument("--stem", action="store_true")

    p = add("learn", cmd_learn, "train a perceptron on svm_light vectors")
    p.add_argument("-i", "--input", required=True)
    p.add_argument("-m", "--model", required=True)
    p.add_argument("--eta", type=float, default=1.0)
    p.add_argument("--epochs", type=int, default=1000)

    p = add("classify", cmd_classify, "apply a perceptron model")
    p.add_argument("-i", "--input", required=True)
    p.add_argument("-m", "--model", required=True)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        args.func(args)
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return USAGE_ERROR
    except (TextnetError, OSError, ValueError) as exc:
        print(f"textnet: {exc}", file=sys.stderr)
        return RUNTIME_ERROR
    return 0


if __name__ == "__main__":
    sys.exit(main())
