import subprocess
import sys
from pathlib import Path

import pytest

from helpers import FIXTURES, GOLDEN_COSINES
from textnet import pipeline as pl
from textnet.cli import main
from textnet.formats import read_network
from textnet.similarity import CosineMatrix, write_cos

ROOT = Path(__file__).resolve().parents[1]


@pytest.fixture
def work(tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    return tmp_path


@pytest.fixture
def golden_cos(work):
    m = CosineMatrix()
    for a, row in GOLDEN_COSINES.items():
        for b, v in row.items():
            m.set(a, b, v)
    write_cos(m, work / "g.cos")
    return work / "g.cos"


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


# -- exit codes ---------------------------------------------------------------


def test_usage_errors_exit_one(capsys, work):
    assert run(capsys, "no-such-command")[0] == 1
    assert run(capsys)[0] == 1
    code, _, err = run(capsys, "cos-to-stats")
    assert code == 1 and "--input" in err
    code, _, err = run(capsys, "generate-random-network", "-t", "erdos-renyi-gnp", "-n", "5")
    assert code == 1 and "-p" in err


def test_bad_step_is_usage_error(capsys, golden_cos):
    assert run(capsys, "cos-to-stats", "-i", str(golden_cos), "--step", "0")[0] == 1
    assert run(capsys, "cos-to-stats", "-i", str(golden_cos), "--start", "0.9", "--end", "0.1")[0] == 1


def test_runtime_errors_exit_two(capsys, work):
    code, _, err = run(capsys, "cos-to-stats", "-i", "missing.cos")
    assert code == 2 and err.startswith("textnet:")
    assert run(capsys, "tf-query", "-c", "nothing", "-q", "x")[0] == 2
    (work / "bad.graph").write_text("a b notaweight\n")
    assert run(capsys, "print-network-stats", "-i", "bad.graph")[0] == 2


def test_module_entry_point(work):
    env = {"PYTHONPATH": str(ROOT / "src"), "PATH": "/usr/bin:/bin"}
    proc = subprocess.run([sys.executable, "-m", "textnet", "--help"], capture_output=True, text=True, env=env)
    assert proc.returncode == 0 and "cos-to-stats" in proc.stdout


# -- thin wrappers ------------------------------------------------------------


def test_cos_to_stats_matches_library(capsys, golden_cos):
    code, out, _ = run(capsys, "cos-to-stats", "-i", str(golden_cos), "--step", "0.1")
    assert code == 0
    rows = pl.sweep(golden_cos, 0.0, 1.0, 0.1)
    assert out == pl.format_sweep(rows)
    graphs = sorted(p.name for p in (golden_cos.parent / "graphs").iterdir())
    assert graphs == [f"g-{c}.graph" for c in pl.cutoff_grid(0, 1, 0.1)]


def test_cos_to_networks_and_histograms(capsys, golden_cos, work):
    assert run(capsys, "cos-to-networks", "-i", str(golden_cos), "--step", "0.5")[0] == 0
    assert (work / "graphs" / "g" / "g-0.50.net").read_text() == "1 4 0.6\n"
    assert run(capsys, "cos-to-histograms", "-i", str(golden_cos), "--step", "0.5")[0] == 0
    assert (work / "hists" / "g.0.50.hist").read_text() == "0 2\n"


def test_plots(capsys, golden_cos, work):
    assert run(capsys, "cos-to-cosplots", "-i", str(golden_cos), "--bins", "10", "--matlab")[0] == 0
    hist = (work / "g-cosine-hist.dat").read_text().splitlines()
    assert len(hist) == 11 and hist[1] == "1 2"
    assert (work / "g-cosine-cumulative.dat").read_text().splitlines()[-1] == "10 6"
    assert (work / "g-cosine-hist.m").exists()
    (work / "p.graph").write_text("a b\nb c\n")
    assert run(capsys, "network-to-plots", "-i", "p.graph", "--undirected")[0] == 0
    assert (work / "p-degree-hist.dat").read_text() == "0 0\n1 2\n2 1\n"


def test_generate_random_network_stdout_matches_file(capsys, work):
    args = ["generate-random-network", "-n", "12", "-m", "20", "--seed", "3", "-w"]
    code, out, _ = run(capsys, *args)
    assert code == 0
    assert run(capsys, *args, "-o", "r.graph")[0] == 0
    assert (work / "r.graph").read_text() == out
    assert read_network(work / "r.graph").num_edges() == 20


# -- network tools --------------------------------------------------------------


def test_convert_round_trip(capsys, work):
    (work / "a.graph").write_text("x y 2.5\ny z 1.0\nlonely\n")
    assert run(capsys, "convert-network", "-i", "a.graph", "-o", "a.net", "--verify")[0] == 0
    assert "*Arcs" in (work / "a.net").read_text()
    assert run(capsys, "convert-network", "-i", "a.net", "-o", "b.graph")[0] == 0
    assert read_network(work / "b.graph") == read_network(work / "a.graph")
    assert run(capsys, "convert-network", "-i", "a.graph", "-o", "a.graphml", "--verify")[0] == 0


def test_print_network_stats_outputs(capsys, work):
    (work / "t.graph").write_text("a b\nb c\nc a\nc d\n")
    code, out, err = run(capsys, "print-network-stats", "-i", "t.graph", "-u", "--all", "--lexrank")
    assert code == 0 and err == ""
    assert "nodes" in out and "edges" in out
    for kind in ("degree", "closeness", "betweenness", "lexrank"):
        assert (work / f"t.{kind}-centrality").exists()
    betw = dict(line.split() for line in (work / "t.betweenness-centrality").read_text().splitlines())
    assert float(betw["c"]) == pytest.approx(2 / 3)


def test_verbose_goes_to_stderr(capsys, work):
    (work / "doc.txt").write_text(" ".join(["w"] * 12))
    code, out, err = run(capsys, "-v", "chunk-document", "-i", "doc.txt", "-o", "chunks", "-w", "5")
    assert code == 0 and out == "" and "3 chunks" in err
    code, out, err = run(capsys, "chunk-document", "-i", "doc.txt", "-o", "chunks", "-w", "5")
    assert err == ""


# -- corpus pipeline --------------------------------------------------------------


def test_corpus_commands(capsys, work):
    base = ["-c", "ir6", "-b", "produced"]
    assert run(capsys, "directory-to-corpus", "-d", str(FIXTURES / "ir6"), *base)[0] == 0
    assert run(capsys, "index-corpus", *base)[0] == 0
    code, out, _ = run(capsys, "tf-query", *base, "-q", "result", "-s")
    assert code == 0 and out.splitlines()[0] == "result 5 4"
    code, out, _ = run(capsys, "tf-query", *base, "-q", "resulting in")
    assert out.splitlines()[0] == "resulting in 2 2"
    code, out, _ = run(capsys, "idf-query", *base, "-q", "in")
    assert out == "in 0\n"
    assert run(capsys, "corpus-to-cos", *base)[0] == 0
    lines = (work / "ir6.cos").read_text().splitlines()
    assert len(lines) == 15
    assert run(capsys, "cos-to-stats", "-i", "ir6.cos", "--step", "0.25", "-o", "ir6.stats")[0] == 0
    assert len((work / "ir6.stats").read_text().splitlines()) == 6


def test_hyperlink_network(capsys, work):
    base = ["-c", "h", "-b", "produced"]
    assert run(capsys, "directory-to-corpus", "-d", str(FIXTURES / "html10"), *base)[0] == 0
    assert run(capsys, "index-corpus", *base, "--no-tf", "--no-idf", "--no-stats")[0] == 0
    assert run(capsys, "corpus-to-network", *base, "--docids", "--ignore-ex")[0] == 0
    net = read_network(work / "h.graph")
    assert net.num_nodes() == 10 and net.num_edges() == 17


# -- classification -----------------------------------------------------------------


def test_classification_round_trip(capsys, work):
    (work / "train.tsv").write_text(
        "sport\tthe team won the match\nsport\ta late goal won it\n"
        "money\tthe market fell today\nmoney\tshares and the market rose\n"
    )
    assert run(capsys, "features", "-i", "train.tsv", "-o", "train.svm", "--space", "space")[0] == 0
    assert run(capsys, "learn", "-i", "train.svm", "-m", "model")[0] == 0
    code, out, err = run(capsys, "classify", "-i", "train.svm", "-m", "model")
    assert code == 0 and out.split() == ["-1", "-1", "1", "1"]
    assert "accuracy 100.0000%" in err
