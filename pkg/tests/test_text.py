from pathlib import Path

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from nltk.stem.porter import PorterStemmer

from textnet.errors import InvalidParameterError, LayerMissingError
from textnet.porter import stem_word
from textnet.text import (
    Document,
    count_words,
    extract_links,
    ngrams,
    split_lines,
    split_sentences,
    stem,
    strip_html,
    tokenize,
)

ORACLE = PorterStemmer(mode=PorterStemmer.ORIGINAL_ALGORITHM)
VOCAB = (Path(__file__).parent / "fixtures" / "vocab.txt").read_text().split()


# Porter stemmer against nltk's original-algorithm mode.


@pytest.mark.parametrize(
    "word, expected",
    [("caresses", "caress"), ("ponies", "poni"), ("relational", "relat"),
     ("hopefulness", "hope"), ("generalization", "gener"), ("sky", "sky")],
)
def test_stem_classic_examples(word, expected):
    assert stem_word(word) == expected


def test_stem_matches_oracle_on_vocabulary():
    mismatches = [w for w in VOCAB if stem_word(w) != ORACLE.stem(w)]
    assert not mismatches


@given(st.text(alphabet="abcdefghijklmnopqrstuvwxyz", min_size=1, max_size=14))
def test_stem_matches_oracle_on_random_words(word):
    assert stem_word(word) == ORACLE.stem(word)


def test_stem_is_not_idempotent():
    # A known counterexample; stored stem layers must not be stemmed twice.
    assert stem_word("abused") == "abus"
    assert stem_word("abus") == "abu"


def test_stem_text_keeps_separators():
    assert stem("Running dogs, jumping!") == "run dog, jump!"
    assert stem("a\nb") == "a b"
    assert stem("cats\nrunning", keep_newlines=True) == "cat\nrun"


# HTML


def test_strip_html_drops_tags_scripts_and_decodes_entities():
    html = "<html><head><style>p{}</style><script>x=1</script></head><body><p>Fish &amp; chips</p><p>Tea</p></body></html>"
    assert strip_html(html) == "Fish & chips\nTea"


markup = st.lists(
    st.one_of(
        st.sampled_from(["<p>", "</p>", "<b>", "</b>", "<br/>", "<div>", "</div>", "<!-- c -->"]),
        st.text(alphabet="abc xyz.\n", min_size=1, max_size=8),
    ),
    max_size=12,
).map("".join)


@given(markup)
def test_strip_html_is_idempotent_without_entities(html):
    once = strip_html(html)
    assert strip_html(once) == once
    assert "<" not in once


def test_extract_links_resolves_and_drops_fragments():
    html = '<a href="b.html#top">b</a> <a href="http://x.org/">x</a> <a>none</a> <a href="">e</a>'
    assert extract_links(html, "http://site/dir/a.html") == ["http://site/dir/b.html", "http://x.org/"]


# Sentences, tokens, n-grams


def test_split_sentences_respects_abbreviations():
    text = "Dr. Smith went to Washington. He arrived at 5 p.m. on Monday! Did it rain? Yes."
    assert split_sentences(text) == [
        "Dr. Smith went to Washington.",
        "He arrived at 5 p.m. on Monday!",
        "Did it rain?",
        "Yes.",
    ]


def test_split_sentences_empty():
    assert split_sentences("   ") == []


@given(st.lists(st.sampled_from(["Cats sleep.", "Dogs bark!", "Why?", "It rains."]), min_size=1, max_size=6))
def test_split_sentences_round_trips_simple_sentences(sents):
    assert split_sentences(" ".join(sents)) == sents


def test_split_lines_skips_blank():
    assert split_lines("a\n\n  \nb\n") == ["a", "b"]


def test_tokenize():
    assert tokenize("Hello, World! 42x") == ["hello", "world", "42x"]
    assert tokenize("a, b!", keep_punctuation=True) == ["a", ",", "b", "!"]


@given(st.lists(st.integers(), max_size=20), st.integers(min_value=1, max_value=5))
def test_ngrams_count_and_overlap(tokens, n):
    grams = ngrams(tokens, n)
    assert len(grams) == max(0, len(tokens) - n + 1)
    for a, b in zip(grams, grams[1:]):
        assert a[1:] == b[:-1]


def test_ngrams_rejects_zero():
    with pytest.raises(InvalidParameterError):
        ngrams([1], 0)


# Document layers


def test_document_derives_layers_lazily(tmp_path):
    p = tmp_path / "d.html"
    p.write_text("<p>Running fast.</p><p>Jumping high.</p>")
    doc = Document.from_file(p, type="html")
    assert doc.id == "d.html"
    assert doc.text is None
    assert doc.layer("text") == "Running fast.\nJumping high."
    assert doc.layer("stem") == "run fast.\njump high."
    assert doc.html.startswith("<p>")
    assert doc.split_sentences() == ["Running fast.", "Jumping high."]
    assert count_words(doc) == 4


def test_document_needs_a_layer():
    with pytest.raises(InvalidParameterError):
        Document(id="x")


def test_missing_layer_is_reported():
    doc = Document(id="x", stemmed="run")
    with pytest.raises(LayerMissingError):
        doc.layer("text")
    with pytest.raises(LayerMissingError):
        doc.layer("html")


def test_sentence_features():
    doc = Document(id="d", text="One. Two.")
    doc.set_sentence_feature(1, "pos", 2)
    assert doc.get_sentence_features(1) == {"pos": 2}
    assert doc.get_sentence_features(0) == {}
    with pytest.raises(InvalidParameterError):
        doc.set_sentence_feature(2, "pos", 3)
