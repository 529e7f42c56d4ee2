"""Cosine similarity and text-derived networks (cosine, sentence, lexical, n-gram)."""

from __future__ import annotations

import math
from collections import Counter
from pathlib import Path

from .errors import EmptyMatrixError, InvalidParameterError, ParseError
from .graph import Network
from .text import Document, ngrams, split_sentences, tokenize

__all__ = [
    "term_vector",
    "cosine",
    "CosineMatrix",
    "compute_cosine_matrix",
    "binary_cosine",
    "largest_cosine",
    "cosine_network",
    "cosine_network_from_texts",
    "sentence_cluster",
    "sentence_network",
    "lexical_network",
    "ngram_network",
    "read_cos",
    "write_cos",
]


def term_vector(item, layer: str = "text") -> Counter:
    """Term counts of a Document layer, a string, or an existing mapping."""
    if isinstance(item, Document):
        return Counter(tokenize(item.layer(layer)))
    if isinstance(item, str):
        return Counter(tokenize(item))
    return Counter(item)


def cosine(a, b, idf: dict | None = None, layer: str = "text") -> float:
    """tf-idf cosine; idf enters squared in the dot product, unit idf by default."""
    va, vb = term_vector(a, layer), term_vector(b, layer)
    if not va or not vb:
        return 0.0

    def w(term):
        return 1.0 if idf is None else idf.get(term, 0.0)

    if len(vb) < len(va):
        va, vb = vb, va
    dot = math.fsum(c * vb[t] * w(t) ** 2 for t, c in va.items() if t in vb)
    na = math.fsum((c * w(t)) ** 2 for t, c in va.items())
    nb = math.fsum((c * w(t)) ** 2 for t, c in vb.items())
    if na == 0 or nb == 0:
        return 0.0
    # one sqrt of the product keeps round values exact (foo bar / bar baz is 0.5)
    return min(1.0, max(0.0, dot / math.sqrt(na * nb)))


class CosineMatrix:
    """Symmetric pair map; each unordered pair is stored once, no self-pairs."""

    def __init__(self, ids=()):
        self.ids: list[str] = []
        self._id_set: set[str] = set()
        self._entries: dict[tuple[str, str], float] = {}
        for i in ids:
            self._add_id(str(i))

    def _add_id(self, i: str) -> None:
        if i not in self._id_set:
            self._id_set.add(i)
            self.ids.append(i)

    @staticmethod
    def _key(a, b) -> tuple[str, str]:
        a, b = str(a), str(b)
        return (a, b) if a <= b else (b, a)

    def set(self, a, b, value: float) -> None:
        a, b = str(a), str(b)
        if a == b:
            raise InvalidParameterError("self-pairs are not stored")
        if not 0.0 <= value <= 1.0:
            raise InvalidParameterError(f"cosine {value} outside [0, 1]")
        self._add_id(a)
        self._add_id(b)
        self._entries[self._key(a, b)] = float(value)

    def get(self, a, b, default: float = 0.0) -> float:
        if str(a) == str(b):
            return 1.0
        return self._entries.get(self._key(a, b), default)

    def has(self, a, b) -> bool:
        return self._key(a, b) in self._entries

    def pairs(self):
        """Stored ``(a, b, value)`` triples with a < b, sorted."""
        return [(a, b, v) for (a, b), v in sorted(self._entries.items())]

    def __len__(self):
        return len(self._entries)

    def __eq__(self, other):
        if not isinstance(other, CosineMatrix):
            return NotImplemented
        return self._entries == other._entries and self._id_set == other._id_set

    def as_dict(self) -> dict:
        """Nested ``{a: {b: value}}`` with both orientations."""
        out: dict = {i: {} for i in self.ids}
        for a, b, v in self.pairs():
            out[a][b] = v
            out[b][a] = v
        return out


def compute_cosine_matrix(docs: dict, idf: dict | None = None, layer: str = "text") -> CosineMatrix:
    ids = [str(k) for k in docs]
    vecs = {str(k): term_vector(d, layer) for k, d in docs.items()}
    m = CosineMatrix(ids)
    for i, a in enumerate(ids):
        for b in ids[i + 1 :]:
            m.set(a, b, cosine(vecs[a], vecs[b], idf))
    return m


def binary_cosine(matrix: CosineMatrix, threshold: float) -> CosineMatrix:
    """Entries with value >= threshold; the id list is kept."""
    out = CosineMatrix(matrix.ids)
    for a, b, v in matrix.pairs():
        if v >= threshold:
            out.set(a, b, v)
    return out


def largest_cosine(matrix: CosineMatrix) -> tuple[str, str, float]:
    best = None
    for a, b, v in matrix.pairs():
        if best is None or v > best[2]:
            best = (a, b, v)
    if best is None:
        raise EmptyMatrixError("cosine matrix has no entries")
    return best


def cosine_network(matrix: CosineMatrix, include_zeros: bool = False) -> Network:
    """Undirected network; edge attribute ``lexrank_transition`` holds the cosine."""
    net = Network(directed=False)
    if include_zeros:
        for i in matrix.ids:
            net.add_node(i)
        ids = matrix.ids
        for x, a in enumerate(ids):
            for b in ids[x + 1 :]:
                v = matrix.get(a, b)
                net.add_edge(a, b, weight=v, lexrank_transition=v)
        return net
    for a, b, v in matrix.pairs():
        if v > 0:
            net.add_edge(a, b, weight=v, lexrank_transition=v)
    return net


def cosine_network_from_texts(
    texts: dict, threshold: float | None = None, idf: dict | None = None, layer: str = "text"
) -> Network:
    """Cosine network over every text, isolated texts included as nodes."""
    m = compute_cosine_matrix(texts, idf, layer)
    if threshold:
        m = binary_cosine(m, threshold)
    net = cosine_network(m)
    for i in m.ids:
        net.add_node(i)
    return net


def sentence_cluster(docs) -> dict[str, Document]:
    """One Document per sentence, keyed ``<doc-id>:<index>``."""
    items = docs.items() if isinstance(docs, dict) else ((d.id, d) for d in docs)
    out = {}
    for doc_id, doc in items:
        text = doc.layer("text") if isinstance(doc, Document) else str(doc)
        for i, sent in enumerate(split_sentences(text)):
            sid = f"{doc_id}:{i}"
            out[sid] = Document(id=sid, text=sent, parent_id=str(doc_id))
    return out


def sentence_network(
    docs, threshold: float | None = None, idf: dict | None = None, layer: str = "text"
) -> Network:
    return cosine_network_from_texts(sentence_cluster(docs), threshold, idf, layer)


def lexical_network(docs, layer: str = "text") -> Network:
    """Word co-occurrence network: +1 weight per sentence containing both words."""
    items = docs.values() if isinstance(docs, dict) else docs
    weights: Counter = Counter()
    words: set[str] = set()
    for doc in items:
        text = doc.layer(layer) if isinstance(doc, Document) else str(doc)
        for sent in split_sentences(text):
            distinct = sorted(set(tokenize(sent)))
            words.update(distinct)
            for i, a in enumerate(distinct):
                for b in distinct[i + 1 :]:
                    weights[(a, b)] += 1
    net = Network(directed=False)
    for w in sorted(words):
        net.add_node(w)
    for (a, b), c in sorted(weights.items()):
        net.add_edge(a, b, weight=c)
    return net


def ngram_network(doc, n: int = 2, layer: str = "text") -> Network:
    """Directed edges from each n-gram's leading (n-1) tokens to its trailing (n-1)."""
    if n < 2:
        raise InvalidParameterError(f"n-gram network needs n >= 2, got {n}")
    text = doc.layer(layer) if isinstance(doc, Document) else str(doc)
    counts = Counter(ngrams(tokenize(text), n))
    net = Network(directed=True)
    for gram, c in counts.items():
        net.add_edge(" ".join(gram[:-1]), " ".join(gram[1:]), weight=c)
    return net


def write_cos(matrix: CosineMatrix, path) -> None:
    with open(Path(path), "w", encoding="utf-8") as fh:
        for a, b, v in matrix.pairs():
            fh.write(f"{a} {b} {v:.10g}\n")


def read_cos(path) -> CosineMatrix:
    """Read ``idA idB value`` lines; repeated or mirrored pairs keep the last value."""
    m = CosineMatrix()
    with open(Path(path), encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            fields = line.split()
            if not fields:
                continue
            if len(fields) != 3:
                raise ParseError("expected 'idA idB value'", lineno, path)
            try:
                v = float(fields[2])
            except ValueError:
                raise ParseError(f"bad cosine {fields[2]!r}", lineno, path) from None
            if fields[0] == fields[1]:
                m._add_id(fields[0])
                continue
            try:
                m.set(fields[0], fields[1], v)
            except InvalidParameterError as exc:
                raise ParseError(str(exc), lineno, path) from None
    return m
