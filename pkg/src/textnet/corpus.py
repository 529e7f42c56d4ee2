"""Corpus registry, IDF/TF indexes, corpus statistics and queries.

A corpus named ``name`` under ``root`` lives in ``root/corpus-data/name/``:

    docs/                      stored copies of the source files
    name-docid-to-file         "docid<TAB>path" lines
    name-docid-to-url          "docid<TAB>url" lines
    name.links                 "src dst" lines, EX for external targets
    manifest                   "key value" lines
    idf.<variant>, tf.<variant>, doclen.<variant>, termcounts.<variant>

Index file layouts are described in FORMATS.md.
"""

from __future__ import annotations

import json
import math
import os
import shutil
from collections import Counter
from contextlib import contextmanager
from dataclasses import dataclass, field
from pathlib import Path
from urllib.parse import urldefrag

from .errors import (
    EmptyCorpusError,
    InvalidParameterError,
    NotFoundError,
    OrderingError,
    ParseError,
)
from .graph import EX
from .porter import stem_word
from .text import Document, extract_links, tokenize

__all__ = [
    "Corpus",
    "build_corpus",
    "IdfIndex",
    "TfIndex",
    "CorpusStats",
    "index_tokens",
    "build_idf_by_line",
    "read_idf",
    "fuzzy_or_query",
]

MAGIC = "#textnet-index"
FORMAT_VERSION = 1
HTML_SUFFIXES = (".html", ".htm", ".shtml", ".xhtml")


def _variant(stemmed: bool, punc: bool = False) -> str:
    return ("stemmed" if stemmed else "unstemmed") + (".punc" if punc else "")


def _header(kind: str, **meta) -> str:
    extra = " ".join(f"{k}={v}" for k, v in meta.items())
    return f"{MAGIC} {kind} v{FORMAT_VERSION} {extra}".rstrip() + "\n"


def _check_header(line: str, kind: str, path) -> dict:
    parts = line.split()
    if len(parts) < 3 or parts[0] != MAGIC or parts[1] != kind:
        raise ParseError(f"not a {kind} index file", 1, path)
    if parts[2] != f"v{FORMAT_VERSION}":
        raise ParseError(f"unsupported {kind} index version {parts[2]}", 1, path)
    return dict(p.split("=", 1) for p in parts[3:] if "=" in p)


def index_tokens(text: str, stemmed: bool = False, punc: bool = False) -> list[str]:
    """Tokens as stored in the indexes: lowercase, optionally Porter-stemmed."""
    tokens = tokenize(text, keep_punctuation=punc)
    if stemmed:
        tokens = [stem_word(t) if t.isalpha() else t for t in tokens]
    return tokens


def _idf(n_docs: int, df: int) -> float:
    return math.log(n_docs / df)


# -- indexes --------------------------------------------------------------


@dataclass
class IdfIndex:
    values: dict
    stemmed: bool = False
    punc: bool = False
    n_docs: int = 0

    def get(self, term: str, default: float = 0.0) -> float:
        return self.values.get(self._norm(term), default)

    def _norm(self, term: str) -> str:
        term = term.lower()
        return stem_word(term) if self.stemmed and term.isalpha() else term

    def __contains__(self, term):
        return self._norm(term) in self.values

    def write(self, path) -> None:
        with open(Path(path), "w", encoding="utf-8") as fh:
            fh.write(_header("idf", stemmed=int(self.stemmed), punc=int(self.punc), n=self.n_docs))
            for term in sorted(self.values):
                fh.write(f"{term}\t{self.values[term]!r}\n")

    @classmethod
    def read(cls, path) -> IdfIndex:
        with open(Path(path), encoding="utf-8") as fh:
            meta = _check_header(fh.readline(), "idf", path)
            values = {}
            for lineno, line in enumerate(fh, 2):
                term, sep, value = line.rstrip("\n").rpartition("\t")
                if not sep:
                    raise ParseError("expected 'term<TAB>idf'", lineno, path)
                values[term] = float(value)
        return cls(values, meta.get("stemmed") == "1", meta.get("punc") == "1", int(meta.get("n", 0)))


@dataclass
class TfIndex:
    """Positional postings: term -> {doc id -> sorted 0-based positions}."""

    postings: dict
    doc_ids: list
    stemmed: bool = False
    punc: bool = False
    urls: dict = field(default_factory=dict)

    @property
    def n_docs(self) -> int:
        return len(self.doc_ids)

    def normalize(self, word: str) -> str:
        word = word.lower()
        if self.stemmed and word.isalpha():
            return stem_word(word)
        return word

    def term_query(self, word: str) -> tuple[int, int, dict]:
        """(total frequency, number of docs, {doc: frequency})."""
        docs = self.postings.get(self.normalize(word), {})
        per_doc = {d: len(p) for d, p in docs.items()}
        return sum(per_doc.values()), len(per_doc), per_doc

    def get_freq(self, word: str) -> int:
        return self.term_query(word)[0]

    def get_num_docs_with_word(self, word: str) -> int:
        return self.term_query(word)[1]

    def get_docs(self, word: str) -> list:
        return sorted(self.term_query(word)[2])

    def phrase_query(self, terms) -> dict:
        """{doc: set of start positions} where the phrase occurs."""
        terms = [self.normalize(t) for t in terms]
        if not terms:
            raise InvalidParameterError("empty phrase")
        first = self.postings.get(terms[0], {})
        out = {}
        for doc, positions in first.items():
            later = []
            for t in terms[1:]:
                plist = self.postings.get(t, {}).get(doc)
                if plist is None:
                    break
                later.append(set(plist))
            else:
                starts = {p for p in positions if all(p + k in s for k, s in enumerate(later, 1))}
                if starts:
                    out[doc] = starts
        return out

    def phrase_freq(self, terms) -> tuple[int, int, dict]:
        hits = self.phrase_query(terms)
        per_doc = {d: len(s) for d, s in hits.items()}
        return sum(per_doc.values()), len(per_doc), per_doc

    def write(self, path) -> None:
        with open(Path(path), "w", encoding="utf-8") as fh:
            fh.write(_header("tf", stemmed=int(self.stemmed), punc=int(self.punc)))
            fh.write(json.dumps({"docs": self.doc_ids}) + "\n")
            for term in sorted(self.postings):
                fh.write(json.dumps({"t": term, "p": self.postings[term]}, sort_keys=True) + "\n")

    @classmethod
    def read(cls, path) -> TfIndex:
        with open(Path(path), encoding="utf-8") as fh:
            meta = _check_header(fh.readline(), "tf", path)
            try:
                doc_ids = json.loads(fh.readline())["docs"]
                postings = {}
                lineno = 2
                for lineno, line in enumerate(fh, 3):
                    rec = json.loads(line)
                    postings[rec["t"]] = rec["p"]
            except (json.JSONDecodeError, KeyError, TypeError):
                raise ParseError("malformed tf record", lineno, path) from None
        return cls(postings, doc_ids, meta.get("stemmed") == "1", meta.get("punc") == "1")


@dataclass
class CorpusStats:
    doc_len_dist: dict
    term_counts: dict

    def write(self, doclen_path, termcount_path) -> None:
        with open(Path(doclen_path), "w", encoding="utf-8") as fh:
            fh.write(_header("doclen"))
            for k in sorted(self.doc_len_dist):
                fh.write(f"{k}\t{self.doc_len_dist[k]}\n")
        with open(Path(termcount_path), "w", encoding="utf-8") as fh:
            fh.write(_header("termcounts"))
            for t in sorted(self.term_counts):
                freq, df = self.term_counts[t]
                fh.write(f"{t}\t{freq}\t{df}\n")

    @classmethod
    def read(cls, doclen_path, termcount_path) -> CorpusStats:
        dist, counts = {}, {}
        with open(Path(doclen_path), encoding="utf-8") as fh:
            _check_header(fh.readline(), "doclen", doclen_path)
            for line in fh:
                k, c = line.split("\t")
                dist[int(k)] = int(c)
        with open(Path(termcount_path), encoding="utf-8") as fh:
            _check_header(fh.readline(), "termcounts", termcount_path)
            for line in fh:
                t, freq, df = line.rstrip("\n").split("\t")
                counts[t] = (int(freq), int(df))
        return cls(dist, counts)


# -- corpus ---------------------------------------------------------------


def file_url(path) -> str:
    return "http://" + str(Path(path).resolve())


class Corpus:
    def __init__(self, name: str, root="produced"):
        if not name or "/" in name:
            raise InvalidParameterError(f"bad corpus name {name!r}")
        self.name = name
        self.root = Path(root)
        self.dir = self.root / "corpus-data" / name
        self.errors: list[tuple[str, str]] = []
        self._files: dict[str, str] | None = None
        self._urls: dict[str, str] | None = None

    # paths
    @property
    def docs_dir(self) -> Path:
        return self.dir / "docs"

    @property
    def file_registry(self) -> Path:
        return self.dir / f"{self.name}-docid-to-file"

    @property
    def url_registry(self) -> Path:
        return self.dir / f"{self.name}-docid-to-url"

    @property
    def links_path(self) -> Path:
        return self.dir / f"{self.name}.links"

    @property
    def manifest_path(self) -> Path:
        return self.dir / "manifest"

    def index_path(self, kind: str, stemmed: bool, punc: bool = False) -> Path:
        return self.dir / f"{kind}.{_variant(stemmed, punc)}"

    # registry
    def exists(self) -> bool:
        return self.file_registry.exists() and self.url_registry.exists()

    def _read_registry(self, path) -> dict[str, str]:
        if not path.exists():
            raise OrderingError(f"{path} missing; build the corpus first")
        out = {}
        with open(path, encoding="utf-8") as fh:
            for lineno, line in enumerate(fh, 1):
                line = line.rstrip("\n")
                if not line:
                    continue
                docid, sep, value = line.partition("\t")
                if not sep:
                    raise ParseError("expected 'docid<TAB>value'", lineno, path)
                out[docid] = value
        return out

    @property
    def files(self) -> dict[str, str]:
        if self._files is None:
            self._files = self._read_registry(self.file_registry)
        return self._files

    @property
    def urls(self) -> dict[str, str]:
        if self._urls is None:
            self._urls = self._read_registry(self.url_registry)
        return self._urls

    def doc_ids(self) -> list[str]:
        return sorted(self.files, key=_docid_key)

    def __len__(self):
        return len(self.files)

    def manifest(self) -> dict[str, str]:
        if not self.manifest_path.exists():
            return {}
        out = {}
        for line in self.manifest_path.read_text(encoding="utf-8").splitlines():
            key, _, value = line.partition(" ")
            if key:
                out[key] = value
        return out

    def _update_manifest(self, **entries) -> None:
        data = self.manifest()
        data.update({k: str(v) for k, v in entries.items()})
        self.manifest_path.write_text(
            "".join(f"{k} {data[k]}\n" for k in sorted(data)), encoding="utf-8"
        )

    @contextmanager
    def lock(self):
        """Exclusive writer lock for index builds."""
        self.dir.mkdir(parents=True, exist_ok=True)
        path = self.dir / ".lock"
        try:
            fd = os.open(path, os.O_CREAT | os.O_EXCL | os.O_WRONLY)
        except FileExistsError:
            raise OrderingError(f"{path} exists; another index build is running") from None
        try:
            os.write(fd, str(os.getpid()).encode())
            yield
        finally:
            os.close(fd)
            path.unlink(missing_ok=True)

    # documents
    def doc_type(self, docid: str) -> str:
        kind = self.manifest().get("type", "auto")
        if kind != "auto":
            return kind
        return "html" if Path(self.files[docid]).suffix.lower() in HTML_SUFFIXES else "text"

    def document(self, docid) -> Document:
        docid = str(docid)
        if docid not in self.files:
            raise NotFoundError(f"no document {docid!r} in corpus {self.name!r}")
        doc = Document.from_file(self.files[docid], type=self.doc_type(docid), id=docid)
        return doc

    def text(self, docid) -> str:
        return self.document(docid).layer("text")

    def documents(self) -> dict[str, Document]:
        return {d: self.document(d) for d in self.doc_ids()}

    # indexes
    def build_docno(self) -> dict[str, str]:
        """Validate and reload the registry; later builds depend on it."""
        self._files = self._urls = None
        files, urls = self.files, self.urls
        if set(files) != set(urls):
            raise ParseError("file and url registries disagree", None, self.file_registry)
        self._update_manifest(docno=1, documents=len(files))
        return files

    def _require_docno(self):
        if self.manifest().get("docno") != "1":
            raise OrderingError("build_docno must run before building indexes")

    def _tokens(self, stemmed: bool, punc: bool = False) -> dict[str, list[str]]:
        return {d: index_tokens(self.text(d), stemmed, punc) for d in self.doc_ids()}

    def build_tf(self, stemmed: bool = False, punc: bool = False) -> TfIndex:
        self._require_docno()
        postings: dict[str, dict[str, list[int]]] = {}
        for docid, tokens in self._tokens(stemmed, punc).items():
            for pos, tok in enumerate(tokens):
                postings.setdefault(tok, {}).setdefault(docid, []).append(pos)
        tf = TfIndex(postings, self.doc_ids(), stemmed, punc)
        tf.write(self.index_path("tf", stemmed, punc))
        return tf

    def build_idf(self, stemmed: bool = False, punc: bool = False) -> IdfIndex:
        self._require_docno()
        docs = self._tokens(stemmed, punc)
        df = Counter()
        for tokens in docs.values():
            df.update(set(tokens))
        n = len(docs)
        idf = IdfIndex({t: _idf(n, c) for t, c in df.items()}, stemmed, punc, n)
        idf.write(self.index_path("idf", stemmed, punc))
        return idf

    def build_stats(self, stemmed: bool = False) -> CorpusStats:
        self._require_docno()
        lengths = Counter()
        freq = Counter()
        df = Counter()
        for tokens in self._tokens(stemmed).values():
            lengths[len(tokens)] += 1
            freq.update(tokens)
            df.update(set(tokens))
        stats = CorpusStats(dict(sorted(lengths.items())), {t: (freq[t], df[t]) for t in freq})
        stats.write(self.index_path("doclen", stemmed), self.index_path("termcounts", stemmed))
        return stats

    def write_links(self) -> Path:
        """One "src dst" line per anchor in html documents; unknown targets become EX."""
        self._require_docno()
        by_url = {urldefrag(u)[0]: d for d, u in self.urls.items()}
        with open(self.links_path, "w", encoding="utf-8") as fh:
            for docid in self.doc_ids():
                if self.doc_type(docid) != "html":
                    continue
                html = self.document(docid).html
                for link in extract_links(html, self.urls[docid]):
                    fh.write(f"{docid} {by_url.get(link, EX)}\n")
        return self.links_path

    def load_tf(self, stemmed: bool = False, punc: bool = False) -> TfIndex:
        path = self.index_path("tf", stemmed, punc)
        if not path.exists():
            raise OrderingError(f"{path} missing; run index-corpus first")
        tf = TfIndex.read(path)
        tf.urls = dict(self.urls)
        return tf

    def load_idf(self, stemmed: bool = False, punc: bool = False) -> IdfIndex:
        path = self.index_path("idf", stemmed, punc)
        if not path.exists():
            raise OrderingError(f"{path} missing; run index-corpus first")
        return IdfIndex.read(path)

    def load_stats(self, stemmed: bool = False) -> CorpusStats:
        a, b = self.index_path("doclen", stemmed), self.index_path("termcounts", stemmed)
        if not a.exists() or not b.exists():
            raise OrderingError("corpus statistics missing; run index-corpus first")
        return CorpusStats.read(a, b)


def _docid_key(docid: str):
    return (0, int(docid), "") if docid.isdigit() else (1, 0, docid)


def _unique_name(name: str, taken: set) -> str:
    candidate, k = name, 1
    stem, suffix = os.path.splitext(name)
    while candidate in taken:
        candidate = f"{stem}-{k}{suffix}"
        k += 1
    taken.add(candidate)
    return candidate


def build_corpus(sources, name: str, root="produced", type: str = "auto") -> Corpus:
    """Copy source files into a new corpus and write its registries.

    ``sources`` is a directory (walked recursively, relative layout kept so
    relative links still resolve) or a list of file paths. Unreadable files
    are recorded in ``corpus.errors`` and skipped.
    """
    if type not in ("auto", "html", "text"):
        raise InvalidParameterError(f"unknown corpus type {type!r}")
    corpus = Corpus(name, root)
    if isinstance(sources, (str, os.PathLike)) and Path(sources).is_dir():
        base = Path(sources)
        entries = [(p, p.relative_to(base).as_posix()) for p in sorted(base.rglob("*")) if p.is_file()]
    else:
        if isinstance(sources, (str, os.PathLike)):
            sources = [sources]
        taken: set[str] = set()
        entries = [(Path(p), _unique_name(Path(p).name, taken)) for p in sources]
    if not entries:
        raise EmptyCorpusError(f"no source files for corpus {name!r}")
    if corpus.docs_dir.exists():
        shutil.rmtree(corpus.docs_dir)
    corpus.docs_dir.mkdir(parents=True)
    files, urls = {}, {}
    for src, rel in entries:
        dest = corpus.docs_dir / rel
        try:
            data = src.read_bytes()
        except OSError as exc:
            corpus.errors.append((str(src), str(exc)))
            continue
        dest.parent.mkdir(parents=True, exist_ok=True)
        dest.write_bytes(data)
        docid = str(len(files))
        files[docid] = str(dest.resolve())
        urls[docid] = file_url(dest)
    if not files:
        raise EmptyCorpusError(f"no readable source files for corpus {name!r}")
    for path, table in ((corpus.file_registry, files), (corpus.url_registry, urls)):
        with open(path, "w", encoding="utf-8") as fh:
            for docid in sorted(table, key=_docid_key):
                fh.write(f"{docid}\t{table[docid]}\n")
    corpus.manifest_path.unlink(missing_ok=True)
    corpus._update_manifest(name=name, type=type, documents=len(files), format=FORMAT_VERSION)
    return corpus


# -- queries --------------------------------------------------------------


def fuzzy_or_query(tf: TfIndex, terms=(), neg_terms=(), phrases=(), neg_phrases=()) -> dict:
    """Docs matching at least one atom, scored by the fraction of atoms matched.

    Negated atoms match the documents that do not contain them.
    """
    atoms = []
    for t in terms:
        atoms.append((False, set(tf.term_query(t)[2])))
    for t in neg_terms:
        atoms.append((True, set(tf.term_query(t)[2])))
    for p in phrases:
        atoms.append((False, set(tf.phrase_query(p))))
    for p in neg_phrases:
        atoms.append((True, set(tf.phrase_query(p))))
    if not atoms:
        raise InvalidParameterError("fuzzy OR query needs at least one atom")
    scores = {}
    for doc in tf.doc_ids:
        hits = sum((doc not in docs) if negated else (doc in docs) for negated, docs in atoms)
        if hits:
            scores[doc] = hits / len(atoms)
    return scores


def build_idf_by_line(text: str, stemmed: bool = False, punc: bool = False) -> dict:
    """IDF treating each nonblank line as a document."""
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise EmptyCorpusError("no lines to build idf from")
    df = Counter()
    for ln in lines:
        df.update(set(index_tokens(ln, stemmed, punc)))
    return {t: _idf(len(lines), c) for t, c in df.items()}


def read_idf(path) -> dict:
    return IdfIndex.read(path).values
