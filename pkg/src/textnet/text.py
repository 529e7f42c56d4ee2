"""Documents and the text-processing primitives everything else builds on."""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from html.parser import HTMLParser
from pathlib import Path
from urllib.parse import urldefrag, urljoin

from .errors import InvalidParameterError, LayerMissingError
from .porter import stem_word

__all__ = [
    "Document",
    "strip_html",
    "stem",
    "split_sentences",
    "split_lines",
    "tokenize",
    "count_words",
    "extract_links",
    "ngrams",
]

_BLOCK_TAGS = frozenset(
    """address article aside blockquote body br caption dd div dl dt fieldset
    figcaption figure footer form h1 h2 h3 h4 h5 h6 head header hr html li
    main nav ol option p pre section select table tbody td tfoot th thead
    title tr ul""".split()
)
_SKIP_TAGS = frozenset({"script", "style"})


class _TextExtractor(HTMLParser):
    def __init__(self):
        super().__init__(convert_charrefs=True)
        self.parts = []
        self._skip_depth = 0

    def handle_starttag(self, tag, attrs):
        if tag in _SKIP_TAGS:
            self._skip_depth += 1
        elif tag in _BLOCK_TAGS:
            self.parts.append("\n")

    def handle_startendtag(self, tag, attrs):
        if tag in _BLOCK_TAGS:
            self.parts.append("\n")

    def handle_endtag(self, tag):
        if tag in _SKIP_TAGS:
            self._skip_depth = max(0, self._skip_depth - 1)
        elif tag in _BLOCK_TAGS:
            self.parts.append("\n")

    def handle_data(self, data):
        if not self._skip_depth:
            self.parts.append(data)


_HSPACE = re.compile(r"[ \t\r\f\v\xa0]+")


def _normalize_whitespace(text: str) -> str:
    lines = (_HSPACE.sub(" ", line).strip() for line in text.split("\n"))
    return "\n".join(line for line in lines if line)


def strip_html(html: str) -> str:
    """Return the visible text of an HTML fragment.

    Tags, comments and script/style bodies are dropped, entities decoded,
    and block-level boundaries become line breaks. Horizontal whitespace
    is collapsed and blank lines removed.
    """
    parser = _TextExtractor()
    parser.feed(html)
    parser.close()
    return _normalize_whitespace("".join(parser.parts))


_ALPHA_RUN = re.compile(r"[A-Za-z]+")


def stem(text: str, keep_newlines: bool = False) -> str:
    """Lowercase and Porter-stem every alphabetic run; separators are kept.

    Unless ``keep_newlines`` is set, line breaks are folded into spaces.
    """
    out = _ALPHA_RUN.sub(lambda m: stem_word(m.group().lower()), text)
    if not keep_newlines:
        out = out.replace("\r\n", " ").replace("\n", " ")
    return out


_ABBREVIATIONS = frozenset(
    """mr mrs ms dr prof sr jr st vs etc eg ie inc ltd co corp jan feb mar
    apr jun jul aug sep sept oct nov dec gen gov sen rep rev mt ft no fig
    al approx dept est""".split()
)
# terminal punctuation, optional closers, whitespace, then a sentence opener
_BOUNDARY = re.compile(r"[.?!]+[\"')\]]*(\s+)(?=[\"'(\[]?[A-Z0-9])")


def _ends_with_abbreviation(chunk: str) -> bool:
    m = re.search(r"([A-Za-z.]+)\.[\"')\]]*$", chunk)
    if not m:
        return False
    word = m.group(1)
    if len(word) == 1 and word.isupper():
        return True  # an initial such as "J."
    if "." in word:
        return True  # "U.S", "e.g"
    return word.lower() in _ABBREVIATIONS


def split_sentences(text: str) -> list[str]:
    text = text.strip()
    if not text:
        return []
    sentences = []
    start = 0
    for m in _BOUNDARY.finditer(text):
        chunk = text[start : m.start(1)]
        if chunk.rstrip("\"')]").endswith(".") and _ends_with_abbreviation(chunk):
            continue
        sentences.append(chunk)
        start = m.end(1)
    tail = text[start:].strip()
    if tail:
        sentences.append(tail)
    return sentences


def split_lines(text: str) -> list[str]:
    return [line for line in text.splitlines() if line.strip()]


_WORD = re.compile(r"[a-z0-9]+")
_WORD_OR_PUNC = re.compile(r"[a-z0-9]+|[^\sa-z0-9]+")


def tokenize(text: str, keep_punctuation: bool = False) -> list[str]:
    pattern = _WORD_OR_PUNC if keep_punctuation else _WORD
    return pattern.findall(text.lower())


class _LinkExtractor(HTMLParser):
    def __init__(self):
        super().__init__(convert_charrefs=True)
        self.hrefs = []

    def handle_starttag(self, tag, attrs):
        if tag == "a":
            for name, value in attrs:
                if name == "href" and value is not None:
                    self.hrefs.append(value.strip())


def extract_links(html: str, base_url: str) -> list[str]:
    """Absolute, fragment-free targets of every ``<a href>`` in page order."""
    parser = _LinkExtractor()
    parser.feed(html)
    parser.close()
    links = []
    for href in parser.hrefs:
        if not href:
            continue
        try:
            url = urldefrag(urljoin(base_url, href)).url
        except ValueError:
            continue
        if url:
            links.append(url)
    return links


def ngrams(tokens, n: int) -> list[tuple]:
    if n < 1:
        raise InvalidParameterError(f"n-gram size must be >= 1, got {n}")
    tokens = list(tokens)
    return [tuple(tokens[i : i + n]) for i in range(len(tokens) - n + 1)]


@dataclass
class Document:
    """A unit of text with optional html, plain-text and stemmed layers.

    Deriving a layer (``strip``, ``stem_layer``) fills it in without
    discarding the layer it came from.
    """

    id: str
    html: str | None = None
    text: str | None = None
    stemmed: str | None = None
    language: str = "en"
    parent_id: str | None = None
    class_label: str | None = None
    sentence_features: dict = field(default_factory=dict)
    sentence_scores: dict = field(default_factory=dict)

    def __post_init__(self):
        self.id = str(self.id)
        if self.html is None and self.text is None and self.stemmed is None:
            raise InvalidParameterError(
                f"document {self.id!r} needs at least one of html, text, stem"
            )

    @classmethod
    def from_file(cls, path, type: str = "text", id=None, **kwargs) -> Document:
        path = Path(path)
        content = path.read_text(encoding="utf-8", errors="replace")
        if type not in ("text", "html", "stem"):
            raise InvalidParameterError(f"unknown document type {type!r}")
        layer = "stemmed" if type == "stem" else type
        return cls(id=id if id is not None else path.name, **{layer: content}, **kwargs)

    def layer(self, name: str) -> str:
        """Return a layer, deriving text from html and stem from text on demand."""
        if name == "html":
            if self.html is None:
                raise LayerMissingError(self.id, "html")
            return self.html
        if name == "text":
            if self.text is None:
                if self.html is None:
                    raise LayerMissingError(self.id, "text")
                self.strip()
            return self.text
        if name in ("stem", "stemmed"):
            if self.stemmed is None:
                if self.text is None and self.html is None:
                    raise LayerMissingError(self.id, "stem")
                self.stem_layer()
            return self.stemmed
        raise InvalidParameterError(f"unknown layer {name!r}")

    def strip(self) -> Document:
        if self.html is None:
            raise LayerMissingError(self.id, "html")
        self.text = strip_html(self.html)
        return self

    def stem_layer(self, keep_newlines: bool = True) -> Document:
        self.stemmed = stem(self.layer("text"), keep_newlines=keep_newlines)
        return self

    def _require_text(self) -> str:
        if self.text is None:
            raise LayerMissingError(self.id, "text")
        return self.text

    def split_sentences(self) -> list[str]:
        return split_sentences(self._require_text())

    def split_lines(self) -> list[str]:
        return split_lines(self._require_text())

    def split_words(self, keep_punctuation: bool = False) -> list[str]:
        return tokenize(self._require_text(), keep_punctuation)

    def count_words(self) -> int:
        return len(self.split_words())

    def set_sentence_feature(self, index: int, name: str, value) -> None:
        n = len(self.split_sentences())
        if not 0 <= index < n:
            raise InvalidParameterError(
                f"sentence index {index} out of range for {n} sentences"
            )
        self.sentence_features.setdefault(index, {})[name] = value

    def get_sentence_features(self, index: int) -> dict:
        return dict(self.sentence_features.get(index, {}))


def count_words(doc: Document) -> int:
    return doc.count_words()
