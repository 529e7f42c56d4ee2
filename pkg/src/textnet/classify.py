"""Bag-of-words features, chi-square selection, perceptron, svm_light I/O."""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field
from pathlib import Path

from .errors import InvalidParameterError, ParseError
from .text import tokenize
from .porter import stem_word

__all__ = [
    "FeatureSpace",
    "LabeledVector",
    "PerceptronModel",
    "bag_of_words",
    "class_labels",
    "vectorize",
    "chi_squared",
    "select",
    "write_svm_light",
    "read_svm_light",
    "learn",
    "predict",
    "classify",
    "ClassifyResult",
]


class FeatureSpace:
    """Feature string -> positive id, assigned in first-seen order."""

    def __init__(self):
        self.ids: dict[str, int] = {}

    def id(self, feature: str, grow: bool = True) -> int | None:
        fid = self.ids.get(feature)
        if fid is None and grow:
            fid = len(self.ids) + 1
            self.ids[feature] = fid
        return fid

    def feature(self, fid: int) -> str:
        for f, i in self.ids.items():
            if i == fid:
                return f
        raise KeyError(fid)

    def __len__(self):
        return len(self.ids)

    def write(self, path) -> None:
        with open(Path(path), "w", encoding="utf-8") as fh:
            for f, i in sorted(self.ids.items(), key=lambda kv: kv[1]):
                fh.write(f"{i}\t{f}\n")

    @classmethod
    def read(cls, path) -> FeatureSpace:
        space = cls()
        with open(Path(path), encoding="utf-8") as fh:
            for lineno, line in enumerate(fh, 1):
                line = line.rstrip("\n")
                if not line:
                    continue
                fid, sep, feature = line.partition("\t")
                if not sep or not fid.isdigit():
                    raise ParseError("expected 'id<TAB>feature'", lineno, path)
                space.ids[feature] = int(fid)
        return space


@dataclass
class LabeledVector:
    label: int
    features: dict

    def __post_init__(self):
        if self.label not in (1, -1):
            raise InvalidParameterError(f"labels must be +1/-1, got {self.label}")
        for k, v in self.features.items():
            if not isinstance(k, int) or k < 1:
                raise InvalidParameterError(f"feature ids must be positive ints, got {k!r}")
            if not math.isfinite(v):
                raise InvalidParameterError(f"feature {k} has non-finite value {v}")


def bag_of_words(text: str, stem: bool = False) -> Counter:
    tokens = tokenize(text)
    if stem:
        tokens = [stem_word(t) if t.isalpha() else t for t in tokens]
    return Counter(tokens)


def class_labels(classes) -> dict[str, int]:
    """Two class names -> labels; the lexicographically smaller one is +1."""
    names = sorted(set(classes))
    if len(names) != 2:
        raise InvalidParameterError(f"need exactly two classes, got {names}")
    return {names[0]: 1, names[1]: -1}


def vectorize(docs, space: FeatureSpace | None = None, stem: bool = False, grow: bool = True):
    """``docs`` is a list of (class name, text). Returns (vectors, space, labels)."""
    space = space if space is not None else FeatureSpace()
    labels = class_labels(c for c, _ in docs)
    vectors = []
    for cls, text in docs:
        feats = {}
        for word, count in bag_of_words(text, stem).items():
            fid = space.id(word, grow)
            if fid is not None:
                feats[fid] = float(count)
        vectors.append(LabeledVector(labels[cls], feats))
    return vectors, space, labels


def chi_squared(docs) -> dict[str, float]:
    """Per-feature 2x2 presence-by-class chi-square.

    ``docs`` is a list of (class name, iterable of features); presence
    is binary. Cells: A = present & class 1, B = present & class 2,
    C = absent & class 1, D = absent & class 2.
    """
    docs = [(c, set(f)) for c, f in docs]
    labels = class_labels(c for c, _ in docs)
    n = len(docs)
    n1 = sum(1 for c, _ in docs if labels[c] == 1)
    n2 = n - n1
    present1, present2 = Counter(), Counter()
    for c, feats in docs:
        (present1 if labels[c] == 1 else present2).update(feats)
    out = {}
    for f in set(present1) | set(present2):
        a, b = present1[f], present2[f]
        cc, d = n1 - a, n2 - b
        denom = (a + b) * (cc + d) * (a + cc) * (b + d)
        out[f] = n * (a * d - b * cc) ** 2 / denom if denom else 0.0
    return out


def select(scores: dict, top_n: int) -> list[str]:
    """Top features by chi-square descending, ties by feature string."""
    return [f for f, _ in sorted(scores.items(), key=lambda kv: (-kv[1], kv[0]))[:top_n]]


def _fmt(v: float) -> str:
    return str(int(v)) if float(v).is_integer() and abs(v) < 1e15 else repr(float(v))


def format_svm_light(vec: LabeledVector) -> str:
    parts = [str(vec.label)] + [f"{k}:{_fmt(vec.features[k])}" for k in sorted(vec.features)]
    return " ".join(parts)


def write_svm_light(vectors, path) -> None:
    with open(Path(path), "w", encoding="utf-8") as fh:
        for v in vectors:
            fh.write(format_svm_light(v) + "\n")


def read_svm_light(path) -> list[LabeledVector]:
    out = []
    with open(Path(path), encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            fields = line.split()
            try:
                label = int(float(fields[0]))
                feats = {}
                prev = 0
                for tok in fields[1:]:
                    k, v = tok.split(":")
                    k = int(k)
                    if k <= prev:
                        raise ValueError("ids not ascending")
                    prev = k
                    feats[k] = float(v)
                out.append(LabeledVector(label, feats))
            except (ValueError, InvalidParameterError) as exc:
                raise ParseError(f"bad svm_light line ({exc})", lineno, path) from None
    return out


@dataclass
class PerceptronModel:
    w0: float = 0.0
    weights: dict = field(default_factory=dict)
    converged: bool = True
    epochs: int = 0
    mistakes: int = 0
    labels: dict = field(default_factory=dict)

    def score(self, features: dict) -> float:
        return self.w0 + math.fsum(self.weights.get(k, 0.0) * v for k, v in features.items())

    def write(self, path) -> None:
        with open(Path(path), "w", encoding="utf-8") as fh:
            if self.labels:
                names = " ".join(f"{name}={lab}" for name, lab in sorted(self.labels.items()))
                fh.write(f"# classes {names}\n")
            fh.write(f"intercept {self.w0!r}\n")
            for k in sorted(self.weights):
                fh.write(f"{k} {self.weights[k]!r}\n")

    @classmethod
    def read(cls, path) -> PerceptronModel:
        model = cls()
        with open(Path(path), encoding="utf-8") as fh:
            for lineno, line in enumerate(fh, 1):
                fields = line.split()
                if not fields:
                    continue
                try:
                    if fields[0] == "#" and len(fields) > 1 and fields[1] == "classes":
                        for item in fields[2:]:
                            name, lab = item.rsplit("=", 1)
                            model.labels[name] = int(lab)
                    elif fields[0] == "intercept":
                        model.w0 = float(fields[1])
                    else:
                        model.weights[int(fields[0])] = float(fields[1])
                except (ValueError, IndexError):
                    raise ParseError("bad model line", lineno, path) from None
        return model


def predict(model: PerceptronModel, features: dict) -> int:
    return 1 if model.score(features) > 0 else -1


def learn(vectors, eta: float = 1.0, max_epochs: int = 1000) -> PerceptronModel:
    """Mistake-driven perceptron; stops after an error-free epoch.

    A zero score predicts -1. If ``max_epochs`` pass without an error-free
    epoch the model is returned with ``converged=False``.
    """
    if eta <= 0:
        raise InvalidParameterError(f"eta must be positive, got {eta}")
    model = PerceptronModel()
    for epoch in range(1, max_epochs + 1):
        errors = 0
        for vec in vectors:
            if predict(model, vec.features) != vec.label:
                errors += 1
                step = eta * vec.label
                model.w0 += step
                for k, v in vec.features.items():
                    model.weights[k] = model.weights.get(k, 0.0) + step * v
        model.mistakes += errors
        model.epochs = epoch
        if errors == 0:
            model.converged = True
            return model
    model.converged = False
    return model


@dataclass
class ClassifyResult:
    predictions: list
    correct: int
    total: int

    @property
    def accuracy(self) -> float:
        return self.correct / self.total * 100


def classify(vectors, model: PerceptronModel) -> ClassifyResult:
    vectors = list(vectors)
    if not vectors:
        raise InvalidParameterError("empty test set")
    preds = [predict(model, v.features) for v in vectors]
    correct = sum(p == v.label for p, v in zip(preds, vectors))
    return ClassifyResult(preds, correct, len(vectors))
