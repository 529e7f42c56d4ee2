"""Distribution fitting, goodness of fit, regression and index samplers."""

from __future__ import annotations

import bisect
import math
import random
from dataclasses import dataclass
from pathlib import Path

from scipy import special

from .errors import InsufficientDataError, InvalidParameterError, ParseError, SingularError

__all__ = [
    "EmpiricalDistribution",
    "FitResult",
    "pl_estimate",
    "gen_pl",
    "gen_pois",
    "pois_estimate",
    "compare_chi_square",
    "chi2_sf",
    "t_dist_prob",
    "correlation_pvalue",
    "linear_regression",
    "DiscreteDistribution",
    "zipfian",
    "gaussian",
    "lognormal",
    "poisson",
    "from_weights",
    "Geometric",
]


@dataclass
class EmpiricalDistribution:
    """Observed counts at indexes 1..n (``counts[0]`` is index 1)."""

    counts: list

    def __post_init__(self):
        self.counts = list(self.counts)
        if not self.counts:
            raise InvalidParameterError("a distribution needs at least one entry")
        if any(c < 0 for c in self.counts):
            raise InvalidParameterError("counts must be nonnegative")

    @property
    def count(self) -> int:
        return len(self.counts)

    @property
    def distribution(self) -> list:
        return list(self.counts)

    @classmethod
    def read_from_file(cls, path) -> EmpiricalDistribution:
        """Read one count per line, or ``index count`` pairs."""
        values: dict[int, float] = {}
        nxt = 1
        with open(Path(path), encoding="utf-8") as fh:
            for lineno, line in enumerate(fh, 1):
                fields = line.split()
                if not fields or fields[0].startswith("#"):
                    continue
                try:
                    if len(fields) == 1:
                        idx, val = nxt, _number(fields[0])
                    elif len(fields) == 2:
                        idx, val = int(fields[0]), _number(fields[1])
                    else:
                        raise ValueError
                except ValueError:
                    raise ParseError("expected 'count' or 'index count'", lineno, path) from None
                if idx < 1:
                    raise ParseError(f"index {idx} < 1", lineno, path)
                values[idx] = val
                nxt = idx + 1
        if not values:
            raise InvalidParameterError(f"{path}: empty distribution")
        n = max(values)
        return cls([values.get(i, 0) for i in range(1, n + 1)])

    def write(self, path) -> None:
        with open(Path(path), "w", encoding="utf-8") as fh:
            for c in self.counts:
                fh.write(f"{c}\n")


def _number(text):
    x = float(text)
    return int(x) if x.is_integer() and "." not in text and "e" not in text.lower() else x


@dataclass(frozen=True)
class FitResult:
    c_hat: float
    alpha_hat: float


def linear_regression(points) -> tuple[tuple[float, float], float]:
    """Ordinary least squares; returns ``((intercept, slope), r)``.

    ``points`` is a mapping x -> y or an iterable of (x, y) pairs. When y
    is constant the correlation is undefined and reported as 0.
    """
    pairs = list(points.items()) if hasattr(points, "items") else [tuple(p) for p in points]
    n = len(pairs)
    if n < 2:
        raise SingularError("need at least two points")
    mx = math.fsum(x for x, _ in pairs) / n
    my = math.fsum(y for _, y in pairs) / n
    sxx = math.fsum((x - mx) ** 2 for x, _ in pairs)
    syy = math.fsum((y - my) ** 2 for _, y in pairs)
    sxy = math.fsum((x - mx) * (y - my) for x, y in pairs)
    if sxx == 0:
        raise SingularError("all x values are equal")
    slope = sxy / sxx
    intercept = my - slope * mx
    r = 0.0 if syy == 0 else max(-1.0, min(1.0, sxy / math.sqrt(sxx * syy)))
    return (intercept, slope), r


def t_dist_prob(df: float, t: float) -> float:
    """Upper tail P(T > t) of Student's t with ``df`` degrees of freedom."""
    if df < 1:
        raise InvalidParameterError(f"df must be >= 1, got {df}")
    if math.isinf(t):
        return 0.0 if t > 0 else 1.0
    tail = 0.5 * special.betainc(df / 2.0, 0.5, df / (df + t * t))
    return float(tail if t >= 0 else 1.0 - tail)


def correlation_pvalue(r: float, n: int) -> float:
    """Two-sided p-value of a Pearson correlation from ``n`` points.

    NaN when fewer than three points leave no residual degrees of freedom.
    """
    df = n - 2
    if df < 1:
        return math.nan
    if abs(r) >= 1.0:
        return 0.0
    t = r * math.sqrt(df / (1.0 - r * r))
    return 2.0 * t_dist_prob(df, abs(t))


def chi2_sf(x: float, df: int) -> float:
    """Upper tail of the chi-square distribution."""
    if df <= 0:
        raise InvalidParameterError(f"df must be positive, got {df}")
    if x <= 0:
        return 1.0
    return float(special.gammaincc(df / 2.0, x / 2.0))


def pl_estimate(observed) -> FitResult:
    """Fit ``count = c * i**alpha`` by least squares in log-log space.

    Zero counts carry no information on a log scale and are skipped.
    """
    counts = observed.counts if isinstance(observed, EmpiricalDistribution) else list(observed)
    pts = [(math.log(i), math.log(c)) for i, c in enumerate(counts, 1) if c > 0]
    if len(pts) < 2:
        raise InsufficientDataError("power-law fit needs at least two positive counts")
    (intercept, slope), _ = linear_regression(pts)
    return FitResult(math.exp(intercept), slope)


def gen_pl(c: float, alpha: float, n: int) -> list[float]:
    if c <= 0 or n < 1:
        raise InvalidParameterError("gen_pl needs c > 0 and n >= 1")
    return [c * i**alpha for i in range(1, n + 1)]


def gen_pois(lam: float, n_samples: int, rng: random.Random | int | None = None) -> list[int]:
    """Poisson draws by inverse-transform sampling."""
    if lam <= 0:
        raise InvalidParameterError(f"lambda must be positive, got {lam}")
    rng = _as_rng(rng)
    out = []
    for _ in range(n_samples):
        u = rng.random()
        k = 0
        p = math.exp(-lam)
        cdf = p
        while u > cdf:
            k += 1
            p *= lam / k
            cdf += p
            if p == 0.0:  # cdf has saturated below u in floating point
                break
        out.append(k)
    return out


def pois_estimate(observed) -> float:
    counts = observed.counts if isinstance(observed, EmpiricalDistribution) else list(observed)
    total = math.fsum(counts)
    if total <= 0:
        raise InsufficientDataError("no mass to estimate lambda from")
    return math.fsum(i * c for i, c in enumerate(counts, 1)) / total


def compare_chi_square(observed, expected, n_params: int) -> tuple[int, float]:
    """Chi-square comparison of an observed and a fitted distribution.

    The statistic is Pearson's independence chi-square on the 2 x n table
    whose rows are the observed and expected counts; index columns with
    no mass in either row are dropped. Degrees of freedom are
    ``bins - 1 - n_params``. Returns ``(df, p_value)``.
    """
    obs = observed.counts if isinstance(observed, EmpiricalDistribution) else list(observed)
    exp = list(expected)
    if len(obs) != len(exp):
        raise InvalidParameterError("observed and expected lengths differ")
    if any(e < 0 for e in exp) or any(o < 0 for o in obs):
        raise InvalidParameterError("counts must be nonnegative")
    df = len(obs) - 1 - n_params
    if df <= 0:
        raise InvalidParameterError(f"no degrees of freedom left (df={df})")
    cols = [(o, e) for o, e in zip(obs, exp) if o + e > 0]
    row_o = math.fsum(o for o, _ in cols)
    row_e = math.fsum(e for _, e in cols)
    total = row_o + row_e
    if row_o == 0 or row_e == 0:
        raise InvalidParameterError("observed and expected need positive mass")
    stat = 0.0
    for o, e in cols:
        col = o + e
        for cell, row in ((o, row_o), (e, row_e)):
            fitted = row * col / total
            stat += (cell - fitted) ** 2 / fitted
    return df, chi2_sf(stat, df)


# -- samplers -----------------------------------------------------------


def _as_rng(rng) -> random.Random:
    if isinstance(rng, random.Random):
        return rng
    return random.Random(rng)


class DiscreteDistribution:
    """Probability masses over indexes 1..size, drawn by CDF inversion."""

    def __init__(self, weights, name: str = "weights"):
        weights = [float(w) for w in weights]
        if not weights or any(w < 0 or math.isnan(w) for w in weights):
            raise InvalidParameterError(f"{name}: weights must be nonnegative")
        total = math.fsum(weights)
        if total <= 0:
            raise InvalidParameterError(f"{name}: weights must have a positive sum")
        self.name = name
        self.masses = [w / total for w in weights]
        self._cdf = []
        acc = 0.0
        for m in self.masses:
            acc += m
            self._cdf.append(acc)
        self._cdf[-1] = 1.0

    @property
    def size(self) -> int:
        return len(self.masses)

    def probability(self, index: int) -> float:
        return self.masses[index - 1] if 1 <= index <= self.size else 0.0

    def draw_index(self, rng=None) -> int:
        u = _as_rng(rng).random()
        return min(bisect.bisect_right(self._cdf, u), self.size - 1) + 1

    def sample(self, n: int, rng=None) -> list[int]:
        rng = _as_rng(rng)
        return [self.draw_index(rng) for _ in range(n)]


def zipfian(alpha: float, size: int) -> DiscreteDistribution:
    if alpha <= 0 or size < 1:
        raise InvalidParameterError("zipfian needs alpha > 0 and size >= 1")
    return DiscreteDistribution([i**-alpha for i in range(1, size + 1)], "zipfian")


def gaussian(mean: float, variance: float, size: int) -> DiscreteDistribution:
    if variance <= 0 or size < 1:
        raise InvalidParameterError("gaussian needs variance > 0 and size >= 1")
    w = [math.exp(-((i - mean) ** 2) / (2 * variance)) for i in range(1, size + 1)]
    return DiscreteDistribution(w, "gaussian")


def lognormal(mean: float, std_dev: float, size: int) -> DiscreteDistribution:
    """Log-normal density (``mean``/``std_dev`` of the underlying normal) at 1..size."""
    if std_dev <= 0 or size < 1:
        raise InvalidParameterError("lognormal needs std_dev > 0 and size >= 1")
    w = [
        math.exp(-((math.log(i) - mean) ** 2) / (2 * std_dev**2)) / i
        for i in range(1, size + 1)
    ]
    return DiscreteDistribution(w, "lognormal")


def poisson(lam: float, size: int) -> DiscreteDistribution:
    if lam <= 0 or size < 1:
        raise InvalidParameterError("poisson needs lambda > 0 and size >= 1")
    w = [math.exp(k * math.log(lam) - lam - math.lgamma(k + 1)) for k in range(1, size + 1)]
    return DiscreteDistribution(w, "poisson")


def from_weights(weights) -> DiscreteDistribution:
    return DiscreteDistribution(weights, "from_weights")


class Geometric:
    """Number of Bernoulli(p) trials up to and including the first success."""

    def __init__(self, p: float):
        if not 0 < p <= 1:
            raise InvalidParameterError(f"geometric needs 0 < p <= 1, got {p}")
        self.p = p

    def probability(self, index: int) -> float:
        return 0.0 if index < 1 else (1 - self.p) ** (index - 1) * self.p

    def draw_index(self, rng=None) -> int:
        if self.p == 1:
            return 1
        u = 1.0 - _as_rng(rng).random()
        return max(1, math.ceil(math.log(u) / math.log1p(-self.p)))

    def sample(self, n: int, rng=None) -> list[int]:
        rng = _as_rng(rng)
        return [self.draw_index(rng) for _ in range(n)]
