"""Rank correlations (Spearman rho, Kendall tau-b) with significance levels.

Coefficients are computed here; the t and normal tail probabilities come
from :mod:`scipy.stats`. An exact permutation p-value is available for short
series.
"""

from __future__ import annotations

import enum
import itertools
import math
from dataclasses import dataclass, field
from typing import Sequence

from scipy import stats as sps

ALPHA = 0.05
EXACT_P_CAP = 10


class LengthMismatch(ValueError):
    pass


class SeriesTooShort(ValueError):
    pass


class OutOfRange(ValueError):
    pass


class Method(enum.Enum):
    SPEARMAN = "spearman"
    KENDALL = "kendall"

    @classmethod
    def parse(cls, name) -> "Method":
        if isinstance(name, cls):
            return name
        return cls(str(name).strip().lower())


@dataclass(frozen=True)
class Series:
    label: str
    values: tuple = field(default_factory=tuple)

    def __post_init__(self) -> None:
        object.__setattr__(self, "values", tuple(self.values))

    def __len__(self) -> int:
        return len(self.values)

    def is_constant(self) -> bool:
        return len(set(self.values)) <= 1


@dataclass(frozen=True)
class CorrelationResult:
    """Outcome of one correlation test.

    When either series is constant the coefficient is undefined: it is stored
    as NaN, ``p_value`` as 1.0, ``level`` as ``"undefined"`` and
    ``zero_variance`` is set.
    """

    method: Method
    coefficient: float
    p_value: float
    significant: bool
    level: str
    n: int
    zero_variance: bool = False

    @property
    def defined(self) -> bool:
        return not self.zero_variance


LEVELS = (
    "very high inverse",
    "high inverse",
    "moderate inverse",
    "low and very low",
    "moderate",
    "high",
    "very high",
)


def classify_correlation(coefficient: float) -> str:
    """Correlation level bracket.

    Brackets are closed on the side nearer zero for negative values and on
    the lower side for positive values; the centre bracket is open on both
    ends: [-1,-0.8], (-0.8,-0.6], (-0.6,-0.4], (-0.4,0.4), [0.4,0.6),
    [0.6,0.8), [0.8,1].
    """
    c = float(coefficient)
    if not -1.0 <= c <= 1.0:
        raise OutOfRange(f"coefficient {coefficient} outside [-1, 1]")
    if c <= -0.8:
        return LEVELS[0]
    if c <= -0.6:
        return LEVELS[1]
    if c <= -0.4:
        return LEVELS[2]
    if c < 0.4:
        return LEVELS[3]
    if c < 0.6:
        return LEVELS[4]
    if c < 0.8:
        return LEVELS[5]
    return LEVELS[6]


def rank_with_ties(values: Sequence) -> list[float]:
    """1-based ranks, tied values sharing the mean of their positions."""
    order = sorted(range(len(values)), key=lambda i: values[i])
    ranks = [0.0] * len(values)
    start = 0
    while start < len(order):
        stop = start
        while stop + 1 < len(order) and values[order[stop + 1]] == values[order[start]]:
            stop += 1
        mid = (start + stop) / 2 + 1
        for k in range(start, stop + 1):
            ranks[order[k]] = mid
        start = stop + 1
    return ranks


def _values(s) -> tuple:
    return s.values if isinstance(s, Series) else tuple(s)


def _check(x, y) -> tuple[tuple, tuple]:
    xs, ys = _values(x), _values(y)
    if len(xs) != len(ys):
        raise LengthMismatch(f"series lengths differ: {len(xs)} vs {len(ys)}")
    if len(xs) < 3:
        raise SeriesTooShort(f"need at least 3 observations, got {len(xs)}")
    return xs, ys


def _pearson(a: Sequence[float], b: Sequence[float]) -> float:
    n = len(a)
    ma, mb = math.fsum(a) / n, math.fsum(b) / n
    da = [v - ma for v in a]
    db = [v - mb for v in b]
    num = math.fsum(p * q for p, q in zip(da, db))
    den = math.sqrt(math.fsum(p * p for p in da) * math.fsum(q * q for q in db))
    return max(-1.0, min(1.0, num / den))


def spearman_rho(x, y) -> float:
    xs, ys = _check(x, y)
    return _pearson(rank_with_ties(xs), rank_with_ties(ys))


def _sign(v) -> int:
    return (v > 0) - (v < 0)


def _kendall_parts(xs, ys):
    # S depends only on order; mid-ranks avoid slow Fraction arithmetic
    xs, ys = rank_with_ties(xs), rank_with_ties(ys)
    n = len(xs)
    s = 0
    for i in range(n):
        for j in range(i + 1, n):
            s += _sign(xs[i] - xs[j]) * _sign(ys[i] - ys[j])
    return s


def _tie_sizes(values) -> list[int]:
    counts: dict = {}
    for v in values:
        counts[v] = counts.get(v, 0) + 1
    return [t for t in counts.values() if t > 1]


def kendall_tau(x, y) -> float:
    """Kendall tau-b: (C - D) / sqrt((n0 - n1) (n0 - n2))."""
    xs, ys = _check(x, y)
    n = len(xs)
    n0 = n * (n - 1) // 2
    n1 = sum(t * (t - 1) // 2 for t in _tie_sizes(xs))
    n2 = sum(u * (u - 1) // 2 for u in _tie_sizes(ys))
    tau = _kendall_parts(xs, ys) / math.sqrt((n0 - n1) * (n0 - n2))
    return max(-1.0, min(1.0, tau))


def _spearman_p(rho: float, n: int) -> float:
    if abs(rho) >= 1.0:
        return 0.0
    t = rho * math.sqrt((n - 2) / (1.0 - rho * rho))
    return float(min(1.0, 2.0 * sps.t.sf(abs(t), n - 2)))


def _kendall_p(xs, ys) -> float:
    """Two-sided normal approximation with the tie-corrected variance of C - D."""
    n = len(xs)
    tx, ty = _tie_sizes(xs), _tie_sizes(ys)
    v0 = n * (n - 1) * (2 * n + 5)
    vt = sum(t * (t - 1) * (2 * t + 5) for t in tx)
    vu = sum(u * (u - 1) * (2 * u + 5) for u in ty)
    v1 = sum(t * (t - 1) for t in tx) * sum(u * (u - 1) for u in ty) / (2 * n * (n - 1))
    v2 = (
        sum(t * (t - 1) * (t - 2) for t in tx)
        * sum(u * (u - 1) * (u - 2) for u in ty)
        / (9 * n * (n - 1) * (n - 2))
    )
    var = (v0 - vt - vu) / 18 + v1 + v2
    z = _kendall_parts(xs, ys) / math.sqrt(var)
    return float(min(1.0, 2.0 * sps.norm.sf(abs(z))))


def exact_p_value(x, y, method) -> float:
    """Two-sided permutation p-value: share of orderings of ``y`` whose
    |coefficient| reaches the observed one. Only for n <= EXACT_P_CAP."""
    method = Method.parse(method)
    xs, ys = _check(x, y)
    if len(xs) > EXACT_P_CAP:
        raise ValueError(f"exact p-value limited to n <= {EXACT_P_CAP}")
    stat = spearman_rho if method is Method.SPEARMAN else kendall_tau
    observed = abs(stat(xs, ys)) - 1e-12
    hits = total = 0
    for perm in itertools.permutations(ys):
        total += 1
        if abs(stat(xs, perm)) >= observed:
            hits += 1
    return hits / total


def _result(method: Method, xs, ys, alpha: float, exact: bool) -> CorrelationResult:
    n = len(xs)
    if len(set(xs)) <= 1 or len(set(ys)) <= 1:
        return CorrelationResult(method, math.nan, 1.0, False, "undefined", n, True)
    if method is Method.SPEARMAN:
        coef = spearman_rho(xs, ys)
        p = _spearman_p(coef, n)
    else:
        coef = kendall_tau(xs, ys)
        p = _kendall_p(xs, ys)
    if exact:
        p = exact_p_value(xs, ys, method)
    return CorrelationResult(method, coef, p, p < alpha, classify_correlation(coef), n)


def spearman(x, y, alpha: float = ALPHA, exact: bool = False) -> CorrelationResult:
    xs, ys = _check(x, y)
    return _result(Method.SPEARMAN, xs, ys, alpha, exact)


def kendall(x, y, alpha: float = ALPHA, exact: bool = False) -> CorrelationResult:
    xs, ys = _check(x, y)
    return _result(Method.KENDALL, xs, ys, alpha, exact)


def correlate(x, y, method, alpha: float = ALPHA, exact: bool = False) -> CorrelationResult:
    method = Method.parse(method)
    fn = spearman if method is Method.SPEARMAN else kendall
    return fn(x, y, alpha=alpha, exact=exact)
