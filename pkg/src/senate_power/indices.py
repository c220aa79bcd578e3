"""Power indices of weighted voting games in exact rational arithmetic.

Shapley-Shubik and Banzhaf are computed by generating-function dynamic
programming over coalition weights (truncated at the quota). Deegan-Packel,
Holler-Packel and Johnston are computed from the minimal winning and
vulnerable coalition families.

All five indices are normalised so that the values sum to one.
"""

from __future__ import annotations

import enum
import json
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

import numpy as np

from senate_power.coalitions import critical_table, enumerate_minimal_winning
from senate_power.game import WeightedVotingGame


class DegenerateGame(ArithmeticError):
    pass


class IndexKind(enum.Enum):
    SHAPLEY_SHUBIK = "ss"
    BANZHAF = "bz"
    DEEGAN_PACKEL = "dp"
    HOLLER_PACKEL = "hp"
    JOHNSTON = "jo"

    @property
    def short(self) -> str:
        return self.value

    @property
    def title(self) -> str:
        return _TITLES[self]

    @classmethod
    def parse(cls, name) -> "IndexKind":
        if isinstance(name, cls):
            return name
        key = str(name).strip().lower().replace("_", "-")
        try:
            return _INDEX_ALIASES[key]
        except KeyError:
            raise ValueError(
                f"unknown index {name!r}; expected one of ss, bz, dp, hp, jo"
            ) from None


_TITLES = {
    IndexKind.SHAPLEY_SHUBIK: "Shapley-Shubik",
    IndexKind.BANZHAF: "Banzhaf",
    IndexKind.DEEGAN_PACKEL: "Deegan-Packel",
    IndexKind.HOLLER_PACKEL: "Holler-Packel",
    IndexKind.JOHNSTON: "Johnston",
}

_INDEX_ALIASES = {k.value: k for k in IndexKind}
_INDEX_ALIASES.update(
    {
        "shapley-shubik": IndexKind.SHAPLEY_SHUBIK,
        "shapley": IndexKind.SHAPLEY_SHUBIK,
        "banzhaf": IndexKind.BANZHAF,
        "deegan-packel": IndexKind.DEEGAN_PACKEL,
        "holler-packel": IndexKind.HOLLER_PACKEL,
        "pgi": IndexKind.HOLLER_PACKEL,
        "johnston": IndexKind.JOHNSTON,
    }
)


def render_decimal(x: Fraction, precision: int = 6) -> str:
    """Fixed-point string of ``x``, rounded half to even."""
    scaled = round(Fraction(x) * 10**precision)
    sign = "-" if scaled < 0 else ""
    digits = str(abs(scaled)).rjust(precision + 1, "0")
    if precision == 0:
        return sign + digits
    return f"{sign}{digits[:-precision]}.{digits[-precision:]}"


def render_rational(x: Fraction) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


@dataclass(frozen=True)
class PowerVector:
    index: IndexKind
    values: tuple[Fraction, ...]
    game: WeightedVotingGame
    raw: tuple[int, ...] | None = None

    def __len__(self) -> int:
        return len(self.values)

    def __getitem__(self, i: int) -> Fraction:
        return self.values[i]

    def __iter__(self):
        return iter(self.values)

    def decimals(self, precision: int = 6) -> list[str]:
        return [render_decimal(v, precision) for v in self.values]

    def to_dict(self, precision: int = 6) -> dict:
        out = {
            "game": self.game.literal(),
            "index": self.index.short,
            "values": [render_rational(v) for v in self.values],
            "decimals": self.decimals(precision),
        }
        if self.game.labels is not None:
            out["labels"] = list(self.game.labels)
        if self.raw is not None:
            out["raw"] = list(self.raw)
        return out

    def to_json(self, precision: int = 6) -> str:
        return json.dumps(self.to_dict(precision))


@dataclass(frozen=True)
class Ranking:
    """Voter positions grouped by equal power, most powerful group first."""

    groups: tuple[tuple[int, ...], ...]

    def place_of(self, voter: int) -> int:
        for place, group in enumerate(self.groups, start=1):
            if voter in group:
                return place
        raise KeyError(voter)

    def leaders(self) -> tuple[int, ...]:
        return self.groups[0]


def rank_players(pv: PowerVector | Sequence[Fraction]) -> Ranking:
    values = list(pv.values if isinstance(pv, PowerVector) else pv)
    order = sorted(range(len(values)), key=lambda i: (-values[i], i))
    groups: list[list[int]] = []
    for i in order:
        if groups and values[groups[-1][0]] == values[i]:
            groups[-1].append(i)
        else:
            groups.append([i])
    return Ranking(tuple(tuple(g) for g in groups))


# -- generating-function counts ----------------------------------------------


def size_weight_counts(weights: Sequence[int], cap: int) -> list[list[int]]:
    """``counts[s][x]`` = number of size-``s`` subsets with weight ``x < cap``."""
    n = len(weights)
    counts = [[0] * cap for _ in range(n + 1)]
    counts[0][0] = 1
    for k, w in enumerate(weights):
        for s in range(k + 1, 0, -1):
            row, prev = counts[s], counts[s - 1]
            for x in range(cap - 1, w - 1, -1):
                row[x] += prev[x - w]
    return counts


def remove_voter(counts: list[list[int]], w: int) -> list[list[int]]:
    """Invert one multiplication by ``(1 + y z**w)``: drop a voter of weight w."""
    cap = len(counts[0])
    out = [counts[0][:]]
    for s in range(1, len(counts) - 1):
        row = counts[s][:]
        prev = out[s - 1]
        for x in range(w, cap):
            row[x] -= prev[x - w]
        out.append(row)
    return out


def weight_counts(weights: Sequence[int], cap: int) -> list[int]:
    counts = [0] * cap
    counts[0] = 1
    for w in weights:
        if w == 0:
            counts = [2 * c for c in counts]
            continue
        for x in range(cap - 1, w - 1, -1):
            counts[x] += counts[x - w]
    return counts


def _remove_weight(counts: list[int], w: int) -> list[int]:
    out = counts[:]
    for x in range(w, len(out)):
        out[x] -= out[x - w]
    return out


def _swing_sum(counts: Sequence[int], quota: int, w: int) -> int:
    return sum(counts[max(0, quota - w):quota])


def shapley_shubik(game: WeightedVotingGame, method: str = "deconvolve") -> PowerVector:
    """Shapley-Shubik index.

    ``method="deconvolve"`` builds the subset-count table once and removes each
    voter from it; ``method="rebuild"`` recounts the table without each voter
    from scratch (slower, kept as an internal cross-check).
    """
    n, q = game.n, game.quota
    coeff = [
        Fraction(math.factorial(s) * math.factorial(n - 1 - s), math.factorial(n))
        for s in range(n)
    ]
    full = size_weight_counts(game.weights, q) if method == "deconvolve" else None
    if method not in ("deconvolve", "rebuild"):
        raise ValueError(f"unknown method {method!r}")
    values = []
    for i, w in enumerate(game.weights):
        if w == 0:
            values.append(Fraction(0))
            continue
        if full is not None:
            without = remove_voter(full, w)
        else:
            without = size_weight_counts(game.weights[:i] + game.weights[i + 1:], q)
        values.append(
            sum(coeff[s] * _swing_sum(without[s], q, w) for s in range(n))
        )
    return PowerVector(IndexKind.SHAPLEY_SHUBIK, tuple(values), game)


def banzhaf_swings(game: WeightedVotingGame) -> tuple[int, ...]:
    """Raw Banzhaf counts: coalitions without ``i`` that ``i`` turns winning."""
    q = game.quota
    full = weight_counts(game.weights, q)
    zeros = sum(1 for w in game.weights if w == 0)
    # zero-weight voters double every count; strip them so deconvolution is exact
    base = [c >> zeros for c in full]
    swings = []
    for w in game.weights:
        if w == 0:
            swings.append(0)
            continue
        without = _remove_weight(base, w)
        swings.append(_swing_sum(without, q, w) << zeros)
    return tuple(swings)


def banzhaf(game: WeightedVotingGame) -> PowerVector:
    swings = banzhaf_swings(game)
    total = sum(swings)
    if total == 0:
        raise DegenerateGame(f"no voter of {game} is ever a swing")
    return PowerVector(
        IndexKind.BANZHAF,
        tuple(Fraction(s, total) for s in swings),
        game,
        raw=swings,
    )


def _membership_by_size(game: WeightedVotingGame) -> tuple[int, dict[int, list[int]]]:
    """Number of MWCs and, per MWC size, how many MWCs contain each voter."""
    family = enumerate_minimal_winning(game)
    by_size: dict[int, list[int]] = {}
    for c in family:
        counts = by_size.setdefault(len(c), [0] * game.n)
        for i in c:
            counts[i] += 1
    return len(family), by_size


def deegan_packel(game: WeightedVotingGame) -> PowerVector:
    total, by_size = _membership_by_size(game)
    values = [Fraction(0)] * game.n
    for size, counts in by_size.items():
        for i, k in enumerate(counts):
            values[i] += Fraction(k, size * total)
    return PowerVector(IndexKind.DEEGAN_PACKEL, tuple(values), game)


def holler_packel(game: WeightedVotingGame) -> PowerVector:
    _, by_size = _membership_by_size(game)
    members = [sum(counts[i] for counts in by_size.values()) for i in range(game.n)]
    total = sum(members)
    return PowerVector(
        IndexKind.HOLLER_PACKEL,
        tuple(Fraction(m, total) for m in members),
        game,
        raw=tuple(members),
    )


def johnston(game: WeightedVotingGame) -> PowerVector:
    """Each vulnerable coalition splits one unit among its critical members.

    Zero-weight voters are never critical and only replicate every coalition
    ``2**zeros`` times, which normalisation cancels, so they are dropped first.
    """
    positive = [i for i, w in enumerate(game.weights) if w > 0]
    reduced = WeightedVotingGame(game.quota, tuple(game.weights[i] for i in positive))
    crit_mask, crit_count = critical_table(reduced)
    shares = [Fraction(0)] * game.n
    for j, i in enumerate(positive):
        mine = (crit_mask >> j) & 1 == 1
        hist = np.bincount(crit_count[mine])
        shares[i] = sum(
            (Fraction(int(k), c) for c, k in enumerate(hist) if k), Fraction(0)
        )
    total = sum(shares)
    return PowerVector(IndexKind.JOHNSTON, tuple(s / total for s in shares), game)


_COMPUTE = {
    IndexKind.SHAPLEY_SHUBIK: shapley_shubik,
    IndexKind.BANZHAF: banzhaf,
    IndexKind.DEEGAN_PACKEL: deegan_packel,
    IndexKind.HOLLER_PACKEL: holler_packel,
    IndexKind.JOHNSTON: johnston,
}


@lru_cache(maxsize=4096)
def power_index(game: WeightedVotingGame, kind) -> PowerVector:
    """Compute (and memoise) the index named by ``kind`` for ``game``."""
    return _COMPUTE[IndexKind.parse(kind)](game)
