"""Weighted voting games, law-type quotas and coalition tests.

A weighted voting game ``[q; w1, ..., wn]`` has a quota ``q`` and one
nonnegative integer weight per voter. Coalitions are bit sets over voter
positions: bit ``i`` set means voter ``i`` votes yes.
"""

from __future__ import annotations

import enum
import operator
import re
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence, Union

MAX_VOTERS = 64


class GameError(ValueError):
    """Base class for invalid games and coalitions."""


class QuotaExceedsTotal(GameError):
    pass


class QuotaNonPositive(GameError):
    pass


class EmptyGame(GameError):
    pass


class NegativeWeight(GameError):
    pass


class LabelMismatch(GameError):
    pass


class TooManyVoters(GameError):
    pass


class InvalidMember(GameError):
    pass


class NonPositiveSeats(ValueError):
    pass


class GameParseError(ValueError):
    """A game literal does not match ``q;w1,w2,...``."""


class LawType(enum.Enum):
    """Law categories whose quota is a fraction of the senators in exercise.

    The 3/5 constitutional-reform chapters share the interpretation quota, so
    they are represented by ``CONSTITUTIONAL_INTERPRETATION``.
    """

    CONSTITUTIONAL_REFORM = (2, 3)
    CONSTITUTIONAL_INTERPRETATION = (3, 5)
    CONSTITUTIONAL_ORGANIC = (4, 7)
    QUALIFIED_QUORUM = (1, 2)

    @property
    def numerator(self) -> int:
        return self.value[0]

    @property
    def denominator(self) -> int:
        return self.value[1]

    @property
    def fraction_label(self) -> str:
        return f"{self.numerator}/{self.denominator}"

    @property
    def cli_name(self) -> str:
        return _CLI_NAMES[self]

    @classmethod
    def from_name(cls, name: str) -> "LawType":
        try:
            return _LAW_ALIASES[name.strip().lower()]
        except KeyError:
            raise ValueError(
                f"unknown law type {name!r}; expected one of "
                f"{', '.join(sorted(_LAW_ALIASES))}"
            ) from None


_CLI_NAMES = {
    LawType.CONSTITUTIONAL_REFORM: "reform23",
    LawType.CONSTITUTIONAL_INTERPRETATION: "interpretation",
    LawType.CONSTITUTIONAL_ORGANIC: "organic",
    LawType.QUALIFIED_QUORUM: "qualified",
}

_LAW_ALIASES = {
    "reform23": LawType.CONSTITUTIONAL_REFORM,
    "reform35": LawType.CONSTITUTIONAL_INTERPRETATION,
    "interpretation": LawType.CONSTITUTIONAL_INTERPRETATION,
    "organic": LawType.CONSTITUTIONAL_ORGANIC,
    "qualified": LawType.QUALIFIED_QUORUM,
    "2/3": LawType.CONSTITUTIONAL_REFORM,
    "3/5": LawType.CONSTITUTIONAL_INTERPRETATION,
    "4/7": LawType.CONSTITUTIONAL_ORGANIC,
    "1/2": LawType.QUALIFIED_QUORUM,
}

LAW_TYPES: tuple[LawType, ...] = tuple(LawType)


def quota_for(law: LawType, seats_in_exercise: int) -> int:
    """Votes needed to pass a law of type ``law``: ``floor(f * n) + 1``.

    The ``+ 1`` is applied even when ``f * n`` is an integer, so two thirds
    of 36 seats gives 25.
    """
    seats = operator.index(seats_in_exercise)
    if seats < 1:
        raise NonPositiveSeats(f"seats in exercise must be >= 1, got {seats}")
    return law.numerator * seats // law.denominator + 1


@dataclass(frozen=True)
class Coalition:
    """A set of voter positions stored as an integer bit mask."""

    mask: int = 0

    @classmethod
    def of(cls, members: Iterable[int]) -> "Coalition":
        mask = 0
        for i in members:
            i = operator.index(i)
            if not 0 <= i < MAX_VOTERS:
                raise InvalidMember(f"voter position {i} out of range")
            mask |= 1 << i
        return cls(mask)

    @property
    def members(self) -> tuple[int, ...]:
        return tuple(_bits(self.mask))

    def __iter__(self) -> Iterator[int]:
        return _bits(self.mask)

    def __len__(self) -> int:
        return bin(self.mask).count("1")

    def __contains__(self, i: object) -> bool:
        return isinstance(i, int) and i >= 0 and bool(self.mask >> i & 1)

    def __or__(self, other: "Coalition") -> "Coalition":
        return Coalition(self.mask | other.mask)

    def __sub__(self, other: "Coalition") -> "Coalition":
        return Coalition(self.mask & ~other.mask)

    def issubset(self, other: "Coalition") -> bool:
        return self.mask & ~other.mask == 0

    def __repr__(self) -> str:
        return f"Coalition({set(self.members) or '{}'})"


def _bits(mask: int) -> Iterator[int]:
    i = 0
    while mask:
        if mask & 1:
            yield i
        mask >>= 1
        i += 1


CoalitionLike = Union[Coalition, Iterable[int]]


def as_coalition(c: CoalitionLike) -> Coalition:
    return c if isinstance(c, Coalition) else Coalition.of(c)


@dataclass(frozen=True)
class WeightedVotingGame:
    """An immutable weighted voting game.

    Use :func:`new_game` or :func:`parse_game` rather than the constructor
    directly if the inputs are not already validated; the constructor
    validates too, but does not normalise lists to tuples.
    """

    quota: int
    weights: tuple[int, ...]
    labels: tuple[str, ...] | None = None

    def __post_init__(self) -> None:
        if not self.weights:
            raise EmptyGame("a game needs at least one voter")
        if len(self.weights) > MAX_VOTERS:
            raise TooManyVoters(
                f"{len(self.weights)} voters exceeds the limit of {MAX_VOTERS}"
            )
        for pos, w in enumerate(self.weights):
            if w < 0:
                raise NegativeWeight(f"voter {pos} has negative weight {w}")
        if self.quota < 1:
            raise QuotaNonPositive(f"quota must be >= 1, got {self.quota}")
        if self.quota > self.total_weight:
            raise QuotaExceedsTotal(
                f"quota {self.quota} exceeds total weight {self.total_weight}"
            )
        if self.labels is not None and len(self.labels) != len(self.weights):
            raise LabelMismatch(
                f"{len(self.labels)} labels for {len(self.weights)} voters"
            )

    @property
    def n(self) -> int:
        return len(self.weights)

    @property
    def total_weight(self) -> int:
        return sum(self.weights)

    @property
    def grand_coalition(self) -> Coalition:
        return Coalition((1 << self.n) - 1)

    def label(self, i: int) -> str:
        return self.labels[i] if self.labels is not None else str(i)

    def literal(self) -> str:
        """Text form ``q;w1,w2,...,wn`` (labels are not part of the literal)."""
        return f"{self.quota};{','.join(map(str, self.weights))}"

    def scaled(self, k: int) -> "WeightedVotingGame":
        return WeightedVotingGame(
            self.quota * k, tuple(w * k for w in self.weights), self.labels
        )

    def __str__(self) -> str:
        return f"[{self.quota}; {', '.join(map(str, self.weights))}]"


def new_game(
    quota: int, weights: Sequence[int], labels: Sequence[str] | None = None
) -> WeightedVotingGame:
    """Validate and build a game, keeping weights in the given order."""
    q = operator.index(quota)
    ws = tuple(operator.index(w) for w in weights)
    return WeightedVotingGame(q, ws, tuple(labels) if labels is not None else None)


_LITERAL = re.compile(r"^\s*(-?\d+)\s*;\s*(-?\d+(?:\s*,\s*-?\d+)*)\s*$")


def parse_game(text: str, labels: Sequence[str] | None = None) -> WeightedVotingGame:
    """Parse a ``q;w1,w2,...`` literal.

    Raises :class:`GameParseError` on malformed text and a :class:`GameError`
    subclass if the text parses but violates a game invariant.
    """
    m = _LITERAL.match(text)
    if m is None:
        raise GameParseError(f"cannot parse game literal {text!r}")
    quota = int(m.group(1))
    weights = [int(tok) for tok in m.group(2).split(",")]
    return new_game(quota, weights, labels)


def _check_members(game: WeightedVotingGame, c: Coalition) -> None:
    if c.mask >> game.n:
        raise InvalidMember(
            f"coalition {c} has members outside 0..{game.n - 1}"
        )


def coalition_weight(game: WeightedVotingGame, c: CoalitionLike) -> int:
    c = as_coalition(c)
    _check_members(game, c)
    return sum(game.weights[i] for i in c)


def is_winning(game: WeightedVotingGame, c: CoalitionLike) -> bool:
    return coalition_weight(game, c) >= game.quota
