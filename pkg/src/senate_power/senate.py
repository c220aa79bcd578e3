"""Senate seat tables and the weighted voting games built from them.

The bundled files cover the Chilean Senate from March 1990 to December 2017
in 36 subperiods. Any chamber described with the same three-file schema can
be loaded with :func:`load_dataset`.

Seat file
    ``start,end,period,<one column per party>,total``; dates ``YYYY-MM``.
Party file
    ``abbr,name,coalition,spectrum_order``.
Events file
    ``start,reason,deltas`` with deltas like ``PS:+3;PPD:-3``.
"""

from __future__ import annotations

import csv
import enum
import itertools
import re
import warnings
from dataclasses import dataclass
from importlib import resources
from pathlib import Path
from typing import Iterable, NamedTuple

from senate_power.game import LAW_TYPES, LawType, WeightedVotingGame, quota_for
from senate_power.indices import IndexKind, power_index
from senate_power.stats import ALPHA, CorrelationResult, Method, Series, correlate

CANONICAL_COLUMNS = (
    "MAS", "PS", "PRSD", "PPD", "IND_CL", "DC", "IND_C", "DRP",
    "SA", "AMP", "CH1", "PRI", "UCC", "IND_R", "RN", "UDI",
)
CANONICAL_TOTALS = frozenset({36, 37, 38, 46, 47, 48, 49})
CANONICAL_RECORDS = 36


class DatasetError(ValueError):
    pass


class ParseError(DatasetError):
    def __init__(self, path, line: int, column: int | str, message: str):
        self.path, self.line, self.column = path, line, column
        super().__init__(f"{path}:{line}: column {column}: {message}")


class TotalMismatch(DatasetError):
    pass


class EventMismatch(DatasetError):
    pass


class ChronologyError(DatasetError):
    pass


class ShapeError(DatasetError):
    """The dataset is valid but does not have the shape of the bundled one."""


class UnknownSubperiod(KeyError):
    pass


class DatasetWarning(UserWarning):
    pass


class Bloc(enum.Enum):
    CONCERTACION = "Concertacion"
    OUT_OF_PACT = "OutOfPact"
    ALIANZA = "Alianza"


BLOCS: tuple[Bloc, ...] = tuple(Bloc)


class Level(enum.Enum):
    PARTY = "party"
    COALITION = "coalition"


@dataclass(frozen=True)
class PartyColumn:
    abbreviation: str
    display_name: str
    coalition: Bloc
    spectrum_position: int


@dataclass(frozen=True, order=True)
class YearMonth:
    year: int
    month: int

    @classmethod
    def parse(cls, text: str) -> "YearMonth":
        m = re.fullmatch(r"(\d{4})-(\d{2})", text.strip())
        if m is None or not 1 <= int(m.group(2)) <= 12:
            raise ValueError(f"bad YYYY-MM date {text!r}")
        return cls(int(m.group(1)), int(m.group(2)))

    def __str__(self) -> str:
        return f"{self.year:04d}-{self.month:02d}"

    def short(self) -> str:
        return f"{self.month:02d}/{self.year % 100:02d}"


@dataclass(frozen=True)
class SubperiodRecord:
    start: YearMonth
    end: YearMonth
    legislative_period: int
    seats: tuple[int, ...]
    total: int

    @property
    def label(self) -> str:
        """Table-style label such as ``03/90-11/90``."""
        return f"{self.start.short()}-{self.end.short()}"


@dataclass(frozen=True)
class ChangeEvent:
    start: YearMonth
    reason: str
    deltas: tuple[tuple[str, int], ...]

    def delta_map(self) -> dict[str, int]:
        return dict(self.deltas)


@dataclass(frozen=True)
class SenateDataset:
    columns: tuple[PartyColumn, ...]
    records: tuple[SubperiodRecord, ...]
    events: tuple[ChangeEvent, ...] = ()

    @property
    def abbreviations(self) -> tuple[str, ...]:
        return tuple(c.abbreviation for c in self.columns)

    def record(self, subperiod) -> SubperiodRecord:
        """Look up a record by label (``03/14-10/14``), start date or position."""
        if isinstance(subperiod, SubperiodRecord):
            if subperiod in self.records:
                return subperiod
        elif isinstance(subperiod, int):
            if 0 <= subperiod < len(self.records):
                return self.records[subperiod]
        else:
            key = str(subperiod).strip()
            for r in self.records:
                if key in (r.label, str(r.start)):
                    return r
        raise UnknownSubperiod(subperiod)

    def has_subperiod(self, subperiod) -> bool:
        try:
            self.record(subperiod)
        except UnknownSubperiod:
            return False
        return True

    def bloc_weights(self, record: SubperiodRecord) -> tuple[int, ...]:
        sums = dict.fromkeys(BLOCS, 0)
        for col, seats in zip(self.columns, record.seats):
            sums[col.coalition] += seats
        return tuple(sums[b] for b in BLOCS)

    def restrict(self, subperiods: Iterable) -> "SenateDataset":
        keep = [self.record(s) for s in subperiods]
        return SenateDataset(self.columns, tuple(keep), self.events)


# -- loading ---------------------------------------------------------------


def _bundled(name: str) -> Path:
    return Path(str(resources.files("senate_power") / "data" / name))


def bundled_paths() -> tuple[Path, Path, Path]:
    return _bundled("seats.csv"), _bundled("parties.csv"), _bundled("events.csv")


def _read_rows(path) -> tuple[list[str], list[tuple[int, list[str]]]]:
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise ParseError(path, 1, 1, "empty file") from None
        rows = [(reader.line_num, row) for row in reader if row]
    return [h.strip() for h in header], rows


def _int(path, line, col, text, minimum=None) -> int:
    try:
        value = int(text.strip())
    except ValueError:
        raise ParseError(path, line, col, f"expected an integer, got {text!r}") from None
    if minimum is not None and value < minimum:
        raise ParseError(path, line, col, f"value {value} below {minimum}")
    return value


def _date(path, line, col, text) -> YearMonth:
    try:
        return YearMonth.parse(text)
    except ValueError as exc:
        raise ParseError(path, line, col, str(exc)) from None


def load_parties(path) -> tuple[PartyColumn, ...]:
    header, rows = _read_rows(path)
    if header != ["abbr", "name", "coalition", "spectrum_order"]:
        raise ParseError(path, 1, 1, f"unexpected header {header}")
    parties = []
    for line, row in rows:
        if len(row) != 4:
            raise ParseError(path, line, len(row), "expected 4 fields")
        try:
            bloc = Bloc(row[2].strip())
        except ValueError:
            raise ParseError(path, line, 3, f"unknown coalition {row[2]!r}") from None
        parties.append(
            PartyColumn(row[0].strip(), row[1].strip(), bloc, _int(path, line, 4, row[3]))
        )
    return tuple(sorted(parties, key=lambda p: p.spectrum_position))


def load_seats(path, abbreviations: tuple[str, ...]) -> tuple[SubperiodRecord, ...]:
    header, rows = _read_rows(path)
    expected = ["start", "end", "period", *abbreviations, "total"]
    if header != expected:
        raise ParseError(
            path, 1, 1, f"header {','.join(header)} does not match {','.join(expected)}"
        )
    records = []
    width = len(expected)
    for line, row in rows:
        if len(row) != width:
            raise ParseError(path, line, len(row), f"expected {width} fields")
        start = _date(path, line, 1, row[0])
        end = _date(path, line, 2, row[1])
        period = _int(path, line, 3, row[2], minimum=1)
        seats = tuple(_int(path, line, 4 + k, v, minimum=0) for k, v in enumerate(row[3:-1]))
        total = _int(path, line, width, row[-1], minimum=0)
        if sum(seats) != total:
            raise TotalMismatch(
                f"{path}:{line}: seats sum to {sum(seats)} but total is {total}"
            )
        records.append(SubperiodRecord(start, end, period, seats, total))
    for r in records:
        if not r.start < r.end:
            raise ChronologyError(f"record {r.label} ends before it starts")
    for prev, cur in itertools.pairwise(records):
        if cur.start < prev.end:
            raise ChronologyError(f"record {cur.label} overlaps {prev.label}")
    return tuple(records)


_DELTA = re.compile(r"^\s*([A-Za-z0-9_]+)\s*:\s*([+-]\d+)\s*$")


def load_events(path, abbreviations: tuple[str, ...]) -> tuple[ChangeEvent, ...]:
    header, rows = _read_rows(path)
    if header != ["start", "reason", "deltas"]:
        raise ParseError(path, 1, 1, f"unexpected header {header}")
    events = []
    for line, row in rows:
        if len(row) != 3:
            raise ParseError(path, line, len(row), "expected 3 fields")
        deltas = []
        for tok in filter(None, (t.strip() for t in row[2].split(";"))):
            m = _DELTA.match(tok)
            if m is None or m.group(1) not in abbreviations:
                raise ParseError(path, line, 3, f"bad delta token {tok!r}")
            deltas.append((m.group(1), int(m.group(2))))
        events.append(ChangeEvent(_date(path, line, 1, row[0]), row[1].strip(), tuple(deltas)))
    return tuple(events)


def _complain(strict: bool, exc: DatasetError) -> None:
    if strict:
        raise exc
    warnings.warn(str(exc), DatasetWarning, stacklevel=3)


def reconcile_events(dataset: SenateDataset, strict: bool = False) -> list[str]:
    """Check each event's deltas against the seat change it annotates.

    Returns the list of problems found (empty when everything reconciles).
    """
    problems = []
    index = {r.start: k for k, r in enumerate(dataset.records)}
    abbrs = dataset.abbreviations
    for ev in dataset.events:
        k = index.get(ev.start)
        if k is None:
            problems.append(f"event at {ev.start} matches no subperiod")
            continue
        before = dataset.records[k - 1].seats if k > 0 else (0,) * len(abbrs)
        if k == 0 and not ev.deltas:
            continue
        expected = list(before)
        for abbr, d in ev.deltas:
            expected[abbrs.index(abbr)] += d
        if tuple(expected) != dataset.records[k].seats:
            problems.append(
                f"event at {ev.start} does not reconcile the seats of "
                f"{dataset.records[k].label}"
            )
    for p in problems:
        _complain(strict, EventMismatch(p))
    return problems


def check_canonical_shape(dataset: SenateDataset, strict: bool = False) -> list[str]:
    """Invariants of the bundled 1990-2017 table, as warnings unless strict."""
    problems = []
    if dataset.abbreviations != CANONICAL_COLUMNS:
        problems.append("party columns differ from the canonical 16")
    if len(dataset.records) != CANONICAL_RECORDS:
        problems.append(f"{len(dataset.records)} records instead of {CANONICAL_RECORDS}")
    for r in dataset.records:
        if r.total not in CANONICAL_TOTALS:
            problems.append(f"{r.label}: total {r.total} outside the observed range")
    for prev, cur in zip(dataset.records, dataset.records[1:]):
        if prev.seats == cur.seats:
            problems.append(f"{cur.label} repeats the seats of {prev.label}")
    if dataset.records and (
        dataset.records[0].start != YearMonth(1990, 3)
        or dataset.records[-1].end != YearMonth(2017, 12)
    ):
        problems.append("records do not span 1990-03 to 2017-12")
    for p in problems:
        _complain(strict, ShapeError(p))
    return problems


def load_dataset(
    seat_file=None,
    metadata_file=None,
    events_file=None,
    strict_events: bool = False,
    strict_shape: bool = False,
) -> SenateDataset:
    """Load and validate a dataset; the bundled files are used for any path
    left as ``None``.

    Parse, total and chronology problems always raise. Event reconciliation
    and canonical-shape problems warn unless the matching strict flag is set.
    """
    default_seats, default_parties, default_events = bundled_paths()
    columns = load_parties(metadata_file or default_parties)
    abbrs = tuple(c.abbreviation for c in columns)
    records = load_seats(seat_file or default_seats, abbrs)
    events = load_events(events_file or default_events, abbrs)
    dataset = SenateDataset(columns, records, events)
    reconcile_events(dataset, strict=strict_events)
    check_canonical_shape(dataset, strict=strict_shape)
    return dataset


# -- games -----------------------------------------------------------------


def party_game(dataset: SenateDataset, subperiod, law: LawType) -> WeightedVotingGame:
    r = dataset.record(subperiod)
    return WeightedVotingGame(quota_for(law, r.total), r.seats, dataset.abbreviations)


def coalition_game(dataset: SenateDataset, subperiod, law: LawType) -> WeightedVotingGame:
    r = dataset.record(subperiod)
    return WeightedVotingGame(
        quota_for(law, r.total),
        dataset.bloc_weights(r),
        tuple(b.value for b in BLOCS),
    )


def build_game(dataset: SenateDataset, subperiod, law: LawType, level: Level) -> WeightedVotingGame:
    if Level(level) is Level.PARTY:
        return party_game(dataset, subperiod, law)
    return coalition_game(dataset, subperiod, law)


class GameInstance(NamedTuple):
    record: SubperiodRecord
    law: LawType
    level: Level
    game: WeightedVotingGame


def all_games(dataset: SenateDataset, levels: Iterable[Level] = tuple(Level)) -> list[GameInstance]:
    levels = [Level(lv) for lv in levels]
    return [
        GameInstance(r, law, lv, build_game(dataset, r, law, lv))
        for lv in levels
        for r in dataset.records
        for law in LAW_TYPES
    ]


def voter_labels(dataset: SenateDataset, level: Level) -> tuple[str, ...]:
    if Level(level) is Level.PARTY:
        return dataset.abbreviations
    return tuple(b.value for b in BLOCS)


def timeline(dataset: SenateDataset, index_kind, law: LawType, level: Level) -> list[Series]:
    """One chronological series of exact index values per voter."""
    kind = IndexKind.parse(index_kind)
    columns = [[] for _ in voter_labels(dataset, level)]
    for r in dataset.records:
        pv = power_index(build_game(dataset, r, law, level), kind)
        for col, v in zip(columns, pv.values):
            col.append(v)
    return [Series(lab, tuple(vals)) for lab, vals in zip(voter_labels(dataset, level), columns)]


class PairCorrelation(NamedTuple):
    context: str
    row: str
    column: str
    result: CorrelationResult


def correlate_parties(
    dataset: SenateDataset,
    index_kind,
    law: LawType,
    method=Method.KENDALL,
    alpha: float = ALPHA,
    level: Level = Level.PARTY,
) -> list[PairCorrelation]:
    series = timeline(dataset, index_kind, law, level)
    return [
        PairCorrelation(law.cli_name, a.label, b.label, correlate(a, b, method, alpha))
        for a, b in itertools.combinations(series, 2)
    ]


def correlate_quorums(
    dataset: SenateDataset,
    index_kind,
    party: str,
    method=Method.KENDALL,
    alpha: float = ALPHA,
    level: Level = Level.PARTY,
) -> list[PairCorrelation]:
    labels = voter_labels(dataset, level)
    if party not in labels:
        raise KeyError(f"unknown voter {party!r}; expected one of {', '.join(labels)}")
    pos = labels.index(party)
    by_law = {law: timeline(dataset, index_kind, law, level)[pos] for law in LAW_TYPES}
    return [
        PairCorrelation(party, a.fraction_label, b.fraction_label,
                        correlate(by_law[a], by_law[b], method, alpha))
        for a, b in itertools.combinations(LAW_TYPES, 2)
    ]

