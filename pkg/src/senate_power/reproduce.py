"""Published findings about the 1990-2017 Senate, checked against a dataset.

Each :class:`ReproductionClaim` evaluates to Pass, Fail or Indeterminate.
Indeterminate means the dataset lacks what the claim needs (for example a
missing subperiod), or, for the correlation claims, that the published
statement is only approximately reproducible and was not met.
"""

from __future__ import annotations

import enum
import json
import time
from dataclasses import asdict, dataclass
from fractions import Fraction
from typing import Callable

from senate_power.game import LAW_TYPES, LawType, new_game, quota_for
from senate_power.indices import IndexKind, power_index, rank_players, render_decimal, render_rational
from senate_power.senate import (
    CANONICAL_RECORDS,
    Level,
    SenateDataset,
    all_games,
    coalition_game,
    correlate_parties,
    party_game,
)


class Outcome(str, enum.Enum):
    PASS = "Pass"
    FAIL = "Fail"
    INDETERMINATE = "Indeterminate"


@dataclass
class ReproductionClaim:
    claim_id: str
    description: str
    source: str
    rule: str
    expected: object = None
    actual: object = None
    outcome: Outcome = Outcome.INDETERMINATE
    note: str = ""
    seconds: float = 0.0

    def to_dict(self) -> dict:
        d = asdict(self)
        d["outcome"] = self.outcome.value
        return d


# Coalition-level weights (Concertacion, OutOfPact, Alianza) as printed in the
# published game list, in chronological order.
PRINTED_COALITION_WEIGHTS = (
    (22, 3, 22), (22, 3, 21), (22, 3, 21), (22, 3, 21), (21, 2, 23), (23, 2, 23),
    (23, 2, 23), (23, 2, 22), (24, 2, 22), (24, 2, 22), (24, 2, 23), (24, 2, 23),
    (24, 2, 22), (24, 2, 22), (24, 2, 22), (24, 2, 22), (24, 2, 22), (20, 1, 17),
    (19, 2, 17), (19, 1, 18), (19, 1, 18), (18, 1, 19), (18, 1, 19), (18, 1, 19),
    (18, 1, 19), (20, 1, 17), (20, 1, 17), (20, 2, 16), (20, 3, 15), (21, 3, 14),
    (21, 3, 14), (21, 3, 14), (21, 3, 14), (21, 3, 13), (21, 3, 13), (21, 3, 12),
)

DP_BEFORE, DP_AFTER = "03/14-10/14", "10/14-07/16"
DP_EXPECTED = {
    (DP_BEFORE, "DC"): Fraction("0.184"),
    (DP_BEFORE, "UDI"): Fraction("0.090"),
    (DP_AFTER, "DC"): Fraction("0.156"),
    (DP_AFTER, "UDI"): Fraction("0.065"),
}
THREE_DECIMALS = Fraction(5, 10_000)


def _quota_table(ds: SenateDataset, c: ReproductionClaim) -> None:
    c.actual = [quota_for(law, 38) for law in LAW_TYPES]
    c.outcome = Outcome.PASS if c.actual == c.expected else Outcome.FAIL


def _toy_symmetry(ds: SenateDataset, c: ReproductionClaim) -> None:
    pv = power_index(new_game(20, [18, 10, 10]), IndexKind.SHAPLEY_SHUBIK)
    c.actual = [render_rational(v) for v in pv]
    c.outcome = Outcome.PASS if c.actual == c.expected else Outcome.FAIL


def _needs(ds: SenateDataset, c: ReproductionClaim, *subperiods: str) -> bool:
    missing = [s for s in subperiods if not ds.has_subperiod(s)]
    if missing:
        c.note = f"missing subperiods: {', '.join(missing)}"
        c.outcome = Outcome.INDETERMINATE
    return not missing


def _needs_full(ds: SenateDataset, c: ReproductionClaim) -> bool:
    if len(ds.records) != CANONICAL_RECORDS:
        c.note = f"dataset has {len(ds.records)} of {CANONICAL_RECORDS} subperiods"
        c.outcome = Outcome.INDETERMINATE
        return False
    return True


def dp_matches(ds: SenateDataset, law: LawType) -> tuple[bool, dict]:
    """Whether the published 2014 Deegan-Packel values hold at ``law``."""
    abbrs = ds.abbreviations
    actual, ok = {}, True
    for (sub, party), expected in DP_EXPECTED.items():
        value = power_index(party_game(ds, sub, law), IndexKind.DEEGAN_PACKEL)[abbrs.index(party)]
        rounded = round(value * 1000) / Fraction(1000)
        actual[f"{sub} {party}"] = render_decimal(value, 3)
        ok &= abs(rounded - expected) <= THREE_DECIMALS
    return ok, actual


def _dp_2014(ds: SenateDataset, c: ReproductionClaim) -> None:
    if not _needs(ds, c, DP_BEFORE, DP_AFTER):
        return
    if not {"DC", "UDI"} <= set(ds.abbreviations):
        c.note = "DC or UDI column missing"
        return
    for law in LAW_TYPES:
        ok, actual = dp_matches(ds, law)
        if ok:
            c.actual = {"law": law.cli_name, **actual}
            c.outcome = Outcome.PASS
            return
    c.actual = {"law": None}
    c.outcome = Outcome.FAIL


def _coalition_balance(ds: SenateDataset, c: ReproductionClaim) -> None:
    if not _needs_full(ds, c):
        return
    broken = []
    for r in ds.records:
        pv = power_index(coalition_game(ds, r, LawType.CONSTITUTIONAL_REFORM), IndexKind.SHAPLEY_SHUBIK)
        if pv[0] != pv[2]:
            broken.append(r.label)
    c.actual = {"equal": len(ds.records) - len(broken), "unequal_subperiods": broken}
    c.outcome = Outcome.PASS if not broken else Outcome.FAIL


def _reversal_1994(ds: SenateDataset, c: ReproductionClaim) -> None:
    if not _needs(ds, c, "03/94-03/98"):
        return
    pv = power_index(coalition_game(ds, "03/94-03/98", LawType.QUALIFIED_QUORUM), IndexKind.SHAPLEY_SHUBIK)
    c.actual = [render_rational(v) for v in pv]
    alianza_ahead = pv[2] > pv[0] + pv[1]
    c.outcome = Outcome.PASS if alianza_ahead and c.actual == c.expected else Outcome.FAIL


def _cardinalities(ds: SenateDataset, c: ReproductionClaim) -> None:
    if not _needs_full(ds, c):
        return
    games = all_games(ds)
    vectors = [
        power_index(g.game, kind)
        for g in games
        for kind in (IndexKind.SHAPLEY_SHUBIK, IndexKind.DEEGAN_PACKEL)
    ]
    c.actual = {
        "party": sum(g.level is Level.PARTY for g in games),
        "coalition": sum(g.level is Level.COALITION for g in games),
        "vectors": len(vectors),
    }
    c.outcome = Outcome.PASS if c.actual == c.expected else Outcome.FAIL


def _ordinal_agreement(ds: SenateDataset, c: ReproductionClaim) -> None:
    games = all_games(ds)
    disagree = [
        f"{g.record.label} {g.law.cli_name} {g.level.value}"
        for g in games
        if rank_players(power_index(g.game, "ss")) != rank_players(power_index(g.game, "bz"))
    ]
    c.actual = {"games": len(games), "disagreements": disagree}
    c.outcome = Outcome.PASS if games and not disagree else Outcome.FAIL


def _printed_coalitions(ds: SenateDataset, c: ReproductionClaim) -> None:
    if not _needs_full(ds, c):
        return
    mismatched = [
        r.label
        for r, printed in zip(ds.records, PRINTED_COALITION_WEIGHTS)
        if ds.bloc_weights(r) != printed
    ]
    c.actual = {"mismatched_subperiods": mismatched}
    c.outcome = Outcome.PASS if not mismatched else Outcome.FAIL


def _kendall_claim(pair: tuple[str, str], sign: int) -> Callable:
    def run(ds: SenateDataset, c: ReproductionClaim) -> None:
        if len(ds.records) < 3 or not set(pair) <= set(ds.abbreviations):
            c.note = "not enough data for a correlation"
            return
        per_law = {}
        for law in LAW_TYPES:
            for pc in correlate_parties(ds, IndexKind.SHAPLEY_SHUBIK, law, "kendall"):
                if (pc.row, pc.column) == pair:
                    coef = pc.result.coefficient
                    per_law[law.cli_name] = None if pc.result.zero_variance else round(coef, 6)
        c.actual = per_law
        hit = any(v is not None and sign * v >= 0.6 for v in per_law.values())
        c.outcome = Outcome.PASS if hit else Outcome.INDETERMINATE
        if not hit:
            c.note = "approximate reproduction not met under any law type"
    return run


CLAIMS: tuple[tuple[ReproductionClaim, Callable], ...] = (
    (ReproductionClaim(
        "quota-38", "Quotas for 38 senators, in law order 2/3, 3/5, 4/7, 1/2",
        "worked quota example for a 38-seat chamber", "exact",
        expected=[26, 23, 22, 20]), _quota_table),
    (ReproductionClaim(
        "toy-symmetry", "Shapley-Shubik of [20; 18, 10, 10] is equal for all parties",
        "three-party illustration", "exact rational",
        expected=["1/3", "1/3", "1/3"]), _toy_symmetry),
    (ReproductionClaim(
        "dp-2014-drp-sa", "Party-level Deegan-Packel of DC and UDI before/after Horvath moves from DRP to SA",
        "party-level Deegan-Packel discussion", "abs(round(value, 3) - expected) <= 0.0005, some law type",
        expected={k[0] + " " + k[1]: str(v) for k, v in DP_EXPECTED.items()}), _dp_2014),
    (ReproductionClaim(
        "coalition-balance-2of3", "Coalition-level SS(Concertacion) == SS(Alianza) in every subperiod at 2/3",
        "coalition-level Shapley-Shubik discussion", "exact rational, all 36 subperiods",
        expected={"equal": CANONICAL_RECORDS, "unequal_subperiods": []}), _coalition_balance),
    (ReproductionClaim(
        "reversal-1994-qualified", "At 1/2 in 03/94-03/98 Alianza outweighs Concertacion and Out of pact combined",
        "coalition-level qualified-quorum discussion", "exact rational; SS(Alianza) > SS(Concertacion) + SS(OutOfPact)",
        expected=["1/6", "1/6", "2/3"]), _reversal_1994),
    (ReproductionClaim(
        "cardinalities", "144 party games, 144 coalition games, 576 SS/DP vectors",
        "analysis setup", "exact counts",
        expected={"party": 144, "coalition": 144, "vectors": 576}), _cardinalities),
    (ReproductionClaim(
        "ss-banzhaf-ordinal", "Shapley-Shubik and Banzhaf rank voters identically in every dataset game",
        "remark on ordinal equivalence in weighted games", "exact ranking equality",
        expected={"disagreements": []}), _ordinal_agreement),
    (ReproductionClaim(
        "printed-coalition-weights", "Coalition weights match the published coalition game list",
        "published coalition game list", "exact",
        expected={"mismatched_subperiods": []}), _printed_coalitions),
    (ReproductionClaim(
        "kendall-drp-amp", "Kendall tau of SS series for DRP and Amplitud is >= 0.6",
        "party-level correlation findings", "tau >= 0.6 under at least one law type (Pass/Indeterminate)",
        expected=">= 0.6"), _kendall_claim(("DRP", "AMP"), +1)),
    (ReproductionClaim(
        "kendall-ps-dc", "Kendall tau of SS series for PS and DC is <= -0.6",
        "party-level correlation findings", "tau <= -0.6 under at least one law type (Pass/Indeterminate)",
        expected="<= -0.6"), _kendall_claim(("PS", "DC"), -1)),
)


def evaluate_claims(ds: SenateDataset) -> list[ReproductionClaim]:
    results = []
    for template, run in CLAIMS:
        claim = ReproductionClaim(**{**asdict(template), "outcome": Outcome.INDETERMINATE})
        t0 = time.perf_counter()
        try:
            run(ds, claim)
        except Exception as exc:  # noqa: BLE001 - any failure makes the claim undecidable
            claim.outcome = Outcome.INDETERMINATE
            claim.note = f"{type(exc).__name__}: {exc}"
        claim.seconds = round(time.perf_counter() - t0, 6)
        results.append(claim)
    return results


def exit_code(claims: list[ReproductionClaim]) -> int:
    outcomes = {c.outcome for c in claims}
    if Outcome.FAIL in outcomes:
        return 5
    if Outcome.INDETERMINATE in outcomes:
        return 6
    return 0


def report_json(claims: list[ReproductionClaim]) -> str:
    return json.dumps([c.to_dict() for c in claims], indent=2, ensure_ascii=False)


def summary_lines(claims: list[ReproductionClaim]) -> list[str]:
    lines = []
    for c in claims:
        extra = f"  ({c.note})" if c.note else ""
        lines.append(f"[{c.outcome.value:>13}] {c.claim_id}: {c.description}{extra}")
    counts = {o: sum(c.outcome is o for c in claims) for o in Outcome}
    lines.append(
        f"{counts[Outcome.PASS]} passed, {counts[Outcome.FAIL]} failed, "
        f"{counts[Outcome.INDETERMINATE]} indeterminate"
    )
    return lines


def dp_hp_rank_agreement(ds: SenateDataset) -> tuple[int, int]:
    """How many dataset games rank voters identically under DP and HP."""
    games = all_games(ds)
    agree = sum(
        rank_players(power_index(g.game, "dp")) == rank_players(power_index(g.game, "hp"))
        for g in games
    )
    return agree, len(games)
