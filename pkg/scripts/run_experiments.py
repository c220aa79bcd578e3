#!/usr/bin/env python3
"""Compute every timeline and correlation table and write them to a directory.

    python scripts/run_experiments.py --out results/ [--indices ss,dp] [--alpha 0.05]

Outputs: timeline_<index>_<law>_<level>.csv, correlations_<index>_<level>.csv,
quorums_<index>_<level>.csv and reproduction.json.
"""

from __future__ import annotations

import argparse
import csv
import dataclasses
import json
import sys
from dataclasses import dataclass
from pathlib import Path

from senate_power.game import LAW_TYPES
from senate_power.indices import IndexKind, render_decimal, render_rational
from senate_power.reproduce import evaluate_claims, exit_code, report_json
from senate_power.senate import (
    Level,
    correlate_parties,
    correlate_quorums,
    load_dataset,
    timeline,
    voter_labels,
)
from senate_power.stats import ALPHA, Method


@dataclass
class ExperimentConfig:
    out: Path = Path("results")
    indices: tuple[str, ...] = ("ss", "bz", "dp", "hp", "jo")
    levels: tuple[str, ...] = ("party", "coalition")
    methods: tuple[str, ...] = ("kendall", "spearman")
    alpha: float = ALPHA
    precision: int = 6
    seat_file: str | None = None
    party_file: str | None = None
    events_file: str | None = None


def _write(path: Path, header, rows) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(header)
        w.writerows(rows)


def _corr_row(method, p, precision):
    r = p.result
    fmt = (lambda x: "" if x != x else f"{x:.{precision}f}")
    return (p.context, p.row, p.column, method.value, fmt(r.coefficient), fmt(r.p_value),
            str(r.significant).lower(), r.level, str(r.zero_variance).lower())


CORR_HEADER = ("context", "row", "column", "method", "coefficient", "p_value",
               "significant", "level", "zero_variance")


def run(cfg: ExperimentConfig) -> int:
    ds = load_dataset(cfg.seat_file, cfg.party_file, cfg.events_file)
    cfg.out.mkdir(parents=True, exist_ok=True)
    methods = [Method.parse(m) for m in cfg.methods]
    for kind in map(IndexKind.parse, cfg.indices):
        for level in map(Level, cfg.levels):
            for law in LAW_TYPES:
                rows = [
                    (r.start, r.end, s.label, render_decimal(s.values[t], cfg.precision),
                     render_rational(s.values[t]))
                    for t, r in enumerate(ds.records)
                    for s in timeline(ds, kind, law, level)
                ]
                _write(cfg.out / f"timeline_{kind.short}_{law.cli_name}_{level.value}.csv",
                       ("subperiod_start", "subperiod_end", "voter_label", "value_decimal",
                        "value_rational"), rows)
            pairs = [
                _corr_row(m, p, cfg.precision)
                for m in methods
                for law in LAW_TYPES
                for p in correlate_parties(ds, kind, law, m, cfg.alpha, level)
            ]
            _write(cfg.out / f"correlations_{kind.short}_{level.value}.csv", CORR_HEADER, pairs)
            quorums = [
                _corr_row(m, p, cfg.precision)
                for m in methods
                for voter in voter_labels(ds, level)
                for p in correlate_quorums(ds, kind, voter, m, cfg.alpha, level)
            ]
            _write(cfg.out / f"quorums_{kind.short}_{level.value}.csv", CORR_HEADER, quorums)
    claims = evaluate_claims(ds)
    (cfg.out / "reproduction.json").write_text(report_json(claims) + "\n", encoding="utf-8")
    (cfg.out / "config.json").write_text(
        json.dumps(dataclasses.asdict(cfg), default=str, indent=2) + "\n", encoding="utf-8"
    )
    print(f"wrote results to {cfg.out}")
    return exit_code(claims)


def parse_args(argv=None) -> ExperimentConfig:
    cfg = ExperimentConfig()
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--out", type=Path, default=cfg.out)
    p.add_argument("--indices", default=",".join(cfg.indices))
    p.add_argument("--levels", default=",".join(cfg.levels))
    p.add_argument("--methods", default=",".join(cfg.methods))
    p.add_argument("--alpha", type=float, default=cfg.alpha)
    p.add_argument("--precision", type=int, default=cfg.precision)
    p.add_argument("--seat-file")
    p.add_argument("--party-file")
    p.add_argument("--events-file")
    a = p.parse_args(argv)
    split = lambda s: tuple(t for t in s.split(",") if t)  # noqa: E731
    return ExperimentConfig(
        out=a.out, indices=split(a.indices), levels=split(a.levels), methods=split(a.methods),
        alpha=a.alpha, precision=a.precision, seat_file=a.seat_file,
        party_file=a.party_file, events_file=a.events_file,
    )


if __name__ == "__main__":
    sys.exit(run(parse_args()))
