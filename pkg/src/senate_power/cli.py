"""Command-line interface.

Exit codes: 0 success, 2 usage error, 3 invalid game, 4 dataset failure,
5 a reproduction claim failed, 6 a reproduction claim was indeterminate.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from decimal import ROUND_HALF_EVEN, Decimal
from typing import Sequence

from senate_power.game import LAW_TYPES, GameError, GameParseError, LawType, parse_game, quota_for
from senate_power.indices import IndexKind, power_index, rank_players, render_decimal, render_rational
from senate_power.reproduce import dp_hp_rank_agreement, evaluate_claims, exit_code, report_json, summary_lines
from senate_power.senate import (
    DatasetError,
    Level,
    correlate_parties,
    correlate_quorums,
    load_dataset,
    timeline,
    voter_labels,
)
from senate_power.stats import ALPHA, Method

EXIT_USAGE, EXIT_GAME, EXIT_DATASET = 2, 3, 4


def format_float(x: float, precision: int) -> str:
    if x is None or (isinstance(x, float) and math.isnan(x)):
        return ""
    quantum = Decimal(1).scaleb(-precision)
    return str(Decimal(repr(float(x))).quantize(quantum, rounding=ROUND_HALF_EVEN))


def _law(text: str) -> LawType:
    try:
        return LawType.from_name(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _index_list(text: str) -> list[IndexKind]:
    try:
        return [IndexKind.parse(tok) for tok in text.split(",") if tok.strip()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _positive(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1, got {value}")
    return value


def _nonnegative(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError("precision must be >= 0")
    return value


def _emit_csv(header: Sequence[str], rows: Sequence[Sequence], out) -> None:
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)


def _emit_json(obj, out) -> None:
    out.write(json.dumps(obj, indent=2, ensure_ascii=False))
    out.write("\n")


def _load(args):
    try:
        return load_dataset(
            args.seat_file, args.party_file, args.events_file,
            strict_events=args.strict_events,
        )
    except (DatasetError, OSError) as exc:
        print(f"dataset error: {exc}", file=sys.stderr)
        raise SystemExit(EXIT_DATASET) from None


# -- subcommands -------------------------------------------------------------


def cmd_quota(args, out) -> int:
    print(quota_for(args.law, args.seats), file=out)
    return 0


def cmd_compute(args, out) -> int:
    labels = args.labels.split(",") if args.labels else None
    try:
        game = parse_game(args.game, labels)
    except GameParseError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except GameError as exc:
        print(f"invalid game ({type(exc).__name__}): {exc}", file=sys.stderr)
        return EXIT_GAME
    kinds = [k for group in args.index for k in group] or [IndexKind.SHAPLEY_SHUBIK]
    vectors = [power_index(game, k) for k in dict.fromkeys(kinds)]
    if (args.format or "json") == "csv":
        rows = [
            (pv.index.short, i, game.label(i), render_rational(v), render_decimal(v, args.precision))
            for pv in vectors
            for i, v in enumerate(pv.values)
        ]
        _emit_csv(("index", "voter", "label", "value_rational", "value_decimal"), rows, out)
        return 0
    agreement = [
        {"indices": [a.index.short, b.index.short], "same_ranking": rank_players(a) == rank_players(b)}
        for k, a in enumerate(vectors)
        for b in vectors[k + 1:]
    ]
    _emit_json(
        {
            "game": game.literal(),
            "results": [pv.to_dict(args.precision) for pv in vectors],
            "rank_agreement": agreement,
        },
        out,
    )
    return 0


def cmd_timeline(args, out) -> int:
    ds = _load(args)
    level = Level(args.level)
    series = timeline(ds, args.index, args.law, level)
    rows = [
        (str(r.start), str(r.end), s.label, render_decimal(s.values[t], args.precision),
         render_rational(s.values[t]))
        for t, r in enumerate(ds.records)
        for s in series
    ]
    header = ("subperiod_start", "subperiod_end", "voter_label", "value_decimal", "value_rational")
    if (args.format or "csv") == "json":
        _emit_json([dict(zip(header, row)) for row in rows], out)
    else:
        _emit_csv(header, rows, out)
    return 0


def cmd_correlate(args, out) -> int:
    ds = _load(args)
    level = Level(args.level)
    methods = list(Method) if args.method == "both" else [Method.parse(args.method)]
    pairs = []
    for method in methods:
        if args.between == "parties":
            for law in args.law or LAW_TYPES:
                pairs += [(method, p) for p in correlate_parties(ds, args.index, law, method, args.alpha, level)]
        else:
            voters = args.party or list(voter_labels(ds, level))
            for party in voters:
                try:
                    found = correlate_quorums(ds, args.index, party, method, args.alpha, level)
                except KeyError as exc:
                    print(f"usage error: {exc.args[0]}", file=sys.stderr)
                    return EXIT_USAGE
                pairs += [(method, p) for p in found]
    if not args.include_insignificant:
        pairs = [(m, p) for m, p in pairs if p.result.significant]
    header = ("context", "row", "column", "method", "coefficient", "p_value",
              "significant", "level", "zero_variance")
    rows = [
        (p.context, p.row, p.column, m.value,
         format_float(p.result.coefficient, args.precision),
         format_float(p.result.p_value, args.precision),
         str(p.result.significant).lower(), p.result.level,
         str(p.result.zero_variance).lower())
        for m, p in pairs
    ]
    if (args.format or "csv") == "json":
        _emit_json([dict(zip(header, row)) for row in rows], out)
    else:
        _emit_csv(header, rows, out)
    return 0


def cmd_reproduce(args, out) -> int:
    ds = _load(args)
    claims = evaluate_claims(ds)
    text = report_json(claims)
    if args.report:
        with open(args.report, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    if args.format == "json" and not args.report:
        out.write(text + "\n")
    else:
        for line in summary_lines(claims):
            print(line, file=out)
        agree, total = dp_hp_rank_agreement(ds)
        print(f"Deegan-Packel and Holler-Packel rank voters identically in {agree} of {total} games",
              file=out)
    return exit_code(claims)


# -- parser ----------------------------------------------------------------


def _global_options(parser: argparse.ArgumentParser, default) -> None:
    parser.add_argument("--format", choices=("json", "csv"), default=default,
                        help="output format (default depends on the command)")
    parser.add_argument("--precision", type=_nonnegative,
                        default=6 if default is None else default,
                        help="decimal places in fixed-point output (default 6)")
    parser.add_argument("--strict-events", action="store_true",
                        default=False if default is None else default,
                        help="treat event/seat reconciliation problems as errors")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="senate-power",
        description="Power indices for weighted voting games and the Chilean Senate 1990-2017.",
    )
    _global_options(parser, None)
    # same flags after the subcommand; SUPPRESS keeps them from clobbering
    # values given before it
    common = argparse.ArgumentParser(add_help=False)
    _global_options(common, argparse.SUPPRESS)

    data = argparse.ArgumentParser(add_help=False)
    data.add_argument("--seat-file", help="seat table CSV (default: bundled)")
    data.add_argument("--party-file", help="party metadata CSV (default: bundled)")
    data.add_argument("--events-file", help="change events CSV (default: bundled)")

    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("quota", parents=[common], help="quota for a law type")
    p.add_argument("--seats", type=_positive, required=True, help="senators in exercise")
    p.add_argument("--law", type=_law, required=True,
                   help="reform23, reform35, interpretation, organic or qualified")
    p.set_defaults(func=cmd_quota)

    p = sub.add_parser("compute", parents=[common], help="power indices of one game")
    p.add_argument("--game", required=True, help='game literal such as "20;18,10,10"')
    p.add_argument("--index", type=_index_list, action="append", default=[],
                   help="index names, comma separated or repeated: ss, bz, dp, hp, jo")
    p.add_argument("--labels", help="comma separated voter labels")
    p.set_defaults(func=cmd_compute)

    p = sub.add_parser("timeline", parents=[common, data], help="index values over all subperiods")
    p.add_argument("--index", type=IndexKind.parse, default=IndexKind.SHAPLEY_SHUBIK)
    p.add_argument("--law", type=_law, required=True)
    p.add_argument("--level", choices=[lv.value for lv in Level], default="party")
    p.set_defaults(func=cmd_timeline)

    p = sub.add_parser("correlate", parents=[common, data], help="rank correlations of timelines")
    p.add_argument("--index", type=IndexKind.parse, default=IndexKind.SHAPLEY_SHUBIK)
    p.add_argument("--law", type=_law, action="append",
                   help="law type(s) for --between parties (default: all four)")
    p.add_argument("--level", choices=[lv.value for lv in Level], default="party")
    p.add_argument("--method", choices=("kendall", "spearman", "both"), default="kendall")
    p.add_argument("--alpha", type=float, default=ALPHA)
    p.add_argument("--between", choices=("parties", "quorums"), default="parties")
    p.add_argument("--party", action="append",
                   help="voter label(s) for --between quorums (default: all)")
    p.add_argument("--include-insignificant", action="store_true",
                   help="also list results with p >= alpha (flagged in the significant column)")
    p.set_defaults(func=cmd_correlate)

    p = sub.add_parser("reproduce", parents=[common, data], help="check the published findings")
    p.add_argument("--report", help="write the JSON claim report to this path")
    p.set_defaults(func=cmd_reproduce)
    return parser


def main(argv: Sequence[str] | None = None, out=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args, out or sys.stdout)


def run(argv: Sequence[str]) -> tuple[int, str]:
    """Run the CLI in-process and capture stdout; handy in tests."""
    buf = io.StringIO()
    try:
        code = main(argv, buf)
    except SystemExit as exc:
        code = exc.code if isinstance(exc.code, int) else 1
    return code, buf.getvalue()


if __name__ == "__main__":
    sys.exit(main())
