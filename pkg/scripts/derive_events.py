#!/usr/bin/env python3
"""Regenerate the bundled events.csv from seats.csv plus hand-written reasons.

Deltas are the column differences between consecutive subperiods, so the
output reconciles by construction; rerun after editing seats.csv.

    python scripts/derive_events.py [--check]
"""

import argparse
import csv
import io
import sys
from pathlib import Path

DATA = Path(__file__).resolve().parents[1] / "src" / "senate_power" / "data"

REASONS = {
    "1990-03": "First legislative period begins",
    "1990-11": "Death of designated senator C. Ruiz Danyau (Ind. right); N. Nunez, J. Gazmuri and H. Vodanovic move from PPD back to PS",
    "1991-04": "E. Frei (DC) resigns for his presidential run; M. E. Carrera (PS) takes the seat",
    "1993-05": "Death of J. Guzman (UDI); M. Otero (RN) takes the seat",
    "1994-03": "New legislative period",
    "1998-03": "New legislative period",
    "1998-06": "F. Prat leaves RN and sits as Ind. right",
    "1998-08": "F. J. Errazuriz (UCC) removed over legal proceedings",
    "2000-03": "Former president E. Frei (DC) takes a life seat",
    "2000-12": "F. Prat (Ind. right) joins UDI",
    "2002-01": "F. J. Errazuriz (UCC) recovers parliamentary immunity",
    "2002-03": "New legislative period",
    "2002-07": "A. Pinochet (Ind. right) gives up his life seat",
    "2002-12": "N. Avila leaves PPD and sits as Ind. center-left",
    "2003-03": "A. Horvath (Ind. right) joins RN",
    "2005-03": "N. Avila (Ind. center-left) joins PRSD",
    "2005-06": "J. Lavandero (DC) removed pending investigation; G. Vasquez (PRSD) takes the seat",
    "2006-03": "New legislative period; designated and life seats end",
    "2006-11": "F. Flores leaves PPD and sits as Ind. center",
    "2007-05": "F. Flores (Ind. center) founds CH1",
    "2007-11": "C. Cantero leaves RN and sits as Ind. right",
    "2007-12": "A. Zaldivar expelled from DC; sits as Ind. right",
    "2008-11": "A. Navarro leaves PS and founds MAS",
    "2009-01": "A. Zaldivar (Ind. right) joins PRI",
    "2009-07": "R. Munoz leaves PPD and sits as Ind. center-left",
    "2010-03": "New legislative period",
    "2012-02": "A. Horvath leaves RN and acts as Ind. right",
    "2013-12": "C. Bianchi (Ind. right) and A. Horvath (Ind. center) found DRP",
    "2014-01": "L. Perez leaves RN for Amplitud",
    "2014-03": "New legislative period",
    "2014-10": "A. Horvath leaves DRP for SA",
    "2016-07": "M. J. Ossandon leaves RN and sits as Ind. right; A. Navarro moves from MAS to Pais",
    "2016-11": "A. Horvath leaves SA and sits with Amplitud; F. Rossi leaves PS and sits as Ind. center-left",
    "2017-01": "J. Orpis (UDI) removed over legal proceedings",
    "2017-07": "M. J. Ossandon returns to RN",
    "2017-11": "I. Moreira (UDI) removed over legal proceedings",
}


def build() -> str:
    with open(DATA / "seats.csv", newline="", encoding="utf-8") as fh:
        rows = list(csv.reader(fh))
    header, body = rows[0], rows[1:]
    parties = header[3:-1]
    prev = [0] * len(parties)
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(["start", "reason", "deltas"])
    for k, row in enumerate(body):
        seats = [int(v) for v in row[3:-1]]
        deltas = [] if k == 0 else [
            f"{p}:{s - b:+d}" for p, s, b in zip(parties, seats, prev) if s != b
        ]
        writer.writerow([row[0], REASONS[row[0]], ";".join(deltas)])
        prev = seats
    return out.getvalue()


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--check", action="store_true",
                        help="exit 1 if events.csv is out of date instead of writing it")
    args = parser.parse_args()
    text = build()
    target = DATA / "events.csv"
    if args.check:
        current = target.read_text(encoding="utf-8") if target.exists() else ""
        if current != text:
            print("events.csv is out of date", file=sys.stderr)
            return 1
        return 0
    target.write_text(text, encoding="utf-8")
    print(f"wrote {target}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
