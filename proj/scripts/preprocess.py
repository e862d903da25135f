#!/usr/bin/env python3
"""Column arithmetic for CSV tables, for building derived covariates.

Typical survey-data preparations before running the solver:

  sum       new=a,b,c       entrywise sum (e.g. species-frequency scores)
  wsum      new=8:a,4:b     weighted sum (e.g. MET-weighted activity minutes)
  pairmean  new=day1,day2   mean of two columns; if exactly one is recorded,
                            that value is used as is
  keep      a,b,c           restrict the output to these columns, in order

A field is missing when it is empty, "NA", or "NaN" (case-insensitive).
sum and wsum yield a missing field if any input is missing; downstream,
the solver drops rows with missing selected fields. The transformed table
is written to stdout.
"""

import argparse
import csv
import sys

MISSING = {"", "na", "nan"}


def is_missing(field: str) -> bool:
    return field.strip().lower() in MISSING


def parse_spec(spec: str, op: str) -> tuple[str, str]:
    name, _, rest = spec.partition("=")
    if not name or not rest:
        sys.exit(f"--{op} expects NEW=..., got '{spec}'")
    return name, rest


def main() -> None:
    parser = argparse.ArgumentParser(
        description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter
    )
    parser.add_argument("input", help="CSV file with a header row")
    parser.add_argument("--sum", action="append", default=[], metavar="NEW=A,B,...")
    parser.add_argument("--wsum", action="append", default=[], metavar="NEW=W:A,W:B,...")
    parser.add_argument("--pairmean", action="append", default=[], metavar="NEW=A,B")
    parser.add_argument("--keep", metavar="A,B,...", help="columns for the output")
    args = parser.parse_args()

    with open(args.input, newline="") as handle:
        reader = csv.DictReader(handle)
        header = list(reader.fieldnames or [])
        rows = list(reader)

    def require(label: str) -> None:
        if label not in header:
            sys.exit(f"column not found: '{label}'")

    def add(name: str, values: list[str]) -> None:
        header.append(name)
        for row, value in zip(rows, values):
            row[name] = value

    for spec in args.sum:
        name, rest = parse_spec(spec, "sum")
        cols = rest.split(",")
        for col in cols:
            require(col)
        add(name, [
            "" if any(is_missing(row[c]) for c in cols)
            else repr(sum(float(row[c]) for c in cols))
            for row in rows
        ])

    for spec in args.wsum:
        name, rest = parse_spec(spec, "wsum")
        terms = []
        for item in rest.split(","):
            weight, _, col = item.partition(":")
            if not col:
                sys.exit(f"--wsum expects WEIGHT:COLUMN terms, got '{item}'")
            require(col)
            terms.append((float(weight), col))
        add(name, [
            "" if any(is_missing(row[c]) for _, c in terms)
            else repr(sum(w * float(row[c]) for w, c in terms))
            for row in rows
        ])

    for spec in args.pairmean:
        name, rest = parse_spec(spec, "pairmean")
        cols = rest.split(",")
        if len(cols) != 2:
            sys.exit(f"--pairmean expects NEW=A,B, got '{spec}'")
        for col in cols:
            require(col)
        a, b = cols
        values = []
        for row in rows:
            missing_a, missing_b = is_missing(row[a]), is_missing(row[b])
            if missing_a and missing_b:
                values.append("")
            elif missing_a:
                values.append(row[b])
            elif missing_b:
                values.append(row[a])
            else:
                values.append(repr((float(row[a]) + float(row[b])) / 2.0))
        add(name, values)

    out_cols = header
    if args.keep:
        out_cols = args.keep.split(",")
        for col in out_cols:
            require(col)

    writer = csv.writer(sys.stdout)
    writer.writerow(out_cols)
    for row in rows:
        writer.writerow([row[c] for c in out_cols])


if __name__ == "__main__":
    main()
