#!/usr/bin/env python3
"""Reference external model for protocol tests.

Reads the CSV batch it is given and prints one prediction per data row.

Modes:
  first     value of the first column (must be numeric)
  const7    the constant 7
  drop-last omit the final row (row-count mismatch on purpose)
  fail      exit nonzero without output
"""
import argparse
import csv
import sys


def main() -> int:
    parser = argparse.ArgumentParser()
    parser.add_argument("--mode", default="first",
                        choices=["first", "const7", "drop-last", "fail"])
    parser.add_argument("csv_path")
    args = parser.parse_args()

    if args.mode == "fail":
        return 3

    with open(args.csv_path, newline="") as fh:
        rows = list(csv.reader(fh))[1:]  # skip header

    if args.mode == "drop-last":
        rows = rows[:-1]

    for row in rows:
        if args.mode == "const7":
            print(7)
        else:
            print(row[0])
    return 0


if __name__ == "__main__":
    sys.exit(main())
