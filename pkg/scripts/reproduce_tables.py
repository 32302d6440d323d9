"""Rerun the constant-k and wedge iteration tables and print measured vs reference counts.

    python3 scripts/reproduce_tables.py            # tables 1, 2, 6 (short rows)
    python3 scripts/reproduce_tables.py --long --jobs 4
"""

import argparse
import sys

from helmmg.cli import main


def parse_args(argv=None):
    p = argparse.ArgumentParser(description=__doc__.split("\n")[0])
    p.add_argument("--tables", default="1,2,6")
    p.add_argument("--long", action="store_true", help="include k_ref 120 and 240 on the wedge")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--out", default="results/tables")
    return p.parse_args(argv)


if __name__ == "__main__":
    args = parse_args()
    status = 0
    for t in args.tables.split(","):
        argv = ["reproduce", t, "--out", args.out, "--jobs", str(args.jobs)]
        if args.long:
            argv.append("--long")
        status = max(status, main(argv))
        print()
    sys.exit(status)
