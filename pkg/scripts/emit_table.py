"""Write the nu_Y grid table (nu_Y, nu_X(pi Q), class, and the same after w) as CSV.

    python scripts/emit_table.py --e 2 --grid 72 --out table_e2.csv
"""

import argparse
import sys

from canonical_section.calculus import singularity_table, table_csv


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--e", type=int, default=2)
    ap.add_argument("--grid", type=int, help="grid denominator (default 12e(e+1))")
    ap.add_argument("--out", help="output CSV path (default stdout)")
    args = ap.parse_args(argv)
    grid = args.grid or 12 * args.e * (args.e + 1)
    text = table_csv(singularity_table(args.e, grid))
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


if __name__ == "__main__":
    main()
