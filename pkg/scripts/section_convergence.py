"""Iteration counts of the section solver against the contraction budget.

For each grid valuation below e/(e+1), solve on random models and report
the mean and max iteration count next to ceil(M / gamma) + 3.

    python scripts/section_convergence.py --p 5 --e 2 --n 12 --A 5
"""

import argparse
import csv
import random
import sys
from fractions import Fraction

from canonical_section.calculus import fmt_q
from canonical_section.model import DiscPoint, random_model
from canonical_section.padic import make_field
from canonical_section.section import check_reduction, iterate_section


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--p", type=int, default=5)
    ap.add_argument("--e", type=int, default=2)
    ap.add_argument("--n", type=int, default=12)
    ap.add_argument("--A", type=int, default=5)
    ap.add_argument("--trials", type=int, default=10)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args(argv)

    F = make_field(args.p, args.n, args.A)
    rng = random.Random(args.seed)
    writer = csv.writer(sys.stdout, lineterminator="\n")
    writer.writerow(["nu_X", "gamma_digits", "budget", "mean_iterations", "max_iterations", "reduction_ok"])
    for k in range(1, args.n):
        if Fraction(k, args.n) >= Fraction(args.e, args.e + 1):
            break
        counts, reductions = [], 0
        for _ in range(args.trials):
            m = random_model(rng, args.p, args.e, prec=args.A)
            P = DiscPoint(F.random_element(rng, k))
            run = iterate_section(m, P)
            counts.append(run.iterations)
            reductions += check_reduction(m, P, run.point)
        writer.writerow([fmt_q(Fraction(k, args.n)), run.gamma, run.bound,
                         f"{sum(counts) / len(counts):.1f}", max(counts), f"{reductions}/{args.trials}"])


if __name__ == "__main__":
    main()
