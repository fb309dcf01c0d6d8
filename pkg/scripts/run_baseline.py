"""Algebraic solver against the exhaustive DFS baseline on growing instances.

The baseline gets a wall-clock ceiling of FACTOR times the algebraic
extraction time; rows where it hits the ceiling are marked TIMEOUT, which
already certifies a speedup of at least FACTOR.
"""

import argparse
import os

from motifsieve.bench import BenchParams, aggregate, run_suite, to_csv


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", default="results")
    ap.add_argument("--sizes", default="100,1000,10000")
    ap.add_argument("--family", default="powerlaw", choices=("regular", "powerlaw"))
    ap.add_argument("--alpha", type=float, default=-1.0)
    ap.add_argument("--factor", type=float, default=10.0)
    ap.add_argument("--repeats", type=int, default=1)
    args = ap.parse_args()
    os.makedirs(args.out, exist_ok=True)
    params = BenchParams(suite="baseline", sizes=tuple(int(x) for x in args.sizes.split(",")), family=args.family,
                         alpha=args.alpha, baseline_factor=args.factor, repeats=args.repeats)
    rows = run_suite(params)
    for r in aggregate(rows):
        base = "n/a" if r.baseline_time is None else f"{r.baseline_time:.2f}s"
        print(f"m={r.m}: algebraic {r.extraction_time:.3f}s, baseline {base} [{r.baseline_verdict}], "
              f"ratio {((r.baseline_time or 0) / r.extraction_time):.1f}x")
    path = os.path.join(args.out, "baseline.csv")
    with open(path, "w") as fh:
        to_csv(rows + aggregate(rows), fh)
    print(f"wrote {path}")


if __name__ == "__main__":
    main()
