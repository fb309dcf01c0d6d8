"""Desk-scale scaling sweeps: runtime against edges, query size, timestamps and degree.

Writes one CSV per suite into the output directory and prints the log2 slope
of decision time against k for the query-size sweep.
"""

import argparse
import os

from motifsieve.bench import BenchParams, aggregate, log2_slope, run_suite, to_csv

SWEEPS = {
    "edges": (1_000, 10_000, 100_000),
    "k": (4, 5, 6, 7, 8, 9, 10),
    "timestamps": (25, 50, 100, 200),
    "degree": (5, 10, 20, 40),
}


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", default="results")
    ap.add_argument("--suites", default=",".join(SWEEPS))
    ap.add_argument("--repeats", type=int, default=3)
    ap.add_argument("--family", default="regular", choices=("regular", "powerlaw"))
    ap.add_argument("--workers", type=int, default=1)
    args = ap.parse_args()
    os.makedirs(args.out, exist_ok=True)
    for suite in args.suites.split(","):
        params = BenchParams(suite=suite, sizes=SWEEPS[suite], family=args.family, repeats=args.repeats,
                             workers=args.workers)
        rows = run_suite(params, progress=lambda r: print(f"{r.suite} n={r.n} m={r.m} k={r.k} t={r.t} "
                                                            f"decide={r.decision_time:.3f}s "
                                                            f"extract={r.extraction_time:.3f}s {r.verdict}"))
        agg = aggregate(rows)
        path = os.path.join(args.out, f"{suite}.csv")
        with open(path, "w") as fh:
            to_csv(rows + agg, fh)
        if suite == "k":
            print(f"log2 slope of decision time vs k: {log2_slope([r.k for r in agg], [r.decision_time for r in agg]):.2f}")
        print(f"wrote {path}")


if __name__ == "__main__":
    main()
