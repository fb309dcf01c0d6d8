"""Peak working memory of the temporal sieve against the 4 n t W word bound."""

import argparse
import os

from motifsieve.bench import BenchParams, run_suite, to_csv


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", default="results")
    ap.add_argument("--sizes", default="100,1000,10000,100000")
    args = ap.parse_args()
    os.makedirs(args.out, exist_ok=True)
    rows = run_suite(BenchParams(suite="memory", sizes=tuple(int(x) for x in args.sizes.split(","))))
    for r in rows:
        print(f"n={r.n} m={r.m}: peak {r.peak_words} words, bound {r.bound_words}, "
              f"ratio {r.peak_words / r.bound_words:.3f}")
    path = os.path.join(args.out, "memory.csv")
    with open(path, "w") as fh:
        to_csv(rows, fh)
    print(f"wrote {path}")


if __name__ == "__main__":
    main()
