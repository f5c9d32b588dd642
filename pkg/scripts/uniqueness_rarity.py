"""Frequency of a unique reduced optimal plan under uniform costs."""

import argparse
import csv

from tropot.randomlab import UniformCostSpec, run_experiment


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--ns", default="2,3,4,6,8,12")
    ap.add_argument("--M", type=float, default=1.0)
    ap.add_argument("--trials", type=int, default=10_000)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--threads", type=int, default=1)
    ap.add_argument("--csv", default="uniqueness_rarity.csv")
    args = ap.parse_args()
    rows = []
    for n in map(int, args.ns.split(",")):
        for kind in ("unique_reduced", "unique_any_reduced"):
            r = run_experiment(kind, UniformCostSpec(n, args.M, seed=args.seed), args.trials, args.threads)
            print(f"n={n:3d}  {kind:19s} {r.frequency:.4f} (se {r.stderr:.4f})")
            rows.append(r.as_row())
    with open(args.csv, "w", newline="") as f:
        w = csv.DictWriter(f, fieldnames=list(rows[0]))
        w.writeheader()
        w.writerows(rows)


if __name__ == "__main__":
    main()
