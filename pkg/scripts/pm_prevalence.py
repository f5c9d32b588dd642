"""How often the optimal fundamental plan contains a perfect matching, for fixed p or a p_n schedule."""

import argparse
import csv

from tropot.randomlab import P_SCHEDULES, BernoulliCostSpec, run_experiment


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--ns", default="5,10,20,40")
    ap.add_argument("--p", type=float, default=None, help="fixed p; overrides --schedule")
    ap.add_argument("--schedule", choices=sorted(P_SCHEDULES), default="log_n_over_n")
    ap.add_argument("--trials", type=int, default=2000)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--threads", type=int, default=1)
    ap.add_argument("--csv", default="pm_prevalence.csv")
    args = ap.parse_args()
    rows = []
    for n in map(int, args.ns.split(",")):
        p = args.p if args.p is not None else P_SCHEDULES[args.schedule](n)
        pm = run_experiment("contains_pm", BernoulliCostSpec(n, p, seed=args.seed), args.trials, args.threads)
        b1 = run_experiment("cost_is_beta1", BernoulliCostSpec(n, p, seed=args.seed), args.trials, args.threads)
        print(f"n={n:3d}  p={p:.4f}  contains_pm={pm.frequency:.4f}  cost_is_beta1={b1.frequency:.4f}")
        rows += [pm.as_row(), b1.as_row()]
    with open(args.csv, "w", newline="") as f:
        w = csv.DictWriter(f, fieldnames=list(rows[0]))
        w.writeheader()
        w.writerows(rows)


if __name__ == "__main__":
    main()
