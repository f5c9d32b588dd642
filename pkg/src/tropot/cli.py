"""Command line interface: ``tropot {solve,analyze,regions,formula,simulate,oracle}``."""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys
from fractions import Fraction

from . import __version__
from .analysis import (
    contains_perfect_matching,
    is_reduced,
    pm_feasible,
    reduce,
    uniqueness_certificate,
)
from .core import NEG_INF, normalize_measure
from .io import FORMAT_VERSION, ProblemError, load_problem, number_to_json, plan_to_json
from .oracle import InstanceTooLarge, brute_force_global, enumerate_prob_beta1
from .randomlab import (
    BernoulliCostSpec,
    UniformCostSpec,
    exact_prob_beta1,
    prob_beta_j,
    run_experiment,
)
from .regions import build_regions
from .solver import solve

SEED_ENV = "TROPOT_SEED"
CSV_COLUMNS = ["event", "n", "p_or_M", "trials", "seed", "frequency", "stderr", "exact"]
EVENT_NAMES = {
    "beta1": "cost_is_beta1",
    "pm": "contains_pm",
    "unique": "unique_reduced",
    "unique-any": "unique_any_reduced",
}


class UsageError(Exception):
    pass


def _warn(msg):
    print(f"warning: {msg}", file=sys.stderr)


def _load(path):
    prob = load_problem(path)
    if prob.renormalized:
        _warn(
            "weights were shifted to max 0 and sorted; "
            f"row order {list(prob.mu.order)}, column order {list(prob.nu.order)} (input positions)"
        )
    return prob


def _fmt(x) -> str:
    if x is NEG_INF:
        return "-inf"
    return str(number_to_json(x))


def _table(rows) -> str:
    cells = [[_fmt(x) for x in r] for r in rows]
    w = max(len(s) for r in cells for s in r)
    return "\n".join(" ".join(s.rjust(w) for s in r) for r in cells)


def _solution_json(prob, sol):
    return {
        "format_version": FORMAT_VERSION,
        "cost": number_to_json(sol.cost),
        "row_order": list(prob.mu.order),
        "col_order": list(prob.nu.order),
        "mu": [number_to_json(x) for x in prob.mu.weights],
        "nu": [number_to_json(x) for x in prob.nu.weights],
        "plan": plan_to_json(sol.plan),
        "regions": [
            {
                "lambda": number_to_json(rs.lam),
                "m_c": rs.m_c,
                "betas": [number_to_json(b) for b in rs.betas],
                "region_cost": number_to_json(rs.region_cost),
                "witness": list(rs.witness),
            }
            for rs in sol.per_region
        ],
    }


def cmd_solve(args):
    prob = _load(args.input)
    sol = solve(prob.mu, prob.nu, prob.cost)
    if args.format == "json":
        print(json.dumps(_solution_json(prob, sol), indent=2))
        return 0
    print(f"cost: {_fmt(sol.cost)}")
    print("plan (rows/columns in sorted-weight order):")
    print(_table(sol.plan.entries))
    for rs in sol.per_region:
        print(
            f"lambda {_fmt(rs.lam)}: m_c = {rs.m_c}, betas = {[number_to_json(b) for b in rs.betas]}, "
            f"region cost = {_fmt(rs.region_cost)}"
        )
    return 0


def cmd_analyze(args):
    prob = _load(args.input)
    sol = solve(prob.mu, prob.nu, prob.cost)
    cert = uniqueness_certificate(prob.mu, prob.nu, prob.cost, solution=sol)
    square = len(prob.mu) == len(prob.nu)
    out = _solution_json(prob, sol)
    out.update(
        {
            "plan_reduced": is_reduced(sol.plan),
            "reduced_plan": plan_to_json(reduce(sol.plan)),
            "region_reduced": {_fmt(k): v for k, v in cert.per_region.items()},
            "unique": cert.unique,
            "unique_fundamental": cert.overall_fundamental,
            "pm_feasible": pm_feasible(prob.mu, prob.nu),
            "contains_perfect_matching": contains_perfect_matching(sol.plan) if square else None,
        }
    )
    print(json.dumps(out, indent=2))
    return 0


def _measures_from_args(args):
    if args.input:
        prob = _load(args.input)
        return prob.mu, prob.nu
    if args.mu is None or args.nu is None:
        raise UsageError("regions needs --input or both --mu and --nu")
    mu = normalize_measure(_parse_numbers(args.mu))
    nu = normalize_measure(_parse_numbers(args.nu))
    return mu, nu


def _parse_numbers(text):
    out = []
    for tok in text.split(","):
        tok = tok.strip()
        try:
            out.append(int(tok))
        except ValueError:
            try:
                out.append(float(tok))
            except ValueError:
                raise UsageError(f"not a number: {tok!r}") from None
    return out


def cmd_regions(args):
    mu, nu = _measures_from_args(args)
    regions = build_regions(mu, nu)
    if args.format == "json":
        print(json.dumps(
            [{"lambda": number_to_json(r.lam), "cells": [list(c) for c in r.sorted_cells()]} for r in regions],
            indent=2,
        ))
        return 0
    tag = {}
    letters = "ABCDEFGHIJKLMNOPQRSTUVWXYZ"
    for t, r in enumerate(regions):
        for cell in r.cells:
            tag[cell] = letters[t % 26]
    m, n = len(mu), len(nu)
    head = [_fmt(x) for x in nu.weights]
    side = [_fmt(x) for x in mu.weights]
    w = max(len(s) for s in head + side + ["X"])
    print(" " * w + " | " + " ".join(s.rjust(w) for s in head))
    print("-" * (w + 3 + (w + 1) * n))
    for i in range(m):
        print(side[i].rjust(w) + " | " + " ".join(tag[(i, j)].rjust(w) for j in range(n)))
    for t, r in enumerate(regions):
        print(f"{letters[t % 26]}: lambda = {_fmt(r.lam)}, {len(r.cells)} cells")
    return 0


def _parse_prob(text, exact):
    if exact:
        try:
            return Fraction(text)
        except (ValueError, ZeroDivisionError):
            raise UsageError(f"not a rational number: {text!r}") from None
    try:
        return float(Fraction(text))
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"not a number: {text!r}") from None


def cmd_formula(args):
    if args.probs is not None:
        if args.j is None:
            raise UsageError("--probs needs --j")
        probs = [_parse_prob(t, args.exact_rational) for t in args.probs.split(",")]
        value = prob_beta_j(args.n, probs, args.j)
    else:
        if args.p is None:
            raise UsageError("formula needs --p or --probs")
        value = exact_prob_beta1(args.n, _parse_prob(args.p, args.exact_rational))
    print(value if isinstance(value, Fraction) else repr(value))
    return 0


def _split_ns(text):
    try:
        ns = [int(t) for t in text.split(",")]
    except ValueError:
        raise UsageError(f"--n must be an integer list, got {text!r}") from None
    if any(n < 1 for n in ns):
        raise UsageError("--n values must be positive")
    return ns


def cmd_simulate(args):
    kind = EVENT_NAMES[args.event]
    seed = args.seed
    if seed is None:
        seed = int(os.environ.get(SEED_ENV, "0"))
    if (args.p is None) == (args.M is None):
        raise UsageError("give exactly one of --p (Bernoulli costs) or --M (uniform costs)")
    reports = []
    for n in _split_ns(args.n):
        if args.p is not None:
            spec = BernoulliCostSpec(n=n, p=_parse_prob(args.p, False), beta1=args.beta1, beta2=args.beta2, seed=seed)
        else:
            spec = UniformCostSpec(n=n, M=args.M, seed=seed)
        reports.append(run_experiment(kind, spec, args.trials, threads=args.threads))
    rows = [r.as_row() for r in reports]
    if args.csv:
        with open(args.csv, "w", newline="") as f:
            writer = csv.DictWriter(f, fieldnames=CSV_COLUMNS)
            writer.writeheader()
            writer.writerows({k: ("" if v is None else v) for k, v in row.items()} for row in rows)
    for r in reports:
        line = f"{r.event} n={r.n} p_or_M={r.p_or_M} trials={r.trials} seed={r.seed}: frequency={r.frequency:.6f} stderr={r.stderr:.6f}"
        if r.exact is not None:
            line += f" exact={r.exact:.6f}"
        print(line)
    return 0


def cmd_oracle(args):
    if args.input:
        prob = _load(args.input)
        brute = brute_force_global(prob.mu, prob.nu, prob.cost)
        sol = solve(prob.mu, prob.nu, prob.cost)
        print(json.dumps({
            "brute_force_cost": number_to_json(brute),
            "solver_cost": number_to_json(sol.cost),
            "agree": brute == sol.cost,
        }, indent=2))
        return 0 if brute == sol.cost else 1
    if args.n is None or args.p is None:
        raise UsageError("oracle needs --input, or --n and --p")
    print(enumerate_prob_beta1(args.n, Fraction(args.p)))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="tropot", description="Discrete max-plus optimal transport.")
    parser.add_argument(
        "--version", action="version", version=f"tropot {__version__} (problem format {FORMAT_VERSION})"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="optimal cost and plan")
    p.add_argument("--input", required=True)
    p.add_argument("--format", choices=("json", "table"), default="table")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("analyze", help="solve and report plan structure")
    p.add_argument("--input", required=True)
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("regions", help="show the region partition")
    p.add_argument("--input")
    p.add_argument("--mu", help="comma separated weights")
    p.add_argument("--nu", help="comma separated weights")
    p.add_argument("--format", choices=("grid", "json"), default="grid")
    p.set_defaults(func=cmd_regions)

    p = sub.add_parser("formula", help="exact probability that the optimal cost is the j-th level")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--p")
    p.add_argument("--probs", help="comma separated level probabilities")
    p.add_argument("--j", type=int)
    p.add_argument("--exact-rational", action="store_true")
    p.set_defaults(func=cmd_formula)

    p = sub.add_parser("simulate", help="Monte Carlo frequency of an event")
    p.add_argument("--event", choices=sorted(EVENT_NAMES), required=True)
    p.add_argument("--n", required=True, help="size, or comma separated sizes")
    p.add_argument("--p")
    p.add_argument("--M", type=float)
    p.add_argument("--beta1", type=float, default=0)
    p.add_argument("--beta2", type=float, default=1)
    p.add_argument("--trials", type=int, default=1000)
    p.add_argument("--seed", type=int)
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--csv")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("oracle", help="brute-force cross-checks (small instances)")
    p.add_argument("--input")
    p.add_argument("--n", type=int)
    p.add_argument("--p")
    p.set_defaults(func=cmd_oracle)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ProblemError, UsageError, InstanceTooLarge, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
