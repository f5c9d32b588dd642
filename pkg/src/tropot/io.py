"""Problem and plan JSON."""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Any

from .core import (
    NEG_INF,
    CostMatrix,
    DimensionMismatch,
    InvalidCost,
    InvalidMeasure,
    MaxPlusMeasure,
    Plan,
    normalize_measure,
)

FORMAT_VERSION = "1"

__all__ = [
    "FORMAT_VERSION",
    "ProblemError",
    "Problem",
    "load_problem",
    "parse_problem",
    "plan_to_json",
    "plan_from_json",
    "number_to_json",
]


class ProblemError(ValueError):
    pass


@dataclass(frozen=True)
class Problem:
    """A validated problem with normalized measures.

    ``cost`` is rearranged to match the sorted weights; ``mu.order`` and
    ``nu.order`` map back to positions in the input file.
    """

    mu: MaxPlusMeasure
    nu: MaxPlusMeasure
    cost: CostMatrix
    renormalized: bool


def _number(x, what):
    if isinstance(x, bool) or not isinstance(x, (int, float)):
        raise ProblemError(f"{what}: expected a number, got {x!r}")
    return x


def parse_problem(data: Any) -> Problem:
    if not isinstance(data, dict):
        raise ProblemError("problem must be a JSON object")
    for key in ("mu", "nu", "cost"):
        if key not in data:
            raise ProblemError(f"missing key {key!r}")
    try:
        raw_mu = [_number(x, "mu") for x in data["mu"]]
        raw_nu = [_number(x, "nu") for x in data["nu"]]
        rows = [[_number(x, "cost") for x in r] for r in data["cost"]]
    except TypeError as e:
        raise ProblemError(f"malformed problem: {e}") from None
    if len(rows) != len(raw_mu) or any(len(r) != len(raw_nu) for r in rows):
        raise ProblemError(
            f"dimension mismatch: cost must be {len(raw_mu)}x{len(raw_nu)} to match mu and nu"
        )
    try:
        mu = normalize_measure(raw_mu)
        nu = normalize_measure(raw_nu)
        cost = CostMatrix(rows).permuted(mu.order, nu.order)
    except (InvalidMeasure, InvalidCost, DimensionMismatch) as e:
        raise ProblemError(str(e)) from None
    renormalized = list(mu.weights) != raw_mu or list(nu.weights) != raw_nu
    return Problem(mu, nu, cost, renormalized)


def load_problem(path) -> Problem:
    try:
        with open(path) as f:
            data = json.load(f)
    except json.JSONDecodeError as e:
        raise ProblemError(f"malformed JSON: {e}") from None
    except OSError as e:
        raise ProblemError(f"cannot read {path}: {e.strerror}") from None
    return parse_problem(data)


def number_to_json(x):
    if x is NEG_INF:
        return "-inf"
    if isinstance(x, Fraction):
        return x.numerator if x.denominator == 1 else float(x)
    return x


def plan_to_json(h: Plan) -> list:
    return [[number_to_json(x) for x in r] for r in h.entries]


def plan_from_json(rows) -> Plan:
    def conv(x):
        if x == "-inf":
            return NEG_INF
        return _number(x, "plan entry")

    return Plan([[conv(x) for x in r] for r in rows])
