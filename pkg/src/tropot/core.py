"""Max-plus arithmetic, measures, cost matrices and plans.

Values are plain Python numbers (``int``, ``Fraction`` or ``float``) plus the
tagged element :data:`NEG_INF`.  Integer and rational inputs stay exact; all
comparisons are exact since every algorithm here is order based.

Indices are 0-based throughout the library.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import total_ordering
from numbers import Real
from typing import Iterable, Sequence, Union

__all__ = [
    "NEG_INF",
    "NegInf",
    "ExtendedReal",
    "InvalidMeasure",
    "InvalidCost",
    "DimensionMismatch",
    "MaxPlusMeasure",
    "CostMatrix",
    "Plan",
    "oplus",
    "otimes",
    "normalize_measure",
    "fundamental_measure",
    "is_plan",
    "objective",
    "trivial_plan",
]


@total_ordering
class NegInf:
    """The tropical zero, smaller than every real number."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "NEG_INF"

    def __str__(self):
        return "-inf"

    def __eq__(self, other):
        return other is self

    def __hash__(self):
        return hash("tropot.NEG_INF")

    def __lt__(self, other):
        if other is self:
            return False
        if isinstance(other, Real):
            return True
        return NotImplemented

    def __add__(self, other):
        if other is self or isinstance(other, Real):
            return self
        return NotImplemented

    __radd__ = __add__

    def __neg__(self):
        raise ArithmeticError("negating -inf leaves the max-plus carrier")

    def __reduce__(self):
        return (NegInf, ())


NEG_INF = NegInf()

ExtendedReal = Union[int, float, Fraction, NegInf]


def oplus(a: ExtendedReal, b: ExtendedReal) -> ExtendedReal:
    """Tropical sum (max)."""
    return b if a < b else a


def otimes(a: ExtendedReal, b: ExtendedReal) -> ExtendedReal:
    """Tropical product (ordinary sum, with NEG_INF absorbing)."""
    if a is NEG_INF or b is NEG_INF:
        return NEG_INF
    return a + b


class InvalidMeasure(ValueError):
    pass


class InvalidCost(ValueError):
    pass


class DimensionMismatch(ValueError):
    pass


def _check_finite(x, what: str, exc=InvalidMeasure):
    if x is NEG_INF or isinstance(x, bool) or not isinstance(x, Real):
        raise exc(f"{what} must be a finite real number, got {x!r}")
    if isinstance(x, float) and not math.isfinite(x):
        raise exc(f"{what} must be finite, got {x!r}")


@dataclass(frozen=True)
class MaxPlusMeasure:
    """Discrete max-plus probability measure with weights sorted descending.

    ``order[k]`` is the position, in the caller's original data, of the point
    carrying ``weights[k]``.
    """

    weights: tuple
    order: tuple = None
    labels: tuple = None

    def __post_init__(self):
        w = tuple(self.weights)
        if not w:
            raise InvalidMeasure("a measure needs at least one point")
        for x in w:
            _check_finite(x, "weight")
        if w[0] != 0:
            raise InvalidMeasure(f"largest weight must be 0, got {w[0]!r}")
        if any(a < b for a, b in zip(w, w[1:])):
            raise InvalidMeasure("weights must be sorted non-increasing")
        object.__setattr__(self, "weights", w)
        order = tuple(range(len(w))) if self.order is None else tuple(self.order)
        if sorted(order) != list(range(len(w))):
            raise InvalidMeasure("order must be a permutation of the point indices")
        object.__setattr__(self, "order", order)
        if self.labels is not None:
            labels = tuple(self.labels)
            if len(labels) != len(w):
                raise InvalidMeasure("one label per point required")
            object.__setattr__(self, "labels", labels)

    def __len__(self):
        return len(self.weights)

    def __getitem__(self, i):
        return self.weights[i]

    def __iter__(self):
        return iter(self.weights)

    @property
    def distinct(self) -> tuple:
        """Distinct weights, descending."""
        return tuple(sorted(set(self.weights), reverse=True))

    @property
    def is_fundamental(self) -> bool:
        return all(w == 0 for w in self.weights)


def normalize_measure(raw_weights: Iterable[Real], labels: Sequence = None) -> MaxPlusMeasure:
    """Shift weights so the maximum is 0 and sort them descending (stable)."""
    raw = list(raw_weights)
    if not raw:
        raise InvalidMeasure("a measure needs at least one point")
    for x in raw:
        _check_finite(x, "weight")
    top = max(raw)
    order = sorted(range(len(raw)), key=lambda i: raw[i], reverse=True)
    # sorted() with reverse=True keeps ties in input order
    weights = tuple(raw[i] - top for i in order)
    if labels is not None:
        labels = tuple(labels[i] for i in order)
    return MaxPlusMeasure(weights, order, labels)


def fundamental_measure(n: int) -> MaxPlusMeasure:
    return MaxPlusMeasure((0,) * n)


@dataclass(frozen=True)
class CostMatrix:
    """Nonnegative finite m x n cost matrix."""

    entries: tuple

    def __post_init__(self):
        rows = tuple(tuple(r) for r in self.entries)
        if not rows or not rows[0]:
            raise InvalidCost("cost matrix must be nonempty")
        n = len(rows[0])
        for r in rows:
            if len(r) != n:
                raise InvalidCost("cost matrix rows must have equal length")
            for x in r:
                _check_finite(x, "cost", InvalidCost)
                if x < 0:
                    raise InvalidCost(f"costs must be nonnegative, got {x!r}")
        object.__setattr__(self, "entries", rows)

    @classmethod
    def from_array(cls, a) -> "CostMatrix":
        """Build from a nested sequence or a numpy array (converted to Python scalars)."""
        tolist = getattr(a, "tolist", None)
        return cls(tolist() if tolist is not None else a)

    @property
    def shape(self) -> tuple:
        return len(self.entries), len(self.entries[0])

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def permuted(self, row_order: Sequence[int], col_order: Sequence[int]) -> "CostMatrix":
        """Rows/columns rearranged so that new row k is old row ``row_order[k]``."""
        e = self.entries
        return CostMatrix(tuple(tuple(e[i][j] for j in col_order) for i in row_order))


@dataclass(frozen=True)
class Plan:
    """m x n matrix over the extended reals with entries <= 0."""

    entries: tuple
    _support: frozenset = field(default=None, init=False, repr=False, compare=False)

    def __post_init__(self):
        rows = tuple(tuple(r) for r in self.entries)
        if not rows or not rows[0]:
            raise DimensionMismatch("plan must be nonempty")
        n = len(rows[0])
        for r in rows:
            if len(r) != n:
                raise DimensionMismatch("plan rows must have equal length")
            for x in r:
                if x is not NEG_INF:
                    _check_finite(x, "plan entry", ValueError)
                    if x > 0:
                        raise ValueError(f"plan entries must be <= 0, got {x!r}")
        object.__setattr__(self, "entries", rows)
        supp = frozenset(
            (i, j) for i, r in enumerate(rows) for j, x in enumerate(r) if x is not NEG_INF
        )
        object.__setattr__(self, "_support", supp)

    @classmethod
    def from_support(cls, shape, values: dict) -> "Plan":
        """Plan with ``values[(i, j)]`` on the given cells and NEG_INF elsewhere."""
        m, n = shape
        return cls(tuple(tuple(values.get((i, j), NEG_INF) for j in range(n)) for i in range(m)))

    @property
    def shape(self) -> tuple:
        return len(self.entries), len(self.entries[0])

    @property
    def support(self) -> frozenset:
        return self._support

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def row_max(self, i):
        return max(self.entries[i])

    def col_max(self, j):
        return max(r[j] for r in self.entries)


def _check_dims(h_shape, mu: MaxPlusMeasure, nu: MaxPlusMeasure):
    if h_shape != (len(mu), len(nu)):
        raise DimensionMismatch(
            f"matrix is {h_shape[0]}x{h_shape[1]} but measures have sizes {len(mu)}, {len(nu)}"
        )


def is_plan(h: Plan, mu: MaxPlusMeasure, nu: MaxPlusMeasure) -> bool:
    """True iff row maxima equal the weights of ``mu`` and column maxima those of ``nu``."""
    _check_dims(h.shape, mu, nu)
    m, n = h.shape
    return all(h.row_max(i) == mu[i] for i in range(m)) and all(
        h.col_max(j) == nu[j] for j in range(n)
    )


def objective(h: Plan, c: CostMatrix) -> ExtendedReal:
    """``max_{i,j} (c[i][j] + h[i][j])``."""
    if h.shape != c.shape:
        raise DimensionMismatch(f"plan shape {h.shape} != cost shape {c.shape}")
    best = NEG_INF
    for hr, cr in zip(h.entries, c.entries):
        for x, y in zip(hr, cr):
            best = oplus(best, otimes(x, y))
    return best


def trivial_plan(mu: MaxPlusMeasure, nu: MaxPlusMeasure) -> Plan:
    """The product plan with entries ``k_i + l_j``."""
    return Plan(tuple(tuple(k + l for l in nu.weights) for k in mu.weights))
