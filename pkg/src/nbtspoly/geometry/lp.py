"""Exact two-phase simplex with Bland's anti-cycling rule."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .types import DimensionMismatch, Point, PolytopeH

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"

_ZERO = Fraction(0)
_ONE = Fraction(1)


@dataclass(frozen=True)
class LPResult:
    status: str
    value: Optional[Fraction] = None
    point: Optional[Point] = None

    @property
    def optimal(self) -> bool:
        return self.status == OPTIMAL


class _Tableau:
    """Dense tableau; the last column is the right-hand side and ``obj``
    holds reduced costs with ``-objective`` in its last slot."""

    def __init__(self, rows: list[list[Fraction]], basis: list[int]):
        self.rows = rows
        self.basis = basis
        self.obj: list[Fraction] = []

    def set_costs(self, costs: Sequence[Fraction]) -> None:
        ncols = len(self.rows[0]) if self.rows else len(costs) + 1
        obj = list(costs) + [_ZERO] * (ncols - len(costs))
        for row, b in zip(self.rows, self.basis):
            cb = obj[b]
            if cb != 0:
                obj = [o - cb * v for o, v in zip(obj, row)]
        self.obj = obj

    def pivot(self, r: int, c: int) -> None:
        prow = self.rows[r]
        p = prow[c]
        if p != 1:
            prow = [v / p for v in prow]
            self.rows[r] = prow
        nz = [k for k, v in enumerate(prow) if v != 0]
        for i, row in enumerate(self.rows):
            if i == r:
                continue
            f = row[c]
            if f != 0:
                for k in nz:
                    row[k] -= f * prow[k]
        f = self.obj[c]
        if f != 0:
            obj = self.obj
            for k in nz:
                obj[k] -= f * prow[k]
        self.basis[r] = c

    def run(self, allowed: int) -> str:
        """Bland's rule over the first ``allowed`` columns."""
        while True:
            enter = next((j for j in range(allowed) if self.obj[j] < 0), None)
            if enter is None:
                return OPTIMAL
            best = None
            for i, row in enumerate(self.rows):
                a = row[enter]
                if a > 0:
                    ratio = row[-1] / a
                    if best is None or ratio < best[0] or (ratio == best[0] and self.basis[i] < best[1]):
                        best = (ratio, self.basis[i], i)
            if best is None:
                return UNBOUNDED
            self.pivot(best[2], enter)


def simplex_standard(costs: Sequence, matrix: Sequence[Sequence], rhs: Sequence
                     ) -> tuple[str, Optional[Fraction], Optional[list[Fraction]]]:
    """Minimise ``costs . z`` subject to ``matrix @ z = rhs``, ``z >= 0``."""
    n = len(costs)
    costs = [Fraction(c) for c in costs]
    rows = []
    for r, b in zip(matrix, rhs):
        if len(r) != n:
            raise DimensionMismatch("row length differs from number of variables")
        b = Fraction(b)
        if b < 0:
            rows.append([-Fraction(v) for v in r] + [-b])
        else:
            rows.append([Fraction(v) for v in r] + [b])
    m = len(rows)
    if m == 0:
        if any(c < 0 for c in costs):
            return UNBOUNDED, None, None
        return OPTIMAL, _ZERO, [_ZERO] * n

    # phase I: one artificial per row
    tab_rows = []
    for i, row in enumerate(rows):
        art = [_ZERO] * m
        art[i] = _ONE
        tab_rows.append(row[:n] + art + [row[n]])
    tab = _Tableau(tab_rows, [n + i for i in range(m)])
    tab.set_costs([_ZERO] * n + [_ONE] * m)
    tab.run(n + m)
    if tab.obj[-1] != 0:
        return INFEASIBLE, None, None

    # drive artificials out of the basis; drop rows that are redundant
    i = 0
    while i < len(tab.rows):
        if tab.basis[i] >= n:
            col = next((j for j in range(n) if tab.rows[i][j] != 0), None)
            if col is None:
                del tab.rows[i]
                del tab.basis[i]
                continue
            tab.pivot(i, col)
        i += 1
    tab.rows = [row[:n] + [row[-1]] for row in tab.rows]
    if not tab.rows:
        if any(c < 0 for c in costs):
            return UNBOUNDED, None, None
        return OPTIMAL, _ZERO, [_ZERO] * n

    tab.set_costs(costs)
    status = tab.run(n)
    if status == UNBOUNDED:
        return UNBOUNDED, None, None
    z = [_ZERO] * n
    for row, b in zip(tab.rows, tab.basis):
        z[b] = row[-1]
    return OPTIMAL, -tab.obj[-1], z


def lp_solve(objective: Sequence, constraints: PolytopeH, sense: str = "max") -> LPResult:
    """Optimise a linear objective over an H-described region.

    Variables are free; each is split into a positive and negative part and
    every inequality gets a surplus variable.
    """
    if sense not in ("max", "min"):
        raise ValueError(f"sense must be 'max' or 'min', not {sense!r}")
    d = constraints.ambient_dim
    if len(objective) != d:
        raise DimensionMismatch(f"objective has length {len(objective)}, constraints live in dim {d}")
    obj = [Fraction(c) for c in objective]
    ineqs = constraints.inequalities
    eqs = constraints.equalities
    k = len(ineqs)
    matrix = []
    rhs = []
    for idx, ineq in enumerate(ineqs):
        a = list(ineq.coefficients)
        surplus = [_ZERO] * k
        surplus[idx] = -_ONE
        matrix.append(a + [-v for v in a] + surplus)
        rhs.append(ineq.bound)
    for eq in eqs:
        a = list(eq.coefficients)
        matrix.append(a + [-v for v in a] + [_ZERO] * k)
        rhs.append(eq.bound)
    sign = -1 if sense == "max" else 1
    costs = [sign * c for c in obj] + [-sign * c for c in obj] + [_ZERO] * k
    status, _, z = simplex_standard(costs, matrix, rhs)
    if status != OPTIMAL:
        return LPResult(status)
    x = tuple(z[i] - z[d + i] for i in range(d))
    value = sum((c * v for c, v in zip(obj, x)), _ZERO)
    return LPResult(OPTIMAL, value, x)
