"""Exact rational linear programming with certificates.

All data lives in :class:`fractions.Fraction`; there is no floating point
anywhere in this module, so every certificate (optimal basis, Farkas vector,
unbounded ray) can be checked by exact arithmetic.

The solver is a dense two-phase simplex on the standard form

    minimize c.x  subject to  A x = b,  x >= 0.

Bland's smallest-index rule guarantees termination on degenerate problems;
an optional largest-coefficient rule is available as a faster pivot choice
and falls back to Bland's rule as soon as cycling is suspected.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import InputError

ZERO = Fraction(0)
ONE = Fraction(1)


def rational(value) -> Fraction:
    """Coerce ints, strings like '3/4' and Fractions to Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, float):
        raise InputError(f"refusing to coerce float {value!r}; pass an exact value")
    try:
        return Fraction(value)
    except (ValueError, ZeroDivisionError) as exc:
        raise InputError(f"not a rational: {value!r}") from exc


def normalize(numerator, denominator=1) -> Fraction:
    """Canonical reduced fraction with positive denominator.

    Raises InputError on a zero denominator.
    """
    if denominator == 0:
        raise InputError("zero denominator")
    return Fraction(numerator, denominator)


class LpStatus(enum.Enum):
    OPTIMAL = "optimal"
    INFEASIBLE = "infeasible"
    UNBOUNDED = "unbounded"


@dataclass(frozen=True)
class LinearProgram:
    """Standard-form program: minimize objective.x s.t. matrix @ x = rhs, x >= 0."""

    objective: tuple[Fraction, ...]
    matrix: tuple[tuple[Fraction, ...], ...]
    rhs: tuple[Fraction, ...]

    @staticmethod
    def build(objective: Sequence, matrix: Sequence[Sequence], rhs: Sequence) -> "LinearProgram":
        c = tuple(rational(v) for v in objective)
        a = tuple(tuple(rational(v) for v in row) for row in matrix)
        b = tuple(rational(v) for v in rhs)
        if len(a) != len(b):
            raise InputError(f"{len(a)} rows but {len(b)} right-hand sides")
        for row in a:
            if len(row) != len(c):
                raise InputError(f"row of length {len(row)} does not match {len(c)} variables")
        return LinearProgram(c, a, b)

    @property
    def nrows(self) -> int:
        return len(self.matrix)

    @property
    def nvars(self) -> int:
        return len(self.objective)


@dataclass(frozen=True)
class LpSolution:
    """Result of solve(): a status plus the certificate for that status.

    * OPTIMAL: primal (feasible, optimal), dual (feasible for the dual
      program max b.y s.t. A^T y <= c) and value with c.primal == b.dual.
    * INFEASIBLE: farkas y with y^T A <= 0 componentwise and y^T b > 0.
    * UNBOUNDED: ray d >= 0 with A d = 0 and objective.d < 0, plus a
      feasible primal starting point.
    """

    status: LpStatus
    primal: tuple[Fraction, ...] | None = None
    dual: tuple[Fraction, ...] | None = None
    value: Fraction | None = None
    farkas: tuple[Fraction, ...] | None = None
    ray: tuple[Fraction, ...] | None = None


class _Tableau:
    """Dense simplex tableau over Fractions.

    Column layout: [structural 0..n-1 | tracking n..n+mtrack-1 | rhs].
    The tracking block starts as the identity, doubles as the artificial
    variables in phase 1, and always equals B^{-1} applied to the initial
    identity, so simplex multipliers can be read off it directly.
    """

    def __init__(self, matrix, rhs, n):
        self.m = len(matrix)
        self.n = n
        self.mtrack = self.m
        self.rows = [list(matrix[i])
                     + [ONE if j == i else ZERO for j in range(self.m)]
                     + [rhs[i]]
                     for i in range(self.m)]
        self.cost: list[Fraction] = []
        self.basis: list[int] = []

    def column(self, j):
        return [row[j] for row in self.rows]

    def pivot(self, row, col):
        piv = self.rows[row][col]
        self.rows[row] = [v / piv for v in self.rows[row]]
        for i in range(self.m):
            if i != row and self.rows[i][col] != 0:
                f = self.rows[i][col]
                self.rows[i] = [a - f * b for a, b in zip(self.rows[i], self.rows[row])]
        self.basis[row] = col

    def reduced_cost(self, j):
        return self.cost[j] - sum(self.cost[self.basis[i]] * self.rows[i][j]
                                  for i in range(self.m))

    def objective_value(self):
        return sum(self.cost[self.basis[i]] * self.rows[i][-1] for i in range(self.m))

    def multipliers(self):
        """Simplex multipliers y = c_B B^{-1} w.r.t. the initial row indexing."""
        return [sum(self.cost[self.basis[i]] * self.rows[i][self.n + k]
                    for i in range(self.m))
                for k in range(self.mtrack)]

    def _entering(self, candidates, rule):
        if rule == "bland":
            for j in candidates:
                if self.reduced_cost(j) < 0:
                    return j
            return None
        best, best_rc = None, ZERO
        for j in candidates:
            rc = self.reduced_cost(j)
            if rc < best_rc:
                best, best_rc = j, rc
        return best

    def _leaving(self, col):
        best_ratio, best_row = None, None
        for i in range(self.m):
            a = self.rows[i][col]
            if a > 0:
                ratio = self.rows[i][-1] / a
                if (best_ratio is None or ratio < best_ratio
                        or (ratio == best_ratio and self.basis[i] < self.basis[best_row])):
                    best_ratio, best_row = ratio, i
        return best_row

    def run(self, candidates, rule="bland"):
        """Pivot to optimality. Returns None, or the index of an entering
        column whose whole tableau column is nonpositive (unboundedness)."""
        stall, seen = 0, set()
        current = self.objective_value()
        while True:
            if rule == "dantzig":
                key = tuple(sorted(self.basis))
                if stall > 2 * (self.n + self.m) or (stall > 0 and key in seen):
                    rule = "bland"  # suspected cycle: fall back for guaranteed exit
                seen.add(key)
            j = self._entering(candidates, rule)
            if j is None:
                return None
            row = self._leaving(j)
            if row is None:
                return j
            self.pivot(row, j)
            new = self.objective_value()
            stall = stall + 1 if new == current else 0
            current = new


def solve(lp: LinearProgram, rule: str = "bland") -> LpSolution:
    """Two-phase simplex with exact certificates.

    rule: "bland" (default, provably terminating) or "dantzig" (largest
    coefficient, with automatic Bland fallback on suspected cycling).
    """
    if rule not in ("bland", "dantzig"):
        raise InputError(f"unknown pivot rule {rule!r}")
    m, n = lp.nrows, lp.nvars
    if m == 0:
        for j, cj in enumerate(lp.objective):
            if cj < 0:
                ray = tuple(ONE if k == j else ZERO for k in range(n))
                return LpSolution(LpStatus.UNBOUNDED, primal=tuple([ZERO] * n), ray=ray)
        return LpSolution(LpStatus.OPTIMAL, primal=tuple([ZERO] * n), dual=(), value=ZERO)

    # flip rows so the right-hand side is nonnegative; remember the signs
    signs = [ONE if lp.rhs[i] >= 0 else -ONE for i in range(m)]
    matrix = [[signs[i] * v for v in lp.matrix[i]] for i in range(m)]
    rhs = [signs[i] * lp.rhs[i] for i in range(m)]

    structural = list(range(n))
    tab = _Tableau(matrix, rhs, n)
    tab.basis = list(range(n, n + m))

    # phase 1: tracking columns act as artificial variables
    tab.cost = [ZERO] * n + [ONE] * m
    tab.run(structural, rule)

    if tab.objective_value() > 0:
        y = tab.multipliers()  # y^T A' <= 0 on structural columns, y^T b' > 0
        farkas = tuple(signs[i] * y[i] for i in range(m))
        return LpSolution(LpStatus.INFEASIBLE, farkas=farkas)

    # drive leftover zero-level artificials out of the basis, or drop the
    # row entirely when it has become redundant
    drop_rows = []
    for i in range(tab.m):
        if tab.basis[i] >= n:
            for j in range(n):
                if tab.rows[i][j] != 0:
                    tab.pivot(i, j)
                    break
            else:
                drop_rows.append(i)
    if drop_rows:
        keep = [i for i in range(tab.m) if i not in drop_rows]
        tab.rows = [tab.rows[i] for i in keep]
        tab.basis = [tab.basis[i] for i in keep]
        tab.m = len(keep)

    # phase 2 on the true objective
    tab.cost = list(lp.objective) + [ZERO] * tab.mtrack
    entering = tab.run(structural, rule)
    if entering is not None:
        col = tab.column(entering)
        ray = [ZERO] * n
        ray[entering] = ONE
        for i in range(tab.m):
            if tab.basis[i] < n:
                ray[tab.basis[i]] = -col[i]
        primal = [ZERO] * n
        for i in range(tab.m):
            if tab.basis[i] < n:
                primal[tab.basis[i]] = tab.rows[i][-1]
        return LpSolution(LpStatus.UNBOUNDED, primal=tuple(primal), ray=tuple(ray))

    primal = [ZERO] * n
    for i in range(tab.m):
        if tab.basis[i] < n:
            primal[tab.basis[i]] = tab.rows[i][-1]
    y = tab.multipliers()
    dual = tuple(signs[i] * y[i] for i in range(m))
    value = sum(c * x for c, x in zip(lp.objective, primal))
    return LpSolution(LpStatus.OPTIMAL, primal=tuple(primal), dual=dual, value=value)


def check_certificate(lp: LinearProgram, sol: LpSolution) -> bool:
    """Exact validation of whichever certificate the solution carries."""
    if sol.status is LpStatus.OPTIMAL:
        ax = [sum(a * x for a, x in zip(row, sol.primal)) for row in lp.matrix]
        if ax != list(lp.rhs) or any(x < 0 for x in sol.primal):
            return False
        for j in range(lp.nvars):
            if sum(lp.matrix[i][j] * sol.dual[i] for i in range(lp.nrows)) > lp.objective[j]:
                return False
        return sum(b * y for b, y in zip(lp.rhs, sol.dual)) == sol.value
    if sol.status is LpStatus.INFEASIBLE:
        y = sol.farkas
        for j in range(lp.nvars):
            if sum(lp.matrix[i][j] * y[i] for i in range(lp.nrows)) > 0:
                return False
        return sum(b * yi for b, yi in zip(lp.rhs, y)) > 0
    if sol.status is LpStatus.UNBOUNDED:
        d = sol.ray
        if any(v < 0 for v in d):
            return False
        if any(sum(a * x for a, x in zip(row, d)) != 0 for row in lp.matrix):
            return False
        return sum(c * x for c, x in zip(lp.objective, d)) < 0
    return False


def solve_square_system(matrix, rhs):
    """Exact Gaussian elimination for a square system; None when singular."""
    n = len(matrix)
    if any(len(row) != n for row in matrix):
        raise InputError("square systems only")
    aug = [list(matrix[i]) + [rhs[i]] for i in range(n)]
    for col in range(n):
        piv = next((r for r in range(col, n) if aug[r][col] != 0), None)
        if piv is None:
            return None
        aug[col], aug[piv] = aug[piv], aug[col]
        aug[col] = [v / aug[col][col] for v in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [a - f * b for a, b in zip(aug[r], aug[col])]
    return [aug[i][-1] for i in range(n)]
