"""Scaled-limit engines for subadditive data and sequence enlargements.

Two elementary limit facts drive all asymptotic invariants in this package:
a subadditive sequence a_m has lim a_m/m = inf a_m/m, and an increasing
function with phi(mt) >= m*phi(t) has lim phi(t)/t = sup phi(t)/t. Both
engines validate their hypotheses on the requested window and report the
window together with a monotonicity trace instead of extrapolating.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import HypothesisViolation, InputError
from .newton import (
    INF,
    GradedSequence,
    MonomialIdeal,
    MonomialValuation,
    PolyhedralRegion,
    ValuationIdealSequence,
    newton_polyhedron,
    val_on_sequence,
)
from .multiplier import arn_ideal
from .ratlp import rational


@dataclass(frozen=True)
class FeketeReport:
    """Windowed lower-limit data for a subadditive sequence.

    value is the minimum of a_m/m over the window; the true limit is <= value.
    """

    value: object
    argmin: int
    window: int
    trace: tuple


def fekete_limit(alpha, window: int) -> FeketeReport:
    """Window scan of a subadditive sequence alpha(m) (values in the
    nonnegative extended reals).

    Subadditivity alpha(p+q) <= alpha(p) + alpha(q) is validated on every
    pair inside the window; a violation raises HypothesisViolation naming
    the pair. Entries may be infinite as long as some entry is finite.
    """
    if window < 1:
        raise InputError("window must be positive")
    values = {m: alpha(m) for m in range(1, window + 1)}
    for p in range(1, window):
        for q in range(p, window - p + 1):
            lhs, rhs = values[p + q], values[p] + values[q]
            if lhs > rhs:
                raise HypothesisViolation(
                    f"subadditivity fails at ({p}, {q}): "
                    f"a_{p+q} = {lhs} > {values[p]} + {values[q]}",
                    witness=(p, q))
    best, argmin = INF, None
    trace = []
    for m in range(1, window + 1):
        scaled = values[m] / m if values[m] != INF else INF
        trace.append((m, scaled))
        if scaled < best:
            best, argmin = scaled, m
    if argmin is None:
        raise HypothesisViolation("every value in the window is infinite")
    return FeketeReport(best, argmin, window, tuple(trace))


@dataclass(frozen=True)
class ScaledSupReport:
    """Windowed upper-limit data for superadditively scaled functions.

    value is the sup of phi(t)/t over the grid; the true limit is >= value.
    doubling_traces certify monotonicity of phi(t)/t along each maximal
    chain t, 2t, 4t, ... contained in the grid.
    """

    value: object
    arg: object
    grid: tuple
    doubling_traces: tuple


def superadditive_scaled_limit(phi, t_grid) -> ScaledSupReport:
    """Grid scan of phi(t)/t for increasing phi with phi(mt) >= m phi(t).

    Both hypotheses are validated on the pairs available inside the grid.
    """
    grid = sorted(set(rational(t) for t in t_grid))
    if not grid or grid[0] <= 0:
        raise InputError("grid must consist of positive parameters")
    values = {t: phi(t) for t in grid}
    for a, b in zip(grid, grid[1:]):
        if values[a] > values[b]:
            raise HypothesisViolation(
                f"phi is not increasing: phi({a}) > phi({b})", witness=(a, b))
    grid_set = set(grid)
    for t in grid:
        m = 2
        while m * t <= grid[-1]:
            if m * t in grid_set and values[m * t] < m * values[t]:
                raise HypothesisViolation(
                    f"superadditive scaling fails: phi({m*t}) < {m} phi({t})",
                    witness=(t, m))
            m += 1
    best, arg = -INF, None
    for t in grid:
        scaled = values[t] / t
        if scaled > best:
            best, arg = scaled, t
    traces = []
    covered = set()
    for t in grid:
        if t in covered or t / 2 in grid_set:
            continue
        chain = []
        s = t
        while s in grid_set:
            covered.add(s)
            chain.append((s, values[s] / s))
            s *= 2
        traces.append(tuple(chain))
    return ScaledSupReport(best, arg, tuple(grid), tuple(traces))


# ---------------------------------------------------------------------------
# valuation-ideal sequences

def valuation_ideal_sequence(alpha) -> ValuationIdealSequence:
    """Graded sequence a_m = (x^u : <alpha, u> >= m) for positive weights.

    A zero weight would put the center off the origin; such input is
    rejected (ValuationIdealSequence raises with a message).
    """
    return ValuationIdealSequence(alpha)


@dataclass(frozen=True)
class SelfComputeReport:
    alpha: tuple
    normalized: tuple
    ratio_valuation: Fraction
    ratio_threshold: Fraction
    attained: bool


def self_compute_check(alpha, q: MonomialIdeal, window: int = 16) -> SelfComputeReport:
    """Does the monomial valuation attain the threshold multiplicity of its
    own valuation-ideal sequence relative to q?

    The weights are rescaled so the valuation takes value 1 on the maximal
    ideal; the attainment predicate is scale-invariant.
    """
    weights = tuple(rational(a) for a in alpha)
    if any(a <= 0 for a in weights):
        raise InputError("weights must be strictly positive")
    if q.is_zero:
        raise InputError("relative ideal must be nonzero")
    low = min(weights)
    normalized = tuple(a / low for a in weights)
    seq = ValuationIdealSequence(normalized)
    val = MonomialValuation(normalized)
    numer = val_on_sequence(val, seq, window)
    ratio_val = numer / (val.log_discrepancy() + val.of_ideal(q))
    ratio_arn = arn_ideal(seq, q, window)
    return SelfComputeReport(weights, normalized, ratio_val, ratio_arn,
                             ratio_val == ratio_arn)


# ---------------------------------------------------------------------------
# enlargement

class EnlargedSequence(GradedSequence):
    """Mix a graded sequence with powers of the maximal ideal:
    c_j = sum over i <= j of a_i * m^(p*(j-i)).

    c_1 contains m^p, so the enlarged sequence always vanishes only at the
    origin; its limit region is the hull of the base region and p * P(m),
    exact whenever the base region is exact.
    """

    def __init__(self, base: GradedSequence, p: int):
        if p < 1:
            raise InputError("enlargement exponent must be >= 1")
        self.base = base
        self.p = p
        self.nvars = base.nvars
        self._maximal = MonomialIdeal.maximal(base.nvars)
        self._cache: dict[int, MonomialIdeal] = {}

    def ideal_at(self, j: int) -> MonomialIdeal:
        if j < 0:
            raise InputError("negative index")
        if j == 0:
            return MonomialIdeal.unit(self.nvars)
        if j not in self._cache:
            acc = MonomialIdeal.zero(self.nvars)
            for i in range(j + 1):
                acc = acc + self.base.ideal_at(i) * self._maximal ** (self.p * (j - i))
            self._cache[j] = acc
        return self._cache[j]

    def limit_region(self, window: int = 16) -> PolyhedralRegion:
        base_region = self.base.limit_region(window)
        if not isinstance(base_region, PolyhedralRegion):
            raise InputError("enlargement needs a polyhedral base region")
        corner = newton_polyhedron(self._maximal).scale(self.p)
        return base_region.hull_with(corner)

    @property
    def exact_region(self) -> bool:
        return self.base.exact_region

    def __repr__(self):
        return f"EnlargedSequence({self.base!r}, p={self.p})"


def enlarge(seq: GradedSequence, p: int) -> EnlargedSequence:
    return EnlargedSequence(seq, p)


def enlarge_q(q: MonomialIdeal, n: int) -> MonomialIdeal:
    """q + m^N, the standard fattening of the relative ideal."""
    if n < 1:
        raise InputError("power must be >= 1")
    return q + MonomialIdeal.maximal(q.nvars) ** n


def min_power_of_maximal_inside(a: MonomialIdeal, cap: int = 64) -> int:
    """Smallest p with m^p inside a; InputError when a is not m-primary."""
    if a.is_zero:
        raise InputError("zero ideal")
    maximal = MonomialIdeal.maximal(a.nvars)
    for p in range(1, cap + 1):
        if a.contains(maximal ** p):
            return p
    raise InputError("no power of the maximal ideal fits (not m-primary?)")
