"""Multiplier ideals of graded monomial sequences and their jump data.

Everything here is driven by the limit Newton region P of a sequence:

* the multiplier ideal at parameter lam collects the monomials x^u with
  u + (1,..,1) in the interior of lam * P (the lattice-interior formula);
* the threshold of a monomial x^u is the reciprocal of the parameter at
  which the ray through u + (1,..,1) enters P (ray-entry parameter);
* a monomial valuation computes that threshold exactly when its weight
  vector supports P at the entry point, so the computing valuations are
  the extreme rays of the normal cone there.

Polyhedral regions give exact Fractions end to end; oracle regions go
through certified bisection and return floats tagged with the tolerance.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction

from . import ratlp
from .errors import ComputationError, InputError, UnsupportedOperationError
from .newton import (
    INF,
    GradedSequence,
    MonomialIdeal,
    MonomialValuation,
    NewtonRegion,
    OracleRegion,
    PolyhedralRegion,
    minimal_generators,
    minimal_lattice_points,
    val_on_sequence,
)
from .ratlp import ZERO, ONE, rational

E_ALL = "all"  # sentinel: every valuation computes a zero threshold


def _direction(u, nvars):
    u = tuple(int(x) for x in u)
    if len(u) != nvars or any(x < 0 for x in u):
        raise InputError(f"bad exponent vector {u!r}")
    return tuple(Fraction(x + 1) for x in u)


def ray_entry_lp(region: PolyhedralRegion, direction) -> Fraction:
    """Entry parameter min{t >= 0 : t*direction in region} by one exact LP.

    Feasibility encodes t*direction as a convex combination of the
    vertices plus a nonnegative remainder.
    """
    d = [rational(x) for x in direction]
    k, n = len(region.vertices), region.nvars
    matrix, rhs = [], []
    for i in range(n):
        row = [d[i]] + [-region.vertices[g][i] for g in range(k)] + \
              [-ONE if j == i else ZERO for j in range(n)]
        matrix.append(row)
        rhs.append(ZERO)
    matrix.append([ZERO] + [ONE] * k + [ZERO] * n)
    rhs.append(ONE)
    objective = [ONE] + [ZERO] * (k + n)
    sol = ratlp.solve(ratlp.LinearProgram.build(objective, matrix, rhs))
    if sol.status is not ratlp.LpStatus.OPTIMAL:
        raise ComputationError(f"ray entry LP ended with {sol.status}")
    return sol.value


def arn_monomial(seq: GradedSequence, u, window: int = 16):
    """Jump multiplicity of the single monomial x^u along the sequence:
    the parameter t* at which t(u+e) crosses into the limit region.

    Exact Fraction on polyhedral regions (one LP), float on oracle regions
    (bisection to the region tolerance). t* == 0 means the sequence is
    trivial in this direction (threshold infinity).
    """
    region = seq.limit_region(window)
    d = _direction(u, seq.nvars)
    if isinstance(region, PolyhedralRegion):
        return ray_entry_lp(region, d)
    return region.ray_entry(d)


def arn_monomial_interval(seq: GradedSequence, u, window: int = 16):
    """Certified bracket for the oracle path of arn_monomial."""
    region = seq.limit_region(window)
    if not isinstance(region, OracleRegion):
        t = arn_monomial(seq, u, window)
        return t, t
    return region.ray_entry_interval(_direction(u, seq.nvars))


def lct_monomial(seq: GradedSequence, u, window: int = 16):
    t = arn_monomial(seq, u, window)
    if t == 0:
        return INF
    return 1 / t if isinstance(t, Fraction) else 1.0 / t


def arn_ideal(seq: GradedSequence, q: MonomialIdeal, window: int = 16):
    """Threshold multiplicity relative to a nonzero monomial ideal q:
    the maximum of arn_monomial over the generators of q."""
    if q.is_zero:
        raise InputError("relative ideal q must be nonzero")
    if q.nvars != seq.nvars:
        raise InputError("variable count mismatch")
    return max(arn_monomial(seq, u, window) for u in q.gens)


def lct_ideal(seq: GradedSequence, q: MonomialIdeal, window: int = 16):
    t = arn_ideal(seq, q, window)
    if t == 0:
        return INF
    return 1 / t if isinstance(t, Fraction) else 1.0 / t


def monomialize(support) -> MonomialIdeal:
    """Monomial ideal generated by the support of a polynomial.

    Thresholds relative to a principal ideal (f) agree with those relative
    to this monomial ideal, because no monomial valuation sees cancellation.
    """
    pts = list(support)
    if not pts:
        raise InputError("empty support")
    return minimal_generators(pts)


def multiplier_ideal(seq: GradedSequence, lam, window: int = 16) -> MonomialIdeal:
    """Monomials x^u with u + e interior to lam * P(sequence).

    Exact for polyhedral limit regions. For a table sequence the region is
    an inner approximation, so the answer can only be too small; callers
    should treat it as approximate. Oracle regions take the 2D walk with
    bisected entry parameters.
    """
    lam = _nonnegative_parameter(lam)
    if lam == 0:
        return MonomialIdeal.unit(seq.nvars)
    region = seq.limit_region(window)
    if isinstance(region, PolyhedralRegion):
        facets = region.facets()
        if not facets:
            return MonomialIdeal.unit(seq.nvars)
        constraints = [(beta, lam - sum(beta)) for beta in facets]
        pts = minimal_lattice_points(constraints, seq.nvars, strict=True)
        return MonomialIdeal(seq.nvars, tuple(pts))
    if isinstance(region, OracleRegion) and region.nvars == 2:
        return _multiplier_ideal_oracle_2d(region, lam)
    raise UnsupportedOperationError("multiplier ideal needs a polyhedral or 2D oracle region")


def _nonnegative_parameter(lam) -> Fraction:
    lam = rational(lam)
    if lam < 0:
        raise InputError("negative multiplier parameter")
    return lam


def jump_multiplicity_map(region: PolyhedralRegion, u) -> Fraction | float:
    """t* for the ray through u + e, straight from the facet description."""
    return region.ray_entry(_direction(u, region.nvars))


def _multiplier_ideal_oracle_2d(region: OracleRegion, lam) -> MonomialIdeal:
    lam_f = float(lam)

    def crosses(u):
        lo, hi = region.ray_entry_interval((u[0] + 1, u[1] + 1))
        mid = float(lo + hi) / 2
        return mid > 0 and 1.0 / mid > lam_f + region.tol

    gens = []
    floor_y = None
    u1 = 0
    while u1 < 10_000:
        y = floor_y if floor_y is not None else 0
        # smallest qualifying second coordinate for this column
        while y > 0 and crosses((u1, y - 1)):
            y -= 1
        while not crosses((u1, y)):
            y += 1
            if y > 10_000:
                raise ComputationError("oracle multiplier ideal walk did not close")
        if floor_y is None or y < floor_y:
            gens.append((u1, y))
            floor_y = y
        if y == 0:
            break
        u1 += 1
    else:
        raise ComputationError("oracle multiplier ideal walk did not terminate")
    return minimal_generators(gens, 2)


@dataclass(frozen=True)
class JumpReport:
    """Sorted jump parameters in (0, lam_max] and the multiplier ideals on
    the open intervals between consecutive jumps (starting from (0, j_1))."""

    jumps: tuple
    ideals_between: tuple
    exact: bool = True


def jumping_numbers(seq: GradedSequence, lam_max, window: int = 16) -> JumpReport:
    """All parameters in (0, lam_max] where the multiplier ideal changes.

    Each jump is the exit parameter of some monomial, and the exit
    parameter of every monomial is a jump, so the scan enumerates lattice
    points in a box that provably contains a witness for every jump value.
    """
    lam_max = _nonnegative_parameter(lam_max)
    region = seq.limit_region(window)
    if not isinstance(region, PolyhedralRegion):
        raise UnsupportedOperationError(
            "jump scan needs a polyhedral region; oracle regions only give "
            "approximate jumps through arn_monomial_interval")
    facets = region.facets()
    if not facets:
        return JumpReport((), (), exact=region.exact)
    n = seq.nvars
    caps = []
    for i in range(n):
        cap = 0
        for beta in facets:
            if beta[i] > 0:
                cap = max(cap, math.floor(lam_max / beta[i]))
        caps.append(cap)
    values = set()
    for u in itertools.product(*(range(c + 1) for c in caps)):
        d = [x + 1 for x in u]
        lam_u = min(sum(b * x for b, x in zip(beta, d)) for beta in facets)
        if 0 < lam_u <= lam_max:
            values.add(lam_u)
    jumps = tuple(sorted(values))
    ideals = []
    prev = ZERO
    for j in jumps:
        ideals.append(multiplier_ideal(seq, (prev + j) / 2, window))
        prev = j
    return JumpReport(jumps, tuple(ideals), exact=region.exact)


# ---------------------------------------------------------------------------
# computing valuations

def _kernel_vector(rows, n):
    """A nonzero kernel vector of an (n-1) x n exact matrix of full rank,
    or None when the rank is deficient."""
    mat = [list(r) for r in rows]
    pivots = []
    r = 0
    for c in range(n):
        piv = next((i for i in range(r, len(mat)) if mat[i][c] != 0), None)
        if piv is None:
            continue
        mat[r], mat[piv] = mat[piv], mat[r]
        mat[r] = [v / mat[r][c] for v in mat[r]]
        for i in range(len(mat)):
            if i != r and mat[i][c] != 0:
                f = mat[i][c]
                mat[i] = [a - f * b for a, b in zip(mat[i], mat[r])]
        pivots.append(c)
        r += 1
    if r != n - 1:
        return None
    free = next(c for c in range(n) if c not in pivots)
    vec = [ZERO] * n
    vec[free] = ONE
    for i, c in enumerate(pivots):
        vec[c] = -mat[i][free]
    return vec


def _primitive(vec):
    denoms = [x.denominator for x in vec]
    scale = math.lcm(*denoms)
    ints = [int(x * scale) for x in vec]
    g = math.gcd(*(abs(v) for v in ints))
    return tuple(Fraction(v, g) for v in ints)


def computing_valuations(seq: GradedSequence, u, window: int = 16):
    """Weight directions whose monomial valuations attain the threshold of
    x^u: the extreme rays of the normal cone of P at the ray-entry point,
    primitive-integer normalized. Returns the sentinel "all" when the
    threshold multiplicity is zero."""
    region = seq.limit_region(window)
    d = _direction(u, seq.nvars)
    if isinstance(region, OracleRegion):
        return _computing_direction_oracle_2d(region, d)
    t = ray_entry_lp(region, d)
    if t == 0:
        return E_ALL
    n = region.nvars
    p = [t * x for x in d]
    rows = [tuple(v[i] - p[i] for i in range(n)) for v in region.vertices]
    rows += [tuple(ONE if j == i else ZERO for j in range(n)) for i in range(n)]
    rays = set()
    for combo in itertools.combinations(range(len(rows)), n - 1):
        vec = _kernel_vector([rows[i] for i in combo], n)
        if vec is None:
            continue
        for cand in (vec, [-x for x in vec]):
            if all(x >= 0 for x in cand) and any(x > 0 for x in cand) \
                    and all(sum(r * x for r, x in zip(row, cand)) >= 0 for row in rows):
                rays.add(_primitive(cand))
    if n == 1:
        rays = {(ONE,)}
    out = []
    for alpha in sorted(rays):
        val = MonomialValuation(alpha)
        expect = t * val.of_exponent(d)
        got = val_on_sequence(val, seq, window)
        if got != expect:
            raise ComputationError(
                f"direction {alpha} fails the supporting-hyperplane identity")
        out.append(val)
    if not out:
        raise ComputationError("no supporting direction found at the entry point")
    return out


def _computing_direction_oracle_2d(region: OracleRegion, d):
    """Maximize support(a, 1-a) / <d, (a, 1-a)> over the weight simplex by
    golden-section (the ratio is quasi-concave)."""
    if region.nvars != 2:
        raise UnsupportedOperationError("oracle computing directions are 2D only")
    d0, d1 = float(d[0]), float(d[1])

    def ratio(a):
        return region.support((a, 1.0 - a)) / (d0 * a + d1 * (1.0 - a))

    lo, hi = 1e-9, 1.0 - 1e-9
    phi = (math.sqrt(5) - 1) / 2
    x1, x2 = hi - phi * (hi - lo), lo + phi * (hi - lo)
    r1, r2 = ratio(x1), ratio(x2)
    for _ in range(300):
        if hi - lo < 1e-13:
            break
        if r1 >= r2:
            hi, x2, r2 = x2, x1, r1
            x1 = hi - phi * (hi - lo)
            r1 = ratio(x1)
        else:
            lo, x1, r1 = x1, x2, r2
            x2 = lo + phi * (hi - lo)
            r2 = ratio(x2)
    a = (lo + hi) / 2
    return [(a, 1.0 - a)]


# ---------------------------------------------------------------------------
# subadditive systems

class SubadditiveSystem:
    """One-parameter family t -> b_t with b_{s+t} inside b_s * b_t."""

    nvars: int

    def ideal_at(self, t) -> MonomialIdeal:
        raise NotImplementedError


class AsymptoticMultiplierSystem(SubadditiveSystem):
    """b_t = multiplier ideal of the sequence at parameter t (b_0 = (1))."""

    def __init__(self, seq: GradedSequence, window: int = 16):
        self.seq = seq
        self.nvars = seq.nvars
        self.window = window
        self._cache: dict[Fraction, MonomialIdeal] = {}

    def ideal_at(self, t) -> MonomialIdeal:
        t = _nonnegative_parameter(t)
        if t not in self._cache:
            self._cache[t] = multiplier_ideal(self.seq, t, self.window)
        return self._cache[t]

    def __repr__(self):
        return f"AsymptoticMultiplierSystem({self.seq!r})"


class TableSystem(SubadditiveSystem):
    """Finitely many sampled parameters; queries elsewhere are rejected."""

    def __init__(self, samples: dict):
        if not samples:
            raise InputError("empty sample table")
        self.samples = {rational(t): ideal for t, ideal in samples.items()}
        first = next(iter(self.samples.values()))
        self.nvars = first.nvars
        for s, ideal in self.samples.items():
            if ideal.nvars != self.nvars:
                raise InputError("mixed variable counts")
            if s < 0:
                raise InputError("negative sample parameter")

    def ideal_at(self, t) -> MonomialIdeal:
        t = rational(t)
        if t == 0:
            return MonomialIdeal.unit(self.nvars)
        if t not in self.samples:
            raise InputError(f"parameter {t} was not sampled")
        return self.samples[t]


def asymptotic_system(seq: GradedSequence, window: int = 16) -> AsymptoticMultiplierSystem:
    return AsymptoticMultiplierSystem(seq, window)


def check_subadditive(sys: SubadditiveSystem, parameters) -> bool:
    """b_{s+t} inside b_s * b_t on every pair from the given parameters."""
    params = [rational(t) for t in parameters]
    for s in params:
        for t in params:
            if not (sys.ideal_at(s) * sys.ideal_at(t)).contains(sys.ideal_at(s + t)):
                return False
    return True


@dataclass(frozen=True)
class GrowthRow:
    t: Fraction
    scaled_value: Fraction      # val(b_t) / t
    lower_bound: Fraction       # limit value - A / t
    margin: Fraction
    strict: bool


@dataclass(frozen=True)
class GrowthReport:
    alpha: tuple
    limit_value: Fraction
    log_discrepancy: Fraction
    rows: tuple[GrowthRow, ...]

    @property
    def all_strict(self) -> bool:
        return all(r.strict for r in self.rows)


def controlled_growth_check(sys: SubadditiveSystem, alpha, t_grid) -> GrowthReport:
    """Check val(b_t)/t > limit - A/t at each grid point for the divisorial
    monomial valuation with primitive integer weights alpha."""
    weights = []
    for a in alpha:
        a = rational(a)
        if a.denominator != 1 or a < 0:
            raise InputError("divisorial check needs nonnegative integer weights")
        weights.append(a)
    if all(a == 0 for a in weights):
        raise InputError("trivial valuation")
    if math.gcd(*(int(a) for a in weights)) != 1:
        raise InputError("weights must be primitive (gcd 1)")
    if not isinstance(sys, AsymptoticMultiplierSystem):
        raise UnsupportedOperationError("growth check needs an asymptotic system")
    val = MonomialValuation(tuple(weights))
    limit = val_on_sequence(val, sys.seq, sys.window)
    a_log = val.log_discrepancy()
    rows = []
    for t in sorted(rational(t) for t in t_grid):
        if t <= 0:
            raise InputError("grid parameters must be positive")
        scaled = val.of_ideal(sys.ideal_at(t)) / t
        bound = limit - a_log / t
        rows.append(GrowthRow(t, scaled, bound, scaled - bound, scaled > bound))
    return GrowthReport(tuple(weights), limit, a_log, tuple(rows))
