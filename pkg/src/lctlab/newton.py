"""Monomial ideals, Newton regions and graded sequences of monomial ideals.

Exponent vectors are plain tuples of nonnegative ints. A monomial ideal is
the antichain of its minimal generators; the empty generator set is the zero
ideal. A Newton region is a closed convex subset of the nonnegative orthant
that is upward closed (region + orthant = region), either polyhedral --
conv(vertices) + orthant -- or given by membership/support callbacks.

Values of monomial valuations on ideals, regions and graded sequences are
exact Fractions except on oracle regions, where floats tagged with the
tolerance used are returned.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Sequence

from . import ratlp
from .errors import ComputationError, InputError, UnsupportedOperationError
from .ratlp import ZERO, ONE, rational

INF = math.inf


# ---------------------------------------------------------------------------
# exponent vectors and monomial ideals

def _exponent(u) -> tuple[int, ...]:
    v = tuple(int(x) for x in u)
    if any(x != y for x, y in zip(v, u)) or any(x < 0 for x in v):
        raise InputError(f"exponent vector must have nonnegative integers: {u!r}")
    return v


def _dominates(u, v) -> bool:
    return all(a >= b for a, b in zip(u, v))


def minimal_generators(points: Sequence[Sequence[int]], nvars: int | None = None) -> "MonomialIdeal":
    """Antichain of componentwise-minimal points; empty input is the zero ideal."""
    pts = [_exponent(p) for p in points]
    if pts:
        nvars = len(pts[0])
        if any(len(p) != nvars for p in pts):
            raise InputError("mixed exponent lengths")
    elif nvars is None:
        raise InputError("empty input needs an explicit variable count")
    keep = []
    for p in sorted(set(pts), key=lambda q: (sum(q), q)):
        if not any(_dominates(p, q) for q in keep):
            keep.append(p)
    return MonomialIdeal(nvars, tuple(sorted(keep)))


@dataclass(frozen=True)
class MonomialIdeal:
    """A monomial ideal by its minimal generating exponents.

    gens == () encodes the zero ideal; ((0,...,0),) is the unit ideal.
    Use minimal_generators() to build one from arbitrary points.
    """

    nvars: int
    gens: tuple[tuple[int, ...], ...]

    @staticmethod
    def zero(nvars: int) -> "MonomialIdeal":
        return MonomialIdeal(nvars, ())

    @staticmethod
    def unit(nvars: int) -> "MonomialIdeal":
        return MonomialIdeal(nvars, ((0,) * nvars,))

    @staticmethod
    def maximal(nvars: int) -> "MonomialIdeal":
        """The ideal of the origin, generated by the variables."""
        eye = tuple(tuple(1 if j == i else 0 for j in range(nvars)) for i in range(nvars))
        return MonomialIdeal(nvars, eye)

    @property
    def is_zero(self) -> bool:
        return not self.gens

    @property
    def is_unit(self) -> bool:
        return self.gens == ((0,) * self.nvars,)

    def _check_compatible(self, other: "MonomialIdeal"):
        if self.nvars != other.nvars:
            raise InputError(f"variable count mismatch: {self.nvars} vs {other.nvars}")

    def __add__(self, other: "MonomialIdeal") -> "MonomialIdeal":
        self._check_compatible(other)
        return minimal_generators(self.gens + other.gens, self.nvars)

    def __mul__(self, other: "MonomialIdeal") -> "MonomialIdeal":
        self._check_compatible(other)
        if self.is_zero or other.is_zero:
            return MonomialIdeal.zero(self.nvars)
        sums = [tuple(a + b for a, b in zip(u, v))
                for u in self.gens for v in other.gens]
        return minimal_generators(sums, self.nvars)

    def __pow__(self, m: int) -> "MonomialIdeal":
        if m < 0:
            raise InputError("negative power of an ideal")
        out = MonomialIdeal.unit(self.nvars)
        base = self
        while m:
            if m & 1:
                out = out * base
            base = base * base
            m >>= 1
        return out

    def contains(self, other: "MonomialIdeal") -> bool:
        """self >= other as ideals: every generator of other is divisible
        by some generator of self."""
        self._check_compatible(other)
        if other.is_zero:
            return True
        if self.is_zero:
            return False
        return all(any(_dominates(u, g) for g in self.gens) for u in other.gens)

    def contains_exponent(self, u) -> bool:
        u = _exponent(u)
        return any(_dominates(u, g) for g in self.gens)

    def order_at_origin(self) -> Fraction | float:
        """Largest k with self contained in the k-th power of the maximal
        ideal: min of coordinate sums over generators."""
        if self.is_zero:
            return INF
        return Fraction(min(sum(u) for u in self.gens))

    def restrict_hyperplane(self) -> "MonomialIdeal":
        """Image in the coordinate hyperplane {last variable = 0}: keep the
        generators not divisible by that variable, drop the coordinate."""
        if self.nvars < 2:
            raise InputError("restriction needs at least two variables")
        kept = [u[:-1] for u in self.gens if u[-1] == 0]
        if not kept:
            return MonomialIdeal.zero(self.nvars - 1)
        return minimal_generators(kept, self.nvars - 1)

    def is_m_primary(self) -> bool:
        """Vanishing locus is at most the origin: some pure power of every
        variable is a generator."""
        if self.is_zero:
            return False
        return all(any(u[i] > 0 and all(u[j] == 0 for j in range(self.nvars) if j != i)
                       for u in self.gens)
                   for i in range(self.nvars))

    def __str__(self):
        if self.is_zero:
            return "(0)"
        names = "xyzw" if self.nvars <= 4 else None
        def mono(u):
            if not any(u):
                return "1"
            parts = []
            for i, e in enumerate(u):
                if e:
                    v = names[i] if names else f"x{i}"
                    parts.append(v if e == 1 else f"{v}^{e}")
            return "".join(parts)
        return "(" + ", ".join(mono(u) for u in self.gens) + ")"


def ideal_sum(a: MonomialIdeal, b: MonomialIdeal) -> MonomialIdeal:
    return a + b


def ideal_product(a: MonomialIdeal, b: MonomialIdeal) -> MonomialIdeal:
    return a * b


def ideal_contains(a: MonomialIdeal, b: MonomialIdeal) -> bool:
    return a.contains(b)


# ---------------------------------------------------------------------------
# monomial valuations

@dataclass(frozen=True)
class MonomialValuation:
    """The valuation sending a monomial x^u to <alpha, u>."""

    alpha: tuple[Fraction, ...]

    @staticmethod
    def of(weights) -> "MonomialValuation":
        a = tuple(rational(w) for w in weights)
        if any(w < 0 for w in a):
            raise InputError("monomial valuation weights must be nonnegative")
        return MonomialValuation(a)

    @property
    def nvars(self) -> int:
        return len(self.alpha)

    @property
    def is_trivial(self) -> bool:
        return all(w == 0 for w in self.alpha)

    def log_discrepancy(self) -> Fraction:
        return sum(self.alpha, ZERO)

    def of_exponent(self, u) -> Fraction:
        return sum((a * x for a, x in zip(self.alpha, u)), ZERO)

    def of_ideal(self, a: MonomialIdeal) -> Fraction | float:
        if a.nvars != self.nvars:
            raise InputError("variable count mismatch")
        if a.is_zero:
            return INF
        return min(self.of_exponent(u) for u in a.gens)


def val_on_ideal(v: MonomialValuation, a: MonomialIdeal) -> Fraction | float:
    return v.of_ideal(a)


# ---------------------------------------------------------------------------
# Newton regions

def _ceil_div(num: Fraction, strict: bool) -> int:
    """Least nonnegative integer k with k > num (strict) or k >= num."""
    k = math.floor(num) + 1 if strict else math.ceil(num)
    return max(0, k)


def minimal_lattice_points(constraints, nvars: int, strict: bool = False):
    """Minimal lattice points of {u >= 0 : <beta, u> >= rhs for all (beta, rhs)}.

    Every beta must be componentwise nonnegative, so the set is upward
    closed and the minimal points form a finite antichain. With strict=True
    the inequalities are strict. Returns a sorted antichain list.
    """
    constraints = [(tuple(rational(b) for b in beta), rational(r))
                   for beta, r in constraints]
    active = [(beta, r) for beta, r in constraints if r > 0 or (strict and r >= 0)]
    if not active:
        return [(0,) * nvars]
    for beta, r in active:
        if all(b == 0 for b in beta):
            return []  # 0 >= r > 0 impossible: empty set
    bounds = []
    for i in range(nvars):
        bi = 0
        for beta, r in active:
            if beta[i] > 0:
                bi = max(bi, math.floor(r / beta[i]) + 1)
        bounds.append(bi)

    points = []

    def last_coord(prefix):
        need = 0
        for beta, r in active:
            rem = r - sum(b * x for b, x in zip(beta, prefix))
            if beta[-1] > 0:
                need = max(need, _ceil_div(rem / beta[-1], strict))
            elif rem > 0 or (strict and rem >= 0):
                return None  # constraint cannot be met by the last coordinate
        return need

    for prefix in itertools.product(*(range(b + 1) for b in bounds[:-1])):
        last = last_coord(prefix)
        if last is not None and last <= bounds[-1] + 1:
            points.append(prefix + (last,))
    ideal = minimal_generators(points, nvars)
    return list(ideal.gens)


class NewtonRegion:
    """Base interface shared by polyhedral and oracle regions."""

    nvars: int
    exact: bool

    def support(self, alpha):
        raise NotImplementedError

    def contains(self, point) -> bool:
        raise NotImplementedError

    def interior_contains(self, point) -> bool:
        raise NotImplementedError

    def ray_entry(self, direction):
        """min {t >= 0 : t*direction in region} for a direction > 0."""
        raise NotImplementedError


class PolyhedralRegion(NewtonRegion):
    """conv(vertices) + nonnegative orthant, vertices rational and minimal."""

    def __init__(self, vertices, exact=True, _skip_minimality=False):
        verts = [tuple(rational(x) for x in v) for v in vertices]
        if not verts:
            raise InputError("a polyhedral region needs at least one vertex")
        self.nvars = len(verts[0])
        if any(len(v) != self.nvars for v in verts):
            raise InputError("mixed vertex dimensions")
        if any(x < 0 for v in verts for x in v):
            raise InputError("vertices must lie in the nonnegative orthant")
        verts = sorted(set(verts))
        if not _skip_minimality:
            verts = _minimal_vertex_set(verts)
        self.vertices = tuple(verts)
        self.exact = exact
        self._facets = None

    # -- structure ---------------------------------------------------------

    def facets(self):
        """Facet inequalities beyond u >= 0, normalized to <beta, u> >= 1.

        Computed once by vertex enumeration of the reciprocal body
        {alpha >= 0 : <v, alpha> >= 1 for all vertices v} (the blocking
        polyhedron); its vertices are exactly the normalized facet normals.
        Empty when the region is the whole orthant.
        """
        if self._facets is None:
            if any(all(x == 0 for x in v) for v in self.vertices):
                self._facets = ()
            else:
                self._facets = tuple(sorted(_blocker_vertices(self.vertices)))
        return self._facets

    def scale(self, lam) -> "PolyhedralRegion":
        lam = rational(lam)
        if lam < 0:
            raise InputError("negative scaling of a region")
        if lam == 0:
            return PolyhedralRegion([(ZERO,) * self.nvars], exact=self.exact,
                                    _skip_minimality=True)
        return PolyhedralRegion([tuple(lam * x for x in v) for v in self.vertices],
                                exact=self.exact, _skip_minimality=True)

    def minkowski(self, other: "PolyhedralRegion") -> "PolyhedralRegion":
        if not isinstance(other, PolyhedralRegion):
            raise UnsupportedOperationError("Minkowski sum needs polyhedral operands")
        if self.nvars != other.nvars:
            raise InputError("dimension mismatch")
        sums = [tuple(a + b for a, b in zip(u, v))
                for u in self.vertices for v in other.vertices]
        return PolyhedralRegion(sums, exact=self.exact and other.exact)

    def hull_with(self, other: "PolyhedralRegion", exact=None) -> "PolyhedralRegion":
        if self.nvars != other.nvars:
            raise InputError("dimension mismatch")
        if exact is None:
            exact = self.exact and other.exact
        return PolyhedralRegion(self.vertices + other.vertices, exact=exact)

    # -- queries ------------------------------------------------------------

    def support(self, alpha) -> Fraction:
        alpha = [rational(a) for a in alpha]
        if any(a < 0 for a in alpha):
            raise InputError("support direction must be nonnegative")
        return min(sum((a * x for a, x in zip(alpha, v)), ZERO) for v in self.vertices)

    def contains(self, point) -> bool:
        p = [rational(x) for x in point]
        if any(x < 0 for x in p):
            return False
        return all(sum(b * x for b, x in zip(beta, p)) >= 1 for beta in self.facets())

    def interior_contains(self, point) -> bool:
        p = [rational(x) for x in point]
        if any(x <= 0 for x in p):
            return False
        return all(sum(b * x for b, x in zip(beta, p)) > 1 for beta in self.facets())

    def interior_contains_lp(self, point) -> bool:
        """Independent interior test: the largest eps with point - eps*(1,..,1)
        still in the region is positive. Solved as an exact LP."""
        p = [rational(x) for x in point]
        k = len(self.vertices)
        n = self.nvars
        # vars: eps, lambda_g (k), r (n); rows: point = sum l_g v_g + r + eps*e
        matrix, rhs = [], []
        for i in range(n):
            row = [ONE] + [self.vertices[g][i] for g in range(k)] + \
                  [ONE if j == i else ZERO for j in range(n)]
            matrix.append(row)
            rhs.append(p[i])
        matrix.append([ZERO] + [ONE] * k + [ZERO] * n)
        rhs.append(ONE)
        objective = [-ONE] + [ZERO] * (k + n)
        sol = ratlp.solve(ratlp.LinearProgram.build(objective, matrix, rhs))
        if sol.status is ratlp.LpStatus.INFEASIBLE:
            return False
        if sol.status is ratlp.LpStatus.UNBOUNDED:
            raise ComputationError("interior LP cannot be unbounded on an orthant region")
        return -sol.value > 0

    def ray_entry(self, direction) -> Fraction | float:
        d = [rational(x) for x in direction]
        if any(x < 0 for x in d):
            raise InputError("ray direction must be nonnegative")
        entry = ZERO
        for beta in self.facets():
            pairing = sum(b * x for b, x in zip(beta, d))
            if pairing == 0:
                return INF  # the ray stays strictly below this facet forever
            entry = max(entry, 1 / pairing)
        return entry

    def lattice_ideal(self, m) -> MonomialIdeal:
        """Monomial ideal of lattice points in m * region."""
        m = rational(m)
        if m <= 0:
            raise InputError("positive multiple required")
        pts = minimal_lattice_points([(beta, m) for beta in self.facets()], self.nvars)
        return MonomialIdeal(self.nvars, tuple(pts))

    def __eq__(self, other):
        return (isinstance(other, PolyhedralRegion)
                and self.vertices == other.vertices)

    def __hash__(self):
        return hash(self.vertices)

    def __repr__(self):
        tag = "" if self.exact else ", inner-approx"
        return f"PolyhedralRegion({list(self.vertices)}{tag})"


def _minimal_vertex_set(verts):
    """Drop every point lying in the hull of the others plus the orthant."""
    keep = list(verts)
    changed = True
    while changed:
        changed = False
        for v in list(keep):
            others = [w for w in keep if w != v]
            if others and _in_hull_plus_orthant(v, others):
                keep.remove(v)
                changed = True
    return keep


def _in_hull_plus_orthant(point, vertices) -> bool:
    """Exact LP feasibility: point in conv(vertices) + orthant."""
    k, n = len(vertices), len(point)
    matrix, rhs = [], []
    for i in range(n):
        row = [vertices[g][i] for g in range(k)] + \
              [ONE if j == i else ZERO for j in range(n)]
        matrix.append(row)
        rhs.append(point[i])
    matrix.append([ONE] * k + [ZERO] * n)
    rhs.append(ONE)
    objective = [ZERO] * (k + n)
    sol = ratlp.solve(ratlp.LinearProgram.build(objective, matrix, rhs))
    return sol.status is ratlp.LpStatus.OPTIMAL


def _blocker_vertices(vertices):
    """Vertices of {alpha >= 0 : <v, alpha> >= 1 for all v in vertices}.

    Basic-solution enumeration: pick n constraints to make tight among the
    k vertex constraints and n coordinate hyperplanes, solve exactly, keep
    the feasible solutions.
    """
    n = len(vertices[0])
    rows = [(tuple(v), ONE) for v in vertices] + \
           [(tuple(ONE if j == i else ZERO for j in range(n)), ZERO) for i in range(n)]
    found = set()
    for combo in itertools.combinations(range(len(rows)), n):
        mat = [rows[i][0] for i in combo]
        rhs = [rows[i][1] for i in combo]
        sol = ratlp.solve_square_system(mat, rhs)
        if sol is None or any(x < 0 for x in sol):
            continue
        if all(sum(b * x for b, x in zip(v, sol)) >= 1 for v in vertices):
            found.add(tuple(sol))
    # keep only normals that support the region: drop dominated duplicates
    out = []
    for alpha in sorted(found):
        if not any(alpha != beta and all(a >= b for a, b in zip(alpha, beta)) and beta
                   for beta in found):
            out.append(alpha)
    return out


class OracleRegion(NewtonRegion):
    """Region given by a membership callback (exact on rational points when
    possible) plus an optional closed-form support callback.

    Callers must guarantee convexity, closedness and upward closure. All
    numeric answers carry the bisection tolerance used.
    """

    def __init__(self, nvars: int, member: Callable, name: str = "oracle",
                 support_fn: Callable | None = None, tol: float = 1e-12):
        self.nvars = nvars
        self.member = member
        self.name = name
        self._support_fn = support_fn
        self.tol = tol
        self.exact = False

    def contains(self, point) -> bool:
        return bool(self.member(tuple(rational(x) for x in point)))

    def interior_contains(self, point) -> bool:
        p = [rational(x) for x in point]
        if any(x <= 0 for x in p):
            return False
        eps = Fraction(1)
        # upward closure: interior iff some downward perturbation stays inside
        for _ in range(64):
            if min(p) - eps > 0 and self.member(tuple(x - eps for x in p)):
                return True
            eps /= 2
        return False

    def ray_entry(self, direction) -> float:
        lo, hi = self.ray_entry_interval(direction)
        return float((lo + hi) / 2)

    def ray_entry_interval(self, direction) -> tuple[Fraction, Fraction]:
        """Certified bracket [lo, hi] around the entry parameter, with
        member(hi * d) true and member(lo * d) false, of width <= tol."""
        d = tuple(rational(x) for x in direction)
        if all(x == 0 for x in d):
            raise InputError("zero direction")
        hi = ONE
        for _ in range(128):
            if self.member(tuple(hi * x for x in d)):
                break
            hi *= 2
        else:
            raise ComputationError(f"ray never enters region {self.name}")
        lo = ZERO
        if self.member((ZERO,) * self.nvars):
            return ZERO, ZERO
        while hi - lo > Fraction(self.tol).limit_denominator(10**18):
            mid = (lo + hi) / 2
            if self.member(tuple(mid * x for x in d)):
                hi = mid
            else:
                lo = mid
        return lo, hi

    def support(self, alpha) -> float:
        a = [float(x) for x in alpha]
        if any(x < 0 for x in a):
            raise InputError("support direction must be nonnegative")
        if self._support_fn is not None:
            return float(self._support_fn(alpha))
        if self.nvars != 2:
            raise UnsupportedOperationError(
                "generic oracle support search implemented for 2 variables only")
        return _support_by_search_2d(self, a[0], a[1])


def _lower_boundary_2d(region: OracleRegion, x: float) -> float:
    """min {y >= 0 : (x, y) in region}, by doubling + bisection."""
    fx = Fraction(x).limit_denominator(10**12)
    if region.member((fx, ZERO)):
        return 0.0
    hi = ONE
    for _ in range(256):
        if region.member((fx, hi)):
            break
        hi *= 2
    else:
        raise ComputationError("no boundary above x")
    lo = ZERO
    tol = Fraction(region.tol).limit_denominator(10**18)
    while hi - lo > tol:
        mid = (lo + hi) / 2
        if region.member((fx, mid)):
            hi = mid
        else:
            lo = mid
    return float(hi)


def _support_by_search_2d(region: OracleRegion, a: float, b: float) -> float:
    """inf of a*x + b*y over the region: golden-section over the convex
    lower boundary. Purely membership-driven."""
    if a == 0 and b == 0:
        return 0.0

    def g(x):
        return a * x + b * _lower_boundary_2d(region, x)

    lo, hi = 0.0, 1.0
    for _ in range(200):
        if g(2 * hi) >= g(hi) - region.tol:
            hi *= 2  # convexity puts the minimum inside [0, 2*hi]
            break
        hi *= 2
    else:
        raise ComputationError("support search failed to bracket a minimum")
    phi = (math.sqrt(5) - 1) / 2
    x1, x2 = hi - phi * (hi - lo), lo + phi * (hi - lo)
    g1, g2 = g(x1), g(x2)
    for _ in range(400):
        if hi - lo < max(region.tol, 1e-15):
            break
        if g1 <= g2:
            hi, x2, g2 = x2, x1, g1
            x1 = hi - phi * (hi - lo)
            g1 = g(x1)
        else:
            lo, x1, g1 = x1, x2, g2
            x2 = lo + phi * (hi - lo)
            g2 = g(x2)
    return min(g1, g2)


def shifted_hyperbola_region(tol: float = 1e-12) -> OracleRegion:
    """Built-in demo region {(x, y) >= 0 : (x + 1) * y >= 1}.

    Convex, closed, upward closed, non-polyhedral; its threshold data is
    irrational, which exercises every approximate code path.
    """
    def member(p):
        x, y = p
        return x >= 0 and y >= 0 and (x + 1) * y >= 1

    return OracleRegion(2, member, name="example8", tol=tol)


BUILTIN_REGIONS: dict[str, Callable[[], OracleRegion]] = {
    "example8": shifted_hyperbola_region,
}


def newton_polyhedron(a: MonomialIdeal) -> PolyhedralRegion:
    """Newton region of a nonzero monomial ideal: hull of its exponents
    plus the orthant, with only the extreme generators kept as vertices."""
    if a.is_zero:
        raise InputError("the zero ideal has no Newton region")
    return PolyhedralRegion(a.gens)


def minkowski_sum(p: PolyhedralRegion, q: PolyhedralRegion) -> PolyhedralRegion:
    if not isinstance(p, PolyhedralRegion):
        raise UnsupportedOperationError("Minkowski sum needs polyhedral operands")
    return p.minkowski(q)


def support_value(region: NewtonRegion, alpha):
    return region.support(alpha)


# ---------------------------------------------------------------------------
# graded sequences of monomial ideals

class GradedSequence:
    """Rule m -> a_m with a_p * a_q contained in a_{p+q}."""

    nvars: int

    def ideal_at(self, m: int) -> MonomialIdeal:
        raise NotImplementedError

    def limit_region(self, window: int = 16) -> NewtonRegion:
        raise NotImplementedError

    @property
    def exact_region(self) -> bool:
        return True

    def check_graded(self, window: int = 8):
        """Verify a_p * a_q inside a_{p+q} on every pair in the window."""
        for p in range(1, window):
            for q in range(p, window - p + 1):
                left = self.ideal_at(p) * self.ideal_at(q)
                if not self.ideal_at(p + q).contains(left):
                    raise ComputationError(f"graded property fails at ({p}, {q})")


class PowerSequence(GradedSequence):
    """a_m = a^m for a fixed nonzero monomial ideal a."""

    def __init__(self, ideal: MonomialIdeal):
        if ideal.is_zero:
            raise InputError("power sequence of the zero ideal")
        self.ideal = ideal
        self.nvars = ideal.nvars
        self._powers = {0: MonomialIdeal.unit(ideal.nvars), 1: ideal}

    def ideal_at(self, m: int) -> MonomialIdeal:
        if m < 0:
            raise InputError("negative index")
        if m not in self._powers:
            self._powers[m] = self.ideal_at(m - 1) * self.ideal
        return self._powers[m]

    def limit_region(self, window: int = 16) -> PolyhedralRegion:
        # powers scale the Newton region linearly, so the limit is exact
        return newton_polyhedron(self.ideal)

    def __repr__(self):
        return f"PowerSequence({self.ideal})"


class ValuationIdealSequence(GradedSequence):
    """a_m = ideal of monomials with <alpha, u> >= m, alpha > 0 rational."""

    def __init__(self, alpha):
        self.alpha = tuple(rational(a) for a in alpha)
        if any(a <= 0 for a in self.alpha):
            raise InputError("valuation ideals need strictly positive weights "
                             "(zero weight means the center is not the origin)")
        self.nvars = len(self.alpha)

    def ideal_at(self, m: int) -> MonomialIdeal:
        if m < 0:
            raise InputError("negative index")
        if m == 0:
            return MonomialIdeal.unit(self.nvars)
        pts = minimal_lattice_points([(self.alpha, Fraction(m))], self.nvars)
        return MonomialIdeal(self.nvars, tuple(pts))

    def limit_region(self, window: int = 16) -> PolyhedralRegion:
        verts = [tuple(1 / a if i == j else ZERO for j, a in enumerate(self.alpha))
                 for i in range(self.nvars)]
        return PolyhedralRegion(verts, _skip_minimality=True)

    def __repr__(self):
        return f"ValuationIdealSequence({self.alpha})"


class RegionSequence(GradedSequence):
    """a_m = monomials with exponent in m * region."""

    def __init__(self, region: NewtonRegion):
        self.region = region
        self.nvars = region.nvars

    def ideal_at(self, m: int) -> MonomialIdeal:
        if m < 0:
            raise InputError("negative index")
        if m == 0:
            return MonomialIdeal.unit(self.nvars)
        if isinstance(self.region, PolyhedralRegion):
            return self.region.lattice_ideal(m)
        raise UnsupportedOperationError(
            "lattice enumeration on an oracle region is not supported; "
            "query the region directly")

    def limit_region(self, window: int = 16) -> NewtonRegion:
        return self.region

    @property
    def exact_region(self) -> bool:
        return self.region.exact or isinstance(self.region, OracleRegion)

    def __repr__(self):
        return f"RegionSequence({self.region!r})"


class TableSequence(GradedSequence):
    """Finite prefix a_1..a_L completed multiplicatively: beyond the prefix,
    a_m is the sum of all products a_{i1} ... a_{ik} over compositions of m.

    The completion is the smallest graded sequence containing the prefix;
    its limit region is reported as an inner approximation over a window.
    """

    def __init__(self, prefix: Sequence[MonomialIdeal]):
        if not prefix:
            raise InputError("empty table")
        self.nvars = prefix[0].nvars
        if any(a.nvars != self.nvars for a in prefix):
            raise InputError("mixed variable counts in table")
        self.prefix = tuple(prefix)
        self._cache: dict[int, MonomialIdeal] = {0: MonomialIdeal.unit(self.nvars)}
        for p in range(2, len(prefix) + 1):
            for q in range(1, p):
                if p - q <= len(prefix) and q <= len(prefix):
                    prod = prefix[q - 1] * prefix[p - q - 1]
                    if not prefix[p - 1].contains(prod):
                        raise InputError(f"table is not graded at ({q}, {p - q})")

    def ideal_at(self, m: int) -> MonomialIdeal:
        if m < 0:
            raise InputError("negative index")
        if m not in self._cache:
            if m <= len(self.prefix):
                self._cache[m] = self.prefix[m - 1]
            else:
                acc = MonomialIdeal.zero(self.nvars)
                for i in range(1, min(m, len(self.prefix)) + 1):
                    acc = acc + self.prefix[i - 1] * self.ideal_at(m - i)
                self._cache[m] = acc
        return self._cache[m]

    def limit_region(self, window: int = 16) -> PolyhedralRegion:
        verts = []
        for m in range(1, window + 1):
            am = self.ideal_at(m)
            if am.is_zero:
                continue
            for u in newton_polyhedron(am).vertices:
                verts.append(tuple(Fraction(x, m) for x in u))
        if not verts:
            raise ComputationError("all ideals in the window are zero")
        return PolyhedralRegion(verts, exact=False)

    @property
    def exact_region(self) -> bool:
        return False

    def __repr__(self):
        return f"TableSequence(len={len(self.prefix)})"


def val_on_sequence(v: MonomialValuation, seq: GradedSequence, window: int = 16):
    """Value of a monomial valuation on a graded sequence.

    Exact (Fraction) for sequence kinds with an exact limit region; float
    for oracle regions; for table sequences the value is the windowed
    minimum of val(a_m)/m, an upper bound for the true limit.
    """
    region = seq.limit_region(window)
    return region.support(v.alpha)


def val_on_sequence_windowed(v: MonomialValuation, seq: GradedSequence, window: int):
    """min over 1 <= m <= window of val(a_m)/m together with its trace.

    By subadditivity of m -> val(a_m) the minimum is nonincreasing along
    multiplicative subsequences and bounds the limit value from above.
    """
    trace = []
    best = INF
    argmin = None
    for m in range(1, window + 1):
        am = seq.ideal_at(m)
        if am.is_zero:
            trace.append((m, INF))
            continue
        value = v.of_ideal(am) / m
        trace.append((m, value))
        if value < best:
            best, argmin = value, m
    if argmin is None:
        raise ComputationError("no nonzero ideal in the window")
    return best, argmin, trace
