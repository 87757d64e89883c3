"""Two-dimensional valuation engine over the plane k[x, y].

Three families of valuations centered at the origin are represented:

* monomial valuations (weights on x and y);
* truncations of a Puiseux-type branch y = c_1 x^(beta_1) + c_2 x^(beta_2)
  + ..., where the level-n valuation substitutes the first n-1 terms plus a
  generic tail theta * x^(beta_n) and reads off the lowest x-power whose
  coefficient is nonzero as a polynomial in the generic tags;
* point-blowup chains recorded by coprime pairs (r_j, s_j), r_j >= 2: each
  step picks a branch point on the last exceptional curve, and the derived
  per-divisor bookkeeping (log discrepancy A, multiplicity b of the origin
  ideal) follows the two blowup rules
      free point on a divisor (A1, b1):      new divisor (A1 + 1, b1),
      intersection of (A1, b1) and (A2, b2): new divisor (A1 + A2, b1 + b2),
  with the mediant walk of the continued-fraction expansion of s_j/r_j
  driving which rule applies. The walk is replayed at construction time and
  cross-checked against the closed linear recursion A_{j+1} = r_j A_j + s_j,
  b_{j+1} = r_j b_j, which is the unimodular-coordinate-change identity.

Level-n values of chain valuations are computed by an exact generic-series
substitution, never by floating point: coefficients are polynomials over Q
in the generic tags, and "nonzero" means nonzero as a polynomial.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import ComputationError, InputError
from .newton import INF, GradedSequence, MonomialIdeal, MonomialValuation, PolyhedralRegion
from .ratlp import ZERO, ONE, rational


# ---------------------------------------------------------------------------
# polynomials in x, y

class Polynomial2:
    """Polynomial in two variables with rational coefficients, stored as a
    support map exponent -> nonzero coefficient."""

    def __init__(self, terms):
        support = {}
        for (i, j), c in dict(terms).items():
            c = rational(c)
            if c != 0:
                support[(int(i), int(j))] = c
        for (i, j) in support:
            if i < 0 or j < 0:
                raise InputError("negative exponent in polynomial")
        self.support = support

    @staticmethod
    def from_terms(pairs) -> "Polynomial2":
        acc: dict = {}
        for u, c in pairs:
            key = (int(u[0]), int(u[1]))
            acc[key] = acc.get(key, ZERO) + rational(c)
        return Polynomial2(acc)

    @property
    def is_zero(self) -> bool:
        return not self.support

    def total_degree(self) -> int:
        if self.is_zero:
            raise InputError("zero polynomial has no degree")
        return max(i + j for i, j in self.support)

    def order_at_origin(self):
        if self.is_zero:
            return INF
        return min(i + j for i, j in self.support)

    def support_exponents(self):
        return sorted(self.support)

    def __repr__(self):
        return f"Polynomial2({self.support})"


def eval_monomial(alpha, f: Polynomial2):
    """Value of the monomial valuation with the given weights: the minimum
    of <alpha, exponent> over the support (+inf on the zero polynomial).
    Distinct monomials never cancel under a monomial valuation."""
    a = tuple(rational(w) for w in alpha)
    if any(w < 0 for w in a):
        raise InputError("weights must be nonnegative")
    if f.is_zero:
        return INF
    return min(a[0] * i + a[1] * j for i, j in f.support)


# ---------------------------------------------------------------------------
# polynomials in generic tags (exact "generic coefficient" arithmetic)

class GenericPoly:
    """Multivariate polynomial over Q in countably many generic tags.

    Keys are sorted tuples of (tag index, power); the empty tuple is the
    constant monomial. Only used as coefficient arithmetic for series
    substitution, so the API is minimal.
    """

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = {k: v for k, v in (terms or {}).items() if v != 0}

    @staticmethod
    def const(c) -> "GenericPoly":
        c = rational(c)
        return GenericPoly({(): c} if c != 0 else {})

    @staticmethod
    def tag(index: int) -> "GenericPoly":
        return GenericPoly({((index, 1),): ONE})

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: "GenericPoly") -> "GenericPoly":
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, ZERO) + v
        return GenericPoly(out)

    def __mul__(self, other: "GenericPoly") -> "GenericPoly":
        out: dict = {}
        for k1, v1 in self.terms.items():
            for k2, v2 in other.terms.items():
                k = _merge_tags(k1, k2)
                out[k] = out.get(k, ZERO) + v1 * v2
        return GenericPoly(out)

    def scale(self, c) -> "GenericPoly":
        c = rational(c)
        return GenericPoly({k: c * v for k, v in self.terms.items()})

    def __eq__(self, other):
        return isinstance(other, GenericPoly) and self.terms == other.terms

    def __repr__(self):
        return f"GenericPoly({self.terms})"


def _merge_tags(k1, k2):
    acc: dict = {}
    for idx, p in itertools.chain(k1, k2):
        acc[idx] = acc.get(idx, 0) + p
    return tuple(sorted(acc.items()))


class _Series:
    """Finite generalized power series sum of coeff * t^exponent with
    Fraction exponents and GenericPoly coefficients."""

    def __init__(self, terms: dict):
        self.terms = {e: c for e, c in terms.items() if not c.is_zero}

    def __mul__(self, other: "_Series") -> "_Series":
        out: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = e1 + e2
                prod = c1 * c2
                out[e] = out[e] + prod if e in out else prod
        return _Series(out)

    def power(self, k: int, cache: dict) -> "_Series":
        if k in cache:
            return cache[k]
        if k == 0:
            out = _Series({ZERO: GenericPoly.const(1)})
        else:
            out = self.power(k - 1, cache) * self
        cache[k] = out
        return out


def _substitute(f: Polynomial2, series_terms, series_on_x: bool):
    """Order in t of f after substituting a finite generic series for one
    variable and t for the other. series_terms: list of (exponent, coeff)."""
    if f.is_zero:
        return INF
    series = _Series({rational(e): c for e, c in series_terms})
    cache: dict = {}
    total: dict = {}
    for (i, j), coeff in f.support.items():
        sub_pow, plain_pow = (i, j) if series_on_x else (j, i)
        part = series.power(sub_pow, cache)
        for e, c in part.terms.items():
            key = e + plain_pow
            add = c.scale(coeff)
            total[key] = total[key] + add if key in total else add
    finite = [e for e, c in total.items() if not c.is_zero]
    if not finite:
        raise ComputationError("generic substitution vanished identically")
    return min(finite)


# ---------------------------------------------------------------------------
# branch approximations

@dataclass(frozen=True)
class PuiseuxValue:
    value: Fraction
    level: int
    stable: bool
    lattice: int          # multiplicity ladder value b at this level
    tail_exponent: Fraction


class PuiseuxData:
    """Branch data y = c_1 x^(b_1) + c_2 x^(b_2) + ... with strictly
    increasing rational exponents, b_1 >= 1, and nonzero coefficients.

    The object denotes the approximation tower, not the curve itself: the
    level-n valuation substitutes the first n-1 terms plus a generic tail
    at exponent b_n, so every level stays a finite-valued quasi-monomial
    valuation. Levels run 1..len(exponents); level 0 is vanishing order at
    the origin.
    """

    def __init__(self, exponents, coefficients):
        self.exponents = tuple(rational(b) for b in exponents)
        self.coefficients = tuple(rational(c) for c in coefficients)
        if len(self.exponents) != len(self.coefficients):
            raise InputError("exponents and coefficients differ in length")
        if not self.exponents:
            raise InputError("at least one exponent is required")
        if self.exponents[0] < 1:
            raise InputError("first exponent must be >= 1")
        if any(b2 <= b1 for b1, b2 in zip(self.exponents, self.exponents[1:])):
            raise InputError("exponents must be strictly increasing")
        if any(c == 0 for c in self.coefficients):
            raise InputError("coefficients must be nonzero")

    @property
    def max_level(self) -> int:
        return len(self.exponents)

    def lattice_at(self, n: int) -> int:
        """Denominator lattice b_n = lcm of the first n exponent denominators."""
        if n == 0:
            return 1
        return math.lcm(*(b.denominator for b in self.exponents[:n]))

    def retraction(self, n: int):
        """Weights of the monomial valuation with the same values on x, y."""
        if n == 0:
            return (ONE, ONE)
        return (ONE, self.exponents[0])

    def log_discrepancy_level(self, n: int) -> Fraction:
        """A at level n; equals 1 + (level exponent) for branches in this
        orientation, by the free-point slope rule validated in the tests."""
        if n == 0:
            return Fraction(2)
        return 1 + self.exponents[n - 1]

    def series_terms(self, n: int):
        terms = [(self.exponents[j], GenericPoly.const(self.coefficients[j]))
                 for j in range(n - 1)]
        terms.append((self.exponents[n - 1], GenericPoly.tag(n - 1)))
        return terms

    def evaluate(self, f: Polynomial2, n: int):
        """Level-n value of f; +inf sentinel on the zero polynomial."""
        if f.is_zero:
            return INF
        if n == 0:
            return Fraction(f.order_at_origin())
        if n > self.max_level:
            raise InputError(f"level {n} beyond available data ({self.max_level})")
        return _substitute(f, self.series_terms(n), series_on_x=False)


def eval_puiseux(data: PuiseuxData, f: Polynomial2, level: int | None = None,
                 budget: int | None = None) -> PuiseuxValue:
    """Evaluate a branch approximation on f with a stability certificate.

    With an explicit level, computes that level and reports whether the
    lattice ladder already exceeds deg f (from then on the value cannot
    move). With a budget, walks levels up from 1 until the certificate
    fires or the budget/data runs out; in the latter case stable=False and
    the last value is returned.
    """
    if f.is_zero:
        raise InputError("zero polynomial has no branch value")
    deg = f.total_degree()
    if level is not None:
        value = data.evaluate(f, level)
        b = data.lattice_at(level)
        return PuiseuxValue(value, level, b > deg, b, data.exponents[level - 1])
    top = min(budget if budget is not None else data.max_level, data.max_level)
    value = None
    for n in range(1, top + 1):
        value = data.evaluate(f, n)
        b = data.lattice_at(n)
        if b > deg:
            return PuiseuxValue(value, n, True, b, data.exponents[n - 1])
    if value is None:
        raise InputError("empty evaluation budget")
    return PuiseuxValue(value, top, False, data.lattice_at(top),
                        data.exponents[top - 1])


# ---------------------------------------------------------------------------
# blowup chains

@dataclass(frozen=True)
class DivisorRecord:
    """Per-divisor bookkeeping: log discrepancy A over the plane and
    multiplicity b of the origin ideal along the divisor."""

    a: Fraction
    b: Fraction

    def __add__(self, other):
        return DivisorRecord(self.a + other.a, self.b + other.b)

    def times(self, k):
        return DivisorRecord(k * self.a, k * self.b)


def _mediant_walk(target_r: int, target_s: int, rec_z: DivisorRecord,
                  rec_w: DivisorRecord):
    """Replay the point blowups of the continued-fraction path from the
    coordinate cross (z, w) to the divisor with local weights (r, s).

    Returns (record of the final divisor, list of visited rays). Each step
    blows up the intersection point of the two current boundary divisors;
    the records add, and the local weight vectors follow the mediant rule.
    """
    left, right = (1, 0), (0, 1)
    rec_left, rec_right = rec_z, rec_w
    visited = []
    for _ in range(target_r + target_s + 1):
        ray = (left[0] + right[0], left[1] + right[1])
        rec = rec_left + rec_right
        visited.append(ray)
        if ray == (target_r, target_s):
            return rec, visited
        # det tells on which side of the new ray the target lies
        if ray[0] * target_s - ray[1] * target_r > 0:
            left, rec_left = ray, rec
        else:
            right, rec_right = ray, rec
    raise ComputationError("mediant walk failed to reach the target weights")


class SkpChain:
    """A sequence of branch points over the plane, one per coprime pair
    (r_j, s_j) with r_j >= 2, together with derived per-level data.

    Level 0 is the vanishing order at the origin (divisor record (2, 1)
    for the first exceptional curve). The level-n valuation is monomial in
    adapted coordinates at the level-(n-1) point and is normalized to take
    value 1 on the maximal ideal; the associated integer divisor has
    record (A_n, b_n).

    The canonical chain orientation follows the branch x = series in y, so
    the level-n values on x and y are (1 + s_0/r_0, 1) for n >= 1.
    """

    def __init__(self, steps):
        parsed = []
        for r, s in steps:
            r, s = int(r), int(s)
            if r < 2 or s < 1 or math.gcd(r, s) != 1:
                raise InputError(f"invalid chain step ({r}, {s}): need r >= 2, "
                                 f"s >= 1, gcd(r, s) = 1")
            parsed.append((r, s))
        self.steps = tuple(parsed)
        self.records = [DivisorRecord(Fraction(2), Fraction(1))]
        germ = DivisorRecord(Fraction(1), Fraction(0))
        for j, (r, s) in enumerate(self.steps):
            walked, rays = _mediant_walk(r, s, self.records[j], germ)
            closed = self.records[j].times(r) + germ.times(s)
            if walked != closed:
                raise ComputationError(
                    f"blowup walk and linear recursion disagree at step {j}")
            for u, v in zip(rays, rays[1:]):
                if abs(u[0] * v[1] - u[1] * v[0]) != 1:
                    raise ComputationError("nonunimodular step in the walk")
            self.records.append(walked)

    @property
    def max_level(self) -> int:
        return len(self.steps)

    def record_at(self, n: int) -> DivisorRecord:
        """Divisor record (A_n, b_n) of the n-th exceptional curve."""
        if not 0 <= n <= self.max_level:
            raise InputError(f"level {n} out of range")
        return self.records[n]

    def b_of(self, n: int) -> int:
        return int(self.record_at(n).b)

    def lattice_at(self, n: int) -> int:
        return self.b_of(n)

    def log_discrepancy_level(self, n: int) -> Fraction:
        rec = self.record_at(n)
        return rec.a / rec.b

    def retraction(self, n: int):
        if n == 0:
            return (ONE, ONE)
        r0, s0 = self.steps[0]
        return (1 + Fraction(s0, r0), ONE)

    def series_exponents(self, n: int):
        """Exponents of the branch x = sum theta_j y^(e_j) through level n."""
        r0, s0 = self.steps[0]
        exps = [1 + Fraction(s0, r0)]
        for j in range(1, n):
            r, s = self.steps[j]
            exps.append(exps[-1] + Fraction(s, self.b_of(j + 1)))
        return exps

    def evaluate(self, f: Polynomial2, n: int):
        """Level-n value of f, by generic series substitution."""
        if f.is_zero:
            return INF
        if n == 0:
            return Fraction(f.order_at_origin())
        if n > self.max_level:
            raise InputError(f"level {n} beyond chain depth {self.max_level}")
        terms = [(e, GenericPoly.tag(j)) for j, e in enumerate(self.series_exponents(n))]
        return _substitute(f, terms, series_on_x=True)

    def __repr__(self):
        return f"SkpChain({list(self.steps)})"


def build_chain(steps) -> SkpChain:
    return SkpChain(steps)


def log_discrepancy(chain: SkpChain, level: int, alpha_local) -> Fraction:
    """A of the monomial valuation with the given local weights in the
    adapted coordinates at the given level.

    Level 0 means the plane itself (both coordinate axes have A = 1);
    level n >= 1 means the chart at the level-(n-1) point, whose boundary
    pair is the (n-1)-st exceptional curve and a transverse germ (A = 1).
    """
    a, b = (rational(x) for x in alpha_local)
    if a < 0 or b < 0:
        raise InputError("local weights must be nonnegative")
    if level == 0:
        return a + b
    if not 1 <= level <= chain.max_level + 1:
        raise InputError(f"level {level} out of range")
    return a * chain.record_at(level - 1).a + b


def retraction_monomial(v, level: int | None = None):
    """Weights (v(x), v(y)) of the monomial valuation matching v on the
    coordinates. Identity on monomial valuations; branch data and chains
    report their level retraction."""
    if isinstance(v, MonomialValuation):
        return v.alpha
    if isinstance(v, (PuiseuxData, SkpChain)):
        if level is None:
            raise InputError("level required for staged valuations")
        return v.retraction(level)
    raise InputError(f"cannot retract {type(v).__name__}")


# ---------------------------------------------------------------------------
# ratio traces

@dataclass(frozen=True)
class ChiRow:
    level: int
    seq_value: Fraction
    log_discrepancy: Fraction
    q_value: Fraction
    chi: Fraction


@dataclass(frozen=True)
class ChiTrace:
    rows: tuple[ChiRow, ...]
    strict_decrease_from: int | None
    q_values_monotone: bool

    @property
    def chis(self):
        return [r.chi for r in self.rows]


def chi_trace(source, seq: GradedSequence, q, n_max: int, window: int = 16) -> ChiTrace:
    """Per-level ratios value(sequence) / (A + value(q)) for the staged
    valuations of a chain or branch.

    The sequence must have an exact polyhedral limit region so every ratio
    is an exact Fraction. q is a monomial ideal or a Polynomial2 (treated
    as the principal ideal it generates, evaluated by substitution).
    Reports the first level after which the trace strictly decreases to
    the end, and whether the q-values are nondecreasing in the level.
    """
    region = seq.limit_region(window)
    if not isinstance(region, PolyhedralRegion) or not region.exact:
        raise InputError("ratio traces need an exact polyhedral limit region")
    n_max = min(n_max, source.max_level)
    rows = []
    for n in range(n_max + 1):
        alpha = source.retraction(n)
        seq_value = region.support(alpha)
        a_val = source.log_discrepancy_level(n)
        if isinstance(q, MonomialIdeal):
            if q.is_zero:
                raise InputError("q must be nonzero")
            if q.is_unit:
                q_value = ZERO
            else:
                q_value = min(source.evaluate(_monomial_poly(u), n) for u in q.gens)
        elif isinstance(q, Polynomial2):
            q_value = source.evaluate(q, n)
        else:
            raise InputError("q must be a monomial ideal or a polynomial")
        rows.append(ChiRow(n, seq_value, a_val, q_value,
                           seq_value / (a_val + q_value)))
    chis = [r.chi for r in rows]
    start = None
    for k in range(len(chis)):
        if all(chis[i] > chis[i + 1] for i in range(k, len(chis) - 1)):
            start = k
            break
    qvals = [r.q_value for r in rows]
    monotone = all(a <= b for a, b in zip(qvals, qvals[1:]))
    return ChiTrace(tuple(rows), start, monotone)


def _monomial_poly(u) -> Polynomial2:
    return Polynomial2({(u[0], u[1]): ONE})


# ---------------------------------------------------------------------------
# regular fans in the plane

@dataclass(frozen=True)
class Fan2D:
    """Rays of a regular fan refining the positive quadrant, sorted from
    (1, 0) to (0, 1); adjacent rays span determinant-one cones."""

    rays: tuple

    def __post_init__(self):
        for u, v in zip(self.rays, self.rays[1:]):
            if u[0] * v[1] - u[1] * v[0] != 1:
                raise InputError(f"non-regular cone between {u} and {v}")

    def cone_containing(self, alpha):
        """Adjacent ray pair whose cone contains the direction, plus the
        exact cone coordinates of the direction in that basis."""
        a = tuple(rational(x) for x in alpha)
        for u, v in zip(self.rays, self.rays[1:]):
            c1 = a[0] * v[1] - a[1] * v[0]    # det(alpha, v)
            c2 = u[0] * a[1] - u[1] * a[0]    # det(u, alpha)
            if c1 >= 0 and c2 >= 0:
                return (u, v), (c1, c2)
        raise ComputationError(f"direction {alpha} not in the quadrant")


def _sb_path(r: int, s: int):
    """Stern-Brocot mediants visited between (1,0) and (0,1) on the way to
    the primitive direction (r, s)."""
    left, right = (1, 0), (0, 1)
    visited = []
    while True:
        med = (left[0] + right[0], left[1] + right[1])
        visited.append(med)
        if med == (r, s):
            return visited
        if med[0] * s - med[1] * r > 0:
            left = med
        else:
            right = med


def fan_refine(alpha) -> Fan2D:
    """Smallest regular fan produced by mediant insertion that contains the
    given primitive nonnegative integer direction among its rays."""
    r, s = (int(x) for x in alpha)
    if r < 0 or s < 0 or (r, s) == (0, 0):
        raise InputError("direction must be a nonzero nonnegative pair")
    if math.gcd(r, s) != 1:
        raise InputError(f"direction {alpha} is not primitive; scale it down")
    rays = {(1, 0), (0, 1)}
    if r > 0 and s > 0:
        rays.update(_sb_path(r, s))
    ordered = sorted(rays, key=lambda u: (Fraction(u[1], u[0]) if u[0] else INF))
    return Fan2D(tuple(ordered))


def fan_refine_short(alpha) -> Fan2D:
    """Same walk stopped one mediant early, so the target direction lies
    strictly inside a cone instead of on a ray (distinct refinement path)."""
    r, s = (int(x) for x in alpha)
    if math.gcd(r, s) != 1:
        raise InputError(f"direction {alpha} is not primitive")
    rays = {(1, 0), (0, 1)}
    if r > 0 and s > 0:
        path = _sb_path(r, s)
        rays.update(path[:-1])
    ordered = sorted(rays, key=lambda u: (Fraction(u[1], u[0]) if u[0] else INF))
    return Fan2D(tuple(ordered))


def a_invariance_check(alpha) -> dict:
    """Recompute A(val_alpha) = alpha_1 + alpha_2 through fan coordinates.

    The direction is located in a cone of a regular fan, written in the
    unimodular ray basis, and A is re-assembled from the per-ray values
    (each ray's A is its coordinate sum). Done along two different fans:
    one having the direction as a ray, one where it is interior. Returns
    the three values; well-definedness means they agree exactly.
    """
    a = tuple(rational(x) for x in alpha)
    if any(x <= 0 for x in a):
        raise InputError("direction must be strictly positive")
    direct = a[0] + a[1]
    scale = math.lcm(a[0].denominator, a[1].denominator)
    ints = (int(a[0] * scale), int(a[1] * scale))
    g = math.gcd(*ints)
    prim = (ints[0] // g, ints[1] // g)

    values = [direct]
    for fan in (fan_refine(prim), fan_refine_short(prim)):
        (u, v), (c1, c2) = fan.cone_containing(a)
        values.append(c1 * (u[0] + u[1]) + c2 * (v[0] + v[1]))
    return {
        "direct": direct,
        "via_ray_fan": values[1],
        "via_interior_fan": values[2],
        "consistent": values[0] == values[1] == values[2],
    }
