"""Seeded property suites behind the `check` CLI subcommand.

Each suite draws deterministic random instances and verifies one family of
exact invariants, returning (name, passed, detail) triples. The pytest
suite covers the same ground more thoroughly; this module exists so a
deployment can self-test without a test runner.
"""

from __future__ import annotations

import itertools
import random
from fractions import Fraction

from . import ratlp
from .asymptotics import enlarge_q, valuation_ideal_sequence
from .multiplier import (
    arn_ideal,
    arn_monomial,
    asymptotic_system,
    multiplier_ideal,
    ray_entry_lp,
)
from .newton import (
    MonomialIdeal,
    MonomialValuation,
    PowerSequence,
    minimal_generators,
    newton_polyhedron,
    val_on_sequence,
)
from .valspace2d import Polynomial2, SkpChain, a_invariance_check, fan_refine


def _random_ideal(rng, nvars=2, max_exp=4, max_gens=4) -> MonomialIdeal:
    pts = [tuple(rng.randint(0, max_exp) for _ in range(nvars))
           for _ in range(rng.randint(1, max_gens))]
    ideal = minimal_generators(pts, nvars)
    if ideal.is_unit:
        ideal = minimal_generators([tuple(e + 1 for e in u) for u in pts], nvars)
    return ideal


def _random_valuation(rng, nvars=2) -> MonomialValuation:
    return MonomialValuation.of([Fraction(rng.randint(0, 6), rng.randint(1, 3))
                                 for _ in range(nvars)])


def check_lp(seed=7, rounds=40):
    rng = random.Random(seed)
    for k in range(rounds):
        m = rng.randint(1, 3)
        n = rng.randint(m, 5)
        lp = ratlp.LinearProgram.build(
            [rng.randint(-4, 4) for _ in range(n)],
            [[rng.randint(-3, 3) for _ in range(n)] for _ in range(m)],
            [rng.randint(-4, 4) for _ in range(m)])
        sol = ratlp.solve(lp)
        if not ratlp.check_certificate(lp, sol):
            return False, f"certificate failed on instance {k}"
    return True, f"{rounds} random programs certified"


def check_semiring(seed=11, rounds=60):
    rng = random.Random(seed)
    for k in range(rounds):
        a, b = _random_ideal(rng), _random_ideal(rng)
        v = _random_valuation(rng)
        if v.of_ideal(a * b) != v.of_ideal(a) + v.of_ideal(b):
            return False, f"product rule failed at instance {k}"
        if v.of_ideal(a + b) != min(v.of_ideal(a), v.of_ideal(b)):
            return False, f"sum rule failed at instance {k}"
        if a.contains(b) and v.of_ideal(b) < v.of_ideal(a):
            return False, f"order reversal failed at instance {k}"
    return True, f"{rounds} random ideal pairs"


def check_region(seed=13, rounds=25):
    rng = random.Random(seed)
    for k in range(rounds):
        region = newton_polyhedron(_random_ideal(rng))
        for _ in range(6):
            u = tuple(Fraction(rng.randint(0, 12), rng.randint(1, 3)) for _ in range(2))
            if region.interior_contains(u) != region.interior_contains_lp(u):
                return False, f"facet and LP interior tests disagree at {u}, instance {k}"
        d = (rng.randint(0, 3) , rng.randint(0, 3))
        if ray_entry_lp(region, (d[0] + 1, d[1] + 1)) != \
                region.ray_entry((d[0] + 1, d[1] + 1)):
            return False, f"LP and facet ray entries disagree, instance {k}"
    return True, f"{rounds} regions, dual-route interior and entry agree"


def check_graded(seed=17, rounds=12):
    rng = random.Random(seed)
    for k in range(rounds):
        seq = PowerSequence(_random_ideal(rng))
        try:
            seq.check_graded(window=6)
        except Exception as exc:
            return False, f"instance {k}: {exc}"
        alpha = [rng.randint(1, 4), rng.randint(1, 4)]
        vseq = valuation_ideal_sequence(alpha)
        try:
            vseq.check_graded(window=6)
        except Exception as exc:
            return False, f"valuation sequence {alpha}: {exc}"
    return True, f"{rounds} sequences pass the containment law"


def check_multiplier(seed=19, rounds=8):
    rng = random.Random(seed)
    grid = [Fraction(1, 2), 1, Fraction(3, 2)]
    for k in range(rounds):
        seq = PowerSequence(_random_ideal(rng))
        sys = asymptotic_system(seq)
        for lam1, lam2 in itertools.combinations(grid, 2):
            if not sys.ideal_at(lam1).contains(sys.ideal_at(lam2)):
                return False, f"monotonicity failed, instance {k}"
        for s, t in itertools.product(grid, repeat=2):
            if not (sys.ideal_at(s) * sys.ideal_at(t)).contains(sys.ideal_at(s + t)):
                return False, f"subadditivity failed, instance {k}"
    return True, f"{rounds} asymptotic systems"


def check_izumi(seed=23, rounds=40):
    rng = random.Random(seed)
    for k in range(rounds):
        a = _random_ideal(rng)
        alpha = [Fraction(rng.randint(1, 5), rng.randint(1, 2)) for _ in range(2)]
        v = MonomialValuation.of(alpha)
        low = min(alpha) * a.order_at_origin()
        high = sum(alpha) * a.order_at_origin()
        if not low <= v.of_ideal(a) <= high:
            return False, f"bounds failed at instance {k}"
    return True, f"{rounds} ideal/valuation pairs inside the order bounds"


def check_fan(seed=29, rounds=30):
    rng = random.Random(seed)
    import math
    for k in range(rounds):
        p = rng.randint(1, 30)
        q = rng.randint(1, 30)
        g = math.gcd(p, q)
        p, q = p // g, q // g
        fan = fan_refine((p, q))
        for u, v in zip(fan.rays, fan.rays[1:]):
            if u[0] * v[1] - u[1] * v[0] != 1:
                return False, f"determinant failed for ({p},{q})"
        rep = a_invariance_check((p, q))
        if not rep["consistent"]:
            return False, f"log discrepancy not fan-invariant for ({p},{q})"
    return True, f"{rounds} directions, all cones unimodular"


def check_chain(seed=31):
    chain = SkpChain([(2, 1)] * 6)
    for n in range(7):
        if chain.b_of(n) != 2 ** n:
            return False, f"multiplicity ladder broke at level {n}"
    # record recursion against the branch-exponent slope formula
    exps = chain.series_exponents(6)
    for n in range(1, 7):
        if chain.log_discrepancy_level(n) != 1 + exps[n - 1]:
            return False, f"record and slope formulas disagree at level {n}"
    f = Polynomial2({(0, 2): 1, (3, 0): -1})
    values = [chain.evaluate(f, n) for n in range(7)]
    if any(a > b for a, b in zip(values, values[1:])):
        return False, "level values not monotone"
    rng = random.Random(seed)
    for _ in range(5):
        alpha = (rng.randint(1, 6), rng.randint(1, 6))
        seq = valuation_ideal_sequence(alpha)
        v = MonomialValuation.of(alpha)
        if val_on_sequence(v, seq) != 1:
            return False, f"self-value is not 1 for weights {alpha}"
    return True, "ladder, slope formula, monotonicity and self-values verified"


def check_enlargement(seed=37, rounds=5):
    rng = random.Random(seed)
    for k in range(rounds):
        q = _random_ideal(rng)
        if enlarge_q(MonomialIdeal.unit(2), 3).is_unit is False:
            return False, "unit ideal enlargement changed"
        big = enlarge_q(q, 9)
        if not big.contains(q):
            return False, f"enlargement lost the ideal, instance {k}"
    return True, f"{rounds} enlargements contain their bases"


SUITES = {
    "lp": check_lp,
    "semiring": check_semiring,
    "region": check_region,
    "graded": check_graded,
    "multiplier": check_multiplier,
    "izumi": check_izumi,
    "fan": check_fan,
    "chain": check_chain,
    "enlargement": check_enlargement,
}


def run_checks(names=None):
    """Run the named suites (all by default); returns a list of
    (name, passed, detail)."""
    results = []
    for name in names or sorted(SUITES):
        if name not in SUITES:
            results.append((name, False, "unknown suite"))
            continue
        try:
            ok, detail = SUITES[name]()
        except Exception as exc:  # a crash is a failure, not an error
            ok, detail = False, f"crashed: {exc}"
        results.append((name, ok, detail))
    return results
