"""Shared generators and independent oracles for the test suite.

The oracles here deliberately avoid the production code paths: the LP
oracle enumerates basic solutions by Gaussian elimination, and the 2D
geometry oracle builds facets by sorting the staircase, so they can
cross-check the simplex solver and the blocker-based facet enumeration.
"""

import itertools
import random
from fractions import Fraction

import pytest


# ---------------------------------------------------------------------------
# random instance generators

def random_ideal(rng, nvars=2, max_exp=4, max_gens=4, forbid_unit=True):
    from lctlab.newton import minimal_generators
    pts = [tuple(rng.randint(0, max_exp) for _ in range(nvars))
           for _ in range(rng.randint(1, max_gens))]
    ideal = minimal_generators(pts, nvars)
    if forbid_unit and ideal.is_unit:
        pts = [tuple(e + 1 for e in u) for u in pts]
        ideal = minimal_generators(pts, nvars)
    return ideal


def random_primary_ideal(rng, nvars=2, max_exp=4):
    """m-primary: pure powers of every variable plus noise."""
    from lctlab.newton import minimal_generators
    pts = [tuple((rng.randint(1, max_exp) if j == i else 0) for j in range(nvars))
           for i in range(nvars)]
    for _ in range(rng.randint(0, 2)):
        pts.append(tuple(rng.randint(0, max_exp) for _ in range(nvars)))
    ideal = minimal_generators(pts, nvars)
    if ideal.is_unit:
        return random_primary_ideal(rng, nvars, max_exp)
    return ideal


def random_sequence(rng, nvars=2, allow_valuation=True):
    from lctlab.newton import PowerSequence, ValuationIdealSequence
    if allow_valuation and rng.random() < 0.3:
        return ValuationIdealSequence(
            [Fraction(rng.randint(1, 4), rng.randint(1, 2)) for _ in range(nvars)])
    return PowerSequence(random_ideal(rng, nvars))


# ---------------------------------------------------------------------------
# independent LP oracle

def gaussian_solve(matrix, rhs):
    """Row-reduce a square exact system; None when singular."""
    n = len(matrix)
    aug = [list(map(Fraction, row)) + [Fraction(rhs[i])] for i, row in enumerate(matrix)]
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


def reduced_rows(matrix, rhs):
    """Row echelon form of [A|b] with zero rows dropped; None when a zero
    row meets a nonzero right-hand side (inconsistent system)."""
    m = len(matrix)
    n = len(matrix[0]) if m else 0
    aug = [list(map(Fraction, matrix[i])) + [Fraction(rhs[i])] for i in range(m)]
    r = 0
    for col in range(n):
        piv = next((i for i in range(r, m) if aug[i][col] != 0), None)
        if piv is None:
            continue
        aug[r], aug[piv] = aug[piv], aug[r]
        aug[r] = [v / aug[r][col] for v in aug[r]]
        for i in range(m):
            if i != r and aug[i][col] != 0:
                f = aug[i][col]
                aug[i] = [a - f * b for a, b in zip(aug[i], aug[r])]
        r += 1
    for i in range(r, m):
        if aug[i][-1] != 0:
            return None
    return [row[:-1] for row in aug[:r]], [row[-1] for row in aug[:r]]


def enumerate_basic_values(objective, matrix, rhs):
    """Objective values at all basic feasible solutions of Ax=b, x>=0.

    Redundant rows are eliminated first, so the enumeration also covers
    rank-deficient inputs. Empty output certifies infeasibility: a
    nonempty standard-form feasible set, being pointed, always contains a
    basic feasible point.
    """
    reduced = reduced_rows(matrix, rhs)
    if reduced is None:
        return []
    matrix, rhs = reduced
    m, n = len(matrix), len(objective)
    if m == 0:
        return [Fraction(0)]  # x = 0 is the only basic point
    values = []
    for cols in itertools.combinations(range(n), m):
        sub = [[matrix[i][j] for j in cols] for i in range(m)]
        sol = gaussian_solve(sub, rhs)
        if sol is None or any(x < 0 for x in sol):
            continue
        x = [Fraction(0)] * n
        for k, j in enumerate(cols):
            x[j] = sol[k]
        values.append(sum(Fraction(c) * xi for c, xi in zip(objective, x)))
    return values


# ---------------------------------------------------------------------------
# independent 2D polyhedral oracle

def staircase_facets_2d(vertices):
    """Facet inequalities of conv(vertices) + orthant in the plane, by
    sorting the Pareto staircase. Returns (chain, facets) with facets a
    list of (normal, offset) meaning <normal, u> >= offset; axis-parallel
    facets included. Independent of the blocker route."""
    pts = sorted(set((Fraction(x), Fraction(y)) for x, y in vertices))
    frontier = [p for p in pts
                if not any(q != p and q[0] <= p[0] and q[1] <= p[1] for q in pts)]
    frontier.sort()
    hull = []
    for p in frontier:
        while len(hull) >= 2:
            a, b = hull[-2], hull[-1]
            cross = (b[0] - a[0]) * (p[1] - a[1]) - (b[1] - a[1]) * (p[0] - a[0])
            if cross <= 0:
                hull.pop()
            else:
                break
        hull.append(p)
    facets = []
    if hull[0][0] > 0:
        facets.append(((Fraction(1), Fraction(0)), hull[0][0]))
    if hull[-1][1] > 0:
        facets.append(((Fraction(0), Fraction(1)), hull[-1][1]))
    for (x1, y1), (x2, y2) in zip(hull, hull[1:]):
        normal = (y1 - y2, x2 - x1)
        facets.append((normal, normal[0] * x1 + normal[1] * y1))
    return hull, facets


def ray_entry_2d_oracle(vertices, direction):
    """Entry parameter of the ray t*direction (direction > 0) into
    conv(vertices)+orthant, via the staircase facets."""
    _, facets = staircase_facets_2d(vertices)
    entry = Fraction(0)
    for normal, offset in facets:
        pairing = normal[0] * Fraction(direction[0]) + normal[1] * Fraction(direction[1])
        if pairing > 0:
            entry = max(entry, offset / pairing)
    return entry


def membership_2d_oracle(vertices, point):
    _, facets = staircase_facets_2d(vertices)
    x, y = Fraction(point[0]), Fraction(point[1])
    if x < 0 or y < 0:
        return False
    return all(n[0] * x + n[1] * y >= c for n, c in facets)


@pytest.fixture
def rng():
    return random.Random(20260810)
