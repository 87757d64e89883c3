import math
import random
from fractions import Fraction as F

import pytest

from lctlab.asymptotics import (
    EnlargedSequence,
    enlarge,
    enlarge_q,
    fekete_limit,
    min_power_of_maximal_inside,
    self_compute_check,
    superadditive_scaled_limit,
    valuation_ideal_sequence,
)
from lctlab.errors import HypothesisViolation, InputError
from lctlab.multiplier import (
    arn_ideal,
    asymptotic_system,
    computing_valuations,
    lct_ideal,
)
from lctlab.newton import (
    MonomialIdeal,
    MonomialValuation,
    PowerSequence,
    minimal_generators,
    val_on_sequence,
)
from conftest import random_primary_ideal


class TestFekete:
    def test_affine_sequence(self):
        report = fekete_limit(lambda m: F(m + 1), window=16)
        assert report.value == F(17, 16)
        assert report.argmin == 16
        scaled = [v for _, v in report.trace]
        assert all(a >= b for a, b in zip(scaled, scaled[1:]))

    def test_ceil_of_pi_approaches_from_above(self):
        report = fekete_limit(lambda m: F(math.ceil(math.pi * m)), window=48)
        assert float(report.value) >= math.pi
        assert float(report.value) - math.pi < 0.01

    def test_homogeneous_values_are_constant(self):
        seq = PowerSequence(minimal_generators([(2, 0), (0, 3)]))
        v = MonomialValuation.of([1, 1])
        report = fekete_limit(lambda m: v.of_ideal(seq.ideal_at(m)), window=10)
        assert report.value == 2
        assert all(val == 2 for _, val in report.trace)

    def test_violation_reported_with_pair(self):
        def bad(m):
            return F(0) if m == 1 else F(5)
        with pytest.raises(HypothesisViolation) as err:
            fekete_limit(bad, window=4)
        assert err.value.witness == (1, 1)

    def test_infinite_entries_allowed(self):
        # finite only on even indices: a semigroup
        def alpha(m):
            return F(m) if m % 2 == 0 else float("inf")
        report = fekete_limit(alpha, window=8)
        assert report.value == 1


class TestSuperadditiveScaled:
    def test_identity(self):
        report = superadditive_scaled_limit(lambda t: t, [F(1, 2), 1, 2, 4])
        assert report.value == 1

    def test_floor_approaches_one(self):
        grid = [F(2 ** k) - F(1, 2) for k in range(1, 6)]
        report = superadditive_scaled_limit(lambda t: F(math.floor(t)), grid)
        assert report.value == F(31, F(63, 2))  # 62/63, closing in on 1
        assert all(math.floor(t) / t <= report.value for t in grid)

    def test_system_values_approach_from_below(self):
        seq = PowerSequence(minimal_generators([(2, 0), (0, 3)]))
        sys_ = asymptotic_system(seq)
        v = MonomialValuation.of([1, 1])
        grid = [1, 2, 4, 8, 16]
        report = superadditive_scaled_limit(
            lambda t: v.of_ideal(sys_.ideal_at(t)), grid)
        assert report.value < 2
        assert 2 - report.value <= F(2, 16) + F(1, 16)  # within A/t of the limit
        # doubling chains certify monotone growth
        for chain in report.doubling_traces:
            scaled = [s for _, s in chain]
            assert all(a <= b for a, b in zip(scaled, scaled[1:]))

    def test_violation_diagnosed(self):
        with pytest.raises(HypothesisViolation):
            superadditive_scaled_limit(lambda t: -t, [1, 2])
        with pytest.raises(HypothesisViolation):
            superadditive_scaled_limit(lambda t: F(1) / t, [1, 2, 4])


class TestValuationIdealSequence:
    def test_examples(self):
        assert valuation_ideal_sequence([1, 1]).ideal_at(2).gens == \
            (MonomialIdeal.maximal(2) ** 2).gens
        assert valuation_ideal_sequence([2, 3]).ideal_at(1).gens == ((0, 1), (1, 0))

    def test_self_value(self):
        seq = valuation_ideal_sequence([1, 1])
        assert val_on_sequence(MonomialValuation.of([1, 1]), seq) == 1

    def test_zero_weight_rejected_with_message(self):
        with pytest.raises(InputError, match="center"):
            valuation_ideal_sequence([2, 0])

    def test_general_self_value_formula(self):
        # value of w on the sequence of v equals the certificate infimum
        # min_i w_i / v_i, witnessed by pure-power ideals
        for v_w, w_w in [((2, 3), (1, 1)), ((1, 2), (3, 1)), ((5, 2), (2, 5))]:
            seq = valuation_ideal_sequence(v_w)
            w = MonomialValuation.of(w_w)
            v = MonomialValuation.of(v_w)
            got = val_on_sequence(w, seq)
            certificates = []
            for i in range(2):
                power = minimal_generators([tuple(1 if j == i else 0 for j in range(2))])
                certificates.append(w.of_ideal(power) / v.of_ideal(power))
            assert got == min(certificates)


class TestSelfCompute:
    def test_balanced_weights(self):
        report = self_compute_check((1, 1), MonomialIdeal.unit(2))
        assert report.attained and report.ratio_valuation == F(1, 2)

    def test_unbalanced_weights(self):
        report = self_compute_check((3, 2), MonomialIdeal.unit(2))
        assert report.attained
        # normalized weights (3/2, 1): value 1 against log discrepancy 5/2
        assert report.ratio_valuation == F(2, 5)

    def test_with_nontrivial_q(self):
        q = minimal_generators([(1, 0)])
        report = self_compute_check((1, 1), q)
        assert report.attained and report.ratio_valuation == F(1, 3)

    def test_cross_check_against_computing_directions(self):
        report = self_compute_check((1, 1), minimal_generators([(1, 0)]))
        seq = valuation_ideal_sequence(report.normalized)
        vals = computing_valuations(seq, (1, 0))
        assert any(v.alpha == report.normalized for v in vals)

    def test_random_weights_always_attain(self):
        rng = random.Random(44)
        for _ in range(20):
            alpha = (rng.randint(1, 9), rng.randint(1, 9))
            q = random_primary_ideal(rng)
            assert self_compute_check(alpha, q).attained


class TestEnlargement:
    def test_materialized_example(self):
        base = PowerSequence(minimal_generators([(1, 0)]))
        c = enlarge(base, 2)
        assert c.ideal_at(1).gens == ((0, 2), (1, 0))  # (x) + m^2

    def test_large_p_reproduces_primary_base(self):
        # once m^p fits inside a, mixing in m^p changes nothing
        rng = random.Random(45)
        for _ in range(5):
            a = random_primary_ideal(rng)
            base = PowerSequence(a)
            p = min_power_of_maximal_inside(a)
            c = enlarge(base, p)
            for j in (1, 2, 3):
                assert c.ideal_at(j).gens == base.ideal_at(j).gens

    def test_enlarged_sequence_is_graded(self):
        base = PowerSequence(minimal_generators([(2, 0), (0, 3)]))
        enlarge(base, 2).check_graded(window=5)

    def test_limit_region_matches_windowed_hull(self):
        base = PowerSequence(minimal_generators([(3, 0), (0, 3)]))
        c = enlarge(base, 1)
        region = c.limit_region()
        # hull of P(base) and 1 * P(m): vertices (1,0),(0,1)
        assert sorted(region.vertices) == [(F(0), F(1)), (F(1), F(0))]
        # windowed inner approximation from materialized ideals stays inside
        for j in (1, 2, 3, 4):
            for u in c.ideal_at(j).gens:
                assert region.contains((F(u[0], j), F(u[1], j)))

    def test_enlarge_q(self):
        assert enlarge_q(MonomialIdeal.unit(2), 5).is_unit
        q = minimal_generators([(4, 0)])
        fat = enlarge_q(q, 2)
        assert fat.gens == ((0, 2), (1, 1), (2, 0))

    def test_threshold_stabilizes_in_p(self):
        rng = random.Random(46)
        q = MonomialIdeal.unit(2)
        for _ in range(6):
            a = random_primary_ideal(rng)
            base = PowerSequence(a)
            target = lct_ideal(base, q)
            values = [lct_ideal(enlarge(base, p), q) for p in range(1, 7)]
            assert all(v1 >= v2 for v1, v2 in zip(values, values[1:]))  # nonincreasing
            assert values[-1] == target  # stabilized at the base threshold

    def test_fattened_q_keeps_threshold(self):
        rng = random.Random(47)
        for _ in range(6):
            a = random_primary_ideal(rng)
            q = random_primary_ideal(rng)
            seq = PowerSequence(a)
            p = min_power_of_maximal_inside(a)
            lam = lct_ideal(seq, q)
            n_big = math.ceil(lam * p)
            assert arn_ideal(seq, q) == arn_ideal(seq, enlarge_q(q, n_big))

    def test_reduction_to_own_valuation_ideals(self):
        # a monomial valuation computing a threshold computes the same value
        # for its own valuation-ideal sequence
        seq = PowerSequence(minimal_generators([(2, 0), (0, 3)]))
        q = MonomialIdeal.unit(2)
        (v,) = computing_valuations(seq, (0, 0))
        arn = arn_ideal(seq, q)
        scale = val_on_sequence(v, seq)
        normalized = tuple(a / scale for a in v.alpha)
        w = MonomialValuation.of(normalized)
        own = valuation_ideal_sequence(normalized)
        assert val_on_sequence(w, own) / (w.log_discrepancy() + w.of_ideal(q)) == arn
        assert arn_ideal(own, q) == arn
