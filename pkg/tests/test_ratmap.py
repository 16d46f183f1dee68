"""Maps over K: resultants, normalization, conjugation, reduction, iteration."""

from fractions import Fraction as F

import pytest

from ratfam import (
    INFINITY,
    AllZeroMap,
    ConjugationMatrix,
    DegenerateMap,
    PuiseuxSeries,
    new_map,
    sylvester_resultant,
)
from ratfam.ratmap import det_bareiss, det_naive, sylvester_matrix
from conftest import make_map, make_matrix, make_series

t = PuiseuxSeries.t_power(1)
one = PuiseuxSeries.constant(1)
zero = PuiseuxSeries.zero()
half = F(1, 2)


def boundary_map():
    """(z - t) / (t^-1 z + 1), the degree-1 desk example."""
    return new_map([one, -t], [t**-1, one])


def z_squared():
    return new_map([1, 0, 0], [0, 0, 1])


class TestNewMap:
    def test_normalization_scales_to_min_valuation_zero(self):
        f = boundary_map()
        assert [c.to_expr() for c in f.a] == ["t", "-t^2"]
        assert [c.to_expr() for c in f.b] == ["1", "t"]

    def test_integral_map_unchanged(self):
        f = z_squared()
        assert f.ord_res() == 0
        assert f.a[0] == one and f.b[2] == one

    def test_common_factor_rejected(self):
        with pytest.raises(DegenerateMap):
            new_map([1, 1], [1, 1])

    def test_all_zero_rejected(self):
        with pytest.raises(AllZeroMap):
            new_map([zero, zero], [zero, zero])

    def test_degree_argument_checked(self):
        with pytest.raises(ValueError):
            new_map([1, 0], [0, 1], d=2)


class TestResultant:
    def test_degree_one_is_two_by_two_determinant(self, rng):
        for _ in range(20):
            a = [make_series(rng, allow_zero=False) for _ in range(2)]
            b = [make_series(rng, allow_zero=False) for _ in range(2)]
            assert sylvester_resultant(a, b) == a[0] * b[1] - a[1] * b[0]

    def test_paper_family_resultant(self):
        res = sylvester_resultant([one, -t], [t**-1, one])
        assert res == PuiseuxSeries.constant(2)

    def test_degree_two_against_classical_formula(self, rng):
        for _ in range(20):
            a = [make_series(rng, allow_zero=False) for _ in range(3)]
            b = [make_series(rng, allow_zero=False) for _ in range(3)]
            formula = (a[0] * b[2] - a[2] * b[0]) ** 2 - (a[0] * b[1] - a[1] * b[0]) * (
                a[1] * b[2] - a[2] * b[1]
            )
            assert sylvester_resultant(a, b).agrees(formula)

    def test_quadratic_example(self):
        res = sylvester_resultant([one, zero, t**-1], [zero, zero, one])
        assert res == one

    def test_bareiss_matches_naive_determinant(self, rng):
        for _ in range(10):
            d = rng.choice([1, 2, 3])
            f = make_map(rng, d)
            matrix = sylvester_matrix(f.a, f.b)
            assert det_bareiss(matrix).agrees(det_naive(matrix))

    def test_bihomogeneous_degree(self, rng):
        f = make_map(rng, 2)
        scaled = [c * t for c in f.a]
        assert sylvester_resultant(scaled, f.b).val() == f.res.val() + 2


class TestOrdRes:
    def test_examples(self):
        assert z_squared().ord_res() == 0
        assert boundary_map().ord_res() == 2
        assert new_map([one, zero, t**-1], [zero, zero, one]).ord_res() == 4

    def test_invariant_under_coefficient_rescaling(self, rng):
        for _ in range(20):
            f = make_map(rng, rng.choice([1, 2]))
            scale = make_series(rng, allow_zero=False)
            g = new_map([c * scale for c in f.a], [c * scale for c in f.b])
            assert g.ord_res() == f.ord_res()
            assert g == f

    def test_nonnegative(self, rng):
        for _ in range(30):
            assert make_map(rng, rng.choice([1, 2])).ord_res() >= 0


class TestConjugate:
    def test_identity(self, rng):
        f = make_map(rng, 2)
        assert f.conjugate(ConjugationMatrix.identity()) == f

    def test_paper_example(self):
        f = boundary_map()
        M = ConjugationMatrix.diagonal(PuiseuxSeries.t_power(half), PuiseuxSeries.t_power(-half))
        g = f.conjugate(M)
        assert g == new_map([1, -1], [1, 1])
        assert g.ord_res() == 0

    def test_monomial_example_needs_ramification(self):
        f = new_map([t, zero, zero], [zero, zero, one])
        M = ConjugationMatrix.diagonal(PuiseuxSeries.t_power(-half), PuiseuxSeries.t_power(half))
        g = f.conjugate(M)
        assert g == z_squared()
        assert g.a[0].coarsen().e == 1  # the value is back to integer exponents

    def test_scalar_multiple_of_matrix_is_harmless(self, rng):
        for _ in range(10):
            f = make_map(rng, rng.choice([1, 2]))
            M = make_matrix(rng)
            scaled = M.scaled(make_series(rng, allow_zero=False))
            assert f.conjugate(M) == f.conjugate(scaled)

    def test_transformation_law_raw(self, rng):
        for _ in range(50):
            d = rng.choice([1, 2, 3])
            f = make_map(rng, d)
            M = make_matrix(rng)
            raw_a, raw_b = f.conjugate_raw(M)
            law = f.res.val() + (d * d + d) * M.det.val()
            assert sylvester_resultant(raw_a, raw_b).val() == law

    def test_unimodular_invariance(self, rng):
        for _ in range(20):
            f = make_map(rng, rng.choice([1, 2]))
            while True:
                M = make_matrix(rng)
                if M.det.val() == 0:
                    break
            raw = f.conjugate_raw(M)
            assert sylvester_resultant(*raw).val() == f.res.val()


class TestReduction:
    def test_good_reduction_examples(self):
        f = z_squared()
        assert f.good_reduction()
        reduced = f.reduce()
        assert reduced.degree == 2
        assert reduced.num == (F(0), F(0), F(1))
        assert reduced.den == (F(1),)

    def test_boundary_map_degenerates(self):
        f = boundary_map()
        assert not f.good_reduction()
        assert f.reduce().degree < 1

    def test_good_reduction_of_conjugated_paper_map(self):
        g = new_map([1, -1], [1, 1])
        assert g.good_reduction()
        assert g.reduce().degree == 1

    def test_reduce_degree_matches_good_reduction(self, rng):
        for _ in range(50):
            f = make_map(rng, rng.choice([1, 2]))
            assert f.good_reduction() == (f.reduce().degree == f.d)

    def test_in_beth_examples(self):
        assert z_squared().in_beth()
        assert not boundary_map().in_beth()

    def test_in_beth_equals_good_reduction(self, rng):
        for _ in range(60):
            f = make_map(rng, rng.choice([1, 2, 3]))
            assert f.in_beth() == f.good_reduction()


class TestIterate:
    def test_power_one_is_identity(self, rng):
        f = make_map(rng, 2)
        assert f.iterate(1) == f

    def test_monomial_composition(self):
        assert z_squared().iterate(2) == new_map([1, 0, 0, 0, 0], [0, 0, 0, 0, 1])

    def test_degree_one_matrix_oracle(self, rng):
        for _ in range(15):
            f = make_map(rng, 1)
            a0, a1 = f.a
            b0, b1 = f.b
            squared = new_map(
                [a0 * a0 + a1 * b0, a0 * a1 + a1 * b1],
                [b0 * a0 + b1 * b0, b0 * a1 + b1 * b1],
            )
            assert f.iterate(2) == squared

    def test_paper_conjugated_map_squares(self):
        w = new_map([1, -1], [1, 1])
        assert w.iterate(2) == new_map([0, -2], [2, 0])

    def test_degree_grows_exponentially(self, rng):
        f = make_map(rng, 2)
        assert f.iterate(2).d == 4

    def test_conjugation_equivariance(self, rng):
        for _ in range(5):
            f = make_map(rng, rng.choice([1, 2]))
            M = make_matrix(rng)
            assert f.conjugate(M).iterate(2) == f.iterate(2).conjugate(M)

    def test_good_reduction_persists(self, rng):
        checked = 0
        while checked < 5:
            f = make_map(rng, rng.choice([1, 2]))
            if not f.good_reduction():
                continue
            for power in (2, 3):
                assert f.iterate(power).good_reduction()
            checked += 1


class TestEvaluate:
    def test_examples(self):
        assert z_squared().evaluate(t) == t**2
        assert new_map([1, -1], [1, 1]).evaluate(INFINITY) == one
        assert boundary_map().evaluate(zero) == -t

    def test_pole_goes_to_infinity(self):
        f = new_map([0, 1], [1, 0])  # 1/z
        assert f.evaluate(zero) is INFINITY
        assert f.evaluate(INFINITY) == zero


class TestEquality:
    def test_proportional_pairs_are_equal(self):
        f = new_map([one, -t], [t**-1, one])
        g = new_map([t * 3, -3 * t**2], [3 * one, 3 * t])
        assert f == g

    def test_different_maps_differ(self):
        assert z_squared() != new_map([1, 0, 1], [0, 0, 1])
