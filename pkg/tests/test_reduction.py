"""Descent and brute-force search for potential good reduction."""

from fractions import Fraction as F

import pytest

from ratfam import (
    CONVERGES_IN_MD,
    DEGENERATES_IN_MD,
    INCONCLUSIVE,
    NO_PGR,
    PGR,
    InconclusiveSearch,
    PuiseuxSeries,
    SearchConfig,
    TreePoint,
    brute_force_min,
    classify_quotient,
    minimize_ord_res,
    new_map,
    ord_res_at,
)
from conftest import make_map, make_series

t = PuiseuxSeries.t_power(1)
one = PuiseuxSeries.constant(1)
zero = PuiseuxSeries.zero()


def boundary_map():
    return new_map([one, -t], [t**-1, one])


def monomial_quadratic():
    return new_map([t, zero, zero], [zero, zero, one])


def stubborn_quadratic():
    """z^2 + 1/t: no conjugation repairs the reduction."""
    return new_map([one, zero, t**-1], [zero, zero, one])


class TestObjective:
    def test_base_point_is_plain_ord_res(self, rng):
        f = make_map(rng, 2)
        assert ord_res_at(f, TreePoint.base()) == f.ord_res()

    def test_monomial_witness(self):
        assert ord_res_at(monomial_quadratic(), TreePoint(F(-1, 2))) == 0

    def test_paper_witness(self):
        assert ord_res_at(boundary_map(), TreePoint(F(1, 2))) == 0

    def test_scalar_scaling_of_matrix_is_invisible(self, rng):
        f = make_map(rng, 2)
        point = TreePoint(F(1, 2), PuiseuxSeries.t_power(F(1, 2)))
        scaled = point.matrix().scaled(make_series(rng, allow_zero=False))
        assert f.conjugate(point.matrix()) == f.conjugate(scaled)

    def test_tree_point_matrix_is_unimodular(self):
        point = TreePoint(F(3, 4), PuiseuxSeries.t_power(2, 5))
        assert point.matrix().det == one


class TestMinimize:
    def test_good_reduction_stops_immediately(self):
        report = minimize_ord_res(new_map([1, 0, 0], [0, 0, 1]))
        assert report.verdict == PGR
        assert report.probes == 1
        assert report.witness == TreePoint.base()
        assert report.witness_verified

    def test_monomial_quadratic(self):
        report = minimize_ord_res(monomial_quadratic())
        assert report.verdict == PGR
        assert report.witness == TreePoint(F(-1, 2))
        assert report.witness_verified

    def test_paper_family(self):
        report = minimize_ord_res(boundary_map())
        assert report.verdict == PGR
        assert report.witness == TreePoint(F(1, 2))
        assert report.ramification == 2

    def test_no_pgr_with_positive_minimum(self):
        report = minimize_ord_res(stubborn_quadratic())
        assert report.verdict == NO_PGR
        assert report.min_value == 1
        assert report.witness == TreePoint(F(-1, 4))

    def test_budget_exhaustion_is_inconclusive(self):
        report = minimize_ord_res(stubborn_quadratic(), SearchConfig(max_probes=3))
        assert report.verdict == INCONCLUSIVE
        assert report.probes == 3
        assert "budget" in report.note

    def test_minimum_never_exceeds_base_value(self, rng):
        for _ in range(10):
            f = make_map(rng, rng.choice([1, 2]))
            report = minimize_ord_res(f)
            if report.verdict != INCONCLUSIVE:
                assert report.min_value <= f.ord_res()

    def test_pgr_witness_recheck(self, rng):
        for _ in range(10):
            f = make_map(rng, rng.choice([1, 2]))
            report = minimize_ord_res(f)
            if report.verdict == PGR:
                conj = f.conjugate(report.witness.matrix())
                assert conj.good_reduction()
                assert report.witness_verified

    def test_determinism(self):
        first = minimize_ord_res(stubborn_quadratic())
        second = minimize_ord_res(stubborn_quadratic())
        assert first == second


class TestBruteForce:
    def test_base_point_in_grid(self):
        value, argmin = brute_force_min(new_map([1, 0, 0], [0, 0, 1]), [F(0), F(1)])
        assert value == 0
        assert argmin == TreePoint.base()

    def test_three_point_grid(self):
        f = monomial_quadratic()
        value, argmin = brute_force_min(f, [F(-1), F(-1, 2), F(0)], shifts=[0])
        assert (value, argmin) == (F(0), TreePoint(F(-1, 2)))
        # the oracle values at each grid point, computed independently
        assert ord_res_at(f, TreePoint(F(0))) == 2
        assert ord_res_at(f, TreePoint(F(-1))) == 2

    def test_grid_never_beats_descent(self, rng):
        grid = [F(k, 4) for k in range(-12, 13)]
        for _ in range(8):
            f = make_map(rng, 2, max_extra_terms=0)
            report = minimize_ord_res(f)
            if report.verdict == INCONCLUSIVE:
                continue
            value, _ = brute_force_min(f, grid)
            assert value >= report.min_value


class TestClassifyQuotient:
    def test_pgr_converges(self):
        assert classify_quotient(monomial_quadratic()) == CONVERGES_IN_MD
        assert classify_quotient(boundary_map()) == CONVERGES_IN_MD

    def test_no_pgr_degenerates(self):
        assert classify_quotient(stubborn_quadratic()) == DEGENERATES_IN_MD

    def test_rejects_good_reduction_maps(self):
        with pytest.raises(ValueError):
            classify_quotient(new_map([1, 0, 0], [0, 0, 1]))

    def test_inconclusive_propagates(self):
        with pytest.raises(InconclusiveSearch):
            classify_quotient(stubborn_quadratic(), SearchConfig(max_probes=3))
