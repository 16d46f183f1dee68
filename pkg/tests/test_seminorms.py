"""Evaluation seminorms and the flow rescaling laws."""

from fractions import Fraction as F

import pytest

from ratfam import EvaluationSeminorm, PuiseuxSeries, flow, seminorm_eval
from ratfam.mpoly import mp_add, mp_const, mp_mul, mp_var
from ratfam.series import INF
from conftest import make_series

t = PuiseuxSeries.t_power(1)


def coords_2():
    return (t, t**2)


def test_single_coordinate():
    sigma = EvaluationSeminorm((t,), F(1, 2), F(1))
    value = seminorm_eval(mp_var(0, 1), sigma)
    assert (value.base, value.exponent) == (F(1, 2), F(1))


def test_product_monomial_adds_exponents():
    sigma = EvaluationSeminorm(coords_2(), F(1, 2), F(1))
    value = seminorm_eval(mp_mul(mp_var(0, 2), mp_var(1, 2)), sigma)
    assert value.exponent == 3


def test_cancellation_moves_to_subleading_term():
    sigma = EvaluationSeminorm((t, -t + t**3), F(1, 2), F(1))
    value = seminorm_eval(mp_add(mp_var(0, 2), mp_var(1, 2)), sigma)
    assert value.exponent == 3


def test_vanishing_polynomial_evaluates_to_zero():
    sigma = EvaluationSeminorm((t, t), F(1, 2), F(1))
    diff = mp_add(mp_var(0, 2), {(0, 1): F(-1)})  # T1 - T2 vanishes on the diagonal
    value = seminorm_eval(diff, sigma)
    assert value.exponent == INF
    assert float(value) == 0.0


def test_multiplicativity_exact(rng):
    for _ in range(60):
        coords = tuple(make_series(rng, allow_zero=False) for _ in range(2))
        sigma = EvaluationSeminorm(coords, F(1, 3), F(rng.randint(1, 5)))
        p = {(rng.randint(0, 2), rng.randint(0, 2)): F(rng.randint(1, 4))}
        q = {(rng.randint(0, 2), rng.randint(0, 2)): F(rng.randint(1, 4))}
        lhs = sigma.evaluate(mp_mul(p, q))
        rhs = sigma.evaluate(p) * sigma.evaluate(q)
        assert (lhs.base, lhs.exponent) == (rhs.base, rhs.exponent)


def test_flow_identity_and_composition(rng):
    for _ in range(100):
        coords = tuple(make_series(rng, allow_zero=False) for _ in range(2))
        sigma = EvaluationSeminorm(coords, F(1, 2), F(rng.randint(1, 6), rng.randint(1, 3)))
        beta = F(rng.randint(1, 6), rng.randint(1, 4))
        gamma = F(rng.randint(1, 6), rng.randint(1, 4))
        assert flow(sigma, 1) == sigma
        assert flow(flow(sigma, beta), gamma) == flow(sigma, beta * gamma)
        p = {(rng.randint(0, 3), rng.randint(0, 2)): F(1)}
        assert flow(sigma, beta).evaluate(p).exponent == beta * sigma.evaluate(p).exponent


def test_trajectory_equivalence_ignores_alpha():
    sigma = EvaluationSeminorm(coords_2(), F(1, 2), F(2))
    assert sigma.same_trajectory(flow(sigma, F(7, 3)))
    assert sigma.canonical().alpha == 1
    assert sigma != flow(sigma, 2)


def test_validation():
    with pytest.raises(ValueError):
        EvaluationSeminorm((t,), F(2), F(1))
    with pytest.raises(ValueError):
        EvaluationSeminorm((t,), F(1, 2), F(-1))
    with pytest.raises(ValueError):
        flow(EvaluationSeminorm((t,), F(1, 2)), 0)
