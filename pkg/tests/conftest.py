"""Shared deterministic generators for the property-style tests."""

import random

import pytest

from ratfam import (
    AllZeroMap,
    ConjugationMatrix,
    DegenerateMap,
    PrecisionExhausted,
    PuiseuxSeries,
    SingularMatrix,
    new_map,
)


def make_series(rng, min_v=-3, max_v=3, max_extra_terms=1, allow_zero=True, e=1):
    """Exact Laurent polynomial with leading exponent in [min_v, max_v]."""
    if allow_zero and rng.random() < 0.2:
        return PuiseuxSeries.zero()
    v = rng.randint(min_v * e, max_v * e)
    coeff = rng.choice([-3, -2, -1, 1, 2, 3])
    series = PuiseuxSeries(e, [(v, coeff)])
    for _ in range(rng.randint(0, max_extra_terms)):
        offset = rng.randint(1, 3)
        c = rng.choice([-2, -1, 1, 2])
        series = series + PuiseuxSeries(e, [(v + offset, c)])
    return series


def make_map(rng, d, min_v=-3, max_v=3, max_extra_terms=1):
    while True:
        a = [make_series(rng, min_v, max_v, max_extra_terms) for _ in range(d + 1)]
        b = [make_series(rng, min_v, max_v, max_extra_terms) for _ in range(d + 1)]
        try:
            return new_map(a, b)
        except (DegenerateMap, AllZeroMap):
            continue


def make_matrix(rng, min_v=-2, max_v=2):
    while True:
        entries = [make_series(rng, min_v, max_v) for _ in range(4)]
        try:
            return ConjugationMatrix(*entries)
        except (SingularMatrix, PrecisionExhausted):
            continue


@pytest.fixture
def rng():
    return random.Random(20260810)
