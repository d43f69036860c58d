"""Property-based checks."""

import math
from fractions import Fraction

import numpy as np
from hypothesis import given, settings
from hypothesis import strategies as st

from gauss_sphere.oracles import brute_force_count
from gauss_sphere.oscillatory.coefficients import closed_form_quadruple, quadruple
from gauss_sphere.oscillatory.series import eval_ok
from gauss_sphere.radial_counts import SqrtRadius, count_N, get_table
from gauss_sphere.step_calculus import eval_exact, eval_quadrature
from gauss_sphere.summation import CHUNK, compensated_sum, neumaier_sum

radii = st.builds(
    lambda p, q: SqrtRadius(p, q), st.integers(0, 400 * 50), st.integers(1, 50)
).filter(lambda r: r.sigma2 <= 400)


@given(radii, st.integers(1, 4))
@settings(max_examples=60, deadline=None)
def test_exact_matches_quadrature(r, k):
    v = eval_exact(k, r)
    assert abs(v - eval_quadrature(k, r)) <= 1e-8 * (1 + abs(v))


@given(st.fractions(min_value=0, max_value=30, max_denominator=64))
@settings(max_examples=40, deadline=None)
def test_count_matches_brute_force(s2):
    t = get_table(3, 400)
    assert count_N(t, SqrtRadius.from_fraction(s2)) == brute_force_count(3, Fraction(s2))


@given(st.integers(0, 10**5))
def test_quadruple_closed_form(k):
    assert quadruple(k) == closed_form_quadruple(k)


@given(st.lists(st.floats(-1e6, 1e6, allow_nan=False), min_size=0, max_size=3 * CHUNK + 7))
@settings(max_examples=30, deadline=None)
def test_summation_deterministic(values):
    a = compensated_sum(values, workers=1)
    b = compensated_sum(values, workers=4)
    assert a == b
    assert abs(a - math.fsum(values)) <= 1e-9 * (1 + sum(abs(v) for v in values))
    assert abs(neumaier_sum(values) - math.fsum(values)) <= 1e-9 * (1 + sum(abs(v) for v in values))


@given(radii, st.integers(2, 5))
@settings(max_examples=25, deadline=None)
def test_series_bound_contains_exact(r, k):
    from gauss_sphere.oscillatory.series import main_formula

    mf = main_formula(k, r, 4000)
    assert abs(mf.value - eval_exact(k, r)) <= mf.bound


@given(st.floats(0.0, 20.0), st.integers(2, 6))
@settings(max_examples=25, deadline=None)
def test_bound_shrinks_with_terms(sigma, k):
    b = [eval_ok(k, sigma, n).bound for n in (1000, 2000)]
    assert b[1] <= b[0]


@given(st.lists(st.integers(1, 4), unique=True))
@settings(max_examples=10, deadline=None)
def test_bump_moments(kill):
    from gauss_sphere.smeared.bump import make_bump

    b = make_bump(0.3, 1.1, kill)
    for m in kill:
        assert abs(b.residual_moments[m - 1]) <= 1e-12
    assert abs(b.integrate(np.ones_like)[0] - 1.0) <= 1e-12
