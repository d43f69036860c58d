import math

import numpy as np
import pytest

from gauss_sphere.errors import LabError, SingularProximityError
from gauss_sphere.radial_counts import SqrtRadius, get_table
from gauss_sphere.smeared.bump import make_bump
from gauss_sphere.smeared.fourier import fourier_check
from gauss_sphere.smeared.pairings import (
    bessel_form_term,
    identity_residuals,
    pair_counting,
    termwise_identity_error,
    trig_form_term,
    verify_delta_identity,
    verify_Nd_identity,
)
from gauss_sphere.step_calculus import eval_exact


def test_bump_normalized_and_flat_at_ends():
    b = make_bump(0.0, 1.0)
    assert abs(b.integrate(lambda s: np.ones_like(s))[0] - 1.0) <= 1e-12
    assert b(0.0) == 0.0 and b(1.0) == 0.0
    assert abs(b.derivative(1e-3)) < 1e-300


def test_moment_killing():
    b = make_bump(0.0, 1.0, [1, 2, 3, 4])
    assert abs(b.integrate(lambda s: np.ones_like(s))[0] - 1.0) <= 1e-12
    assert all(abs(m) <= 1e-12 for m in b.residual_moments)
    # same check with an independent fine trapezoid grid
    s = np.linspace(0, 1, 400001)
    vals = b(s)
    for m in range(1, 5):
        assert abs(np.trapezoid(vals * s**m, s)) <= 1e-9


def test_bump_validation():
    with pytest.raises(LabError):
        make_bump(1.0, 1.0)
    with pytest.raises(LabError):
        make_bump(0.0, 1.0, [5])


def test_bump_support():
    b = make_bump(math.sqrt(2), math.sqrt(3))
    assert b.seams[0] == math.sqrt(2) and b.seams[-1] == math.sqrt(3)


def test_pair_counting_examples():
    t = get_table(3, 60)
    assert pair_counting(t, 0, make_bump(math.sqrt(2), math.sqrt(3))) == pytest.approx(19, abs=1e-12)
    assert pair_counting(t, 0, make_bump(0.1, 0.9)) == pytest.approx(1, abs=1e-13)


def test_pair_counting_k1_against_exact():
    t = get_table(3, 60)
    b = make_bump(math.sqrt(2), math.sqrt(3))
    s = np.linspace(math.sqrt(2) + 1e-3, math.sqrt(3) - 1e-3, 20)
    from gauss_sphere.smeared.pairings import counting_values

    with pytest.warns(UserWarning):
        exact = [eval_exact(1, float(x)) for x in s]
    assert np.allclose(counting_values(t, 1, s), exact, rtol=1e-6)
    # N_{3,1} is linear on the support, so the pairing is the value at the centroid
    centroid = b.integrate(lambda x: x)[0]
    assert pair_counting(t, 1, b) == pytest.approx(19 * (centroid - math.sqrt(2)) + eval_exact(1, SqrtRadius(2)), rel=1e-12)


def test_point_value_recovery():
    t = get_table(3, 51)
    for n in range(51):
        got = pair_counting(t, 0, make_bump(math.sqrt(n), math.sqrt(n + 1)))
        assert abs(got - t.cumulative[n]) <= 1e-12 * t.cumulative[n]


@pytest.mark.parametrize("n", [4, 9, 25])
def test_moment_killed_recovers_integral(n):
    t = get_table(3, 30)
    b = make_bump(math.sqrt(n), math.sqrt(n + 1), [1])
    want = eval_exact(1, SqrtRadius(n))
    assert abs(pair_counting(t, 1, b) - want) <= 1e-9 * want


def test_delta_identity_d1():
    r = verify_delta_identity(1, make_bump(0.5, 1.5), 1000)
    assert r.passed
    assert abs(r.lhs - r.rhs) <= 1e-6


def test_delta_identity_d3():
    b = make_bump(0.5, 1.5)
    r = verify_delta_identity(3, b, 1000)
    # shells n = 1 and n = 2 (sqrt 2 ~ 1.414) both sit inside the support
    assert r.passed and r.lhs == pytest.approx(6 * b(1.0) + 12 * b(math.sqrt(2)), rel=1e-14)
    empty = verify_delta_identity(3, make_bump(1.45, 1.7), 1000)
    assert empty.lhs == 0.0 and empty.passed


@pytest.mark.parametrize("d,support", [(1, (0.2, 0.8)), (2, (0.5, 1.5)), (3, (0.5, 1.5))])
def test_nd_identity(d, support):
    r = verify_Nd_identity(d, make_bump(*support), 1000)
    assert r.passed
    if d == 1:
        assert r.lhs == pytest.approx(1.0, abs=1e-13)


def test_nd_residual_decreases():
    res = identity_residuals("nd", 3, make_bump(0.9, 1.1), [1000, 2000, 4000])
    assert res[1] <= 0.75 * res[0] and res[2] <= 0.75 * res[1]


def test_termwise_identity():
    assert termwise_identity_error() <= 1e-12
    n = np.arange(1, 101)
    assert np.allclose(trig_form_term(n, 2.0), bessel_form_term(n, 2.0), rtol=0, atol=1e-15)


def test_fourier_example():
    r = fourier_check(1.0, 0.2, 10**4, 60.0)
    assert r.passed and r.detail["relative_discrepancy"] <= 1e-3


def test_fourier_conjugate_symmetry():
    a = fourier_check(1.0, 0.2, 10**4, 60.0)
    b = fourier_check(-1.0, 0.2, 10**4, 60.0)
    assert abs(a.lhs - b.lhs.conjugate()) <= 1e-12 * abs(a.lhs)
    assert abs(a.rhs - b.rhs.conjugate()) <= 1e-12 * abs(a.rhs)


def test_fourier_eps_dependence():
    a = fourier_check(1.0, 0.5, 10**4, 60.0)
    b = fourier_check(1.0, 0.25, 10**4, 60.0)
    assert a.passed and b.passed and abs(a.lhs - b.lhs) > 1e-4


def test_fourier_rejects():
    with pytest.raises(SingularProximityError):
        fourier_check(2 * math.pi + 0.05, 0.2, 1000, 10.0)
    with pytest.raises(LabError):
        fourier_check(1.0, 0.01, 1000, 10.0)
