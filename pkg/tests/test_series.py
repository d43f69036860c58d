import math
from fractions import Fraction

import pytest

from gauss_sphere.errors import LabError
from gauss_sphere.lattice_sums import c_constant
from gauss_sphere.oscillatory.coefficients import flipped_beta_quadruple
from gauss_sphere.oscillatory.series import (
    LEADING_COEFFICIENT_K1,
    LEADING_COEFFICIENT_K4,
    eval_ok,
    leading_coefficient,
    main_formula,
    main_terms,
)
from gauss_sphere.radial_counts import SqrtRadius
from gauss_sphere.step_calculus import eval_exact


def test_leading_coefficients():
    assert Fraction(8, math.factorial(7)) == Fraction(1, 630)
    assert Fraction(8, math.factorial(4)) == Fraction(1, 3)
    assert math.isclose(leading_coefficient(4), LEADING_COEFFICIENT_K4, rel_tol=1e-15)
    assert math.isclose(leading_coefficient(1), LEADING_COEFFICIENT_K1, rel_tol=1e-15)
    assert math.isclose(leading_coefficient(0), 4 * math.pi / 3, rel_tol=1e-15)


def test_ok_at_origin():
    v = eval_ok(4, 0.0, 10**4)
    assert v.value == 0.0 and v.bound < 1e-10


def test_ok_k2_at_one():
    r = SqrtRadius(1)
    v = eval_ok(2, r, 10**4)
    exact = eval_exact(2, r) - main_terms(2, r).value
    assert abs(v.value - exact) <= v.bound


def test_ok_k4_right_edge():
    r = SqrtRadius(200)
    v = eval_ok(4, r, 10**4)
    exact = eval_exact(4, r) - main_terms(4, r).value
    assert abs(v.value - exact) <= v.bound


def test_main_formula_adjudication():
    r = SqrtRadius(9, 4)
    mf = main_formula(2, r, 10**5)
    assert abs(mf.value - eval_exact(2, r)) <= mf.bound


@pytest.mark.parametrize("k", [2, 3, 4, 5])
def test_series_contains_exact(k):
    for lam in (3, 77, 400, 1111, 1599):
        r = SqrtRadius(lam, 8)
        mf = main_formula(k, r, 10**4)
        assert abs(mf.value - eval_exact(k, r)) <= mf.bound


def test_bound_nonincreasing():
    for k in (2, 4):
        bounds = [eval_ok(k, 7.3, n).bound for n in (500, 1000, 2000, 4000)]
        assert all(b <= a for a, b in zip(bounds, bounds[1:]))


def test_odd_index_terms_absent():
    # for k = 4 only C_0 (m = 3) and C_2 (m = 1) appear
    s = 3.0
    expected = leading_coefficient(4) * s**7 + c_constant(0).value * s**3 / 6 + c_constant(2).value * s
    assert math.isclose(main_terms(4, s).value, expected, rel_tol=1e-14)


def test_flipped_beta_breaks_odd_k():
    r = SqrtRadius(50)
    good = main_formula(3, r, 10**4)
    bad = main_formula(3, r, 10**4, flipped_beta_quadruple)
    exact = eval_exact(3, r)
    assert abs(good.value - exact) <= good.bound
    assert abs(bad.value - exact) > bad.bound


def test_rejects_small_k():
    with pytest.raises(LabError):
        eval_ok(1, 1.0, 100)
    with pytest.raises(LabError):
        main_formula(2, 1.0, 0)
    with pytest.raises(LabError):
        eval_ok(2, -1.0, 100)
