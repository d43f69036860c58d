from fractions import Fraction

import pytest

from gauss_sphere.errors import LabError
from gauss_sphere.oracles import oracle_q_polynomial, oracle_quadruple
from gauss_sphere.oscillatory.coefficients import (
    M,
    block_power,
    closed_form_quadruple,
    flipped_beta_quadruple,
    im_i_pow,
    matrix_power,
    matrix_power_naive,
    q_polynomial,
    q_polynomial_by_recursion,
    quadruple,
    re_i_pow,
)


def test_examples():
    assert quadruple(0).as_tuple() == (1, 0, 0, -1)
    assert quadruple(1).as_tuple() == (0, 1, 2, 0)
    assert quadruple(4).as_tuple() == (1, 0, 0, -5)
    assert q_polynomial(0).coefficients == ()
    assert q_polynomial(1).coefficients == (Fraction(-2),)
    assert q_polynomial(2).coefficients == (Fraction(0), Fraction(-2))


def test_matrix_entries():
    nonzero = {(i, j): M[i][j] for i in range(4) for j in range(4) if M[i][j]}
    assert nonzero == {(0, 1): -1, (1, 0): 1, (2, 0): 1, (2, 3): -1, (3, 1): 1, (3, 2): 1}


def test_closed_forms_up_to_64():
    for k in range(65):
        q = quadruple(k)
        assert q.alpha == re_i_pow(k)
        assert q.beta == im_i_pow(k)
        assert q.gamma == (k + 1) * im_i_pow(k)
        assert q.delta == -(k + 1) * re_i_pow(k)
        assert q == closed_form_quadruple(k)


def test_block_form():
    for k in range(65):
        assert block_power(k) == matrix_power_naive(k) == matrix_power(k)


def test_large_k():
    assert quadruple(10**6) == closed_form_quadruple(10**6)
    with pytest.raises(LabError):
        quadruple(10**6 + 1)


def test_antiderivative_oracle():
    for k in range(9):
        assert oracle_quadruple(k) == quadruple(k)
        assert oracle_q_polynomial(k) == q_polynomial(k)


def test_q_recursion():
    for k in range(33):
        assert q_polynomial(k) == q_polynomial_by_recursion(k)


def test_flipped_beta_differs_at_odd_k():
    for k in range(20):
        same = flipped_beta_quadruple(k) == quadruple(k)
        assert same == (k % 2 == 0)


def test_sympy_antiderivative():
    sympy = pytest.importorskip("sympy")
    x, t = sympy.symbols("x t", real=True)
    f = t * sympy.cos(t) - sympy.sin(t)
    for k in range(1, 6):
        f = sympy.integrate(f, (t, 0, x)).subs(x, t)
        expr = sympy.expand(f.subs(t, x))
        q = quadruple(k)
        assert expr.coeff(x * sympy.cos(x)) == q.alpha
        assert expr.coeff(x * sympy.sin(x)) == q.beta
        rest = sympy.expand(expr - q.alpha * x * sympy.cos(x) - q.beta * x * sympy.sin(x))
        poly = sum(sympy.Rational(c.numerator, c.denominator) * x**j for j, c in enumerate(q_polynomial(k).coefficients))
        trig = q.gamma * sympy.cos(x) + q.delta * sympy.sin(x)
        assert sympy.simplify(rest - trig - poly) == 0
