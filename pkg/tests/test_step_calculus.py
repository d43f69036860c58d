import random
from fractions import Fraction

import numpy as np
import pytest

from gauss_sphere.errors import LabError, OutOfTableError
from gauss_sphere.radial_counts import SqrtRadius, build_table
from gauss_sphere.step_calculus import IteratedEvaluator, eval_exact, eval_quadrature


def test_examples():
    assert eval_exact(0, SqrtRadius(2)) == 19
    assert eval_exact(1, SqrtRadius(1)) == 1.0
    assert eval_exact(2, SqrtRadius(1, 4)) == 0.125
    assert abs(eval_quadrature(1, SqrtRadius(1)) - 1.0) <= 1e-10
    assert eval_quadrature(1, SqrtRadius(0)) == 0.0
    assert abs(eval_quadrature(3, SqrtRadius(2)) - eval_exact(3, SqrtRadius(2))) <= 1e-9


def test_oracle_equivalence_random():
    rng = random.Random(7)
    for _ in range(30):
        q = rng.randint(1, 100)
        r = SqrtRadius(rng.randint(0, 400 * q), q)
        for k in range(1, 5):
            v = eval_exact(k, r)
            assert abs(v - eval_quadrature(k, r)) <= 1e-8 * (1 + abs(v))


def test_vanishes_at_origin():
    for k in range(1, 17):
        assert eval_exact(k, SqrtRadius(0)) == 0.0


def test_monotone():
    radii = [SqrtRadius(j, 3) for j in range(0, 1200, 7)]
    ev = IteratedEvaluator(build_table(3, 400))
    for k in range(6):
        assert np.all(np.diff(ev.eval_exact_many(k, radii)) >= 0)


def test_cancellation_safe_near_shell():
    # sigma^2 = n + 1e-12: the gap to shell n is 5e-13/sqrt(n), not rounding noise
    r = SqrtRadius(10**12 * 9 + 1, 10**12)
    ev = IteratedEvaluator(build_table(3, 20))
    n, gap = ev.gaps(r)
    assert abs(gap[n == 9][0] - 1e-12 / 6) <= 1e-24


def test_domain_errors():
    ev = IteratedEvaluator(build_table(3, 10))
    with pytest.raises(OutOfTableError):
        ev.eval_exact(1, SqrtRadius(11))
    with pytest.raises(LabError):
        ev.eval_exact(17, SqrtRadius(1))
    with pytest.raises(LabError):
        ev.eval_quadrature(5, SqrtRadius(1))
    with pytest.raises(LabError):
        ev.eval_quadrature(1, SqrtRadius(1), tol=1e-13)
    with pytest.raises(LabError):
        IteratedEvaluator(build_table(2, 10))


def test_huge_denominator_radius():
    r = SqrtRadius.from_fraction(Fraction(2.0**0.5 - 1e-6) ** 2)
    assert abs(eval_exact(1, r) - eval_exact(1, SqrtRadius(2))) < 2e-5
