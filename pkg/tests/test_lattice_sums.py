import math

import pytest

from gauss_sphere.errors import LabError, OddIndexError
from gauss_sphere.lattice_sums import (
    c0_matches_proof_constant,
    c_consistency_check,
    c_constant_direct,
    c_constant_ewald,
    epstein_zeta,
    prefactor,
)


def test_odd_index_rejected():
    with pytest.raises(OddIndexError):
        c_constant_direct(1, 100)
    with pytest.raises(OddIndexError):
        c_constant_ewald(3)
    with pytest.raises(OddIndexError):
        c_consistency_check(1)


def test_signs():
    assert c_constant_ewald(0).value > 0
    assert c_constant_ewald(2).value < 0
    assert c_constant_ewald(4).value > 0
    assert prefactor(6) < 0


def test_direct_bound_small_for_j2():
    c = c_constant_direct(2, 10**4)
    assert c.bound <= 1e-5 * abs(c.value)


def test_convergence_rate_j2():
    ratio = c_constant_direct(2, 2 * 10**4).bound / c_constant_direct(2, 10**4).bound
    assert ratio <= 2**-1.5 + 0.05


@pytest.mark.parametrize("j", [0, 2, 4])
def test_methods_agree(j):
    d = c_constant_direct(j, 10**5)
    e = c_constant_ewald(j, 1e-9)
    assert abs(d.value - e.value) <= d.bound + e.bound


def test_ewald_independent_of_split():
    for s in (2, 3, 4):
        vals = [epstein_zeta(s, t)[0] for t in (0.5, 1.0, 2.0)]
        assert max(vals) - min(vals) <= 1e-12


def test_zeta_lower_bound():
    assert epstein_zeta(2)[0] > 6 + 12 / 4 + 8 / 9


def test_target_limits():
    with pytest.raises(LabError):
        c_constant_ewald(0, 1e-15)
    assert c_constant_ewald(0, 1e-12).bound == 1e-12


def test_consistency():
    assert c_consistency_check(0) and c_consistency_check(2) and c_consistency_check(6)
    assert c0_matches_proof_constant()
    assert math.isclose(prefactor(0), 1 / (2 * math.pi**3), rel_tol=1e-15)
