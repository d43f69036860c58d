import math

import numpy as np
import pytest

from gauss_sphere.errors import LabError
from gauss_sphere.oracles import bessel_series
from gauss_sphere.oscillatory.bessel import bessel_J, bessel_J0, bessel_J1, bessel_half, seam_agreement


def test_half_integer_examples():
    assert abs(bessel_half(1, math.pi)) <= 1e-14
    assert abs(bessel_half(3, math.pi) - math.sqrt(2) / math.pi) <= 1e-15
    assert abs(bessel_half(1, 1.0) - 0.6713967071418031) <= 1e-15


@pytest.mark.parametrize("two_nu", [-1, 1, 3, 5])
def test_half_integer_vs_series(two_nu):
    for z in (0.3, 1.0, 2.5, 6.0):
        assert abs(bessel_half(two_nu, z) - bessel_series(two_nu / 2, z)) <= 1e-13


def test_half_integer_rejects_nonpositive():
    with pytest.raises(LabError):
        bessel_half(1, 0.0)
    with pytest.raises(LabError):
        bessel_half(7, 1.0)


def test_integer_order_vs_scipy():
    special = pytest.importorskip("scipy.special")
    z = np.concatenate([np.linspace(0, 40, 401), [24.999999, 25.0, 25.000001, 100.0, 1234.5]])
    assert np.max(np.abs(bessel_J1(z) - special.j1(z))) <= 1e-13
    assert np.max(np.abs(bessel_J0(z) - special.j0(z))) <= 1e-13


def test_seam():
    assert bessel_J1(0.0) == 0.0
    assert seam_agreement(1) <= 1e-10
    assert seam_agreement(0) <= 1e-10
    for z in (1.0, 10.0):
        assert abs(bessel_J1(z) - bessel_series(1, z, 60)) <= 1e-12


def test_integral_of_J1():
    # int_0^X J_1 = 1 - J_0(X)
    x, w = np.polynomial.legendre.leggauss(64)
    for X in (5.0, 30.0):
        edges = np.linspace(0.0, X, 21)
        total = 0.0
        for lo, hi in zip(edges[:-1], edges[1:]):
            nodes = lo + (hi - lo) * (x + 1) / 2
            total += (hi - lo) / 2 * np.sum(w * bessel_J1(nodes))
        assert abs(total - (1.0 - bessel_J0(X))) <= 1e-10


def test_dispatch():
    assert bessel_J(2, 3.0) == bessel_J1(3.0)
    assert bessel_J(0, 3.0) == bessel_J0(3.0)
    assert bessel_J(3, 3.0) == bessel_half(3, 3.0)
