import cmath
import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from lerchmock.errors import BudgetExceeded, DecayCertificateFailed, PoleNearContour
from lerchmock.integral import ThetaKernel, theta_ray_integral
from lerchmock.quadrature import (ContourSpec, RayProfile, contour_integrate, integrate_interval,
                                  sec_pole_distance)


def gaussian(g):
    return np.exp(-math.pi * g * g)


def test_gaussian_normalization():
    est = contour_integrate(gaussian, ContourSpec(), RayProfile(gauss=-math.pi))
    assert abs(est.value - 1) <= est.error
    tight = contour_integrate(gaussian, ContourSpec(tolerance=1e-14), RayProfile(gauss=-math.pi))
    assert abs(tight.value - 1) < 1e-12


@given(st.floats(-0.7, 0.7))
def test_rotated_ray_gives_the_same_gaussian_integral(angle):
    sigma = cmath.exp(1j * angle)
    est = contour_integrate(gaussian, ContourSpec(direction=sigma), RayProfile(gauss=-math.pi))
    assert abs(est.value - 1) < 1e-10


def test_polynomial_exact():
    r = integrate_interval(lambda x: 3 * x ** 2 + 1, 0, 2, tol=1e-14)
    assert abs(r.value - 10) < 1e-13


def test_interval_error_estimate_covers_oscillation():
    r = integrate_interval(lambda x: np.cos(40 * x), 0, 1, tol=1e-12)
    assert abs(r.value - math.sin(40) / 40) <= max(r.error, 1e-15)


def test_theta_sech_termwise():
    # int theta3(h, q) sech(h) dh = sum_n q^(n^2) pi sech(pi n)
    q = 0.1
    nome = 1j * math.log(1 / q) / (2 * math.pi)
    est = theta_ray_integral(ThetaKernel(3, nome), sec_scale=1j, tol=1e-13)
    ref = math.pi * sum(q ** (n * n) / math.cosh(math.pi * n) for n in range(-8, 9))
    assert abs(est.value - ref) <= est.error + 1e-13


def test_growing_gaussian_is_refused():
    with pytest.raises(DecayCertificateFailed):
        contour_integrate(gaussian, ContourSpec(), RayProfile(gauss=+0.1))


def test_sec_without_decay_is_refused():
    with pytest.raises(DecayCertificateFailed):
        contour_integrate(lambda g: 1 / np.cos(g), ContourSpec(), RayProfile(sec_scale=1.0))


def test_pole_on_contour_is_refused():
    # sec(i g + pi/2 - i*0) has a pole at g = 0 on the real line
    spec = ContourSpec()
    prof = RayProfile(sec_scale=1j, sec_shift=math.pi / 2)
    assert sec_pole_distance(1j, math.pi / 2, 1.0) < 1e-12
    with pytest.raises(PoleNearContour):
        contour_integrate(lambda g: 1 / np.cos(1j * g + math.pi / 2), spec, prof)


def test_budget():
    with pytest.raises(BudgetExceeded):
        integrate_interval(lambda x: np.sin(1 / (x + 1e-9)), 0, 1, tol=1e-15, max_nodes=300)


def test_contour_spec_validation():
    with pytest.raises(ValueError):
        ContourSpec(direction=0)
    with pytest.raises(ValueError):
        ContourSpec(tolerance=0)
    with pytest.raises(ValueError):
        ContourSpec(truncation_scale=0.5)


def test_tail_bound_dominates_the_dropped_piece():
    prof = RayProfile(gauss=-0.05, sec_scale=1j)
    f = lambda g: np.exp(-0.05 * g * g) / np.cos(1j * g)
    T = 6.0
    dropped = 2 * integrate_interval(f, T, 80, tol=1e-16).value
    assert abs(dropped) <= prof.tail(1.0, T)


def test_doubling_truncation_stays_within_bound():
    prof = RayProfile(gauss=-0.3)
    f = lambda g: np.exp(-0.3 * g * g)
    a = contour_integrate(f, ContourSpec(tolerance=1e-6), prof)
    b = contour_integrate(f, ContourSpec(tolerance=1e-6, truncation_scale=2), prof)
    assert abs(a.value - b.value) <= a.error
    assert abs(b.value - math.sqrt(math.pi / 0.3)) < 1e-12
