import cmath
import math

import pytest
from hypothesis import given, settings, strategies as st

from lerchmock import integral as I
from lerchmock.errors import PreconditionFailed, UnknownIdentity

# mpmath references, frozen
S_11I = 0.500006974660389474
LERCH4_3_1 = 0.99999999969972058        # sum (-1)^n q^(3n^2+n)/cosh(2 pi i w n), z = 0.9i, w = 1.8i
PHI_09I = 1.00350039665617875
PSI_MINUS_Q_08I = -0.0065186465056719
GENERAL_REF = 0.10984273865780977 + 0.043186412972064955j


def e(z):
    return cmath.exp(2j * math.pi * z)


# --- log theta4 integrals -------------------------------------------------------

@pytest.mark.parametrize("q,want", [(0.1, -0.317332591271696), (0.3, -1.03568988579883)])
def test_single_cosine_examples(q, want):
    est = I.logtheta4_integral([1], q)
    assert abs(est.value - want) < 1e-13
    assert abs(I.logtheta4_series([1], q) - want) < 1e-13


def test_zero_weight_gives_zero():
    assert I.logtheta4_integral([0, 0, 0], 0.3).value == 0
    assert I.logtheta4_integral([], 0.3).value == 0


@settings(max_examples=15)
@given(st.lists(st.floats(-1, 1), min_size=1, max_size=4), st.floats(0.05, 0.5))
def test_cosine_weights_match_series(coeffs, q):
    est = I.logtheta4_integral(coeffs, q)
    assert abs(est.value - I.logtheta4_series(coeffs, q)) < 1e-11


@pytest.mark.parametrize("q", [0.1, 0.2, 0.3 + 0.2j])
def test_eta_f_from_log_theta(q):
    rep = I.eta_f_log_theta_check(q)
    assert rep.status == "pass"
    assert rep.details["delta_watson"] < 1e-10


def test_combined_psi_integral_has_the_opposite_sign():
    z = 0.9j
    rep = I.psi_log_theta_check(1.5, 0.5, e(z), z=z)
    d = rep.details
    assert d["psi1"]["delta"] < 1e-12 and d["psi2"]["delta"] < 1e-12
    # the closed-form combined series differs from the integral by a sign
    assert d["psi_combined"]["delta"] > 1e-5
    assert d["psi_combined"]["delta_sign_flipped"] < 1e-12
    assert d["psi_sinh_form"]["delta_vs_combined_over_pi"] > 1e-6
    assert rep.status == "fail"


def test_combined_psi_integral_vanishes_for_b_zero():
    z = 0.9j
    assert abs(I.psi_log_theta_check(1.5, 0.0, e(z), z=z).details["I"]) < 1e-15


def test_thm4_needs_positive_a():
    with pytest.raises(PreconditionFailed):
        I.psi_log_theta_check(0, 1, 0.1)


# --- theta integrals against Lerch sums ----------------------------------------

def test_alternating_lerch_example():
    z = 0.9j
    est = I.theta_integral_rep(4, 3, 1, z, 2 * z)
    assert abs(est.value - LERCH4_3_1) < 1e-11
    assert abs(I.lerch_general_sum(4, 3, 1, 1, 0, z, 2 * z).value - LERCH4_3_1) < 1e-15


@pytest.mark.parametrize("kind", [3, 4])
@pytest.mark.parametrize("z", [0.9j, 0.1 + 0.9j, -0.2 + 1.1j])
def test_theta_integral_matches_sum(kind, z):
    for a, b, w in ((1.5, 0.0, z / 2), (3.0, 1.0, 2 * z), (2.0, 0.5, 1.3 * z)):
        J = I.theta_integral_rep(kind, a, b, z, w)
        L = I.lerch_general_sum(kind, a, b, 1, 0, z, w)
        assert abs(J.value - L.value) < 1e-9


def test_general_representation_example():
    args = (3, 1.3, 0.4, 2, 0.3, 0.1 + 0.9j, 0.2 + 1.5j)
    assert abs(I.general_integral_rep(*args).value - GENERAL_REF) < 1e-11
    stated = I.general_integral_rep(*args, variant="stated").value
    assert abs(stated + GENERAL_REF) < 1e-11


def test_general_reduces_to_theta_form():
    z, w = 0.9j, 1.8j
    g = I.general_integral_rep(3, 3, 1, 1, 0, z, w).value
    t = I.theta_integral_rep(3, 3, 1, z, w).value
    assert abs(g - t) < 1e-14


def test_corrected_prefactor_follows_im_w():
    z = 0.9j
    up = I.theta_integral_rep(3, 3, 1, z, 2 * z).value
    down = I.theta_integral_rep(3, 3, 1, z, -2 * z).value
    assert abs(up - down) < 1e-11
    stated_down = I.theta_integral_rep(3, 3, 1, z, -2 * z, variant="stated").value
    assert abs(stated_down + up) < 1e-11


def test_bad_variant():
    with pytest.raises(ValueError):
        I.theta_integral_rep(3, 3, 1, 0.9j, 1.8j, variant="other")


def test_theta_integral_preconditions():
    with pytest.raises(PreconditionFailed):
        I.theta_integral_rep(3, -1, 0, 0.9j, 1j)
    with pytest.raises(PreconditionFailed):
        I.theta_integral_rep(3, 1, 0, -0.9j, 1j)


# --- mock theta functions --------------------------------------------------------

def test_f_at_e_minus_2pi():
    r = I.f_integral_route(1j)
    assert abs(r["integral"].value - 1.00186050) < 1e-7
    assert r["delta"] < 1e-10


def test_phi_integral():
    r = I.phi_integral_route(0.9j)
    assert abs(r["integral"].value - PHI_09I) < 1e-10
    assert abs(r["series"].value - PHI_09I) < 1e-14


def test_psi_integral_is_close_but_not_exact():
    r = I.psi_integral_route(0.8j)
    assert abs(r["series"].value - PSI_MINUS_Q_08I) < 1e-15
    assert r["delta"] < 1e-7
    assert r["delta"] > 100 * r["integral"].error


# --- xi pieces --------------------------------------------------------------------

def test_S_example():
    assert abs(I.S_sum(1, 1, 1j).value - S_11I) < 1e-15


def test_xi_routes_agree():
    for n in (0, 1, -2, 3):
        d = I.xi_num(n, 1, 1, 1j, "direct").value
        p = I.xi_num(n, 1, 1, 1j, "parseval").value
        assert abs(d - p) < 1e-11


@pytest.mark.parametrize("L", [0.5, 2.0, 3.0])
def test_xi_scaled_route_is_independent_of_L(L):
    ref = I.xi_num(1, 1, 1, 1j, "parseval").value
    assert abs(I.xi_num(1, 1, 1, 1j, "scaled", L=L).value - ref) < 1e-11


def test_xi_reassembles_S():
    assert abs(I.xi_reassembly(1, 1, 1j).value - S_11I) < 1e-11


def test_xi_bad_route():
    with pytest.raises(ValueError):
        I.xi_num(0, 1, 1, 1j, "other")


# --- P functions -------------------------------------------------------------------

def test_p0_is_S():
    assert abs(I.p_j(0, 3, 1, 0.9j).value - I.S_sum(3, 1, 0.9j).value) < 1e-11


def test_P0_is_the_Lerch_sum():
    z, w = 0.9j, 1.8j
    p0 = I.Pj_num(0, 3, 1, z, w).value
    assert abs(p0 - I.lerch_general_sum(3, 3, 1, 1, 0, z, w).value) < 1e-9


def test_PG_reduces_to_P0():
    z, w = 0.9j, 1.8j
    assert abs(I.PG_num(3, 1, 1, 0, z, w).value - I.Pj_num(0, 3, 1, z, w).value) < 1e-14


def test_hat_functions_at_origin():
    # theta3(0, q) / w and the same with the i from the other prefactor
    th = I.theta3_num(0, e(0.5j)).value
    assert abs(I.Pj_hat(0, 1, 1, 0.5j, 1j, 0) - 1j / 1j * th / cmath.cos(math.pi * 0.5j / 2j)) < 1e-14
    assert abs(I.PG_hat(1, 1, 1, 0, 0.5j, 1j, 0) + I.Pj_hat(0, 1, 1, 0.5j, 1j, 0)) < 1e-14


# --- modular laws ------------------------------------------------------------------

@given(st.floats(0.4, 2.0), st.builds(complex, st.floats(-0.3, 0.3), st.floats(0.5, 1.5)),
       st.builds(complex, st.floats(-1, 1), st.floats(-0.2, 0.2)))
def test_theta_modular_fixed_form(a, z, w):
    r = I.theta3_modular_check(a, z, w)
    assert r["delta"] < 1e-10 * max(1.0, abs(r["rhs"]))


@given(st.builds(complex, st.floats(-0.5, 0.5), st.floats(0.3, 1.5)), st.floats(-3, 3))
def test_poisson_sum(w, t):
    assert I.poisson_check(w, t)["delta"] < 1e-10


def test_poisson_needs_upper_half_plane():
    with pytest.raises(PreconditionFailed):
        I.poisson_check(-1j, 0.1)


# --- transforms --------------------------------------------------------------------

def test_primed_variables():
    p = I.primed(2, 1j, w=1j, b=1, B=0.5, variant="z")
    assert p["a"] == 0.5 and abs(p["z"] - 0.25j) < 1e-16
    assert abs(p["w"] + 0.25) < 1e-16
    assert abs(p["b"] - 1j) < 1e-16
    assert abs(p["B"] + 2j) < 1e-16


def test_hat_transform_example():
    rep = I.verify_transform("thm11", {"a": 1, "b": 1, "z": 0.5j, "w": 1j, "gamma": 0.3})
    assert rep.status == "pass" and rep.max_abs_error < 1e-12
    assert rep.details["resolution"] == "z"


def test_p_transform():
    rep = I.verify_transform("thm9", {"a": 1, "b": 1, "z": 1j})
    assert rep.status == "pass"


def test_convolution_law_does_not_converge_at_its_point():
    rep = I.verify_transform("thm12", {"a": 3, "b": 1, "z": 0.9j, "w": 1.8j})
    assert rep.status == "fail" and rep.max_abs_error == math.inf
    assert "grows" in rep.details["j0"]["rhs_error"]


def test_unknown_transform():
    with pytest.raises(UnknownIdentity):
        I.verify_transform("thm99", {})
