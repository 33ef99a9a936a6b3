import cmath
import math

import mpmath as mp
import numpy as np
import pytest
from hypothesis import assume, given, strategies as st

from lerchmock import lerch, numeric as N, series
from lerchmock.errors import NomeOnUnitCircle, NomeOutsideDisk, PoleHit
from lerchmock.numeric import LerchParams, ZwegersParams

mp.mp.dps = 30

# mpmath reference values (30 digits), frozen
F_AT_E2PI = 1.00186048754781523046
ETA_01 = 0.890010099998999057012
THETA3_0_01 = 1.20020000200000021115
BETA_1 = 0.0121888821848028868924
Q0 = 0.3 + 0.2j
F_Q0 = 1.19798807101741757194 + 0.0665615616721306235617j
PHI_Q0 = 1.29370065855063179759 + 0.168530364179077491983j
PSI_Q0 = 0.300328836083316119605 + 0.387593416146568067630j
ETA_Q0 = 0.643581830642271736643 - 0.319438898523856677076j
TH3 = 1.55033934134151316091 + 0.287038985625362168345j   # theta3(0.3+0.1i, Q0)
TH4 = 0.449390586397007126618 - 0.250012465579393593273j
ETAD = 0.806528976051379896205 + 0.0179574751206361361291j  # eta_D(0.1+0.8i)

complex_small = st.builds(complex, st.floats(-0.5, 0.5), st.floats(-0.3, 0.3))
upper = st.builds(complex, st.floats(-0.5, 0.5), st.floats(0.3, 1.5))


def close(a, b, tol):
    return abs(complex(a) - complex(b)) <= tol


def test_theta_examples():
    assert N.theta3_num(0, 0).value == 1
    assert close(N.theta4_num(math.pi / 2, 0.3).value, N.theta3_num(0, 0.3).value, 1e-14)
    assert close(N.theta3_num(0, 0.1).value, THETA3_0_01, 1e-15)
    assert close(N.theta3_num(0.3 + 0.1j, Q0).value, TH3, 1e-13)
    assert close(N.theta4_num(0.3 + 0.1j, Q0).value, TH4, 1e-13)


@given(complex_small, st.builds(complex, st.floats(-0.5, 0.5), st.floats(-0.5, 0.5)))
def test_theta_against_mpmath(v, q):
    assume(abs(q) < 0.6)
    for kind, fn in ((3, N.theta3_num), (4, N.theta4_num)):
        est = fn(v, q)
        ref = complex(mp.jtheta(kind, v, q))
        assert abs(est.value - ref) <= est.error + 1e-15 * abs(ref)


def test_eta_examples():
    assert close(N.eta_num(0.1).value, ETA_01, 1e-15)
    assert close(N.eta_num(Q0).value, ETA_Q0, 1e-13)
    assert close(N.eta_dedekind_num(0.1 + 0.8j).value, ETAD, 1e-13)


def test_eta_modular_fixed_point():
    lhs = N.eta_dedekind_num(-1 / 1j).value
    assert close(lhs, N.eta_dedekind_num(1j).value, 1e-15)


@given(upper)
def test_eta_modular_law(z):
    assume(abs(z) > 0.4)
    lhs = N.eta_dedekind_num(-1 / z).value
    rhs = cmath.sqrt(-1j * z) * N.eta_dedekind_num(z).value
    assert abs(lhs - rhs) <= 1e-10 * abs(rhs)


def test_error_function_examples():
    assert N.beta_num(0) == 1.0
    assert N.erfE_num(0) == 0
    assert close(N.beta_num(1), BETA_1, 1e-15)
    assert close(N.beta_quad(1).value, BETA_1, 1e-15)


@given(st.floats(0, 6))
def test_beta_routes_agree(x):
    assert abs(N.beta_quad(x).value - N.beta_num(x)) < 1e-13


def test_mock_values():
    assert close(N.mock_num("f", math.exp(-2 * math.pi)).value, F_AT_E2PI, 1e-15)
    assert abs(N.mock_num("f", math.exp(-2 * math.pi)).value - 1.00186050) < 1e-7
    assert close(N.mock_num("f", Q0).value, F_Q0, 1e-13)
    assert close(N.mock_num("phi", Q0).value, PHI_Q0, 1e-13)
    assert close(N.mock_num("psi", Q0).value, PSI_Q0, 1e-13)


def test_mock_domain():
    with pytest.raises(NomeOnUnitCircle):
        N.mock_num("f", 1.0)
    with pytest.raises(NomeOutsideDisk):
        N.mock_num("phi", 2.0)
    with pytest.raises(NomeOutsideDisk):
        N.theta3_num(0, 1.2)


def test_f_outside_disk_matches_reciprocal_series():
    q = 0.2
    ref = sum(q ** n / mp.qp(-q, q, n) ** 2 for n in range(60))
    assert close(N.mock_num("f", 1 / q).value, complex(ref), 1e-14)
    assert abs(series.f_recip_series(40).evaluate(cmath.log(q) / (2j * math.pi)) - complex(ref)) < 1e-14


def test_watson_at_one_tenth():
    q = 0.1
    ef = N.eta_num(q).value * N.mock_num("f", q).value
    assert close(ef, N.watson_sum_num(q).value, 1e-12)


@given(st.builds(complex, st.floats(-0.5, 0.5), st.floats(-0.5, 0.5)))
def test_watson_identity_random(q):
    assume(0.01 < abs(q) < 0.55)
    ef = N.eta_num(q).value * N.mock_num("f", q).value
    assert abs(ef - N.watson_sum_num(q).value) < 1e-12


# --- Lerch sums -----------------------------------------------------------------

def test_lerch_S_constant_term():
    for y in (2.0, 4.0):
        s = N.lerch_num("S", LerchParams(1.0, 0.5), 1j * y).value
        assert abs(s - 0.5) < 2 * math.exp(-2 * math.pi * y)


def test_fc_sum_matches_exact_series():
    z = 0.8j
    direct = N.lerch_num("fc", LerchParams(3, 1, c=2), z).value
    assert abs(direct - lerch.fc_series(3, 1, 2, 60).evaluate(z)) < 1e-10


def test_general_sum_against_mpmath():
    z, w = 0.1 + 0.9j, 0.2 + 1.5j
    est = N.lerch_num("general", LerchParams(1.3, 0.4, A=2, B=0.3, w=w), z)
    ref = 0.109842738657809770446540918686 + 0.0431864129720649547106700664152j
    assert abs(est.value - ref) < 1e-14


# --- Zwegers objects ------------------------------------------------------------

def mp_theta(v, tau):
    return mp.nsum(lambda k: (-1) ** int(k) * mp.exp(2j * mp.pi * (tau * (k + 0.5) ** 2 / 2 + v * (k + 0.5))),
                   [-mp.inf, mp.inf])


def mp_R(u, tau):
    y, c = mp.im(tau), mp.im(u) / mp.im(tau)

    def term(k):
        nu = k + mp.mpf(1) / 2
        br = mp.sign(nu) - mp.erf(mp.sqrt(mp.pi) * (nu + c) * mp.sqrt(2 * y))
        return br * (-1) ** int(k) * mp.exp(-2j * mp.pi * nu * u - 1j * mp.pi * tau * nu * nu)
    return mp.nsum(term, [-mp.inf, mp.inf])


def test_zwegers_against_mpmath():
    tau, u, v = 0.1 + 1j, 0.2 + 0.1j, 0.35 - 0.05j
    assert close(N.theta_zw_num(v, tau).value, complex(mp_theta(v, tau)), 1e-13)
    assert close(N.R_zw_num(u, tau).value, complex(mp_R(u, tau)), 1e-13)
    a, b, q = (mp.exp(2j * mp.pi * x) for x in (u, v, tau))
    s = mp.nsum(lambda n: (-b) ** int(n) * q ** (n * (n + 1) / 2) / (1 - a * q ** n), [-mp.inf, mp.inf])
    ref = mp.exp(1j * mp.pi * u) * s / mp_theta(v, tau)
    assert close(N.mu_num(ZwegersParams(u, v, tau)).value, complex(ref), 1e-12)


@given(complex_small, upper)
def test_theta_is_odd(v, tau):
    assert abs(N.theta_zw_num(-v, tau).value + N.theta_zw_num(v, tau).value) < 1e-12


@given(st.floats(0.1, 0.4), st.floats(0.55, 0.9), st.floats(-0.2, 0.2), st.floats(0.6, 1.5))
def test_mu_symmetries(u, v, x, y):
    tau = complex(x, y)
    m = N.mu_num(ZwegersParams(u, v, tau)).value
    assert abs(N.mu_num(ZwegersParams(v, u, tau)).value - m) < 1e-11 * max(1, abs(m))
    assert abs(N.mu_num(ZwegersParams(u + 1, v, tau)).value + m) < 1e-11 * max(1, abs(m))
    assert abs(N.mu_num(ZwegersParams(-u, -v, tau)).value - m) < 1e-11 * max(1, abs(m))


@given(complex_small, upper)
def test_R_symmetries(u, tau):
    r = N.R_zw_num(u, tau).value
    assert abs(N.R_zw_num(-u, tau).value - r) < 1e-11
    assert abs(N.R_zw_num(u + 1, tau).value + r) < 1e-11


def test_R_stable_under_doubling():
    est = N.R_zw_num(0.3j, 1j)
    assert abs(N.R_zw_num(0.3j, 1j, terms=2 * est.work).value - est.value) < 1e-12


@given(st.floats(0.1, 0.4), st.floats(0.55, 0.9), st.floats(-0.2, 0.2), st.floats(0.6, 1.5))
def test_completed_sum_is_symmetric(u, v, x, y):
    tau = complex(x, y)
    assert abs(N.M_num(u, v, tau).value - N.M_num(v, u, tau).value) < 1e-11


def test_mu_pole():
    with pytest.raises(PoleHit):
        N.mu_num(ZwegersParams(0.0, 0.3, 1j))


def test_R_f_real_on_imaginary_axis():
    v = N.R_f_num(1j).value
    assert abs(v.imag) < 1e-15 and v.real != 0


def test_R_f_one_sided_differs():
    assert N.R_f_num(1j, bilateral=True).value != N.R_f_num(1j, bilateral=False).value


def test_half_plane_point():
    p = N.HalfPlanePoint(0.9j)
    assert abs(p.q - math.exp(-1.8 * math.pi)) < 1e-16
    with pytest.raises(NomeOutsideDisk):
        N.HalfPlanePoint(0.5)


def test_estimate_unpacks():
    v, e = N.eta_num(0.2)
    assert e > 0 and isinstance(v, complex)
    assert np.isfinite(e)
