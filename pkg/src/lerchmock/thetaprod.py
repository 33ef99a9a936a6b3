"""Theta products W and Q, the function F3, and F3-kernel Lerch integrals.

    W4_{a,p} = q^C (q^a; q^p)_inf (q^(p-a); q^p)_inf,   C = p/12 - a/2 + a^2/(2p)
    W3_{a,p} = the same with (-q^a; q^p)_inf (-q^(p-a); q^p)_inf
    Q4_{a,t} = q^(-a/12 + t^2/(4a)) prod_{n>=0} (1 - q^(2na+a-t)) (1 - q^(2na+a+t))
    Q3_{a,t} = the same with plus signs;  F3(a, t; z) = Q3_{a,t} at q = e(z)

``F3(a, t; z) = theta3(pi z t, e(a z)) e(z t^2/(4a)) / eta_D(2 a z)``, which is
how the integral envelopes below are derived; values themselves always come
from the truncated product.
"""
from __future__ import annotations

import cmath
import math
import time
from fractions import Fraction

import numpy as np

from . import _pykernels, kernels
from .errors import ConstraintViolation, LerchMockError, PreconditionFailed
from .integral import _c, _family_prefactor, _rel, _scaled, lerch_general_sum, theta_ray_integral
from .numeric import U, Estimate, _choose, eta_dedekind_num, theta3_num, theta4_num
from .report import IdentityReport, failed_report
from .series import FormalSeries, divisor_exp_series, pochhammer_series

__all__ = [
    "W_series", "W_check", "Q_series", "F3_num", "F3Kernel",
    "theta3_product_check", "F3_modular_check",
    "Stilde_num", "S_j_num", "SG_num", "SG_hat", "S0_num", "S_family",
]

PI = math.pi
DEFAULT_TOL = 1e-10


def _sign(kind: int) -> int:
    if kind not in (3, 4):
        raise ValueError("kind must be 3 or 4")
    return 1 if kind == 4 else -1


# ---------------------------------------------------------------------------
# exact W and Q

def W_offset(a_res, p) -> Fraction:
    a, p = Fraction(a_res), Fraction(p)
    return p / 12 - a / 2 + a * a / (2 * p)


def W_series(kind: int, a_res: int, p: int, order: int, route: str = "product") -> FormalSeries:
    """W3/W4 through ``q^(C + order)``; ``route`` is ``product`` or ``divisor``."""
    a, p, order = int(a_res), int(p), int(order)
    if not 0 < a < p:
        raise ConstraintViolation("need 0 < a < p")
    sign = _sign(kind)
    if route == "product":
        body = (pochhammer_series(a, p, math.inf, sign, order)
                * pochhammer_series(p - a, p, math.inf, sign, order))
    elif route == "divisor":
        body = divisor_exp_series(order, residue=a, modulus=p,
                                  weight="flat" if kind == 4 else "alternating")
    else:
        raise ValueError("route must be 'product' or 'divisor'")
    return body.shift(W_offset(a, p))


def _bilateral(kind: int, a: int, p: int, order: int) -> FormalSeries:
    """``sum_n (+-1)^n q^(p n^2/2 + (p - 2a) n/2)`` (integer exponents, all >= 0)."""
    terms = {}
    for n in range(-order - 1, order + 2):
        e = (p * n * n + (p - 2 * a) * n) // 2
        if e <= order:
            terms[e] = terms.get(e, 0) + ((-1) ** (n & 1) if kind == 4 else 1)
    return FormalSeries.from_terms(terms, order)


def W_check(kind: int, a_res: int, p: int, order: int = 40) -> IdentityReport:
    """Bilateral theta sum = q^(-C) eta(q^p) W, plus product vs divisor form of W."""
    t0 = time.perf_counter()
    a, p = int(a_res), int(p)
    lhs = _bilateral(kind, a, p, order)
    eta_p = pochhammer_series(p, p, math.inf, 1, order)
    C = W_offset(a, p)
    Wp = W_series(kind, a, p, order, "product")
    Wd = W_series(kind, a, p, order, "divisor")
    rhs = (eta_p * Wp).shift(-C)
    d1 = lhs.max_abs_difference(rhs)
    d2 = Wp.max_abs_difference(Wd)
    ident = "eq106-w4" if kind == 4 else "eq111-w3"
    return IdentityReport(ident, "exact", {"a": a, "p": p, "order": order},
                          float(max(d1, d2)), 0.0,
                          runtime_ms=(time.perf_counter() - t0) * 1e3,
                          details={"offset": str(C), "theta_vs_product": str(d1),
                                   "product_vs_divisor": str(d2)})


def Q_offset(a, t) -> Fraction:
    a, t = Fraction(a), Fraction(t)
    return -a / 12 + t * t / (4 * a)


def Q_series(kind: int, a, t, order, route: str = "product") -> FormalSeries:
    """Q3/Q4 through ``q^(offset + order)``.

    The product route accepts rationals with ``a > |t|``; the divisor route
    needs integers ``a > t > 0``.
    """
    a, t = Fraction(a), Fraction(t)
    sign = _sign(kind)
    if route == "product":
        if not a > abs(t):
            raise ConstraintViolation("product form needs a > |t|")
        body = (pochhammer_series(a - t, 2 * a, math.inf, sign, order)
                * pochhammer_series(a + t, 2 * a, math.inf, sign, order))
    elif route == "divisor":
        if a.denominator != 1 or t.denominator != 1 or not a > t > 0:
            raise ConstraintViolation("divisor form needs integers a > t > 0")
        body = divisor_exp_series(int(order), residue=int(a - t), modulus=int(2 * a),
                                  weight="flat" if kind == 4 else "alternating")
    else:
        raise ValueError("route must be 'product' or 'divisor'")
    return body.shift(Q_offset(a, t))


# ---------------------------------------------------------------------------
# numeric F3

def _prod_tail(a: float, y: float, m: float, N: int) -> float:
    """Bound on sum_{n>=N} |log(1 + q^(2na+a-t))| + |log(1 + q^(2na+a+t))|
    with |q^(2na+a+-t)| <= exp(-2 pi ((2na+a) y - m))."""
    r0 = math.exp(min(-2 * PI * ((2 * N * a + a) * y - m), 0.0))
    if r0 >= 1:
        return math.inf
    rho = math.exp(-4 * PI * a * y)
    return 2 * -math.log1p(-r0) / (1 - rho)


def _prod_terms(a: float, z: complex, m: float, tol: float) -> int:
    y = z.imag
    return _choose(lambda N: _prod_tail(a, y, m, N), tol, start=1)


def _log_q_pair(kind: int, a: float, z: complex, t, N: int):
    """``log(q^(-a/12+t^2/(4a)) prod_{n<N} (1 -+ q^(2na+a-t))(1 -+ q^(2na+a+t)))``."""
    t = np.asarray(t, dtype=complex)
    pre = 2j * PI * z * (-a / 12 + t * t / (4 * a))
    return pre + kernels.log_qprod_pair(z, a, 2 * a, t, N, 1.0 if kind == 3 else -1.0)


def Q_num(kind: int, a, t, z, tol: float = 1e-15, terms: int | None = None) -> Estimate:
    """Q3/Q4 at ``q = e(z)`` from the truncated product; ``t`` may be an array."""
    a, z = float(a), _c(z)
    if not a > 0 or not z.imag > 0:
        raise PreconditionFailed("need a > 0 and Im z > 0")
    tt = np.asarray(t, dtype=complex)
    m = float(np.max(np.abs((z * tt).imag))) if tt.size else 0.0
    N = int(terms) if terms is not None else _prod_terms(a, z, m, tol)
    logv = _log_q_pair(kind, a, z, tt, N)
    val = np.exp(logv)
    tail = _prod_tail(a, z.imag, m, N)
    # size of the summed logs, for the rounding term
    flat = tt.ravel()
    absum = np.abs(logv).ravel() + 1.0
    for n in range(N):
        e0 = n * 2 * a + a
        for s in (-1, 1):
            absum += np.abs(_pykernels._log1p_eq(z * (e0 + s * flat), 1.0 if kind == 3 else -1.0))
    rel = math.expm1(tail) + 8 * U * float(np.max(absum)) + 8 * (2 * N + 10) * U
    err = float(np.max(np.abs(val))) * rel
    if tt.ndim == 0:
        val = complex(val)
    return Estimate(val, err, N)


def F3_num(a, t, z, route: str = "product", tol: float = 1e-15,
           terms: int | None = None) -> Estimate:
    """F3(a, t; z) from the product (``route="product"``) or from
    ``theta3(pi z t, e(a z)) e(z t^2/(4a)) / eta_D(2 a z)`` (``route="theta"``)."""
    if route == "product":
        return Q_num(3, a, t, z, tol, terms)
    if route != "theta":
        raise ValueError("route must be 'product' or 'theta'")
    a, z = float(a), _c(z)
    if not a > 0 or not z.imag > 0:
        raise PreconditionFailed("need a > 0 and Im z > 0")
    t = np.asarray(t, dtype=complex) if np.ndim(t) else _c(t)
    th = theta3_num(PI * z * t, cmath.exp(2j * PI * a * z), tol, terms)
    eta = eta_dedekind_num(2 * a * z, tol, terms)
    g = np.exp(2j * PI * z * t * t / (4 * a))
    val = th.value * g / eta.value
    mag = float(np.max(np.abs(val)))
    err = (float(np.max(np.abs(g))) * th.error / abs(eta.value)
           + mag * eta.error / abs(eta.value))
    if np.ndim(val) == 0:
        val = complex(val)
    return Estimate(val, err, th.work + eta.work)


class F3Kernel:
    """``F3(a, c g; z)`` as a ray-integral kernel (values from the product).

    The envelope uses the theta form: a theta series with nome ``a z`` and
    argument ``pi z c g``, the Gaussian ``exp(i pi z c^2 g^2/(2a))`` and the
    constant ``1/|eta_D(2 a z)|``.
    """

    def __init__(self, a, z, c=1.0, rel_tol: float = 1e-17):
        a, z = float(a), _c(z)
        if not a > 0 or not z.imag > 0:
            raise PreconditionFailed("need a > 0 and Im z > 0")
        self.a, self.z, self.c = a, z, _c(c)
        self.rel_tol = rel_tol
        self.eta = eta_dedekind_num(2 * a * z).value

    def profile_fields(self) -> dict:
        a, z, c = self.a, self.z, self.c
        return dict(theta_alpha=2 * PI * (a * z).imag, theta_scale=PI * z * c,
                    theta_shift=0.0, gauss=1j * PI * z * c * c / (2 * a),
                    const=1.0 / abs(self.eta))

    def __call__(self, g, logscale):
        t = self.c * np.asarray(g, dtype=complex)
        m = float(np.max(np.abs((self.z * t).imag))) if t.size else 0.0
        N = _prod_terms(self.a, self.z, m, self.rel_tol)
        return np.exp(_log_q_pair(3, self.a, self.z, t, N) + logscale)


# ---------------------------------------------------------------------------
# numeric identities for F3

def theta3_product_check(a, t, z, tol: float = 1e-10) -> IdentityReport:
    """``theta3(pi z t, e(a z)) = q^(-t^2/(4a)) eta_D(2 a z) F3(a, t; z)`` and the
    theta4/Q4 companion; relative deviations."""
    t0 = time.perf_counter()
    a, t, z = float(a), _c(t), _c(z)
    out = {}
    worst = 0.0
    work = 0
    for kind, th_fn in ((3, theta3_num), (4, theta4_num)):
        th = th_fn(PI * z * t, cmath.exp(2j * PI * a * z))
        Q = Q_num(kind, a, t, z)
        rhs = cmath.exp(-2j * PI * z * t * t / (4 * a)) * eta_dedekind_num(2 * a * z).value * Q.value
        rel = _rel(rhs, th.value)
        out[f"theta{kind}"] = {"theta": th.value, "product": rhs, "rel": rel}
        worst = max(worst, rel)
        work += th.work + Q.work
    return IdentityReport("eq116-f3theta", "numeric", {"a": a, "t": t, "z": z}, worst, tol,
                          nodes_used=work, runtime_ms=(time.perf_counter() - t0) * 1e3,
                          details=out)


def F3_modular_check(a, t, z, tol: float = 1e-8) -> IdentityReport:
    """``F3(1/a, 2tz/a; -1/(4z)) = exp(-i pi t^2 z/(2a)) F3(a, t; z)``, relative."""
    t0 = time.perf_counter()
    a, t, z = float(a), _c(t), _c(z)
    ap, tp, zp = 1 / a, 2 * t * z / a, -1 / (4 * z)
    lhs = F3_num(ap, tp, zp)
    rhs = cmath.exp(-1j * PI * t * t * z / (2 * a)) * F3_num(a, t, z).value
    rel = _rel(lhs.value, rhs)
    return IdentityReport("eq123-f3modular", "numeric", {"a": a, "t": t, "z": z}, rel, tol,
                          nodes_used=lhs.work, runtime_ms=(time.perf_counter() - t0) * 1e3,
                          details={"lhs": lhs.value, "rhs": rhs,
                                   "primed": {"a": ap, "t": tp, "z": zp}})


# ---------------------------------------------------------------------------
# F3-kernel integrals

def _s_prefactor(b, A, B, z, w, variant, stated_sign):
    # the family prefactors of the theta integrals carry 1/pi; these do not
    pref, wu = _family_prefactor(b, A, B, z, w, variant, stated_sign)
    return pref * PI, wu


def Stilde_num(j, a, b, A, B, z, w, x=0.0, sigma=1.0, variant: str = "corrected",
               stated_sign: int = -1, tol: float = DEFAULT_TOL,
               truncation_scale: float = 1.0) -> Estimate:
    """``e^(-2 pi i B b z/A)/(2 A i w) int_{ray sigma} F3(1/a, 2g/a; -1/(4z))
    e^(i pi g^2 j/(2 a z)) e^(-2 pi i B g/A) e^(i g x) sec((g + b z) pi/(2 A w)) dg``.

    ``stated_sign=+1`` gives the ``i/(2 A w)`` prefactor instead.  The stated
    prefactor (``variant="stated"``) equals minus the Lerch sum over eta_D for
    Im w > 0; the default ``corrected`` variant reproduces it for either sign.
    """
    a, z, x = float(a), _c(z), _c(x)
    A, B, b = float(A), _c(B), _c(b)
    if not a > 0 or not A > 0:
        raise PreconditionFailed("need a > 0 and A > 0")
    pref, wu = _s_prefactor(b, A, B, z, w, variant, stated_sign)
    kern = F3Kernel(1 / a, -1 / (4 * z), 2 / a)
    est = theta_ray_integral(kern, sec_scale=PI / (2 * A * wu), sec_shift=b * PI * z / (2 * A * wu),
                             gauss=j * 1j * PI / (2 * a * z),
                             linear=(-2j * PI * B / A, 1j * x), sigma=sigma, tol=tol,
                             truncation_scale=truncation_scale)
    return _scaled(pref, est)


def S_j_num(j, a, b, z, w, sigma=1.0, variant: str = "corrected",
            tol: float = DEFAULT_TOL, truncation_scale: float = 1.0) -> Estimate:
    """``i/(2w) int_{ray sigma} F3(1/a, 2h/a; -1/(4z)) e^(i pi h^2 j/(2az))
    sec((h + b z) pi/(2w)) dh``."""
    return Stilde_num(j, a, b, 1.0, 0.0, z, w, sigma=sigma, variant=variant,
                      stated_sign=+1, tol=tol, truncation_scale=truncation_scale)


def SG_num(a, b, A, B, z, w, x=0.0, variant: str = "corrected",
           tol: float = DEFAULT_TOL) -> Estimate:
    """``S~_0`` on the real line with the extra factor ``e^(i g x)``."""
    return Stilde_num(0, a, b, A, B, z, w, x=x, sigma=1.0, variant=variant, tol=tol)


def SG_hat(a, b, A, B, z, w, s) -> complex:
    """Closed-form transform ``e^(-2 pi i B b z/A)/(2 A i w) F3(1/a, 2s/a; -1/(4z))
    e^(-2 pi i s B/A) sec(s pi/(2 A w) + b pi z/(2 A w))``."""
    a, A = float(a), float(A)
    b, B, z, w, s = map(_c, (b, B, z, w, s))
    F = F3_num(1 / a, 2 * s / a, -1 / (4 * z)).value
    return (cmath.exp(-2j * PI * B * b * z / A) / (2j * A * w) * F
            * cmath.exp(-2j * PI * s * B / A) / cmath.cos(s * PI / (2 * A * w) + b * PI * z / (2 * A * w)))


def S0_num(a, b, A, B, z, w) -> Estimate:
    """``sum q^(a n^2 + b n) / cosh(2 pi i w (A n + B)) / eta_D(2 a z)`` directly."""
    L = lerch_general_sum(3, a, b, A, B, z, w)
    eta = eta_dedekind_num(2 * float(a) * _c(z))
    val = L.value / eta.value
    return Estimate(val, L.error / abs(eta.value) + abs(val) * eta.error / abs(eta.value), L.work)


def S_family(name: str, params: dict, arg=None, tol: float = DEFAULT_TOL) -> complex:
    """Dispatch by name: ``S0`` (direct sum), ``S_j``, ``Stilde_j`` (``arg`` = ray),
    ``SG`` (``arg`` = x) and ``SG_hat`` (``arg`` = s)."""
    p = dict(params)
    if name == "S0":
        return S0_num(p["a"], p["b"], p.get("A", 1), p.get("B", 0), p["z"], p["w"]).value
    if name == "S_j":
        return S_j_num(p.get("j", 0), p["a"], p["b"], p["z"], p["w"],
                       sigma=1.0 if arg is None else arg, tol=tol).value
    if name == "Stilde_j":
        return Stilde_num(p.get("j", 0), p["a"], p["b"], p["A"], p["B"], p["z"], p["w"],
                          sigma=1.0 if arg is None else arg, tol=tol).value
    if name == "SG":
        return SG_num(p["a"], p["b"], p["A"], p["B"], p["z"], p["w"],
                      x=0.0 if arg is None else arg, tol=tol).value
    if name == "SG_hat":
        return SG_hat(p["a"], p["b"], p["A"], p["B"], p["z"], p["w"], 0.0 if arg is None else arg)
    raise ValueError(f"unknown member {name!r}")


# ---------------------------------------------------------------------------
# transform laws (called through integral.verify_transform)

def _primed(a, b, z, w, B=0.0, bvar="z"):
    ap, zp = 1 / a, -1 / (4 * z)
    return {"a": ap, "z": zp, "w": 2 * w * ap * zp, "B": -2 * B * a * z,
            "b": 2 * b * ap * (z if bvar == "z" else zp)}


def _try(fn):
    try:
        return fn()
    except LerchMockError as exc:
        return f"{type(exc).__name__}: {exc}"


def _thm16(p, tol):
    """S_1(primed; ray z') against S_0(unprimed; ray a), both with the stated
    prefactor i/(2w), plus the corrected S_0 against the direct sum.

    The law is a change of variables, so it holds with the same stated
    prefactor on both sides; the corrected prefactor carries sign(Im w') on
    the left and sign(Im w) on the right, which disagree when Im w' < 0.
    """
    a, b, z, w = float(p["a"]), _c(p["b"]), _c(p["z"]), _c(p["w"])
    rhs = S_j_num(0, a, b, z, w, sigma=1.0, variant="stated", tol=tol)
    corr = S_j_num(0, a, b, z, w, sigma=1.0, tol=tol)
    direct = S0_num(a, b.real, 1.0, 0.0, z, w) if b.imag == 0 else None
    out = {"S0_stated": rhs.value, "S0_corrected": corr.value}
    work = rhs.work + corr.work
    if direct is not None:
        out["direct"] = direct.value
        out["S0_vs_direct"] = _rel(corr.value, direct.value)
    errs = {}
    for bvar in ("z", "zp"):
        pr = _primed(a, b, z, w, bvar=bvar)
        sig = pr["z"] / abs(pr["z"])
        res = _try(lambda: S_j_num(1, pr["a"], pr["b"], pr["z"], pr["w"], sigma=sig,
                                   variant="stated", tol=tol))
        if isinstance(res, str):
            out[f"b_prime_{bvar}"] = res
            errs[bvar] = math.inf
        else:
            errs[bvar] = _rel(res.value, rhs.value)
            out[f"b_prime_{bvar}"] = errs[bvar]
            work += res.work
            if bvar == "z":
                cl = S_j_num(1, pr["a"], pr["b"], pr["z"], pr["w"], sigma=sig, tol=tol)
                out["corrected_both_sides"] = _rel(cl.value, corr.value)
    out["resolution"] = min(errs, key=errs.get)
    err = max(errs["z"], out.get("S0_vs_direct", 0.0))
    return err, out, work


def _thm20(p, tol):
    """S~_j(primed; sigma) = -S~_(1-j)(unprimed; sigma a z) with sigma = z'/|z'|,
    plus S~_0 on the real line against the direct sum."""
    a, b, A, B, z, w = (p[k] for k in ("a", "b", "A", "B", "z", "w"))
    a, A, b, B, z, w = float(a), float(A), _c(b), _c(B), _c(z), _c(w)
    out = {}
    work = 0
    direct = S0_num(a, b.real, A, B.real, z, w) if b.imag == 0 and B.imag == 0 else None
    for variant in ("stated", "corrected"):
        s0 = Stilde_num(0, a, b, A, B, z, w, sigma=1.0, variant=variant, tol=tol)
        work += s0.work
        if direct is not None:
            out[f"S0_{variant}_vs_direct"] = _rel(s0.value, direct.value)
    sigma = -1 / (4 * z)
    sigma /= abs(sigma)
    main = math.inf
    for variant in ("stated", "corrected"):
        for bvar in ("z", "zp"):
            pr = _primed(a, b, z, w, B, bvar)
            rec = {}
            for j in (0, 1):
                def pair(j=j, pr=pr, variant=variant):
                    lhs = Stilde_num(j, pr["a"], pr["b"], A, pr["B"], pr["z"], pr["w"],
                                     sigma=sigma, variant=variant, tol=tol)
                    rhs = Stilde_num(1 - j, a, b, A, B, z, w, sigma=sigma * a * z,
                                     variant=variant, tol=tol)
                    return lhs, rhs
                res = _try(pair)
                if isinstance(res, str):
                    rec[f"j{j}"] = res
                else:
                    lhs, rhs = res
                    rec[f"j{j}"] = _rel(lhs.value, -rhs.value)
                    work += lhs.work + rhs.work
            out[f"{variant}_b_prime_{bvar}"] = rec
            if variant == "stated" and bvar == "z":
                nums = [v for v in rec.values() if isinstance(v, float)]
                main = max(nums) if nums else math.inf
    return main, out, work


def _thm21(p, tol):
    a, b, A, B, z, w, s = (p[k] for k in ("a", "b", "A", "B", "z", "w", "s"))
    a, A = float(a), float(A)
    b, B, z, w, s = map(_c, (b, B, z, w, s))
    rhs = -2 * a * z * cmath.exp(1j * PI * s * s / (2 * a * z)) * SG_hat(a, b, A, B, z, w, s)
    out, errs = {}, {}
    for bvar in ("z", "zp"):
        pr = _primed(a, b, z, w, B, bvar)
        sp = 2 * s * pr["a"] * pr["z"]
        lhs = SG_hat(pr["a"], pr["b"], A, pr["B"], pr["z"], pr["w"], sp)
        errs[bvar] = _rel(lhs, rhs)
        out[f"b_prime_{bvar}"] = errs[bvar]
    out["resolution"] = min(errs, key=errs.get)
    return errs["z"], out, 0
