"""Double-precision evaluation with certified truncation bounds.

Every evaluator returns an :class:`Estimate` holding the value, an upper bound
on ``|value - exact|`` (discarded tail plus a rounding allowance) and the
number of terms or factors used.  Passing ``terms=N`` fixes the truncation;
otherwise the smallest N meeting ``tol`` is chosen.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field

import numpy as np
from scipy import special

from . import kernels
from .errors import (
    NomeOnUnitCircle,
    NomeOutsideDisk,
    PoleHit,
    ThetaZero,
    TruncationFailure,
    UnknownFamily,
)

__all__ = [
    "Estimate", "HalfPlanePoint", "ZwegersParams", "LerchParams",
    "e", "gaussian_tail",
    "theta3_num", "theta4_num", "eta_num", "eta_dedekind_num",
    "erfE_num", "beta_num", "beta_quad",
    "theta_zw_num", "mu_num", "R_zw_num", "M_num", "R_f_num",
    "lerch_num", "mock_num", "watson_sum_num", "theta_log_scaled", "log_sec",
]

U = 2.0 ** -53
MAX_TERMS = 200_000
DEFAULT_TOL = 1e-15


@dataclass(frozen=True)
class Estimate:
    value: complex
    error: float
    work: int = 0

    def __complex__(self):
        return complex(self.value)

    def __iter__(self):
        yield self.value
        yield self.error


def e(x):
    """exp(2 pi i x)."""
    return np.exp(2j * np.pi * np.asarray(x, dtype=complex)) if np.ndim(x) else cmath.exp(2j * math.pi * x)


@dataclass(frozen=True)
class HalfPlanePoint:
    """A point z of the upper half-plane; the nome q = e(z) is derived on demand."""
    z: complex

    def __post_init__(self):
        z = complex(self.z)
        object.__setattr__(self, "z", z)
        if not z.imag > 0:
            raise NomeOutsideDisk(f"Im z must be positive, got {z}")

    @property
    def q(self) -> complex:
        return cmath.exp(2j * math.pi * self.z)


@dataclass(frozen=True)
class ZwegersParams:
    u: complex
    v: complex
    tau: complex

    def __post_init__(self):
        for k in ("u", "v", "tau"):
            object.__setattr__(self, k, complex(getattr(self, k)))
        if not self.tau.imag > 0:
            raise NomeOutsideDisk("Im tau must be positive")

    @property
    def a(self):
        return cmath.exp(2j * math.pi * self.u)

    @property
    def b(self):
        return cmath.exp(2j * math.pi * self.v)


@dataclass(frozen=True)
class LerchParams:
    """Parameters of the sums sum (+-1)^n q^(a n^2 + b n) / cosh(2 pi i w (A n + B))."""
    a: float
    b: float = 0.0
    c: float = 1.0
    A: float = 1.0
    B: float = 0.0
    w: complex | None = None
    alternating: bool = False

    def __post_init__(self):
        if not self.a > 0:
            raise ValueError("a must be positive")
        if self.c == 0:
            raise ValueError("c must be nonzero")
        if self.w is not None and complex(self.w).imag == 0:
            raise ValueError("Im w must be nonzero")


# ---------------------------------------------------------------------------
# tails

def gaussian_tail(alpha: float, beta: float, start: int, shift: float = 0.0) -> float:
    """Upper bound for ``sum_{n >= start} exp(-alpha (n+shift)^2 + beta (n+shift))``.

    Terms are summed explicitly until they are past the vertex and the
    ratio of consecutive terms drops below 1/2; the rest is bounded by a
    geometric series.
    """
    if alpha <= 0:
        return math.inf
    total = 0.0
    n = start
    vertex = beta / (2 * alpha) - shift
    while True:
        x = n + shift
        t = -alpha * x * x + beta * x
        log_ratio = -alpha * (2 * x + 1) + beta
        if n > vertex and log_ratio < -0.69:
            if t < -745:
                return total
            ratio = math.exp(log_ratio)
            return total + math.exp(t) / (1 - ratio)
        total += math.exp(min(t, 700))
        n += 1
        if n - start > MAX_TERMS:
            raise TruncationFailure("tail bound did not settle")


def _choose(tail_at, tol, start=1, limit=MAX_TERMS):
    """Smallest N >= start with tail_at(N) <= tol."""
    N = start
    while tail_at(N) > tol:
        N = max(N + 1, int(N * 1.25))
        if N > limit:
            raise TruncationFailure("truncation bound cannot be met within the term budget")
    lo = max(start, int(N / 1.25))
    while lo < N and tail_at(lo) <= tol:
        N = lo
        lo = max(start, lo - 1)
        if lo == N:
            break
    return N


def _rounding(n_terms: int, abs_sum: float) -> float:
    return 8.0 * (n_terms + 10) * U * abs_sum


def _logq(q: complex) -> complex:
    q = complex(q)
    if abs(q) >= 1:
        raise NomeOutsideDisk(f"|q| = {abs(q)} is not below 1")
    return cmath.log(q)


# ---------------------------------------------------------------------------
# theta and eta

def _theta(v, q, alternating, tol, terms):
    q = complex(q)
    if q == 0:
        v = np.asarray(v, dtype=complex)
        val = np.ones_like(v) if v.ndim else 1.0 + 0j
        return Estimate(val if v.ndim else complex(val), 0.0, 0)
    logq = _logq(q)
    alpha = -logq.real
    vv = np.asarray(v, dtype=complex)
    beta = 2 * float(np.max(np.abs(vv.imag))) if vv.size else 0.0
    tail = lambda N: 2 * gaussian_tail(alpha, beta, N + 1)
    if terms is None:
        scale = math.exp(min(beta * beta / (4 * alpha), 700))
        N = _choose(tail, tol * max(1.0, scale), start=1)
    else:
        N = int(terms)
    val = kernels.theta_sum(vv, logq, N, alternating)
    ns = np.arange(-N, N + 1)
    absum = float(np.sum(np.exp(-alpha * ns * ns + beta * np.abs(ns))))
    err = tail(N) + _rounding(2 * N + 1, absum)
    if vv.ndim == 0:
        val = complex(val)
    return Estimate(val, err, N)


def theta3_num(v, q, tol: float = DEFAULT_TOL, terms: int | None = None) -> Estimate:
    """``sum_n q^(n^2) e^(2 i n v)``; v may be an array (the bound covers all entries)."""
    return _theta(v, q, False, tol, terms)


def theta4_num(v, q, tol: float = DEFAULT_TOL, terms: int | None = None) -> Estimate:
    """``sum_n (-1)^n q^(n^2) e^(2 i n v)``."""
    return _theta(v, q, True, tol, terms)


def _eta_tail(r: float, N: int) -> float:
    """Bound on sum_{n > N} |log(1 - q^n)| for |q| = r."""
    rn = r ** (N + 1)
    if rn >= 1:
        return math.inf
    return -math.log1p(-rn) / (1 - r) if r < 1 else math.inf


def eta_num(q, tol: float = DEFAULT_TOL, terms: int | None = None) -> Estimate:
    """``prod_{n>=1} (1 - q^n)``."""
    q = complex(q)
    if q == 0:
        return Estimate(1.0 + 0j, 0.0, 0)
    r = abs(q)
    if r >= 1:
        raise NomeOutsideDisk(f"|q| = {r} is not below 1")
    tail = lambda N: math.expm1(_eta_tail(r, N)) * 2.0
    N = int(terms) if terms is not None else _choose(tail, tol, start=1)
    ns = np.arange(1, N + 1)
    factors = 1 - q ** ns
    val = complex(np.prod(factors))
    err = abs(val) * math.expm1(_eta_tail(r, N)) + _rounding(N, float(np.prod(1 + r ** ns)))
    return Estimate(val, err, N)


def eta_dedekind_num(z, tol: float = DEFAULT_TOL, terms: int | None = None) -> Estimate:
    """``e(z/24) prod_{n>=1} (1 - e(n z))``."""
    z = complex(z)
    HalfPlanePoint(z)
    pre = cmath.exp(2j * math.pi * z / 24)
    est = eta_num(cmath.exp(2j * math.pi * z), tol, terms)
    return Estimate(pre * est.value, abs(pre) * est.error, est.work)


def theta_log_scaled(v, logq: complex, logscale=0.0, alternating: bool = False,
                     rel_tol: float = 1e-17):
    """``sum_n (+-1)^n exp(n^2 logq + 2 i n v + logscale)`` for arrays v, logscale.

    Only the indices within reach of the dominant one ``n* = -Im v / alpha``
    (alpha = -Re logq) are summed, and ``logscale`` is added inside each
    exponent, so a large theta value multiplied by a small factor never
    overflows.  Returns ``(values, bound)`` where ``bound`` is an absolute
    bound of the discarded terms plus rounding for each entry.
    """
    v = np.asarray(v, dtype=complex)
    shape = v.shape
    v = v.ravel()
    L = np.broadcast_to(np.asarray(logscale, dtype=complex), shape).ravel()
    logq = complex(logq)
    alpha = -logq.real
    if not alpha > 0:
        raise NomeOutsideDisk("|q| must be below 1")
    K = int(math.ceil(math.sqrt(-math.log(rel_tol) / alpha))) + 1
    center = np.rint(-v.imag / alpha)
    n = center[:, None] + np.arange(-K, K + 1)[None, :]
    E = n * n * logq + 2j * n * v[:, None] + L[:, None]
    terms = np.exp(E)
    if alternating:
        terms = terms * np.where(n % 2 == 0, 1.0, -1.0)
    vals = terms.sum(axis=1)
    peak = np.exp(np.max(E.real, axis=1))
    ratio = math.exp(-alpha * K * K)
    tail = 2 * peak * ratio / (1 - math.exp(-alpha * K))
    err = tail + 8 * (2 * K + 10) * U * np.abs(terms).sum(axis=1)
    return vals.reshape(shape), err.reshape(shape)


def log_sec(u):
    """``(log_mag, unit)`` with ``sec(u) = exp(log_mag) * unit`` computed without overflow.

    ``sec(u) = 2 e^(i s u) / (1 + e^(2 i s u))`` with ``s = sign(Im u)``;
    ``log_mag = log 2 + i s u`` (complex) and ``unit = 1/(1 + e^(2 i s u))``.
    """
    u = np.asarray(u, dtype=complex)
    s = np.where(u.imag >= 0, 1.0, -1.0)
    x = 1j * s * u
    return math.log(2) + x, 1.0 / (1.0 + np.exp(2 * x))


# ---------------------------------------------------------------------------
# error functions

def erfE_num(x):
    """``E(x) = erf(sqrt(pi) x)`` (complex argument allowed)."""
    return special.erf(math.sqrt(math.pi) * np.asarray(x)) if np.ndim(x) else complex(
        special.erf(math.sqrt(math.pi) * complex(x)))


def beta_num(x: float) -> float:
    """``beta(x) = int_x^inf t^(-1/2) e^(-pi t) dt = 1 - E(sqrt x)``."""
    x = float(x)
    if x < 0:
        raise ValueError("beta needs x >= 0")
    return 1.0 - float(special.erf(math.sqrt(math.pi * x)))


def beta_quad(x: float, tol: float = 1e-15, span: float = 8.0) -> Estimate:
    """beta by quadrature of ``2 int_{sqrt x}^inf e^(-pi u^2) du`` (t = u^2),
    cut off at ``sqrt x + span``."""
    from .quadrature import integrate_interval

    x = float(x)
    if x < 0:
        raise ValueError("beta needs x >= 0")
    lo = math.sqrt(x)
    hi = lo + float(span)
    tail = math.exp(-math.pi * hi * hi) / (2 * math.pi * hi)
    res = integrate_interval(lambda u: 2 * np.exp(-math.pi * u * u), lo, hi, tol=tol)
    return Estimate(res.value.real, res.error + 2 * tail, res.work)


# ---------------------------------------------------------------------------
# Zwegers' objects

def theta_zw_num(v, tau, tol: float = DEFAULT_TOL, terms: int | None = None) -> Estimate:
    """``sum_{nu in Z+1/2} (-1)^(nu-1/2) q^(nu^2/2) b^nu`` with q = e(tau), b = e(v)."""
    v, tau = complex(v), complex(tau)
    y = tau.imag
    if not y > 0:
        raise NomeOutsideDisk("Im tau must be positive")
    alpha = math.pi * y
    beta = 2 * math.pi * abs(v.imag)
    tail = lambda N: 2 * gaussian_tail(alpha, beta, N, shift=0.5)
    N = int(terms) if terms is not None else _choose(tail, tol, start=1)
    k = np.arange(-N, N)
    nu = k + 0.5
    sgn = np.where(k % 2 == 0, 1.0, -1.0)
    t = sgn * np.exp(2j * np.pi * (tau * nu * nu / 2 + v * nu))
    absum = float(np.sum(np.abs(t)))
    return Estimate(complex(np.sum(t)), tail(N) + _rounding(2 * N, absum), N)


def mu_num(p: ZwegersParams, tol: float = DEFAULT_TOL, terms: int | None = None) -> Estimate:
    """Normalized Lerch sum ``a^(1/2)/theta(v) sum_n (-b)^n q^(n(n+1)/2) / (1 - a q^n)``."""
    u, v, tau = p.u, p.v, p.tau
    y = tau.imag
    alpha = math.pi * y
    la = -2 * math.pi * u.imag           # log|a|
    lq = -2 * math.pi * y                # log|q|
    lb = -2 * math.pi * v.imag           # log|b|

    def tail(N):
        # need |a q^n| <= 1/2 for n > N and |a q^n| >= 2 for n < -N
        if la + lq * (N + 1) > -math.log(2) or la - lq * (N + 1) < math.log(2):
            return math.inf
        up = gaussian_tail(alpha, lb + lq / 2, N + 1)
        down = gaussian_tail(alpha, -lb + lq / 2 - lq, N + 1) * math.exp(-la)
        return 2 * (up + down)

    N = int(terms) if terms is not None else _choose(tail, tol * 1e-2, start=1)
    n = np.arange(-N, N + 1)
    a = cmath.exp(2j * math.pi * u)
    den = 1 - a * np.exp(2j * np.pi * tau * n)
    if np.min(np.abs(den)) < 1e-13:
        raise PoleHit("1 - a q^n vanishes for some summed n")
    num = np.where(n % 2 == 0, 1.0, -1.0) * np.exp(2j * np.pi * (v * n + tau * n * (n + 1) / 2))
    terms_ = num / den
    S = complex(np.sum(terms_))
    s_err = tail(N) + _rounding(2 * N + 1, float(np.sum(np.abs(terms_))))
    th = theta_zw_num(v, tau, tol=tol)
    if abs(th.value) <= 10 * th.error or abs(th.value) < 1e-300:
        raise ThetaZero("theta(v; tau) vanishes")
    pre = cmath.exp(1j * math.pi * u)
    val = pre * S / th.value
    err = abs(pre) * (s_err / abs(th.value) + abs(S) * th.error / (abs(th.value) * (abs(th.value) - th.error)))
    return Estimate(val, err, N)


def _log_erfc(x):
    """log erfc(x) for real arrays, stable for large |x|."""
    return math.log(2) + special.log_ndtr(-np.sqrt(2.0) * x)


def R_zw_num(z, tau, tol: float = DEFAULT_TOL, terms: int | None = None) -> Estimate:
    """Zwegers' R(z; tau); each bracket ``sign(nu) - E(...)`` is evaluated as
    ``sign(nu) erfc(sign(nu) sqrt(pi) x)`` in log form to avoid cancellation."""
    z, tau = complex(z), complex(tau)
    y = tau.imag
    if not y > 0:
        raise NomeOutsideDisk("Im tau must be positive")
    c = z.imag / y
    alpha = math.pi * y
    beta = 2 * math.pi * abs(z.imag)
    # bound holds once sign(nu + c) = sign(nu)
    first = int(math.ceil(abs(c))) + 1

    def tail(N):
        if N < first:
            return math.inf
        g = -2 * math.pi * z.imag ** 2 / y
        return 2 * math.exp(g) * gaussian_tail(alpha, beta, N, shift=0.5)

    N = int(terms) if terms is not None else _choose(tail, tol, start=first)
    k = np.arange(-N, N)
    nu = k + 0.5
    sg = np.sign(nu)
    x = (nu + c) * math.sqrt(2 * y)
    log_br = _log_erfc(sg * math.sqrt(math.pi) * x)
    phase = -2j * np.pi * nu * z - 1j * np.pi * tau * nu * nu
    t = np.where(k % 2 == 0, 1.0, -1.0) * sg * np.exp(log_br + phase)
    absum = float(np.sum(np.abs(t)))
    return Estimate(complex(np.sum(t)), tail(N) + _rounding(2 * N, absum), N)


def M_num(u, v, tau, tol: float = DEFAULT_TOL, terms: int | None = None) -> Estimate:
    """Completed Lerch sum ``mu(u, v; tau) - R(u - v; tau) / 2``."""
    m = mu_num(ZwegersParams(u, v, tau), tol, terms)
    r = R_zw_num(complex(u) - complex(v), tau, tol, terms)
    return Estimate(m.value - r.value / 2, m.error + r.error / 2, max(m.work, r.work))


def R_f_num(z, bilateral: bool = True, tol: float = DEFAULT_TOL,
            terms: int | None = None) -> Estimate:
    """``sum_{n = 1 mod 6} sign(n) beta(n^2 y / 6) q^(-n^2/24)`` with y = Im z.

    ``bilateral=True`` sums over all n = 1 (mod 6) in Z (1, -5, 7, -11, ...);
    ``bilateral=False`` keeps only the positive ones.
    """
    z = complex(z)
    y = z.imag
    if not y > 0:
        raise NomeOutsideDisk("Im z must be positive")
    alpha = math.pi * y / 12
    # |term| <= exp(-pi y n^2 / 12); n = 6k + 1
    tail = lambda K: 2 * sum(gaussian_tail(36 * alpha, s * 12 * alpha, K + 1, shift=0.0)
                             * math.exp(-alpha) for s in (1, -1))

    K = int(terms) if terms is not None else _choose(tail, tol, start=1)
    ks = np.arange(-K, K + 1) if bilateral else np.arange(0, K + 1)
    n = 6 * ks + 1
    log_beta = _log_erfc(np.sqrt(math.pi * y / 6) * np.abs(n))
    t = np.sign(n) * np.exp(log_beta - 2j * np.pi * z * n * n / 24)
    absum = float(np.sum(np.abs(t)))
    return Estimate(complex(np.sum(t)), tail(K) + _rounding(len(n), absum), K)


# ---------------------------------------------------------------------------
# Lerch sums

def _qpow(z: complex, x):
    return np.exp(2j * np.pi * z * np.asarray(x, dtype=float))


def lerch_num(family: str, params: LerchParams, z, tol: float = DEFAULT_TOL,
              terms: int | None = None) -> Estimate:
    """Direct bilateral summation of one of the Lerch families.

    ``S``:       sum q^(a n^2 + b n) / (1 + q^(2n))
    ``fs``:      sum_{n != 0} (-1)^n q^(a n^2 + b n) / sinh(2 pi i n c z)
    ``fc``:      sum (-1)^n q^(a n^2 + b n) / cosh(2 pi i n c z)
    ``general``: sum (+-1)^n q^(a n^2 + b n) / cosh(2 pi i w (A n + B))
    """
    z = complex(HalfPlanePoint(z).z)
    y = z.imag
    a, b = float(params.a), float(params.b)
    alpha = 2 * math.pi * y * a
    beta = 2 * math.pi * y * abs(b)

    if family == "S":
        def den(n):
            return 1 + _qpow(z, 2 * n)
    elif family in ("fs", "fc"):
        c = float(params.c)

        def den(n):
            x = 2j * np.pi * n * c * z
            return np.sinh(x) if family == "fs" else np.cosh(x)
    elif family == "general":
        if params.w is None:
            raise ValueError("the general family needs w")
        w = complex(params.w)
        A, B = float(params.A), float(params.B)
        if not A > 0:
            raise ValueError("A must be positive")

        def den(n):
            return np.cosh(2j * np.pi * w * (A * n + B))
    else:
        raise UnknownFamily(family)

    def denom_lower(N):
        """Lower bound of |denominator| for |n| > N (plus the growth it gives)."""
        if family == "S":
            # n > N: |1 + q^{2n}| >= 1 - |q|^{2n}; n < -N: |1+q^{2n}| >= |q|^{2n} - 1
            r = math.exp(-4 * math.pi * y * (N + 1))
            return 1 - r, 0.0
        if family in ("fs", "fc"):
            s = 2 * math.pi * abs(c) * y * (N + 1)
            return math.sinh(s), 0.0
        s = 2 * math.pi * abs(w.imag) * (A * (N + 1) - abs(B))
        return (math.sinh(s) if s > 0 else 0.0), 0.0

    def tail(N):
        lb, _ = denom_lower(N)
        if lb <= 0:
            return math.inf
        if family == "S":
            # n < -N side: q^{a n^2 + b n} / (1 + q^{2n}) = q^{a n^2 + (b-2) n} / (1 + q^{-2n})
            up = gaussian_tail(alpha, -2 * math.pi * y * b, N + 1)
            down = gaussian_tail(alpha, 2 * math.pi * y * (b - 2), N + 1)
            return (up + down) / lb
        return 2 * gaussian_tail(alpha, beta, N + 1) / lb

    N = int(terms) if terms is not None else _choose(tail, tol, start=1)
    n = np.arange(-N, N + 1)
    num = np.exp(2j * np.pi * z * (a * n * n + b * n))
    if family != "S" and (family != "general" or params.alternating):
        num = num * np.where(n % 2 == 0, 1.0, -1.0)
    if family in ("fs", "fc"):
        num = np.where(n == 0, 0.0 if family == "fs" else num, num)
    with np.errstate(divide="ignore", invalid="ignore"):
        d = den(n)
        if family == "fs":
            d = np.where(n == 0, 1.0, d)
        if family == "S":
            # rewrite n < 0 terms to avoid overflow of q^{2n}
            neg = n < 0
            num = np.where(neg, np.exp(2j * np.pi * z * (a * n * n + (b - 2) * n)), num)
            d = np.where(neg, 1 + np.exp(-4j * np.pi * z * n), d)
    if np.any(np.abs(d) < 1e-14):
        raise PoleHit("a denominator vanishes within the summed range")
    t = num / d
    absum = float(np.sum(np.abs(t)))
    return Estimate(complex(np.sum(t)), tail(N) + _rounding(2 * N + 1, absum), N)


def watson_sum_num(q, tol: float = DEFAULT_TOL, terms: int | None = None) -> Estimate:
    """``2 sum_n (-1)^n q^(n(3n+1)/2) / (1 + q^n)`` for |q| < 1."""
    q = complex(q)
    r = abs(q)
    if r >= 1:
        raise NomeOutsideDisk("|q| must be below 1")
    if q == 0:
        return Estimate(1.0 + 0j, 0.0, 0)
    alpha = -math.log(r) * 1.5

    def tail(N):
        rn = r ** (N + 1)
        if rn >= 0.5:
            return math.inf
        # both n and -n give |q|^{n(3n+1)/2} / |1 + q^n| after the rewrite
        return 4 * gaussian_tail(alpha, -alpha / 3, N + 1) / (1 - rn)

    N = int(terms) if terms is not None else _choose(tail, tol, start=1)
    m = np.arange(1, N + 1)
    sgn = np.where(m % 2 == 0, 1.0, -1.0)
    qm = q ** m
    pos = sgn * q ** (m * (3 * m + 1) // 2) / (1 + qm)
    # n = -m: q^{m(3m-1)/2} / (1 + q^{-m}) = q^{m(3m+1)/2} / (1 + q^m)
    neg = sgn * q ** (m * (3 * m + 1) // 2) / (1 + qm)
    t = np.concatenate([[0.5 + 0j], pos, neg])
    val = 2 * complex(np.sum(t))
    return Estimate(val, 2 * tail(N) + _rounding(2 * N + 1, 2 * float(np.sum(np.abs(t)))), N)


# ---------------------------------------------------------------------------
# mock theta functions

def _poch_floor(r: float, start: int, step: int, N: int = 2000) -> float:
    """Lower bound of |(x; ...)_n| for any n: prod (1 - r^(start + j step))."""
    p = 1.0
    for j in range(N):
        t = r ** (start + j * step)
        if t < 1e-18:
            break
        p *= 1 - t
    return p * (1 - 1e-15)


def mock_num(name: str, q, tol: float = DEFAULT_TOL, terms: int | None = None) -> Estimate:
    """Ramanujan's f, phi or psi by direct summation with running denominators.

    For ``f`` with ``|q| > 1`` the value ``f(q) = sum Q^n / (-Q; Q)_n^2`` with
    ``Q = 1/q`` is used.
    """
    q = complex(q)
    r = abs(q)
    if abs(r - 1) < 1e-12:
        raise NomeOnUnitCircle("mock theta functions are not defined on |q| = 1")
    if name not in ("f", "phi", "psi"):
        raise UnknownFamily(name)
    if r > 1:
        if name != "f":
            raise NomeOutsideDisk(f"{name} is only evaluated inside the unit disk")
        Q = 1 / q
        R = abs(Q)
        floor = _poch_floor(R, 1, 1) ** 2

        def tail(N):
            return R ** (N + 1) / ((1 - R) * floor)

        N = int(terms) if terms is not None else _choose(tail, tol, start=1)
        acc, den, absum = 0j, 1 + 0j, 0.0
        for n in range(N + 1):
            if n:
                den *= (1 + Q ** n) ** 2
            t = Q ** n / den
            acc += t
            absum += abs(t)
        return Estimate(acc, tail(N) + _rounding(N, absum), N)

    if q == 0:
        return Estimate(1.0 + 0j if name != "psi" else 0j, 0.0, 0)
    alpha = -math.log(r)
    if name == "f":
        floor = _poch_floor(r, 1, 1) ** 2
        first = 0
    elif name == "phi":
        floor = _poch_floor(r, 2, 2)
        first = 0
    else:
        floor = _poch_floor(r, 1, 2)
        first = 1

    def tail(N):
        return gaussian_tail(alpha, 0.0, N + 1) / floor

    N = int(terms) if terms is not None else _choose(tail, tol, start=1)
    acc, den, absum = 0j, 1 + 0j, 0.0
    for n in range(first, N + 1):
        if n:
            if name == "f":
                den *= (1 + q ** n) ** 2
            elif name == "phi":
                den *= 1 + q ** (2 * n)
            else:
                den *= 1 - q ** (2 * n - 1)
        t = q ** (n * n) / den
        acc += t
        absum += abs(t)
    return Estimate(acc, tail(N) + _rounding(N, absum), N)
