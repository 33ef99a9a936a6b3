"""Adaptive Gauss-Kronrod quadrature on intervals and along complex rays.

Ray integrals ``int_{-inf sigma}^{+inf sigma} F(g) dg`` are computed as
``sigma * int_{-T}^{T} F(t sigma) dt``.  The cut-off ``T`` comes from an
analytic envelope of ``|F|`` (:class:`RayProfile`); when the envelope does
not decay the integral is refused with :class:`DecayCertificateFailed`.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy import special

from .errors import BudgetExceeded, DecayCertificateFailed, PoleNearContour

__all__ = [
    "QuadResult", "integrate_interval", "RayProfile", "ContourSpec",
    "contour_integrate", "sec_pole_distance", "DEFAULT_MAX_NODES",
]

DEFAULT_MAX_NODES = 400_000
_U = 2.0 ** -53

# 15-point Kronrod nodes on [0, 1] (symmetric) and the embedded 7-point Gauss rule
_XK = np.array([
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
])
_WK = np.array([
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
])
_WG = np.array([
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
])

NODES = np.concatenate([-_XK[:-1], _XK[::-1]])          # 15 nodes, ascending
WK15 = np.concatenate([_WK[:-1], _WK[::-1]])
WG7 = np.zeros(15)
WG7[[1, 3, 5]] = _WG[:3]
WG7[7] = _WG[3]
WG7[[9, 11, 13]] = _WG[2::-1]


@dataclass(frozen=True)
class QuadResult:
    value: complex
    error: float
    work: int

    def __iter__(self):
        yield self.value
        yield self.error


def integrate_interval(f, a: float, b: float, tol: float = 1e-12, *,
                       max_nodes: int = DEFAULT_MAX_NODES, panels: int = 8) -> QuadResult:
    """Adaptive GK15 on [a, b] for a vectorized ``f``; panels are bisected until
    the summed |K15 - G7| estimate falls below ``tol``."""
    a, b = float(a), float(b)
    if a == b:
        return QuadResult(0j, 0.0, 0)
    edges = np.linspace(a, b, max(1, int(panels)) + 1)
    lo, hi = edges[:-1], edges[1:]
    total, err_done, nodes = 0j, 0.0, 0
    length = abs(b - a)
    while lo.size:
        nodes += 15 * lo.size
        if nodes > max_nodes:
            raise BudgetExceeded(f"quadrature needed more than {max_nodes} nodes")
        half = (hi - lo) / 2
        mid = (hi + lo) / 2
        x = mid[:, None] + half[:, None] * NODES[None, :]
        fx = np.asarray(f(x.ravel()), dtype=complex).reshape(x.shape)
        if not np.all(np.isfinite(fx)):
            raise FloatingPointError("integrand is not finite on the interval")
        k = half * (fx @ WK15)
        g = half * (fx @ WG7)
        err = np.abs(k - g)
        floor = 50 * _U * np.abs(half) * (np.abs(fx) @ WK15)
        local = tol * np.abs(hi - lo) / length
        ok = (err <= local) | (err <= floor) | (np.abs(hi - lo) < 1e-13 * length)
        total += complex(np.sum(k[ok]))
        err_done += float(np.sum(np.maximum(err[ok], floor[ok])))
        lo, hi, mid = lo[~ok], hi[~ok], mid[~ok]
        lo, hi = np.concatenate([lo, mid]), np.concatenate([mid, hi])
    return QuadResult(total, err_done, nodes)


# ---------------------------------------------------------------------------
# ray envelopes

@dataclass(frozen=True)
class RayProfile:
    """Envelope data for ``|F(g)|`` along ``g = t sigma``.

    F is a product of
      * a theta series ``sum_n c_n exp(2 i n u)`` with ``|c_n| <= exp(-theta_alpha n^2)``
        and ``u = theta_scale*g + theta_shift`` (omitted when theta_alpha is None),
      * ``exp(gauss * g^2)``, ``exp(c * g)`` for each c in ``linear``,
      * ``sec(sec_scale*g + sec_shift)`` (omitted when sec_scale is 0),
      * ``exp(extra_rate * |t|)`` covering anything else of at most exponential size,
      * the constant ``const``.
    """
    theta_alpha: float | None = None
    theta_scale: complex = 1.0
    theta_shift: complex = 0.0
    gauss: complex = 0.0
    linear: tuple = ()
    extra_rate: float = 0.0
    sec_scale: complex = 0.0
    sec_shift: complex = 0.0
    const: float = 1.0

    def rates(self, sigma: complex):
        """(g, lam, kappa, d, C): |F(t sigma)| <= C exp(-g t^2 + lam |t|) |sec(...)|
        and |Im sec-argument| >= kappa |t| - d."""
        sigma = complex(sigma)
        g = -(complex(self.gauss) * sigma * sigma).real
        lam = sum(abs((complex(c) * sigma).real) for c in self.linear) + self.extra_rate
        C = float(self.const)
        if self.theta_alpha is not None:
            alpha = float(self.theta_alpha)
            if alpha <= 0:
                raise DecayCertificateFailed("theta nome is not inside the unit disk")
            s = abs((complex(self.theta_scale) * sigma).imag)
            h0 = abs(complex(self.theta_shift).imag)
            if s == 0:
                n = np.arange(1, int(2 * h0 / alpha + 40 / math.sqrt(alpha)) + 2)
                C *= 1 + 2 * float(np.sum(np.exp(-alpha * n * n + 2 * n * h0)))
            else:
                # -alpha n^2 + 2|n|(s|t| + h0) <= (s|t| + h0)^2 / alpha - alpha (|n| - .)^2
                C *= 2 * (1 + math.sqrt(math.pi / alpha)) * math.exp(h0 * h0 / alpha)
                gs = s * s / alpha
                if abs(g - gs) <= 1e-9 * max(abs(g), gs):
                    g = 0.0
                else:
                    g -= gs
                lam += 2 * s * h0 / alpha
        if complex(self.sec_scale) != 0:
            kappa = abs((complex(self.sec_scale) * sigma).imag)
            d = abs(complex(self.sec_shift).imag)
        else:
            kappa, d = 0.0, 0.0
        return g, lam, kappa, d, C

    def tail(self, sigma: complex, T: float) -> float:
        """Bound on ``|sigma| int_{|t|>T} |F(t sigma)| dt``."""
        g, lam, kappa, d, C = self.rates(sigma)
        if complex(self.sec_scale) != 0:
            y = kappa * T - d
            if y <= 0.05:
                return math.inf
            C *= 2 * math.exp(d) / -math.expm1(-2 * y)
        r = kappa - lam
        return 2 * abs(complex(sigma)) * C * _gauss_exp_tail(g, r, T)

    def check(self, sigma: complex) -> None:
        g, lam, kappa, d, C = self.rates(sigma)
        if complex(self.sec_scale) != 0 and kappa == 0:
            raise DecayCertificateFailed(
                "the sec argument has constant imaginary part along the ray (no decay)")
        if g < 0 or (g == 0 and kappa - lam <= 0):
            raise DecayCertificateFailed(
                f"integrand envelope does not decay along the ray (g={g:.3g}, rate={kappa - lam:.3g})")


def _gauss_exp_tail(g: float, r: float, T: float) -> float:
    """int_T^inf exp(-g t^2 - r t) dt for g > 0, or g = 0 and r > 0."""
    if g > 0:
        sg = math.sqrt(g)
        x = sg * T + r / (2 * sg)
        expo = -g * T * T - r * T
        if expo < -745:
            return 0.0
        return 0.5 * math.sqrt(math.pi / g) * float(special.erfcx(x)) * math.exp(expo)
    if g == 0 and r > 0:
        return math.exp(-r * T) / r
    return math.inf


def sec_pole_distance(sec_scale: complex, sec_shift: complex, sigma: complex) -> float:
    """Distance from the line {t sigma} to the nearest pole of sec(sec_scale g + sec_shift)."""
    sec_scale, sec_shift, sigma = complex(sec_scale), complex(sec_shift), complex(sigma)
    unit = sigma / abs(sigma)
    # pole g_k = (pi/2 + k pi - shift)/scale; distance = |Im(g_k conj(unit))|
    c0 = (((math.pi / 2 - sec_shift) / sec_scale) * unit.conjugate()).imag
    c1 = ((math.pi / sec_scale) * unit.conjugate()).imag
    if c1 == 0:
        return abs(c0)
    k = -c0 / c1
    return min(abs(c0 + c1 * math.floor(k)), abs(c0 + c1 * math.ceil(k)))


@dataclass(frozen=True)
class ContourSpec:
    """Ray ``t sigma``; ``truncation`` is chosen from the profile when None and
    then multiplied by ``truncation_scale``."""
    direction: complex = 1.0
    truncation: float | None = None
    tolerance: float = 1e-10
    max_nodes: int = DEFAULT_MAX_NODES
    truncation_scale: float = 1.0

    def __post_init__(self):
        if complex(self.direction) == 0:
            raise ValueError("ray direction must be nonzero")
        if not self.tolerance > 0:
            raise ValueError("tolerance must be positive")
        if not self.truncation_scale >= 1:
            raise ValueError("truncation_scale must be at least 1")


def _cutoff(profile: RayProfile, sigma: complex, tol: float) -> float:
    T = 1.0
    while profile.tail(sigma, T) > tol:
        T *= 1.5
        if T > 1e7:
            raise DecayCertificateFailed("no finite cut-off meets the tolerance")
    lo, hi = T / 1.5, T
    for _ in range(40):
        mid = (lo + hi) / 2
        if profile.tail(sigma, mid) > tol:
            lo = mid
        else:
            hi = mid
        if hi - lo < 1e-3 * hi:
            break
    return hi


def contour_integrate(integrand, spec: ContourSpec, profile: RayProfile | None = None):
    """``int F(g) dg`` along the ray of ``spec``; returns (value, error, nodes).

    ``integrand`` takes a complex array of points g on the ray.  With a profile
    the decay is certified, sec poles near the ray are refused and the cut-off
    tail bound is part of the returned error.
    """
    from .numeric import Estimate

    sigma = complex(spec.direction)
    tol = float(spec.tolerance)
    tail = 0.0
    if profile is not None:
        profile.check(sigma)
        if complex(profile.sec_scale) != 0:
            dist = sec_pole_distance(profile.sec_scale, profile.sec_shift, sigma)
            if dist < 1e-3 * abs(sigma):
                raise PoleNearContour(f"a sec pole lies {dist:.3g} from the contour")
        T = spec.truncation if spec.truncation is not None else (
            _cutoff(profile, sigma, tol / 4) * spec.truncation_scale)
        tail = profile.tail(sigma, T)
    elif spec.truncation is None:
        raise DecayCertificateFailed("no envelope given and no explicit truncation")
    else:
        T = float(spec.truncation)
    res = integrate_interval(lambda t: integrand(t * sigma), -T, T, tol=tol / 2,
                             max_nodes=spec.max_nodes, panels=max(8, int(4 * T)))
    return Estimate(sigma * res.value, abs(sigma) * res.error + tail, res.work)
