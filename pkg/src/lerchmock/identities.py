"""Identity registry, run configuration and the suite runner."""
from __future__ import annotations

import cmath
import fnmatch
import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Callable

import numpy as np

from . import integral, lerch, numeric, series, thetaprod
from .errors import ConfigInvalid, LerchMockError, UnknownIdentity
from .report import IdentityReport, failed_report

__all__ = ["Config", "load_config", "IdentityDescriptor", "REGISTRY", "run_identity",
           "run_suite", "select", "random_grid"]

DEFAULT_ORDER = 100
DEFAULT_TOL = 1e-8


# ---------------------------------------------------------------------------
# configuration

@dataclass(frozen=True)
class Config:
    """Run settings.  ``tol=None`` keeps each identity's own threshold."""
    order: int | None = None
    tol: float | None = None
    seed: int = 0
    jobs: int = 1

    def validate(self) -> "Config":
        if self.order is not None and (not isinstance(self.order, int) or self.order < 1):
            raise ConfigInvalid("order must be an integer >= 1")
        if self.tol is not None and not (isinstance(self.tol, float) and self.tol > 0):
            raise ConfigInvalid("tol must be a positive number")
        if not isinstance(self.seed, int):
            raise ConfigInvalid("seed must be an integer")
        if not isinstance(self.jobs, int) or self.jobs < 1:
            raise ConfigInvalid("jobs must be an integer >= 1")
        return self

    def merged(self, **overrides) -> "Config":
        """Copy with every non-None override applied."""
        return replace(self, **{k: v for k, v in overrides.items() if v is not None}).validate()


_CASTS = {"order": int, "tol": float, "seed": int, "jobs": int}


def load_config(path) -> Config:
    """Read a plain ``key = value`` file (``#`` starts a comment)."""
    values = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ConfigInvalid(f"{path}:{lineno}: expected key = value")
            key, val = (s.strip() for s in line.split("=", 1))
            if key not in _CASTS:
                raise ConfigInvalid(f"{path}:{lineno}: unknown key {key!r}")
            try:
                values[key] = _CASTS[key](val)
            except ValueError:
                raise ConfigInvalid(f"{path}:{lineno}: bad value for {key}: {val!r}") from None
    return Config(**values).validate()


# ---------------------------------------------------------------------------
# descriptors

@dataclass(frozen=True)
class IdentityDescriptor:
    id: str
    mode: str
    module: str
    default_tolerance: float
    default_params: dict = field(default_factory=dict)
    runner: Callable | None = None
    seeded: bool = False
    summary: str = ""


REGISTRY: dict[str, IdentityDescriptor] = {}


def _register(id, mode, module, tol, params=None, seeded=False, summary=""):
    def deco(fn):
        REGISTRY[id] = IdentityDescriptor(id, mode, module, tol, dict(params or {}), fn,
                                          seeded, summary)
        return fn
    return deco


def _exact(id, params, diffs: dict, t0, details=None) -> IdentityReport:
    """Exact-mode report: the error is the largest coefficient difference."""
    worst = max((abs(Fraction(d)) for d in diffs.values()), default=Fraction(0))
    det = {k: str(v) for k, v in diffs.items()}
    if details:
        det.update(details)
    return IdentityReport(id, "exact", params, float(worst), 0.0,
                          runtime_ms=(time.perf_counter() - t0) * 1e3, details=det)


def _numeric(id, params, err, tol, t0, work=0, details=None, seed=None) -> IdentityReport:
    return IdentityReport(id, "numeric", params, float(err), tol, nodes_used=int(work),
                          runtime_ms=(time.perf_counter() - t0) * 1e3, seed=seed,
                          details=details or {})


def random_grid(seed: int, n: int, kind: str) -> list[dict]:
    """Seeded admissible parameter points for the closed-form transform laws."""
    rng = np.random.default_rng(seed)
    pts = []
    for _ in range(n):
        z = complex(rng.uniform(-0.5, 0.5), rng.uniform(0.5, 1.5))
        w = complex(rng.uniform(-0.5, 0.5), rng.choice([-1, 1]) * rng.uniform(0.5, 2.0))
        p = {"a": round(float(rng.uniform(0.5, 2.0)), 6), "b": round(float(rng.uniform(-1, 1)), 6),
             "z": z, "w": w}
        if kind in ("thm19", "thm21"):
            p["A"] = int(rng.integers(1, 4))
            p["B"] = round(float(rng.uniform(-0.5, 0.5)), 6)
        arg = complex(rng.uniform(-1, 1), rng.uniform(-0.3, 0.3))
        p["gamma" if kind == "thm11" else "s"] = arg
        pts.append(p)
    return pts


# ---------------------------------------------------------------------------
# exact identities

@_register("thm1-watson", "exact", "qseries-core", 0.0, {"order": 100},
           summary="f(q) equals Watson's bilateral form over eta(q)")
def _r_thm1(p, cfg):
    t0 = time.perf_counter()
    N = cfg.order or p["order"]
    d = series.mock_f_series(N).max_abs_difference(series.watson_rhs_series(N))
    return _exact("thm1-watson", {"order": N}, {"f_vs_watson": d}, t0)


@_register("thm2-reciprocal", "exact", "qseries-core", 0.0, {"order": 40},
           summary="product and divisor forms of f(q) and f(1/q)")
def _r_thm2(p, cfg):
    t0 = time.perf_counter()
    N = p["order"] if cfg.order is None else min(cfg.order, p["order"])
    f = series.mock_f_series(N)
    fr = series.f_recip_series(N)
    frp = series.f_recip_product_series(N)
    diffs = {
        "f_vs_product": f.max_abs_difference(series.f_product_series(N)),
        "f_vs_divisor": f.max_abs_difference(series.f_divisor_series(N)),
        "frecip_vs_product": fr.max_abs_difference(frp),
        "product_vs_divisor_small": frp.max_abs_difference(series.f_recip_divisor_series(N, "small")),
        "product_vs_divisor_large": frp.max_abs_difference(series.f_recip_divisor_series(N, "large")),
    }
    return _exact("thm2-reciprocal", {"order": N}, diffs, t0)


@_register("lemma1-pochhammer", "exact", "qseries-core", 0.0, {"order": 40, "nmax": 8},
           summary="(a;q)_n (a q^n;q)_inf = (a;q)_inf for a = +-q^c")
def _r_lemma1(p, cfg):
    t0 = time.perf_counter()
    N = p["order"]
    diffs = {}
    for c in (Fraction(1, 2), Fraction(1), Fraction(2)):
        for sign in (1, -1):
            full = series.pochhammer_series(c, 1, math.inf, sign, N)
            for n in range(p["nmax"] + 1):
                lhs = (series.pochhammer_series(c, 1, n, sign, N)
                       * series.pochhammer_series(c + n, 1, math.inf, sign, N))
                diffs[f"c={c},sign={sign},n={n}"] = lhs.max_abs_difference(full)
    worst = max(diffs.values())
    return _exact("lemma1-pochhammer", p, {"worst": worst}, t0, {"cases": len(diffs)})


def _oracle_grid(kind, order):
    fast = lerch.fs_series if kind == "fs" else lerch.fc_series
    slow = lerch.fs_bruteforce if kind == "fs" else lerch.fc_bruteforce
    bad = {}
    worst = Fraction(0)
    for a in range(1, 5):
        for b in range(0, 4):
            for c in range(1, 4):
                d = fast(a, b, c, order).max_abs_difference(slow(a, b, c, order))
                worst = max(worst, d)
                if d:
                    bad[f"{a},{b},{c}"] = str(d)
    return worst, bad


@_register("thm6-fs-oracle", "exact", "lerch-coeffs", 0.0, {"order": 120},
           summary="divisor-sum f_s coefficients equal the geometric expansion")
def _r_thm6(p, cfg):
    t0 = time.perf_counter()
    worst, bad = _oracle_grid("fs", p["order"])
    return _exact("thm6-fs-oracle", p, {"worst": worst}, t0, {"mismatches": bad})


@_register("thm7-fc-oracle", "exact", "lerch-coeffs", 0.0, {"order": 120},
           summary="divisor-sum f_c coefficients equal the geometric expansion")
def _r_thm7(p, cfg):
    t0 = time.perf_counter()
    worst, bad = _oracle_grid("fc", p["order"])
    return _exact("thm7-fc-oracle", p, {"worst": worst}, t0, {"mismatches": bad})


@_register("thm5-chebyshev", "exact", "lerch-coeffs", 0.0, {"order": 100},
           summary="Chebyshev form of f_s(a,b;1) equals half the geometric expansion")
def _r_thm5(p, cfg):
    t0 = time.perf_counter()
    N = p["order"]
    diffs = {}
    for a in (1, 2, 3):
        for b in (2, 3, 4):
            diffs[f"a={a},b={b}"] = lerch.chebyshev_fs(a, b, N).max_abs_difference(
                lerch.fs_bruteforce(a, b, 1, N) * Fraction(1, 2))
    return _exact("thm5-chebyshev", p, diffs, t0)


@_register("eq104-etaphi", "exact", "lerch-coeffs", 0.0, {"order": 200},
           summary="eta(q^2) phi(q^2) equals 1 + sum Cc(3,1;2;n) q^n + theta remainders")
def _r_eq104(p, cfg):
    t0 = time.perf_counter()
    N = p["order"]
    half = N // 2
    prod = (series.eta_series(half).dilate(2) * series.phi_series(half).dilate(2)).truncate(N)
    rec = lerch.fc_series(3, 1, 2, N)
    spots = {k: str(prod.coeff(k)) for k in (4, 6, 8)}
    return _exact("eq104-etaphi", p, {"product_vs_reconstruction": prod.max_abs_difference(rec)},
                  t0, {"coefficients": spots})


@_register("eq61-thetachar", "exact", "qseries-core", 0.0, {"order": 200},
           summary="divisor form of theta series with a character")
def _r_eq61(p, cfg):
    t0 = time.perf_counter()
    N = p["order"]
    chars = {"one": lambda d: 1, "alt": lambda d: (-1) ** d, "mod3": lambda d: [0, 1, -1][d % 3]}
    diffs = {}
    for (a, b) in ((1, 0), (3, 1), (2, -1), (1, 2)):
        for name, chi in chars.items():
            diffs[f"a={a},b={b},{name}"] = series.theta_char_coeffs(a, b, chi, N).max_abs_difference(
                series.theta_char_coeffs(a, b, chi, N, route="direct"))
    return _exact("eq61-thetachar", p, diffs, t0)


def _w_runner(kind):
    def run(p, cfg):
        t0 = time.perf_counter()
        diffs, offsets = {}, {}
        for a, pp in p["grid"]:
            r = thetaprod.W_check(kind, a, pp, p["order"])
            diffs[f"a={a},p={pp}"] = Fraction(r.details["theta_vs_product"]) + 0
            diffs[f"a={a},p={pp},divisor"] = Fraction(r.details["product_vs_divisor"])
            offsets[f"a={a},p={pp}"] = r.details["offset"]
        ident = "eq106-w4" if kind == 4 else "eq111-w3"
        return _exact(ident, p, diffs, t0, {"offsets": offsets})
    return run


_W_GRID = [(1, 3), (1, 4), (2, 5), (3, 7)]
_register("eq106-w4", "exact", "theta-product", 0.0, {"order": 40, "grid": _W_GRID},
          summary="alternating bilateral theta sum = q^-C eta(q^p) W4")(_w_runner(4))
_register("eq111-w3", "exact", "theta-product", 0.0, {"order": 40, "grid": _W_GRID},
          summary="bilateral theta sum = q^-C eta(q^p) W3")(_w_runner(3))


@_register("thm13-q3divisor", "exact", "theta-product", 0.0,
           {"order": 30, "grid": [(3, 1), (2, 1), (5, 2), (4, 3), (7, 5)]},
           summary="divisor-exponential form of Q3 and Q4 equals the product form")
def _r_thm13(p, cfg):
    t0 = time.perf_counter()
    diffs = {}
    for a, t in p["grid"]:
        for kind in (3, 4):
            diffs[f"Q{kind},a={a},t={t}"] = thetaprod.Q_series(kind, a, t, p["order"]).max_abs_difference(
                thetaprod.Q_series(kind, a, t, p["order"], route="divisor"))
    return _exact("thm13-q3divisor", p, diffs, t0)


# ---------------------------------------------------------------------------
# numeric identities

def _tol(desc_tol, cfg):
    return desc_tol if cfg.tol is None else cfg.tol


@_register("thm3-logtheta4", "numeric", "integral-rep", 1e-9, {"q": [0.1, 0.3]},
           summary="log theta4 integral with g = cos 2phi against -pi q/(1-q^2)")
def _r_thm3(p, cfg):
    t0 = time.perf_counter()
    tol = _tol(1e-9, cfg)
    det, worst, work = {}, 0.0, 0
    for q in p["q"]:
        I = integral.logtheta4_integral([1.0], q)
        rhs = integral.logtheta4_series([1.0], q)
        det[f"q={q}"] = {"lhs": I.value, "rhs": rhs, "delta": abs(I.value - rhs), "bound": I.error}
        worst = max(worst, abs(I.value - rhs))
        work += I.work
    return _numeric("thm3-logtheta4", p, worst, tol, t0, work, det)


@_register("prop1-etaf", "numeric", "integral-rep", 1e-8, {"q": 0.1})
def _r_prop1(p, cfg):
    return integral.eta_f_log_theta_check(p["q"], tol=_tol(1e-8, cfg))


@_register("thm4-logtheta4", "numeric", "integral-rep", 1e-8,
           {"a": 1.5, "b": 0.5, "z": 0.9j},
           summary="psi_1, psi_2 and psi integrals against their series (closed-form signs)")
def _r_thm4(p, cfg):
    z = complex(p["z"])
    return integral.psi_log_theta_check(p["a"], p["b"], cmath.exp(2j * math.pi * z), tol=_tol(1e-8, cfg), z=z)


@_register("thm10-lerch", "numeric", "integral-rep", 1e-8,
           {"z": [0.9j, 0.1 + 0.9j], "ab": [(1.5, 0.0), (3.0, 1.0)]},
           summary="sec-weighted theta integral against the direct Lerch sum")
def _r_thm10(p, cfg):
    t0 = time.perf_counter()
    tol = _tol(1e-8, cfg)
    det, worst, work = {}, 0.0, 0
    for z in p["z"]:
        z = complex(z)
        for a, b in p["ab"]:
            w = z / 2 if b == 0 else 2 * z
            for kind in (3, 4):
                J = integral.theta_integral_rep(kind, a, b, z, w)
                L = integral.lerch_general_sum(kind, a, b, 1, 0, z, w)
                d = abs(J.value - L.value)
                det[f"kind={kind},a={a},b={b},z={z}"] = {"integral": J.value, "sum": L.value,
                                                         "delta": d, "bound": J.error}
                worst = max(worst, d)
                work += J.work
    return _numeric("thm10-lerch", p, worst, tol, t0, work, det)


@_register("thm17-general", "numeric", "integral-rep", 1e-8,
           {"kind": 3, "a": 1.3, "b": 0.4, "A": 2, "B": 0.3, "z": 0.1 + 0.9j, "w": 0.2 + 1.5j},
           summary="general theta integral against sum q^(an^2+bn)/cosh(2 pi i w(An+B))")
def _r_thm17(p, cfg):
    t0 = time.perf_counter()
    args = [p[k] for k in ("kind", "a", "b", "A", "B", "z", "w")]
    L = integral.lerch_general_sum(*args)
    det, work = {}, 0
    for variant in integral.VARIANTS:
        try:
            J = integral.general_integral_rep(*args, variant=variant)
            det[variant] = {"value": J.value, "delta": abs(J.value - L.value), "bound": J.error}
            work += J.work
        except LerchMockError as exc:
            det[variant] = {"error": f"{type(exc).__name__}: {exc}"}
    det["sum"] = L.value
    err = det["corrected"].get("delta", math.inf)
    return _numeric("thm17-general", p, err, _tol(1e-8, cfg), t0, work, det)


@_register("eq102-f", "numeric", "integral-rep", 1e-7, {"z": 1j, "expected": 1.00186050})
def _r_eq102(p, cfg):
    t0 = time.perf_counter()
    r = integral.f_integral_route(p["z"])
    val = r["integral"].value
    err = max(abs(val - p["expected"]), r["delta"])
    return _numeric("eq102-f", p, err, _tol(1e-7, cfg), t0, r["integral"].work,
                    {"integral": val, "series": r["series"].value, "delta_series": r["delta"],
                     "bound": r["integral"].error})


@_register("eq105-phi", "numeric", "integral-rep", 1e-7, {"z": 0.9j})
def _r_eq105(p, cfg):
    t0 = time.perf_counter()
    r = integral.phi_integral_route(p["z"])
    return _numeric("eq105-phi", p, r["delta"], _tol(1e-7, cfg), t0, r["integral"].work,
                    {"integral": r["integral"].value, "series": r["series"].value})


@_register("eq134-psi", "numeric", "integral-rep", 1e-7, {"z": 0.8j})
def _r_eq134(p, cfg):
    t0 = time.perf_counter()
    r = integral.psi_integral_route(p["z"])
    det = {"integral": r["integral"].value, "series": r["series"].value,
           "delta_bilateral": r["delta_bilateral"],
           "delta_corrected_general": r["delta_corrected_general"]}
    return _numeric("eq134-psi", p, r["delta"], _tol(1e-7, cfg), t0, r["integral"].work, det)


@_register("thm8-xi", "numeric", "integral-rep", 1e-8,
           {"n": 0, "a": 1, "b": 1, "z": 1j, "L": [1, 2, 5]},
           summary="three xi routes agree and (1/2) sum xi reassembles S")
def _r_thm8(p, cfg):
    t0 = time.perf_counter()
    n, a, b, z = p["n"], p["a"], p["b"], p["z"]
    d = integral.xi_num(n, a, b, z, "direct")
    pa = integral.xi_num(n, a, b, z, "parseval")
    sc = [integral.xi_num(n, a, b, z, "scaled", L=L) for L in p["L"]]
    re = integral.xi_reassembly(a, b, z)
    S = integral.S_sum(a, b, z)
    det = {"direct_vs_parseval": abs(d.value - pa.value),
           "scaled_spread": max(abs(s.value - d.value) for s in sc),
           "reassembly_vs_S": abs(re.value - S.value)}
    work = d.work + pa.work + sum(s.work for s in sc) + re.work
    return _numeric("thm8-xi", p, max(det.values()), _tol(1e-8, cfg), t0, work, det)


def _transform_runner(ident, default):
    def run(p, cfg):
        return integral.verify_transform(ident, p, tol=_tol(default, cfg))
    return run


def _seeded_transform(ident, n):
    def run(p, cfg):
        t0 = time.perf_counter()
        tol = _tol(1e-7, cfg)
        pts = random_grid(cfg.seed, n, ident)
        worst, work, det = 0.0, 0, {}
        for k, pt in enumerate(pts):
            r = integral.verify_transform(ident, pt, tol=tol)
            worst = max(worst, r.max_abs_error)
            work += r.nodes_used
            det[f"point{k}"] = {"params": pt, "error": r.max_abs_error,
                                "resolution": r.details.get("resolution"),
                                **{k2: v for k2, v in r.details.items() if k2.startswith("b_prime")}}
        return _numeric(ident, {"points": n}, worst, tol, t0, work, det, seed=cfg.seed)
    return run


for _id, _n in (("thm11", 5), ("thm19", 5), ("thm21", 5)):
    _register(f"{_id}-transform", "numeric",
              "theta-product" if _id == "thm21" else "integral-rep", 1e-7, {"points": _n},
              seeded=True, summary="closed-form transform law on a seeded grid")(
        _seeded_transform(_id, _n))

_register("thm9-p0p1", "numeric", "integral-rep", 1e-7, {"a": 1, "b": 1, "z": 1j},
          summary="p0(1/(2a), b, -1/(2z)) = -sqrt(-2iaz) p1(z, b, a)")(_transform_runner("thm9", 1e-7))
_register("thm12-convolution", "numeric", "integral-rep", 1e-7,
          {"a": 1, "b": 0, "z": 1j, "w": 2j, "x": 0},
          summary="convolution law for P_j (both sides attempted)")(_transform_runner("thm12", 1e-7))
@_register("thm16-s-transform", "numeric", "theta-product", 1e-7,
           {"points": [{"a": 3, "b": 1, "z": 0.9j, "w": 0.3 + 1.8j},
                       {"a": 1.5, "b": 0.5, "z": 0.1 + 0.9j, "w": 0.2 + 1.5j},
                       {"a": 2, "b": 0.3, "z": 0.8j, "w": -0.4 + 1.2j}]},
           summary="S_1 at primed variables equals S_0; the last point has Im w' < 0")
def _r_thm16(p, cfg):
    t0 = time.perf_counter()
    tol = _tol(1e-7, cfg)
    worst, work, det = 0.0, 0, {}
    for k, pt in enumerate(p["points"]):
        r = integral.verify_transform("thm16", pt, tol=tol)
        worst = max(worst, r.max_abs_error)
        work += r.nodes_used
        det[f"point{k}"] = {"error": r.max_abs_error, **r.details}
    return _numeric("thm16-s-transform", p, worst, tol, t0, work, det)
_register("thm18-ptilde", "numeric", "integral-rep", 1e-7,
          {"a": 1.3, "b": 0.4, "A": 2, "B": 0.3, "z": 0.1 + 0.9j, "w": 0.2 + 1.5j})(
    _transform_runner("thm18", 1e-7))
_register("thm20-stilde", "numeric", "theta-product", 1e-7,
          {"a": 1.3, "b": 0.4, "A": 2, "B": 0.3, "z": 0.1 + 0.9j, "w": 0.2 + 1.5j})(
    _transform_runner("thm20", 1e-7))


@_register("thm15-s0", "numeric", "theta-product", 1e-7,
           {"a": 3, "b": 1, "A": 1, "B": 0, "z": 0.9j, "w": 1.8j},
           summary="F3-kernel integral S equals the Lerch sum over eta_D(2az)")
def _r_thm15(p, cfg):
    t0 = time.perf_counter()
    a, b, A, B, z, w = (p[k] for k in ("a", "b", "A", "B", "z", "w"))
    S0 = thetaprod.S0_num(a, b, A, B, z, w)
    Sj = thetaprod.S_j_num(0, a, b, z, w)
    SG = thetaprod.SG_num(a, b, A, B, z, w, x=0.0)
    det = {"direct": S0.value, "integral": Sj.value, "SG_x0": SG.value,
           "delta_integral": abs(Sj.value - S0.value), "delta_SG": abs(SG.value - S0.value)}
    err = max(det["delta_integral"], det["delta_SG"]) / max(abs(S0.value), 1e-300)
    return _numeric("thm15-s0", p, err, _tol(1e-7, cfg), t0, Sj.work + SG.work, det)


@_register("eq80-poisson", "numeric", "integral-rep", 1e-10, {"w": 1j, "t": [0, 1, 2.5]})
def _r_eq80(p, cfg):
    t0 = time.perf_counter()
    det = {f"t={t}": integral.poisson_check(p["w"], t) for t in p["t"]}
    worst = max(d["delta"] for d in det.values())
    return _numeric("eq80-poisson", p, worst, _tol(1e-10, cfg), t0,
                    sum(d["terms"] for d in det.values()), det)


@_register("eq85-theta3", "numeric", "integral-rep", 1e-10,
           {"points": [(1, 0.5j, 0), (1.5, 0.2 + 0.8j, 0.3 - 0.1j), (0.7, -0.3 + 1.1j, 1.2)]})
def _r_eq85(p, cfg):
    t0 = time.perf_counter()
    det = {str(pt): integral.theta3_modular_check(*pt) for pt in p["points"]}
    worst = max(d["delta"] / max(abs(d["rhs"]), 1e-300) for d in det.values())
    return _numeric("eq85-theta3", p, worst, _tol(1e-10, cfg), t0, 0, det)


@_register("eq120-eta", "numeric", "numeric-eval", 1e-10, {"points": 10}, seeded=True,
           summary="eta_D(-1/z) = sqrt(-iz) eta_D(z) at seeded z, Im z in [0.5, 2]")
def _r_eq120(p, cfg):
    t0 = time.perf_counter()
    rng = np.random.default_rng(cfg.seed)
    det, worst = {}, 0.0
    for k in range(p["points"]):
        z = complex(rng.uniform(-1, 1), rng.uniform(0.5, 2.0))
        r = integral.eta_modular_check(z)
        det[f"point{k}"] = {"z": z, "rel": r["rel"]}
        worst = max(worst, r["rel"])
    return _numeric("eq120-eta", p, worst, _tol(1e-10, cfg), t0, 0, det, seed=cfg.seed)


@_register("eq116-f3theta", "numeric", "theta-product", 1e-10,
           {"a": [1, 2.5, 3], "t": [0, 0.5, 0.9], "z": [0.9j, 0.5j, 0.6 + 0.8j]},
           summary="theta3(pi z t, e(az)) = q^(-t^2/(4a)) eta_D(2az) F3(a,t;z) on a 3x3x3 grid")
def _r_eq116(p, cfg):
    t0 = time.perf_counter()
    det, worst, work = {}, 0.0, 0
    for a in p["a"]:
        for t in p["t"]:
            for z in p["z"]:
                r = thetaprod.theta3_product_check(a, t, z)
                det[f"a={a},t={t},z={z}"] = r.max_abs_error
                worst = max(worst, r.max_abs_error)
                work += r.nodes_used
    return _numeric("eq116-f3theta", p, worst, _tol(1e-10, cfg), t0, work, det)


@_register("eq123-f3modular", "numeric", "theta-product", 1e-8,
           {"grid": [(1, 0, 0.5j), (3, 1, 0.8j), (2, 0.5, 0.6 + 0.8j)]})
def _r_eq123(p, cfg):
    t0 = time.perf_counter()
    det, worst = {}, 0.0
    for pt in p["grid"]:
        r = thetaprod.F3_modular_check(*pt)
        det[str(pt)] = r.max_abs_error
        worst = max(worst, r.max_abs_error)
    return _numeric("eq123-f3modular", p, worst, _tol(1e-8, cfg), t0, 0, det)


@_register("beta-erf", "numeric", "numeric-eval", 1e-12, {"x": [0, 0.25, 1, 4]},
           summary="beta(x) by quadrature against 1 - E(sqrt x)")
def _r_beta(p, cfg):
    t0 = time.perf_counter()
    det, worst, work = {}, 0.0, 0
    for x in p["x"]:
        qv = numeric.beta_quad(x)
        ev = numeric.beta_num(x)
        d = abs(qv.value - ev)
        det[f"x={x}"] = {"quadrature": qv.value, "erf": ev, "delta": d}
        worst = max(worst, d)
        work += qv.work
    return _numeric("beta-erf", p, worst, _tol(1e-12, cfg), t0, work, det)


@_register("truncation-certified", "numeric", "numeric-eval", 0.0, {"points": 20}, seeded=True,
           summary="doubling every truncation moves each value by less than its bound")
def _r_trunc(p, cfg):
    from .truncation import truncation_survey
    t0 = time.perf_counter()
    rows = truncation_survey(cfg.seed, p["points"])
    excess = max(max(r["change"] - r["bound"], 0.0) for r in rows)
    worst = max(rows, key=lambda r: r["change"] / r["bound"] if r["bound"] else math.inf)
    by_eval = {}
    for r in rows:
        e = by_eval.setdefault(r["evaluator"], {"points": 0, "max_ratio": 0.0})
        e["points"] += 1
        if r["bound"]:
            e["max_ratio"] = max(e["max_ratio"], r["change"] / r["bound"])
        elif r["change"]:
            e["max_ratio"] = math.inf
    return _numeric("truncation-certified", p, excess, 0.0, t0, len(rows),
                    {"evaluators": by_eval, "worst": worst}, seed=cfg.seed)


# ---------------------------------------------------------------------------
# running

def select(pattern: str | None = None, mode: str | None = None) -> list[str]:
    """Identity ids matching a glob and/or a mode, sorted."""
    ids = sorted(REGISTRY)
    if pattern:
        ids = [i for i in ids if fnmatch.fnmatchcase(i, pattern)]
    if mode:
        if mode not in ("exact", "numeric"):
            raise ConfigInvalid("mode must be 'exact' or 'numeric'")
        ids = [i for i in ids if REGISTRY[i].mode == mode]
    if not ids:
        raise UnknownIdentity(pattern or mode or "")
    return ids


def run_identity(identity: str, config: Config | None = None,
                 params: dict | None = None) -> IdentityReport:
    cfg = (config or Config()).validate()
    try:
        desc = REGISTRY[identity]
    except KeyError:
        raise UnknownIdentity(identity) from None
    p = dict(desc.default_params)
    if params:
        p.update(params)
    t0 = time.perf_counter()
    try:
        rep = desc.runner(p, cfg)
    except LerchMockError as exc:
        rep = failed_report(identity, desc.mode, p, _tol(desc.default_tolerance, cfg), exc,
                            seed=cfg.seed if desc.seeded else None)
        rep.runtime_ms = (time.perf_counter() - t0) * 1e3
    rep.identity_id = identity
    if desc.seeded:
        rep.seed = cfg.seed
    return rep


def _worker(args):
    identity, cfg = args
    return run_identity(identity, cfg)


def run_suite(pattern: str | None = None, config: Config | None = None,
              mode: str | None = None) -> list[IdentityReport]:
    """Run every matching identity; reports come back sorted by id."""
    cfg = (config or Config()).validate()
    ids = select(pattern, mode)
    if cfg.jobs > 1 and len(ids) > 1:
        with ProcessPoolExecutor(max_workers=min(cfg.jobs, len(ids))) as pool:
            reports = list(pool.map(_worker, [(i, cfg) for i in ids]))
    else:
        reports = [run_identity(i, cfg) for i in ids]
    return sorted(reports, key=lambda r: r.identity_id)
