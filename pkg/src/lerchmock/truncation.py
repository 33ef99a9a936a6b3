"""Doubling survey for the certified truncation bounds.

Every evaluator is run at its own truncation and again at twice that
(``terms=2N`` for series and products, ``truncation_scale=2`` or a doubled
span for integrals).  The change must stay below the first error bound.
"""
from __future__ import annotations

import cmath

import numpy as np

from . import integral, numeric, thetaprod
from .numeric import Estimate, LerchParams, ZwegersParams

__all__ = ["EVALUATORS", "sample_point", "truncation_survey"]


def sample_point(rng: np.random.Generator) -> dict:
    """One admissible parameter point; Im z in [0.1, 1.2] keeps |q| <= 0.54."""
    y = rng.uniform(0.1, 1.2)
    z = complex(rng.uniform(-0.5, 0.5), y)
    zi = complex(rng.uniform(-0.3, 0.3), rng.uniform(0.5, 1.2))
    return {
        "z": z,
        "q": cmath.exp(2j * cmath.pi * z),
        "v": complex(rng.uniform(-1, 1), rng.uniform(-0.5, 0.5)) * y,
        "u": complex(rng.uniform(0.1, 0.4), rng.uniform(-0.4, 0.4) * y),
        "w_mu": complex(rng.uniform(0.55, 0.9), rng.uniform(-0.4, 0.4) * y),
        "a": float(rng.uniform(0.5, 3.0)),
        "b": float(rng.uniform(-1.0, 1.0)),
        "c": int(rng.integers(1, 4)),
        "A": int(rng.integers(1, 3)),
        "B": float(rng.uniform(-0.5, 0.5)),
        "w": complex(rng.uniform(-0.3, 0.3), rng.choice([-1, 1]) * rng.uniform(0.5, 2.0)),
        "t_frac": float(rng.uniform(-0.9, 0.9)),
        "kind": int(rng.choice([3, 4])),
        # integral points: w is a real multiple of z so sec poles stay off the real ray
        "zi": zi,
        "r": float(rng.uniform(1.2, 2.0)),
        "bi": float(rng.uniform(0.0, 1.0)),
        "n": int(rng.integers(-3, 4)),
        "x": float(rng.uniform(0.0, 4.0)),
    }


def _series(fn):
    """Evaluator taking ``terms=``; doubled by passing twice the work used."""
    def run(p):
        first = fn(p)
        return first, fn(p, terms=2 * max(first.work, 1))
    return run


def _ray(fn):
    """Ray integral taking ``truncation_scale=``."""
    def run(p):
        return fn(p), fn(p, truncation_scale=2.0)
    return run


def _lerch(family):
    def fn(p, **kw):
        if family == "general":
            lp = LerchParams(p["a"], p["b"], A=p["A"], B=p["B"], w=p["w"])
        elif family == "S":
            lp = LerchParams(p["a"], p["b"])
        else:
            lp = LerchParams(p["a"] + abs(p["b"]) + 0.5, p["b"], c=p["c"])
        return numeric.lerch_num(family, lp, p["z"], **kw)
    return fn


def _beta(p):
    return numeric.beta_quad(p["x"]), numeric.beta_quad(p["x"], span=16.0)


EVALUATORS = {
    "theta3": _series(lambda p, **kw: numeric.theta3_num(p["v"], p["q"], **kw)),
    "theta4": _series(lambda p, **kw: numeric.theta4_num(p["v"], p["q"], **kw)),
    "eta": _series(lambda p, **kw: numeric.eta_num(p["q"], **kw)),
    "eta_dedekind": _series(lambda p, **kw: numeric.eta_dedekind_num(p["z"], **kw)),
    "theta_zw": _series(lambda p, **kw: numeric.theta_zw_num(p["v"], p["z"], **kw)),
    "mu": _series(lambda p, **kw: numeric.mu_num(ZwegersParams(p["u"], p["w_mu"], p["z"]), **kw)),
    "R_zw": _series(lambda p, **kw: numeric.R_zw_num(p["v"], p["z"], **kw)),
    "M": _series(lambda p, **kw: numeric.M_num(p["u"], p["w_mu"], p["z"], **kw)),
    "R_f": _series(lambda p, **kw: numeric.R_f_num(p["z"], **kw)),
    "lerch_S": _series(_lerch("S")),
    "lerch_fs": _series(_lerch("fs")),
    "lerch_fc": _series(_lerch("fc")),
    "lerch_general": _series(_lerch("general")),
    "watson_sum": _series(lambda p, **kw: numeric.watson_sum_num(p["q"], **kw)),
    "mock_f": _series(lambda p, **kw: numeric.mock_num("f", p["q"], **kw)),
    "mock_f_outside": _series(lambda p, **kw: numeric.mock_num("f", 1 / p["q"], **kw)),
    "mock_phi": _series(lambda p, **kw: numeric.mock_num("phi", p["q"], **kw)),
    "mock_psi": _series(lambda p, **kw: numeric.mock_num("psi", p["q"], **kw)),
    "Q_product": _series(lambda p, **kw: thetaprod.Q_num(
        p["kind"], p["a"], p["t_frac"] * p["a"], p["z"], **kw)),
    "F3_theta": _series(lambda p, **kw: thetaprod.F3_num(
        p["a"], p["t_frac"] * p["a"], p["z"], route="theta", **kw)),
    "beta_quad": _beta,
    "theta_integral": _ray(lambda p, **kw: integral.theta_integral_rep(
        p["kind"], p["a"], p["bi"], p["zi"], p["r"] * p["zi"], **kw)),
    "general_integral": _ray(lambda p, **kw: integral.general_integral_rep(
        p["kind"], p["a"], p["bi"], p["A"], p["B"], p["zi"], p["r"] * p["zi"], **kw)),
    "p0": _ray(lambda p, **kw: integral.p_j(0, p["a"], p["bi"], p["zi"], **kw)),
    "xi_direct": _ray(lambda p, **kw: integral.xi_num(p["n"], p["a"], p["bi"], p["zi"], **kw)),
    "xi_parseval": _ray(lambda p, **kw: integral.xi_num(
        p["n"], p["a"], p["bi"], p["zi"], "parseval", **kw)),
    "S_j": _ray(lambda p, **kw: thetaprod.S_j_num(
        0, p["a"], p["bi"], p["zi"], p["r"] * p["zi"], **kw)),
    "SG": _ray(lambda p, **kw: thetaprod.Stilde_num(
        0, p["a"], p["bi"], p["A"], p["B"], p["zi"], p["r"] * p["zi"], **kw)),
}


def truncation_survey(seed: int = 0, points: int = 20, evaluators=None) -> list[dict]:
    """One row per (evaluator, point): the change on doubling and the first bound."""
    rng = np.random.default_rng(seed)
    grid = [sample_point(rng) for _ in range(points)]
    names = sorted(EVALUATORS) if evaluators is None else list(evaluators)
    rows = []
    for name in names:
        run = EVALUATORS[name]
        for k, p in enumerate(grid):
            first, second = run(p)
            assert isinstance(first, Estimate)
            rows.append({"evaluator": name, "point": k,
                         "change": abs(complex(second.value) - complex(first.value)),
                         "bound": float(first.error), "work": int(first.work)})
    return rows
