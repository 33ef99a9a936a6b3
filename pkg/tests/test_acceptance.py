"""Acceptance suite: one test per criterion, each at its stated tolerance.

Every test appends a ``PASS``/``FAIL`` line to ``LINES``; the lines are printed
in the terminal summary (see conftest) and when this file is run directly.
"""
import math
import time

import pytest

from lerchmock import lerch, series
from lerchmock.identities import Config, run_identity
from lerchmock.numeric import beta_num, beta_quad
from lerchmock.integral import poisson_check

LINES = []


def record(num, title, reports, limit, budget_s=None, extra=None):
    """Check each report against ``limit`` (and the runtime budget), log one line, assert."""
    worst = max(r.max_abs_error for r in reports)
    runtime = sum(r.runtime_ms for r in reports) / 1e3
    ok = all(r.max_abs_error <= limit and r.passed for r in reports)
    notes = []
    if budget_s is not None and runtime > budget_s:
        ok = False
        notes.append(f"runtime {runtime:.1f}s > {budget_s}s")
    if extra is not None:
        ok = ok and extra[0]
        notes.append(extra[1])
    line = (f"criterion {num:>2} {'PASS' if ok else 'FAIL'}  {title}: worst {worst:.3g}"
            f" (limit {limit:g}), {runtime:.2f}s" + (f"; {'; '.join(notes)}" if notes else ""))
    LINES.append(line)
    print(line)
    assert ok, line


def test_criterion_01_watson():
    rep = run_identity("thm1-watson", Config(order=100))
    record(1, "f(q) = Watson form, order 100", [rep], 0.0, 5)


def test_criterion_02_reciprocal_forms():
    rep = run_identity("thm2-reciprocal", Config(order=40))
    record(2, "f and f(1/q) product/divisor forms, order 40", [rep], 0.0, 5)


def test_criterion_03_divisor_oracles():
    reps = [run_identity(i, Config(order=120)) for i in ("thm6-fs-oracle", "thm7-fc-oracle")]
    record(3, "fs/fc divisor sums = expansions on {1..4}x{0..3}x{1..3}, order 120", reps, 0.0, 60)


def test_criterion_04_eta_phi():
    rep = run_identity("eq104-etaphi", Config(order=200))
    spots = {int(k): v for k, v in rep.details["coefficients"].items()}
    ok = (spots[4], spots[6], spots[8]) == ("-2", "-2", "2")
    fc = lerch.fc_series(3, 1, 2, 8)
    ok = ok and (fc.coeff(4), fc.coeff(6), fc.coeff(8)) == (-2, -2, 2)
    record(4, "eta(q^2)phi(q^2) reconstruction, order 200", [rep], 0.0, 30,
           (ok, f"q^4,q^6,q^8 = {spots[4]},{spots[6]},{spots[8]}"))


def test_criterion_05_log_theta_single_cosine():
    rep = run_identity("thm3-logtheta4", Config(tol=1e-9))
    assert rep.params["q"] == [0.1, 0.3]
    record(5, "log theta4 integral vs -pi q/(1-q^2), q in {0.1, 0.3}", [rep], 1e-9, 2)


def test_criterion_06_eta_f():
    rep = run_identity("prop1-etaf", Config(tol=1e-8))
    assert rep.params["q"] == 0.1
    record(6, "eta(q) f(q) from a log theta4 integral at q = 0.1", [rep], 1e-8)


def test_criterion_07_lerch_integrals():
    rep = run_identity("thm10-lerch", Config(tol=1e-8))
    assert len(rep.details) == 8
    record(7, "theta integrals vs Lerch sums, 2 z x 2 (a,b) x theta3/theta4", [rep], 1e-8, 20)


def test_criterion_08_f_at_e_minus_2pi():
    rep = run_identity("eq102-f", Config(tol=1e-7))
    val = rep.details["integral"]
    record(8, "integral route f(e^-2pi) vs 1.00186050", [rep], 1e-7,
           extra=(abs(val - 1.00186050) < 1e-7, f"value {val.real:.10f}"))


def test_criterion_09_psi():
    rep = run_identity("eq134-psi", Config(tol=1e-7))
    record(9, "integral route psi(-q) at z = 0.8i", [rep], 1e-7)


def test_criterion_10_modular_laws():
    cfg = Config(seed=0)
    reps = {i: run_identity(i, cfg) for i in ("eq120-eta", "eq123-f3modular", "thm11-transform",
                                              "thm19-transform", "thm21-transform")}
    limits = {"eq120-eta": 1e-10, "eq123-f3modular": 1e-8, "thm11-transform": 1e-7,
              "thm19-transform": 1e-7, "thm21-transform": 1e-7}
    per = all(reps[i].max_abs_error < limits[i] for i in reps)
    resolved = all(pt.get("resolution") for i in ("thm11-transform", "thm19-transform",
                                                   "thm21-transform")
                   for pt in reps[i].details.values())
    counts = (len(reps["eq120-eta"].details), len(reps["thm11-transform"].details))
    ok = per and resolved and counts == (10, 5) and reps["eq120-eta"].seed == 0
    record(10, "eta, F3 modular laws; closed-form transforms at 5 seeded points",
           list(reps.values()), 1e-7, extra=(ok, "b' resolution recorded"))


def test_criterion_11_cross_implementation():
    reps = [run_identity("beta-erf"), run_identity("eq80-poisson")]
    b = max(abs(beta_quad(x).value - beta_num(x)) for x in (0, 0.25, 1, 4))
    p = max(poisson_check(1j, t)["delta"] for t in (0, 1, 2.5))
    record(11, "beta quadrature vs 1 - E(sqrt x); Poisson sum at w = i", reps, 1e-10,
           extra=(b < 1e-12 and p < 1e-10, f"beta {b:.2g}, poisson {p:.2g}"))


def test_criterion_12_certified_truncation():
    rep = run_identity("truncation-certified", Config(seed=0))
    ev = rep.details["evaluators"]
    ok = all(e["points"] == 20 for e in ev.values())
    worst = max(e["max_ratio"] for e in ev.values())
    record(12, f"doubling every truncation stays within its bound ({len(ev)} evaluators x 20)",
           [rep], 0.0, extra=(ok and worst <= 1, f"max change/bound {worst:.3f}"))


if __name__ == "__main__":
    import sys
    sys.exit(pytest.main([__file__, "-q"]))
