"""Command-line front end: ``coeffs``, ``eval``, ``verify`` and ``integral``."""
from __future__ import annotations

import argparse
import json
import math
import sys
import time
from fractions import Fraction
from pathlib import Path

from . import integral, lerch, numeric, series, thetaprod
from .errors import ConfigInvalid, LerchMockError, UnknownFamily, UnknownIdentity
from .identities import Config, load_config, random_grid, run_suite
from .report import IdentityReport, _plain

__all__ = ["main", "export_coeffs", "parse_value", "parse_params", "SERIES_FAMILIES",
           "EVAL_FUNCTIONS", "THEOREMS"]


# ---------------------------------------------------------------------------
# value parsing

def parse_value(text: str):
    """int, Fraction ("1/2"), float, complex ("0.1+0.9i" or "2j") or inf."""
    s = text.strip()
    if s.lower() in ("inf", "infinity"):
        return math.inf
    try:
        return int(s)
    except ValueError:
        pass
    if "/" in s:
        try:
            return Fraction(s)
        except ValueError:
            pass
    try:
        return float(s)
    except ValueError:
        pass
    try:
        return complex(s.replace("i", "j").replace(" ", ""))
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None


def parse_params(items) -> dict:
    """``["a=3", "b=1/2"]`` or ``["a=3,b=1/2"]`` -> dict of parsed values."""
    out = {}
    for item in items or ():
        for part in item.split(","):
            part = part.strip()
            if not part:
                continue
            if "=" not in part:
                raise ConfigInvalid(f"expected key=value, got {part!r}")
            k, v = part.split("=", 1)
            out[k.strip()] = parse_value(v)
    return out


def _num(x):
    return float(x) if isinstance(x, Fraction) else x


# ---------------------------------------------------------------------------
# coefficient export

def _need(params, *keys):
    missing = [k for k in keys if k not in params]
    if missing:
        raise ConfigInvalid(f"missing parameter(s): {', '.join(missing)}")
    return [params[k] for k in keys]


SERIES_FAMILIES = {
    "f": lambda p, N: series.mock_f_series(N),
    "phi": lambda p, N: series.phi_series(N),
    "psi": lambda p, N: series.psi_series(N),
    "f_recip": lambda p, N: series.f_recip_series(N),
    "watson": lambda p, N: series.watson_rhs_series(N),
    "eta": lambda p, N: series.eta_series(N),
    "chi": lambda p, N: series.chi_series(N),
    "pochhammer": lambda p, N: series.pochhammer_series(
        p.get("c", 1), p.get("p", 1), p.get("n", math.inf), p.get("sign", 1), N),
    "fs": lambda p, N: lerch.fs_series(*_need(p, "a", "b", "c"), N),
    "fc": lambda p, N: lerch.fc_series(*_need(p, "a", "b", "c"), N),
    "W3": lambda p, N: thetaprod.W_series(3, *_need(p, "a", "p"), N),
    "W4": lambda p, N: thetaprod.W_series(4, *_need(p, "a", "p"), N),
    "Q3": lambda p, N: thetaprod.Q_series(3, *_need(p, "a", "t"), N, p.get("route", "product")),
    "Q4": lambda p, N: thetaprod.Q_series(4, *_need(p, "a", "t"), N, p.get("route", "product")),
}


def series_for(family: str, params: dict | None, order: int):
    try:
        build = SERIES_FAMILIES[family]
    except KeyError:
        raise UnknownFamily(family) from None
    if order < 0:
        raise ConfigInvalid("order must be non-negative")
    params = dict(params or {})
    if family in ("fs", "fc"):
        params = {"a": 1, "b": 0, "c": 1, **params}
    return build(params, int(order))


def export_coeffs(family: str, params: dict | None, order: int, fmt: str = "csv",
                  path=None) -> str:
    """Serialize a family's series; writes ``path`` when given and returns the text.
    Output bytes depend only on the arguments."""
    s = series_for(family, params, order)
    if fmt == "csv":
        text = s.to_csv()
    elif fmt == "json":
        text = s.to_json() + "\n"
    else:
        raise ConfigInvalid("format must be csv or json")
    if path is not None:
        Path(path).write_bytes(text.encode("utf-8"))
    return text


# ---------------------------------------------------------------------------
# numeric evaluation

def _lerch_eval(family):
    def run(a, b, z, *rest, tol):
        kw = {}
        if family in ("fs", "fc"):
            kw["c"] = float(rest[0]) if rest else 1.0
        return numeric.lerch_num(family, numeric.LerchParams(float(a), float(b), **kw), z, tol=tol)
    return run


EVAL_FUNCTIONS = {
    "theta3": (("v", "q"), lambda v, q, tol: numeric.theta3_num(v, q, tol)),
    "theta4": (("v", "q"), lambda v, q, tol: numeric.theta4_num(v, q, tol)),
    "eta": (("q",), lambda q, tol: numeric.eta_num(q, tol)),
    "eta_D": (("z",), lambda z, tol: numeric.eta_dedekind_num(z, tol)),
    "f": (("q",), lambda q, tol: numeric.mock_num("f", q, tol)),
    "phi": (("q",), lambda q, tol: numeric.mock_num("phi", q, tol)),
    "psi": (("q",), lambda q, tol: numeric.mock_num("psi", q, tol)),
    "watson": (("q",), lambda q, tol: numeric.watson_sum_num(q, tol)),
    "R_f": (("z",), lambda z, tol: numeric.R_f_num(z, tol=tol)),
    "theta_zw": (("v", "tau"), lambda v, tau, tol: numeric.theta_zw_num(v, tau, tol)),
    "mu": (("u", "v", "tau"),
           lambda u, v, tau, tol: numeric.mu_num(numeric.ZwegersParams(u, v, tau), tol)),
    "R": (("u", "tau"), lambda u, tau, tol: numeric.R_zw_num(u, tau, tol)),
    "M": (("u", "v", "tau"), lambda u, v, tau, tol: numeric.M_num(u, v, tau, tol)),
    "S": (("a", "b", "z"), _lerch_eval("S")),
    "fs": (("a", "b", "z", "c"), _lerch_eval("fs")),
    "fc": (("a", "b", "z", "c"), _lerch_eval("fc")),
    "F3": (("a", "t", "z"), lambda a, t, z, tol: thetaprod.F3_num(float(a), t, z, tol=tol)),
    "Q3": (("a", "t", "z"), lambda a, t, z, tol: thetaprod.Q_num(3, float(a), t, z, tol=tol)),
    "Q4": (("a", "t", "z"), lambda a, t, z, tol: thetaprod.Q_num(4, float(a), t, z, tol=tol)),
    "beta": (("x",), lambda x, tol: numeric.beta_quad(float(x), tol=max(tol, 1e-15))),
}


def evaluate(func: str, args, tol: float = 1e-15):
    try:
        names, fn = EVAL_FUNCTIONS[func]
    except KeyError:
        raise UnknownFamily(func) from None
    need = len([n for n in names if n != "c"])
    if not need <= len(args) <= len(names):
        raise ConfigInvalid(f"{func} takes arguments {' '.join(names)}")
    return fn(*[_num(parse_value(a)) if isinstance(a, str) else a for a in args], tol=tol)


def _fmt_complex(x: complex) -> str:
    x = complex(x)
    return f"{x.real:.17g}{x.imag:+.17g}i"


# ---------------------------------------------------------------------------
# single-point integral checks

def _c(p, k, default=None):
    v = p.get(k, default)
    if v is None:
        raise ConfigInvalid(f"missing parameter {k}")
    return complex(_num(v)) if isinstance(v, complex) else _num(v)


def _compare(ident, params, lhs, rhs, tol, t0, details=None) -> IdentityReport:
    d = {"integral": lhs.value, "reference": rhs.value if hasattr(rhs, "value") else rhs,
         "bound": lhs.error}
    ref = d["reference"]
    d.update(details or {})
    return IdentityReport(ident, "numeric", params, abs(lhs.value - ref), tol,
                          nodes_used=lhs.work, runtime_ms=(time.perf_counter() - t0) * 1e3,
                          details=d)


def _thm3(p, tol):
    t0 = time.perf_counter()
    coeffs = [_c(p, k) for k in sorted((k for k in p if k.startswith("a") and k[1:].isdigit()),
                                        key=lambda k: int(k[1:]))] or [1.0]
    q = _c(p, "q", 0.1)
    lhs = integral.logtheta4_integral(coeffs, q)
    return _compare("thm3-logtheta4", p, lhs, integral.logtheta4_series(coeffs, q), tol, t0)


def _thm4(p, tol):
    import cmath
    z = _c(p, "z", 0.9j)
    return integral.psi_log_theta_check(_c(p, "a", 1.5), _c(p, "b", 0.5),
                               cmath.exp(2j * math.pi * complex(z)), tol=tol, z=z)


def _thm8(p, tol):
    t0 = time.perf_counter()
    n, a, b, z = (_c(p, k, d) for k, d in (("n", 0), ("a", 1), ("b", 1), ("z", 1j)))
    d = integral.xi_num(n, a, b, z, "direct")
    pa = integral.xi_num(n, a, b, z, "parseval")
    sc = integral.xi_num(n, a, b, z, "scaled", L=_c(p, "L", 2.0))
    return _compare("thm8-xi", p, d, pa, tol, t0,
                    {"scaled": sc.value, "delta_scaled": abs(sc.value - d.value)})


def _thm10(p, tol):
    t0 = time.perf_counter()
    kind, a, b, z = (_c(p, k, d) for k, d in (("kind", 3), ("a", 1.5), ("b", 0.0), ("z", 0.9j)))
    w = _c(p, "w", z / 2)
    J = integral.theta_integral_rep(int(kind), a, b, z, w)
    return _compare("thm10-lerch", p, J, integral.lerch_general_sum(int(kind), a, b, 1, 0, z, w),
                    tol, t0)


def _thm15(p, tol):
    t0 = time.perf_counter()
    a, b, z = (_c(p, k, d) for k, d in (("a", 3), ("b", 1), ("z", 0.9j)))
    w = _c(p, "w", 2 * z)
    return _compare("thm15-s0", p, thetaprod.S_j_num(0, a, b, z, w),
                    thetaprod.S0_num(a, b, 1.0, 0.0, z, w), tol, t0)


def _thm17(p, tol):
    t0 = time.perf_counter()
    vals = [_c(p, k, d) for k, d in (("kind", 3), ("a", 1.3), ("b", 0.4), ("A", 2), ("B", 0.3),
                                     ("z", 0.1 + 0.9j), ("w", 0.2 + 1.5j))]
    vals[0] = int(vals[0])
    variant = p.get("variant", "corrected")
    J = integral.general_integral_rep(*vals, variant=variant)
    return _compare("thm17-general", p, J, integral.lerch_general_sum(*vals), tol, t0,
                    {"variant": variant})


_TRANSFORM_DEFAULTS = {
    9: {"a": 1, "b": 1, "z": 1j},
    12: {"a": 1, "b": 0, "z": 1j, "w": 2j, "x": 0},
    16: {"a": 3, "b": 1, "z": 0.9j, "w": 0.3 + 1.8j},
    18: {"a": 1.3, "b": 0.4, "A": 2, "B": 0.3, "z": 0.1 + 0.9j, "w": 0.2 + 1.5j},
    20: {"a": 1.3, "b": 0.4, "A": 2, "B": 0.3, "z": 0.1 + 0.9j, "w": 0.2 + 1.5j},
}


def _transform(k):
    def run(p, tol):
        if k in _TRANSFORM_DEFAULTS:
            base = dict(_TRANSFORM_DEFAULTS[k])
        else:
            base = random_grid(0, 1, f"thm{k}")[0]
        base.update({key: _num(v) for key, v in p.items()})
        return integral.verify_transform(f"thm{k}", base, tol=tol)
    return run


THEOREMS = {3: _thm3, 4: _thm4, 8: _thm8, 10: _thm10, 15: _thm15, 17: _thm17,
            **{k: _transform(k) for k in (9, 11, 12, 16, 18, 19, 20, 21)}}


# ---------------------------------------------------------------------------
# argument parsing

def _build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="lerchmock",
                                 description="Mock theta q-series, Lerch sums and integral identities.")
    sub = ap.add_subparsers(dest="command", required=True)

    c = sub.add_parser("coeffs", help="export exact series coefficients")
    c.add_argument("family", help=", ".join(SERIES_FAMILIES))
    c.add_argument("--params", nargs="*", default=[], metavar="K=V")
    c.add_argument("--order", type=int, default=20)
    c.add_argument("--format", choices=("csv", "json"), default="csv")
    c.add_argument("--out", "--json", dest="out", metavar="PATH",
                   help="write to a file instead of stdout")

    e = sub.add_parser("eval", help="evaluate a function numerically")
    e.add_argument("func", help=", ".join(EVAL_FUNCTIONS))
    e.add_argument("args", nargs="*", help="numbers; complex as 0.1+0.9i")
    e.add_argument("--tol", type=float, default=1e-15)
    e.add_argument("--format", choices=("text", "json"), default="text")
    e.add_argument("--json", metavar="PATH")

    v = sub.add_parser("verify", help="run identity checks")
    v.add_argument("pattern", nargs="?", default=None, help="id glob, e.g. 'thm1*'")
    v.add_argument("--mode", choices=("exact", "numeric"))
    v.add_argument("--order", type=int)
    v.add_argument("--tol", type=float)
    v.add_argument("--seed", type=int)
    v.add_argument("--jobs", type=int)
    v.add_argument("--config", metavar="PATH", help="key = value file")
    v.add_argument("--json", metavar="PATH", help="write all reports as JSON")
    v.add_argument("--format", choices=("text", "json"), default="text")

    i = sub.add_parser("integral", help="check one integral identity at one point")
    i.add_argument("--theorem", type=int, required=True, choices=sorted(THEOREMS))
    i.add_argument("--params", nargs="*", default=[], metavar="K=V")
    i.add_argument("--tol", type=float, default=1e-7)
    i.add_argument("--json", metavar="PATH")
    i.add_argument("--format", choices=("text", "json"), default="text")
    return ap


def _emit_reports(reports, args, out) -> None:
    """verify writes a list of reports; integral writes its single report."""
    payload = [r.to_dict() for r in reports]
    if args.json:
        body = payload if args.command == "verify" else payload[0]
        Path(args.json).write_text(json.dumps(body, indent=2) + "\n")
    if args.format == "json":
        out.write(json.dumps(payload, indent=2) + "\n")
    else:
        for r in reports:
            out.write(r.line() + "\n")


def _cmd_coeffs(args, out) -> int:
    text = export_coeffs(args.family, parse_params(args.params), args.order, args.format,
                         args.out)
    if not args.out:
        out.write(text)
    return 0


def _cmd_eval(args, out) -> int:
    est = evaluate(args.func, args.args, args.tol)
    rec = {"function": args.func, "args": list(args.args),
           "value": _plain(complex(est.value)), "error": est.error, "terms": est.work}
    if args.json:
        Path(args.json).write_text(json.dumps(rec, indent=2) + "\n")
    if args.format == "json":
        out.write(json.dumps(rec) + "\n")
    else:
        out.write(f"{_fmt_complex(est.value)} ± {est.error:.3e}\n")
    return 0


def _cmd_verify(args, out) -> int:
    cfg = load_config(args.config) if args.config else Config()
    cfg = cfg.merged(order=args.order, tol=args.tol, seed=args.seed, jobs=args.jobs)
    reports = run_suite(args.pattern, cfg, mode=args.mode)
    _emit_reports(reports, args, out)
    passed = sum(r.passed for r in reports)
    if args.format == "text":
        out.write(f"{passed}/{len(reports)} passed\n")
    return 0 if passed == len(reports) else 1


def _cmd_integral(args, out) -> int:
    rep = THEOREMS[args.theorem](parse_params(args.params), args.tol)
    _emit_reports([rep], args, out)
    return 0 if rep.passed else 1


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    args = _build_parser().parse_args(argv)
    handler = {"coeffs": _cmd_coeffs, "eval": _cmd_eval, "verify": _cmd_verify,
               "integral": _cmd_integral}[args.command]
    try:
        return handler(args, out)
    except (UnknownIdentity, UnknownFamily, ConfigInvalid) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    except LerchMockError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
