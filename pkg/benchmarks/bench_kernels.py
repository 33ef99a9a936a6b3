"""Time the compiled kernels against the numpy fallback.

    python benchmarks/bench_kernels.py [--repeat N] [--json PATH]

Each kernel is run on the same inputs under both backends; results are checked
for agreement before timings are reported.
"""
import argparse
import json
import sys
import timeit

import numpy as np

from lerchmock import kernels


def cases():
    starts, divs = kernels.backends()["python"].divisor_sieve(2000)
    v = np.linspace(-3, 3, 4000) + 0.2j
    t = np.linspace(-0.9, 0.9, 400).astype(complex)
    return {
        "divisor_sieve(20000)": (lambda m: m.divisor_sieve(20000), None),
        "lerch_c1(3,1,2; 2000)": (lambda m: m.lerch_c1(3, 1, 2, 2000, starts, divs), None),
        "lerch_c2(3,1,2; 2000)": (lambda m: m.lerch_c2(3, 1, 2, 2000, starts, divs), None),
        "theta_sum(4000 pts, N=12)": (lambda m: m.theta_sum(v, np.log(0.3), 12, True), 1e-12),
        "log_qprod_pair(400 pts, N=40)": (
            lambda m: m.log_qprod_pair(0.1 + 0.9j, 1.0, 2.0, t, 40, -1.0), 1e-12),
    }


def _same(a, b, rtol):
    if isinstance(a, tuple):
        return all(_same(x, y, rtol) for x, y in zip(a, b))
    a, b = np.asarray(a), np.asarray(b)
    if rtol is None:
        return np.array_equal(a, b)
    return np.allclose(np.exp(a) if a.dtype.kind == "c" else a,
                       np.exp(b) if b.dtype.kind == "c" else b, rtol=rtol, atol=1e-14)


def main(argv=None):
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--json", metavar="PATH")
    args = ap.parse_args(argv)

    mods = kernels.backends()
    if "cython" not in mods:
        print("compiled extension not built; only the fallback is available", file=sys.stderr)
    rows = []
    for name, (fn, rtol) in cases().items():
        res = {k: fn(m) for k, m in mods.items()}
        if len(res) == 2 and not _same(res["python"], res["cython"], rtol):
            raise SystemExit(f"backends disagree on {name}")
        row = {"kernel": name}
        for k, m in mods.items():
            row[k] = min(timeit.repeat(lambda: fn(m), number=1, repeat=args.repeat))
        if "cython" in row:
            row["speedup"] = row["python"] / row["cython"]
        rows.append(row)

    print(f"{'kernel':34} {'python (s)':>11} {'cython (s)':>11} {'speedup':>8}")
    for r in rows:
        cy = f"{r['cython']:11.5f}" if "cython" in r else f"{'-':>11}"
        sp = f"{r['speedup']:7.1f}x" if "speedup" in r else f"{'-':>8}"
        print(f"{r['kernel']:34} {r['python']:11.5f} {cy} {sp}")
    if args.json:
        with open(args.json, "w") as fh:
            json.dump(rows, fh, indent=2)


if __name__ == "__main__":
    main()
