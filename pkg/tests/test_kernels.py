import os
import subprocess
import sys

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from lerchmock import kernels

BACKENDS = kernels.backends()
needs_both = pytest.mark.skipif(len(BACKENDS) < 2, reason="compiled extension not built")


def test_python_backend_always_present():
    assert "python" in BACKENDS
    assert kernels.BACKEND in BACKENDS


def test_forcing_the_fallback():
    env = dict(os.environ, LERCHMOCK_PURE_PYTHON="1")
    out = subprocess.run([sys.executable, "-c", "from lerchmock import kernels; print(kernels.BACKEND)"],
                         env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "python"


@needs_both
@given(st.integers(1, 400))
@settings(max_examples=20)
def test_divisor_sieve_backends_agree(limit):
    (s1, d1), (s2, d2) = (BACKENDS[k].divisor_sieve(limit) for k in ("python", "cython"))
    assert np.array_equal(np.asarray(s1), np.asarray(s2))
    assert np.array_equal(np.asarray(d1), np.asarray(d2))


@needs_both
@given(st.integers(1, 5), st.integers(-3, 5), st.integers(1, 4), st.integers(1, 150))
@settings(max_examples=40)
def test_lerch_counts_backends_agree(a, b, c, N):
    starts, divs = BACKENDS["python"].divisor_sieve(N)
    for name in ("lerch_c1", "lerch_c2"):
        py = getattr(BACKENDS["python"], name)(a, b, c, N, starts, divs)
        cy = getattr(BACKENDS["cython"], name)(a, b, c, N, starts, divs)
        assert np.array_equal(np.asarray(py), np.asarray(cy))


complex_pts = st.lists(st.builds(complex, st.floats(-3, 3), st.floats(-0.5, 0.5)), min_size=1, max_size=8)


@needs_both
@given(complex_pts, st.floats(0.2, 3), st.floats(-1, 1), st.integers(1, 20), st.booleans())
@settings(max_examples=40)
def test_theta_sum_backends_agree(v, re_, im_, N, alt):
    logq = complex(-re_, im_)
    v = np.array(v)
    py = BACKENDS["python"].theta_sum(v, logq, N, alt)
    cy = BACKENDS["cython"].theta_sum(v, logq, N, alt)
    assert np.allclose(py, cy, rtol=1e-13, atol=1e-13)


@needs_both
@given(st.builds(complex, st.floats(-0.4, 0.4), st.floats(0.3, 1.5)),
       st.lists(st.floats(-0.9, 0.9), min_size=1, max_size=6), st.integers(1, 30), st.sampled_from([1.0, -1.0]))
@settings(max_examples=40)
def test_log_qprod_pair_backends_agree(z, t, N, sign):
    t = np.array(t, dtype=complex)
    py = BACKENDS["python"].log_qprod_pair(z, 1.0, 2.0, t, N, sign)
    cy = BACKENDS["cython"].log_qprod_pair(z, 1.0, 2.0, t, N, sign)
    # logs agree modulo 2 pi i; compare exponentials
    assert np.allclose(np.exp(py), np.exp(cy), rtol=1e-12, atol=1e-14)


def test_theta_sum_against_closed_value():
    # theta3(0, q) with q = 0.1
    v = kernels.theta_sum(np.array([0j]), np.log(0.1), 10, False)
    assert abs(v[0] - 1.20020000200000021115) < 1e-15


def test_benchmark_runs(tmp_path, capsys):
    import importlib.util
    from pathlib import Path
    path = Path(__file__).resolve().parent.parent / "benchmarks" / "bench_kernels.py"
    spec = importlib.util.spec_from_file_location("bench_kernels", path)
    bench = importlib.util.module_from_spec(spec)
    spec.loader.exec_module(bench)
    bench.main(["--repeat", "1", "--json", str(tmp_path / "b.json")])
    assert "divisor_sieve" in capsys.readouterr().out
