"""Pure Python / numpy implementations of the hot kernels.

Used when the compiled ``_ckernels`` extension is unavailable, or when
``LERCHMOCK_PURE_PYTHON`` is set.  Signatures and results match the
compiled module exactly (integer kernels) or to rounding (complex kernels).
"""
import numpy as np


def divisor_sieve(limit):
    """CSR divisor table for 1..limit: divisors of n are divs[starts[n]:starts[n+1]]."""
    limit = int(limit)
    counts = [0] * (limit + 2)
    for d in range(1, limit + 1):
        for m in range(d, limit + 1, d):
            counts[m] += 1
    starts = [0] * (limit + 2)
    acc = 0
    for n in range(1, limit + 1):
        starts[n] = acc
        acc += counts[n]
    starts[limit + 1] = acc
    divs = [0] * acc
    fill = starts[:]
    for d in range(1, limit + 1):
        for m in range(d, limit + 1, d):
            divs[fill[m]] = d
            fill[m] += 1
    return np.asarray(starts, dtype=np.int64), np.asarray(divs, dtype=np.int64)


def _sign(x):
    return (x > 0) - (x < 0)


def _eps(n, l):
    sn, sl = _sign(n), _sign(l)
    return sn * sl * (sn + sl) // 2


def lerch_c1(a, b, c, N, starts, divs):
    """C1(a,b,c;n) for n = 0..N (index 0 is unused and left 0)."""
    out = np.zeros(N + 1, dtype=np.int64)
    for n in range(1, N + 1):
        s = 0
        for k in range(starts[n], starts[n + 1]):
            d0 = int(divs[k])
            for d in (d0, -d0):
                num = b + a * d - n // d
                if num % c:
                    continue
                e = _eps(d, -(num // c))
                if e:
                    s += -e if d & 1 else e
        out[n] = 2 * s
    return out


def lerch_c2(a, b, c, N, starts, divs):
    """C2(a,b,c;n) for n = 0..N over positive divisors only."""
    out = np.zeros(N + 1, dtype=np.int64)
    for n in range(1, N + 1):
        s = 0
        for k in range(starts[n], starts[n + 1]):
            d = int(divs[k])
            num = b + a * d - n // d
            if num % c:
                continue
            l = -(num // c)
            e = _eps(d, l)
            if e:
                if (d + l) & 1:
                    e = -e
                s += e
        out[n] = 2 * s
    return out


def theta_sum(v, logq, N, alternating):
    """sum_{|n|<=N} (+-1)^n exp(n^2 logq + 2 i n v) for every entry of v."""
    v = np.asarray(v, dtype=np.complex128)
    out = np.ones_like(v)
    for n in range(1, N + 1):
        base = n * n * logq
        term = np.exp(base + 2j * n * v) + np.exp(base - 2j * n * v)
        if alternating and n & 1:
            out -= term
        else:
            out += term
    return out


def _log1p_eq(s, sign):
    """log(1 + sign*exp(2 pi i s)) without overflow (branch is irrelevant to callers)."""
    x = 2j * np.pi * s
    big = x.real > 0
    out = np.empty_like(x)
    out[~big] = np.log(1.0 + sign * np.exp(x[~big]))
    xb = x[big]
    out[big] = xb + np.log(sign + np.exp(-xb))
    return out


def log_qprod_pair(z, base, step, t, N, sign):
    """sum_{n<N} log(1+sign q^(n step+base-t)) + log(1+sign q^(n step+base+t)), q^x := e(zx)."""
    shape = np.shape(t)
    t = np.asarray(t, dtype=np.complex128).ravel()
    out = np.zeros_like(t)
    for n in range(N):
        e0 = n * step + base
        out += _log1p_eq(z * (e0 - t), sign)
        out += _log1p_eq(z * (e0 + t), sign)
    return out.reshape(shape)
