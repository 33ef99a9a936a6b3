# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=False
"""Compiled versions of the kernels in ``_pykernels``."""
import numpy as np
cimport numpy as cnp
from libc.math cimport M_PI

cnp.import_array()

cdef extern from "complex.h" nogil:
    double complex cexp(double complex)
    double complex clog(double complex)
    double creal(double complex)


def divisor_sieve(long limit):
    cdef long d, m, n, acc
    cdef cnp.ndarray[cnp.int64_t, ndim=1] counts = np.zeros(limit + 2, dtype=np.int64)
    cdef cnp.ndarray[cnp.int64_t, ndim=1] starts = np.zeros(limit + 2, dtype=np.int64)
    for d in range(1, limit + 1):
        for m in range(d, limit + 1, d):
            counts[m] += 1
    acc = 0
    for n in range(1, limit + 1):
        starts[n] = acc
        acc += counts[n]
    starts[limit + 1] = acc
    cdef cnp.ndarray[cnp.int64_t, ndim=1] divs = np.zeros(acc, dtype=np.int64)
    cdef cnp.ndarray[cnp.int64_t, ndim=1] fill = starts.copy()
    for d in range(1, limit + 1):
        for m in range(d, limit + 1, d):
            divs[fill[m]] = d
            fill[m] += 1
    return starts, divs


cdef inline long _sign(long x) noexcept nogil:
    return (x > 0) - (x < 0)


cdef inline long _eps(long n, long l) noexcept nogil:
    cdef long sn = _sign(n), sl = _sign(l)
    return sn * sl * (sn + sl) // 2


def lerch_c1(long a, long b, long c, long N,
             cnp.ndarray[cnp.int64_t, ndim=1] starts,
             cnp.ndarray[cnp.int64_t, ndim=1] divs):
    cdef cnp.ndarray[cnp.int64_t, ndim=1] out = np.zeros(N + 1, dtype=np.int64)
    cdef long n, k, d0, d, num, s, e, j
    for n in range(1, N + 1):
        s = 0
        for k in range(starts[n], starts[n + 1]):
            d0 = divs[k]
            for j in range(2):
                d = d0 if j == 0 else -d0
                num = b + a * d - n // d
                if num % c != 0:
                    continue
                e = _eps(d, -num // c)
                if e != 0:
                    if d & 1:
                        s -= e
                    else:
                        s += e
        out[n] = 2 * s
    return out


def lerch_c2(long a, long b, long c, long N,
             cnp.ndarray[cnp.int64_t, ndim=1] starts,
             cnp.ndarray[cnp.int64_t, ndim=1] divs):
    cdef cnp.ndarray[cnp.int64_t, ndim=1] out = np.zeros(N + 1, dtype=np.int64)
    cdef long n, k, d, num, s, e, l
    for n in range(1, N + 1):
        s = 0
        for k in range(starts[n], starts[n + 1]):
            d = divs[k]
            num = b + a * d - n // d
            if num % c != 0:
                continue
            l = -num // c
            e = _eps(d, l)
            if e != 0:
                if (d + l) & 1:
                    e = -e
                s += e
        out[n] = 2 * s
    return out


def theta_sum(v, double complex logq, long N, bint alternating):
    cdef cnp.ndarray[cnp.complex128_t, ndim=1] vv = np.ascontiguousarray(
        np.asarray(v, dtype=np.complex128).ravel())
    cdef Py_ssize_t m = vv.shape[0], i
    cdef cnp.ndarray[cnp.complex128_t, ndim=1] out = np.empty(m, dtype=np.complex128)
    cdef long n
    cdef double complex acc, base, term, x
    cdef double complex I2 = 2j
    with nogil:
        for i in range(m):
            x = vv[i]
            acc = 1.0
            for n in range(1, N + 1):
                base = n * n * logq
                term = cexp(base + I2 * n * x) + cexp(base - I2 * n * x)
                if alternating and (n & 1):
                    acc = acc - term
                else:
                    acc = acc + term
            out[i] = acc
    return out.reshape(np.shape(v))


cdef inline double complex _log1p_eq(double complex s, double sign) noexcept nogil:
    cdef double complex x = 2j * M_PI * s
    if creal(x) > 0:
        return x + clog(sign + cexp(-x))
    return clog(1.0 + sign * cexp(x))


def log_qprod_pair(double complex z, double base, double step, t, long N, double sign):
    cdef cnp.ndarray[cnp.complex128_t, ndim=1] tt = np.ascontiguousarray(
        np.asarray(t, dtype=np.complex128).ravel())
    cdef Py_ssize_t m = tt.shape[0], i
    cdef cnp.ndarray[cnp.complex128_t, ndim=1] out = np.empty(m, dtype=np.complex128)
    cdef long n
    cdef double e0
    cdef double complex acc, ti
    with nogil:
        for i in range(m):
            ti = tt[i]
            acc = 0.0
            for n in range(N):
                e0 = n * step + base
                acc = acc + _log1p_eq(z * (e0 - ti), sign) + _log1p_eq(z * (e0 + ti), sign)
            out[i] = acc
    return out.reshape(np.shape(t))
