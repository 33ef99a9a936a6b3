"""Fourier coefficients of the Lerch sums f_s and f_c.

    f_s(a,b;c;z) = sum_{n != 0} (-1)^n q^(a n^2 + b n) / sinh(2 pi i n c z)
    f_c(a,b;c;z) = sum_{n}      (-1)^n q^(a n^2 + b n) / cosh(2 pi i n c z)

Two independent routes are provided for each sum: a divisor-sum formula for
the n-th coefficient (``fs_series``/``fc_series``, backed by the compiled
kernels) and a direct geometric expansion of the double sum
(``fs_bruteforce``/``fc_bruteforce``, pure Python).
"""
from __future__ import annotations

from fractions import Fraction

from . import kernels
from .errors import ConstraintViolation
from .series import FormalSeries, divisor_table

__all__ = [
    "eps", "eps0", "C1", "C2", "Cs", "Cc",
    "c1_array", "c2_array", "cs_array", "cc_array",
    "fs_series", "fc_series", "fs_bruteforce", "fc_bruteforce",
    "chebyshev_fs",
]


def _sign(x) -> int:
    return (x > 0) - (x < 0)


def eps(n, l) -> int:
    """1 if n, l > 0; -1 if n, l < 0; 0 otherwise."""
    sn, sl = _sign(n), _sign(l)
    return sn * sl * (sn + sl) // 2


def eps0(n, l) -> int:
    """1 iff n*l > 0."""
    return 1 if n * l > 0 else 0


def _check(a, c, n=None):
    if a < 1:
        raise ConstraintViolation("a must be a positive integer")
    if c == 0:
        raise ConstraintViolation("c must be nonzero")
    if n is not None and n < 1:
        raise ConstraintViolation("n must be a positive integer")


def C1(a: int, b: int, c: int, n: int) -> int:
    """Signed-divisor sum; d runs over all nonzero integers with |d| | n."""
    _check(a, c, n)
    s = 0
    for d0 in range(1, n + 1):
        if n % d0:
            continue
        for d in (d0, -d0):
            num = b + a * d - n // d
            if num % c:
                continue
            s += (-1) ** (d & 1) * eps(d, -(num // c))
    return 2 * s


def C2(a: int, b: int, c: int, n: int) -> int:
    """Positive-divisor sum with the extra sign (-1)^(-(b + a d - n/d)/c)."""
    _check(a, c, n)
    s = 0
    for d in range(1, n + 1):
        if n % d:
            continue
        num = b + a * d - n // d
        if num % c:
            continue
        k = -(num // c)
        s += (-1) ** (d & 1) * eps(d, k) * (-1) ** (k & 1)
    return 2 * s


def Cs(a: int, b: int, c: int, n: int) -> int:
    return C1(a, c - b, 2 * c, n)


def Cc(a: int, b: int, c: int, n: int) -> int:
    return C2(a, c + b, 2 * c, n) + C2(a, c - b, 2 * c, n)


# vectorized versions over n = 0..N (index 0 unused) -------------------------

def c1_array(a: int, b: int, c: int, N: int):
    _check(a, c)
    t = divisor_table(max(N, 1))
    return kernels.lerch_c1(int(a), int(b), int(c), int(N), t.starts, t.divs)


def c2_array(a: int, b: int, c: int, N: int):
    _check(a, c)
    t = divisor_table(max(N, 1))
    return kernels.lerch_c2(int(a), int(b), int(c), int(N), t.starts, t.divs)


def cs_array(a, b, c, N):
    return c1_array(a, c - b, 2 * c, N)


def cc_array(a, b, c, N):
    return c2_array(a, c + b, 2 * c, N) + c2_array(a, c - b, 2 * c, N)


# series assembly ----------------------------------------------------------

def _theta_exponents(a: int, lin: int, order: int):
    """Exponents a n^2 + lin n (n >= 1) that are <= order."""
    out = []
    n = 1
    while True:
        e = a * n * n + lin * n
        if e > order and 2 * a * n + lin > 0:
            break
        if e <= order:
            out.append((n, e))
        n += 1
    return out


def _min_exponent(a: int, lin: int) -> int:
    """min over n >= 1 of a n^2 + lin n."""
    best = a + lin
    n = 2
    while 2 * a * (n - 1) + lin < 0:
        best = min(best, a * n * n + lin * n)
        n += 1
    return best


def _assemble(order: int, terms: dict, lo: int) -> FormalSeries:
    return FormalSeries.from_terms(terms, order, offset=min(lo, order))


def fs_series(a: int, b: int, c: int, order: int) -> FormalSeries:
    """f_s through q^order from the divisor coefficients plus the theta remainder."""
    _require_series_mode(a, c)
    terms = {}
    if order >= 1:
        cs = cs_array(a, b, c, order)
        for n in range(1, order + 1):
            if cs[n]:
                terms[n] = int(cs[n])
    for n, e in _theta_exponents(a, c - b, order):
        terms[e] = terms.get(e, 0) + 2 * (-1) ** n
    lo = min(1, _min_exponent(a, c - abs(b)))
    return _assemble(order, terms, lo)


def fc_series(a: int, b: int, c: int, order: int) -> FormalSeries:
    """f_c through q^order from the divisor coefficients plus both theta remainders."""
    _require_series_mode(a, c)
    terms = {0: 1}
    if order >= 1:
        cc = cc_array(a, b, c, order)
        for n in range(1, order + 1):
            if cc[n]:
                terms[n] = terms.get(n, 0) + int(cc[n])
    for lin in (c - b, c + b):
        for n, e in _theta_exponents(a, lin, order):
            terms[e] = terms.get(e, 0) + 2 * (-1) ** n
    lo = min(0, _min_exponent(a, c - abs(b)))
    return _assemble(order, terms, lo)


def _require_series_mode(a, c):
    if a < 1 or c < 1:
        raise ConstraintViolation("series mode needs integers a >= 1 and c >= 1")


def _double_sum(a, b, c, order, coeff):
    """Collect coeff(n, l, sign) * q^(a n^2 + c(2l+1) n + sign*b n) for n >= 1, l >= 0."""
    terms = {}
    lo = 0
    n = 1
    while True:
        base = a * n * n + c * n - abs(b) * n
        if base > order and 2 * a * n + c - abs(b) > 0:
            break
        for sgn in (-1, 1):
            l = 0
            while True:
                e = a * n * n + c * (2 * l + 1) * n + sgn * b * n
                if e > order:
                    break
                w = coeff(n, l, sgn)
                if w:
                    terms[e] = terms.get(e, 0) + w
                    lo = min(lo, e)
                l += 1
        n += 1
    return terms, lo


def fs_bruteforce(a: int, b: int, c: int, order: int) -> FormalSeries:
    """Direct expansion ``2 sum_{l>=0} sum_{n>=1} (-1)^n (q^(an^2+c(2l+1)n-bn) - q^(an^2+c(2l+1)n+bn))``.

    This is the geometric expansion of 1/sinh; the factor 2 comes from
    ``1/sinh(2 pi i n c z) = -2 sum_l q^(c n (2l+1))``.
    """
    _require_series_mode(a, c)
    terms, lo = _double_sum(a, b, c, order,
                            lambda n, l, s: 2 * (-1) ** n * (-s))
    return _assemble(order, terms, min(lo, 1))


def fc_bruteforce(a: int, b: int, c: int, order: int) -> FormalSeries:
    """Direct expansion ``1 + 2 sum_{n>=1,l>=0} (-1)^(n+l) (q^(an^2+bn+c(2l+1)n) + q^(an^2-bn+c(2l+1)n))``."""
    _require_series_mode(a, c)
    terms, lo = _double_sum(a, b, c, order,
                            lambda n, l, s: 2 * (-1) ** (n + l))
    terms[0] = terms.get(0, 0) + 1
    return _assemble(order, terms, min(lo, 0))


def chebyshev_fs(a, b: int, order) -> FormalSeries:
    """``sum_{n>=1} (-1)^n q^(a n^2) U_{b-1}(cos 2 pi n z)`` as an exact series.

    ``U_{b-1}(cos t)`` is expanded into cosines: ``1 + 2 sum_j cos(2 j t)`` for
    odd b and ``2 sum_j cos((2j+1) t)`` for even b, and ``2 cos(k t)`` becomes
    ``q^(k n) + q^(-k n)``.  ``a`` may be any positive rational.
    """
    a = Fraction(a)
    b = int(b)
    order = Fraction(order)
    if a <= 0:
        raise ConstraintViolation("a must be positive")
    if b < 1:
        raise ConstraintViolation("b must be a positive integer")
    if b & 1:
        freqs = [2 * j for j in range(1, (b - 1) // 2 + 1)]
        centre = True
    else:
        freqs = [2 * j + 1 for j in range((b - 1) // 2 + 1)]
        centre = False
    kmax = max(freqs, default=0)
    terms = {}
    lo = Fraction(0)
    n = 1
    while True:
        base = a * n * n
        if base - kmax * n > order and 2 * a * n > kmax:
            break
        sgn = -1 if n & 1 else 1
        exps = [base] if centre else []
        for k in freqs:
            exps += [base + k * n, base - k * n]
        for e in exps:
            if e <= order:
                terms[e] = terms.get(e, 0) + sgn
                lo = min(lo, e)
        n += 1
    return FormalSeries.from_terms(terms, order, offset=lo, den=a.denominator)
