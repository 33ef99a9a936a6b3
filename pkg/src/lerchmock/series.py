"""
Exact truncated q-series with rational coefficients.

A :class:`FormalSeries` stores the expansion

    q^offset * (c_0 + c_1 q^(1/den) + c_2 q^(2/den) + ... + c_N q^(N/den)) + O(...)

where every ``c_k`` is a :class:`fractions.Fraction`, ``offset`` is an arbitrary
rational and ``den`` is a positive integer step denominator (1 for ordinary
integer-step series).  ``order`` is ``N``: coefficients past index ``N`` are
unknown, not zero.  Every binary operation keeps only what is reliable in both
operands, so a result never claims more precision than its inputs.

Besides the arithmetic the module builds the concrete series used throughout
the package: q-Pochhammer products, eta and chi, the third order mock theta
functions f, phi, psi and f(1/q), Watson's bilateral form of f, exponentials
of divisor sums, and theta series twisted by a character.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Iterable, Mapping, Sequence

import numpy as np

from . import kernels
from .errors import (
    ConstraintViolation,
    DivergentProduct,
    IncompatibleOffsets,
    NonzeroConstantTerm,
    ZeroConstantTerm,
)

__all__ = [
    "FormalSeries",
    "DivisorTable",
    "divisor_table",
    "series_mul",
    "series_inv",
    "series_exp",
    "series_log",
    "product_log_series",
    "pochhammer_series",
    "eta_series",
    "chi_series",
    "mock_f_series",
    "phi_series",
    "psi_series",
    "f_recip_series",
    "f_recip_product_series",
    "f_recip_divisor_series",
    "f_product_series",
    "f_divisor_series",
    "watson_numerator_series",
    "watson_rhs_series",
    "divisor_exp_series",
    "theta_char_coeffs",
]

ZERO = Fraction(0)
ONE = Fraction(1)


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, float):
        raise TypeError("floating point coefficients are not allowed in exact series")
    return Fraction(x)


def _lcm(a: int, b: int) -> int:
    return a * b // math.gcd(a, b)


@dataclass(frozen=True)
class FormalSeries:
    """Truncated series ``q^offset * sum_k coeffs[k] q^(k/den)``.

    Instances are immutable.  Use the constructors :meth:`from_coeffs`,
    :meth:`from_terms`, :meth:`one` and :meth:`monomial` rather than the raw
    dataclass initializer when the inputs are not already Fractions.
    """

    offset: Fraction
    coeffs: tuple
    den: int = 1

    def __post_init__(self):
        if not self.coeffs:
            raise ValueError("a series needs at least one coefficient")
        if self.den < 1:
            raise ValueError("step denominator must be positive")

    # construction -----------------------------------------------------
    @classmethod
    def from_coeffs(cls, coeffs: Iterable, offset=0, den: int = 1) -> "FormalSeries":
        return cls(_frac(offset), tuple(_frac(c) for c in coeffs), int(den))

    @classmethod
    def from_terms(cls, terms: Mapping, order, offset=0, den: int = 1) -> "FormalSeries":
        """Series from ``{exponent: coefficient}``, reliable through ``q^order``.

        Exponents below ``offset`` are an error; exponents above ``order`` are
        dropped.
        """
        offset = _frac(offset)
        n = _index(_frac(order) - offset, den)
        if n < 0:
            raise ValueError("order lies below the offset")
        out = [ZERO] * (n + 1)
        for e, c in terms.items():
            k = _index(_frac(e) - offset, den)
            if k < 0:
                raise ValueError(f"exponent {e} lies below the offset {offset}")
            if k <= n:
                out[k] += _frac(c)
        return cls(offset, tuple(out), int(den))

    @classmethod
    def one(cls, order: int, den: int = 1) -> "FormalSeries":
        return cls(ZERO, (ONE,) + (ZERO,) * int(order), den)

    @classmethod
    def monomial(cls, exponent, order, coeff=1) -> "FormalSeries":
        """``coeff * q^exponent`` known through absolute exponent ``order``."""
        exponent = _frac(exponent)
        return cls.from_terms({exponent: coeff}, order, offset=exponent)

    # basic properties -------------------------------------------------
    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    @property
    def top(self) -> Fraction:
        """Largest exponent whose coefficient is known."""
        return self.offset + Fraction(self.order, self.den)

    def exponent(self, k: int) -> Fraction:
        return self.offset + Fraction(k, self.den)

    def items(self):
        """(exponent, coefficient) pairs, zeros included."""
        for k, c in enumerate(self.coeffs):
            yield self.exponent(k), c

    def terms(self) -> dict:
        return {e: c for e, c in self.items() if c}

    def coeff(self, exponent) -> Fraction:
        """Coefficient of ``q^exponent``; 0 off the lattice or below the offset."""
        exponent = _frac(exponent)
        if exponent > self.top:
            raise IndexError(f"q^{exponent} is beyond the known order (q^{self.top})")
        d = (exponent - self.offset) * self.den
        if d < 0 or d.denominator != 1:
            return ZERO
        return self.coeffs[int(d)]

    def __getitem__(self, exponent) -> Fraction:
        return self.coeff(exponent)

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.coeffs)

    # re-gridding ------------------------------------------------------
    def with_den(self, den: int) -> "FormalSeries":
        """Same series on the finer lattice with step ``1/den``."""
        if den == self.den:
            return self
        if den % self.den:
            raise ValueError("new step must refine the old one")
        m = den // self.den
        out = [ZERO] * (self.order * m + 1)
        out[::m] = self.coeffs
        return FormalSeries(self.offset, tuple(out), den)

    def with_offset(self, offset) -> "FormalSeries":
        """Re-express with a lower (or equal) offset on the same lattice."""
        offset = _frac(offset)
        k = (self.offset - offset) * self.den
        if k < 0 or k.denominator != 1:
            raise IncompatibleOffsets(f"cannot move offset {self.offset} to {offset}")
        return FormalSeries(offset, (ZERO,) * int(k) + self.coeffs, self.den)

    def truncate(self, top) -> "FormalSeries":
        """Drop everything above absolute exponent ``top``."""
        n = _index(_frac(top) - self.offset, self.den)
        if n < 0:
            raise ValueError("truncation point lies below the offset")
        if n > self.order:
            raise ValueError("cannot extend a series past its known order")
        return FormalSeries(self.offset, self.coeffs[: n + 1], self.den)

    def shift(self, exponent) -> "FormalSeries":
        """Multiply by ``q^exponent``."""
        return FormalSeries(self.offset + _frac(exponent), self.coeffs, self.den)

    def dilate(self, k: int) -> "FormalSeries":
        """Substitute ``q -> q^k`` for a positive integer ``k``."""
        k = int(k)
        if k < 1:
            raise ValueError("dilation factor must be a positive integer")
        if k == 1:
            return self
        out = [ZERO] * (self.order * k + 1)
        out[::k] = self.coeffs
        # q^(offset) -> q^(k*offset); step 1/den -> k/den
        return FormalSeries(self.offset * k, tuple(out), self.den)

    def normalized(self) -> "FormalSeries":
        """Drop leading zero coefficients (raising the offset accordingly)."""
        k = 0
        while k < self.order and self.coeffs[k] == 0:
            k += 1
        return FormalSeries(self.exponent(k), self.coeffs[k:], self.den)

    # arithmetic -------------------------------------------------------
    def __neg__(self):
        return FormalSeries(self.offset, tuple(-c for c in self.coeffs), self.den)

    def __add__(self, other):
        if not isinstance(other, FormalSeries):
            other = _constant_like(other, self)
        a, b = _align(self, other)
        top = min(a.top, b.top)
        a, b = a.truncate(top), b.truncate(top)
        return FormalSeries(a.offset, tuple(x + y for x, y in zip(a.coeffs, b.coeffs)), a.den)

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, FormalSeries):
            return series_mul(self, other)
        c = _frac(other)
        return FormalSeries(self.offset, tuple(c * x for x in self.coeffs), self.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, FormalSeries):
            return series_mul(self, series_inv(other))
        c = _frac(other)
        return FormalSeries(self.offset, tuple(x / c for x in self.coeffs), self.den)

    def __pow__(self, n: int):
        n = int(n)
        if n < 0:
            return series_inv(self) ** (-n)
        result = None
        base = self
        while n:
            if n & 1:
                result = base if result is None else series_mul(result, base)
            n >>= 1
            if n:
                base = series_mul(base, base)
        if result is None:
            return FormalSeries.one(self.order, self.den)
        return result

    # comparison -------------------------------------------------------
    def difference(self, other: "FormalSeries") -> "FormalSeries":
        return self - other

    def agrees(self, other: "FormalSeries") -> bool:
        """True when the two series coincide on their common known range."""
        return all(c == 0 for c in self.difference(other).coeffs)

    def max_abs_difference(self, other: "FormalSeries") -> Fraction:
        d = self.difference(other).coeffs
        return max(abs(c) for c in d)

    # numerics ---------------------------------------------------------
    def evaluate(self, z: complex) -> complex:
        """Evaluate at ``q = e(z)``, with ``q^x := exp(2 pi i x z)``.

        Only meaningful when the discarded tail is negligible.
        """
        z = complex(z)
        ex = np.array([float(e) for e, _ in self.items()])
        co = np.array([float(c) for c in self.coeffs])
        return complex(np.sum(co * np.exp(2j * np.pi * ex * z)))

    # serialization ----------------------------------------------------
    def to_dict(self) -> dict:
        d = {
            "offset_num": self.offset.numerator,
            "offset_den": self.offset.denominator,
            "order": self.order,
            "coeffs": [[c.numerator, c.denominator] for c in self.coeffs],
        }
        if self.den != 1:
            d["step_den"] = self.den
        return d

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), separators=(",", ":"))

    @classmethod
    def from_dict(cls, d: Mapping) -> "FormalSeries":
        return cls(
            Fraction(int(d["offset_num"]), int(d["offset_den"])),
            tuple(Fraction(int(n), int(m)) for n, m in d["coeffs"]),
            int(d.get("step_den", 1)),
        )

    @classmethod
    def from_json(cls, text: str) -> "FormalSeries":
        d = json.loads(text)
        s = cls.from_dict(d)
        if "order" in d and int(d["order"]) != s.order:
            raise ValueError("order field disagrees with the coefficient count")
        return s

    def csv_rows(self) -> list:
        return [(_fmt_exp(e), c.numerator, c.denominator) for e, c in self.items()]

    def to_csv(self) -> str:
        lines = ["exponent,numerator,denominator"]
        lines += [f"{e},{n},{d}" for e, n, d in self.csv_rows()]
        return "\n".join(lines) + "\n"

    @classmethod
    def from_csv(cls, text: str, den: int = 1) -> "FormalSeries":
        rows = [r.split(",") for r in text.strip().splitlines()[1:]]
        terms = {Fraction(e): Fraction(int(n), int(d)) for e, n, d in rows}
        exps = sorted(terms)
        return cls.from_terms(terms, exps[-1], offset=exps[0], den=den)

    def __repr__(self):
        shown = []
        for e, c in self.items():
            if c:
                shown.append(f"{c}*q^{_fmt_exp(e)}")
            if len(shown) >= 8:
                shown.append("...")
                break
        body = " + ".join(shown) if shown else "0"
        return f"FormalSeries({body} + O(q^{_fmt_exp(self.top + Fraction(1, self.den))}))"


def _fmt_exp(e: Fraction) -> str:
    return str(e.numerator) if e.denominator == 1 else f"{e.numerator}/{e.denominator}"


def _index(x: Fraction, den: int) -> int:
    """floor(x * den) for a rational x."""
    return math.floor(x * den)


def _constant_like(c, s: FormalSeries) -> FormalSeries:
    top = s.top
    n = _index(top, s.den)
    if n < 0:
        raise ValueError("constant is below the known range of the series")
    return FormalSeries(ZERO, (_frac(c),) + (ZERO,) * n, s.den)


def _align(a: FormalSeries, b: FormalSeries):
    den = _lcm(a.den, b.den)
    a, b = a.with_den(den), b.with_den(den)
    if ((a.offset - b.offset) * den).denominator != 1:
        raise IncompatibleOffsets(f"offsets {a.offset} and {b.offset} are not on a common lattice")
    lo = min(a.offset, b.offset)
    return a.with_offset(lo), b.with_offset(lo)


# ---------------------------------------------------------------------------
# core operations


def _clear(coeffs: Sequence[Fraction]):
    """Integer numerators over a common denominator."""
    d = 1
    for c in coeffs:
        d = _lcm(d, c.denominator)
    return [c.numerator * (d // c.denominator) for c in coeffs], d


def _int_convolve(x: list, y: list, n: int) -> list:
    out = [0] * (n + 1)
    for i, xi in enumerate(x[: n + 1]):
        if xi:
            lim = min(len(y), n + 1 - i)
            for j in range(lim):
                yj = y[j]
                if yj:
                    out[i + j] += xi * yj
    return out


def series_mul(A: FormalSeries, B: FormalSeries) -> FormalSeries:
    """Product of two series; the result is known only as far as both factors allow."""
    den = _lcm(A.den, B.den)
    A, B = A.with_den(den), B.with_den(den)
    n = min(A.order, B.order)
    xa, da = _clear(A.coeffs[: n + 1])
    xb, db = _clear(B.coeffs[: n + 1])
    prod = _int_convolve(xa, xb, n)
    d = da * db
    return FormalSeries(A.offset + B.offset, tuple(Fraction(p, d) for p in prod), den)


def series_inv(A: FormalSeries) -> FormalSeries:
    """Reciprocal ``1/A``.  Raises ZeroConstantTerm when the leading coefficient is 0."""
    a = A.coeffs
    if a[0] == 0:
        raise ZeroConstantTerm("series has a vanishing leading coefficient")
    n = A.order
    inv0 = 1 / a[0]
    c = [inv0] + [ZERO] * n
    for k in range(1, n + 1):
        s = ZERO
        for j in range(1, k + 1):
            if a[j]:
                s += a[j] * c[k - j]
        c[k] = -s * inv0
    return FormalSeries(-A.offset, tuple(c), A.den)


def _zero_offset(A: FormalSeries) -> FormalSeries:
    if A.offset == 0:
        return A
    if A.offset > 0 and (A.offset * A.den).denominator == 1:
        return A.with_offset(0)
    raise NonzeroConstantTerm(f"series starts at q^{A.offset}, not at a constant term")


def series_exp(A: FormalSeries) -> FormalSeries:
    """Formal exponential of a series without constant term.

    Uses ``k c_k = sum_{j=1..k} j a_j c_{k-j}``.
    """
    A = _zero_offset(A)
    a = A.coeffs
    if a[0] != 0:
        raise NonzeroConstantTerm("exp needs a series with zero constant term")
    n = A.order
    ja = [j * a[j] for j in range(n + 1)]
    c = [ONE] + [ZERO] * n
    for k in range(1, n + 1):
        s = ZERO
        for j in range(1, k + 1):
            if ja[j]:
                s += ja[j] * c[k - j]
        c[k] = s / k
    return FormalSeries(ZERO, tuple(c), A.den)


def series_log(A: FormalSeries) -> FormalSeries:
    """Formal logarithm of a series with constant term 1."""
    A = _zero_offset(A)
    a = A.coeffs
    if a[0] != 1:
        raise NonzeroConstantTerm("log needs constant term exactly 1")
    n = A.order
    b = [ZERO] * (n + 1)
    for k in range(1, n + 1):
        s = k * a[k]
        for j in range(1, k):
            if b[j] and a[k - j]:
                s -= j * b[j] * a[k - j]
        b[k] = s / k
    return FormalSeries(ZERO, tuple(b), A.den)


def product_log_series(exponents: Iterable[int], order: int, sign: int = 1) -> FormalSeries:
    """log of ``prod_e (1 - sign q^e)`` for positive integers ``e``, via
    ``log(1 - x) = -sum_m x^m / m``.
    """
    c = [ZERO] * (order + 1)
    for e in exponents:
        e = int(e)
        if e <= 0:
            raise ValueError("exponents must be positive")
        m = 1
        while e * m <= order:
            c[e * m] -= Fraction(sign ** m, m)
            m += 1
    return FormalSeries(ZERO, tuple(c))


# ---------------------------------------------------------------------------
# divisor table


class DivisorTable:
    """Positive divisors of every n <= limit, built once by a sieve.

    Stored in compressed row form: the divisors of ``n`` (ascending) are
    ``divs[starts[n]:starts[n+1]]``.
    """

    def __init__(self, limit: int):
        if limit < 1:
            raise ValueError("limit must be positive")
        self.limit = int(limit)
        self.starts, self.divs = kernels.divisor_sieve(self.limit)
        self.starts.setflags(write=False)
        self.divs.setflags(write=False)

    def divisors(self, n: int) -> list:
        if not 1 <= n <= self.limit:
            raise IndexError(f"{n} outside 1..{self.limit}")
        return [int(d) for d in self.divs[self.starts[n]:self.starts[n + 1]]]

    def __len__(self):
        return self.limit


@lru_cache(maxsize=8)
def _table(limit: int) -> DivisorTable:
    return DivisorTable(limit)


def divisor_table(limit: int) -> DivisorTable:
    """Shared read-only table covering at least ``1..limit``."""
    size = 64
    while size < limit:
        size *= 2
    return _table(size)


# ---------------------------------------------------------------------------
# products


def pochhammer_series(c, p, n, sign: int, order) -> FormalSeries:
    """``prod_{j=0}^{n-1} (1 - sign q^(c + j p))`` through ``q^order``.

    ``c`` and ``p`` may be rationals; the result lives on the lattice with
    step ``1/lcm(den c, den p)``.  ``n`` is a count or ``math.inf``.
    """
    c, p = _frac(c), _frac(p)
    order = _frac(order)
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    infinite = n == math.inf or n is None
    if infinite and p <= 0:
        raise DivergentProduct("infinite product needs a positive step")
    den = _lcm(c.denominator, p.denominator)
    N = _index(order, den)
    if N < 0:
        raise ValueError("order must be non-negative")
    cur = [0] * (N + 1)
    cur[0] = 1
    j = 0
    while infinite or j < n:
        e = c + j * p
        if e <= 0:
            raise ConstraintViolation(f"factor exponent {e} is not positive")
        k = e * den
        if k > N:
            if infinite or p >= 0:
                break
            j += 1
            continue
        k = int(k)
        # multiply in place by (1 - sign x^k), high to low
        for i in range(N, k - 1, -1):
            if cur[i - k]:
                cur[i] -= sign * cur[i - k]
        j += 1
    return FormalSeries(ZERO, tuple(Fraction(x) for x in cur), den)


def eta_series(order: int) -> FormalSeries:
    """Ramanujan's eta ``prod_{n>=1} (1 - q^n)`` (no q^(1/24) prefactor)."""
    return pochhammer_series(1, 1, math.inf, 1, order)


def chi_series(order: int) -> FormalSeries:
    """``chi(q) = (-q; q)_inf``."""
    return pochhammer_series(1, 1, math.inf, -1, order)


# ---------------------------------------------------------------------------
# mock theta functions


def _finite_poch_int(start: int, step: int, count: int, sign: int, order: int) -> list:
    """Integer coefficient list of prod_{j<count}(1 - sign q^(start+j step))."""
    cur = [0] * (order + 1)
    cur[0] = 1
    for j in range(count):
        k = start + j * step
        if k > order:
            break
        for i in range(order, k - 1, -1):
            if cur[i - k]:
                cur[i] -= sign * cur[i - k]
    return cur


def _int_inv(a: list, n: int) -> list:
    """Inverse of an integer series with constant term +-1 (stays integral)."""
    if a[0] not in (1, -1):
        raise ValueError("constant term must be a unit")
    c = [0] * (n + 1)
    c[0] = a[0]
    for k in range(1, n + 1):
        s = 0
        for j in range(1, min(k, len(a) - 1) + 1):
            if a[j]:
                s += a[j] * c[k - j]
        c[k] = -s * a[0]
    return c


def _sum_over_shifted(order: int, terms) -> FormalSeries:
    """Sum of q^shift * (integer series) pieces, each known past ``order``."""
    acc = [0] * (order + 1)
    for shift, body in terms:
        for i in range(order - shift + 1):
            if body[i]:
                acc[shift + i] += body[i]
    return FormalSeries(ZERO, tuple(Fraction(x) for x in acc))


def mock_f_series(order: int) -> FormalSeries:
    """``f(q) = sum_{n>=0} q^(n^2) / (-q; q)_n^2``."""
    order = int(order)
    pieces = []
    n = 0
    while n * n <= order:
        m = order - n * n
        den = _finite_poch_int(1, 1, n, -1, m)
        den2 = _int_convolve(den, den, m)
        pieces.append((n * n, _int_inv(den2, m)))
        n += 1
    return _sum_over_shifted(order, pieces)


def phi_series(order: int) -> FormalSeries:
    """``phi(q) = sum_{n>=0} q^(n^2) / (-q^2; q^2)_n``."""
    order = int(order)
    pieces = []
    n = 0
    while n * n <= order:
        m = order - n * n
        den = _finite_poch_int(2, 2, n, -1, m)
        pieces.append((n * n, _int_inv(den, m)))
        n += 1
    return _sum_over_shifted(order, pieces)


def psi_series(order: int) -> FormalSeries:
    """``psi(q) = sum_{n>=1} q^(n^2) / (q; q^2)_n``."""
    order = int(order)
    pieces = []
    n = 1
    while n * n <= order:
        m = order - n * n
        den = _finite_poch_int(1, 2, n, 1, m)
        pieces.append((n * n, _int_inv(den, m)))
        n += 1
    return _sum_over_shifted(order, pieces)


def f_recip_series(order: int) -> FormalSeries:
    """``f(1/q) = sum_{n>=0} q^n / (-q; q)_n^2`` for ``|q| < 1``."""
    order = int(order)
    pieces = []
    for n in range(order + 1):
        m = order - n
        den = _finite_poch_int(1, 1, n, -1, m)
        den2 = _int_convolve(den, den, m)
        pieces.append((n, _int_inv(den2, m)))
    return _sum_over_shifted(order, pieces)


def _tail_products(order: int, exps: Callable[[int], int], nmax: int) -> FormalSeries:
    """sum_n q^exps(n) * (-q^(n+1); q)_inf^2 for n = 0..nmax."""
    pieces = []
    for n in range(nmax + 1):
        s = exps(n)
        if s > order:
            break
        m = order - s
        body = _finite_poch_int(n + 1, 1, m + 1, -1, m)
        pieces.append((s, _int_convolve(body, body, m)))
    return _sum_over_shifted(order, pieces)


def f_product_series(order: int) -> FormalSeries:
    """``chi(q)^-2 sum_n (-q^(n+1); q)_inf^2 q^(n^2)``."""
    body = _tail_products(order, lambda n: n * n, order)
    return body * series_inv(chi_series(order) ** 2)


def f_recip_product_series(order: int) -> FormalSeries:
    """``chi(q)^-2 sum_n (-q^(n+1); q)_inf^2 q^n``."""
    body = _tail_products(order, lambda n: n, order)
    return body * series_inv(chi_series(order) ** 2)


def _cofactor_exp(order: int, n: int, table: DivisorTable, route: str) -> FormalSeries:
    """exp(-2 sum_s q^s L_s) with L_s the alternating divisor sum whose
    cofactor is at least n+1.  ``route`` selects one of the two equivalent
    index conventions so they can be compared."""
    if route == "small":
        # 0 < d | s, d <= s/(n+1), weight (-1)^d / d
        return divisor_exp_series(order, lower_bound=n + 1, weight="alternating",
                                  power=-2, table=table)
    # d | s, d >= n+1, weight (-1)^(s/d) d / s
    c = [ZERO] * (order + 1)
    for s in range(1, order + 1):
        acc = ZERO
        for d in table.divisors(s):
            if d >= n + 1:
                acc += Fraction((-1) ** (s // d) * d, s)
        c[s] = -2 * acc
    return series_exp(FormalSeries(ZERO, tuple(c)))


def _divisor_form(order: int, exps: Callable[[int], int], route: str) -> FormalSeries:
    table = divisor_table(max(order, 1))
    acc = FormalSeries(ZERO, (ZERO,) * (order + 1))
    n = 0
    while exps(n) <= order:
        s = exps(n)
        m = order - s
        if m == 0:
            part = FormalSeries.one(0)
        else:
            part = _cofactor_exp(m, n, table, route)
        acc = acc + _pad(part.shift(s), order)
        n += 1
    return acc * series_inv(chi_series(order) ** 2)


def _pad(s: FormalSeries, order: int) -> FormalSeries:
    """Re-express an integer-step series with offset >= 0 at offset 0 through q^order."""
    s = s.with_offset(0)
    if s.order < order:
        raise ValueError("piece is not known far enough")
    return s.truncate(order)


def f_divisor_series(order: int, route: str = "small") -> FormalSeries:
    """f(q) from the divisor-exponential form with weights (-1)^d/d."""
    return _divisor_form(int(order), lambda n: n * n, route)


def f_recip_divisor_series(order: int, route: str = "small") -> FormalSeries:
    """f(1/q) from the divisor-exponential form."""
    return _divisor_form(int(order), lambda n: n, route)


# ---------------------------------------------------------------------------
# Watson


def watson_numerator_series(order: int) -> FormalSeries:
    """``2 sum_{n in Z} (-1)^n q^(n(3n+1)/2) / (1 + q^n)`` with integer coefficients."""
    order = int(order)
    acc = [0] * (order + 1)
    acc[0] += 1  # n = 0: 2 * 1/2
    m = 1
    while True:
        lo_pos = m * (3 * m + 1) // 2
        # n = -m: q^(m(3m-1)/2) / (1 + q^-m) = q^(m(3m-1)/2 + m) / (1 + q^m)
        lo_neg = m * (3 * m - 1) // 2 + m
        if min(lo_pos, lo_neg) > order:
            break
        sgn = -1 if m & 1 else 1
        for start in (lo_pos, lo_neg):
            k = 0
            e = start
            while e <= order:
                acc[e] += 2 * sgn * (-1 if k & 1 else 1)
                k += 1
                e += m
        m += 1
    return FormalSeries(ZERO, tuple(Fraction(x) for x in acc))


def watson_rhs_series(order: int) -> FormalSeries:
    """The bilateral right-hand side of Watson's identity divided by eta."""
    return watson_numerator_series(order) * series_inv(eta_series(order))


# ---------------------------------------------------------------------------
# divisor-sum exponentials


def divisor_exp_series(order: int, *, residue=None, modulus=None, lower_bound=None,
                       weight: str = "flat", power=-1, table: DivisorTable | None = None
                       ) -> FormalSeries:
    """``exp(power * sum_{s<=order} q^s sum_{AB=s} w(A)/A)`` over constrained pairs.

    The constraint on the cofactor ``B`` is ``B = +-residue (mod modulus)`` when
    a modulus is given (both residue classes are counted separately, so the
    class is counted twice when ``2 residue = 0 mod modulus``), and
    ``B >= lower_bound`` when a lower bound is given.  ``w(A)`` is 1 for
    ``weight="flat"`` and ``(-1)^A`` for ``weight="alternating"``.

    With ``power=-1`` this is ``prod_B (1 - q^B)`` (flat) or ``prod_B (1 + q^B)``
    (alternating) over the admissible ``B``.
    """
    order = int(order)
    if order < 0:
        raise ValueError("order must be non-negative")
    if weight not in ("flat", "alternating"):
        raise ValueError("weight must be 'flat' or 'alternating'")
    if modulus is not None and int(modulus) < 1:
        raise ValueError("modulus must be >= 1")
    if order == 0:
        return FormalSeries.one(0)
    table = table if table is not None and table.limit >= order else divisor_table(order)
    power = _frac(power)
    if modulus is not None:
        p = int(modulus)
        r = int(residue) % p
        classes = [r, (-r) % p]
    c = [ZERO] * (order + 1)
    for s in range(1, order + 1):
        acc = ZERO
        for A in table.divisors(s):
            B = s // A
            if modulus is not None:
                mult = sum(1 for cl in classes if B % p == cl)
                if not mult:
                    continue
            else:
                mult = 1
            if lower_bound is not None and B < lower_bound:
                continue
            w = -1 if (weight == "alternating" and A & 1) else 1
            acc += Fraction(mult * w, A)
        c[s] = power * acc
    return series_exp(FormalSeries(ZERO, tuple(c)))


# ---------------------------------------------------------------------------
# theta series with a character


def theta_char_coeffs(a: int, b: int, chi: Callable[[int], int], order: int,
                      route: str = "divisor") -> FormalSeries:
    """``sum_{d>=1} chi(d) q^(a d^2 + b d)`` through ``q^order``.

    ``route="divisor"`` collects, for each n, the divisors d of n with
    ``a d^2 + b d = n``; ``route="direct"`` sums the series term by term.
    The divisor route needs integers with ``a > 0`` and ``b > 0`` or ``a > |b|``
    so that every exponent is positive.
    """
    a, b, order = int(a), int(b), int(order)
    if a <= 0:
        raise ConstraintViolation("a must be positive")
    if route == "divisor":
        if not (b > 0 or a > abs(b)):
            raise ConstraintViolation("divisor form needs b > 0 or a > |b|")
        table = divisor_table(max(order, 1))
        c = [ZERO] * (order + 1)
        for n in range(1, order + 1):
            acc = 0
            for d in table.divisors(n):
                if a * d * d + b * d == n:
                    acc += chi(d)
            c[n] = Fraction(acc)
        return FormalSeries(ZERO, tuple(c))
    if route != "direct":
        raise ValueError("route must be 'divisor' or 'direct'")
    terms = {}
    d = 1
    lo = 0
    while True:
        e = a * d * d + b * d
        if e > order and d > abs(b) / (2 * a):
            break
        if e <= order:
            terms[e] = terms.get(e, 0) + chi(d)
            lo = min(lo, e)
        d += 1
    return FormalSeries.from_terms(terms, order, offset=lo)
