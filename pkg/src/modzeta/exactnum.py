"""Exact rational/symbolic scalars and float-precision zeta and gamma.

Exact side: Bernoulli numbers, zeta at even positive / odd negative integers,
and ``SymScalar`` -- finite sums of terms ``q * pi^a * zeta(m)`` with
rational ``q``, integer ``a >= 0`` and odd ``m >= 3`` (at most one zeta
factor per term).  This basis is closed under the arithmetic the period
polynomials need; products that would create ``zeta(odd)^2`` are rejected.

Numeric side: Riemann zeta on the strip ``-10 <= Re s <= 30``,
``|Im s| <= 50`` by Euler-Maclaurin with fixed cutoffs (deterministic
output), the reflection formula for ``Re s < -1/2``, and the complex gamma
function.  Odd-zeta constants are precomputed by an accelerated alternating
series and cached for SymScalar evaluation.
"""
from __future__ import annotations

import cmath
import math
from fractions import Fraction
from functools import lru_cache
from math import comb

from scipy.special import gamma as _cgamma

from .errors import DomainError, SingularityError

__all__ = [
    "Rational",
    "bernoulli",
    "zeta_even_exact",
    "zeta_negative_exact",
    "zeta_numeric",
    "gamma_numeric",
    "zeta_odd_numeric",
    "alternating_zeta",
    "divisor_sigma",
    "sigma_range",
    "SymScalar",
    "require_finite",
]

#: Exact rationals are plain ``fractions.Fraction`` (normalized, positive
#: denominator) -- exactly the invariants the library needs.
Rational = Fraction

# Euler-Maclaurin cutoffs, fixed for reproducible output.
_EM_N = 40
_EM_M = 20

# Re s below which zeta_numeric switches to the reflection formula.  Kept
# negative so both zeta(s) and zeta(1-s) inside the critical strip are
# computed by the direct Euler-Maclaurin path (functional-equation tests
# then compare two genuinely different evaluations).
_REFLECT_BELOW = -0.5


def require_finite(z: complex) -> complex:
    """Return ``z`` unchanged, raising if a NaN/Inf tried to escape."""
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise SingularityError(f"non-finite value {z!r}")
    return z


# ---------------------------------------------------------------------------
# Bernoulli numbers and exact zeta values
# ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def _bernoulli_list(n: int) -> tuple[Fraction, ...]:
    # B_0..B_n via the binomial recurrence sum_{k<=m} C(m+1,k) B_k = 0,
    # convention B_1 = -1/2.
    out = [Fraction(1)]
    for m in range(1, n + 1):
        s = Fraction(0)
        for k in range(m):
            s += comb(m + 1, k) * out[k]
        out.append(-s / (m + 1))
    return tuple(out)


def bernoulli(n: int) -> Fraction:
    """Bernoulli number B_n (B_1 = -1/2), exact."""
    if n < 0:
        raise DomainError("bernoulli: n must be >= 0")
    return _bernoulli_list(n)[n]


def zeta_even_exact(k: int) -> "SymScalar":
    """zeta(k) for even k >= 2 as an exact pi^k multiple.

    Uses zeta(2m) = (-1)^{m+1} B_{2m} (2 pi)^{2m} / (2 (2m)!).
    """
    if k < 2 or k % 2 != 0:
        raise DomainError("zeta_even_exact: k must be a positive even integer")
    m = k // 2
    q = Fraction((-1) ** (m + 1)) * bernoulli(2 * m) * Fraction(2) ** (2 * m) / (
        2 * Fraction(math.factorial(2 * m))
    )
    return SymScalar({(k, 0): q})


def zeta_negative_exact(n: int) -> Fraction:
    """zeta(n) for n = 0 or negative odd n, exact rational.

    zeta(1-2t) = -B_{2t}/(2t) and zeta(0) = -1/2.  Other arguments are a
    domain error (negative even integers are trivial zeros but are not of
    the 1-2t form this library needs exactly).
    """
    if n == 0:
        return Fraction(-1, 2)
    if n > 0 or n % 2 == 0:
        raise DomainError("zeta_negative_exact: argument must be 0 or a negative odd integer")
    t = (1 - n) // 2
    return -bernoulli(2 * t) / (2 * t)


# ---------------------------------------------------------------------------
# Numeric zeta / gamma
# ---------------------------------------------------------------------------

def alternating_zeta(s: float, n: int = 50) -> float:
    """eta(s) = sum (-1)^{k} (k+1)^{-s} by Cohen-Rodriguez Villegas-Zagier
    acceleration; error ~ (3+sqrt 8)^{-n}, far below double precision at
    the default depth."""
    d = (3.0 + math.sqrt(8.0)) ** n
    d = (d + 1.0 / d) / 2.0
    b = -1.0
    c = -d
    acc = 0.0
    for k in range(n):
        c = b - c
        acc += c / (k + 1) ** s
        b *= (k + n) * (k - n) / ((k + 0.5) * (k + 1))
    return acc / d


@lru_cache(maxsize=None)
def zeta_odd_numeric(m: int) -> float:
    """zeta(m) for odd m >= 3 via the accelerated alternating series."""
    if m < 3 or m % 2 == 0:
        raise DomainError("zeta_odd_numeric: m must be odd and >= 3")
    return alternating_zeta(float(m)) / (1.0 - 2.0 ** (1.0 - m))


@lru_cache(maxsize=None)
def _b2k_over_fact(k: int) -> float:
    return float(bernoulli(2 * k) / math.factorial(2 * k))


def _zeta_em(s: complex) -> complex:
    # Euler-Maclaurin, N direct terms + M corrections; valid comfortably for
    # Re s > -2 at the fixed cutoffs.
    N, M = _EM_N, _EM_M
    acc = complex(0.0)
    for n in range(1, N):
        acc += n ** (-s)
    acc += 0.5 * N ** (-s)
    acc += N ** (1 - s) / (s - 1)
    rising = s
    npow = N ** (-s - 1)
    for k in range(1, M + 1):
        acc += _b2k_over_fact(k) * rising * npow
        rising *= (s + 2 * k - 1) * (s + 2 * k)
        npow /= N * N
    return acc


def zeta_numeric(s: complex) -> complex:
    """Riemann zeta(s), complex, ~1e-13 relative on the working strip."""
    s = complex(s)
    if abs(s - 1.0) < 1e-10:
        raise SingularityError("zeta has a pole at s = 1")
    if s.real < _REFLECT_BELOW:
        # zeta(s) = 2^s pi^(s-1) sin(pi s/2) Gamma(1-s) zeta(1-s)
        return require_finite(
            2.0 ** s
            * cmath.pi ** (s - 1)
            * cmath.sin(cmath.pi * s / 2)
            * gamma_numeric(1 - s)
            * _zeta_em(1 - s)
        )
    return require_finite(_zeta_em(s))


def gamma_numeric(s: complex) -> complex:
    """Gamma(s) for complex s away from the poles 0, -1, -2, ..."""
    s = complex(s)
    if s.imag == 0.0 and s.real <= 0.0 and abs(s.real - round(s.real)) < 1e-12:
        raise SingularityError(f"gamma has a pole at s = {s.real:g}")
    val = complex(_cgamma(s))
    return require_finite(val)


# ---------------------------------------------------------------------------
# Divisor sums
# ---------------------------------------------------------------------------

def divisor_sigma(k: int, n: int) -> int:
    """sigma_k(n) = sum of k-th powers of the divisors of n, exact."""
    if n < 1:
        raise DomainError("divisor_sigma: n must be >= 1")
    if k < 0:
        raise DomainError("divisor_sigma: k must be >= 0")
    total = 1
    m = n
    p = 2
    while p * p <= m:
        if m % p == 0:
            e = 0
            while m % p == 0:
                m //= p
                e += 1
            if k == 0:
                total *= e + 1
            else:
                total *= (p ** (k * (e + 1)) - 1) // (p ** k - 1)
        p += 1 if p == 2 else 2
    if m > 1:
        total *= (1 + m ** k) if k else 2
    return total


def sigma_range(k: int, n_max: int) -> list[int]:
    """[sigma_k(1), ..., sigma_k(n_max)] by a divisor sieve (index 0 unused)."""
    if n_max < 1:
        raise DomainError("sigma_range: n_max must be >= 1")
    out = [0] * (n_max + 1)
    for d in range(1, n_max + 1):
        dk = d ** k
        for m in range(d, n_max + 1, d):
            out[m] += dk
    return out


# ---------------------------------------------------------------------------
# SymScalar
# ---------------------------------------------------------------------------

class SymScalar:
    """Exact scalar: finite sum of ``q * pi^a * zeta(m)`` monomials.

    Keys are ``(pi_power, zeta_arg)`` with ``zeta_arg`` either 0 (no zeta
    factor) or an odd integer >= 3; values are nonzero Fractions.  Addition
    is unrestricted; multiplication is allowed unless both factors carry a
    zeta monomial (that product leaves the basis and raises DomainError).
    """

    __slots__ = ("_terms",)

    def __init__(self, terms: dict | None = None):
        clean: dict[tuple[int, int], Fraction] = {}
        for (a, m), q in (terms or {}).items():
            if a < 0:
                raise DomainError("SymScalar: pi power must be >= 0")
            if m != 0 and (m < 3 or m % 2 == 0):
                raise DomainError("SymScalar: zeta argument must be 0 or odd >= 3")
            q = Fraction(q)
            if q != 0:
                clean[(a, m)] = clean.get((a, m), Fraction(0)) + q
                if clean[(a, m)] == 0:
                    del clean[(a, m)]
        self._terms = clean

    # -- constructors -------------------------------------------------------
    @classmethod
    def rational(cls, q) -> "SymScalar":
        return cls({(0, 0): Fraction(q)})

    @classmethod
    def pi_term(cls, q, pi_power: int, zeta_arg: int = 0) -> "SymScalar":
        return cls({(pi_power, zeta_arg): Fraction(q)})

    zero_value = None  # set after class body

    # -- views --------------------------------------------------------------
    @property
    def terms(self) -> tuple[tuple[int, int, Fraction], ...]:
        """Sorted ``(pi_power, zeta_arg, coefficient)`` triples."""
        return tuple((a, m, q) for (a, m), q in sorted(self._terms.items()))

    def is_zero(self) -> bool:
        return not self._terms

    def is_rational(self) -> bool:
        return all(key == (0, 0) for key in self._terms)

    def rational_value(self) -> Fraction:
        if not self.is_rational():
            raise DomainError("SymScalar is not a pure rational")
        return self._terms.get((0, 0), Fraction(0))

    # -- arithmetic ----------------------------------------------------------
    def _coerce(self, other) -> "SymScalar":
        if isinstance(other, SymScalar):
            return other
        if isinstance(other, (int, Fraction)):
            return SymScalar.rational(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        terms = dict(self._terms)
        for key, q in other._terms.items():
            terms[key] = terms.get(key, Fraction(0)) + q
        return SymScalar(terms)

    __radd__ = __add__

    def __neg__(self):
        return SymScalar({key: -q for key, q in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        terms: dict[tuple[int, int], Fraction] = {}
        for (a1, m1), q1 in self._terms.items():
            for (a2, m2), q2 in other._terms.items():
                if m1 != 0 and m2 != 0:
                    raise DomainError(
                        "SymScalar: product of two zeta(odd) monomials leaves the basis"
                    )
                key = (a1 + a2, m1 or m2)
                terms[key] = terms.get(key, Fraction(0)) + q1 * q2
        return SymScalar(terms)

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    # -- evaluation / rendering ----------------------------------------------
    def numeric(self) -> float:
        total = 0.0
        for (a, m), q in self._terms.items():
            v = float(q) * math.pi ** a
            if m:
                v *= zeta_odd_numeric(m)
            total += v
        return total

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for (a, m), q in sorted(self._terms.items()):
            factors = []
            if q != 1 or (a == 0 and m == 0):
                factors.append(f"({q})" if q.denominator != 1 or q < 0 else f"{q}")
            if a == 1:
                factors.append("pi")
            elif a > 1:
                factors.append(f"pi^{a}")
            if m:
                factors.append(f"zeta({m})")
            parts.append("*".join(factors))
        return " + ".join(parts)

    def __repr__(self) -> str:
        return f"SymScalar({self._terms!r})"


SymScalar.zero_value = SymScalar()
