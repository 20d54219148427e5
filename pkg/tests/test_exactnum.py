"""Exact scalars, Bernoulli numbers and the numeric zeta/gamma kernels."""
import cmath
import math
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from modzeta.errors import DomainError, SingularityError
from modzeta.exactnum import (
    SymScalar,
    alternating_zeta,
    bernoulli,
    divisor_sigma,
    gamma_numeric,
    sigma_range,
    zeta_even_exact,
    zeta_negative_exact,
    zeta_numeric,
    zeta_odd_numeric,
)


# ---------------------------------------------------------------- bernoulli
def test_bernoulli_base_and_recurrence_values():
    assert bernoulli(0) == 1
    assert bernoulli(1) == Fraction(-1, 2)
    assert bernoulli(3) == 0
    # oracle: the binomial recurrence, evaluated independently here
    def recurrence(n):
        b = [Fraction(1)]
        for m in range(1, n + 1):
            s = sum(Fraction(math.comb(m + 1, k)) * b[k] for k in range(m))
            b.append(-s / (m + 1))
        return b[n]

    assert bernoulli(4) == recurrence(4) == Fraction(-1, 30)
    assert bernoulli(6) == Fraction(1, 42)
    assert bernoulli(12) == Fraction(-691, 2730)
    for n in range(0, 20):
        assert bernoulli(n) == recurrence(n)


def test_bernoulli_rejects_negative():
    with pytest.raises(DomainError):
        bernoulli(-1)


# ------------------------------------------------------------- exact zetas
def test_zeta_even_exact_small_values():
    assert zeta_even_exact(2).terms == ((2, 0, Fraction(1, 6)),)
    assert zeta_even_exact(4).terms == ((4, 0, Fraction(1, 90)),)
    assert zeta_even_exact(6).terms == ((6, 0, Fraction(1, 945)),)
    with pytest.raises(DomainError):
        zeta_even_exact(3)
    with pytest.raises(DomainError):
        zeta_even_exact(0)


def test_zeta_negative_exact_values():
    # -B_4/4 with B_4 = -1/30
    assert zeta_negative_exact(-3) == Fraction(1, 120)
    assert zeta_negative_exact(0) == Fraction(-1, 2)
    # -B_6/6 with B_6 = 1/42
    assert zeta_negative_exact(-5) == Fraction(-1, 252)
    assert zeta_negative_exact(-1) == Fraction(-1, 12)
    for bad in (-2, -4, 1, 3):
        with pytest.raises(DomainError):
            zeta_negative_exact(bad)


# ------------------------------------------------------------ numeric zeta
def test_zeta_numeric_matches_exact_evens_up_to_40():
    for k in range(2, 42, 2):
        exact = zeta_even_exact(k).numeric()
        got = zeta_numeric(k)
        assert abs(got - exact) <= 1e-12 * abs(exact)
        assert abs(got.imag) < 1e-13 * abs(exact)


def test_zeta_numeric_matches_exact_negatives():
    for n in (-3, -5, -7, -9, 0):
        exact = float(zeta_negative_exact(n))
        assert abs(zeta_numeric(n) - exact) <= 1e-13 * max(1.0, abs(exact))


def test_zeta3_against_alternating_series_oracle():
    # independent oracle: eta(3)/(1 - 2^{-2}) via the accelerated
    # alternating series (zeta_numeric itself is Euler-Maclaurin)
    oracle = alternating_zeta(3.0) / (1.0 - 2.0 ** -2)
    assert abs(zeta_numeric(3).real - oracle) < 1e-12
    assert abs(zeta_odd_numeric(3) - oracle) < 1e-15


def test_zeta_pole_raises():
    with pytest.raises(SingularityError):
        zeta_numeric(1.0)


def test_zeta_functional_equation_in_critical_strip():
    rng = random.Random(20240817)
    for _ in range(25):
        s = complex(rng.uniform(0.05, 0.95), rng.uniform(-30, 30))
        lhs = zeta_numeric(s)
        rhs = (
            2.0 ** s
            * cmath.pi ** (s - 1)
            * cmath.sin(cmath.pi * s / 2)
            * gamma_numeric(1 - s)
            * zeta_numeric(1 - s)
        )
        assert abs(lhs - rhs) < 1e-10 * max(1.0, abs(lhs))


def test_zeta_numeric_far_field_of_strip():
    # spot checks at the corners of the documented strip
    for s in (30.0, -10 + 0.3j, 2 + 50j, 0.5 - 50j):
        val = zeta_numeric(s)
        assert math.isfinite(abs(val))
    # direct Dirichlet sum oracle at large Re s
    direct = sum(n ** -12.5 for n in range(1, 200))
    assert abs(zeta_numeric(12.5).real - direct) < 1e-13


# ----------------------------------------------------------- numeric gamma
def test_gamma_basic_values():
    assert abs(gamma_numeric(5) - 24.0) < 24 * 1e-13
    # reflection oracle for Gamma(1/2): Gamma(1/2)^2 = pi / sin(pi/2)
    g_half = gamma_numeric(0.5)
    assert abs(g_half * g_half - math.pi) < 1e-12
    with pytest.raises(SingularityError):
        gamma_numeric(0)
    with pytest.raises(SingularityError):
        gamma_numeric(-3.0)


def test_gamma_recurrence_and_reflection_random_points():
    rng = random.Random(99173)
    for _ in range(100):
        s = complex(rng.uniform(-8, 8), rng.uniform(-20, 20))
        if abs(s.imag) < 0.1:
            s += 0.5j
        g = gamma_numeric(s)
        assert abs(gamma_numeric(s + 1) - s * g) < 1e-11 * abs(s * g)
        refl = gamma_numeric(s) * gamma_numeric(1 - s) * cmath.sin(cmath.pi * s)
        assert abs(refl - cmath.pi) < 1e-11 * max(1.0, abs(refl))


# ------------------------------------------------------------ divisor sums
def test_divisor_sigma_values():
    assert divisor_sigma(3, 6) == 252  # 1 + 8 + 27 + 216
    assert divisor_sigma(0, 12) == 6
    assert divisor_sigma(1, 97) == 98
    assert divisor_sigma(5, 1) == 1
    with pytest.raises(DomainError):
        divisor_sigma(3, 0)


def test_sigma_range_matches_pointwise():
    r = sigma_range(3, 200)
    for n in (1, 2, 17, 36, 128, 200):
        assert r[n] == divisor_sigma(3, n)


@settings(max_examples=60, deadline=None)
@given(
    st.integers(min_value=1, max_value=9999),
    st.integers(min_value=1, max_value=9999),
    st.integers(min_value=0, max_value=4),
)
def test_sigma_multiplicative_on_coprime_pairs(m, n, k):
    if math.gcd(m, n) != 1:
        return
    assert divisor_sigma(k, m * n) == divisor_sigma(k, m) * divisor_sigma(k, n)


# --------------------------------------------------------------- SymScalar
def test_symscalar_algebra_and_trimming():
    a = SymScalar.pi_term(Fraction(1, 6), 2)            # zeta(2)
    b = SymScalar.pi_term(2, 1, 3)                      # 2 pi zeta(3)
    c = a + b - a
    assert c == b
    assert (a - a).is_zero()
    assert (a * 3).terms == ((2, 0, Fraction(1, 2)),)
    prod = a * a
    assert prod.terms == ((4, 0, Fraction(1, 36)),)


def test_symscalar_rejects_zeta_zeta_product():
    z3 = SymScalar.pi_term(1, 0, 3)
    with pytest.raises(DomainError):
        z3 * z3


def test_symscalar_numeric_and_str():
    val = SymScalar.pi_term(Fraction(7, 90), 4) - SymScalar.pi_term(2, 1, 3)
    expect = 7 * math.pi ** 4 / 90 - 2 * math.pi * zeta_odd_numeric(3)
    assert abs(val.numeric() - expect) < 1e-14 * abs(expect)
    assert "pi^4" in str(val) and "zeta(3)" in str(val)
    assert str(SymScalar()) == "0"


def test_symscalar_rational_roundtrip():
    q = SymScalar.rational(Fraction(-5, 7))
    assert q.is_rational() and q.rational_value() == Fraction(-5, 7)
    assert not zeta_even_exact(2).is_rational()
