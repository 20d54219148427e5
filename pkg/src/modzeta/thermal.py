"""Thermal layer: partial free energies, entropy, and the 3-sphere free
energy computed by two independent routes.

Scaled-temperature conventions: xi = 1/b, beta = 2 pi / xi, and the two
Boltzmann variables q = exp(-pi/xi) (low-temperature series) and
q' = exp(-pi xi) (high-temperature series).  The partial free energy is

    f_t(xi) = -B_{2t}/(4t) - (xi/2pi) sum_m sigma_{2t-1}(m) q^{2m} / m,

pinned by the thermodynamic identity eps_t = f_t - xi df_t/dxi (the
internal energy is the weight-2t q-series) and by the mode-sum route
below; the scaled entropy is its xi-derivative.

For the 3-sphere (t = 2) the free energy is also computed from the
lattice zeta function through

    F3(xi) = -(xi^4 / 16 pi^4) d/dxi [ xi Z_2(4, A^{-1}) ],

with the xi-derivative applied termwise to the high-temperature (q')
series of Z_2 -- a genuinely different series from the q-route

    F3(xi) = 1/240 - (xi/2pi) sum_n sigma_3(n) n^{-1} q^{2n},

so their agreement tests the inversion identity at free-energy level.
The generic mode-sum form (1/2) zeta_M(-1/2) + (1/beta) sum d_n
log(1 - e^{-n beta}) and its thermal-zeta derivation (where only the
half-integer Bessel survives the s -> 0 limit) close the loop.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .epstein import bessel_k
from .errors import DomainError
from .exactnum import sigma_range, zeta_negative_exact, zeta_odd_numeric
from .qseries import (
    SeriesValue,
    casimir_constant,
    eps,
)

__all__ = [
    "ThermalPoint",
    "SpectrumSpec",
    "S3_SPEC",
    "SINGLE_MODE",
    "free_energy_partial",
    "entropy_partial",
    "entropy_partial_direct",
    "f3_epstein",
    "f3_modesum",
    "mode_sum_free_energy",
    "thermal_zeta_free_energy",
]


@dataclass(frozen=True)
class ThermalPoint:
    """Scaled temperature xi > 0; beta = 2 pi / xi."""

    xi: float

    def __post_init__(self):
        if self.xi <= 0:
            raise DomainError("ThermalPoint requires xi > 0")

    @property
    def beta_scaled(self) -> float:
        return 2.0 * math.pi / self.xi

    @property
    def q(self) -> float:
        return math.exp(-math.pi / self.xi)

    @property
    def q_prime(self) -> float:
        return math.exp(-math.pi * self.xi)


def _xi(pt) -> float:
    if isinstance(pt, ThermalPoint):
        return pt.xi
    xi = float(pt)
    if xi <= 0:
        raise DomainError("xi must be > 0")
    return xi


@dataclass(frozen=True)
class SpectrumSpec:
    """Frequencies omega_n = n with degeneracies d_n.

    Either polynomial (d_n = sum_k c_k n^k, degree <= 6) or a finite
    table {n: d_n}.  zeta_M(s) = sum d_n n^{-2s}; for polynomial
    degeneracies zeta_M(-1/2) = sum_k c_k zeta(-1-k) reduces to exact
    negative-zeta values (odd k terms vanish).
    """

    label: str
    degeneracy_coeffs: tuple = ()
    table: tuple = ()  # ((n, d_n), ...)

    def __post_init__(self):
        if bool(self.degeneracy_coeffs) == bool(self.table):
            raise DomainError("SpectrumSpec needs coefficients or a table, not both")
        if len(self.degeneracy_coeffs) > 7:
            raise DomainError("degeneracy polynomial degree must be <= 6")
        for n in range(1, 200):
            if self.degeneracy(n) < 0:
                raise DomainError("degeneracies must be nonnegative")

    def degeneracy(self, n: int) -> float:
        if self.table:
            return float(dict(self.table).get(n, 0.0))
        return float(sum(c * n ** k for k, c in enumerate(self.degeneracy_coeffs)))

    def max_mode(self) -> int | None:
        if self.table:
            return max(n for (n, _) in self.table)
        return None

    def zeta_m_minus_half(self) -> Fraction:
        """zeta_M(-1/2) = sum_n d_n n, exactly (zeta-regularized for
        polynomial degeneracies)."""
        if self.table:
            return sum((Fraction(d).limit_denominator(10 ** 12) * n for (n, d) in self.table), Fraction(0))
        total = Fraction(0)
        for k, c in enumerate(self.degeneracy_coeffs):
            arg = -1 - k
            if arg == 0 or arg % 2 != 0:
                zval = zeta_negative_exact(arg)
            else:
                zval = Fraction(0)  # trivial zeros at negative even integers
            total += Fraction(c) * zval
        return total

    @classmethod
    def from_json(cls, doc: dict) -> "SpectrumSpec":
        if doc.get("omega", "n") != "n":
            raise DomainError("only omega_n = n spectra are supported")
        if "degeneracy_coeffs" in doc:
            return cls(doc.get("label", "spectrum"), tuple(doc["degeneracy_coeffs"]))
        return cls(doc.get("label", "spectrum"), table=tuple((int(n), d) for n, d in doc["table"]))

    def to_json(self) -> dict:
        if self.table:
            return {"label": self.label, "omega": "n", "table": [list(x) for x in self.table]}
        return {
            "label": self.label,
            "omega": "n",
            "degeneracy_coeffs": list(self.degeneracy_coeffs),
        }


S3_SPEC = SpectrumSpec("s3-conformal-scalar", (0, 0, 1))
SINGLE_MODE = SpectrumSpec("single-mode", table=((1, 1.0),))


# ---------------------------------------------------------------------------
# divisor q-series helpers (cached sieves)
# ---------------------------------------------------------------------------

_SIG_CACHE: dict[int, list[int]] = {}


def _sig(k: int, n: int) -> int:
    cache = _SIG_CACHE.get(k)
    if cache is None or n >= len(cache):
        _SIG_CACHE[k] = sigma_range(k, max(2 * n + 16, 2048))
        cache = _SIG_CACHE[k]
    return cache[n]


def _divisor_series(k: int, weight: float, q2: float, tol: float = 1e-16) -> float:
    """sum_n sigma_k(n) n^{-weight} q2^n with a simple certified cutoff."""
    acc = 0.0
    n = 0
    qn = 1.0
    bound_pow = k - weight + 1.0
    while True:
        n += 1
        qn *= q2
        acc += _sig(k, n) * float(n) ** (-weight) * qn
        n1 = n + 1
        ratio = q2 * ((n1 + 1) / n1) ** max(bound_pow, 0.0)
        if ratio < 1.0:
            tail = 1.3 * n1 ** max(bound_pow, 0.0) * q2 ** n1 / (1 - ratio)
            if tail <= tol:
                return acc
        if n > 200_000:
            raise DomainError("divisor series failed to converge")


# ---------------------------------------------------------------------------
# partial free energy and entropy
# ---------------------------------------------------------------------------

def free_energy_partial(t: int, pt, tol: float = 1e-15) -> SeriesValue:
    """f_t(xi) = -B_{2t}/4t - (xi/2pi) sum sigma_{2t-1}(m) q^{2m} / m."""
    xi = _xi(pt)
    q2 = math.exp(-2.0 * math.pi / xi)
    series = _divisor_series(2 * t - 1, 1.0, q2, tol)
    val = float(casimir_constant(t)) - xi / (2 * math.pi) * series
    return SeriesValue(val, 0, tol)


def entropy_partial(t: int, pt, tol: float = 1e-15) -> SeriesValue:
    """s_t = df_t/dxi = -(1/2pi) G - (1/xi)(eps_t - eps_{t,0}) with
    G the resummed double series sum sigma_{2t-1}(m) q^{2m}/m."""
    xi = _xi(pt)
    q2 = math.exp(-2.0 * math.pi / xi)
    g = _divisor_series(2 * t - 1, 1.0, q2, tol)
    e = eps(t, 1.0 / xi, tol).value.real
    return SeriesValue(
        -g / (2 * math.pi) - (e - float(casimir_constant(t))) / xi, 0, tol
    )


def entropy_partial_direct(t: int, pt, n_max: int = 400) -> float:
    """Entropy by the raw double sum (test route):
    -(1/2pi) sum (n^{2t-2}/m) q^{2mn} - (1/xi) sum n^{2t-1} q^{2mn}."""
    xi = _xi(pt)
    q2 = math.exp(-2.0 * math.pi / xi)
    total = 0.0
    for m in range(1, n_max):
        for n in range(1, n_max):
            if m * n > n_max:
                break
            w = q2 ** (m * n)
            total += -(n ** (2 * t - 2) / m) * w / (2 * math.pi) - n ** (2 * t - 1) * w / xi
    return total


# ---------------------------------------------------------------------------
# the two F3 routes
# ---------------------------------------------------------------------------

def f3_modesum(pt, tol: float = 1e-15) -> SeriesValue:
    """F3 = 1/240 - (xi/2pi) sum sigma_3(n) n^{-1} q^{2n}  (q-route)."""
    xi = _xi(pt)
    q2 = math.exp(-2.0 * math.pi / xi)
    u = _divisor_series(3, 1.0, q2, tol)
    return SeriesValue(1.0 / 240.0 - xi / (2 * math.pi) * u, 0, tol)


def f3_epstein(pt, tol: float = 1e-15) -> SeriesValue:
    """F3 from the lattice zeta route, differentiating the
    high-temperature (q') series termwise:

        -xi^4/720 + xi zeta(3)/(8 pi^3) + xi chi(q')/(4 pi^3)
        + xi^2 T(q')/(2 pi^2) + xi^3 U(q')/(2 pi)

    with chi, T, U the sigma_3 series of weights 3, 2, 1 in q'."""
    xi = _xi(pt)
    q2p = math.exp(-2.0 * math.pi * xi)
    chi = _divisor_series(3, 3.0, q2p, tol)
    t_series = _divisor_series(3, 2.0, q2p, tol)
    u_series = _divisor_series(3, 1.0, q2p, tol)
    z3 = zeta_odd_numeric(3)
    val = (
        -(xi ** 4) / 720.0
        + xi * z3 / (8 * math.pi ** 3)
        + xi * chi / (4 * math.pi ** 3)
        + xi * xi * t_series / (2 * math.pi ** 2)
        + xi ** 3 * u_series / (2 * math.pi)
    )
    return SeriesValue(val, 0, tol)


# ---------------------------------------------------------------------------
# generic mode sums
# ---------------------------------------------------------------------------

def _mode_cutoff(spec: SpectrumSpec, beta: float, tol: float) -> int:
    fixed = spec.max_mode()
    if fixed is not None:
        return fixed
    # |d_n log(1 - e^{-n beta})| <= 2 d_n e^{-n beta} for n beta >= 0.7
    n = max(2, int(1.0 / beta) + 1)
    while True:
        n += 1
        d = spec.degeneracy(n + 1)
        bound = 2 * max(d, 1.0) * math.exp(-(n + 1) * beta) / max(1 - math.exp(-beta), 1e-300)
        if bound <= tol:
            return n
        if n > 1_000_000:
            raise DomainError("mode sum failed to converge")


def mode_sum_free_energy(spec: SpectrumSpec, beta: float, tol: float = 1e-14) -> SeriesValue:
    """F = (1/2) zeta_M(-1/2) + (1/beta) sum_n d_n log(1 - e^{-n beta})."""
    if beta <= 0:
        raise DomainError("mode_sum_free_energy requires beta > 0")
    n_max = _mode_cutoff(spec, beta, tol)
    acc = 0.0
    for n in range(1, n_max + 1):
        d = spec.degeneracy(n)
        if d:
            acc += d * math.log1p(-math.exp(-n * beta))
    casimir = 0.5 * float(spec.zeta_m_minus_half())
    return SeriesValue(casimir + acc / beta, n_max, tol)


def thermal_zeta_free_energy(spec: SpectrumSpec, beta: float, tol: float = 1e-12) -> SeriesValue:
    """The same free energy through the massive-sum route: per mode,
    the s -> 0 limit leaves the zeta-regularized Casimir term plus
    -(2/beta) sum_m sqrt(w_n/m) K_{1/2}(2 pi m w_n), w_n = beta n / 2 pi
    (only the half-integer Bessel survives the limit)."""
    if beta <= 0:
        raise DomainError("thermal_zeta_free_energy requires beta > 0")
    n_max = _mode_cutoff(spec, beta, tol)
    acc = 0.0
    for n in range(1, n_max + 1):
        d = spec.degeneracy(n)
        if not d:
            continue
        w = beta * n / (2 * math.pi)
        m = 0
        mode = 0.0
        while True:
            m += 1
            mode += math.sqrt(w / m) * bessel_k(0.5, 2 * math.pi * m * w)
            if math.exp(-(m + 1) * beta * n) / (m + 1) < tol * beta / (4 * max(d, 1.0)):
                break
        acc += d * mode
    casimir = 0.5 * float(spec.zeta_m_minus_half())
    return SeriesValue(casimir - 2.0 * acc / beta, n_max, tol)
