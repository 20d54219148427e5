"""Paired Dirichlet series with a functional equation: the generic layer.

A datum packages two series phi(s) = sum a_m lambda_m^{-s} and
psi(s) = sum b_n mu_n^{-s} whose joint continuation chi(s) = Gamma(s) phi(s)
= Gamma(delta - s) psi(delta - s) has finitely many simple poles.  From it
follow, and are implemented here:

* the kernel-level modular relation
  Phi(beta) - beta^{-delta} Psi(1/beta) = B(beta), with the residual
  function B(beta) = sum over poles of beta^{-s'} Res chi(s');
* the massive representation Gamma(s) phi(s, w) = R(s, w) +
  2 sum b_n (mu_n/w^2)^{(s-delta)/2} K_{s-delta}(2 w sqrt(mu_n)), where
  phi(s, w) = sum a_m (lambda_m + w^2)^{-s} and R collects the
  Gamma-shifted residues;
* numeric extraction of the residue of phi at s = delta (the kernel
  route, independent of the closed form it is tested against).

Built-in data: the weight-2t divisor datum (a_n = sigma_{2t-1}(n),
lambda = 2 pi n, delta = 2t), diagonal lattice data (r_p counts), the
Jacobi theta datum, a plain sigma datum for direct-sum identities, and
custom finite tables loadable from JSON.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction

from scipy.special import gammaincc

from .errors import (
    ConvergenceError,
    DiagnosticsError,
    DomainError,
    SingularityError,
)
from .epstein import bessel_k, rp_counts
from .exactnum import gamma_numeric, sigma_range, zeta_negative_exact
from .qseries import SeriesValue, _quad

__all__ = [
    "DirichletDatum",
    "HeatKernelPair",
    "eisenstein_datum",
    "diagonal_epstein_datum",
    "theta_datum",
    "sigma_datum",
    "custom_datum",
    "datum_from_json",
    "phi_direct",
    "residual_B",
    "heat_kernels",
    "modular_relation_gap",
    "berndt_phi",
    "berndt_R",
    "pole_residue",
    "PoleResidueResult",
    "koshliakov_residue_closed_form",
]


@dataclass(frozen=True)
class DirichletDatum:
    """Coefficients, exponent sequences and analytic data of a pair.

    ``residues`` lists the simple poles of chi(s) = Gamma(s) phi(s) as
    (location, residue).  ``a_bound = (C, p)`` certifies |a_m| <= C m^p,
    and ``lam_low = (c, q)`` certifies lambda_m >= c m^q (same for the b
    side); these drive every truncation.  ``zero_modes`` are the
    Koshliakov numbers (a_0, b_0) = (-phi(0), -psi(0)), and ``kosh`` the
    (a, b) constants of the classical transformation-formula normalization
    when the datum has one.
    """

    name: str
    a: object
    b: object
    lam: object
    mu: object
    delta: float
    residues: tuple = ()
    zero_modes: tuple = (0.0, 0.0)
    sigma0: float = 2.0
    a_bound: tuple = (1.0, 0.0)
    b_bound: tuple = (1.0, 0.0)
    lam_low: tuple = (1.0, 1.0)
    mu_low: tuple = (1.0, 1.0)
    kosh: tuple | None = None
    supports_modular: bool = True
    finite_n: int | None = None  # coefficients vanish beyond this index

    def swapped(self) -> "DirichletDatum":
        """Exchange the roles of the two series (delta-reflecting the
        residues: chi'(s) = chi(delta - s) flips their signs)."""
        return DirichletDatum(
            name=self.name + "~",
            a=self.b,
            b=self.a,
            lam=self.mu,
            mu=self.lam,
            delta=self.delta,
            residues=tuple((self.delta - s0, -r) for (s0, r) in self.residues),
            zero_modes=(self.zero_modes[1], self.zero_modes[0]),
            sigma0=self.sigma0,
            a_bound=self.b_bound,
            b_bound=self.a_bound,
            lam_low=self.mu_low,
            mu_low=self.lam_low,
            kosh=None,
            supports_modular=self.supports_modular,
            finite_n=self.finite_n,
        )


# ---------------------------------------------------------------------------
# factories
# ---------------------------------------------------------------------------

_SIGMA_CACHE: dict[int, list[int]] = {}


def _sigma(k):
    # sequential access pattern: serve from a doubling divisor sieve
    def coef(n: int) -> float:
        cache = _SIGMA_CACHE.get(k)
        if cache is None or n >= len(cache):
            size = max(2 * n + 16, 8192)
            _SIGMA_CACHE[k] = sigma_range(k, size)
            cache = _SIGMA_CACHE[k]
        return float(cache[n])

    return coef


def eisenstein_datum(t: int) -> DirichletDatum:
    """Weight-2t divisor datum in the strict functional-equation
    normalization: a_n = sigma_{2t-1}(n), lambda_n = mu_n = 2 pi n,
    b_n = (-1)^t sigma_{2t-1}(n), delta = 2t.

    chi(s) = Gamma(s) (2 pi)^{-s} zeta(s) zeta(s - 2t + 1) has simple
    poles at 0 (residue phi(0) = zeta(0) zeta(1-2t)) and 2t (residue
    -(-1)^t phi(0), equal to Gamma(2t) (2 pi)^{-2t} zeta(2t)).
    """
    if t < 2:
        raise DomainError("eisenstein_datum requires t >= 2")
    sign = float((-1) ** t)
    phi0 = float(Fraction(-1, 2) * zeta_negative_exact(1 - 2 * t))
    k = 2 * t - 1
    zk = 1.21  # sigma_{2t-1}(n) <= zeta(2t-1) n^{2t-1} <= 1.21 n^{2t-1}
    sig = _sigma(k)
    return DirichletDatum(
        name=f"eisenstein_{t}",
        a=sig,
        b=lambda n: sign * sig(n),
        lam=lambda n: 2.0 * math.pi * n,
        mu=lambda n: 2.0 * math.pi * n,
        delta=float(2 * t),
        residues=((0.0, phi0), (float(2 * t), -sign * phi0)),
        zero_modes=(-phi0, sign * phi0 * -1.0),
        sigma0=float(2 * t) + 0.1,
        a_bound=(zk, float(k)),
        b_bound=(zk, float(k)),
        lam_low=(2.0 * math.pi, 1.0),
        mu_low=(2.0 * math.pi, 1.0),
        kosh=(sign, 2.0 * math.pi),
    )


def theta_datum() -> DirichletDatum:
    """Jacobi theta datum: a_m = b_m = 2, lambda_m = pi m^2, delta = 1/2."""
    return DirichletDatum(
        name="theta",
        a=lambda m: 2.0,
        b=lambda m: 2.0,
        lam=lambda m: math.pi * m * m,
        mu=lambda m: math.pi * m * m,
        delta=0.5,
        residues=((0.0, -1.0), (0.5, 1.0)),
        zero_modes=(1.0, 1.0),
        sigma0=0.6,
        a_bound=(2.0, 0.0),
        b_bound=(2.0, 0.0),
        lam_low=(math.pi, 2.0),
        mu_low=(math.pi, 2.0),
        kosh=None,
    )


def sigma_datum(k: int) -> DirichletDatum:
    """Plain divisor-sum datum a_n = sigma_k(n), lambda_n = n; carries no
    functional equation (direct sums and the zeta(s) zeta(s-k) identity
    only)."""
    zk = 1.21 if k >= 2 else 2.0
    return DirichletDatum(
        name=f"sigma_{k}",
        a=_sigma(k),
        b=_sigma(k),
        lam=float,
        mu=float,
        delta=float(k + 1),
        residues=(),
        sigma0=k + 1.1,
        a_bound=(zk, k + (0.5 if k < 2 else 0.0)),
        b_bound=(zk, k + (0.5 if k < 2 else 0.0)),
        lam_low=(1.0, 1.0),
        mu_low=(1.0, 1.0),
        supports_modular=False,
    )


_RP_CACHE: dict[int, list] = {}


def _rp(p: int, n: int) -> float:
    cache = _RP_CACHE.get(p)
    if cache is None or n >= len(cache):
        size = max(2 * n + 16, 4096)
        _RP_CACHE[p] = list(rp_counts(p, size))
        cache = _RP_CACHE[p]
    return float(cache[n])


def diagonal_epstein_datum(p: int) -> DirichletDatum:
    """Diagonal lattice datum: a_n = r_p(n), lambda_n = n,
    b_n = pi^{p/2} r_p(n), mu_n = pi^2 n, delta = p/2."""
    if p < 1 or p > 4:
        raise DomainError("diagonal_epstein_datum supports 1 <= p <= 4")
    pref = math.pi ** (p / 2.0)
    return DirichletDatum(
        name=f"diagonal_epstein_{p}",
        a=lambda n: _rp(p, n),
        b=lambda n: pref * _rp(p, n),
        lam=float,
        mu=lambda n: math.pi * math.pi * n,
        delta=p / 2.0,
        residues=((0.0, -1.0), (p / 2.0, pref)),
        zero_modes=(1.0, pref),
        sigma0=p / 2.0 + 0.6,
        a_bound=(3.0 ** p, p / 2.0),
        b_bound=(pref * 3.0 ** p, p / 2.0),
        lam_low=(1.0, 1.0),
        mu_low=(math.pi * math.pi, 1.0),
        kosh=None,
    )


def custom_datum(
    a_table,
    b_table,
    lam_table,
    mu_table,
    delta: float,
    residues=(),
    zero_modes=(0.0, 0.0),
    name: str = "custom",
) -> DirichletDatum:
    """Finite coefficient tables (1-indexed lists); tails vanish exactly."""
    a_list = list(a_table)
    b_list = list(b_table)

    def pick(table):
        def f(n: int) -> float:
            return float(table[n - 1]) if n <= len(table) else 0.0

        return f

    def pick_seq(table, fallback_slope):
        def f(n: int) -> float:
            if n <= len(table):
                return float(table[n - 1])
            return float(table[-1]) + fallback_slope * (n - len(table))

        return f

    lam_list = list(lam_table)
    mu_list = list(mu_table)
    return DirichletDatum(
        name=name,
        a=pick(a_list),
        b=pick(b_list),
        lam=pick_seq(lam_list, 1.0),
        mu=pick_seq(mu_list, 1.0),
        delta=delta,
        residues=tuple(tuple(r) for r in residues),
        zero_modes=tuple(zero_modes),
        sigma0=1.0,
        a_bound=(max([abs(x) for x in a_list] + [1.0]), 0.0),
        b_bound=(max([abs(x) for x in b_list] + [1.0]), 0.0),
        lam_low=(min(lam_list[0], 1.0), 0.0),
        mu_low=(min(mu_list[0], 1.0), 0.0),
        supports_modular=bool(residues),
        finite_n=max(len(a_list), len(b_list)),
    )


def datum_from_json(doc) -> DirichletDatum:
    """Load a datum from the JSON spec {kind, params...}."""
    if isinstance(doc, str):
        doc = json.loads(doc)
    kind = doc.get("kind")
    params = doc.get("params", {})
    if kind == "eisenstein":
        return eisenstein_datum(int(params["t"]))
    if kind == "diagonal_epstein":
        return diagonal_epstein_datum(int(params["p"]))
    if kind == "theta":
        return theta_datum()
    if kind == "custom":
        return custom_datum(
            params["a"],
            params["b"],
            params["lam"],
            params["mu"],
            float(params["delta"]),
            residues=params.get("residues", ()),
            zero_modes=tuple(params.get("zero_modes", (0.0, 0.0))),
            name=params.get("name", "custom"),
        )
    raise DomainError(f"unknown datum kind {kind!r}")


# ---------------------------------------------------------------------------
# direct series and kernels
# ---------------------------------------------------------------------------

def phi_direct(d: DirichletDatum, s: complex, tol: float = 1e-11, max_terms: int = 600_000) -> SeriesValue:
    """Truncated sum a_m lambda_m^{-s} with a certified power tail."""
    s = complex(s)
    c_a, p_a = d.a_bound
    c_l, q_l = d.lam_low
    decay = s.real * q_l - p_a
    if d.finite_n is None and decay <= 1.0:
        raise DomainError("phi_direct: Re s below the certified convergence range")
    acc = 0j
    m = 0
    while m < max_terms:
        m += 1
        acc += d.a(m) * complex(d.lam(m)) ** (-s)
        if d.finite_n is not None and m >= d.finite_n:
            return SeriesValue(acc, m, 0.0)
        m1 = m + 1
        tail = c_a * c_l ** (-s.real) * (
            m1 ** -decay + m1 ** (1 - decay) / (decay - 1)
        )
        if tail <= tol:
            return SeriesValue(acc, m, tail)
    raise ConvergenceError(f"phi_direct needs more than {max_terms} terms")


def _kernel_sum(coef, seq, low, bound, beta: float, tol: float, max_terms: int = 200_000, finite_n=None) -> SeriesValue:
    c_b, p_b = bound
    c_l, q_l = low
    acc = 0.0
    m = 0
    while m < max_terms:
        m += 1
        acc += coef(m) * math.exp(-seq(m) * beta)
        if finite_n is not None and m >= finite_n:
            return SeriesValue(acc, m, 0.0)
        m1 = m + 1
        term_bound = c_b * m1 ** p_b * math.exp(-c_l * m1 ** q_l * beta)
        ratio = ((m1 + 1) / m1) ** p_b * math.exp(
            -c_l * beta * ((m1 + 1) ** q_l - m1 ** q_l)
        )
        if ratio < 1 and term_bound / (1 - ratio) <= tol:
            return SeriesValue(acc, m, term_bound / (1 - ratio))
    raise ConvergenceError("heat kernel did not certify its tolerance")


@dataclass(frozen=True)
class HeatKernelPair:
    """Evaluators for the two exponential kernels, zero modes included."""

    datum: DirichletDatum

    def phi(self, beta: float, tol: float = 1e-15) -> float:
        return self.datum.zero_modes[0] + self.phi_series(beta, tol).value.real

    def psi(self, beta: float, tol: float = 1e-15) -> float:
        return self.datum.zero_modes[1] + self.psi_series(beta, tol).value.real

    def phi_series(self, beta: float, tol: float = 1e-15) -> SeriesValue:
        d = self.datum
        return _kernel_sum(d.a, d.lam, d.lam_low, d.a_bound, beta, tol, finite_n=d.finite_n)

    def psi_series(self, beta: float, tol: float = 1e-15) -> SeriesValue:
        d = self.datum
        return _kernel_sum(d.b, d.mu, d.mu_low, d.b_bound, beta, tol, finite_n=d.finite_n)


def heat_kernels(d: DirichletDatum) -> HeatKernelPair:
    return HeatKernelPair(d)


def residual_B(d: DirichletDatum, beta: float) -> complex:
    """B(beta) = sum over the pole list of beta^{-s'} Res chi(s')."""
    if beta <= 0:
        raise DomainError("residual_B requires beta > 0")
    return sum((r * beta ** (-complex(s0)) for (s0, r) in d.residues), 0j)


def modular_relation_gap(d: DirichletDatum, beta: float, tol: float = 1e-14) -> float:
    """|Phi(beta) - beta^{-delta} Psi(1/beta) - B(beta)| with the bare
    exponential kernels (zero modes enter through the pole list)."""
    if not d.supports_modular:
        raise DomainError(f"datum {d.name} carries no functional equation")
    hk = heat_kernels(d)
    phi_v = hk.phi_series(beta, tol).value.real
    psi_v = hk.psi_series(1.0 / beta, tol).value.real
    gap = phi_v - beta ** (-d.delta) * psi_v - complex(residual_B(d, beta)).real
    return abs(gap)


# ---------------------------------------------------------------------------
# Berndt's massive representation
# ---------------------------------------------------------------------------

def berndt_R(d: DirichletDatum, s: float, w: float) -> float:
    """R(s, w) = sum Gamma(s - s') w^{2s' - 2s} Res chi(s')."""
    total = 0.0
    for (s0, r) in d.residues:
        total += float(gamma_numeric(s - s0).real) * w ** (2 * s0 - 2 * s) * r
    return total


def berndt_phi(d: DirichletDatum, s: float, w: float, tol: float = 1e-12) -> SeriesValue:
    """phi(s, w) = sum a_m (lambda_m + w^2)^{-s} via the Bessel form.

    Real s only (the K-Bessel kernel is evaluated at real order); the
    representation continues phi(s, w) beyond the convergence abscissa.
    The truncation uses the incomplete-gamma integral comparison of the
    Bessel bound, certified by the datum's coefficient/sequence bounds.
    """
    if not d.supports_modular:
        raise DomainError(f"datum {d.name} carries no functional equation")
    if w <= 0:
        raise DomainError("berndt_phi requires w > 0")
    nu = s - d.delta
    for (s0, _) in d.residues:
        if abs((s - s0) - round(s - s0)) < 1e-9 and round(s - s0) <= 0:
            raise SingularityError(f"berndt_phi: Gamma(s - s') pole at s = {s}, s' = {s0}")
    c_b, p_b = d.b_bound
    c_lo, q = d.mu_low
    c_hi = c_lo  # built-in sequences are exact power laws
    kappa = 2.0 * w * math.sqrt(c_lo)
    pe = p_b + abs(nu) * q / 2.0
    acc = 0.0
    n = 0
    tail = math.inf
    gam_s = float(gamma_numeric(s).real)
    while n < 100_000:
        n += 1
        mu = d.mu(n)
        acc += 2.0 * d.b(n) * (mu / (w * w)) ** (nu / 2.0) * bessel_k(nu, 2 * w * math.sqrt(mu))
        if d.finite_n is not None and n >= d.finite_n:
            tail = 0.0
            break
        n1 = n + 1
        x1 = kappa * n1 ** (q / 2.0)
        head = 2.0 * c_b * (c_hi / (w * w)) ** (abs(nu) / 2.0) * math.sqrt(
            math.pi / (2 * x1)
        ) * math.exp(nu * nu / (2 * x1))
        first = head * n1 ** pe * math.exp(-x1)
        alpha = 2.0 * (pe + 1.0) / q
        rest = head * (2.0 / q) * kappa ** (-alpha) * float(
            gammaincc(alpha, x1)
        ) * float(gamma_numeric(alpha).real)
        tail = (first + rest) / abs(gam_s)
        if tail <= tol:
            break
    if tail > tol:
        raise ConvergenceError(f"berndt_phi tail {tail:.1e} > {tol:.1e}")
    val = (berndt_R(d, s, w) + acc) / gam_s
    return SeriesValue(val, n, tail)


# ---------------------------------------------------------------------------
# pole residue extraction
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PoleResidueResult:
    location: float
    residue: float          # Koshliakov normalization (series in n^{-s})
    residue_bochner: float  # normalization of the datum's lambda sequence
    closed_form: float | None
    spread: float


def koshliakov_residue_closed_form(d: DirichletDatum) -> float:
    """-psi(0) a b^nu / Gamma(nu) with (a, b) the classical constants."""
    if d.kosh is None:
        raise DomainError("datum carries no classical (a, b) normalization")
    a_k, b_k = d.kosh
    # the datum stores the Bochner-normalized zero mode b0 = -psi_B(0)
    # with psi_B(0) = a psi(0); bridge back to the classical psi(0)
    psi0 = -d.zero_modes[1] / a_k
    nu = d.delta
    return -psi0 * a_k * b_k ** nu / float(gamma_numeric(nu).real)


def pole_residue(d: DirichletDatum, hs=(0.1, 0.05, 0.025), stability_tol: float = 5e-4) -> PoleResidueResult:
    """Extract Res_{s=nu} phi(s), nu = delta, from the kernel integrals.

    Writes h phi_B(nu+h) = [A(h) + h I1(nu+h)] / Gamma(nu+h) with
    A(h) = G(1) - int_0^1 beta^h G'(beta) dbeta, G = beta^nu Phi(beta)
    (integration by parts removes the beta^{h-1} endpoint); the h -> 0 limit
    is evaluated directly and cross-checked against Richardson
    extrapolation of the h > 0 values.  Only the kernel sums enter, so the
    extraction is independent of both the residue list and the closed form.
    """
    if not d.supports_modular:
        raise DomainError(f"datum {d.name} carries no functional equation")
    nu = d.delta
    hk = heat_kernels(d)
    c_l, q_l = d.lam_low

    def phi_kernel(beta: float) -> float:
        return hk.phi_series(beta, 1e-16).value.real

    def g_at(beta: float) -> float:
        return beta ** nu * phi_kernel(beta)

    def g_prime(beta: float) -> float:
        # beta^{nu-1} sum a_m (nu - lambda_m beta) e^{-lambda_m beta},
        # summed with fsum: the terms cancel massively at small beta
        terms = []
        m = 0
        while True:
            m += 1
            lam = d.lam(m)
            e = math.exp(-lam * beta)
            terms.append(d.a(m) * (nu - lam * beta) * e)
            if d.finite_n is not None and m >= d.finite_n:
                break
            if m > 4 and d.a_bound[0] * (m + 1) ** (d.a_bound[1] + q_l) * (
                1 + nu + c_l * (m + 1) ** q_l * beta
            ) * math.exp(-c_l * (m + 1) ** q_l * beta) < 1e-18:
                break
            if m > 150_000:
                raise ConvergenceError("g_prime kernel did not converge")
        return beta ** (nu - 1) * math.fsum(terms)

    big_x = 1.0 + 52.0 / d.lam(1)

    def i1(s: float) -> float:
        val, _ = _quad(lambda beta: beta ** (s - 1) * phi_kernel(beta), 1.0, big_x)
        return val

    g1 = g_at(1.0)

    def r_of_h(h: float) -> float:
        a_int, _ = _quad(lambda beta: beta ** h * g_prime(beta), 0.0, 1.0, epsabs=1e-12)
        a_h = g1 - a_int
        return (a_h + h * i1(nu + h)) / float(gamma_numeric(nu + h).real)

    r0 = r_of_h(0.0)
    vals = [r_of_h(h) for h in hs]
    # two Richardson steps assuming halving steps
    r01 = vals[1] + (vals[1] - vals[0])
    r12 = vals[2] + (vals[2] - vals[1])
    extr = r12 + (r12 - r01) / 3.0
    spread = abs(extr - r0)
    scale = max(abs(r0), abs(g1) / float(gamma_numeric(nu).real), 1e-12)
    if spread > stability_tol * scale:
        raise DiagnosticsError(
            f"pole_residue extrapolation unstable: direct {r0:.6e}, extrapolated {extr:.6e}"
        )
    if d.kosh is not None:
        b_k = d.kosh[1]
        res_kosh = b_k ** nu * r0
        closed = koshliakov_residue_closed_form(d)
    else:
        res_kosh = r0
        closed = None
    return PoleResidueResult(nu, res_kosh, r0, closed, spread)
