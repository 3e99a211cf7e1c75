"""De Sitter application: inflationary mode pairs with a power-law
environment.

Everything is expressed through the dimensionless time x = -k eta > 0
(conformal time eta < 0, wavenumber scaled to k = 1): x >> 1 is deep
inside the Hubble radius, x = 1 is Hubble crossing, x -> 0 the
super-Hubble limit.  The environment couples when the mode wavelength
exceeds the environment correlation length, i.e. for x < 1/(ell_E H), and
its strength follows a power law a^(p-3) of the scale factor.

Three routes to the dressed covariance are provided and cross-checked by
the test suite: transport integration, Green's-function quadrature (via
`opensys.green_covariance`), and the closed form in terms of incomplete
gamma functions, together with its super-Hubble asymptotics.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np
from scipy.special import gamma as _gamma_fn
from scipy.special import logsumexp

from .closed import CovarianceTrajectory, ModeFrequency, ModeState
from .closed import BogoliubovPair
from .discord import DiscordResult, Regime, _discord_from_logs
from .errors import DomainError, SingularExponentError
from .opensys import EnvironmentKernel, evolve_open, piecewise_oscillatory_quad
from .specfun import oscillatory_moment, oscillatory_moment_limits
from .symplectic import CovarianceBlock

__all__ = [
    "CosmoParams",
    "AsymptoticCoefficients",
    "PowerSpectrumCorrection",
    "PsRegime",
    "omega_sq_de_sitter",
    "de_sitter_frequency",
    "de_sitter_mode",
    "de_sitter_bogoliubov",
    "de_sitter_covariance_closed",
    "de_sitter_squeezing",
    "cosmo_kernel",
    "exact_open_covariance",
    "asymptotic_coefficients",
    "approx_open_covariance",
    "sigma0_sq_approx",
    "power_spectrum_correction",
    "decoherence_threshold",
    "discord_cosmo",
    "evolve_open_de_sitter",
    "evolve_closed_de_sitter",
]

_SINGULAR_P = (2.0, 4.0, 5.0, 8.0)
_P_TOL = 1e-6


@dataclass(frozen=True)
class CosmoParams:
    """Dimensionless parameters of the environment-coupled de Sitter run.

    k_over_kstar     observed scale in units of the pivot scale
    kGamma_over_kstar coupling strength (wavenumber units of the pivot)
    p                power-law growth index of the coupling
    ellH             environment correlation length in Hubble units, in (0, 1)
    x_star           -k eta at the reference time (1 when k crosses the
                     Hubble radius at the reference time)
    """

    kGamma_over_kstar: float
    p: float
    ellH: float
    k_over_kstar: float = 1.0
    x_star: float = 1.0

    def __post_init__(self):
        if not 0.0 < self.ellH < 1.0:
            raise DomainError(
                f"ellH must be in (0, 1) (sub-Hubble environment), got {self.ellH}"
            )
        if self.kGamma_over_kstar < 0.0:
            raise DomainError("coupling kGamma_over_kstar must be >= 0")
        if self.k_over_kstar <= 0.0 or self.x_star <= 0.0:
            raise DomainError("k_over_kstar and x_star must be positive")

    @property
    def kGamma_over_k(self) -> float:
        return self.kGamma_over_kstar / self.k_over_kstar

    @property
    def x_coupling_on(self) -> float:
        """Largest x at which the environment is active."""
        return 1.0 / self.ellH

    def require_regular_p(self, which: Sequence[float] = _SINGULAR_P) -> None:
        for p0 in which:
            if abs(self.p - p0) < _P_TOL:
                raise SingularExponentError(
                    f"p = {self.p} is within {_P_TOL} of the logarithmic case p = {p0}"
                )


def omega_sq_de_sitter(k: float, eta: float) -> float:
    """Squared frequency k^2 - 2/eta^2 of the de Sitter mode equation."""
    if eta >= 0.0:
        raise DomainError(f"conformal time must be negative, got {eta}")
    return k * k - 2.0 / (eta * eta)


def de_sitter_frequency() -> ModeFrequency:
    """De Sitter frequency at k = 1 (time variable eta = -x)."""
    return ModeFrequency(1.0, omega_sq_de_sitter)


def de_sitter_mode(x: float) -> ModeState:
    """Closed-form mode function with vacuum data in the far past.

    v(x) = (1 + i/x) e^{ix}, reported with its conformal-time derivative
    at time eta = -x (k = 1); the Wronskian is 2i identically.
    """
    if x <= 0.0:
        raise DomainError(f"x must be positive, got {x}")
    phase = complex(math.cos(x), math.sin(x))
    v = (1.0 + 1j / x) * phase
    dv = phase * (1j / (x * x) + 1.0 / x - 1j)
    return ModeState(v=v, dv=dv, time=-x)


def de_sitter_bogoliubov(x: float) -> BogoliubovPair:
    """Closed-form Bogoliubov pair: u = (1 + i/x - 1/(2x^2)) e^{ix},
    w = e^{-ix}/(2x^2); |u|^2 - |w|^2 = 1 identically."""
    if x <= 0.0:
        raise DomainError(f"x must be positive, got {x}")
    phase = complex(math.cos(x), math.sin(x))
    u = (1.0 + 1j / x - 0.5 / (x * x)) * phase
    w = phase.conjugate() * 0.5 / (x * x)
    return BogoliubovPair(u=u, w=w)


def de_sitter_covariance_closed(x: float) -> CovarianceBlock:
    """Covariance of the free de Sitter mode pair:
    g11 = 1 + 1/x^2, g12 = 1/x^3, g22 = 1 - 1/x^2 + 1/x^4 (det = 1)."""
    if x <= 0.0:
        raise DomainError(f"x must be positive, got {x}")
    inv2 = 1.0 / (x * x)
    return CovarianceBlock(
        g11=1.0 + inv2,
        g12=inv2 / x,
        g22=1.0 - inv2 + inv2 * inv2,
    )


def de_sitter_squeezing(x: float) -> tuple[float, float]:
    """Squeezing parameters (r, phi) of the free de Sitter state.

    r = arccosh(1 + 1/(2x^4)) / 2, evaluated in log1p form; the angle
    branch is fixed so that phi is continuous across x = 1/sqrt(2),
    decreases from -pi/2 (far past) towards 0, and sin(2 phi) < 0
    throughout (the amplitude grows).
    """
    if x <= 0.0:
        raise DomainError(f"x must be positive, got {x}")
    delta = 0.5 / x ** 4
    r = 0.5 * math.log1p(delta + math.sqrt(delta * (2.0 + delta)))
    phi = 0.5 * math.atan2(-2.0 * x, 1.0 - 2.0 * x * x)
    return r, phi


def cosmo_kernel(params: CosmoParams) -> EnvironmentKernel:
    """Dimensionless source S(x) = 2 (kGamma/k)^2 (x_star/x)^(p-3), active
    only once the mode is longer than the environment correlation length
    (x < 1/(ell_E H)); returned as a function of conformal time eta = -x.
    """
    kap2 = params.kGamma_over_k ** 2
    p = params.p
    xs = params.x_star
    x_on = params.x_coupling_on

    def source(eta: float) -> float:
        x = -eta
        if x <= 0.0 or x >= x_on:
            return 0.0
        return 2.0 * kap2 * (xs / x) ** (p - 3.0)

    return EnvironmentKernel(
        source,
        f"power-law environment: p={p}, ellH={params.ellH}, "
        f"kGamma/k={params.kGamma_over_k}, x*={xs}",
    )


def source_x(params: CosmoParams, x: float) -> float:
    """The kernel source as a function of x (= the kernel at eta = -x)."""
    if x <= 0.0 or x >= params.x_coupling_on:
        return 0.0
    return 2.0 * params.kGamma_over_k ** 2 * (params.x_star / x) ** (params.p - 3.0)


# ---------------------------------------------------------------------------
# exact dressed covariance (incomplete-gamma closed form)
# ---------------------------------------------------------------------------

def _power_bracket(x: float, p: float, ellH: float) -> float:
    """int_{1/ellH}^x t^{1-p} (1 + t^2) dt in closed form."""
    lam = 1.0 / ellH
    return (
        x ** (2.0 - p) / (2.0 - p)
        + x ** (4.0 - p) / (4.0 - p)
        - lam ** (2.0 - p) / (2.0 - p)
        - lam ** (4.0 - p) / (4.0 - p)
    )


def exact_open_covariance(x: float, params: CosmoParams) -> CovarianceBlock:
    """Environment-dressed covariance assembled from closed-form moments.

    Valid for 0 < x < 1/(ell_E H); p must stay away from the logarithmic
    values {2, 4} (and from integer p, where the gamma orders hit poles).
    The paired oscillatory terms are combined as twice the real part of
    one of them, so the result is real by construction.
    """
    params.require_regular_p((2.0, 4.0))
    if not 0.0 < x < params.x_coupling_on:
        raise DomainError(
            f"x = {x} outside the coupled window (0, {params.x_coupling_on})"
        )
    p, ellH, xs = params.p, params.ellH, params.x_star
    kap2 = params.kGamma_over_k ** 2
    xsp = xs ** (p - 3.0)
    m1 = oscillatory_moment(1.0 - p, x, ellH)
    m2 = oscillatory_moment(2.0 - p, x, ellH)
    m3 = oscillatory_moment(3.0 - p, x, ellH)
    br = _power_bracket(x, p, ellH)
    e = complex(math.cos(2.0 * x), -math.sin(2.0 * x))  # e^{-2ix}

    mode = de_sitter_mode(x)
    v2 = abs(mode.v) ** 2
    dv2 = abs(mode.dv) ** 2
    vdv = (mode.v * mode.dv.conjugate()).real

    i11_1 = xsp * (1.0 + x * x) / (2.0 * x * x) * br
    i11_2 = xsp / (4.0 * x * x) * e * (
        (x * x - 1.0 - 2j * x) * (m1 - m3) - (4.0 * x + 2j * x * x - 2j) * m2
    )
    corr11 = i11_1 + 2.0 * i11_2.real

    i12_1 = 0.5 * xsp / x ** 3 * br
    i12_2 = -1j * xsp / (4.0 * x ** 3) * e * (x - 1j) * (x * (x - 1j) - 1.0) \
        * (-m1 + 2j * m2 + m3)
    corr12 = i12_1 + 2.0 * i12_2.real

    w = 1.0 - 2.0 / (x * x)
    i22_1 = 1.5 * xsp / x ** 4 * br
    i22_2 = xsp / (4.0 * x ** 4) * e * (
        3.0 + 2.0 * x * (3j + x * (-3.0 - 2j * x + x * x))
    ) * (-m1 + 2j * m2 + m3)
    corr22 = i22_1 + 2.0 * i22_2.real + w * corr11

    return CovarianceBlock(
        g11=v2 - 2.0 * kap2 * corr11,
        g12=vdv - 2.0 * kap2 * corr12,
        g22=dv2 - 2.0 * kap2 * corr22,
    )


def exact_open_det(x: float, params: CosmoParams, quad_tol: float = 1e-10) -> float:
    """det of the dressed covariance, via its own growth law.

    d(det)/d eta = S gamma_11 integrated against the exact gamma_11: this
    sidesteps the catastrophic cancellation of forming g11 g22 - g12^2
    from large entries.
    """
    hi = params.x_coupling_on
    if x >= hi:
        return 1.0

    def f(xp: float) -> float:
        return source_x(params, xp) * exact_open_covariance(xp, params).g11

    val, _ = piecewise_oscillatory_quad(f, x, hi, math.pi / 2.0, epsrel=quad_tol)
    return 1.0 + val


# ---------------------------------------------------------------------------
# super-Hubble asymptotics
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class AsymptoticCoefficients:
    """Coefficient table of the super-Hubble expansion of the dressed
    covariance.  aNM is the coefficient of the non-analytic power
    x^(const - p) in component NM; bNM .. kNM multiply the analytic
    powers.  The lim_* fields are the x -> 0 constants of the oscillatory
    moments at orders 1-p, 2-p, 3-p.
    """

    p: float
    ellH: float
    x_star: float
    a11: float
    b11: float
    c11: float
    d11: float
    e11: float
    f11: float
    g11: float
    h11: float
    a12: float
    b12: float
    c12: float
    d12: float
    e12: float
    f12: float
    g12: float
    h12: float
    a22: float
    b22: float
    c22: float
    d22: float
    e22: float
    f22: float
    g22: float
    h22: float
    i22: float
    j22: float
    k22: float
    lim_re_1mp: float
    lim_im_1mp: float
    lim_re_2mp: float
    lim_im_2mp: float
    lim_re_3mp: float
    lim_im_3mp: float


def asymptotic_coefficients(params: CosmoParams) -> AsymptoticCoefficients:
    """Coefficient table for the super-Hubble expansion.

    Rejects p within 1e-6 of {2, 4, 5, 8} (vanishing denominators turn
    those powers logarithmic).  Non-excluded integer p can still hit
    poles of individual gamma orders; callers probing such p offset it by
    >= 1e-4.
    """
    params.require_regular_p()
    p, ellH, xs = params.p, params.ellH, params.x_star
    xsp = xs ** (p - 3.0)
    r1, i1 = oscillatory_moment_limits(1.0 - p, ellH)
    r2, i2 = oscillatory_moment_limits(2.0 - p, ellH)
    r3, i3 = oscillatory_moment_limits(3.0 - p, ellH)
    den = (p - 8.0) * (p - 5.0) * (p - 2.0)

    a11 = -2.0 * xsp / den
    b11 = 0.5 * xsp * (
        ellH ** (p - 4.0) / (p - 4.0)
        + ellH ** (p - 2.0) / (p - 2.0)
        - r1 - 2.0 * i2 + r3
    )
    d11 = xsp / 3.0 * (-i1 + 2.0 * r2 + i3)
    f11 = xsp / 9.0 * (r1 + 2.0 * i2 - r3)
    a12 = -xsp * (p - 6.0) / den
    a22 = -(26.0 + p * (p - 11.0)) * xsp / den
    return AsymptoticCoefficients(
        p=p, ellH=ellH, x_star=xs,
        a11=a11, b11=b11, c11=b11, d11=d11, e11=0.4 * d11, f11=f11,
        g11=-6.0 / 35.0 * d11, h11=-0.2 * f11,
        a12=a12, b12=b11, c12=-0.5 * d11, d12=-0.6 * d11, e12=-2.0 * f11,
        f12=3.0 / 7.0 * d11, g12=0.6 * f11, h12=-2.0 / 27.0 * d11,
        a22=a22, b22=b11, c22=-b11, d22=-2.0 * d11, e22=b11,
        f22=1.4 * d11, g22=4.0 * f11, h22=-34.0 / 35.0 * d11,
        i22=-1.6 * f11, j22=218.0 / 945.0 * d11, k22=43.0 / 175.0 * f11,
        lim_re_1mp=r1, lim_im_1mp=i1, lim_re_2mp=r2, lim_im_2mp=i2,
        lim_re_3mp=r3, lim_im_3mp=i3,
    )


def _approx_terms(params: CosmoParams, coeffs: AsymptoticCoefficients | None = None):
    """Leading super-Hubble terms of each component as (coefficient,
    x-exponent) pairs: g_NM(x) = sum_i c_i x^(e_i)."""
    t = coeffs if coeffs is not None else asymptotic_coefficients(params)
    kap2 = params.kGamma_over_k ** 2
    p = params.p
    return {
        "g11": ((1.0 - 2.0 * kap2 * t.b11, -2.0), (-2.0 * kap2 * t.a11, 6.0 - p)),
        "g12": ((1.0 - 2.0 * kap2 * t.b12, -3.0), (-2.0 * kap2 * t.a12, 5.0 - p)),
        "g22": ((1.0 - 2.0 * kap2 * t.b22, -4.0), (-2.0 * kap2 * t.a22, 4.0 - p)),
    }


def approx_open_covariance(x: float, params: CosmoParams) -> CovarianceBlock:
    """Leading super-Hubble form of the dressed covariance (x < 0.1)."""
    if x >= 0.1:
        raise DomainError(f"super-Hubble approximation needs x < 0.1, got {x}")
    terms = _approx_terms(params)
    vals = {
        name: sum(c * x ** e for c, e in pairs) for name, pairs in terms.items()
    }
    return CovarianceBlock(g11=vals["g11"], g12=vals["g12"], g22=vals["g22"])


def sigma0_sq_coefficients(params: CosmoParams) -> tuple[float, float, float, float, float]:
    """Super-Hubble coefficients of sigma^2(0) from the coefficient table.

    Returns (s0_2, s0_4, sx_2, sx_4, sxx_4): the quadratic/quartic
    coupling pieces of the constant term and of the x^(2-p) term, plus
    the purely quartic coefficient of x^(10-2p).  The last one comes from
    the squared non-analytic corrections and is what dominates the
    determinant growth once p > 8 (for p < 8 it is subleading).
    """
    t = asymptotic_coefficients(params)
    kap2 = params.kGamma_over_k ** 2
    s0_2 = kap2 * (-2.0 * t.c11 + 4.0 * t.e12 - 2.0 * t.e22 - 2.0 * t.f11 - 2.0 * t.g22)
    s0_4 = kap2 * kap2 * (
        -4.0 * t.c12 ** 2 + 4.0 * t.d11 * t.d22 - 8.0 * t.b12 * t.e12
        + 4.0 * t.c11 * t.e22 + 4.0 * t.b22 * t.f11 + 4.0 * t.b11 * t.g22
    )
    sx_2 = kap2 * (-2.0 * t.a11 + 4.0 * t.a12 - 2.0 * t.a22)
    sx_4 = kap2 * kap2 * (
        4.0 * t.a22 * t.b11 - 8.0 * t.a12 * t.b12 + 4.0 * t.a11 * t.b22
    )
    sxx_4 = 4.0 * kap2 * kap2 * (t.a11 * t.a22 - t.a12 ** 2)
    return s0_2, s0_4, sx_2, sx_4, sxx_4


def sigma0_sq_approx(x: float, params: CosmoParams, route: str = "coefficients") -> float:
    """Super-Hubble sigma^2(0) = det of the dressed covariance.

    route="coefficients": 1 + Sigma_0 + Sigma_{2-p} x^{2-p} with both
    coupling orders (quadratic and quartic) from the coefficient table;
    this is the form that tracks the transported determinant.

    route="leading": the two-term coupling-quadratic estimate
    1 + 2 (kG/k*)^2 (k/k*)^{p-5} [ (k/k*)^{2-p} (a*/a)^{2-p} / (p-2)
                                   - (ellH)^{p-4} / (p-4) ]
    with a*/a = x/x_star (leading both in ellH and in x).
    """
    if x >= 0.1:
        raise DomainError(f"super-Hubble form needs x < 0.1, got {x}")
    p = params.p
    if route == "leading":
        params.require_regular_p((2.0, 4.0))
        kk = params.k_over_kstar
        pref = 2.0 * params.kGamma_over_kstar ** 2 * kk ** (p - 5.0)
        return 1.0 + pref * (
            kk ** (2.0 - p) * (x / params.x_star) ** (2.0 - p) / (p - 2.0)
            - params.ellH ** (p - 4.0) / (p - 4.0)
        )
    if route != "coefficients":
        raise ValueError(f"unknown route {route!r}")
    s0_2, s0_4, sx_2, sx_4, sxx_4 = sigma0_sq_coefficients(params)
    return 1.0 + s0_2 + s0_4 + (sx_2 + sx_4) * x ** (2.0 - p) \
        + sxx_4 * x ** (10.0 - 2.0 * p)


# ---------------------------------------------------------------------------
# observables
# ---------------------------------------------------------------------------

class PsRegime(enum.Enum):
    P_LT_4 = "p_lt_4"
    P_4_TO_8 = "p_4_to_8"
    P_GT_8 = "p_gt_8"


@dataclass(frozen=True)
class PowerSpectrumCorrection:
    """Relative environment-induced correction to the power spectrum.

    For p < 8 the correction freezes on super-Hubble scales and ``value``
    is the frozen number; for p > 8 it keeps growing and ``value`` is the
    prefactor of (x/x_star)^(8-p).
    """

    value: float
    regime: PsRegime
    time_dependent: bool
    k_exponent: float


def _reflected_gamma_cos(p: float) -> float:
    """Gamma(2-p) cos(pi p / 2) through the reflection formula,
    regular at odd p; p -> 6 is a removable point of the full product
    (6-p) Gamma(2-p) cos(pi p/2) and handled by the caller."""
    return -math.pi / (2.0 * math.sin(math.pi * p / 2.0) * _gamma_fn(p - 1.0))


def power_spectrum_correction(params: CosmoParams) -> PowerSpectrumCorrection:
    """Piecewise closed form of the relative power-spectrum correction."""
    p = params.p
    for p0 in (4.0, 8.0):
        if abs(p - p0) < _P_TOL:
            raise SingularExponentError(f"p = {p} within {_P_TOL} of {p0}")
    kap_star2 = params.kGamma_over_kstar ** 2
    kk = params.k_over_kstar
    if p < 4.0:
        value = params.ellH ** (p - 4.0) / (4.0 - p) * kap_star2 * kk ** (p - 5.0)
        return PowerSpectrumCorrection(value, PsRegime.P_LT_4, False, p - 5.0)
    if p < 8.0:
        if abs(p - 6.0) < 1e-9:
            # removable zero-times-pole: (6-p)/sin(pi p/2) -> 2/pi
            combo = (3.0 - p) * (2.0 / math.pi) * (-math.pi / 2.0) / _gamma_fn(p - 1.0)
        else:
            combo = (3.0 - p) * (6.0 - p) * _reflected_gamma_cos(p)
        value = 2.0 ** (p - 4.0) * combo * kap_star2 * kk ** (p - 5.0)
        return PowerSpectrumCorrection(value, PsRegime.P_4_TO_8, False, p - 5.0)
    den = (p - 8.0) * (p - 5.0) * (p - 2.0)
    value = 4.0 / den * kap_star2 * kk ** 3
    return PowerSpectrumCorrection(value, PsRegime.P_GT_8, True, 3.0)


def decoherence_threshold(params: CosmoParams, a_over_astar: float) -> float:
    """Coupling threshold kGamma/k* above which the pivot-scale state
    decoheres: (ellH)^(2 - p/2) for p < 2, (a/a*)^(1 - p/2) for p > 2,
    the larger of the two at the crossover."""
    if a_over_astar <= 0.0:
        raise DomainError("a_over_astar must be positive")
    lo = params.ellH ** (2.0 - 0.5 * params.p)
    hi = a_over_astar ** (1.0 - 0.5 * params.p)
    if abs(params.p - 2.0) < _P_TOL:
        return max(lo, hi)
    return lo if params.p < 2.0 else hi


# ---------------------------------------------------------------------------
# discord
# ---------------------------------------------------------------------------

def _signed_log_terms(pairs, ln_x: float) -> tuple[float, float]:
    """(ln|sum|, sign) of sum_i c_i x^{e_i} given ln x."""
    logs, signs = [], []
    for c, e in pairs:
        if c == 0.0:
            continue
        logs.append(math.log(abs(c)) + e * ln_x)
        signs.append(math.copysign(1.0, c))
    if not logs:
        return -math.inf, 1.0
    ln, sgn = logsumexp(logs, b=signs, return_sign=True)
    return float(ln), float(sgn)


def _log_sigmas_approx(x: float, theta: float, params: CosmoParams) -> tuple[float, float]:
    """(ln sigma(theta), ln sigma(0)) from the super-Hubble asymptotics,
    assembled entirely in the log domain so that x as small as e^-700
    stays representable."""
    coeffs = asymptotic_coefficients(params)
    ln_x = math.log(x)
    terms = _approx_terms(params, coeffs)
    ln11, s11 = _signed_log_terms(terms["g11"], ln_x)
    ln12, s12 = _signed_log_terms(terms["g12"], ln_x)
    ln22, s22 = _signed_log_terms(terms["g22"], ln_x)

    # sigma^2(0) = 1 + Sigma_0 + Sigma_{2-p} x^{2-p} + Sigma_{10-2p} x^{10-2p}
    s0_2, s0_4, sx_2, sx_4, sxx_4 = sigma0_sq_coefficients(params)
    ln_s0sq, sgn0 = _signed_log_terms(
        ((1.0, 0.0), (s0_2 + s0_4, 0.0), (sx_2 + sx_4, 2.0 - params.p),
         (sxx_4, 10.0 - 2.0 * params.p)), ln_x
    )
    if sgn0 <= 0.0 or ln_s0sq < 0.0:
        ln_s0sq = 0.0  # clamp to the pure-state floor sigma(0) = 1

    # (g11 - g22)^2 + 4 g12^2, as logs
    ln_diff, _ = logsumexp([ln11, ln22], b=[s11, -s22], return_sign=True)
    ln_m2 = float(np.logaddexp(2.0 * float(ln_diff), math.log(4.0) + 2.0 * ln12))
    s2t = math.sin(2.0 * theta) ** 2
    if s2t == 0.0:
        return 0.5 * ln_s0sq, 0.5 * ln_s0sq
    ln_cross = ln_m2 + math.log(0.25 * s2t)
    ln_stsq = float(np.logaddexp(ln_s0sq, ln_cross))
    return 0.5 * ln_stsq, 0.5 * ln_s0sq


def discord_cosmo(
    x: float,
    theta: float,
    params: CosmoParams,
    method: str = "approx",
) -> DiscordResult:
    """Quantum discord of the dressed de Sitter state across partition theta.

    method="exact":    closed-form covariance + quadrature determinant;
                       valid for x inside the coupled window and not so
                       small that the closed form loses all precision
                       (x >= ~1e-3).
    method="approx":   super-Hubble asymptotics in the log domain; valid
                       for x < 0.1, arbitrarily small.
    method="transport": integrate the covariance down to x (slowest,
                       reference).
    """
    if method == "approx":
        ln_st, ln_s0 = _log_sigmas_approx(x, theta, params)
    elif method == "exact":
        block = exact_open_covariance(x, params)
        s0sq = max(exact_open_det(x, params), 1.0)
        m2 = (block.g11 - block.g22) ** 2 + 4.0 * block.g12 ** 2
        stsq = s0sq + 0.25 * m2 * math.sin(2.0 * theta) ** 2
        ln_st, ln_s0 = 0.5 * math.log(stsq), 0.5 * math.log(s0sq)
    elif method == "transport":
        traj = evolve_open_de_sitter(params, x_end=x)
        block = traj.block(len(traj) - 1)
        s0sq = max(traj.det[-1], 1.0)
        m2 = (block.g11 - block.g22) ** 2 + 4.0 * block.g12 ** 2
        stsq = s0sq + 0.25 * m2 * math.sin(2.0 * theta) ** 2
        ln_st, ln_s0 = 0.5 * math.log(stsq), 0.5 * math.log(s0sq)
    else:
        raise ValueError(f"unknown method {method!r}")
    d = _discord_from_logs(ln_st, ln_s0)
    st = math.exp(ln_st) if ln_st < 709.0 else math.inf
    s0 = math.exp(ln_s0) if ln_s0 < 709.0 else math.inf
    return DiscordResult(d, st, s0, Regime.EXACT, ln_st, ln_s0)


# ---------------------------------------------------------------------------
# drivers
# ---------------------------------------------------------------------------

def evolve_open_de_sitter(
    params: CosmoParams,
    x_end: float,
    x_eval: Sequence[float] | None = None,
    x_start: float | None = None,
    rtol: float = 1e-11,
    atol: float = 1e-12,
) -> CovarianceTrajectory:
    """Transport the dressed covariance from the coupling-on time down to
    x_end, seeded with the free closed form (exact while the kernel is
    inactive)."""
    if x_start is None:
        x_start = params.x_coupling_on
    if not 0.0 < x_end < x_start:
        raise DomainError(f"need 0 < x_end < {x_start}, got {x_end}")
    freq = de_sitter_frequency()
    kern = cosmo_kernel(params)
    ic = de_sitter_covariance_closed(x_start)
    t_eval = None if x_eval is None else [-float(xx) for xx in x_eval]
    traj = evolve_open(freq, kern, (-x_start, -x_end), ic=ic, t_eval=t_eval,
                       rtol=rtol, atol=atol)
    traj.meta["x"] = -traj.times
    return traj


def evolve_closed_de_sitter(
    x_start: float,
    x_end: float,
    x_eval: Sequence[float] | None = None,
    rtol: float = 1e-11,
    atol: float = 1e-12,
) -> CovarianceTrajectory:
    """Free transport evolution seeded with the closed form at x_start."""
    freq = de_sitter_frequency()
    ic = de_sitter_covariance_closed(x_start)
    t_eval = None if x_eval is None else [-float(xx) for xx in x_eval]
    traj = evolve_open(freq, None, (-x_start, -x_end), ic=ic, t_eval=t_eval,
                       rtol=rtol, atol=atol)
    traj.meta["x"] = -traj.times
    return traj
