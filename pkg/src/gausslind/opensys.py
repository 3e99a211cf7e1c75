"""Environment coupling at the covariance level.

The coupling acts through a single non-negative dimensionless source S(t)
added to the momentum-momentum transport equation:

    (1/k) dg22/dt  gets  + S(t),

everything else unchanged.  S(t) absorbs the coupling rate and the
environment autocorrelation in one function, because only their product
ever appears.  Consequences implemented here: determinant growth
d(det)/dt = k S g11 (monotone purity loss), source-extended equations of
motion of the generalized squeezing parameters, and the Green's-function
representation of the dressed covariance as quadratures over a stored
mode trajectory.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np
from scipy.integrate import quad, solve_ivp

from .closed import (
    DEFAULT_ATOL,
    DEFAULT_RTOL,
    CovarianceTrajectory,
    ModeFrequency,
    ModeTrajectory,
    SQUEEZING_R_FLOOR,
    squeezing_rhs_closed,
    transport_rhs_closed,
)
from .errors import (
    DegenerateSqueezingError,
    QuadratureFailureError,
    StepFailureError,
)
from .symplectic import CovarianceBlock, SqueezingState

__all__ = [
    "EnvironmentKernel",
    "GreenIntegrals",
    "transport_rhs_open",
    "det_rhs",
    "generalized_squeezing_rhs",
    "green_covariance",
    "evolve_open",
    "piecewise_oscillatory_quad",
]


@dataclass(frozen=True)
class EnvironmentKernel:
    """Dimensionless source S(t) >= 0 entering the g22 transport equation."""

    source: Callable[[float], float]
    description: str = ""

    def __call__(self, t: float) -> float:
        return self.source(t)

    @staticmethod
    def zero() -> "EnvironmentKernel":
        return EnvironmentKernel(lambda t: 0.0, "no environment")


@dataclass(frozen=True)
class GreenIntegrals:
    """Additive covariance corrections (I, J, K) from the environment.

    I and K are integrals of squared imaginary parts against a
    non-negative weight, hence non-negative, and I*K >= J^2 by
    Cauchy-Schwarz; both facts are asserted on construction.
    """

    I: float
    J: float
    K: float

    def __post_init__(self):
        scale = max(self.I, self.K, 1e-300)
        if self.I < -1e-12 * scale or self.K < -1e-12 * scale:
            raise ValueError(f"negative diagonal correction: I={self.I}, K={self.K}")
        if self.I * self.K < self.J ** 2 * (1.0 - 1e-9) - 1e-12 * scale ** 2:
            raise ValueError(
                f"Cauchy-Schwarz violated: I*K={self.I * self.K}, J^2={self.J ** 2}"
            )


def transport_rhs_open(
    block: CovarianceBlock | Sequence[float],
    freq: ModeFrequency,
    kern: EnvironmentKernel | None,
    t: float,
) -> tuple[float, float, float]:
    """Open-system covariance derivatives: closed flow plus k S(t) on g22."""
    d11, d12, d22 = transport_rhs_closed(block, freq, t)
    if kern is not None:
        d22 += freq.k * kern(t)
    return (d11, d12, d22)


def det_rhs(
    block: CovarianceBlock | Sequence[float],
    kern: EnvironmentKernel | None,
    t: float,
    k: float = 1.0,
) -> float:
    """d(det)/dt = k S(t) g11; zero without an environment."""
    g11 = block.g11 if isinstance(block, CovarianceBlock) else block[0]
    return k * kern(t) * g11 if kern is not None else 0.0


def generalized_squeezing_rhs(
    s: SqueezingState,
    freq: ModeFrequency,
    kern: EnvironmentKernel | None,
    t: float,
) -> tuple[float, float, float]:
    """Source-extended equations of motion for (lam, r, phi).

    dlam/dt = k S sqrt(lam) [cosh 2r - cos 2phi sinh 2r]
    dr/dt   = closed part - (k S / (4 sqrt(lam))) [sinh 2r - cos 2phi cosh 2r]
    dphi/dt = closed part - k S sin 2phi / (4 sqrt(lam) sinh 2r)

    Reduces exactly to the closed equations when S = 0.  The transport
    engine remains the engine of record; this one is singular at r -> 0
    and stiff near lam ~ 1.
    """
    if s.r <= SQUEEZING_R_FLOOR:
        raise DegenerateSqueezingError(
            f"generalized squeezing engine needs r > {SQUEEZING_R_FLOOR}"
        )
    theta = s.theta_rot if s.theta_rot is not None else 0.0
    dr, dphi, _ = squeezing_rhs_closed(s.r, s.phi, theta, freq, t)
    sv = kern(t) if kern is not None else 0.0
    if sv == 0.0:
        return (0.0, dr, dphi)
    k = freq.k
    sqrt_lam = math.sqrt(max(s.lam, 1.0))
    ch, sh = math.cosh(2.0 * s.r), math.sinh(2.0 * s.r)
    c2, s2 = math.cos(2.0 * s.phi), math.sin(2.0 * s.phi)
    dlam = k * sv * sqrt_lam * (ch - c2 * sh)
    dr -= k * sv / (4.0 * sqrt_lam) * (sh - c2 * ch)
    dphi -= k * sv * s2 / (4.0 * sqrt_lam * sh)
    return (dlam, dr, dphi)


def piecewise_oscillatory_quad(
    f: Callable[[float], float],
    lo: float,
    hi: float,
    half_period: float,
    epsrel: float = 1e-10,
    epsabs: float = 1e-13,
) -> tuple[float, float]:
    """Adaptive quadrature with pre-subdivision at oscillation half-periods.

    Returns (value, error estimate).  Subdividing first keeps the
    adaptive rule from aliasing the oscillation.
    """
    if hi <= lo:
        return 0.0, 0.0
    n_breaks = int(math.floor((hi - lo) / half_period))
    pts = [lo] + [lo + i * half_period for i in range(1, n_breaks + 1)] + [hi]
    total = err = 0.0
    for a0, b0 in zip(pts[:-1], pts[1:]):
        if b0 - a0 < 1e-300:
            continue
        v, e = quad(f, a0, b0, epsabs=epsabs, epsrel=epsrel, limit=200)
        total += v
        err += abs(e)
    return total, err


def green_covariance(
    modes: ModeTrajectory,
    kern: EnvironmentKernel,
    t: float,
    quad_tol: float = 1e-10,
    t_in: float | None = None,
) -> GreenIntegrals:
    """Covariance corrections by quadrature over a stored mode trajectory.

    With v the mode function and primes denoting the final-time values,

      I = k   * int S(t') Im^2[v(t') v*(t)] dt'
      J =       int S(t') Im[v(t') v*(t)] Im[v(t') v'*(t)] dt'
      K = (1/k) int S(t') Im^2[v(t') v'*(t)] dt'

    so that the dressed covariance is g11 = |v|^2 + I,
    g12 = Re(v v'*)/k + J, g22 = |v'|^2/k^2 + K.
    """
    k = modes.freq.k
    t0 = modes.t0 if t_in is None else t_in
    final = modes.state(t)
    v_f, dv_f = final.v, final.dv

    def im_v(tp: float) -> float:
        return (modes.state(tp).v * v_f.conjugate()).imag

    def im_dv(tp: float) -> float:
        return (modes.state(tp).v * dv_f.conjugate()).imag

    half_period = math.pi / (2.0 * k)  # e^{2ik t'} phase of the products
    lo, hi = min(t0, t), max(t0, t)
    sign = 1.0 if t >= t0 else -1.0
    results = []
    for f, pref in (
        (lambda tp: kern(tp) * im_v(tp) ** 2, k),
        (lambda tp: kern(tp) * im_v(tp) * im_dv(tp), 1.0),
        (lambda tp: kern(tp) * im_dv(tp) ** 2, 1.0 / k),
    ):
        val, err = piecewise_oscillatory_quad(f, lo, hi, half_period,
                                              epsrel=quad_tol)
        scale = max(abs(val), 1e-30)
        if err > 100.0 * quad_tol * scale + 1e-10:
            raise QuadratureFailureError(
                f"requested {quad_tol}, got error estimate {err} on scale {scale}"
            )
        results.append(sign * pref * val)
    return GreenIntegrals(I=results[0], J=results[1], K=results[2])


def evolve_open(
    freq: ModeFrequency,
    kern: EnvironmentKernel | None,
    t_span: tuple[float, float],
    ic: CovarianceBlock | None = None,
    t_eval: Sequence[float] | None = None,
    rtol: float = DEFAULT_RTOL,
    atol: float = DEFAULT_ATOL,
) -> CovarianceTrajectory:
    """Transport-engine evolution with an optional environment.

    The state vector is (g11, g12, g22, det): the determinant is
    transported by its own (cancellation-free) equation and is the value
    behind the reported purity.
    """
    if ic is None:
        ic = CovarianceBlock.vacuum()

    def rhs(t, y):
        d11, d12, d22 = transport_rhs_open(y[:3], freq, kern, t)
        ddet = det_rhs(y[:3], kern, t, k=freq.k)
        return [d11, d12, d22, ddet]

    y0 = [ic.g11, ic.g12, ic.g22, max(ic.det, 1.0)]
    sol = solve_ivp(rhs, t_span, y0, method="DOP853", rtol=rtol, atol=atol,
                    t_eval=t_eval, dense_output=t_eval is None)
    if not sol.success:
        raise StepFailureError(f"covariance transport failed: {sol.message}")
    if not np.all(np.isfinite(sol.y)):
        raise StepFailureError("covariance transport produced non-finite values")
    meta = {"k": freq.k, "kernel": kern.description if kern is not None else "none"}
    return CovarianceTrajectory(
        times=sol.t,
        g11=sol.y[0],
        g12=sol.y[1],
        g22=sol.y[2],
        det=sol.y[3],
        meta=meta,
    )
