"""Built-in validation suite.

Runs the fast subset of the acceptance checks that make sense on an end
user's machine: cross-engine agreement of the closed evolution, discord
baselines, the coefficient identities of the super-Hubble expansion, and
the incomplete-gamma accuracy battery.  Each check returns (name, ok,
detail) and prints one line; the CLI maps failure to a non-zero exit.
"""

from __future__ import annotations

import math
import time

import numpy as np
from scipy.integrate import quad

from .closed import (
    bogoliubov_from_mode,
    covariance_from_bogoliubov,
    evolve_squeezing,
    integrate_mode_function,
)
from .cosmology import (
    CosmoParams,
    asymptotic_coefficients,
    de_sitter_covariance_closed,
    de_sitter_frequency,
    de_sitter_mode,
    de_sitter_squeezing,
    evolve_closed_de_sitter,
)
from .discord import discord, discord_squeezed, entropy_kernel
from .specfun import upper_incomplete_gamma
from .symplectic import covariance_from_squeezing, SqueezingState

__all__ = ["run_all", "CHECKS"]


def reference_upper_gamma(a: float, z: complex, epsrel: float = 5e-14) -> complex:
    """Quadrature reference for Gamma(a, z): integrate t^(a-1) e^-t along
    the ray t = z + s, s in [0, inf).  The integrand is non-oscillatory
    along this path (the phase of e^-z is constant), so plain adaptive
    quadrature reaches near-machine accuracy."""
    import warnings
    from scipy.integrate import IntegrationWarning

    z = complex(z)

    def fre(s):
        t = z + s
        return (t ** (a - 1.0) * np.exp(-t)).real

    def fim(s):
        t = z + s
        return (t ** (a - 1.0) * np.exp(-t)).imag

    with warnings.catch_warnings():
        # roundoff-detection warnings at epsrel ~ 5e-14 are expected; the
        # returned values are still accurate, as the battery itself shows
        warnings.simplefilter("ignore", IntegrationWarning)
        re, _ = quad(fre, 0.0, np.inf, limit=400, epsabs=0.0, epsrel=epsrel)
        im, _ = quad(fim, 0.0, np.inf, limit=400, epsabs=0.0, epsrel=epsrel)
    return complex(re, im)


def check_closed_engines() -> tuple[str, bool, str]:
    """Mode-function, squeezing and transport engines against the closed
    de Sitter forms, x from 100 to 0.01; purity drift below 1e-9."""
    x_grid = np.geomspace(100.0, 0.01, 41)
    closed = np.array([
        [b.g11, b.g12, b.g22]
        for b in (de_sitter_covariance_closed(x) for x in x_grid)
    ])

    worst = 0.0
    drift = 0.0

    # transport engine (determinant transported alongside)
    traj = evolve_closed_de_sitter(100.0, 0.01, x_eval=x_grid)
    got = np.column_stack([traj.g11, traj.g12, traj.g22])
    worst = max(worst, float(np.abs(got / closed - 1.0).max()))
    drift = max(drift, float(np.abs(traj.purity - 1.0).max()))

    # mode-function engine; its purity is the squared Wronskian over 2ik
    freq = de_sitter_frequency()
    mtraj = integrate_mode_function(freq, -100.0, -0.01, de_sitter_mode(100.0))
    for i, x in enumerate(x_grid):
        st = mtraj.state(-x)
        pair = bogoliubov_from_mode(st, 1.0)
        b = covariance_from_bogoliubov(pair)
        rel = np.abs(np.array([b.g11, b.g12, b.g22]) / closed[i] - 1.0).max()
        worst = max(worst, float(rel))
        norm = (st.wronskian() / 2j).real
        drift = max(drift, abs(1.0 / (norm * norm) - 1.0))

    # squeezing engine (purity 1 by construction)
    r0, phi0 = de_sitter_squeezing(100.0)
    _, rr, pp, _ = evolve_squeezing(freq, (-100.0, -0.01), (r0, phi0, 0.0),
                                    t_eval=-x_grid)
    for i in range(len(x_grid)):
        b = covariance_from_squeezing(SqueezingState(rr[i], pp[i], 1.0))
        rel = np.abs(np.array([b.g11, b.g12, b.g22]) / closed[i] - 1.0).max()
        worst = max(worst, float(rel))

    ok = worst < 1e-6 and drift < 1e-9
    return ("closed-evolution cross-engine agreement",
            ok, f"max rel dev {worst:.2e}, purity drift {drift:.2e}")


def check_discord_baseline() -> tuple[str, bool, str]:
    """Discord vanishes in the reference partition; pure-state discord
    matches the entropy kernel of sqrt(1 + sinh^2(2r) sin^2(2theta))."""
    rng = np.random.default_rng(20240811)
    worst0 = 0.0
    for _ in range(1000):
        r = rng.uniform(0.0, 3.0)
        phi = rng.uniform(-np.pi / 2, np.pi / 2)
        lam = rng.uniform(1.0, 50.0)
        b = covariance_from_squeezing(SqueezingState(r, phi, lam))
        worst0 = max(worst0, discord(b, 0.0).discord)

    worst_pure = 0.0
    for r in np.linspace(0.0, 30.0, 61):
        for theta in (-np.pi / 4, 0.3, 1.1):
            want = entropy_kernel(math.sqrt(
                1.0 + math.sinh(2.0 * r) ** 2 * math.sin(2.0 * theta) ** 2
            ))
            got = discord_squeezed(r, 1.0, theta).discord
            scale = max(1.0, abs(want))
            worst_pure = max(worst_pure, abs(got - want) / scale)

    ok = worst0 < 1e-12 and worst_pure < 1e-10
    return ("discord baseline (theta=0 and pure states)",
            ok, f"max D(0) {worst0:.2e}, pure-state dev {worst_pure:.2e}")


def check_coefficient_identities() -> tuple[str, bool, str]:
    """Internal relations of the super-Hubble coefficient table."""
    worst = 0.0
    for p in (0.5, 2.1, 3.7, 6.1, 9.3):
        t = asymptotic_coefficients(CosmoParams(1.0, p, 0.1))
        scale = max(abs(t.b11), abs(t.d11), abs(t.f11), 1.0)
        resid = [
            t.b22 - t.b11, t.c11 - t.b11, t.b12 - t.b11, t.e22 - t.b11,
            t.c12 + 0.5 * t.d11, t.e12 + 2.0 * t.f11, t.g22 - 4.0 * t.f11,
            t.d22 + 2.0 * t.d11,
            (4.0 - p) * t.a22 - 2.0 * (6.0 - p) * t.a11 - 1.0,
        ]
        worst = max(worst, max(abs(r) for r in resid) / scale)
    ok = worst < 1e-12
    return ("super-Hubble coefficient identities", ok, f"max residual {worst:.2e}")


def check_special_functions() -> tuple[str, bool, str]:
    """Incomplete gamma against the ray-quadrature reference plus the
    recurrence Gamma(a+1,z) = a Gamma(a,z) + z^a e^-z."""
    worst = 0.0
    worst_rec = 0.0
    orders = (-9.5, -5.3, -1.1, 0.5, 2.5, 7.5)
    radii = (1e-3, 0.1, 1.0, 10.0, 1e3)
    args = (0.5 * math.pi, -0.5 * math.pi, 0.25 * math.pi)
    for a in orders:
        for az in radii:
            for ph in args:
                if abs(ph) < 0.45 * math.pi and az > 500.0:
                    continue  # |e^-z| underflows; value not representable
                z = az * complex(math.cos(ph), math.sin(ph))
                ref = reference_upper_gamma(a, z)
                got = upper_incomplete_gamma(a, z)
                worst = max(worst, abs(got - ref) / abs(ref))
                up = upper_incomplete_gamma(a + 1.0, z)
                direct = z ** a * np.exp(-z)
                scale = max(abs(up), abs(direct), 1e-300)
                worst_rec = max(worst_rec, abs(up - a * got - direct) / scale)
    ok = worst < 1e-12 and worst_rec < 1e-11
    return ("incomplete-gamma accuracy battery",
            ok, f"max rel dev {worst:.2e}, recurrence residual {worst_rec:.2e}")


CHECKS = (
    check_closed_engines,
    check_discord_baseline,
    check_coefficient_identities,
    check_special_functions,
)


def run_all(verbose: bool = True) -> bool:
    all_ok = True
    for fn in CHECKS:
        t0 = time.perf_counter()
        name, ok, detail = fn()
        dt = time.perf_counter() - t0
        all_ok &= ok
        if verbose:
            print(f"[{'PASS' if ok else 'FAIL'}] {name}: {detail} ({dt:.2f}s)")
    return all_ok
