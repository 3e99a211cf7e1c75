"""Decoherence of an inflationary mode coupled to a sub-Hubble
environment.

The environment switches on when the mode outgrows the correlation
length (x = 1/(ell_E H)) and pumps the momentum-momentum covariance,
making the determinant -- the squared inverse purity -- grow.  The
transported determinant, the Green's-function quadrature and the
super-Hubble asymptotics all agree.

Run:  python demos/03_open_decoherence.py
"""

import numpy as np

from gausslind import (
    CosmoParams,
    de_sitter_frequency,
    de_sitter_mode,
    cosmo_kernel,
    evolve_open_de_sitter,
    green_covariance,
    integrate_mode_function,
    sigma0_sq_approx,
    particle_statistics,
)

params = CosmoParams(kGamma_over_kstar=10.0, p=2.1, ellH=0.1)
print(f"environment: {cosmo_kernel(params).description}")
print(f"coupling window opens at x = {params.x_coupling_on}\n")

x_grid = np.geomspace(10.0, 1e-3, 9)
traj = evolve_open_de_sitter(params, x_end=1e-3, x_eval=x_grid)

# an independent route: Green's-function quadrature over the stored
# closed mode function
freq = de_sitter_frequency()
mode_traj = integrate_mode_function(freq, -10.0, -1e-3, de_sitter_mode(10.0),
                                    rtol=1e-12, atol=1e-14)

print(f"{'x':>10} {'ln det':>10} {'approx':>10} {'purity':>10} "
      f"{'n pairs':>12} {'green g22 dev':>14}")
for i, x in enumerate(x_grid):
    det = traj.det[i]
    try:
        approx = np.log(sigma0_sq_approx(float(x), params))
    except Exception:
        approx = float("nan")  # outside the super-Hubble window
    stats = particle_statistics(traj.block(i))
    g = green_covariance(mode_traj, cosmo_kernel(params), -float(x))
    g22_green = abs(mode_traj.state(-float(x)).dv) ** 2 + g.K
    dev = abs(g22_green / traj.g22[i] - 1.0)
    print(f"{x:10.4g} {np.log(det):10.4f} {approx:10.4f} "
          f"{traj.purity[i]:10.3e} {stats.n:12.4g} {dev:14.2e}")

print("\nThe determinant saturates for p = 2.1 once the x^(2-p) growth "
      "slows; purity is lost but, as demo 05 shows, discord survives.")
