"""Quantum discord across bipartitions, and its map over squeezing and
purity.

A homogeneous two-mode Gaussian state carries no discord in the reference
partition (theta = 0) and the most in the opposite-wavevector partition
(theta = -pi/4).  For mixed states the discord is a competition: it grows
with the squeezing amplitude r and shrinks as the purity 1/lam drops.

Run:  python demos/02_discord_and_partitions.py
"""

import math

import numpy as np

from gausslind import (
    SqueezingState,
    covariance_from_squeezing,
    discord,
    discord_squeezed,
    mutual_information,
    max_classical_info,
    wigner_ellipse,
)

# discord versus partition angle for one squeezed state
state = SqueezingState(r=1.0, phi=0.3, lam=1.0)
block = covariance_from_squeezing(state)
print("partition sweep for r = 1 (pure):")
print(f"{'theta':>10} {'discord':>10} {'mutual I':>10} {'classical J':>12}")
for theta in np.linspace(0.0, math.pi / 4.0, 6):
    d = discord(block, float(theta)).discord
    i = mutual_information(block, float(theta))
    j = max_classical_info(block, float(theta))
    print(f"{theta:10.4f} {d:10.5f} {i:10.5f} {j:12.5f}")

# a coarse (r, purity) map at the maximal partition: the contour
# structure shows the squeezing/decoherence competition
print("\ndiscord map at theta = -pi/4 (rows: r, columns: purity=1/lam):")
purities = (1.0, 1e-2, 1e-4, 1e-6)
print(" " * 8 + "".join(f"{p:>12.0e}" for p in purities))
for r in (1.0, 4.0, 8.0, 12.0):
    row = [discord_squeezed(r, 1.0 / p, -math.pi / 4.0).discord
           for p in purities]
    print(f"r={r:5.1f} " + "".join(f"{d:12.4f}" for d in row))

# the geometric reading: discord is large while the semi-minor axis of
# the Wigner ellipse keeps shrinking
print("\nWigner ellipse semi-minor axis sqrt(lam) e^{-2r} tracks the discord:")
for r, lam in ((4.0, 1.0), (4.0, 1e4), (4.0, 1e8)):
    ell = wigner_ellipse(SqueezingState(r, 0.0, lam))
    d = discord_squeezed(r, lam, -math.pi / 4.0).discord
    print(f"r={r}, lam={lam:8.0e}: semi-minor={ell.semi_minor:10.4g}, "
          f"discord={d:8.4f}")
