"""Covariance-matrix algebra for homogeneous two-mode Gaussian states.

A single Fourier mode pair is described, in the reference partition, by a
2x2 covariance block (g11, g12, g22) repeated on both diagonal blocks of
the 4x4 covariance matrix.  This module provides the partition matrices
that rotate that description into an arbitrary bipartition, the symplectic
machinery to transform covariances, and the conversions between covariance
entries, squeezing parameters and particle statistics.

All functions are pure; all value types are frozen dataclasses.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import (
    BelowHeisenbergError,
    DegenerateSqueezingError,
    NonSymplecticError,
)

__all__ = [
    "SYMPLECTIC_FORM",
    "CovarianceBlock",
    "Covariance4",
    "PartitionAngles",
    "SqueezingState",
    "ParticleStatistics",
    "stable_det2",
    "general_partition_matrix",
    "one_param_partition_matrix",
    "is_symplectic",
    "transform_covariance",
    "covariance_blocks_in_partition",
    "purity",
    "sigma_theta",
    "particle_statistics",
    "squeezing_from_covariance",
    "covariance_from_squeezing",
]

#: Block-diagonal symplectic form for two degrees of freedom.
SYMPLECTIC_FORM = np.array(
    [
        [0.0, 1.0, 0.0, 0.0],
        [-1.0, 0.0, 0.0, 0.0],
        [0.0, 0.0, 0.0, 1.0],
        [0.0, 0.0, -1.0, 0.0],
    ]
)

#: det in [1 - HEISENBERG_SLACK, 1) is treated as exactly 1 (pure state).
HEISENBERG_SLACK = 1e-9


def _two_product(a: float, b: float) -> tuple[float, float]:
    """Dekker exact product: a*b = p + e with p = fl(a*b)."""
    p = a * b
    # split factors into high/low halves (53-bit doubles, 27-bit split)
    c = 134217729.0 * a
    ah = c - (c - a)
    al = a - ah
    c = 134217729.0 * b
    bh = c - (c - b)
    bl = b - bh
    e = ((ah * bh - p) + ah * bl + al * bh) + al * bl
    return p, e


def stable_det2(g11: float, g12: float, g22: float) -> float:
    """g11*g22 - g12**2 with compensated products.

    The direct expression loses all accuracy for strongly squeezed states
    where the two products cancel to ~1; the compensation keeps the
    rounding error at the level of the *inputs*, not of the products.
    """
    p1, e1 = _two_product(g11, g22)
    p2, e2 = _two_product(g12, g12)
    return (p1 - p2) + (e1 - e2)


def _canonical_angle(a: float) -> float:
    """Map an angle to (-pi, pi]."""
    r = math.remainder(a, 2.0 * math.pi)
    if r <= -math.pi:
        r += 2.0 * math.pi
    return r


@dataclass(frozen=True)
class CovarianceBlock:
    """Reference-partition covariance of one mode pair: (g11, g12, g22).

    Invariants: g11, g22 > 0 and det = g11*g22 - g12**2 >= 1 up to a small
    numerical slack (equality holds for pure states).
    """

    g11: float
    g12: float
    g22: float

    def __post_init__(self):
        if not (self.g11 > 0.0 and self.g22 > 0.0):
            raise BelowHeisenbergError(
                f"diagonal entries must be positive, got ({self.g11}, {self.g22})"
            )
        if not all(map(math.isfinite, (self.g11, self.g12, self.g22))):
            raise BelowHeisenbergError("covariance entries must be finite")
        # construction only enforces positive definiteness up to a coarse
        # relative level: the determinant of a strongly squeezed block is
        # a fine-tuned cancellation, and blocks assembled from truncated
        # asymptotics legitimately carry det noise many orders above eps.
        # The uncertainty bound det >= 1 is checked by the operations that
        # actually consume the determinant, with their clamping rules.
        half_sum = 0.5 * (self.g11 + self.g22)
        if self.det < -1e-6 * half_sum * half_sum:
            raise BelowHeisenbergError(
                f"covariance is not positive definite: det = {self.det}"
            )

    @property
    def det(self) -> float:
        return stable_det2(self.g11, self.g12, self.g22)

    def as_matrix(self) -> np.ndarray:
        return np.array([[self.g11, self.g12], [self.g12, self.g22]])

    def pair_matrix(self) -> np.ndarray:
        """4x4 covariance in the reference partition: diag(B, B)."""
        z = np.zeros((2, 2))
        b = self.as_matrix()
        return np.block([[b, z], [z, b]])

    @staticmethod
    def vacuum() -> "CovarianceBlock":
        return CovarianceBlock(1.0, 0.0, 1.0)


@dataclass(frozen=True)
class Covariance4:
    """A full 4x4 real symmetric covariance matrix."""

    m: np.ndarray = field(repr=False)

    def __post_init__(self):
        m = np.asarray(self.m, dtype=float)
        if m.shape != (4, 4):
            raise ValueError(f"expected a 4x4 matrix, got shape {m.shape}")
        if not np.allclose(m, m.T, rtol=0.0, atol=1e-10 * max(1.0, np.abs(m).max())):
            raise ValueError("covariance matrix must be symmetric")
        object.__setattr__(self, "m", 0.5 * (m + m.T))

    @property
    def det(self) -> float:
        return float(np.linalg.det(self.m))

    @staticmethod
    def from_block(block: CovarianceBlock) -> "Covariance4":
        return Covariance4(block.pair_matrix())


@dataclass(frozen=True)
class PartitionAngles:
    """Four angles defining a bipartition, stored canonicalized to (-pi, pi]."""

    alpha: float
    beta: float
    delta: float
    theta: float

    def __post_init__(self):
        for name in ("alpha", "beta", "delta", "theta"):
            v = getattr(self, name)
            if not math.isfinite(v):
                raise ValueError(f"angle {name} must be finite, got {v}")
            object.__setattr__(self, name, _canonical_angle(v))


@dataclass(frozen=True)
class SqueezingState:
    """Generalized squeezing parameters (r, phi, lam) of a covariance block.

    ``lam`` is the determinant of the block (inverse squared purity) and
    equals 1 for pure states.  ``theta_rot`` is the free rotation angle of
    the underlying mode transformation; it is carried along by the closed
    equations of motion but never enters the covariance.
    """

    r: float
    phi: float
    lam: float = 1.0
    theta_rot: float | None = None

    def __post_init__(self):
        if self.r < 0.0:
            raise ValueError(f"squeezing amplitude must be >= 0, got {self.r}")
        if self.lam < 1.0 - HEISENBERG_SLACK:
            raise BelowHeisenbergError(f"ellipse-area parameter below 1: {self.lam}")


@dataclass(frozen=True)
class ParticleStatistics:
    """Mean pair occupation n and pair correlation c of a mode pair."""

    n: float
    c: complex

    @staticmethod
    def vacuum() -> "ParticleStatistics":
        return ParticleStatistics(0.0, 0.0 + 0.0j)


def general_partition_matrix(angles: PartitionAngles) -> np.ndarray:
    """Partition matrix for the four-angle family of bipartitions.

    The returned 4x4 matrix maps the reference phase-space vector to the
    one describing the two new subsystems; it is symplectic and reduces to
    the identity for vanishing angles.
    """
    a, b, d, t = angles.alpha, angles.beta, angles.delta, angles.theta
    ca, sa = math.cos(a), math.sin(a)
    cb, sb = math.cos(b), math.sin(b)
    cd, sd = math.cos(d), math.sin(d)
    ct, st = math.cos(t), math.sin(t)
    cm, sm = math.cos(a - b - d), math.sin(a - b - d)
    return np.array(
        [
            [ca * ct, -sa * ct, -cd * st, sd * st],
            [sa * ct, ca * ct, -sd * st, -cd * st],
            [cb * st, -sb * st, cm * ct, sm * ct],
            [sb * st, cb * st, -sm * ct, cm * ct],
        ]
    )


def one_param_partition_matrix(theta: float) -> np.ndarray:
    """One-angle subfamily of partitions.

    theta = 0 is the reference partition; theta = -pi/4 is the partition
    into the two opposite-wavevector modes, which maximizes discord.
    """
    ct, st = math.cos(theta), math.sin(theta)
    c2, s2 = math.cos(2.0 * theta), math.sin(2.0 * theta)
    return np.array(
        [
            [ct, 0.0, 0.0, st],
            [0.0, ct, -st, 0.0],
            [st * s2, st * c2, ct * c2, -ct * s2],
            [-st * c2, st * s2, ct * s2, ct * c2],
        ]
    )


def is_symplectic(T: np.ndarray, tol: float = 1e-10) -> bool:
    """True iff ||T J T^T - J||_max <= tol."""
    if tol <= 0.0:
        raise ValueError("tol must be positive")
    T = np.asarray(T, dtype=float)
    resid = T @ SYMPLECTIC_FORM @ T.T - SYMPLECTIC_FORM
    return bool(np.abs(resid).max() <= tol)


def transform_covariance(g: Covariance4 | np.ndarray, T: np.ndarray,
                         tol: float = 1e-8) -> Covariance4:
    """Covariance in the partition reached by T: returns T g T^T.

    Raises NonSymplecticError when T fails the symplectic check, since a
    non-symplectic map would not describe a change of partition.
    """
    if not is_symplectic(T, tol):
        raise NonSymplecticError("transformation does not satisfy T J T^T = J")
    m = g.m if isinstance(g, Covariance4) else np.asarray(g, dtype=float)
    return Covariance4(T @ m @ T.T)


def covariance_blocks_in_partition(block: CovarianceBlock, theta: float) -> dict:
    """Closed-form 2x2 blocks {A, B, C} of the covariance in partition theta.

    A and B are the reduced covariances of the two subsystems, C their
    cross-correlation.  Assembling [[A, C], [C, B]] reproduces
    transform_covariance(diag(block, block), one_param_partition_matrix(theta)).
    """
    g11, g12, g22 = block.g11, block.g12, block.g22
    ct2, st2 = math.cos(theta) ** 2, math.sin(theta) ** 2
    c2, s2 = math.cos(2.0 * theta), math.sin(2.0 * theta)
    c4, s4 = math.cos(4.0 * theta), math.sin(4.0 * theta)
    half_diff = 0.5 * (g11 - g22)
    half_sum = 0.5 * (g11 + g22)

    a_mat = np.array(
        [
            [g11 * ct2 + g22 * st2, g12 * c2],
            [g12 * c2, g22 * ct2 + g11 * st2],
        ]
    )
    b11 = half_sum + half_diff * c2 * c4 - g12 * c2 * s4
    b12 = g12 * c2 * c4 + half_diff * c2 * s4
    b22 = half_sum - half_diff * c2 * c4 + g12 * c2 * s4
    b_mat = np.array([[b11, b12], [b12, b22]])
    c11 = half_diff * s2 ** 2 + 0.5 * g12 * s4
    c12 = -0.5 * half_diff * s4 + g12 * s2 ** 2
    c_mat = np.array([[c11, c12], [c12, -c11]])
    return {"A": a_mat, "B": b_mat, "C": c_mat}


def purity(block: CovarianceBlock) -> float:
    """State purity 1/det; tiny numerical undershoot of det=1 is clamped."""
    det = block.det
    if det < 1.0 - HEISENBERG_SLACK:
        raise BelowHeisenbergError(f"det = {det} violates the uncertainty bound")
    if det < 1.0:
        return 1.0
    return 1.0 / det


def sigma_theta(block: CovarianceBlock, theta: float) -> float:
    """Symplectic eigenvalue of either reduced block in partition theta.

    Reduces to sqrt(det) at theta = 0 and grows monotonically with
    |sin(2 theta)|.
    """
    det = max(block.det, 1.0)
    c2 = math.cos(2.0 * theta)
    s2 = math.sin(2.0 * theta)
    half_sum = 0.5 * (block.g11 + block.g22)
    return math.sqrt(c2 * c2 * det + half_sum * half_sum * s2 * s2)


def particle_statistics(block: CovarianceBlock) -> ParticleStatistics:
    """Mean pair occupation and pair correlation of the block."""
    n = 0.25 * (block.g11 + block.g22) - 0.5
    c = 0.25 * (block.g11 - block.g22) + 0.5j * block.g12
    return ParticleStatistics(n, c)


#: below this amplitude the squeezing angle is numerically meaningless
DEGENERATE_R = 1e-8


def squeezing_from_covariance(block: CovarianceBlock) -> SqueezingState:
    """Invert a covariance block into squeezing parameters (r, phi, lam).

    lam = det, cosh(2r) = (g11+g22)/(2 sqrt(lam)), and phi is fixed by
    sin(2 phi) = -g12/(sqrt(lam) sinh(2r)),
    cos(2 phi) = (g22-g11)/(2 sqrt(lam) sinh(2r)),
    canonicalized to phi in (-pi/2, pi/2].

    Raises DegenerateSqueezingError when r <= 1e-8 (phi undefined; use the
    covariance representation instead).
    """
    lam = max(block.det, 1.0)
    sqrt_lam = math.sqrt(lam)
    # r = arccosh(y)/2 with y = (g11+g22)/(2 sqrt(lam)), but evaluated as
    # asinh of sinh(2r) = sqrt(y^2-1) read off the entries directly: the
    # difference combination is cancellation-free, so r keeps full
    # relative accuracy down to (and below) the degeneracy floor, where
    # the y route would lose half the digits to the cosh flatness.
    s = 0.5 * math.hypot(block.g11 - block.g22, 2.0 * block.g12) / sqrt_lam
    r = 0.5 * math.asinh(s)
    if r <= DEGENERATE_R:
        raise DegenerateSqueezingError(
            f"r = {r} too small for the squeezing angle to be defined"
        )
    two_phi = math.atan2(-block.g12, 0.5 * (block.g22 - block.g11))
    phi = 0.5 * two_phi
    if phi <= -0.5 * math.pi:
        phi += math.pi
    return SqueezingState(r=r, phi=phi, lam=lam)


def covariance_from_squeezing(state: SqueezingState) -> CovarianceBlock:
    """Covariance block of a (generalized) squeezed state.

    g11 = sqrt(lam) (cosh 2r - cos 2phi sinh 2r)
    g12 = -sqrt(lam) sin 2phi sinh 2r
    g22 = sqrt(lam) (cosh 2r + cos 2phi sinh 2r)

    The determinant equals lam identically; theta_rot does not appear.
    """
    sl = math.sqrt(max(state.lam, 1.0))
    ch = math.cosh(2.0 * state.r)
    sh = math.sinh(2.0 * state.r)
    c2, s2 = math.cos(2.0 * state.phi), math.sin(2.0 * state.phi)
    return CovarianceBlock(
        g11=sl * (ch - c2 * sh),
        g12=-sl * s2 * sh,
        g22=sl * (ch + c2 * sh),
    )
