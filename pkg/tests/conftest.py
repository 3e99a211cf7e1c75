"""Shared fixtures and independent oracles for the test suite."""

import numpy as np
import pytest

from gausslind.symplectic import CovarianceBlock, SqueezingState, covariance_from_squeezing


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def random_block(rng, r_max=3.0, lam_max=50.0) -> CovarianceBlock:
    """Random valid covariance block via the squeezing parameterization."""
    r = rng.uniform(0.0, r_max)
    phi = rng.uniform(-np.pi / 2, np.pi / 2)
    lam = rng.uniform(1.0, lam_max)
    return covariance_from_squeezing(SqueezingState(r, phi, lam))


def gauss_legendre_quad(f, a, b, n=64, pieces=8):
    """Fixed-order composite Gauss-Legendre quadrature (independent oracle;
    deliberately not scipy.integrate.quad, which the library itself uses)."""
    nodes, weights = np.polynomial.legendre.leggauss(n)
    total = 0.0
    edges = np.linspace(a, b, pieces + 1)
    for lo, hi in zip(edges[:-1], edges[1:]):
        mid = 0.5 * (lo + hi)
        half = 0.5 * (hi - lo)
        total += half * np.sum(weights * np.array([f(mid + half * t) for t in nodes]))
    return total
