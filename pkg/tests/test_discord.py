import math

import numpy as np
import pytest

from gausslind.discord import (
    Regime,
    discord,
    discord_asymptotic,
    discord_from_particles,
    discord_pure,
    discord_squeezed,
    entropy_kernel,
    max_classical_info,
    mutual_information,
)
from gausslind.errors import DomainError
from gausslind.symplectic import (
    CovarianceBlock,
    SqueezingState,
    covariance_from_squeezing,
)

from conftest import random_block

LN2 = math.log(2.0)

# frozen 50-digit values of the exact closed form (mpmath, dps=50)
D_R1_LAM4 = 1.31118902714392746809932731989
D_R07_LAM25 = 0.632340846702067045795844446022


class TestEntropyKernel:
    def test_anchors(self):
        assert entropy_kernel(1.0) == 0.0
        assert abs(entropy_kernel(3.0) - 2.0) < 1e-14
        assert abs(entropy_kernel(2.0) - 1.3774437510817343) < 1e-14

    def test_domain(self):
        with pytest.raises(DomainError):
            entropy_kernel(0.9)
        assert entropy_kernel(1.0 - 1e-10) == 0.0

    def test_large_argument_crossover(self):
        # value frozen from 50-digit arithmetic
        assert abs(entropy_kernel(1e6) - 20.374263610212897) < 1e-12
        lo = entropy_kernel(1e6 * (1 - 1e-9))
        hi = entropy_kernel(1e6 * (1 + 1e-9))
        assert abs(hi - lo) < 1e-7  # continuous across the switch

    def test_monotone(self):
        xs = np.geomspace(1.0 + 1e-12, 1e12, 200)
        vals = [entropy_kernel(float(x)) for x in xs]
        assert all(b >= a for a, b in zip(vals, vals[1:]))


class TestDiscordExact:
    def test_zero_in_reference_partition(self, rng):
        for _ in range(200):
            b = random_block(rng)
            assert discord(b, 0.0).discord < 1e-12

    def test_pure_state_reduces_to_kernel(self, rng):
        for _ in range(50):
            r = rng.uniform(0.0, 4.0)
            phi = rng.uniform(-1.5, 1.5)
            theta = rng.uniform(-math.pi, math.pi)
            b = covariance_from_squeezing(SqueezingState(r, phi, 1.0))
            st = math.sqrt(max(b.det, 1.0) * math.cos(2 * theta) ** 2
                           + (0.5 * (b.g11 + b.g22)) ** 2 * math.sin(2 * theta) ** 2)
            want = entropy_kernel(st)
            assert abs(discord(b, theta).discord - want) < 1e-12 * max(1.0, want)

    def test_mixed_state_frozen_oracle(self):
        b = covariance_from_squeezing(SqueezingState(1.0, 0.0, 4.0))
        got = discord(b, -math.pi / 4)
        assert abs(got.discord - D_R1_LAM4) < 1e-12
        got2 = discord_squeezed(0.7, 2.5, 0.4)
        assert abs(got2.discord - D_R07_LAM25) < 1e-12

    def test_log_domain_matches_block_domain(self, rng):
        for _ in range(30):
            r = rng.uniform(0.01, 5.0)
            lam = rng.uniform(1.0, 1e4)
            theta = rng.uniform(-math.pi, math.pi)
            b = covariance_from_squeezing(SqueezingState(r, 0.3, lam))
            d1 = discord(b, theta).discord
            d2 = discord_squeezed(r, lam, theta).discord
            assert abs(d1 - d2) < 1e-9 * max(1.0, d1)

    def test_extreme_squeezing_no_overflow(self):
        res = discord_squeezed(300.0, 1e200, -math.pi / 4)
        assert math.isfinite(res.discord) and res.discord > 0.0
        assert math.isfinite(res.log_sigma_theta)


class TestDiscordPure:
    def test_zeros(self):
        assert discord_pure(2.0, 0.0) == 0.0
        assert discord_pure(0.0, 1.1) == 0.0

    def test_formula_across_r(self):
        for r in np.linspace(0.0, 30.0, 31):
            want = entropy_kernel(math.sqrt(
                1.0 + math.sinh(2 * r) ** 2 * math.sin(-math.pi / 2) ** 2))
            assert abs(discord_pure(float(r), -math.pi / 4) - want) < 1e-10 * max(1, want)

    def test_leading_order_large_r(self):
        # 2r/ln2 to leading order; the exact value carries a -(2 - 1/ln2)
        # offset that the asymptotic regime ignores
        got = discord_pure(50.0, math.pi / 4)
        assert abs(got - 2.0 * 50.0 / LN2) < 1.0
        # fifty e-folds of the inflationary attractor mean r = 100, which
        # is where the often-quoted ~290 bits ("order 300") comes from
        assert abs(discord_pure(100.0, math.pi / 4) - 4.0 * 50.0 / LN2) < 1.0


class TestMutualInformationAndJ:
    def test_zero_at_reference(self, rng):
        for _ in range(20):
            b = random_block(rng)
            assert abs(mutual_information(b, 0.0)) < 1e-12
            assert abs(max_classical_info(b, 0.0)) < 1e-12

    def test_pure_state_doubling(self, rng):
        for _ in range(20):
            b = covariance_from_squeezing(
                SqueezingState(rng.uniform(0.1, 3.0), rng.uniform(-1, 1), 1.0))
            theta = rng.uniform(-1.5, 1.5)
            i = mutual_information(b, theta)
            d = discord(b, theta).discord
            assert abs(i - 2.0 * d) < 1e-10 * max(1.0, i)
            j = max_classical_info(b, theta)
            assert abs(j - d) < 1e-10 * max(1.0, d)  # J = f(sigma) - f(1)

    def test_balanced_mixed_state(self):
        b = CovarianceBlock(2.0, 0.0, 2.0)
        assert abs(mutual_information(b, math.pi / 4)) < 1e-12

    def test_difference_is_discord(self, rng):
        for _ in range(100):
            b = random_block(rng)
            theta = rng.uniform(-math.pi, math.pi)
            i = mutual_information(b, theta)
            j = max_classical_info(b, theta)
            d = discord(b, theta).discord
            assert abs((i - j) - d) < 1e-12 * max(1.0, abs(i), abs(d))


class TestAsymptotics:
    def test_high_squeezing_regime(self):
        res = discord_asymptotic(20.0, 1.0, math.pi / 4)
        assert res.regime is Regime.LARGE_SQUEEZING_HIGH
        exact = discord_squeezed(20.0, 1.0, math.pi / 4).discord
        assert abs(res.discord - exact) / exact < 0.05

    def test_low_squeezing_regime(self):
        lam = math.exp(40.0)
        res = discord_asymptotic(5.0, lam, math.pi / 4)
        assert res.regime is Regime.LARGE_SQUEEZING_LOW
        exact = discord_squeezed(5.0, lam, math.pi / 4).discord
        assert abs(res.discord - exact) / exact < 0.10

    def test_crossover_falls_back_to_exact(self):
        lam = math.exp(4.0 * 6.0)  # ratio ~ 1
        res = discord_asymptotic(6.0, lam, math.pi / 4)
        assert res.regime is Regime.EXACT

    def test_suppression_criterion(self):
        # purity << e^{-4r} marks where decoherence wins: discord across
        # the boundary drops by orders of magnitude
        r = 8.0
        strong = discord_squeezed(r, math.exp(4 * r + 6), -math.pi / 4).discord
        weak = discord_squeezed(r, math.exp(4 * r - 6), -math.pi / 4).discord
        assert strong < 0.1 * weak

    def test_validity_floor(self):
        with pytest.raises(DomainError):
            discord_asymptotic(2.0, 1.0, 0.4)


class TestInvariants:
    def test_periodicity_and_symmetry(self, rng):
        for _ in range(10):
            b = random_block(rng)
            theta = rng.uniform(-1.0, 1.0)
            d0 = discord(b, theta).discord
            assert abs(discord(b, theta + math.pi / 2).discord - d0) < 1e-10 * max(1, d0)
            assert abs(discord(b, math.pi / 2 - theta).discord - d0) < 1e-10 * max(1, d0)

    def test_maximal_at_quarter_pi(self, rng):
        for _ in range(10):
            b = random_block(rng)
            dmax = discord(b, -math.pi / 4).discord
            for theta in np.linspace(-math.pi, math.pi, 21):
                assert discord(b, float(theta)).discord <= dmax * (1 + 1e-12) + 1e-12

    def test_particle_number_formula(self, rng):
        # r <= 2: beyond that the determinant noise of the stored block
        # (e^{4r} eps) exceeds the 1e-12 agreement being asserted
        for _ in range(20):
            b = covariance_from_squeezing(
                SqueezingState(rng.uniform(0.05, 2.0), rng.uniform(-1, 1), 1.0))
            theta = rng.uniform(-1.5, 1.5)
            d1 = discord(b, theta).discord
            d2 = discord_from_particles(b, theta)
            assert abs(d1 - d2) < 1e-12 * max(1.0, d1)

    def test_monotone_in_lam(self):
        for r in (0.5, 2.0, 10.0):
            prev = math.inf
            for lam in np.geomspace(1.0, 1e6, 13):
                d = discord_squeezed(r, float(lam), -math.pi / 4).discord
                assert d <= prev * (1 + 1e-12)
                prev = d
