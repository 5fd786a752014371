"""Deterministic random streams, tent-map initialization, and OU paths."""

import math

import numpy as np
import pytest
from scipy.stats import chi2

from pirtemp.rng import (
    OUParams,
    RngStream,
    ou_index,
    ou_path,
    tent_init,
    tent_next,
)

UNIT = (np.zeros(1), np.ones(1))


# ---------------------------------------------------------------------------
# RngStream
# ---------------------------------------------------------------------------


class TestRngStream:
    def test_same_seed_same_draws(self):
        a = RngStream(123).random(16)
        b = RngStream(123).random(16)
        assert np.array_equal(a, b)

    def test_different_seeds_differ(self):
        a = RngStream(1).random(16)
        b = RngStream(2).random(16)
        assert not np.array_equal(a, b)

    def test_child_seed_regression(self):
        # Frozen values: derivation is SHA-256 of "{seed:016x}/{label}",
        # first 8 bytes big-endian.  A change here silently breaks every
        # stored artifact, so the exact integers are pinned.
        assert RngStream(0).child_seed("alpha") == 5798832583503726131
        assert RngStream(42).child_seed("run0007") == 6117644139540591782

    def test_child_seed_matches_hash_derivation(self):
        import hashlib

        seed, label = 7, "branch"
        digest = hashlib.sha256(f"{seed:016x}/{label}".encode()).digest()
        expected = int.from_bytes(digest[:8], "big")
        assert RngStream(seed).child_seed(label) == expected

    def test_child_labels_independent(self):
        root = RngStream(5)
        a = root.split("left").random(8)
        b = root.split("right").random(8)
        assert not np.array_equal(a, b)

    def test_split_does_not_advance_parent(self):
        one = RngStream(9)
        one.split("x")
        two = RngStream(9)
        assert np.array_equal(one.random(4), two.random(4))

    def test_first_draws_regression(self):
        got = RngStream(12345).random(3)
        want = [0.6463801884227345, 0.7742675977164786, 0.7864362639285933]
        assert got == pytest.approx(want, rel=0, abs=1e-15)

    def test_uniform_bounds_and_shape(self):
        u = RngStream(3).uniform(-2.0, 5.0, size=(40, 3))
        assert u.shape == (40, 3)
        assert np.all(u >= -2.0) and np.all(u < 5.0)

    def test_normal_moments(self):
        z = RngStream(11).normal(size=200_000)
        assert abs(z.mean()) < 0.01
        assert abs(z.std() - 1.0) < 0.01

    def test_integers_range(self):
        k = RngStream(4).integers(0, 7, size=1000)
        assert set(np.unique(k)) <= set(range(7))

    def test_shuffled_indices_is_permutation(self):
        p = RngStream(8).shuffled_indices(50)
        assert sorted(p.tolist()) == list(range(50))

    def test_invalid_seed_rejected(self):
        with pytest.raises(ValueError):
            RngStream(-1)
        with pytest.raises(ValueError):
            RngStream(2**64)


# ---------------------------------------------------------------------------
# tent map
# ---------------------------------------------------------------------------


class TestTentMap:
    @pytest.mark.parametrize(
        "x, want",
        [(0.3, 0.6), (0.6, 0.8), (0.25, 0.5), (0.5, 1.0), (0.0, 0.0), (1.0, 0.0)],
    )
    def test_tent_next_values(self, x, want):
        assert tent_next(x) == pytest.approx(want, rel=0, abs=1e-15)

    def test_tent_next_rejects_outside_unit_interval(self):
        with pytest.raises(ValueError):
            tent_next(-0.1)
        with pytest.raises(ValueError):
            tent_next(1.1)

    def test_tent_init_shape_and_bounds(self):
        low = np.array([0.0, -5.0, 100.0])
        high = np.array([1.0, 5.0, 100.0])  # degenerate third column allowed
        u = tent_init(200, 3, (low, high), RngStream(1))
        assert u.shape == (200, 3)
        assert np.all(u >= low) and np.all(u <= high)
        assert np.all(u[:, 2] == 100.0)

    def test_tent_init_deterministic(self):
        a = tent_init(64, 4, UNIT, RngStream(6))
        b = tent_init(64, 4, (np.zeros(1), np.ones(1)), RngStream(6))
        assert np.array_equal(a, b)

    def test_tent_init_columns_differ(self):
        u = tent_init(128, 2, (np.zeros(2), np.ones(2)), RngStream(2))
        assert not np.array_equal(u[:, 0], u[:, 1])

    def test_tent_init_validates_arguments(self):
        with pytest.raises(ValueError):
            tent_init(-1, 2, UNIT, RngStream(0))
        with pytest.raises(ValueError):
            tent_init(4, 0, UNIT, RngStream(0))
        with pytest.raises(ValueError):
            tent_init(4, 1, (np.ones(1), np.zeros(1)), RngStream(0))

    @staticmethod
    def _chi_square_stat(seed: int, n: int = 100_000, bins: int = 20) -> float:
        x = tent_init(n, 1, UNIT, RngStream(seed))[:, 0]
        counts, _ = np.histogram(x, bins=bins, range=(0.0, 1.0))
        expected = n / bins
        return float(((counts - expected) ** 2 / expected).sum())

    def test_uniformity_chi_square_pinned_seeds(self):
        # 20 equal bins over [0,1), 1e5 draws, alpha=0.01 -> critical 36.19.
        crit = chi2.ppf(0.99, 19)
        for seed in (0, 1, 42):
            assert self._chi_square_stat(seed) < crit, f"seed {seed}"

    def test_uniformity_chi_square_seed_batch_median(self):
        # Individual seeds can land in the statistic's tail; the median over a
        # seed batch must sit well below the critical value.
        crit = chi2.ppf(0.99, 19)
        stats = [self._chi_square_stat(seed) for seed in range(10)]
        assert float(np.median(stats)) < 0.75 * crit

    def test_no_sticky_values(self):
        # The raw tent map decays onto dyadic grids in float arithmetic; the
        # generator must reseed before that shows up as repeated values.
        x = tent_init(10_000, 1, UNIT, RngStream(3))[:, 0]
        _, counts = np.unique(x, return_counts=True)
        assert counts.max() <= 3


# ---------------------------------------------------------------------------
# Ornstein-Uhlenbeck paths
# ---------------------------------------------------------------------------


class TestOUPath:
    def test_params_defaults_and_stationary_std(self):
        p = OUParams()
        assert (p.theta, p.mu, p.sigma, p.dt, p.length) == (0.5, 0.0, 0.08, 0.1, 1000)
        assert p.stationary_std() == pytest.approx(
            p.sigma / math.sqrt(2.0 * p.theta), rel=0, abs=1e-15
        )

    def test_params_validation(self):
        with pytest.raises(ValueError):
            OUParams(theta=-0.5)
        with pytest.raises(ValueError):
            OUParams(sigma=-0.1)
        with pytest.raises(ValueError):
            OUParams(dt=0.0)
        with pytest.raises(ValueError):
            OUParams(length=0)

    def test_zero_reversion_has_no_stationary_distribution(self):
        # theta = 0 is a legal process (a pure random walk) but it has no
        # stationary distribution to report.
        p = OUParams(theta=0.0)
        with pytest.raises(ValueError):
            p.stationary_std()

    def test_path_starts_at_mean_by_default(self):
        p = OUParams(length=5)
        path = ou_path(p, RngStream(1))
        assert path.shape == (5,)
        assert path[0] == p.mu

    def test_path_x0_override(self):
        path = ou_path(OUParams(length=3), RngStream(1), x0=0.7)
        assert path[0] == 0.7

    def test_path_matches_euler_recurrence(self):
        # Rebuild the path from the documented update rule using the same
        # normal draws; values must agree exactly.
        p = OUParams(length=50)
        path = ou_path(p, RngStream(5))
        z = RngStream(5).normal(size=p.length - 1)
        x = p.mu
        manual = [x]
        for k in range(p.length - 1):
            x = x + p.theta * (p.mu - x) * p.dt + p.sigma * math.sqrt(p.dt) * z[k]
            manual.append(x)
        assert path == pytest.approx(manual, rel=0, abs=0)

    def test_path_first_values_regression(self):
        path = ou_path(OUParams(length=3), RngStream(5))
        assert path == pytest.approx(
            [0.0, 0.03637310034891786, 0.055706481847877645], rel=0, abs=1e-15
        )

    def test_long_run_statistics(self):
        p = OUParams(length=1_000_000)
        path = ou_path(p, RngStream(99))
        target = p.stationary_std()
        assert abs(float(path.std()) - target) / target < 0.05
        sign_changes = int(np.sum(np.sign(path[1:]) * np.sign(path[:-1]) < 0))
        assert sign_changes >= p.length // 10_000

    def test_mean_reversion(self):
        p = OUParams(length=200_000)
        path = ou_path(p, RngStream(17), x0=1.0)
        # After many reversion times the start is forgotten.
        assert abs(float(path[-50_000:].mean()) - p.mu) < 0.01


class TestOUIndex:
    @pytest.mark.parametrize(
        "t, m, c1, t_max, n, want",
        [
            (1, 1, 1000, 50, 20, 1),
            (25, 10, 1000, 50, 20, 250),
            (50, 20, 1000, 50, 20, 999),  # clamped to the last valid index
            (1, 1, 10, 1, 1, 9),
        ],
    )
    def test_values(self, t, m, c1, t_max, n, want):
        assert ou_index(t, m, c1, t_max, n) == want

    def test_range_over_full_sweep(self):
        c1, t_max, n = 1000, 50, 20
        seen = {
            ou_index(t, m, c1, t_max, n)
            for t in range(1, t_max + 1)
            for m in range(1, n + 1)
        }
        assert min(seen) >= 0 and max(seen) <= c1 - 1

    def test_validation(self):
        with pytest.raises(ValueError):
            ou_index(0, 1, 10, 5, 2)
        with pytest.raises(ValueError):
            ou_index(1, 0, 10, 5, 2)
        with pytest.raises(ValueError):
            ou_index(1, 1, 0, 5, 2)
