import math

import numpy as np
import pytest

from aldvar import montecarlo as mc
from aldvar.errors import DomainError
from aldvar.fit import gpd_loglik, gpd_loglik_grad, gpd_mle
from aldvar.severity import GenPareto


def draws(xi, theta, n, seed=0, stream=0):
    return GenPareto(xi, theta).quantile_array(mc.RngStream(seed, stream).uniforms(n))


class TestGpdMle:
    def test_consistency_large_sample(self):
        x = draws(0.85, 4954.245, 50_000, seed=1)
        fit = gpd_mle(x)
        assert fit.converged
        assert abs(fit.xi - 0.85) < 0.02
        assert abs(fit.theta / 4954.245 - 1.0) < 0.03

    def test_repeated_seeds_stay_close(self):
        for seed in range(5):
            fit = gpd_mle(draws(0.85, 4954.245, 50_000, seed=seed))
            assert abs(fit.xi - 0.85) < 0.02, seed

    def test_exponential_boundary(self):
        x = draws(0.0, 1000.0, 10_000, seed=3)
        fit = gpd_mle(x)
        assert fit.xi < 0.05

    def test_loglik_beats_random_admissible_points(self, rng):
        x = draws(0.85, 4954.245, 2_000, seed=4)
        fit = gpd_mle(x)
        for _ in range(20):
            xi = float(rng.uniform(0.0, 2.0))
            theta = float(rng.uniform(500.0, 50_000.0))
            assert fit.loglik >= gpd_loglik(x, xi, theta) - 1e-9

    def test_local_maximum(self):
        x = draws(0.85, 4954.245, 5_000, seed=5)
        fit = gpd_mle(x)
        base = fit.loglik
        for dxi in (-1e-4, 1e-4):
            assert gpd_loglik(x, fit.xi * (1 + dxi), fit.theta) <= base + 1e-9
        for dth in (-1e-4, 1e-4):
            assert gpd_loglik(x, fit.xi, fit.theta * (1 + dth)) <= base + 1e-9

    def test_scale_equivariance(self):
        x = draws(0.85, 4954.245, 5_000, seed=6)
        f1 = gpd_mle(x)
        f2 = gpd_mle(1000.0 * x)
        assert f2.xi == pytest.approx(f1.xi, abs=1e-6)
        assert f2.theta == pytest.approx(1000.0 * f1.theta, rel=1e-6)

    def test_degenerate_sample_flagged(self):
        fit = gpd_mle(np.full(100, 7.0))
        assert not fit.converged
        assert "degenerate" in fit.note

    def test_validation(self):
        with pytest.raises(DomainError):
            gpd_mle(np.ones(5))
        with pytest.raises(DomainError):
            gpd_mle(np.array([1.0] * 20 + [-2.0]))

    def test_constrained_mode_clamps(self):
        # heavy draws under a binding xi <= 1 constraint pin to the boundary
        x = draws(1.4, 4954.245, 20_000, seed=7)
        fit = gpd_mle(x, max_xi=1.0)
        assert fit.xi == pytest.approx(1.0, abs=1e-3)
        assert fit.clamped

    def test_small_sample_runs(self):
        fit = gpd_mle(draws(0.85, 4954.245, 250, seed=8))
        assert fit.converged
        assert 0.0 <= fit.xi <= 2.0
        assert fit.iterations > 0


class TestGradient:
    def test_matches_finite_differences(self, rng):
        x = draws(0.85, 4954.245, 1_000, seed=9)
        for _ in range(10):
            xi = float(rng.uniform(0.2, 1.8))
            theta = float(rng.uniform(1000.0, 20_000.0))
            g_xi, g_theta = gpd_loglik_grad(x, xi, theta)
            h = 1e-6
            fd_xi = (gpd_loglik(x, xi + h * xi, theta) -
                     gpd_loglik(x, xi - h * xi, theta)) / (2 * h * xi)
            fd_theta = (gpd_loglik(x, xi, theta + h * theta) -
                        gpd_loglik(x, xi, theta - h * theta)) / (2 * h * theta)
            assert g_xi == pytest.approx(fd_xi, rel=1e-6, abs=1e-8)
            assert g_theta == pytest.approx(fd_theta, rel=1e-6, abs=1e-8)

    def test_gradient_near_zero_at_mle(self):
        x = draws(0.85, 4954.245, 5_000, seed=10)
        fit = gpd_mle(x)
        g_xi, g_theta = gpd_loglik_grad(x, fit.xi, fit.theta)
        # scale-free stationarity measure
        assert abs(g_xi * fit.xi) / x.size < 1e-5
        assert abs(g_theta * fit.theta) / x.size < 1e-5

    def test_domain(self):
        with pytest.raises(DomainError):
            gpd_loglik_grad(np.ones(10), 0.0, 1.0)
