import math

import numpy as np
import pytest

from aldvar.errors import DomainError
from aldvar.precision import PrecisionQuery, quantile_stddev, required_n
from aldvar.severity import LogNormal


class TestQuantileStddev:
    def test_uniform_substitution(self):
        # unit density at the quantile, alpha = 0.999, n = 1e6
        q = PrecisionQuery(alpha=0.999, density=1.0, n=10 ** 6)
        assert quantile_stddev(q) == pytest.approx(3.160696125855822e-05, rel=1e-12)

    def test_quadrupling_n_halves_exactly(self):
        a = quantile_stddev(PrecisionQuery(alpha=0.999, density=0.37, n=1000))
        b = quantile_stddev(PrecisionQuery(alpha=0.999, density=0.37, n=4000))
        assert a == pytest.approx(2.0 * b, rel=1e-14)

    def test_zero_density_guarded(self):
        with pytest.raises(DomainError):
            PrecisionQuery(alpha=0.999, density=0.0, n=100)

    def test_needs_n(self):
        with pytest.raises(DomainError):
            quantile_stddev(PrecisionQuery(alpha=0.999, density=1.0))

    def test_simulation_oracle_lognormal(self):
        # empirical std of the 0.999 sample quantile over repeated samples
        model = LogNormal(10.0, 2.2)
        alpha, n, reps = 0.999, 10 ** 4, 500
        rng = np.random.default_rng(7_771)
        rank = math.ceil(alpha * n) - 1
        qs = np.empty(reps)
        for i in range(reps):
            x = model.quantile_array(rng.random(n) * (1 - 2e-12) + 1e-12)
            qs[i] = np.partition(x, rank)[rank]
        q_true = model.quantile(alpha)
        predicted = quantile_stddev(
            PrecisionQuery(alpha=alpha, density=model.pdf(q_true), n=n))
        assert np.std(qs, ddof=1) == pytest.approx(predicted, rel=0.15)


class TestRequiredN:
    def test_round_trip_identity(self):
        # 2 * stddev(required_n) / quantile == rel_err up to count rounding
        for alpha, f, q, eps in ((0.999, 0.0015, 2.0e7, 0.1),
                                 (0.9997, 3e-9, 9e7, 0.05),
                                 (0.95, 0.2, 10.0, 0.01)):
            n = required_n(PrecisionQuery(alpha=alpha, density=f, quantile=q, rel_err=eps))
            sd = quantile_stddev(PrecisionQuery(alpha=alpha, density=f, n=n))
            achieved = 2.0 * sd / q
            n_exact = 4.0 * alpha * (1 - alpha) / (eps * q * f) ** 2
            assert achieved == pytest.approx(eps * math.sqrt(n_exact / n), rel=1e-12)
            assert achieved <= eps  # ceiling can only tighten the precision

    def test_formula_value(self):
        # direct substitution (unit density and quantile ~ alpha for a uniform)
        n = required_n(PrecisionQuery(alpha=0.999, density=1.0, quantile=0.999,
                                      rel_err=0.1))
        assert n == math.ceil(4 * 0.999 * 0.001 / (0.01 * 0.999 ** 2))

    def test_monotone_in_rel_err_and_fq(self):
        base = PrecisionQuery(alpha=0.999, density=1e-9, quantile=1e6, rel_err=0.1)
        tighter = PrecisionQuery(alpha=0.999, density=1e-9, quantile=1e6, rel_err=0.05)
        denser = PrecisionQuery(alpha=0.999, density=2e-9, quantile=1e6, rel_err=0.1)
        assert required_n(tighter) > required_n(base)
        assert required_n(denser) < required_n(base)

    def test_needs_rel_err(self):
        with pytest.raises(DomainError):
            required_n(PrecisionQuery(alpha=0.999, density=1.0, quantile=1.0))

    def test_simulation_oracle_lognormal(self):
        # the computed n actually delivers ~10% relative error empirically
        model = LogNormal(10.0, 2.2)
        alpha, eps = 0.999, 0.1
        q = model.quantile(alpha)
        n = required_n(PrecisionQuery(alpha=alpha, density=model.pdf(q),
                                      quantile=q, rel_err=eps))
        rng = np.random.default_rng(889)
        reps = 200
        rank = math.ceil(alpha * n) - 1
        qs = np.empty(reps)
        for i in range(reps):
            x = model.quantile_array(rng.random(n) * (1 - 2e-12) + 1e-12)
            qs[i] = np.partition(x, rank)[rank]
        achieved = 2.0 * np.std(qs, ddof=1) / q
        assert achieved == pytest.approx(eps, rel=0.2)
