"""Extreme quantiles of compound Poisson loss distributions.

Closed-form single-loss approximations (plain, interpolated, and
mid-anchored interpolated) over a heavy-tailed severity catalog, a seedable
Monte Carlo oracle with exact tail order statistics, generalized Pareto
maximum likelihood, quantile-precision formulas, and a benchmark harness.
"""

from .approx import (ApproxInputs, FIXED_ENDPOINTS, InterpolationConstants,
                     QuantileEstimate, c_xi, default_endpoints, isla, misla,
                     sla, sweep)
from .errors import ConvergenceError, DomainError, InterpolationError
from .fit import FitResult, gpd_loglik, gpd_loglik_grad, gpd_mle
from .montecarlo import (RngStream, SimConfig, SimResult, TailSketch,
                         estimate_var, poisson_draw, run_simulation,
                         simulate_year, simulate_years)
from .precision import PrecisionQuery, quantile_stddev, required_n
from .quadrature import IntegralResult, mu_F
from .severity import (BetaPrime, Frechet, GenPareto, InverseGamma,
                       InverseParalogistic, LeftTruncated, LogGamma,
                       LogLogistic, LogNormal, Paralogistic, Severity,
                       format_severity, parse_severity)

__version__ = "0.1.0"

__all__ = [
    "ApproxInputs", "BetaPrime", "ConvergenceError", "DomainError",
    "FIXED_ENDPOINTS", "FitResult", "Frechet", "GenPareto", "IntegralResult",
    "InterpolationConstants", "InterpolationError", "InverseGamma",
    "InverseParalogistic", "LeftTruncated", "LogGamma", "LogLogistic",
    "LogNormal", "Paralogistic", "PrecisionQuery", "QuantileEstimate",
    "RngStream", "Severity", "SimConfig", "SimResult", "TailSketch", "c_xi",
    "default_endpoints", "estimate_var", "format_severity", "gpd_loglik",
    "gpd_loglik_grad", "gpd_mle", "isla", "misla", "mu_F", "parse_severity",
    "poisson_draw", "quantile_stddev", "required_n", "run_simulation",
    "simulate_year", "simulate_years", "sla", "sweep",
]
