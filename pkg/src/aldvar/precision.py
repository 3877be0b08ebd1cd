"""Precision formulas for empirical quantile estimates.

Works in event counts; converting years to events (n = lam * years) is the
caller's business.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DomainError


@dataclass(frozen=True)
class PrecisionQuery:
    """Inputs for the quantile-precision formulas.

    ``n`` is the sample size (for the standard-deviation direction) and
    ``rel_err`` the target relative error, defined as twice the quantile
    standard deviation over the quantile (for the required-sample-size
    direction).
    """

    alpha: float
    density: float                 # pdf value at the quantile
    quantile: float | None = None
    n: int | None = None
    rel_err: float | None = None

    def __post_init__(self):
        if not 0.0 < self.alpha < 1.0:
            raise DomainError(f"alpha must be in (0,1), got {self.alpha}")
        if not self.density > 0.0:
            raise DomainError(f"density at the quantile must be positive, got {self.density}")


def quantile_stddev(query: PrecisionQuery) -> float:
    """sqrt(alpha (1-alpha)) / (f(q) sqrt(n))."""
    if query.n is None or query.n < 1:
        raise DomainError("quantile_stddev needs n >= 1")
    a = query.alpha
    return math.sqrt(a * (1.0 - a)) / (query.density * math.sqrt(query.n))


def required_n(query: PrecisionQuery) -> int:
    """Sample size achieving relative error rel_err: 4 a(1-a) / (eps^2 (f q)^2),
    rounded up. Feeding the result back into :func:`quantile_stddev` gives
    stddev = rel_err * quantile / 2 up to that rounding."""
    if query.rel_err is None or not query.rel_err > 0.0:
        raise DomainError("required_n needs rel_err > 0")
    if query.quantile is None or not query.quantile > 0.0:
        raise DomainError("required_n needs quantile > 0")
    a = query.alpha
    fq = query.density * query.quantile
    return math.ceil(4.0 * a * (1.0 - a) / (query.rel_err ** 2 * fq * fq))
