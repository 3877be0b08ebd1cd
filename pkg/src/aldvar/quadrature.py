"""Numeric integration of the limited expected value.

``mu_F(model, x)`` integrates the survival function of a severity model from
the support minimum L up to x. The integrand decays like a power law over many
decades for the heavy-tailed catalog, so the composite Simpson rule runs on a
log-warped coordinate s = L + c*(e^u - 1) with c set to the model's median
offset; on that grid the panel-doubling ladder reaches the stated tolerance in
a few thousand panels instead of exhausting the panel cap. Panel counts are
reported in the warped coordinate (a power of two times the initial count).

Results are memoized on the (model, x) pair; models are immutable and hashable.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .severity import Severity

REL_TOL = 1e-9
INIT_PANELS = 64
MAX_PANELS = 2 ** 22


@dataclass(frozen=True)
class IntegralResult:
    value: float
    est_error: float
    panels: int

    @property
    def converged(self) -> bool:
        return self.est_error <= REL_TOL * max(abs(self.value), 1e-300)


def mu_F(model: Severity, x: float) -> IntegralResult:
    """Limited expected value: integral of sf(s) ds over [support_min, x].

    Non-convergence at the panel cap is not an error; the last value is
    returned with ``est_error`` set and the caller decides.
    """
    L = model.support_min()
    if x < L:
        raise DomainError(f"mu_F requires x >= support minimum {L}, got {x}")
    if x == L:
        return IntegralResult(0.0, 0.0, 0)
    return _mu_f_cached(model, float(x))


@functools.lru_cache(maxsize=4096)
def _mu_f_cached(model: Severity, x: float) -> IntegralResult:
    L = model.support_min()
    c = model.quantile(0.5) - L
    if not (c > 0.0 and math.isfinite(c)):
        c = 1.0
    u_max = math.log1p((x - L) / c)

    def g(u: np.ndarray) -> np.ndarray:
        eu = np.exp(u)
        return model.sf_array(L + c * (eu - 1.0)) * c * eu

    # trapezoid doubling with Richardson combination == composite Simpson
    n = INIT_PANELS
    h = u_max / n
    fx = g(np.linspace(0.0, u_max, n + 1))
    trap = h * (fx.sum() - 0.5 * (fx[0] + fx[-1]))
    simpson = h / 3.0 * (fx[0] + fx[-1] + 4.0 * fx[1::2].sum() + 2.0 * fx[2:-1:2].sum())
    err = math.inf
    while n < MAX_PANELS:
        n *= 2
        h = u_max / n
        mids = g((2.0 * np.arange(n // 2) + 1.0) * h)
        trap_new = 0.5 * trap + h * mids.sum()
        simpson_new = (4.0 * trap_new - trap) / 3.0
        err = abs(simpson_new - simpson)
        trap, simpson = trap_new, simpson_new
        if err <= REL_TOL * abs(simpson):
            break
    return IntegralResult(simpson, err, n)


def clear_cache() -> None:
    _mu_f_cached.cache_clear()


def simpson_fixed(model: Severity, x: float, panels: int) -> float:
    """Composite Simpson at a fixed panel count on the same warped grid.

    Exposed for convergence-order diagnostics (halving the panel width should
    shrink the error roughly 16-fold on smooth integrands).
    """
    if panels % 2 or panels < 2:
        raise DomainError("panels must be even and >= 2")
    L = model.support_min()
    if x <= L:
        return 0.0
    c = model.quantile(0.5) - L
    if not (c > 0.0 and math.isfinite(c)):
        c = 1.0
    u_max = math.log1p((x - L) / c)
    grid = np.linspace(0.0, u_max, panels + 1)
    eu = np.exp(grid)
    vals = model.sf_array(L + c * (eu - 1.0)) * c * eu
    h = u_max / panels
    return h / 3.0 * (vals[0] + vals[-1] + 4.0 * vals[1::2].sum() + 2.0 * vals[2:-1:2].sum())
