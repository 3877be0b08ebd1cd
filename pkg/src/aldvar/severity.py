"""Heavy-tailed severity catalog.

Twelve configurations built from nine two-parameter families, three of which
support left truncation at a data-collection threshold H (conditioning on
X > H). Every model exposes density, distribution and survival functions,
a quantile (and inverse-survival) map, the analytic mean, the regular-variation
tail index, and inverse-transform sampling. Scalar paths run on the in-house
kernels in :mod:`aldvar.specfun`; the ``*_array`` methods are the vectorized
lane (numpy + scipy.special) used by the Monte Carlo engine and the quadrature.

Models are immutable and hashable; parameter validation happens eagerly at
construction.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, replace

import numpy as np
from scipy import special as _sp

from . import specfun as sf
from .errors import DomainError

_SQRT_2PI = math.sqrt(2.0 * math.pi)
_SQRT2 = math.sqrt(2.0)


@dataclass(frozen=True)
class Severity:
    """Base class for catalog severities. Concrete families override the math."""

    # ----- contract surface ------------------------------------------------
    def pdf(self, x: float) -> float:
        raise NotImplementedError

    def cdf(self, x: float) -> float:
        raise NotImplementedError

    def sf(self, x: float) -> float:
        """Survival function 1 - cdf(x), computed without cancellation."""
        raise NotImplementedError

    def quantile(self, p: float) -> float:
        """Inverse cdf. p = 1 maps to +inf (all catalog supports are unbounded)."""
        if not 0.0 <= p <= 1.0:
            raise DomainError(f"quantile requires 0 <= p <= 1, got {p}")
        if p == 1.0:
            return math.inf
        return self._quantile(p)

    def isf(self, s: float) -> float:
        """Inverse survival function: x with sf(x) = s."""
        if not 0.0 < s <= 1.0:
            raise DomainError(f"isf requires 0 < s <= 1, got {s}")
        return self._isf(s)

    def mean(self) -> float:
        """Analytic mean; +inf when the finite-mean condition fails."""
        raise NotImplementedError

    def tail_index(self) -> float | None:
        """Regular-variation tail index, or None for log-normal types."""
        raise NotImplementedError

    def with_tail_index(self, xi: float) -> "Severity":
        """Copy with the tail-governing parameter re-set so tail_index == xi."""
        if not xi > 0.0:
            raise DomainError(f"with_tail_index requires xi > 0, got {xi}")
        return self._retail(xi)

    def sample(self, u: float) -> float:
        """Inverse-transform draw from a uniform u in the open interval (0,1)."""
        if not 0.0 < u < 1.0:
            raise DomainError(f"sample requires 0 < u < 1, got {u}")
        return self.quantile(u)

    def support_min(self) -> float:
        return 0.0

    @property
    def tag(self) -> str:
        raise NotImplementedError

    # ----- vectorized lane (scipy-backed) ----------------------------------
    def sf_array(self, x: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    def quantile_array(self, p: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    # ----- family internals -------------------------------------------------
    def _quantile(self, p: float) -> float:
        raise NotImplementedError

    def _isf(self, s: float) -> float:
        raise NotImplementedError

    def _retail(self, xi: float) -> "Severity":
        raise DomainError(f"{self.tag} has no tail index to adjust")


def _require(cond: bool, msg: str) -> None:
    if not cond:
        raise DomainError(msg)


# ---------------------------------------------------------------------------
# families
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class BetaPrime(Severity):
    """Beta distribution of the second kind; x/(1+x) is Beta(alpha, beta)."""

    alpha: float
    beta: float

    def __post_init__(self):
        _require(self.alpha > 0 and self.beta > 0,
                 f"BetaPrime requires alpha, beta > 0, got ({self.alpha}, {self.beta})")

    tag = "BETAP"

    def pdf(self, x: float) -> float:
        if x <= 0.0:
            return 0.0
        lg = ((self.alpha - 1.0) * math.log(x)
              - (self.alpha + self.beta) * math.log1p(x)
              - (sf.ln_gamma(self.alpha) + sf.ln_gamma(self.beta)
                 - sf.ln_gamma(self.alpha + self.beta)))
        return math.exp(lg)

    def cdf(self, x: float) -> float:
        if x <= 0.0:
            return 0.0
        return sf.reg_inc_beta(x / (1.0 + x), self.alpha, self.beta)

    def sf(self, x: float) -> float:
        if x <= 0.0:
            return 1.0
        # I_z(a,b) complement via symmetry, evaluated at the small argument
        return sf.reg_inc_beta(1.0 / (1.0 + x), self.beta, self.alpha)

    def _quantile(self, p: float) -> float:
        if p == 0.0:
            return 0.0
        if p <= 0.5:
            z = sf.inv_reg_inc_beta(p, self.alpha, self.beta)
            return z / (1.0 - z)
        w = sf.inv_reg_inc_beta(1.0 - p, self.beta, self.alpha)  # = 1 - z
        return (1.0 - w) / w

    def _isf(self, s: float) -> float:
        w = sf.inv_reg_inc_beta(s, self.beta, self.alpha)
        return (1.0 - w) / w

    def mean(self) -> float:
        return self.alpha / (self.beta - 1.0) if self.beta > 1.0 else math.inf

    def tail_index(self) -> float:
        return 1.0 / self.beta

    def _retail(self, xi: float) -> "BetaPrime":
        return replace(self, beta=1.0 / xi)

    def sf_array(self, x):
        x = np.asarray(x, dtype=float)
        return np.where(x > 0.0, _sp.betainc(self.beta, self.alpha, 1.0 / (1.0 + np.maximum(x, 0.0))), 1.0)

    def quantile_array(self, p):
        p = np.asarray(p, dtype=float)
        lowp = np.minimum(p, 0.5)
        z = _sp.betaincinv(self.alpha, self.beta, lowp)
        low = z / (1.0 - z)
        w = _sp.betaincinv(self.beta, self.alpha, np.where(p > 0.5, 1.0 - p, 0.5))
        high = (1.0 - w) / w
        return np.where(p > 0.5, high, low)


@dataclass(frozen=True)
class Frechet(Severity):
    """Inverse Weibull / type II extreme value distribution."""

    a: float
    b: float

    def __post_init__(self):
        _require(self.a > 0 and self.b > 0,
                 f"Frechet requires a, b > 0, got ({self.a}, {self.b})")

    tag = "FRCH"

    def pdf(self, x: float) -> float:
        if x <= 0.0:
            return 0.0
        r = self.b / x
        return (self.a / self.b) * r ** (self.a + 1.0) * math.exp(-(r ** self.a))

    def cdf(self, x: float) -> float:
        if x <= 0.0:
            return 0.0
        return math.exp(-((self.b / x) ** self.a))

    def sf(self, x: float) -> float:
        if x <= 0.0:
            return 1.0
        return -math.expm1(-((self.b / x) ** self.a))

    def _quantile(self, p: float) -> float:
        if p == 0.0:
            return 0.0
        return self.b * (-math.log(p)) ** (-1.0 / self.a)

    def _isf(self, s: float) -> float:
        # sf = -expm1(-(b/x)^a)  =>  (b/x)^a = -log1p(-s)
        return self.b * (-math.log1p(-s)) ** (-1.0 / self.a)

    def mean(self) -> float:
        return self.b * sf.gamma(1.0 - 1.0 / self.a) if self.a > 1.0 else math.inf

    def tail_index(self) -> float:
        return 1.0 / self.a

    def _retail(self, xi: float) -> "Frechet":
        return replace(self, a=1.0 / xi)

    def sf_array(self, x):
        x = np.asarray(x, dtype=float)
        out = np.ones_like(x)
        pos = x > 0.0
        out[pos] = -np.expm1(-((self.b / x[pos]) ** self.a))
        return out

    def quantile_array(self, p):
        p = np.asarray(p, dtype=float)
        return self.b * (-np.log(p)) ** (-1.0 / self.a)


_GPD_XI_TINY = 1e-12   # below this the exponential limit is exact to 1 ulp


@dataclass(frozen=True)
class GenPareto(Severity):
    """Generalized Pareto with xi >= 0 (xi = 0 is the exponential limit)."""

    xi: float
    theta: float

    def __post_init__(self):
        _require(self.xi >= 0.0, f"GenPareto requires xi >= 0, got {self.xi}")
        _require(self.theta > 0.0, f"GenPareto requires theta > 0, got {self.theta}")

    tag = "GPD"

    @property
    def _exponential(self) -> bool:
        return self.xi < _GPD_XI_TINY

    def pdf(self, x: float) -> float:
        if x < 0.0:
            return 0.0
        if self._exponential:
            return math.exp(-x / self.theta) / self.theta
        return (1.0 + self.xi * x / self.theta) ** (-1.0 / self.xi - 1.0) / self.theta

    def cdf(self, x: float) -> float:
        return 1.0 - self.sf(x)

    def sf(self, x: float) -> float:
        if x <= 0.0:
            return 1.0
        if self._exponential:
            return math.exp(-x / self.theta)
        return math.exp(-math.log1p(self.xi * x / self.theta) / self.xi)

    def _quantile(self, p: float) -> float:
        if p == 0.0:
            return 0.0
        if self._exponential:
            return -self.theta * math.log1p(-p)
        return self.theta / self.xi * math.expm1(-self.xi * math.log1p(-p))

    def _isf(self, s: float) -> float:
        if self._exponential:
            return -self.theta * math.log(s)
        return self.theta / self.xi * math.expm1(-self.xi * math.log(s))

    def mean(self) -> float:
        return self.theta / (1.0 - self.xi) if self.xi < 1.0 else math.inf

    def tail_index(self) -> float:
        return self.xi

    def _retail(self, xi: float) -> "GenPareto":
        return replace(self, xi=xi)

    def sf_array(self, x):
        x = np.maximum(np.asarray(x, dtype=float), 0.0)
        if self._exponential:
            return np.exp(-x / self.theta)
        return np.exp(-np.log1p(self.xi * x / self.theta) / self.xi)

    def quantile_array(self, p):
        p = np.asarray(p, dtype=float)
        if self._exponential:
            return -self.theta * np.log1p(-p)
        return self.theta / self.xi * np.expm1(-self.xi * np.log1p(-p))


@dataclass(frozen=True)
class InverseGamma(Severity):
    """Reciprocal of a gamma variate; CDF is the upper incomplete gamma."""

    a: float
    b: float

    def __post_init__(self):
        _require(self.a > 0 and self.b > 0,
                 f"InverseGamma requires a, b > 0, got ({self.a}, {self.b})")

    tag = "IGAM"

    def pdf(self, x: float) -> float:
        if x <= 0.0:
            return 0.0
        lg = (self.a * math.log(self.b) - sf.ln_gamma(self.a)
              - (self.a + 1.0) * math.log(x) - self.b / x)
        return math.exp(lg)

    def cdf(self, x: float) -> float:
        if x <= 0.0:
            return 0.0
        return sf.reg_inc_gamma_upper(self.a, self.b / x)

    def sf(self, x: float) -> float:
        if x <= 0.0:
            return 1.0
        return sf.reg_inc_gamma_lower(self.a, self.b / x)

    def _quantile(self, p: float) -> float:
        if p == 0.0:
            return 0.0
        return self.b / sf.inv_reg_inc_gamma(self.a, p, upper=True)

    def _isf(self, s: float) -> float:
        return self.b / sf.inv_reg_inc_gamma(self.a, s, upper=False)

    def mean(self) -> float:
        return self.b / (self.a - 1.0) if self.a > 1.0 else math.inf

    def tail_index(self) -> float:
        return 1.0 / self.a

    def _retail(self, xi: float) -> "InverseGamma":
        return replace(self, a=1.0 / xi)

    def sf_array(self, x):
        x = np.asarray(x, dtype=float)
        out = np.ones_like(x)
        pos = x > 0.0
        out[pos] = _sp.gammainc(self.a, self.b / x[pos])
        return out

    def quantile_array(self, p):
        p = np.asarray(p, dtype=float)
        return self.b / _sp.gammainccinv(self.a, p)


@dataclass(frozen=True)
class InverseParalogistic(Severity):
    """Inverse Burr with both shape parameters equal to a."""

    a: float
    b: float

    def __post_init__(self):
        _require(self.a > 0 and self.b > 0,
                 f"InverseParalogistic requires a, b > 0, got ({self.a}, {self.b})")

    tag = "IPARA"

    def pdf(self, x: float) -> float:
        if x <= 0.0:
            return 0.0
        a, b = self.a, self.b
        lg = (2.0 * math.log(a) + (a * a - 1.0) * math.log(x) - a * a * math.log(b)
              - (a + 1.0) * math.log1p((x / b) ** a))
        return math.exp(lg)

    def cdf(self, x: float) -> float:
        if x <= 0.0:
            return 0.0
        return math.exp(-self.a * math.log1p((self.b / x) ** self.a))

    def sf(self, x: float) -> float:
        if x <= 0.0:
            return 1.0
        return -math.expm1(-self.a * math.log1p((self.b / x) ** self.a))

    def _quantile(self, p: float) -> float:
        if p == 0.0:
            return 0.0
        return self.b * math.expm1(-math.log(p) / self.a) ** (-1.0 / self.a)

    def _isf(self, s: float) -> float:
        # cdf = (1+(b/x)^a)^-a  =>  (b/x)^a = expm1(-log(1-s)/a)
        return self.b * math.expm1(-math.log1p(-s) / self.a) ** (-1.0 / self.a)

    def mean(self) -> float:
        if self.a <= 1.0:
            return math.inf
        a = self.a
        return self.b * math.exp(sf.ln_gamma(1.0 - 1.0 / a) + sf.ln_gamma(a + 1.0 / a)
                                 - sf.ln_gamma(a))

    def tail_index(self) -> float:
        return 1.0 / self.a

    def _retail(self, xi: float) -> "InverseParalogistic":
        return replace(self, a=1.0 / xi)

    def sf_array(self, x):
        x = np.asarray(x, dtype=float)
        out = np.ones_like(x)
        pos = x > 0.0
        out[pos] = -np.expm1(-self.a * np.log1p((self.b / x[pos]) ** self.a))
        return out

    def quantile_array(self, p):
        p = np.asarray(p, dtype=float)
        return self.b * np.expm1(-np.log(p) / self.a) ** (-1.0 / self.a)


@dataclass(frozen=True)
class LogGamma(Severity):
    """exp of a gamma variate with shape alpha and rate beta; support [1, inf)."""

    alpha: float
    beta: float

    def __post_init__(self):
        _require(self.alpha > 0 and self.beta > 0,
                 f"LogGamma requires alpha, beta > 0, got ({self.alpha}, {self.beta})")

    tag = "LOGG"

    def support_min(self) -> float:
        return 1.0

    def pdf(self, x: float) -> float:
        if x < 1.0:
            return 0.0
        if x == 1.0:
            # limit: 0 for alpha > 1, beta for alpha == 1, +inf for alpha < 1
            if self.alpha > 1.0:
                return 0.0
            return self.beta if self.alpha == 1.0 else math.inf
        lx = math.log(x)
        lg = (self.alpha * math.log(self.beta) + (self.alpha - 1.0) * math.log(lx)
              - (self.beta + 1.0) * lx - sf.ln_gamma(self.alpha))
        return math.exp(lg)

    def cdf(self, x: float) -> float:
        if x <= 1.0:
            return 0.0
        return sf.reg_inc_gamma_lower(self.alpha, self.beta * math.log(x))

    def sf(self, x: float) -> float:
        if x <= 1.0:
            return 1.0
        return sf.reg_inc_gamma_upper(self.alpha, self.beta * math.log(x))

    def _quantile(self, p: float) -> float:
        if p == 0.0:
            return 1.0
        return math.exp(sf.inv_reg_inc_gamma(self.alpha, p) / self.beta)

    def _isf(self, s: float) -> float:
        return math.exp(sf.inv_reg_inc_gamma(self.alpha, s, upper=True) / self.beta)

    def mean(self) -> float:
        if self.beta <= 1.0:
            return math.inf
        return (self.beta / (self.beta - 1.0)) ** self.alpha

    def tail_index(self) -> float:
        return 1.0 / self.beta

    def _retail(self, xi: float) -> "LogGamma":
        return replace(self, beta=1.0 / xi)

    def sf_array(self, x):
        x = np.asarray(x, dtype=float)
        out = np.ones_like(x)
        pos = x > 1.0
        out[pos] = _sp.gammaincc(self.alpha, self.beta * np.log(x[pos]))
        return out

    def quantile_array(self, p):
        p = np.asarray(p, dtype=float)
        return np.exp(_sp.gammaincinv(self.alpha, p) / self.beta)


@dataclass(frozen=True)
class LogLogistic(Severity):
    """Fisk distribution; closed-form quantiles."""

    a: float
    b: float

    def __post_init__(self):
        _require(self.a > 0 and self.b > 0,
                 f"LogLogistic requires a, b > 0, got ({self.a}, {self.b})")

    tag = "LOGL"

    def pdf(self, x: float) -> float:
        if x <= 0.0:
            return 0.0
        r = (x / self.b) ** self.a
        return self.a * r / (x * (1.0 + r) ** 2)

    def cdf(self, x: float) -> float:
        if x <= 0.0:
            return 0.0
        return 1.0 / (1.0 + (self.b / x) ** self.a)

    def sf(self, x: float) -> float:
        if x <= 0.0:
            return 1.0
        return 1.0 / (1.0 + (x / self.b) ** self.a)

    def _quantile(self, p: float) -> float:
        if p == 0.0:
            return 0.0
        return self.b * (p / (1.0 - p)) ** (1.0 / self.a)

    def _isf(self, s: float) -> float:
        return self.b * ((1.0 - s) / s) ** (1.0 / self.a)

    def mean(self) -> float:
        if self.a <= 1.0:
            return math.inf
        ra = math.pi / self.a
        return self.b * ra / math.sin(ra)

    def tail_index(self) -> float:
        return 1.0 / self.a

    def _retail(self, xi: float) -> "LogLogistic":
        return replace(self, a=1.0 / xi)

    def sf_array(self, x):
        x = np.maximum(np.asarray(x, dtype=float), 0.0)
        return 1.0 / (1.0 + (x / self.b) ** self.a)

    def quantile_array(self, p):
        p = np.asarray(p, dtype=float)
        return self.b * (p / (1.0 - p)) ** (1.0 / self.a)


@dataclass(frozen=True)
class LogNormal(Severity):
    """Log-normal; no regular-variation tail index."""

    mu: float
    sigma: float

    def __post_init__(self):
        _require(self.sigma > 0.0, f"LogNormal requires sigma > 0, got {self.sigma}")
        _require(math.isfinite(self.mu), f"LogNormal requires finite mu, got {self.mu}")

    tag = "LOGN"

    def pdf(self, x: float) -> float:
        if x <= 0.0:
            return 0.0
        z = (math.log(x) - self.mu) / self.sigma
        return math.exp(-0.5 * z * z) / (x * self.sigma * _SQRT_2PI)

    def cdf(self, x: float) -> float:
        if x <= 0.0:
            return 0.0
        return 0.5 * math.erfc(-(math.log(x) - self.mu) / (self.sigma * _SQRT2))

    def sf(self, x: float) -> float:
        if x <= 0.0:
            return 1.0
        return 0.5 * math.erfc((math.log(x) - self.mu) / (self.sigma * _SQRT2))

    def _quantile(self, p: float) -> float:
        if p == 0.0:
            return 0.0
        return math.exp(self.mu + self.sigma * sf.normal_quantile(p))

    def _isf(self, s: float) -> float:
        return math.exp(self.mu + self.sigma * sf.normal_quantile_from_sf(s))

    def mean(self) -> float:
        return math.exp(self.mu + 0.5 * self.sigma * self.sigma)

    def tail_index(self) -> None:
        return None

    def sf_array(self, x):
        x = np.asarray(x, dtype=float)
        out = np.ones_like(x)
        pos = x > 0.0
        out[pos] = 0.5 * _sp.erfc((np.log(x[pos]) - self.mu) / (self.sigma * _SQRT2))
        return out

    def quantile_array(self, p):
        p = np.asarray(p, dtype=float)
        return np.exp(self.mu + self.sigma * _sp.ndtri(p))


@dataclass(frozen=True)
class Paralogistic(Severity):
    """Burr XII with both shapes equal to a; tail index 1/a^2."""

    a: float
    b: float

    def __post_init__(self):
        _require(self.a > 0 and self.b > 0,
                 f"Paralogistic requires a, b > 0, got ({self.a}, {self.b})")

    tag = "PARA"

    def pdf(self, x: float) -> float:
        if x <= 0.0:
            return 0.0
        a, b = self.a, self.b
        lg = (2.0 * math.log(a) + (a - 1.0) * math.log(x) - a * math.log(b)
              - (1.0 + a) * math.log1p((x / b) ** a))
        return math.exp(lg)

    def cdf(self, x: float) -> float:
        return 1.0 - self.sf(x)

    def sf(self, x: float) -> float:
        if x <= 0.0:
            return 1.0
        return math.exp(-self.a * math.log1p((x / self.b) ** self.a))

    def _quantile(self, p: float) -> float:
        if p == 0.0:
            return 0.0
        return self.b * math.expm1(-math.log1p(-p) / self.a) ** (1.0 / self.a)

    def _isf(self, s: float) -> float:
        return self.b * math.expm1(-math.log(s) / self.a) ** (1.0 / self.a)

    def mean(self) -> float:
        a = self.a
        if a - 1.0 / a <= 0.0:
            return math.inf
        return self.b * math.exp(sf.ln_gamma(1.0 + 1.0 / a) + sf.ln_gamma(a - 1.0 / a)
                                 - sf.ln_gamma(a))

    def tail_index(self) -> float:
        return 1.0 / (self.a * self.a)

    def _retail(self, xi: float) -> "Paralogistic":
        return replace(self, a=1.0 / math.sqrt(xi))

    def sf_array(self, x):
        x = np.maximum(np.asarray(x, dtype=float), 0.0)
        return np.exp(-self.a * np.log1p((x / self.b) ** self.a))

    def quantile_array(self, p):
        p = np.asarray(p, dtype=float)
        return self.b * np.expm1(-np.log1p(-p) / self.a) ** (1.0 / self.a)


_TRUNCATABLE = (GenPareto, LogGamma, LogNormal)


@dataclass(frozen=True)
class LeftTruncated(Severity):
    """Severity conditioned on exceeding a collection threshold H.

    Supported for the generalized Pareto, log-gamma and log-normal bases only.
    """

    base: Severity
    threshold: float

    def __post_init__(self):
        _require(isinstance(self.base, _TRUNCATABLE),
                 f"left truncation is not supported for {type(self.base).__name__}")
        _require(self.threshold > self.base.support_min(),
                 f"threshold must exceed the support minimum, got {self.threshold}")

    @property
    def tag(self) -> str:
        return "T" + self.base.tag

    def support_min(self) -> float:
        return self.threshold

    def _sf_h(self) -> float:
        return self.base.sf(self.threshold)

    def pdf(self, x: float) -> float:
        if x < self.threshold:
            return 0.0
        return self.base.pdf(x) / self._sf_h()

    def cdf(self, x: float) -> float:
        if x <= self.threshold:
            return 0.0
        return 1.0 - self.sf(x)

    def sf(self, x: float) -> float:
        if x <= self.threshold:
            return 1.0
        return self.base.sf(x) / self._sf_h()

    def _quantile(self, p: float) -> float:
        if p == 0.0:
            return self.threshold
        return self.base.isf((1.0 - p) * self._sf_h())

    def _isf(self, s: float) -> float:
        if s == 1.0:
            return self.threshold
        return self.base.isf(s * self._sf_h())

    def mean(self) -> float:
        b, h = self.base, self.threshold
        if isinstance(b, GenPareto):
            return (h + b.theta) / (1.0 - b.xi) if b.xi < 1.0 else math.inf
        if isinstance(b, LogGamma):
            if b.beta <= 1.0:
                return math.inf
            lh = math.log(h)
            num = sf.reg_inc_gamma_upper(b.alpha, (b.beta - 1.0) * lh)
            return b.mean() * num / b.sf(h)
        # log-normal: untruncated mean times the conditional tail factor
        z = (b.mu + b.sigma * b.sigma - math.log(h)) / b.sigma
        upper_mass = 0.5 * math.erfc(-z / _SQRT2)
        return b.mean() * upper_mass / b.sf(h)

    def tail_index(self) -> float | None:
        return self.base.tail_index()

    def _retail(self, xi: float) -> "LeftTruncated":
        return LeftTruncated(self.base.with_tail_index(xi), self.threshold)

    def sf_array(self, x):
        x = np.asarray(x, dtype=float)
        out = np.ones_like(x)
        above = x > self.threshold
        out[above] = self.base.sf_array(x[above]) / self._sf_h()
        return out

    def quantile_array(self, p):
        p = np.asarray(p, dtype=float)
        s = (1.0 - p) * self._sf_h()
        b = self.base
        if isinstance(b, GenPareto):
            if b.xi == 0.0:
                return -b.theta * np.log(s)
            return b.theta / b.xi * np.expm1(-b.xi * np.log(s))
        if isinstance(b, LogGamma):
            return np.exp(_sp.gammainccinv(b.alpha, s) / b.beta)
        return np.exp(b.mu + b.sigma * (-_sp.ndtri(s)))


# ---------------------------------------------------------------------------
# specification strings
# ---------------------------------------------------------------------------

_BASE_FAMILIES = {
    "BETAP": BetaPrime,
    "FRCH": Frechet,
    "GPD": GenPareto,
    "IGAM": InverseGamma,
    "IPARA": InverseParalogistic,
    "LOGG": LogGamma,
    "LOGL": LogLogistic,
    "LOGN": LogNormal,
    "PARA": Paralogistic,
}

_SPEC_RE = re.compile(
    r"^\s*(T?)([A-Z]+)\s*\(\s*([^,\s]+)\s*,\s*([^,\s()]+)\s*(?:,\s*H\s*=\s*([^,\s()]+)\s*)?\)\s*$"
)


def parse_severity(text: str) -> Severity:
    """Parse ``FAMILY(p1,p2[,H=threshold])``, e.g. ``GPD(0.99,4954.245)`` or
    ``TLOGN(10,2.2,H=5000)``."""
    m = _SPEC_RE.match(text)
    if not m:
        raise ValueError(f"unparseable severity spec: {text!r}")
    trunc_prefix, family, p1s, p2s, hs = m.groups()
    if family not in _BASE_FAMILIES:
        raise ValueError(f"unknown severity family {family!r} in {text!r}")
    try:
        p1, p2 = float(p1s), float(p2s)
    except ValueError as exc:
        raise ValueError(f"bad numeric parameter in {text!r}") from exc
    base = _BASE_FAMILIES[family](p1, p2)
    want_trunc = bool(trunc_prefix)
    if hs is None:
        if want_trunc:
            raise ValueError(f"truncated family {trunc_prefix}{family} needs H= in {text!r}")
        return base
    try:
        h = float(hs)
    except ValueError as exc:
        raise ValueError(f"bad threshold in {text!r}") from exc
    return LeftTruncated(base, h)


def format_severity(model: Severity) -> str:
    """Inverse of :func:`parse_severity`; parameters keep full precision."""
    if isinstance(model, LeftTruncated):
        inner = format_severity(model.base)
        head, args = inner.split("(", 1)
        return f"T{head}({args[:-1]},H={model.threshold!r})"
    p1, p2 = _params_of(model)
    return f"{model.tag}({p1!r},{p2!r})"


def _params_of(model: Severity) -> tuple[float, float]:
    if isinstance(model, BetaPrime):
        return model.alpha, model.beta
    if isinstance(model, LogGamma):
        return model.alpha, model.beta
    if isinstance(model, GenPareto):
        return model.xi, model.theta
    if isinstance(model, LogNormal):
        return model.mu, model.sigma
    return model.a, model.b  # type: ignore[attr-defined]
