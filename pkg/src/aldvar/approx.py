"""Closed-form extreme-quantile approximators for compound Poisson losses.

Three estimators of the alpha-quantile of an annual aggregate loss
S = sum_{i<=N} X_i with N ~ Poisson(lambda) and X ~ a catalog severity:

* ``sla``   -- the single-loss approximation with three branches selected by
  the severity tail index: a mean correction below 1, a limited-expected-value
  correction exactly at 1, and a subtractive tail correction on (1, 2).
* ``misla`` -- two root-scale interpolations of the correction term across the
  divergence zone around tail index 1, anchored at the limited-expected-value
  correction in the middle.
* ``isla``  -- the single root-scale interpolation spanning the whole zone,
  without the mid anchor.

All three share the same first-order term, the severity quantile at
1 - (1-alpha)/lambda evaluated on the model as given.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from . import quadrature
from . import specfun as sf
from .errors import DomainError, InterpolationError
from .severity import Severity

# Per-catalog default interpolation endpoints (tail-index units), keyed by tag.
TABLE_ENDPOINTS: dict[str, tuple[float, float]] = {
    "BETAP": (0.85, 1.15),
    "FRCH": (0.85, 1.15),
    "GPD": (0.80, 1.20),
    "IGAM": (0.85, 1.15),
    "IPARA": (0.85, 1.15),
    "LOGG": (0.90, 1.20),
    "LOGL": (0.85, 1.15),
    "PARA": (0.925, 1.075),
    "TGPD": (0.80, 1.20),
    "TLOGG": (0.90, 1.30),
}

FIXED_ENDPOINTS: tuple[float, float] = (0.85, 1.15)


def default_endpoints(model: Severity) -> tuple[float, float]:
    """Catalog endpoints for the model's family; the fixed pair otherwise."""
    return TABLE_ENDPOINTS.get(model.tag, FIXED_ENDPOINTS)


@dataclass(frozen=True)
class InterpolationConstants:
    """Grid density and curvature of the root-scale interpolation."""

    pre: float = 1000.0
    root: float = 50.0

    def __post_init__(self):
        if not (self.pre > 0.0 and self.root > 0.0):
            raise DomainError("interpolation constants must be positive")


DEFAULT_CONSTANTS = InterpolationConstants()


@dataclass(frozen=True)
class ApproxInputs:
    """Everything the approximators need.

    ``endpoints`` defaults to the per-family catalog pair; pass
    ``FIXED_ENDPOINTS`` or a custom (low, high) to override.
    """

    model: Severity
    lam: float
    alpha: float
    endpoints: tuple[float, float] | None = None

    def __post_init__(self):
        if not self.lam > 0.0:
            raise DomainError(f"lambda must be positive, got {self.lam}")
        if not 0.0 < self.alpha < 1.0:
            raise DomainError(f"alpha must be in (0,1), got {self.alpha}")
        if self.endpoints is not None:
            lo, hi = self.endpoints
            if not lo < 1.0 < hi:
                raise DomainError(f"endpoints must straddle 1, got {self.endpoints}")

    @property
    def resolved_endpoints(self) -> tuple[float, float]:
        return self.endpoints if self.endpoints is not None else default_endpoints(self.model)

    @property
    def severity_percentile(self) -> float:
        return 1.0 - (1.0 - self.alpha) / self.lam


@dataclass
class QuantileEstimate:
    method: str                 # SLA | ISLA | MISLA
    value: float
    branch: str                 # finite-mean | unit-tail | heavy-tail | interp-below | interp-above | interp
    base_term: float
    correction_term: float      # signed; value == base_term + correction_term
    diagnostics: dict = field(default_factory=dict)


def c_xi(xi: float) -> float:
    """Tail-correction constant (1-xi) * Gamma^2(1 - 1/xi) / (2 * Gamma(1 - 2/xi))
    for 1 < xi < 2; the negative-argument gamma goes through reflection."""
    if not 1.0 < xi < 2.0:
        raise DomainError(f"c_xi requires 1 < xi < 2, got {xi}")
    g1 = sf.gamma(1.0 - 1.0 / xi)
    g2 = sf.gamma_signed(1.0 - 2.0 / xi)   # argument in (-1, 0)
    return (1.0 - xi) * g1 * g1 / (2.0 * g2)


# ---------------------------------------------------------------------------
# correction-term building blocks
# ---------------------------------------------------------------------------

def _mean_correction(model: Severity, lam: float) -> float:
    m = model.mean()
    if math.isinf(m):
        raise DomainError("mean correction undefined: severity mean is infinite")
    return lam * m


def _mu_f_correction(model: Severity, lam: float, p: float) -> tuple[float, dict]:
    """Limited-expected-value correction lam * mu_F(F^-1(p)) on the model given
    (used on the unit-tail-index anchor model)."""
    q = model.quantile(p)
    res = quadrature.mu_F(model, q)
    diag = {"mu_f_est_error": res.est_error, "mu_f_panels": res.panels}
    return lam * res.value, diag


def _tail_correction_magnitude(model_hi: Severity, xi_hi: float, alpha: float, p: float) -> float:
    """Magnitude of the heavy-tail correction (1-alpha) F^-1(p) c_xi/(1 - 1/xi)
    evaluated on the high-endpoint model."""
    return (1.0 - alpha) * model_hi.quantile(p) * c_xi(xi_hi) / (1.0 - 1.0 / xi_hi)


def _root_interp(lct: float, hct: float, cir: float, frc: float,
                 consts: InterpolationConstants, branch: str) -> float:
    if lct < 0.0 or hct < 0.0:
        raise InterpolationError(
            f"negative correction anchor (LCT={lct}, HCT={hct})", branch)
    inv_root = 1.0 / consts.root
    drs = (hct ** inv_root - lct ** inv_root) / frc
    return (lct ** inv_root + cir * drs) ** consts.root


# ---------------------------------------------------------------------------
# estimators
# ---------------------------------------------------------------------------

def sla(inputs: ApproxInputs) -> QuantileEstimate:
    """Single-loss approximation; branch picked by the severity tail index."""
    model, lam, alpha = inputs.model, inputs.lam, inputs.alpha
    p = inputs.severity_percentile
    base = model.quantile(p)
    xi = model.tail_index()
    if xi is None or xi < 1.0:
        corr = _mean_correction(model, lam)
        return QuantileEstimate("SLA", base + corr, "finite-mean", base, corr)
    if xi == 1.0:
        corr, diag = _mu_f_correction(model, lam, p)
        return QuantileEstimate("SLA", base + corr, "unit-tail", base, corr, diag)
    if xi >= 2.0:
        raise DomainError(f"tail index {xi} >= 2 is outside the approximation's domain")
    corr = -(1.0 - alpha) * base * c_xi(xi) / (1.0 - 1.0 / xi)
    return QuantileEstimate("SLA", base + corr, "heavy-tail", base, corr)


def misla(inputs: ApproxInputs,
          consts: InterpolationConstants = DEFAULT_CONSTANTS) -> QuantileEstimate:
    """Interpolated approximation with the unit-tail-index mid anchor.

    Outside (xi_low, xi_high) this is the plain single-loss approximation; the
    base term always comes from the model as given.
    """
    model, lam, alpha = inputs.model, inputs.lam, inputs.alpha
    xi = model.tail_index()
    if xi is None:
        est = sla(inputs)
        est.method = "MISLA"
        return est
    xi_low, xi_high = inputs.resolved_endpoints
    if xi <= xi_low or xi >= xi_high:
        est = sla(inputs)
        est.method = "MISLA"
        return est
    p = inputs.severity_percentile
    base = model.quantile(p)
    anchor = model.with_tail_index(1.0)
    mid_corr, diag = _mu_f_correction(anchor, lam, p)
    if xi == 1.0:
        return QuantileEstimate("MISLA", base + mid_corr, "unit-tail", base, mid_corr, diag)
    if xi < 1.0:
        lct = _mean_correction(model.with_tail_index(xi_low), lam)
        hct = mid_corr
        cir = (xi - xi_low) * consts.pre
        frc = (1.0 - xi_low) * consts.pre
        branch = "interp-below"
    else:
        lct = mid_corr
        model_hi = model.with_tail_index(xi_high)
        hct = _tail_correction_magnitude(model_hi, xi_high, alpha, p)
        cir = (xi - 1.0) * consts.pre
        frc = (xi_high - 1.0) * consts.pre
        branch = "interp-above"
        # the literal high branch adds the interpolated term, while the plain
        # heavy-tail formula at xi_high subtracts it; flag when the two
        # endpoint values straddle zero
        base_hi = model_hi.quantile(p)
        diag["endpoint_sign_mismatch"] = (base_hi - hct < 0.0) != (base_hi + hct < 0.0)
    ict = _root_interp(lct, hct, cir, frc, consts, branch)
    diag.update({"lct": lct, "hct": hct, "cir": cir, "frc": frc})
    return QuantileEstimate("MISLA", base + ict, branch, base, ict, diag)


def isla(inputs: ApproxInputs,
         consts: InterpolationConstants = DEFAULT_CONSTANTS) -> QuantileEstimate:
    """Single root-scale interpolation from the mean correction at xi_low to
    the heavy-tail correction at xi_high, with no mid anchor."""
    model, lam, alpha = inputs.model, inputs.lam, inputs.alpha
    xi = model.tail_index()
    if xi is None:
        est = sla(inputs)
        est.method = "ISLA"
        return est
    xi_low, xi_high = inputs.resolved_endpoints
    if xi <= xi_low or xi >= xi_high:
        est = sla(inputs)
        est.method = "ISLA"
        return est
    p = inputs.severity_percentile
    base = model.quantile(p)
    lct = _mean_correction(model.with_tail_index(xi_low), lam)
    model_hi = model.with_tail_index(xi_high)
    hct = _tail_correction_magnitude(model_hi, xi_high, alpha, p)
    cir = (xi - xi_low) * consts.pre
    frc = (xi_high - xi_low) * consts.pre
    ict = _root_interp(lct, hct, cir, frc, consts, "interp")
    diag = {"lct": lct, "hct": hct, "cir": cir, "frc": frc}
    return QuantileEstimate("ISLA", base + ict, "interp", base, ict, diag)


@dataclass(frozen=True)
class SweepPoint:
    xi: float
    sla_value: float
    isla_value: float
    misla_value: float
    sla_correction: float
    isla_correction: float
    misla_correction: float


def sweep(inputs: ApproxInputs, xi_grid,
          consts: InterpolationConstants = DEFAULT_CONSTANTS) -> list[SweepPoint]:
    """Evaluate all three estimators along a tail-index grid.

    Each grid point re-indexes the input model; this is the divergence-curve
    data behind the interpolation-endpoint diagnostics.
    """
    if inputs.model.tail_index() is None:
        raise DomainError("sweep requires a family with a tail index")
    out = []
    for xi in xi_grid:
        if not 0.0 < xi < 2.0:
            raise DomainError(f"sweep grid must lie in (0, 2), got {xi}")
        pt_inputs = ApproxInputs(inputs.model.with_tail_index(float(xi)), inputs.lam,
                                 inputs.alpha, inputs.resolved_endpoints)
        s = sla(pt_inputs)
        i = isla(pt_inputs, consts)
        m = misla(pt_inputs, consts)
        out.append(SweepPoint(float(xi), s.value, i.value, m.value,
                              s.correction_term, i.correction_term, m.correction_term))
    return out
