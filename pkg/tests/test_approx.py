import math

import numpy as np
import pytest

from aldvar import approx, quadrature
from aldvar.approx import ApproxInputs, InterpolationConstants, c_xi, isla, misla, sla, sweep
from aldvar.errors import DomainError
from aldvar.severity import GenPareto, LeftTruncated, LogGamma, LogNormal

LAM = 25.0


def inputs_for(model, alpha=0.999, endpoints=None):
    return ApproxInputs(model, LAM, alpha, endpoints=endpoints)


class TestCxi:
    def test_frozen_values(self):
        # frozen from the reflection-formula evaluation at 30 digits
        assert c_xi(1.15) == pytest.approx(0.8302126325691875, rel=1e-12)
        assert c_xi(1.2) == pytest.approx(0.7710485186639993, rel=1e-12)
        assert c_xi(1.075) == pytest.approx(0.9182988650175389, rel=1e-12)
        assert c_xi(1.3) == pytest.approx(0.6553812584410012, rel=1e-12)

    def test_vanishes_toward_two(self):
        # Gamma(1 - 2/xi) blows up as xi -> 2, killing the constant
        assert abs(c_xi(1.9999)) < 1e-3
        assert abs(c_xi(1.999999)) < 1e-5

    def test_approaches_one_from_above(self):
        assert c_xi(1.0 + 1e-7) == pytest.approx(1.0, rel=1e-5)

    def test_domain(self):
        for bad in (0.99, 1.0, 2.0, 2.5):
            with pytest.raises(DomainError):
                c_xi(bad)


class TestSla:
    def test_lognormal_reference(self, catalog):
        est = sla(inputs_for(catalog["LOGN"]))
        assert est.value == pytest.approx(135_497_104, rel=5e-4)
        assert est.branch == "finite-mean"

    def test_gpd_reference(self, catalog):
        est = sla(inputs_for(catalog["GPD"]))
        assert est.value == pytest.approx(125_444_154, rel=5e-4)

    def test_loggamma_reference(self, catalog):
        est = sla(inputs_for(catalog["LOGG"]))
        assert est.value == pytest.approx(151_861_852_200, rel=1e-3)

    def test_value_decomposition(self, catalog):
        for model in catalog.values():
            est = sla(inputs_for(model))
            assert est.value == pytest.approx(est.base_term + est.correction_term, rel=1e-14)

    def test_unit_tail_branch_uses_quadrature(self):
        model = GenPareto(1.0, 4954.245)
        est = sla(inputs_for(model))
        assert est.branch == "unit-tail"
        assert "mu_f_est_error" in est.diagnostics
        # correction equals lam * theta * log1p(x/theta) analytically
        x = est.base_term
        assert est.correction_term == pytest.approx(
            LAM * 4954.245 * math.log1p(x / 4954.245), rel=1e-9)

    def test_heavy_tail_branch_subtracts(self):
        est = sla(inputs_for(GenPareto(1.2, 4954.245)))
        assert est.branch == "heavy-tail"
        assert est.correction_term < 0.0

    def test_tail_index_two_domain_error(self):
        with pytest.raises(DomainError):
            sla(inputs_for(GenPareto(2.0, 100.0)))


class TestMisla:
    def test_gpd_reference(self, catalog):
        est = misla(inputs_for(catalog["GPD"], endpoints=(0.8, 1.2)))
        assert est.value == pytest.approx(114_280_595, rel=1e-3)
        assert est.branch == "interp-below"

    def test_loggamma_reference(self, catalog):
        est = misla(inputs_for(catalog["LOGG"], endpoints=(0.9, 1.2)))
        assert est.value == pytest.approx(113_662_368, rel=2e-3)

    def test_equals_sla_for_lognormal_types(self, catalog):
        for tag in ("LOGN", "TLOGN"):
            s = sla(inputs_for(catalog[tag]))
            m = misla(inputs_for(catalog[tag]))
            assert m.value == s.value
            assert m.method == "MISLA"

    def test_at_low_endpoint_is_mean_branch(self, catalog):
        model = catalog["GPD"].with_tail_index(0.8)
        est = misla(inputs_for(model, endpoints=(0.8, 1.2)))
        assert est.branch == "finite-mean"
        assert est.value == sla(inputs_for(model)).value

    def test_at_high_endpoint_is_tail_branch(self, catalog):
        model = catalog["GPD"].with_tail_index(1.2)
        est = misla(inputs_for(model, endpoints=(0.8, 1.2)))
        assert est.branch == "heavy-tail"

    def test_low_side_continuity(self, catalog):
        # |misla(xi_low + eps) - sla(xi_low)| relative gap < 1e-4 at eps = 1e-6
        for tag in ("GPD", "LOGG", "BETAP", "TGPD", "PARA"):
            model = catalog[tag]
            xi_low, _ = approx.default_endpoints(model)
            m = misla(inputs_for(model.with_tail_index(xi_low + 1e-6)))
            s = sla(inputs_for(model.with_tail_index(xi_low)))
            assert abs(m.value - s.value) / s.value < 1e-4, tag

    def test_high_side_continuity_of_interpolant(self, catalog):
        # approaching the high endpoint, the interpolated term goes to the
        # high anchor (the literal formula adds it; see the sign diagnostic)
        model = catalog["GPD"].with_tail_index(1.2 - 1e-9)
        est = misla(inputs_for(model, endpoints=(0.8, 1.2)))
        assert est.correction_term == pytest.approx(est.diagnostics["hct"], rel=1e-6)

    def test_mid_anchor(self, catalog):
        # just below one, the interpolated correction hits the unit-tail anchor
        for tag in ("GPD", "LOGG"):
            model = catalog[tag].with_tail_index(1.0 - 1e-12)
            est = misla(inputs_for(model))
            anchor = model.with_tail_index(1.0)
            p = 1.0 - (1.0 - 0.999) / LAM
            want = LAM * quadrature.mu_F(anchor, anchor.quantile(p)).value
            assert est.correction_term == pytest.approx(want, rel=1e-6), tag

    def test_exactly_one_uses_unit_anchor(self, catalog):
        model = catalog["GPD"].with_tail_index(1.0)
        est = misla(inputs_for(model))
        assert est.branch == "unit-tail"

    def test_interpolation_monotone_when_hct_above_lct(self, catalog):
        model = catalog["GPD"]
        vals = []
        for xi in np.linspace(0.801, 0.999, 40):
            est = misla(inputs_for(model.with_tail_index(float(xi)), endpoints=(0.8, 1.2)))
            assert est.branch == "interp-below"
            assert est.diagnostics["hct"] > est.diagnostics["lct"]
            vals.append(est.correction_term)
        assert all(b > a for a, b in zip(vals, vals[1:]))

    def test_above_one_literal_sign_and_diagnostic(self, catalog):
        est = misla(inputs_for(catalog["GPD"].with_tail_index(1.1), endpoints=(0.8, 1.2)))
        assert est.branch == "interp-above"
        assert est.correction_term > 0.0
        assert "endpoint_sign_mismatch" in est.diagnostics

    def test_fixed_endpoints_stay_close(self, catalog):
        # switching to the fixed pair moves the estimate by well under a percent
        for tag in ("GPD", "TGPD", "TLOGG"):
            a = misla(inputs_for(catalog[tag]))
            b = misla(inputs_for(catalog[tag], endpoints=approx.FIXED_ENDPOINTS))
            assert abs(a.value - b.value) / a.value < 5e-3, tag


class TestIsla:
    def test_gpd_reference(self, catalog):
        est = isla(inputs_for(catalog["GPD"], endpoints=(0.8, 1.2)))
        assert est.value == pytest.approx(114_505_122, rel=1e-3)
        assert est.branch == "interp"

    def test_equals_sla_outside_zone(self, catalog):
        model = catalog["GPD"].with_tail_index(0.75)
        assert isla(inputs_for(model)).value == sla(inputs_for(model)).value

    def test_high_endpoint_reaches_hct(self, catalog):
        est = isla(inputs_for(catalog["GPD"].with_tail_index(1.2 - 1e-9),
                              endpoints=(0.8, 1.2)))
        assert est.correction_term == pytest.approx(est.diagnostics["hct"], rel=1e-6)

    def test_low_endpoint_reaches_lct(self, catalog):
        est = isla(inputs_for(catalog["GPD"].with_tail_index(0.8 + 1e-9),
                              endpoints=(0.8, 1.2)))
        assert est.correction_term == pytest.approx(est.diagnostics["lct"], rel=1e-6)

    def test_exceeds_misla_for_loggamma_below_one(self, catalog):
        # the wide divergence zone of the log-gamma family: the single
        # interpolation overshoots the mid-anchored one on (0.9, 1)
        for xi in (0.93, 0.96, 0.99):
            model = catalog["LOGG"].with_tail_index(xi)
            i = isla(inputs_for(model))
            m = misla(inputs_for(model))
            assert i.correction_term > m.correction_term


class TestSweep:
    def test_grid_evaluation(self, catalog):
        grid = np.arange(0.85, 1.1501, 0.05)
        pts = sweep(inputs_for(GenPareto(0.99, 50_000.0)), grid)
        assert len(pts) == len(grid)
        assert all(math.isfinite(p.misla_value) for p in pts)

    def test_sla_divergence_pattern(self):
        # the mean correction blows up like 1/(1 - xi) approaching one
        inp = inputs_for(GenPareto(0.99, 50_000.0))
        pts = sweep(inp, [0.9, 0.999, 0.9999])
        assert pts[1].sla_value > 4.0 * pts[0].sla_value
        assert pts[2].sla_value > 10.0 * pts[0].sla_value

    def test_misla_bounded_across_zone(self):
        grid = np.linspace(0.85, 1.15, 61)
        pts = sweep(inputs_for(GenPareto(0.99, 50_000.0), endpoints=(0.8, 1.2)), grid)
        vals = [p.misla_value for p in pts]
        jumps = [abs(b / a - 1.0) for a, b in zip(vals, vals[1:])]
        assert max(jumps) < 0.05

    def test_endpoint_continuity_at_grid_point(self, catalog):
        model = catalog["GPD"]
        xi_low, _ = approx.default_endpoints(model)
        pts = sweep(inputs_for(model), [xi_low])
        s = sla(inputs_for(model.with_tail_index(xi_low)))
        assert pts[0].sla_value == pytest.approx(s.value, rel=1e-12)
        assert pts[0].isla_value == pytest.approx(s.value, rel=1e-12)
        assert pts[0].misla_value == pytest.approx(s.value, rel=1e-12)

    def test_rejects_no_tail_index(self, catalog):
        with pytest.raises(DomainError):
            sweep(inputs_for(catalog["LOGN"]), [0.9])

    def test_rejects_out_of_range_grid(self, catalog):
        with pytest.raises(DomainError):
            sweep(inputs_for(catalog["GPD"]), [2.5])


class TestValidation:
    def test_inputs_validation(self, catalog):
        with pytest.raises(DomainError):
            ApproxInputs(catalog["GPD"], -1.0, 0.999)
        with pytest.raises(DomainError):
            ApproxInputs(catalog["GPD"], 25.0, 1.0)
        with pytest.raises(DomainError):
            ApproxInputs(catalog["GPD"], 25.0, 0.999, endpoints=(1.1, 1.2))

    def test_constants_validation(self):
        with pytest.raises(DomainError):
            InterpolationConstants(pre=-1.0)
        c = InterpolationConstants()
        assert c.pre == 1000.0 and c.root == 50.0

    def test_default_endpoints(self, catalog):
        assert approx.default_endpoints(catalog["GPD"]) == (0.8, 1.2)
        assert approx.default_endpoints(catalog["TLOGG"]) == (0.9, 1.3)
        assert approx.default_endpoints(catalog["PARA"]) == (0.925, 1.075)
        # families without a catalog entry fall back to the fixed pair
        assert approx.default_endpoints(catalog["LOGN"]) == approx.FIXED_ENDPOINTS
