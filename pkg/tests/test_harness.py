import math

import numpy as np
import pytest

from aldvar import approx, harness
from aldvar.approx import ApproxInputs
from aldvar.errors import DomainError
from aldvar.harness import BenchConfig, BenchRow, describe
from aldvar.severity import GenPareto


class TestCatalog:
    def test_twelve_configurations(self):
        assert len(harness.TABLE1) == 12
        tags = [t for t, _ in harness.TABLE1]
        assert tags == sorted(tags)

    def test_catalog_model_lookup(self):
        assert harness.catalog_model("GPD") == GenPareto(0.99, 4954.245)
        with pytest.raises(DomainError):
            harness.catalog_model("XXX")

    def test_logg_shape_matches_reference_mean(self):
        model = harness.catalog_model("LOGG")
        assert model.mean() == pytest.approx(6_069_948_738.0, rel=1e-12)


class TestRunTable:
    def test_t1_means(self, tmp_path):
        cfg = BenchConfig(table="T1_means", output_path=str(tmp_path / "t1.csv"))
        rows = harness.run_table(cfg)
        assert len(rows) == 12
        by_tag = {r.severity: r.value for r in rows}
        assert by_tag["TGPD"] == pytest.approx(650_000.0, rel=1e-12)
        assert (tmp_path / "t1.csv").exists()

    def test_t2_closed_form_rows(self):
        cfg = BenchConfig(table="T2_999")
        rows = harness.run_table(cfg)
        assert len(rows) == 36  # 12 severities x 3 methods
        gpd_sla = next(r for r in rows if r.severity == "GPD" and r.method == "SLA")
        assert gpd_sla.value == pytest.approx(125_444_154, rel=5e-4)
        assert gpd_sla.runtime_seconds is not None
        assert gpd_sla.pct_diff_vs_mc is None  # no MC column requested

    def test_t5_has_both_endpoint_variants(self):
        rows = harness.run_table(BenchConfig(table="T5_fixedpts"))
        methods = {r.method for r in rows}
        assert methods == {"MISLA@table1", "MISLA@fixed"}
        # ten families with a tail index, two alphas, two variants
        assert len(rows) == 40

    def test_rows_sorted_and_reproducible(self):
        cfg = BenchConfig(table="T2_999")
        a = harness.run_table(cfg)
        b = harness.run_table(cfg)
        assert [(r.severity, r.method, r.value) for r in a] == \
               [(r.severity, r.method, r.value) for r in b]
        keys = [(r.severity, r.method) for r in a]
        assert keys == sorted(keys)

    def test_pct_diff_sign_convention(self):
        assert harness.pct_diff(99.0, 100.0) == pytest.approx(-1.0)
        assert harness.pct_diff(110.0, 100.0) == pytest.approx(10.0)

    def test_mc_column_small_run(self):
        cfg = BenchConfig(table="T2_999", mc_years=10 ** 4, methods=("MC", "SLA"))
        rows = harness.run_table(cfg)
        mc_rows = [r for r in rows if r.method == "MC"]
        assert len(mc_rows) == 12
        sla_rows = [r for r in rows if r.method == "SLA"]
        assert all(r.pct_diff_vs_mc is not None for r in sla_rows)

    def test_validation(self):
        with pytest.raises(DomainError):
            BenchConfig(table="T9")
        with pytest.raises(DomainError):
            BenchConfig(table="T2_999", mc_years=100)
        with pytest.raises(DomainError):
            BenchConfig(table="T2_999", endpoints_mode="custom")


class TestCsv:
    def test_roundtrip(self, tmp_path):
        rows = [
            BenchRow("GPD", 0.999, "SLA", 125444153.9916, -0.23, 0.00051, "ok"),
            BenchRow("LOGN", None, "MEAN", 247706.5355, None, None, "ok"),
        ]
        path = str(tmp_path / "rows.csv")
        harness.write_csv(rows, path)
        back = harness.read_csv(path)
        assert back == rows

    def test_byte_identical_emission(self, tmp_path):
        rows = harness.run_table(BenchConfig(table="T1_means"))
        p1, p2 = str(tmp_path / "a.csv"), str(tmp_path / "b.csv")
        harness.write_csv(rows, p1)
        harness.write_csv(rows, p2)
        assert open(p1, "rb").read() == open(p2, "rb").read()

    def test_header_schema(self, tmp_path):
        path = str(tmp_path / "h.csv")
        harness.write_csv([], path)
        with open(path, encoding="utf-8") as fh:
            assert fh.readline().strip() == "severity,alpha,method,value,pct_diff_vs_mc,runtime_seconds,status"

    def test_rejects_foreign_header(self, tmp_path):
        path = tmp_path / "bad.csv"
        path.write_text("a,b\n1,2\n")
        with pytest.raises(ValueError):
            harness.read_csv(str(path))


class TestConfigFile:
    def test_parse(self, tmp_path):
        path = tmp_path / "exp.cfg"
        path.write_text(
            "# benchmark run\n"
            "table = T2_999\n"
            "mc_years = 1e7   # one decade down from the reference\n"
            "seed=7\n"
            "endpoints_mode = fixed\n"
            "output = out.csv\n")
        cfg = harness.parse_config_file(str(path))
        assert cfg == {"table": "T2_999", "mc_years": "1e7", "seed": "7",
                       "endpoints_mode": "fixed", "output": "out.csv"}

    def test_bad_line(self, tmp_path):
        path = tmp_path / "bad.cfg"
        path.write_text("just words\n")
        with pytest.raises(ValueError):
            harness.parse_config_file(str(path))


class TestSweepGrid:
    def test_parse_grid(self):
        g = harness.parse_grid("0.5:1.5:0.005")
        assert len(g) == 201
        assert g[0] == pytest.approx(0.5)
        assert g[-1] == pytest.approx(1.5)

    def test_sweep_csv(self, tmp_path):
        path = str(tmp_path / "sweep.csv")
        pts = harness.run_sweep(GenPareto(0.99, 50_000.0), 25.0, 0.999,
                                harness.parse_grid("0.9:1.1:0.05"),
                                output_path=path)
        assert len(pts) == 5
        with open(path, encoding="utf-8") as fh:
            header = fh.readline().strip()
        assert header == "xi,sla,isla,misla,sla_correction,isla_correction,misla_correction"

    def test_bad_grid(self):
        with pytest.raises(ValueError):
            harness.parse_grid("0.5-1.5-0.005")


class TestDescribe:
    def test_moments(self):
        v = np.array([1.0, 2.0, 3.0, 4.0, 100.0])
        st = describe(v)
        assert st.minimum == 1.0 and st.maximum == 100.0
        assert st.mean == pytest.approx(22.0)
        assert st.median == 3.0
        assert st.minimum <= st.median <= st.maximum
        assert st.stddev == pytest.approx(math.sqrt(((v - 22.0) ** 2).mean()))
        assert st.skewness > 1.0  # single large outlier
        assert st.kurtosis > 0.0

    def test_symmetric_has_zero_skew(self):
        st = describe(np.array([-2.0, -1.0, 0.0, 1.0, 2.0]))
        assert st.skewness == pytest.approx(0.0, abs=1e-12)


class TestGpdScaleHomogeneity:
    def test_estimates_scale_linearly_in_theta(self):
        # underwrites the unit-scale evaluation inside the sampling study
        for xi in (0.83, 0.97, 1.0, 1.08, 1.3):
            for method in ("SLA", "MISLA", "ISLA"):
                fn = harness._METHOD_FN[method]
                v1 = fn(ApproxInputs(GenPareto(xi, 1.0), 25.0, 0.999)).value
                v2 = fn(ApproxInputs(GenPareto(xi, 4954.245), 25.0, 0.999)).value
                assert v2 == pytest.approx(4954.245 * v1, rel=1e-11), (xi, method)

    def test_normalized_helper_matches_direct(self):
        direct = harness._METHOD_FN["MISLA"](
            ApproxInputs(GenPareto(0.93, 3210.0), 25.0, 0.999)).value
        via_unit = harness._estimate_normalized("MISLA", 0.93, 3210.0, 0.999)
        assert via_unit == pytest.approx(direct, rel=1e-11)


class TestSimStudySmall:
    def test_small_run_shape(self):
        cfg = BenchConfig(table="T6_simstudy", runs=2, sims_per_run=40, seed=3)
        result = harness.run_simstudy(cfg)
        assert len(result.runs) == 2
        run = result.runs[0]
        assert set(run.stats) == {(m, a) for m in ("SLA", "MISLA")
                                  for a in (0.999, 0.9997)}
        st = run.stats[("SLA", 0.999)]
        assert st.minimum <= st.median <= st.maximum
        assert st.stddev >= 0.0
        assert 0.0 <= result.xi_lt_1_fraction <= 1.0
        assert (run.n_sims_used + run.fit_failures + run.estimate_failures
                + run.xi_ge_1) == 40

    def test_reproducible(self):
        cfg = BenchConfig(table="T6_simstudy", runs=1, sims_per_run=30, seed=11)
        a = harness.run_simstudy(cfg)
        b = harness.run_simstudy(cfg)
        assert a.runs[0].stats == b.runs[0].stats
