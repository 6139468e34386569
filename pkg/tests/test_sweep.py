"""Sweep machinery: grids, presets, point pipeline, baselines, CSV schema."""

import csv
import io
import math

import numpy as np
import pytest

from _support import OMEGA_M, TWO_PI, base_params
from oemsim import (
    ParameterError,
    PRESET_NAMES,
    SweepSpec,
    evaluate_point,
    preset,
    run_sweep,
    write_csv,
)
from oemsim.constants import C_LIGHT
from oemsim.model import _coherence_coefficients
from oemsim.sweep import AXIS_KAPPA_C, AXIS_OMEGA_M, csv_header, csv_rows


def narrowed(spec, start, stop, count, **extra):
    kw = {f: getattr(spec, f) for f in (
        "name", "base", "varied", "axis", "axis_scale", "pairs", "baseline", "notes")}
    kw.update(start=start, stop=stop, count=count)
    kw.update(extra)
    return SweepSpec(**kw)


class TestPresets:
    def test_names_complete(self):
        assert PRESET_NAMES == ("fig2", "fig3", "fig4", "fig5",
                                "fig6a", "fig6b", "fig6c")
        for name in PRESET_NAMES:
            assert preset(name).name == name

    def test_lookup_is_case_insensitive(self):
        assert preset("FIG2").base == preset("fig2").base

    def test_unknown_preset(self):
        with pytest.raises(ParameterError, match="unknown preset"):
            preset("fig9")

    def test_fig2_operating_point(self):
        spec = preset("fig2")
        assert spec.base == base_params()
        assert (spec.start, spec.stop, spec.count) == (-2.0, 2.0, 401)
        assert spec.axis == AXIS_OMEGA_M
        assert spec.axis_scale == OMEGA_M
        assert spec.pairs == ("mr_oc",)
        assert spec.baseline
        assert spec.varied == "delta_c"

    def test_fig3_operating_point(self):
        spec = preset("fig3")
        assert spec.base == base_params(
            gamma_m=OMEGA_M / 5e4,
            kappa_c=0.08 * OMEGA_M,
            g=TWO_PI * 1e5,
            r_a=2000.0,
            delta_a1=TWO_PI * 1e7,
            delta_a2=TWO_PI * 1e7,
        )
        assert spec.pairs == ("mr_mc",)
        assert spec.baseline

    def test_fig4_operating_point(self):
        spec = preset("fig4")
        assert spec.base == base_params(
            kappa_c=0.08 * OMEGA_M,
            g=TWO_PI * 1.5e6,
            r_a=1.6e6,
            delta_a2=TWO_PI * 1e6,
        )
        assert spec.pairs == ("oc_mc",)

    def test_fig5_operating_point(self):
        spec = preset("fig5")
        assert spec.base == base_params(
            kappa_c=0.02 * OMEGA_M,
            g=TWO_PI * 1e5,
            r_a=1.6e6,
            delta_a1=TWO_PI * 1e6,
            delta_a2=TWO_PI * 1e6,
            delta_c=50.0 * 0.02 * OMEGA_M,
        )
        assert (spec.start, spec.stop, spec.count) == (0.0, 100.0, 401)
        assert spec.axis == AXIS_KAPPA_C
        assert spec.axis_scale == 0.02 * OMEGA_M
        assert spec.pairs == ("oc_sba", "oc_scb")
        assert not spec.baseline

    @pytest.mark.parametrize("name,temp", [
        ("fig6a", 5e-3), ("fig6b", 250e-3), ("fig6c", 350e-3),
    ])
    def test_fig6_operating_points(self, name, temp):
        spec = preset(name)
        assert spec.base == base_params(
            temperature=temp,
            r_a=1.6e6,
            g=TWO_PI * 1e5,
            kappa_a=TWO_PI * 1e6,
            kappa_c=math.pi * C_LIGHT / (4.07e4 * 1e-3),
            delta_a1=TWO_PI * 1e10,
            delta_a2=TWO_PI * 1e6,
            delta_w=-OMEGA_M,
        )
        assert spec.pairs == ("mr_oc", "mr_mc", "oc_mc")
        assert spec.baseline


class TestSweepSpecValidation:
    def test_grid_shape(self):
        spec = preset("fig2")
        grid = spec.grid()
        assert grid.shape == (401,)
        assert grid[0] == -2.0 and grid[-1] == 2.0

    def test_rejects_degenerate_grids(self):
        spec = preset("fig2")
        with pytest.raises(ParameterError):
            narrowed(spec, 0.0, 1.0, 1)
        with pytest.raises(ParameterError):
            narrowed(spec, 1.0, 1.0, 5)
        with pytest.raises(ParameterError):
            narrowed(spec, 0.0, math.inf, 5)

    def test_rejects_unknown_swept_field(self):
        spec = preset("fig2")
        kw = {f: getattr(spec, f) for f in (
            "name", "base", "start", "stop", "count",
            "axis", "axis_scale", "pairs", "baseline", "notes")}
        with pytest.raises(ParameterError, match="unknown swept parameter"):
            SweepSpec(varied="detuning", **kw)

    def test_pairs_normalized_and_deduplicated(self):
        spec = narrowed(preset("fig2"), -1.0, 1.0, 3, pairs=("MR-OC", "oc_mc"))
        assert spec.pairs == ("mr_oc", "oc_mc")
        with pytest.raises(ParameterError, match="duplicate"):
            narrowed(preset("fig2"), -1.0, 1.0, 3, pairs=("mr_oc", "MR-OC"))


class TestEvaluatePoint:
    def test_stable_point_reports_requested_pairs(self):
        rec = evaluate_point(preset("fig3").base, ("mr_mc", "oc_mc"))
        assert rec.stable is True
        assert rec.error is None
        assert set(rec.e_n) == {"mr_mc", "oc_mc"}
        assert rec.max_real_part < 0.0  # 1/s, physical units

    def test_unstable_point_carries_no_entanglement(self):
        rec = evaluate_point(base_params(delta_c=-OMEGA_M), ("mr_oc",))
        assert rec.stable is False
        assert rec.e_n == {}
        assert rec.baseline_e_n == {}
        assert rec.max_real_part > 0.0

    def test_solver_failure_becomes_error_record(self):
        seed = base_params(rho_aa0=1.0, rho_cc0=0.0, rho_ca0=0.0,
                           delta_c=0.0, kappa_c=1.0)
        pole = 1j * seed.g * (sum(_coherence_coefficients(seed)))
        broken = seed.replace(kappa_c=-pole.real, delta_c=-pole.imag)
        rec = evaluate_point(broken, ("mr_oc",))
        assert rec.error is not None and "pole" in rec.error
        assert rec.stable is None
        assert rec.e_n == {}

    def test_baseline_reports_only_bosonic_pairs(self):
        rec = evaluate_point(preset("fig3").base, ("mr_mc", "oc_sba"),
                             baseline=True)
        assert set(rec.baseline_e_n) == {"mr_mc"}

    def test_baseline_ignores_atomic_parameters(self):
        pairs = ("mr_oc", "mr_mc", "oc_mc")
        rec1 = evaluate_point(base_params(), pairs, baseline=True)
        rec2 = evaluate_point(
            base_params(g=TWO_PI * 3e5, r_a=7e5, kappa_a=TWO_PI * 3e5,
                        rho_aa0=0.9, rho_cc0=0.1, rho_ca0=0.2,
                        delta_a1=TWO_PI * 3e6, delta_a2=TWO_PI * 4e6),
            pairs, baseline=True)
        assert rec1.baseline_e_n == rec2.baseline_e_n
        assert rec1.e_n != rec2.e_n


class TestRunSweep:
    def test_axis_units_map_to_detuning(self):
        spec = narrowed(preset("fig5"), 50.0, 51.0, 2)
        res = run_sweep(spec)
        assert res.records[0].x == 50.0
        direct = evaluate_point(
            spec.base.replace(delta_c=50.0 * spec.axis_scale), spec.pairs)
        assert res.records[0].e_n == direct.e_n

    def test_parallel_equals_serial(self):
        spec = narrowed(preset("fig3"), -0.5, 1.5, 21)
        serial = run_sweep(spec, jobs=1)
        threaded = run_sweep(spec, jobs=4)
        assert serial.records == threaded.records

    def test_jobs_validated(self):
        with pytest.raises(ParameterError):
            run_sweep(preset("fig3"), jobs=0)

    def test_counts(self):
        spec = narrowed(preset("fig2"), -2.0, 2.0, 41)
        res = run_sweep(spec)
        assert len(res.records) == 41
        assert 0 < res.stable_count() < 41
        assert res.error_count() == 0


class TestCsvEmission:
    def test_header_with_baseline(self):
        assert csv_header(preset("fig2")) == [
            "x_value", "x_axis", "stable", "max_real_part",
            "en_mr_oc", "en_mr_mc", "en_oc_mc", "en_oc_sba", "en_oc_scb",
            "en_baseline_mr_oc",
        ]

    def test_header_without_baseline(self):
        assert csv_header(preset("fig5")) == [
            "x_value", "x_axis", "stable", "max_real_part",
            "en_mr_oc", "en_mr_mc", "en_oc_mc", "en_oc_sba", "en_oc_scb",
        ]

    def test_rows_round_trip(self, tmp_path):
        spec = narrowed(preset("fig2"), -2.0, 1.0, 7)
        res = run_sweep(spec)
        out = tmp_path / "sweep.csv"
        write_csv(res, out)
        text = out.read_text()
        assert text.endswith("\n")
        rows = list(csv.reader(io.StringIO(text)))
        assert rows[0] == csv_header(spec)
        assert len(rows) == 8
        for rec, row in zip(res.records, rows[1:]):
            assert float(row[0]) == rec.x
            assert row[1] == spec.axis
            assert row[2] == ("true" if rec.stable else "false")
            en_cell = row[4]  # en_mr_oc column
            if rec.stable:
                assert float(en_cell) == rec.e_n["mr_oc"]
                assert float(row[9]) == rec.baseline_e_n["mr_oc"]
            else:
                assert en_cell == ""
        # unrequested pairs stay empty
        assert {row[5] for row in rows[1:]} == {""}

    def test_floats_carry_full_precision(self):
        spec = narrowed(preset("fig3"), 0.99, 1.01, 3)
        res = run_sweep(spec)
        rows = csv_rows(res)
        cell = rows[0][3]  # max_real_part
        assert float(cell) == res.records[0].max_real_part
