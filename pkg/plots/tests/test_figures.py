"""Dataset construction: figure builders as pure CSV-to-series maps."""

import math
from pathlib import Path

import pytest

from macroplots import FigureSpec, build_dataset

FIXTURES = Path(__file__).parent / "fixtures"


def spec_for(figure, *names, out="out.svg", **kw):
    return FigureSpec(
        figure=figure,
        inputs=tuple(FIXTURES / name for name in names),
        output=out,
        **kw,
    )


class TestFigureSpec:
    def test_unknown_figure_rejected(self):
        with pytest.raises(ValueError, match="unknown figure 'pie'"):
            FigureSpec(figure="pie", inputs=("a.csv",), output="x.svg")

    def test_no_inputs_rejected(self):
        with pytest.raises(ValueError, match="at least one input"):
            FigureSpec(figure="bounds", inputs=(), output="x.svg")

    def test_axis_ranges_coerced(self):
        spec = FigureSpec(figure="bounds", inputs=("a.csv",), output="x.svg", xlim=(0, 3))
        assert spec.xlim == (0.0, 3.0)
        assert isinstance(spec.xlim[0], float)


class TestBounds:
    def test_one_series_per_mode_and_size(self):
        (panel,) = build_dataset(spec_for("bounds", "bounds_curves.csv"))
        gids = [s.gid for s in panel.series]
        assert gids == [
            "series-general-3",
            "series-symmetric-3",
            "series-general-6",
            "series-symmetric-6",
        ]

    def test_linestyle_tracks_mode(self):
        (panel,) = build_dataset(spec_for("bounds", "bounds_curves.csv"))
        styles = {s.gid: s.linestyle for s in panel.series}
        assert styles["series-general-3"] == "-"
        assert styles["series-symmetric-3"] == "--"

    def test_curves_sorted_and_monotone(self):
        (panel,) = build_dataset(spec_for("bounds", "bounds_curves.csv"))
        for s in panel.series:
            assert list(s.x) == sorted(s.x)
            # Bigger target entanglement never raises the achievable M.
            assert all(a >= b for a, b in zip(s.y, s.y[1:]))
            assert s.y[0] == 1.0  # the eta = 1/2 optimum

    def test_identical_input_identical_dataset(self):
        spec = spec_for("bounds", "bounds_curves.csv")
        assert build_dataset(spec) == build_dataset(spec)


class TestXiPlane:
    def test_four_panels_two_sizes(self):
        panels = build_dataset(spec_for("xi-plane", "xi_rows.csv"))
        assert [p.key for p in panels] == [
            "xi-theta-m_norm",
            "xi-theta-e_g",
            "xi-epsilon-m_norm",
            "xi-epsilon-e_g",
        ]
        for p in panels:
            assert [s.label for s in p.series] == ["N=4", "N=8"]

    def test_theta_axis_runs_to_quarter_pi(self):
        panels = build_dataset(spec_for("xi-plane", "xi_rows.csv"))
        theta = panels[0].series[0]
        assert theta.x[0] == 0.0
        assert theta.x[-1] == 0.25
        assert len(theta.x) == 12

    def test_epsilon_axis_excludes_endpoint(self):
        panels = build_dataset(spec_for("xi-plane", "xi_rows.csv"))
        eps = panels[2].series[0]
        assert eps.x[0] == 0.0
        assert eps.x[-1] == pytest.approx(11.0 / 12.0)

    def test_wrong_ensembles_rejected(self):
        with pytest.raises(Exception, match="no rows for ensembles 'xi-theta'"):
            build_dataset(spec_for("xi-plane", "haar_rows.csv"))


class TestTrajectories:
    def test_series_per_ensemble_and_size(self):
        panels = build_dataset(
            spec_for("trajectories", "physical_rows.csv", "chain_rows.csv")
        )
        assert [p.key for p in panels] == ["trajectories-m_norm", "trajectories-e_g"]
        labels = [s.label for s in panels[0].series]
        assert labels == ["chain N=6", "physical N=4", "physical N=6"]

    def test_error_bars_from_three_samples(self):
        panels = build_dataset(spec_for("trajectories", "physical_rows.csv"))
        for s in panels[0].series:
            assert s.yerr is not None
            assert all(e is not None and e >= 0.0 for e in s.yerr)

    def test_depth_axis_goes_log_for_wide_schedules(self):
        panels = build_dataset(
            spec_for("trajectories", "physical_rows.csv", "chain_rows.csv")
        )
        assert panels[0].xscale == "log"  # k spans 1..216

    def test_depth_axis_stays_linear_for_narrow_schedules(self):
        panels = build_dataset(spec_for("trajectories", "chain_rows.csv"))
        assert panels[0].xscale == "linear"  # k spans 1..5

    def test_means_match_hand_average(self):
        from macroplots import read_sample_rows

        rows = read_sample_rows([FIXTURES / "chain_rows.csv"])
        cell = [r["e_g"] for r in rows if r["k"] == 3]
        panels = build_dataset(spec_for("trajectories", "chain_rows.csv"))
        (series,) = panels[1].series
        idx = series.x.index(3)
        assert series.y[idx] == pytest.approx(sum(cell) / len(cell))


class TestHaarPanels:
    def test_single_mean_series_over_sizes(self):
        panels = build_dataset(spec_for("haar-panels", "haar_rows.csv"))
        assert [p.key for p in panels] == ["haar-m_norm", "haar-e_g"]
        (series,) = panels[0].series
        assert series.x == (3, 4, 5)
        assert series.yerr is not None

    def test_wrong_ensemble_rejected(self):
        with pytest.raises(Exception, match="no rows for ensemble 'haar'"):
            build_dataset(spec_for("haar-panels", "symmetric_rows.csv"))


class TestSymmetricPanels:
    def test_reference_line_at_inv_sqrt3(self):
        panels = build_dataset(spec_for("symmetric-panels", "symmetric_rows.csv"))
        (ref,) = panels[0].ref_lines
        assert ref.value == pytest.approx(1.0 / math.sqrt(3.0))
        assert ref.linestyle == "--"
        assert ref.color == "black"

    def test_mean_m_sits_above_the_reference(self):
        panels = build_dataset(spec_for("symmetric-panels", "symmetric_rows.csv"))
        (series,) = panels[0].series
        assert series.x == (8, 16, 32)
        assert all(y > 1.0 / math.sqrt(3.0) for y in series.y)

    def test_normalized_top_eigenvalue_near_one(self):
        panels = build_dataset(spec_for("symmetric-panels", "symmetric_rows.csv"))
        (series,) = panels[1].series
        assert all(0.7 < y < 1.3 for y in series.y)
        (ref,) = panels[1].ref_lines
        assert ref.value == 1.0


class TestPurity:
    def test_never_touches_the_analysis_package(self):
        import sys

        build_dataset(spec_for("bounds", "bounds_curves.csv"))
        build_dataset(spec_for("xi-plane", "xi_rows.csv"))
        assert "macrolab" not in sys.modules

    def test_all_figures_reproduce_datasets(self):
        cases = [
            ("bounds", ("bounds_curves.csv",)),
            ("xi-plane", ("xi_rows.csv",)),
            ("trajectories", ("physical_rows.csv", "chain_rows.csv")),
            ("haar-panels", ("haar_rows.csv",)),
            ("symmetric-panels", ("symmetric_rows.csv",)),
        ]
        for figure, names in cases:
            spec = spec_for(figure, *names)
            assert build_dataset(spec) == build_dataset(spec)
