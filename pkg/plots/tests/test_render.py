"""Rendering and the command line: image files out, diagnostics on bad input.

The SVG checks are structural: every curve is tagged with its dataset
gid, so the emitted XML can be asserted against directly -- one series
element per (mode, N) for the bounds figure, error-bar groups where the
dataset carries deviations, and so on.
"""

import xml.etree.ElementTree as ET
from pathlib import Path

import pytest

from macroplots import FigureSpec, render
from macroplots.cli import main

FIXTURES = Path(__file__).parent / "fixtures"

PNG_SIGNATURE = b"\x89PNG\r\n\x1a\n"


def svg_ids(path, prefix="series-"):
    tree = ET.parse(path)
    return sorted(e.get("id") for e in tree.iter() if (e.get("id") or "").startswith(prefix))


def series_paths(path):
    """Map series gid -> drawn path data, pulled out of the SVG."""
    tree = ET.parse(path)
    out = {}
    for elem in tree.iter():
        gid = elem.get("id") or ""
        if gid.startswith("series-"):
            out[gid] = [p.get("d") for p in elem.iter() if p.tag.endswith("path")]
    return out


class TestSvgStructure:
    def test_bounds_has_one_series_per_mode_and_size(self, tmp_path):
        out = tmp_path / "bounds.svg"
        render(FigureSpec("bounds", (FIXTURES / "bounds_curves.csv",), str(out)))
        assert svg_ids(out) == [
            "series-general-3",
            "series-general-6",
            "series-symmetric-3",
            "series-symmetric-6",
        ]

    def test_xi_plane_series_cover_both_lines(self, tmp_path):
        out = tmp_path / "xi.svg"
        render(FigureSpec("xi-plane", (FIXTURES / "xi_rows.csv",), str(out)))
        ids = svg_ids(out)
        assert "series-xi-theta-m_norm-4" in ids
        assert "series-xi-epsilon-e_g-8" in ids
        assert len(ids) == 8

    def test_trajectories_carry_error_bars(self, tmp_path):
        out = tmp_path / "traj.svg"
        render(
            FigureSpec(
                "trajectories",
                (FIXTURES / "physical_rows.csv", FIXTURES / "chain_rows.csv"),
                str(out),
            )
        )
        ids = svg_ids(out)
        assert "series-physical-m_norm-6" in ids
        assert "series-physical-m_norm-6-err" in ids

    def test_symmetric_panels_include_reference_line(self, tmp_path):
        out = tmp_path / "sym.svg"
        render(FigureSpec("symmetric-panels", (FIXTURES / "symmetric_rows.csv",), str(out)))
        assert "ref-symmetric-m_norm" in svg_ids(out, prefix="ref-")

    def test_repeated_render_draws_identical_series(self, tmp_path):
        spec_a = FigureSpec("bounds", (FIXTURES / "bounds_curves.csv",), str(tmp_path / "a.svg"))
        spec_b = FigureSpec("bounds", (FIXTURES / "bounds_curves.csv",), str(tmp_path / "b.svg"))
        render(spec_a)
        render(spec_b)
        assert series_paths(tmp_path / "a.svg") == series_paths(tmp_path / "b.svg")


class TestImageFiles:
    def test_png_output(self, tmp_path):
        out = tmp_path / "haar.png"
        render(FigureSpec("haar-panels", (FIXTURES / "haar_rows.csv",), str(out)))
        assert out.read_bytes()[:8] == PNG_SIGNATURE

    def test_unsupported_extension_rejected(self, tmp_path):
        spec = FigureSpec("bounds", (FIXTURES / "bounds_curves.csv",), str(tmp_path / "x.pdf"))
        with pytest.raises(ValueError, match="use .svg or .png"):
            render(spec)

    def test_axis_ranges_applied(self, tmp_path):
        out = tmp_path / "clipped.svg"
        render(
            FigureSpec(
                "bounds",
                (FIXTURES / "bounds_curves.csv",),
                str(out),
                xlim=(0.0, 2.0),
                ylim=(0.0, 1.1),
            )
        )
        assert out.exists()


class TestCli:
    def test_bounds_to_svg(self, tmp_path, capsys):
        out = tmp_path / "bounds.svg"
        code = main(
            ["--figure", "bounds", "--in", str(FIXTURES / "bounds_curves.csv"), "--out", str(out)]
        )
        assert code == 0
        assert capsys.readouterr().out.strip() == str(out)
        assert ET.parse(out) is not None

    def test_multiple_inputs(self, tmp_path):
        out = tmp_path / "traj.png"
        code = main(
            [
                "--figure",
                "trajectories",
                "--in",
                str(FIXTURES / "physical_rows.csv"),
                str(FIXTURES / "chain_rows.csv"),
                "--out",
                str(out),
                "--ylim",
                "0,3",
            ]
        )
        assert code == 0
        assert out.read_bytes()[:8] == PNG_SIGNATURE

    def test_schema_violation_names_the_column(self, tmp_path, capsys):
        code = main(
            [
                "--figure",
                "bounds",
                "--in",
                str(FIXTURES / "bounds_bad_column.csv"),
                "--out",
                str(tmp_path / "x.svg"),
            ]
        )
        assert code == 1
        err = capsys.readouterr().err
        assert "missing required column 'm_norm'" in err
        assert not (tmp_path / "x.svg").exists()

    def test_header_only_input_fails(self, tmp_path, capsys):
        code = main(
            [
                "--figure",
                "trajectories",
                "--in",
                str(FIXTURES / "rows_header_only.csv"),
                "--out",
                str(tmp_path / "x.svg"),
            ]
        )
        assert code == 1
        assert "no data rows (header only)" in capsys.readouterr().err

    def test_missing_input_fails(self, tmp_path, capsys):
        code = main(
            ["--figure", "bounds", "--in", str(tmp_path / "gone.csv"), "--out", str(tmp_path / "x.svg")]
        )
        assert code == 1
        assert "gone.csv" in capsys.readouterr().err

    def test_bad_figure_id_is_a_usage_error(self, tmp_path):
        with pytest.raises(SystemExit) as exc:
            main(["--figure", "pie", "--in", "a.csv", "--out", "x.svg"])
        assert exc.value.code == 2

    def test_missing_flags_are_usage_errors(self):
        with pytest.raises(SystemExit) as exc:
            main([])
        assert exc.value.code == 2

    def test_bad_axis_range_is_a_usage_error(self, tmp_path):
        with pytest.raises(SystemExit) as exc:
            main(
                [
                    "--figure",
                    "bounds",
                    "--in",
                    str(FIXTURES / "bounds_curves.csv"),
                    "--out",
                    str(tmp_path / "x.svg"),
                    "--xlim",
                    "zero,one",
                ]
            )
        assert exc.value.code == 2
