"""Unit and smoke tests for the rendering package.

The smoke test at the bottom exercises the real cross-package contract:
it runs the fitting CLI as a subprocess, renders its artifacts with the
plot CLI as a second subprocess, and checks nothing but the files and
exit codes that pass between them.
"""

import json
import struct
import subprocess
import sys

import pytest

from ratcheb_plots import ParseError, PlotJob, render
from ratcheb_plots.cli import EXIT_IO, EXIT_OK, EXIT_PARSE, main

# ---------------------------------------------------------------------------
# fixture artifacts


def _write_curve(path, rows):
    lines = ["t,e"] + [f"{t!r},{e!r}" for t, e in rows]
    path.write_text("\n".join(lines) + "\n")


def _write_extrema(path, points, rho=0.9):
    doc = {
        "count": len(points),
        "rho": rho,
        "extrema": [{"t": t, "e": e, "sign": 1 if e >= 0 else -1} for t, e in points],
    }
    path.write_text(json.dumps(doc, indent=2) + "\n")


def _write_target(path, rows):
    lines = ["t,f"] + [f"{t!r},{f!r}" for t, f in rows]
    path.write_text("\n".join(lines) + "\n")


@pytest.fixture
def artifacts(tmp_path):
    """A five-point curve with two marked extrema and matching target."""
    ts = [0.0, 0.25, 0.5, 0.75, 1.0]
    errors = [0.1, -0.1, 0.05, -0.02, 0.1]
    _write_curve(tmp_path / "error_curve.csv", list(zip(ts, errors)))
    _write_extrema(tmp_path / "extrema.json", [(0.0, 0.1), (0.25, -0.1)])
    _write_target(tmp_path / "target.csv", [(t, t * t) for t in ts])
    return tmp_path


def _png_dimensions(path):
    # width and height live at fixed offsets in the PNG IHDR chunk
    head = path.read_bytes()[:24]
    assert head[:8] == b"\x89PNG\r\n\x1a\n"
    return struct.unpack(">II", head[16:24])


# ---------------------------------------------------------------------------
# render()


def test_render_writes_image_and_reports_markers(artifacts):
    out = artifacts / "fig.png"
    summary = render(
        PlotJob(
            curve_path=artifacts / "error_curve.csv",
            extrema_path=artifacts / "extrema.json",
            target_path=artifacts / "target.csv",
            out_path=out,
            title="five points",
        )
    )
    assert out.exists() and out.stat().st_size > 0
    assert summary["marker_count"] == 2
    assert summary["band"] == pytest.approx(0.1)
    assert (summary["width"], summary["height"]) == _png_dimensions(out)


def test_render_without_target_uses_placeholder(artifacts):
    out = artifacts / "bare.png"
    summary = render(
        PlotJob(
            curve_path=artifacts / "error_curve.csv",
            extrema_path=artifacts / "extrema.json",
            out_path=out,
        )
    )
    assert out.exists()
    assert summary["marker_count"] == 2


def test_render_is_idempotent(artifacts):
    job = PlotJob(
        curve_path=artifacts / "error_curve.csv",
        extrema_path=artifacts / "extrema.json",
        target_path=artifacts / "target.csv",
        out_path=artifacts / "fig.png",
    )
    first = render(job)
    second = render(job)
    assert (first["width"], first["height"]) == (second["width"], second["height"])
    assert first["marker_count"] == second["marker_count"]


def test_render_all_zero_curve(tmp_path):
    # degenerate band at zero must not break the horizontal guide lines
    ts = [0.0, 0.5, 1.0]
    _write_curve(tmp_path / "c.csv", [(t, 0.0) for t in ts])
    _write_extrema(tmp_path / "x.json", [])
    summary = render(
        PlotJob(
            curve_path=tmp_path / "c.csv",
            extrema_path=tmp_path / "x.json",
            out_path=tmp_path / "zero.png",
        )
    )
    assert summary["band"] == 0.0
    assert summary["marker_count"] == 0


def test_render_respects_out_suffix(artifacts):
    out = artifacts / "fig.svg"
    render(
        PlotJob(
            curve_path=artifacts / "error_curve.csv",
            extrema_path=artifacts / "extrema.json",
            out_path=out,
        )
    )
    assert out.read_bytes().lstrip().startswith(b"<?xml")


# ---------------------------------------------------------------------------
# parse failures


def test_empty_curve_file_is_parse_error(tmp_path):
    (tmp_path / "empty.csv").write_text("")
    _write_extrema(tmp_path / "x.json", [])
    with pytest.raises(ParseError, match="empty"):
        render(
            PlotJob(
                curve_path=tmp_path / "empty.csv",
                extrema_path=tmp_path / "x.json",
                out_path=tmp_path / "o.png",
            )
        )


def test_header_only_curve_is_parse_error(tmp_path):
    (tmp_path / "c.csv").write_text("t,e\n")
    with pytest.raises(ParseError, match="no data"):
        render(
            PlotJob(
                curve_path=tmp_path / "c.csv",
                extrema_path=tmp_path / "c.csv",
                out_path=tmp_path / "o.png",
            )
        )


def test_non_numeric_curve_row_is_parse_error(tmp_path):
    (tmp_path / "c.csv").write_text("t,e\n0.0,0.1\noops,0.2\n")
    with pytest.raises(ParseError, match="not numeric"):
        render(
            PlotJob(
                curve_path=tmp_path / "c.csv",
                extrema_path=tmp_path / "c.csv",
                out_path=tmp_path / "o.png",
            )
        )


def test_invalid_extrema_json_is_parse_error(tmp_path, artifacts):
    (tmp_path / "x.json").write_text("{not json")
    with pytest.raises(ParseError):
        render(
            PlotJob(
                curve_path=artifacts / "error_curve.csv",
                extrema_path=tmp_path / "x.json",
                out_path=tmp_path / "o.png",
            )
        )


def test_extrema_count_mismatch_is_parse_error(tmp_path, artifacts):
    doc = {"count": 5, "rho": 0.9, "extrema": [{"t": 0.0, "e": 0.1, "sign": 1}]}
    (tmp_path / "x.json").write_text(json.dumps(doc))
    with pytest.raises(ParseError, match="count"):
        render(
            PlotJob(
                curve_path=artifacts / "error_curve.csv",
                extrema_path=tmp_path / "x.json",
                out_path=tmp_path / "o.png",
            )
        )


def test_target_on_different_grid_is_parse_error(artifacts):
    _write_target(artifacts / "shifted.csv", [(0.1, 1.0), (0.9, 2.0)])
    with pytest.raises(ParseError, match="abscissae"):
        render(
            PlotJob(
                curve_path=artifacts / "error_curve.csv",
                extrema_path=artifacts / "extrema.json",
                target_path=artifacts / "shifted.csv",
                out_path=artifacts / "o.png",
            )
        )


def test_missing_curve_file_raises_file_not_found(tmp_path):
    with pytest.raises(FileNotFoundError):
        render(
            PlotJob(
                curve_path=tmp_path / "absent.csv",
                extrema_path=tmp_path / "absent.json",
                out_path=tmp_path / "o.png",
            )
        )


# ---------------------------------------------------------------------------
# command line


def test_cli_renders_and_exits_zero(artifacts, capsys):
    code = main(
        [
            "render",
            "--curve", str(artifacts / "error_curve.csv"),
            "--extrema", str(artifacts / "extrema.json"),
            "--target", str(artifacts / "target.csv"),
            "--out", str(artifacts / "cli.png"),
        ]
    )
    assert code == EXIT_OK
    assert (artifacts / "cli.png").exists()
    assert "2 extrema" in capsys.readouterr().out


def test_cli_parse_error_exits_two(tmp_path, capsys):
    (tmp_path / "bad.csv").write_text("")
    (tmp_path / "x.json").write_text("{}")
    code = main(
        [
            "render",
            "--curve", str(tmp_path / "bad.csv"),
            "--extrema", str(tmp_path / "x.json"),
            "--out", str(tmp_path / "o.png"),
        ]
    )
    assert code == EXIT_PARSE
    assert "error:" in capsys.readouterr().err


def test_cli_missing_input_exits_three(tmp_path, capsys):
    code = main(
        [
            "render",
            "--curve", str(tmp_path / "absent.csv"),
            "--extrema", str(tmp_path / "absent.json"),
            "--out", str(tmp_path / "o.png"),
        ]
    )
    assert code == EXIT_IO
    assert "error:" in capsys.readouterr().err


def test_cli_requires_flags():
    with pytest.raises(SystemExit):
        main(["render", "--curve", "only.csv"])


# ---------------------------------------------------------------------------
# cross-package smoke


@pytest.mark.slow
def test_fit_then_render_smoke(tmp_path):
    """Fit the 0.25 preset, render its artifacts, and check the contract.

    Both stages run as subprocesses so the only coupling exercised is
    the documented file formats and exit codes.
    """
    run_dir = tmp_path / "run"
    fit = subprocess.run(
        [sys.executable, "-m", "ratcheb", "fit",
         "--preset", "paper-5.2.1-theta-0.25", "--out", str(run_dir)],
        capture_output=True,
        text=True,
    )
    assert fit.returncode == 0, fit.stderr

    figure = tmp_path / "fit.png"
    plot = subprocess.run(
        [sys.executable, "-m", "ratcheb_plots", "render",
         "--curve", str(run_dir / "error_curve.csv"),
         "--extrema", str(run_dir / "extrema.json"),
         "--target", str(run_dir / "target.csv"),
         "--out", str(figure)],
        capture_output=True,
        text=True,
    )
    ok_exit = plot.returncode == 0
    ok_image = figure.exists() and figure.stat().st_size > 0

    with open(run_dir / "extrema.json") as fh:
        expected = json.load(fh)["count"]
    summary = render(
        PlotJob(
            curve_path=run_dir / "error_curve.csv",
            extrema_path=run_dir / "extrema.json",
            target_path=run_dir / "target.csv",
            out_path=tmp_path / "inprocess.png",
        )
    )
    ok_markers = summary["marker_count"] == expected

    print(f"[{'PASS' if ok_exit and ok_image else 'FAIL'}] "
          f"plot smoke: render exit 0 and image written")
    print(f"[{'PASS' if ok_markers else 'FAIL'}] "
          f"plot smoke: marker count {summary['marker_count']} == extrema count {expected}")
    assert ok_exit, plot.stderr
    assert ok_image
    assert ok_markers
