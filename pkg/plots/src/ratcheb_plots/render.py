"""Parse fit artifacts and render the two-panel summary figure.

Left panel: the target f and the fitted approximation F = f - e,
reconstructed from the error curve joined with the target samples (the
fit writes both on the same grid). Right panel: the error curve with
the alternating extrema marked and a horizontal band at +-max|e|.
"""

from __future__ import annotations

import csv
import json
from dataclasses import dataclass
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

__all__ = ["ParseError", "PlotJob", "render"]


class ParseError(ValueError):
    """An input file exists but does not follow the documented format."""


@dataclass(frozen=True)
class PlotJob:
    """One rendering task: artifact paths in, image path out."""

    curve_path: Path
    extrema_path: Path
    out_path: Path
    target_path: Path = None
    title: str = None


def _read_two_column_csv(path, expected_header) -> tuple:
    """Strict t-keyed CSV reader shared by the curve and target formats."""
    ts, values = [], []
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        rows = [row for row in reader if row and any(cell.strip() for cell in row)]
    if not rows:
        raise ParseError(f"{path}: empty file")
    start = 0
    if [cell.strip() for cell in rows[0]] == list(expected_header):
        start = 1
    data_rows = rows[start:]
    if not data_rows:
        raise ParseError(f"{path}: header but no data rows")
    for i, row in enumerate(data_rows, start=start + 1):
        if len(row) < 2:
            raise ParseError(f"{path}: line {i}: expected two columns")
        try:
            ts.append(float(row[0]))
            values.append(float(row[1]))
        except ValueError as exc:
            raise ParseError(f"{path}: line {i}: {row!r} is not numeric") from exc
    return np.array(ts), np.array(values)


def read_error_curve(path) -> tuple:
    """Error curve CSV -> (t, e) arrays."""
    return _read_two_column_csv(path, ("t", "e"))


def read_target(path) -> tuple:
    """Target samples CSV -> (t, f) arrays."""
    return _read_two_column_csv(path, ("t", "f"))


def read_extrema(path) -> dict:
    """Extrema JSON -> dict with count, rho, and the (t, e, sign) list."""
    with open(path) as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ParseError(f"{path}: {exc}") from exc
    if not isinstance(doc, dict) or not {"count", "extrema"} <= set(doc):
        raise ParseError(f"{path}: expected an object with 'count' and 'extrema'")
    extrema = doc["extrema"]
    if not isinstance(extrema, list) or not all(
        isinstance(p, dict) and {"t", "e"} <= set(p) for p in extrema
    ):
        raise ParseError(f"{path}: 'extrema' must list objects with 't' and 'e'")
    if doc["count"] != len(extrema):
        raise ParseError(f"{path}: count {doc['count']} != {len(extrema)} extrema")
    return doc


def render(job: PlotJob) -> dict:
    """Write the figure; return its dimensions and marker count.

    Raises FileNotFoundError if an input is missing and ParseError if
    one exists but cannot be interpreted.
    """
    ts, errors = read_error_curve(job.curve_path)
    extrema_doc = read_extrema(job.extrema_path)
    max_abs = float(np.max(np.abs(errors)))

    target = None
    if job.target_path is not None:
        t_target, f_target = read_target(job.target_path)
        if t_target.shape != ts.shape or not np.allclose(t_target, ts, atol=1e-12):
            raise ParseError(
                f"{job.target_path}: target abscissae do not match the error curve"
            )
        target = f_target

    # dpi fixed at creation so the reported canvas size equals the file's
    fig, (left, right) = plt.subplots(1, 2, figsize=(11.0, 4.2), dpi=120)

    if target is not None:
        left.plot(ts, target, label="f", linewidth=1.6)
        left.plot(ts, target - errors, label="F", linewidth=1.2, linestyle="--")
        left.legend(loc="best")
        left.set_title("target and approximation")
    else:
        left.text(
            0.5,
            0.5,
            "no target samples given\n(pass --target to overlay f and F)",
            ha="center",
            va="center",
            transform=left.transAxes,
        )
        left.set_title("target and approximation (unavailable)")
    left.set_xlabel("t")

    right.plot(ts, errors, linewidth=1.0)
    marker_ts = [p["t"] for p in extrema_doc["extrema"]]
    marker_es = [p["e"] for p in extrema_doc["extrema"]]
    right.plot(marker_ts, marker_es, "o", markersize=5, color="crimson", zorder=3)
    right.axhline(max_abs, linestyle=":", linewidth=0.9, color="gray")
    right.axhline(-max_abs, linestyle=":", linewidth=0.9, color="gray")
    right.set_title(f"error curve, {len(marker_ts)} alternating extrema")
    right.set_xlabel("t")

    if job.title:
        fig.suptitle(job.title)
    fig.tight_layout()
    fig.savefig(job.out_path)
    width, height = fig.canvas.get_width_height()
    plt.close(fig)
    return {
        "out_path": str(job.out_path),
        "marker_count": len(marker_ts),
        "band": max_abs,
        "width": width,
        "height": height,
    }
