"""Error-curve analysis: residuals, alternating near-maximal extrema,
and sampled quasiconvexity checks of the deviation as a function of the
coefficients."""

from __future__ import annotations

import csv
import json
from dataclasses import dataclass

import numpy as np

from .basis import design_matrix
from .model import Coefficients, Grid, RationalModel, eval_model_array

__all__ = [
    "DomainSkip",
    "ErrorCurve",
    "ExtremaReport",
    "error_curve",
    "count_alternations",
    "check_quasiconvexity_sample",
    "deviation_function",
    "write_error_curve_csv",
    "write_extrema_json",
    "extrema_to_dict",
]


class DomainSkip(Exception):
    """A sampled point left the model's domain (nonpositive denominator)."""


@dataclass(eq=False)
class ErrorCurve:
    """Pointwise residuals e(t_i) = f(t_i) - F(t_i) and their max magnitude."""

    ts: np.ndarray
    errors: np.ndarray
    max_abs: float

    def __post_init__(self):
        self.ts = np.asarray(self.ts, dtype=float)
        self.errors = np.asarray(self.errors, dtype=float)
        if self.ts.shape != self.errors.shape:
            raise ValueError("ts and errors must have equal length")


@dataclass(eq=False)
class ExtremaReport:
    """Alternating near-maximal extrema: list of (t, e, sign) triples."""

    extrema: list
    alternation_count: int
    rho: float


def error_curve(model: RationalModel, coef: Coefficients, grid: Grid) -> ErrorCurve:
    e = grid.values - eval_model_array(model, coef, grid.points)
    return ErrorCurve(grid.points, e, float(np.max(np.abs(e))))


def _sign(v: float) -> int:
    return 1 if v > 0 else (-1 if v < 0 else 0)


def count_alternations(curve: ErrorCurve, rho: float) -> ExtremaReport:
    """Count alternating error peaks of magnitude at least rho * max|e|.

    Candidates are the endpoints plus every interior point where the
    discrete slope strictly changes sign (plateaus inherit the nearest
    nonzero slope on each side, so a flat top still registers once).
    Consecutive same-sign candidates collapse to the largest magnitude;
    the survivors alternate in sign by construction.
    """
    if not (0 < rho <= 1):
        raise ValueError("rho must be in (0, 1]")
    e = curve.errors
    n = len(e)
    if n == 0:
        raise ValueError("empty error curve")
    if curve.max_abs == 0.0:
        return ExtremaReport([], 0, rho)

    slopes = np.sign(np.diff(e))
    fwd = slopes.copy()
    for i in range(1, len(fwd)):
        if fwd[i] == 0:
            fwd[i] = fwd[i - 1]
    bwd = slopes.copy()
    for i in range(len(bwd) - 2, -1, -1):
        if bwd[i] == 0:
            bwd[i] = bwd[i + 1]

    candidates = [0]
    for i in range(1, n - 1):
        if fwd[i - 1] != 0 and bwd[i] != 0 and fwd[i - 1] == -bwd[i]:
            candidates.append(i)
    if n > 1:
        candidates.append(n - 1)

    cutoff = rho * curve.max_abs
    kept = []  # list of point indices, alternating in sign
    for i in candidates:
        if abs(e[i]) < cutoff:
            continue
        s = _sign(e[i])
        if kept and _sign(e[kept[-1]]) == s:
            if abs(e[i]) > abs(e[kept[-1]]):
                kept[-1] = i
        else:
            kept.append(i)

    extrema = [(float(curve.ts[i]), float(e[i]), _sign(e[i])) for i in kept]
    return ExtremaReport(extrema, len(extrema), rho)


def deviation_function(model: RationalModel, grid: Grid):
    """Deviation as a function of the packed coefficient vector (a then b).

    Raises DomainSkip when the denominator is not strictly positive
    everywhere on the grid, matching the domain restriction under which
    the deviation is quasiconvex. The design matrices are fixed by the
    grid, so they are built once up front.
    """
    n = model.n_numer
    G = design_matrix(model.numerator, grid.points)
    H = design_matrix(model.denominator, grid.points)
    f = grid.values

    def phi(v: np.ndarray) -> float:
        v = np.asarray(v, dtype=float)
        if v.size != n + model.n_denom_free:
            raise ValueError("coefficient vector has the wrong length")
        den = H @ np.concatenate(([1.0], v[n:]))
        if np.any(den <= 0):
            raise DomainSkip("denominator not positive on the whole grid")
        return float(np.max(np.abs(f - (G @ v[:n]) / den)))

    return phi


def check_quasiconvexity_sample(phi, x, y, lam: float, tol: float = 1e-9) -> bool:
    """One sampled instance of the quasiconvexity inequality.

    True iff phi at the lam-blend of x and y does not exceed the larger
    endpoint value by more than tol. Propagates DomainSkip from phi.
    """
    if not (0 <= lam <= 1):
        raise ValueError("lam must be in [0, 1]")
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    fx = phi(x)
    fy = phi(y)
    fm = phi(lam * x + (1.0 - lam) * y)
    return fm <= max(fx, fy) + tol


def write_error_curve_csv(curve: ErrorCurve, path) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["t", "e"])
        for t, e in zip(curve.ts, curve.errors):
            writer.writerow([repr(float(t)), repr(float(e))])


def extrema_to_dict(report: ExtremaReport) -> dict:
    return {
        "count": report.alternation_count,
        "rho": report.rho,
        "extrema": [{"t": t, "e": e, "sign": s} for t, e, s in report.extrema],
    }


def write_extrema_json(report: ExtremaReport, path) -> None:
    with open(path, "w") as fh:
        json.dump(extrema_to_dict(report), fh, indent=2)
        fh.write("\n")
