"""Approximation targets, discretization grids, and the rational model.

The model is a ratio of two linear combinations of basis functions. The
denominator's leading element is the constant 1 and its coefficient is
pinned to 1, so the free decision variables are the full numerator vector
`a` and the tail of the denominator vector `b`.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from typing import Union

import numpy as np

from .basis import BasisSet, Constant, design_matrix

__all__ = [
    "EmptyInterval",
    "InsufficientSamples",
    "ZeroDenominator",
    "BuiltinTarget",
    "SampledTarget",
    "TargetFunction",
    "sqrt_abs_shift",
    "Grid",
    "build_grid",
    "RationalModel",
    "Coefficients",
    "eval_model",
    "eval_model_array",
    "denominator_array",
    "max_deviation",
    "load_samples_csv",
]

DENOMINATOR_FLOOR = 1e-30


class EmptyInterval(ValueError):
    """Interval [c, d] with c >= d."""


class InsufficientSamples(ValueError):
    """Fewer than 2 sample points fall inside the requested interval."""


class ZeroDenominator(ArithmeticError):
    """Denominator magnitude below the representable floor."""


@dataclass(frozen=True)
class BuiltinTarget:
    """Closed-form target, evaluable anywhere on the interval."""

    name: str
    shift: float = 0.0

    def __call__(self, ts):
        ts = np.asarray(ts, dtype=float)
        if self.name == "sqrt_abs_shift":
            return np.sqrt(np.abs(ts - self.shift))
        raise ValueError(f"unknown builtin target {self.name!r}")


def sqrt_abs_shift(c: float) -> BuiltinTarget:
    """f(t) = sqrt(|t - c|)."""
    return BuiltinTarget("sqrt_abs_shift", float(c))


@dataclass(frozen=True, eq=False)
class SampledTarget:
    """Target known only at sample points, used verbatim (no interpolation)."""

    points: np.ndarray
    values: np.ndarray

    def __post_init__(self):
        pts = np.asarray(self.points, dtype=float)
        vals = np.asarray(self.values, dtype=float)
        object.__setattr__(self, "points", pts)
        object.__setattr__(self, "values", vals)
        if pts.ndim != 1 or pts.shape != vals.shape:
            raise ValueError("points and values must be 1-d arrays of equal length")
        if len(pts) and not np.all(np.diff(pts) > 0):
            raise ValueError("sample abscissae must be strictly increasing")
        if not (np.all(np.isfinite(pts)) and np.all(np.isfinite(vals))):
            raise ValueError("samples must be finite")


TargetFunction = Union[BuiltinTarget, SampledTarget]


@dataclass(frozen=True, eq=False)
class Grid:
    """Finite ordered sample of the interval with target values."""

    points: np.ndarray
    values: np.ndarray
    interval: tuple

    def __post_init__(self):
        pts = np.asarray(self.points, dtype=float)
        vals = np.asarray(self.values, dtype=float)
        object.__setattr__(self, "points", pts)
        object.__setattr__(self, "values", vals)
        object.__setattr__(self, "interval", (float(self.interval[0]), float(self.interval[1])))
        if len(pts) < 2:
            raise ValueError("grid needs at least 2 points")
        if pts.shape != vals.shape:
            raise ValueError("points and values must have equal length")
        if not np.all(np.diff(pts) > 0):
            raise ValueError("grid points must be strictly increasing")
        if not np.all(np.isfinite(vals)):
            raise ValueError("grid values must be finite")
        c, d = self.interval
        if not (pts[0] == c and pts[-1] == d):
            raise ValueError("grid must start at c and end at d")

    def __len__(self) -> int:
        return len(self.points)


def build_grid(target: TargetFunction, interval: tuple, n_points: int) -> Grid:
    """Discretize the target over [c, d].

    Builtin targets are sampled on a uniform grid of `n_points`. Sampled
    targets keep their own abscissae restricted to [c, d] (`n_points` is
    ignored); the effective interval is then the restricted range.
    """
    c, d = float(interval[0]), float(interval[1])
    if not (c < d):
        raise EmptyInterval(f"need c < d, got [{c}, {d}]")
    if isinstance(target, SampledTarget):
        keep = (target.points >= c) & (target.points <= d)
        pts = target.points[keep]
        vals = target.values[keep]
        if len(pts) < 2:
            raise InsufficientSamples(f"only {len(pts)} sample(s) inside [{c}, {d}]")
        return Grid(pts, vals, (pts[0], pts[-1]))
    if n_points < 2:
        raise ValueError("n_points must be >= 2")
    pts = np.linspace(c, d, n_points)
    return Grid(pts, target(pts), (c, d))


@dataclass(frozen=True)
class RationalModel:
    """Numerator and denominator basis sets; denominator constant pinned at 1.

    Free decision variables are a (len(numerator)) and b
    (len(denominator) - 1, the coefficients after the pinned constant).
    """

    numerator: BasisSet
    denominator: BasisSet

    def __post_init__(self):
        if not isinstance(self.denominator.elements[0], Constant):
            raise ValueError("denominator element 0 must be the constant 1")

    @property
    def n_numer(self) -> int:
        return len(self.numerator)

    @property
    def n_denom_free(self) -> int:
        return len(self.denominator) - 1


@dataclass(frozen=True, eq=False)
class Coefficients:
    """Decision variables: full numerator vector a, denominator tail b."""

    a: np.ndarray
    b: np.ndarray

    def __post_init__(self):
        a = np.atleast_1d(np.asarray(self.a, dtype=float))
        b = np.atleast_1d(np.asarray(self.b, dtype=float)) if np.size(self.b) else np.zeros(0)
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        if not (np.all(np.isfinite(a)) and np.all(np.isfinite(b))):
            raise ValueError("coefficients must be finite")

    def to_dict(self) -> dict:
        return {"a": [float(v) for v in self.a], "b": [float(v) for v in self.b]}

    @classmethod
    def from_dict(cls, d: dict) -> "Coefficients":
        return cls(np.asarray(d["a"], dtype=float), np.asarray(d.get("b", []), dtype=float))


def _check_shapes(model: RationalModel, coef: Coefficients) -> None:
    if len(coef.a) != model.n_numer:
        raise ValueError(f"expected {model.n_numer} numerator coefficients, got {len(coef.a)}")
    if len(coef.b) != model.n_denom_free:
        raise ValueError(f"expected {model.n_denom_free} denominator coefficients, got {len(coef.b)}")


def denominator_array(model: RationalModel, coef: Coefficients, ts: np.ndarray) -> np.ndarray:
    """Denominator values 1 + sum(b_j h_j(t)) over an array of t."""
    _check_shapes(model, coef)
    h = design_matrix(model.denominator, np.asarray(ts, dtype=float))
    full_b = np.concatenate(([1.0], coef.b))
    return h @ full_b


def eval_model_array(model: RationalModel, coef: Coefficients, ts: np.ndarray) -> np.ndarray:
    """Vectorized model evaluation a.G(t) / (1 + b.H(t))."""
    _check_shapes(model, coef)
    ts = np.asarray(ts, dtype=float)
    num = design_matrix(model.numerator, ts) @ coef.a
    den = denominator_array(model, coef, ts)
    if np.any(np.abs(den) < DENOMINATOR_FLOOR):
        raise ZeroDenominator("denominator vanished at a requested point")
    return num / den


def eval_model(model: RationalModel, coef: Coefficients, t: float) -> float:
    """Model value at a scalar t."""
    return float(eval_model_array(model, coef, np.array([float(t)]))[0])


def max_deviation(model: RationalModel, coef: Coefficients, grid: Grid) -> float:
    """Largest absolute residual |f(t_i) - F(t_i)| over the grid."""
    approx = eval_model_array(model, coef, grid.points)
    return float(np.max(np.abs(grid.values - approx)))


def load_samples_csv(path) -> SampledTarget:
    """Read a two-column t,f CSV; a non-numeric first row is treated as a header."""
    rows = []
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        for i, row in enumerate(reader):
            if not row or all(not cell.strip() for cell in row):
                continue
            if len(row) < 2:
                raise ValueError(f"{path}: line {i + 1}: expected two columns t,f")
            try:
                rows.append((float(row[0]), float(row[1])))
            except ValueError:
                if i == 0:
                    continue  # header
                raise ValueError(f"{path}: line {i + 1}: could not parse {row!r}") from None
    if not rows:
        raise ValueError(f"{path}: no data rows")
    rows.sort(key=lambda r: r[0])
    pts = np.array([r[0] for r in rows])
    vals = np.array([r[1] for r in rows])
    return SampledTarget(pts, vals)
