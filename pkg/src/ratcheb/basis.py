"""Scalar basis functions for numerators and denominators.

A basis element is one of three closed-form kinds: the constant 1, a
monomial t^k, or a truncated power (max(0, t - knot))^k. The enumeration
is closed on purpose (no user-supplied callables) so that a model can be
written to a config file and read back bit-identically.

Spec strings follow a small grammar, documented in the CLI:

    "1"             constant
    "t", "t^3"      monomials (exponent omitted means 1)
    "hinge(0.25)"   truncated power of degree 1 with knot 0.25
    "hinge(x)^2"    truncated power of degree 2; x may be a float,
                    a fraction like -5/7, or a named knot
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Mapping, Sequence, Union

import numpy as np

__all__ = [
    "Constant",
    "Monomial",
    "TruncatedPower",
    "BasisFunction",
    "BasisSet",
    "BasisSpecError",
    "eval_basis",
    "eval_basis_array",
    "eval_set",
    "design_matrix",
    "parse_basis",
    "format_basis",
    "parse_basis_set",
]


class BasisSpecError(ValueError):
    """Raised when a basis spec string does not match the grammar."""


@dataclass(frozen=True)
class Constant:
    """The constant function 1."""


@dataclass(frozen=True)
class Monomial:
    """t^degree with integer degree >= 0."""

    degree: int

    def __post_init__(self):
        if not isinstance(self.degree, int) or self.degree < 0:
            raise ValueError(f"monomial degree must be an integer >= 0, got {self.degree!r}")


@dataclass(frozen=True)
class TruncatedPower:
    """(max(0, t - knot))^degree with integer degree >= 1."""

    knot: float
    degree: int = 1

    def __post_init__(self):
        if not isinstance(self.degree, int) or self.degree < 1:
            raise ValueError(f"truncated power degree must be an integer >= 1, got {self.degree!r}")
        if not np.isfinite(self.knot):
            raise ValueError(f"knot must be finite, got {self.knot!r}")


BasisFunction = Union[Constant, Monomial, TruncatedPower]


def eval_basis(b: BasisFunction, t: float) -> float:
    """Evaluate one basis function at a scalar t."""
    if isinstance(b, Constant):
        return 1.0
    if isinstance(b, Monomial):
        return float(t) ** b.degree
    if isinstance(b, TruncatedPower):
        # exact zero at and below the knot, no signed-zero noise
        if t <= b.knot:
            return 0.0
        return (t - b.knot) ** b.degree
    raise TypeError(f"not a basis function: {b!r}")


def eval_basis_array(b: BasisFunction, ts: np.ndarray) -> np.ndarray:
    """Vectorized eval_basis over an array of abscissae."""
    ts = np.asarray(ts, dtype=float)
    if isinstance(b, Constant):
        return np.ones_like(ts)
    if isinstance(b, Monomial):
        return ts ** b.degree
    if isinstance(b, TruncatedPower):
        return np.maximum(0.0, ts - b.knot) ** b.degree
    raise TypeError(f"not a basis function: {b!r}")


@dataclass(frozen=True)
class BasisSet:
    """Ordered, nonempty collection of basis functions.

    The order is fixed and defines coefficient indexing everywhere else.
    """

    elements: tuple

    def __post_init__(self):
        object.__setattr__(self, "elements", tuple(self.elements))
        if not self.elements:
            raise ValueError("basis set must be nonempty")

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __getitem__(self, i):
        return self.elements[i]


def eval_set(s: BasisSet, t: float) -> np.ndarray:
    """Evaluate every element of the set at a scalar t."""
    return np.array([eval_basis(b, t) for b in s.elements], dtype=float)


def design_matrix(s: BasisSet, ts: np.ndarray) -> np.ndarray:
    """Matrix with one row per abscissa and one column per basis element."""
    ts = np.asarray(ts, dtype=float)
    return np.column_stack([eval_basis_array(b, ts) for b in s.elements])


_MONOMIAL_RE = re.compile(r"^t(?:\^(\d+))?$")
_HINGE_RE = re.compile(r"^hinge\(([^)]+)\)(?:\^(\d+))?$")
_NAME_RE = re.compile(r"^[A-Za-z_][A-Za-z_0-9]*$")


def _parse_number(token: str, knots: Mapping[str, float] | None) -> float:
    token = token.strip()
    if _NAME_RE.match(token):
        if knots is None or token not in knots:
            raise BasisSpecError(f"unknown knot name {token!r}")
        return float(knots[token])
    if "/" in token:
        num, _, den = token.partition("/")
        try:
            return float(num) / float(den)
        except (ValueError, ZeroDivisionError) as exc:
            raise BasisSpecError(f"bad fraction {token!r}") from exc
    try:
        return float(token)
    except ValueError as exc:
        raise BasisSpecError(f"bad number {token!r}") from exc


def parse_basis(spec: str, knots: Mapping[str, float] | None = None) -> BasisFunction:
    """Parse one spec string into a basis function.

    `knots` maps knot names (e.g. "theta1") to values so configs can keep
    knot locations in one place.
    """
    text = spec.strip().replace(" ", "")
    if text == "1":
        return Constant()
    m = _MONOMIAL_RE.match(text)
    if m:
        return Monomial(int(m.group(1)) if m.group(1) else 1)
    m = _HINGE_RE.match(text)
    if m:
        knot = _parse_number(m.group(1), knots)
        degree = int(m.group(2)) if m.group(2) else 1
        if degree < 1:
            raise BasisSpecError(f"hinge degree must be >= 1 in {spec!r}")
        return TruncatedPower(knot, degree)
    raise BasisSpecError(f"unrecognized basis spec {spec!r}")


def format_basis(b: BasisFunction) -> str:
    """Canonical spec string; parse_basis(format_basis(b)) == b."""
    if isinstance(b, Constant):
        return "1"
    if isinstance(b, Monomial):
        return "t" if b.degree == 1 else f"t^{b.degree}"
    if isinstance(b, TruncatedPower):
        base = f"hinge({b.knot!r})"
        return base if b.degree == 1 else f"{base}^{b.degree}"
    raise TypeError(f"not a basis function: {b!r}")


def parse_basis_set(specs: Sequence[str], knots: Mapping[str, float] | None = None) -> BasisSet:
    """Parse an ordered list of spec strings into a BasisSet."""
    return BasisSet(tuple(parse_basis(s, knots) for s in specs))
