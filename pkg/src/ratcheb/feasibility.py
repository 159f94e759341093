"""Level-z feasibility oracles for the bisection driver.

Two routes are implemented. Generalized rational models reduce to a
small linear program per level: minimize the band slack u subject to
the two-sided deviation constraints and a positivity floor on the
denominator. The fixed-coefficient single-hinge family admits an exact
answer by intersecting per-point knot intervals, no LP needed.
"""

from __future__ import annotations

import sys
from dataclasses import dataclass

import numpy as np

from .basis import design_matrix
from .model import Coefficients, Grid, RationalModel, denominator_array, max_deviation
from .simplex import (
    GE,
    LE,
    OPTIMAL,
    UNBOUNDED,
    LinearProgram,
    MaxIterationsError,
    NumericalBreakdown,
    dump_lp,
    solve_lp,
)

__all__ = [
    "TOL_FEAS",
    "LpFailure",
    "FeasibilityOutcome",
    "HingeProblem",
    "build_feasibility_lp",
    "check_level_rational",
    "check_level_hinge",
]

TOL_FEAS = 1e-9  # optimal slack at or below this counts as feasible
CERT_DEV = 1e-7  # witness must reproduce its level within this on the grid
CERT_DEN = 1e-9  # and keep its denominator above the floor within this


class LpFailure(RuntimeError):
    """The LP engine gave out (pivot budget) while testing a level."""


@dataclass(eq=False)
class FeasibilityOutcome:
    """Answer to one level-z test.

    witness is a Coefficients for the rational route or a knot value for
    the hinge route, present iff feasible. slack is the optimal LP
    objective (rational route only). theta_interval is the full feasible
    knot interval (hinge route only).
    """

    feasible: bool
    witness: object = None
    slack: float = None
    theta_interval: tuple = None


def build_feasibility_lp(model: RationalModel, grid: Grid, z: float, delta: float) -> LinearProgram:
    """Assemble the level-z test as an LP over (a, b, u).

    With the denominator's constant coefficient pinned at 1, its
    contribution moves to the right-hand side. Three row blocks, one per
    grid point each: the band constraint from below, from above, and the
    denominator floor. u carries a -1 lower bound so the LP is never
    unbounded.
    """
    if z < 0:
        raise ValueError("level z must be nonnegative")
    if delta <= 0:
        raise ValueError("delta must be positive")
    pts = grid.points
    f = grid.values
    G = design_matrix(model.numerator, pts)
    Ht = design_matrix(model.denominator, pts)[:, 1:]
    n, m = model.n_numer, model.n_denom_free
    N = len(grid)

    fm = f - z
    fp = f + z
    ones = np.ones((N, 1))
    lo_rows = np.hstack([-G, fm[:, None] * Ht, -ones])
    hi_rows = np.hstack([G, -fp[:, None] * Ht, -ones])
    den_rows = np.hstack([np.zeros((N, n)), Ht, np.zeros((N, 1))])

    rows = np.vstack([lo_rows, hi_rows, den_rows])
    rhs = np.concatenate([-fm, fp, np.full(N, delta - 1.0)])
    relations = (LE,) * (2 * N) + (GE,) * N

    nvars = n + m + 1
    lower = np.full(nvars, -np.inf)
    lower[-1] = -1.0
    c = np.zeros(nvars)
    c[-1] = 1.0
    return LinearProgram(c, rows, relations, rhs, lower=lower)


def check_level_rational(
    model: RationalModel,
    grid: Grid,
    z: float,
    delta: float,
    dump_to=None,
) -> FeasibilityOutcome:
    """LP route: feasible iff the optimal band slack u* is (numerically) zero."""
    lp = build_feasibility_lp(model, grid, z, delta)
    if dump_to is not None:
        dump_lp(lp, dump_to)
    try:
        sol = solve_lp(lp)
    except (MaxIterationsError, NumericalBreakdown) as exc:
        raise LpFailure(f"level test at z={z!r} broke the LP engine: {exc}") from exc

    if sol.status == UNBOUNDED:
        # cannot happen with the u >= -1 box bound; re-solve clamped, keep going
        print(f"warning: unbounded level LP at z={z!r}; re-solving with u clamped", file=sys.stderr)
        upper = np.full(lp.n_vars, np.inf)
        upper[-1] = 0.0
        clamped = LinearProgram(lp.c, lp.rows, lp.relations, lp.rhs, lp.lower, upper)
        try:
            sol = solve_lp(clamped)
        except (MaxIterationsError, NumericalBreakdown) as exc:
            raise LpFailure(f"clamped re-solve at z={z!r} broke the LP engine: {exc}") from exc
        if sol.status != OPTIMAL:
            raise LpFailure(f"unbounded level LP at z={z!r} lost feasibility on re-solve")

    if sol.status != OPTIMAL:
        return FeasibilityOutcome(False)

    u_star = float(sol.objective_value)
    if u_star > TOL_FEAS:
        return FeasibilityOutcome(False, slack=u_star)
    n = model.n_numer
    witness = Coefficients(sol.x[:n], sol.x[n : n + model.n_denom_free])
    # The slack screen alone is not enough: near-degenerate models (a
    # numerator and denominator sharing an almost-common zero) admit
    # points whose tiny positive slack, divided by a floor-level
    # denominator, shows up as a visible deviation overshoot. A level
    # only counts as feasible if its witness certifies the level.
    if max_deviation(model, witness, grid) > z + CERT_DEV:
        return FeasibilityOutcome(False, slack=u_star)
    if float(np.min(denominator_array(model, witness, grid.points))) < delta - CERT_DEN:
        return FeasibilityOutcome(False, slack=u_star)
    return FeasibilityOutcome(True, witness=witness, slack=u_star)


@dataclass(frozen=True, eq=False)
class HingeProblem:
    """Fixed line-plus-hinge family: S(t) = a0 + a1 t + a2 max(0, t - knot).

    Only the knot is free; a2 must be nonzero so the deviation band on S
    rescales to a band on the hinge itself.
    """

    a0: float
    a1: float
    a2: float
    grid: Grid

    def __post_init__(self):
        for name in ("a0", "a1", "a2"):
            object.__setattr__(self, name, float(getattr(self, name)))
        if self.a2 == 0.0:
            raise ValueError("a2 must be nonzero")

    def scaled_residuals(self) -> np.ndarray:
        """g(t_i) = (f(t_i) - a0 - a1 t_i) / a2, the values the hinge must track."""
        return (self.grid.values - self.a0 - self.a1 * self.grid.points) / self.a2

    def eval(self, theta: float, ts: np.ndarray) -> np.ndarray:
        ts = np.asarray(ts, dtype=float)
        return self.a0 + self.a1 * ts + self.a2 * np.maximum(0.0, ts - theta)

    def max_deviation(self, theta: float) -> float:
        return float(np.max(np.abs(self.grid.values - self.eval(theta, self.grid.points))))


def check_level_hinge(p: HingeProblem, z: float) -> FeasibilityOutcome:
    """Exact oracle: intersect the knot intervals allowed by each grid point.

    A deviation band of half-width z on S is a band of half-width
    z/|a2| on the hinge. Since max(0, t - knot) is nonincreasing in the
    knot, each grid point allows a single knot interval:
      upper band edge below 0  -> nothing works (hinge is nonnegative);
      band straddles 0         -> knot >= t_i - U_i;
      band strictly positive   -> t_i - U_i <= knot <= t_i - L_i.
    """
    if z < 0:
        raise ValueError("level z must be nonnegative")
    zg = z / abs(p.a2)
    g = p.scaled_residuals()
    pts = p.grid.points
    L = g - zg
    U = g + zg
    if np.any(U < 0):
        return FeasibilityOutcome(False)
    c, d = p.grid.interval
    lo = max(c, float(np.max(pts - U)))
    strict = L > 0
    hi = min(d, float(np.min(pts[strict] - L[strict]))) if np.any(strict) else d
    if lo > hi:
        return FeasibilityOutcome(False)
    theta = 0.5 * (lo + hi)
    return FeasibilityOutcome(True, witness=theta, theta_interval=(lo, hi))
