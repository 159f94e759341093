"""Bisection on the deviation level, driven by a feasibility oracle.

The deviation as a function of the level is monotone: once a level is
feasible every larger level is too. Bisection therefore brackets the
optimal level between the largest known-infeasible value and the
smallest known-feasible one, halving the bracket each iteration until
it is narrower than epsilon. The witness always comes from the last
feasible test, so the returned coefficients certify deviation <= upper.
"""

from __future__ import annotations

import sys
from dataclasses import dataclass, replace

import numpy as np

from .feasibility import HingeProblem, check_level_hinge, check_level_rational
from .model import Grid, RationalModel, max_deviation

__all__ = [
    "NoFeasibleLevel",
    "IterationLimit",
    "BisectionConfig",
    "FitResult",
    "init_bounds",
    "bisect",
    "fit_rational",
    "fit_hinge",
]


class NoFeasibleLevel(RuntimeError):
    """The initial upper bound failed its feasibility test."""


class IterationLimit(RuntimeError):
    """The iteration cap was hit before the bracket closed."""


@dataclass(frozen=True)
class BisectionConfig:
    """Knobs for the level search.

    initial_upper = None means: derive the bound from the problem (the
    target's value range for rational fits, the no-hinge residual for
    hinge fits). Equal bounds are legal and return after one test.
    """

    epsilon: float = 1e-5
    delta: float = 1e-6
    max_iterations: int = 200
    initial_lower: float = 0.0
    initial_upper: float = None

    def __post_init__(self):
        if self.epsilon <= 0:
            raise ValueError("epsilon must be positive")
        if self.delta <= 0:
            raise ValueError("delta must be positive")
        if self.max_iterations < 1:
            raise ValueError("max_iterations must be at least 1")
        if self.initial_lower < 0:
            raise ValueError("initial_lower must be nonnegative")
        if self.initial_upper is not None and self.initial_upper < self.initial_lower:
            raise ValueError("initial_upper must not be below initial_lower")


@dataclass(eq=False)
class FitResult:
    """Outcome of a level search: certified bracket plus the witness."""

    witness: object
    lower: float
    upper: float
    levels_tried: list
    grid_max_deviation: float
    iterations: int


def init_bounds(grid: Grid) -> tuple:
    """Level 0 is always a lower bound; the value range is always an upper one."""
    values = grid.values
    return 0.0, float(np.max(values) - np.min(values))


def bisect(oracle, config: BisectionConfig, deviation_fn, verbose: bool = False) -> FitResult:
    """Run the level search; config.initial_upper must be concrete here.

    oracle(z) -> FeasibilityOutcome; deviation_fn(witness) -> achieved
    grid deviation, evaluated once on the final witness.
    """
    if config.initial_upper is None:
        raise ValueError("bisect needs a concrete initial_upper (drivers resolve the automatic bound)")
    lower = float(config.initial_lower)
    upper = float(config.initial_upper)
    levels = []

    outcome = oracle(upper)
    levels.append((upper, outcome.feasible))
    if verbose:
        print(f"[bisect] initial upper={upper!r} feasible={outcome.feasible}", file=sys.stderr)
    if not outcome.feasible:
        raise NoFeasibleLevel(f"level {upper!r} is infeasible; no search interval exists")
    witness = outcome.witness

    iterations = 0
    while upper - lower >= config.epsilon:
        if iterations >= config.max_iterations:
            raise IterationLimit(f"bracket still {upper - lower!r} wide after {iterations} iterations")
        z = 0.5 * (lower + upper)
        outcome = oracle(z)
        iterations += 1
        levels.append((z, outcome.feasible))
        if verbose:
            print(
                f"[bisect] it={iterations} lower={lower!r} upper={upper!r} z={z!r} feasible={outcome.feasible}",
                file=sys.stderr,
            )
        if outcome.feasible:
            upper = z
            witness = outcome.witness
        else:
            lower = z

    return FitResult(
        witness=witness,
        lower=lower,
        upper=upper,
        levels_tried=levels,
        grid_max_deviation=float(deviation_fn(witness)),
        iterations=iterations,
    )


def fit_rational(
    model: RationalModel,
    grid: Grid,
    config: BisectionConfig = BisectionConfig(),
    verbose: bool = False,
    dump_factory=None,
) -> FitResult:
    """Best uniform fit of a generalized rational model on the grid.

    dump_factory, when given, is called with the running test index and
    must return a writable text stream for the level LP (closed here).
    """
    if config.initial_upper is None:
        config = replace(config, initial_upper=init_bounds(grid)[1])
    counter = {"n": 0}

    def oracle(z):
        dump_to = None
        if dump_factory is not None:
            dump_to = dump_factory(counter["n"])
        counter["n"] += 1
        try:
            return check_level_rational(model, grid, z, config.delta, dump_to=dump_to)
        finally:
            if dump_to is not None:
                dump_to.close()

    return bisect(oracle, config, lambda coef: max_deviation(model, coef, grid), verbose=verbose)


def fit_hinge(
    problem: HingeProblem,
    config: BisectionConfig = BisectionConfig(),
    verbose: bool = False,
) -> FitResult:
    """Best knot placement for the fixed-coefficient hinge family.

    The automatic upper bound is the residual of the bare line (knot at
    the right endpoint makes the hinge vanish on the grid), which is
    always feasible; the value-range bound would not be, since the other
    coefficients are frozen.
    """
    if config.initial_upper is None:
        bare_line = float(
            np.max(np.abs(problem.grid.values - problem.a0 - problem.a1 * problem.grid.points))
        )
        config = replace(config, initial_upper=bare_line)
    return bisect(
        lambda z: check_level_hinge(problem, z),
        config,
        problem.max_deviation,
        verbose=verbose,
    )
