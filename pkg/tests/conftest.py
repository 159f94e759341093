"""Shared oracles and generators for the test suite.

The LP oracle enumerates vertices by brute force, so it is only usable
on tiny instances; the generators keep every entry on a quarter-unit
grid so the enumerated vertices are numerically clean and degenerate
ties are common rather than rare.
"""

import itertools

import numpy as np

from ratcheb.simplex import EQ, GE, LE, LinearProgram

BOX = 4.0  # every random LP variable lives in [-BOX, BOX]


def lp_point_feasible(lp: LinearProgram, x: np.ndarray, tol: float = 1e-9) -> bool:
    """Check a point against all rows and bounds of an LP."""
    ax = lp.rows @ x
    for i, rel in enumerate(lp.relations):
        if rel == LE and ax[i] > lp.rhs[i] + tol:
            return False
        if rel == GE and ax[i] < lp.rhs[i] - tol:
            return False
        if rel == EQ and abs(ax[i] - lp.rhs[i]) > tol:
            return False
    return bool(np.all(x >= lp.lower - tol) and np.all(x <= lp.upper + tol))


def brute_force_lp(lp: LinearProgram, tol: float = 1e-9):
    """Minimum objective by enumerating all candidate vertices.

    Solves every square subsystem of constraint hyperplanes (rows plus
    active bounds), keeps the feasible solutions, and returns
    ("optimal", best value) or ("infeasible", None). Requires a bounded
    feasible region, which the box bounds of the generator guarantee.
    """
    n = lp.n_vars
    planes = [(lp.rows[i], lp.rhs[i]) for i in range(lp.n_rows)]
    for j in range(n):
        e = np.zeros(n)
        e[j] = 1.0
        if np.isfinite(lp.lower[j]):
            planes.append((e, lp.lower[j]))
        if np.isfinite(lp.upper[j]):
            planes.append((e.copy(), lp.upper[j]))
    best = None
    for combo in itertools.combinations(range(len(planes)), n):
        A = np.array([planes[i][0] for i in combo])
        b = np.array([planes[i][1] for i in combo])
        if abs(np.linalg.det(A)) < 1e-12:
            continue
        x = np.linalg.solve(A, b)
        if lp_point_feasible(lp, x, tol):
            val = float(lp.c @ x)
            if best is None or val < best:
                best = val
    if best is None:
        return "infeasible", None
    return "optimal", best


def random_small_lp(rng: np.random.Generator) -> LinearProgram:
    """A random boxed LP with at most 4 variables and 8 rows.

    Rows are anchored on an interior point so most instances are
    feasible; a quarter of them get one constraint shoved past the box
    to exercise the infeasible path. Quarter-grid data keeps the
    vertex-enumeration oracle exact.
    """
    n = int(rng.integers(1, 5))
    m = int(rng.integers(1, 9))
    A = rng.integers(-3, 4, size=(m, n)).astype(float)
    # all-zero rows say nothing; give them one entry
    for i in range(m):
        if not A[i].any():
            A[i, int(rng.integers(0, n))] = 1.0
    x0 = rng.integers(-8, 9, size=n) / 4.0
    slack = rng.integers(0, 9, size=m) / 4.0

    rels = []
    rhs = np.empty(m)
    for i in range(m):
        u = rng.random()
        if u < 0.45:
            rels.append(LE)
            rhs[i] = A[i] @ x0 + slack[i]
        elif u < 0.9:
            rels.append(GE)
            rhs[i] = A[i] @ x0 - slack[i]
        else:
            rels.append(EQ)
            rhs[i] = A[i] @ x0
    if rng.random() < 0.25:
        k = int(rng.integers(0, m))
        push = float(8 * BOX * max(1.0, np.abs(A[k]).sum()))
        rhs[k] = rhs[k] - push if rels[k] == LE else rhs[k] + push
        if rels[k] == EQ:
            rhs[k] = push
    c = rng.integers(-8, 9, size=n) / 4.0
    return LinearProgram(
        c, A, tuple(rels), rhs, np.full(n, -BOX), np.full(n, BOX)
    )


def hinge_scan(problem, z: float, n_scan: int = 100_000, tol: float = 1e-9):
    """Dense knot scan: (any feasible knot found, best deviation seen).

    Evaluates the full hinge family at n_scan equally spaced knots and
    tests max |S - f| <= z + tol at each.
    """
    c, d = problem.grid.interval
    thetas = np.linspace(c, d, n_scan)
    pts = problem.grid.points
    hinge = np.maximum(0.0, pts[None, :] - thetas[:, None])
    s = problem.a0 + problem.a1 * pts[None, :] + problem.a2 * hinge
    dev = np.max(np.abs(problem.grid.values - s), axis=1)
    return bool(np.min(dev) <= z + tol), float(np.min(dev))
