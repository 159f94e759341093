"""Dense linear programming with a two-phase simplex method.

The core works on a dense row-major tableau: general bounds are reduced
to nonnegative variables (shifts, reflections, free-variable splits),
inequalities get slacks, and phase 1 runs with a single artificial
column for infeasible inequality rows plus one artificial per equality
row. Pivoting is Dantzig's rule with Bland's rule as an anti-cycling
fallback after a fixed pivot budget.

Problems with vastly more rows than variables (the shape produced by
discretized uniform-approximation constraints) are solved by row
generation: solve a small working subset with the same dense core, add
the most violated rows, and repeat until every row of the full problem
is satisfied. Each working problem is a relaxation of the full one, so
the first subset optimum that is feasible for all rows is a full
optimum.
"""

from __future__ import annotations

import sys
from dataclasses import dataclass

import numpy as np

__all__ = [
    "LE",
    "EQ",
    "GE",
    "OPTIMAL",
    "INFEASIBLE",
    "UNBOUNDED",
    "LinearProgram",
    "LpSolution",
    "MaxIterationsError",
    "NumericalBreakdown",
    "solve_lp",
    "row_violations",
    "dump_lp",
]

LE, EQ, GE = "<=", "=", ">="

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"

TOL_RESIDUAL = 1e-9  # feasibility tolerance on row residuals
TOL_COST = 1e-10  # reduced costs above -TOL_COST count as optimal
TOL_PIVOT = 1e-10  # tableau entries below this never pivot
DANTZIG_PIVOT_LIMIT = 1000  # switch to Bland's rule past this many pivots
PHASE1_TOL = 1e-9  # residual infeasibility treated as zero

# row generation kicks in for problems at least this tall and skewed
_TALL_MIN_ROWS = 512
_TALL_ROW_FACTOR = 16
_TALL_SEED_ROWS = 48
_TALL_ADD_PER_ROUND = 40
_TALL_SPACING = 3


class MaxIterationsError(RuntimeError):
    """Pivot budget exhausted before the solve finished."""

    def __init__(self, pivots: int, limit: int):
        super().__init__(f"simplex exceeded {limit} pivots ({pivots} performed)")
        self.pivots = pivots
        self.limit = limit


class NumericalBreakdown(RuntimeError):
    """The tableau degraded past the feasibility tolerance, twice."""


@dataclass(eq=False)
class LinearProgram:
    """min c.x subject to rows (coeffs, relation, rhs) and variable bounds.

    Bounds default to free variables; use -inf/+inf for one-sided bounds.
    """

    c: np.ndarray
    rows: np.ndarray
    relations: tuple
    rhs: np.ndarray
    lower: np.ndarray = None
    upper: np.ndarray = None

    def __post_init__(self):
        self.c = np.asarray(self.c, dtype=float)
        self.rows = np.asarray(self.rows, dtype=float).reshape(-1, self.c.size)
        self.relations = tuple(self.relations)
        self.rhs = np.asarray(self.rhs, dtype=float)
        n = self.c.size
        if self.lower is None:
            self.lower = np.full(n, -np.inf)
        else:
            self.lower = np.asarray(self.lower, dtype=float)
        if self.upper is None:
            self.upper = np.full(n, np.inf)
        else:
            self.upper = np.asarray(self.upper, dtype=float)
        m = self.rows.shape[0]
        if len(self.relations) != m or self.rhs.size != m:
            raise ValueError("rows, relations, and rhs must have equal length")
        if any(rel not in (LE, EQ, GE) for rel in self.relations):
            raise ValueError("relations must be one of <=, =, >=")
        if self.lower.size != n or self.upper.size != n:
            raise ValueError("bounds must have one entry per variable")
        if not (np.all(np.isfinite(self.c)) and np.all(np.isfinite(self.rows)) and np.all(np.isfinite(self.rhs))):
            raise ValueError("c, rows, and rhs must be finite")
        if np.any(self.lower > self.upper):
            raise ValueError("lower bound above upper bound")

    @property
    def n_vars(self) -> int:
        return self.c.size

    @property
    def n_rows(self) -> int:
        return self.rows.shape[0]

    def take_rows(self, idx) -> "LinearProgram":
        idx = np.asarray(idx, dtype=int)
        return LinearProgram(
            self.c,
            self.rows[idx],
            tuple(self.relations[i] for i in idx),
            self.rhs[idx],
            self.lower,
            self.upper,
        )


@dataclass(eq=False)
class LpSolution:
    """Solve outcome; x and objective_value are present iff status is optimal."""

    status: str
    x: np.ndarray = None
    objective_value: float = None
    pivots: int = 0


def row_violations(lp: LinearProgram, x: np.ndarray) -> np.ndarray:
    """Per-row constraint violation (positive where violated, else <= 0)."""
    ax = lp.rows @ x
    out = np.empty(lp.n_rows)
    for i, rel in enumerate(lp.relations):
        if rel == LE:
            out[i] = ax[i] - lp.rhs[i]
        elif rel == GE:
            out[i] = lp.rhs[i] - ax[i]
        else:
            out[i] = abs(ax[i] - lp.rhs[i])
    return out


def dump_lp(lp: LinearProgram, fh=sys.stderr) -> None:
    """Plain-text dump, one row per line: coefficients, relation, rhs."""
    fh.write("min " + " ".join(repr(v) for v in lp.c) + "\n")
    for i in range(lp.n_rows):
        coeffs = " ".join(repr(v) for v in lp.rows[i])
        fh.write(f"{coeffs} {lp.relations[i]} {lp.rhs[i]!r}\n")
    fh.write("lower " + " ".join(repr(v) for v in lp.lower) + "\n")
    fh.write("upper " + " ".join(repr(v) for v in lp.upper) + "\n")


class _PivotCounter:
    """Shared pivot budget across phases (and across row-generation masters).

    The anti-cycling switch is tracked separately and per dense solve:
    Bland's rule engages once a tableau has spent `dantzig_limit` pivots
    without terminating. The threshold scales with problem size but must
    sit well below the total budget, or a cycling tableau exhausts the
    budget before the switch ever fires.
    """

    def __init__(self, limit: int, dantzig_limit: int = DANTZIG_PIVOT_LIMIT):
        self.limit = limit
        self.dantzig_limit = dantzig_limit
        self.pivots = 0
        self.local = 0
        self.force_bland = False

    def start_solve(self, force_bland: bool = False) -> None:
        self.local = 0
        self.force_bland = force_bland

    def spend(self) -> None:
        self.pivots += 1
        self.local += 1
        if self.pivots > self.limit:
            raise MaxIterationsError(self.pivots, self.limit)

    @property
    def bland(self) -> bool:
        return self.force_bland or self.local >= self.dantzig_limit


def solve_lp(lp: LinearProgram, max_pivots: int = None) -> LpSolution:
    """Solve the LP; raises MaxIterationsError if the pivot budget runs out."""
    if max_pivots is None:
        max_pivots = 50 * (lp.n_rows + lp.n_vars)
    if lp.n_rows == 0:
        return _solve_box_only(lp)
    dantzig = min(DANTZIG_PIVOT_LIMIT, max(64, 4 * (lp.n_rows + lp.n_vars)))
    counter = _PivotCounter(max_pivots, dantzig)
    if lp.n_rows >= _TALL_MIN_ROWS and lp.n_rows >= _TALL_ROW_FACTOR * lp.n_vars:
        return _solve_tall(lp, counter)
    status, x, ray = _solve_dense(lp, counter)
    return _finish(lp, status, x, counter)


def _solve_box_only(lp: LinearProgram) -> LpSolution:
    """No rows: each variable sits at whichever bound its cost prefers."""
    x = np.empty(lp.n_vars)
    for j in range(lp.n_vars):
        if lp.c[j] > 0:
            x[j] = lp.lower[j]
        elif lp.c[j] < 0:
            x[j] = lp.upper[j]
        else:
            x[j] = min(max(0.0, lp.lower[j]), lp.upper[j])
    if not np.all(np.isfinite(x)):
        return LpSolution(UNBOUNDED)
    return LpSolution(OPTIMAL, x=x, objective_value=float(lp.c @ x))


def _finish(lp: LinearProgram, status: str, x, counter: _PivotCounter) -> LpSolution:
    if status == OPTIMAL:
        return LpSolution(OPTIMAL, x=x, objective_value=float(lp.c @ x), pivots=counter.pivots)
    return LpSolution(status, pivots=counter.pivots)


# ---------------------------------------------------------------------------
# dense two-phase core


def _solve_dense(lp: LinearProgram, counter: _PivotCounter, _retry: bool = False):
    """Returns (status, x, ray); x on optimal, ray on unbounded.

    An optimal point is re-checked against the rows before it is
    returned; if accumulated pivot error pushed it past the feasibility
    tolerance, the solve reruns once under Bland's rule from the start.
    """
    counter.start_solve(force_bland=_retry)
    n = lp.n_vars

    # variable transforms to y >= 0
    col_of = []  # per original var: ("shift", col, lo) | ("neg", col, hi) | ("split", p, q)
    ncols = 0
    extra_rows = []  # (col, ub) pairs for doubly bounded vars
    for j in range(n):
        lo, hi = lp.lower[j], lp.upper[j]
        if np.isfinite(lo):
            col_of.append(("shift", ncols, lo))
            if np.isfinite(hi):
                extra_rows.append((ncols, hi - lo))
            ncols += 1
        elif np.isfinite(hi):
            col_of.append(("neg", ncols, hi))
            ncols += 1
        else:
            col_of.append(("split", ncols, ncols + 1))
            ncols += 2

    def transform_rows(rows, rhs):
        m = rows.shape[0]
        out = np.zeros((m, ncols))
        b = rhs.astype(float).copy()
        for j, spec in enumerate(col_of):
            col = rows[:, j]
            if spec[0] == "shift":
                out[:, spec[1]] = col
                b -= col * spec[2]
            elif spec[0] == "neg":
                out[:, spec[1]] = -col
                b -= col * spec[2]
            else:
                out[:, spec[1]] = col
                out[:, spec[2]] = -col
        return out, b

    # normalize every inequality to <= ; keep equalities apart
    le_rows, le_rhs, eq_rows, eq_rhs = [], [], [], []
    for i, rel in enumerate(lp.relations):
        if rel == GE:
            le_rows.append(-lp.rows[i])
            le_rhs.append(-lp.rhs[i])
        elif rel == LE:
            le_rows.append(lp.rows[i])
            le_rhs.append(lp.rhs[i])
        else:
            eq_rows.append(lp.rows[i])
            eq_rhs.append(lp.rhs[i])

    A_le, b_le = transform_rows(
        np.array(le_rows).reshape(-1, n), np.array(le_rhs, dtype=float)
    )
    A_eq, b_eq = transform_rows(
        np.array(eq_rows).reshape(-1, n), np.array(eq_rhs, dtype=float)
    )
    for col, ub in extra_rows:
        row = np.zeros(ncols)
        row[col] = 1.0
        A_le = np.vstack([A_le, row])
        b_le = np.append(b_le, ub)

    # equality rows are sign-normalized so their artificials start feasible
    for i in range(len(b_eq)):
        if b_eq[i] < 0:
            A_eq[i] = -A_eq[i]
            b_eq[i] = -b_eq[i]

    c_std = np.zeros(ncols)
    for j, spec in enumerate(col_of):
        if spec[0] == "shift":
            c_std[spec[1]] += lp.c[j]
        elif spec[0] == "neg":
            c_std[spec[1]] -= lp.c[j]
        else:
            c_std[spec[1]] += lp.c[j]
            c_std[spec[2]] -= lp.c[j]

    m_le, m_eq = A_le.shape[0], A_eq.shape[0]
    m = m_le + m_eq
    neg = np.where(b_le < 0)[0]
    n_art = (1 if neg.size else 0) + m_eq
    width = ncols + m_le + n_art + 1

    T = np.zeros((m + 1, width))
    T[:m_le, :ncols] = A_le
    T[m_le:m, :ncols] = A_eq
    T[:m_le, -1] = b_le
    T[m_le:m, -1] = b_eq
    for i in range(m_le):
        T[i, ncols + i] = 1.0  # slack
    basis = np.array([ncols + i for i in range(m_le)] + [0] * m_eq, dtype=int)

    art0 = ncols + m_le if neg.size else -1
    art_cols = []
    if neg.size:
        T[neg, art0] = -1.0
        art_cols.append(art0)
    for k in range(m_eq):
        col = ncols + m_le + (1 if neg.size else 0) + k
        T[m_le + k, col] = 1.0
        basis[m_le + k] = col
        art_cols.append(col)

    # pristine copy of the standardized system: the returned point is
    # re-derived from it so tableau roundoff never reaches the caller
    A_std = T[:m, :-1].copy()
    b_std = T[:m, -1].copy()
    row_ids = np.arange(m)

    allowed = np.ones(width - 1, dtype=bool)
    for col in art_cols:
        allowed[col] = False

    if neg.size:
        # one pivot brings the artificial into the basis and restores rhs >= 0
        r_star = int(neg[np.argmin(b_le[neg])])
        _pivot(T, basis, r_star, art0, counter)

    if art_cols:
        # phase 1: minimize the artificial mass
        obj = np.zeros(width)
        for col in art_cols:
            obj[col] = 1.0
        for i in range(m):
            if obj[basis[i]] != 0.0:
                obj = obj - obj[basis[i]] * T[i]
        T[-1] = obj
        outcome, _ = _pivot_loop(T, basis, allowed, counter)
        if outcome != "optimal":
            raise AssertionError("phase 1 objective is bounded below by zero")
        if -T[-1, -1] > PHASE1_TOL:
            return INFEASIBLE, None, None
        T, basis, row_ids = _evict_artificials(T, basis, row_ids, art_cols, allowed, counter)
        m = T.shape[0] - 1

    # phase 2 objective row from the original costs
    obj = np.zeros(T.shape[1])
    obj[:ncols] = c_std
    for i in range(m):
        if obj[basis[i]] != 0.0:
            obj = obj - obj[basis[i]] * T[i]
    T[-1] = obj
    outcome, j_enter = _pivot_loop(T, basis, allowed, counter)

    def to_original(x_std):
        x = np.empty(n)
        for j, spec in enumerate(col_of):
            if spec[0] == "shift":
                x[j] = spec[2] + x_std[spec[1]]
            elif spec[0] == "neg":
                x[j] = spec[2] - x_std[spec[1]]
            else:
                x[j] = x_std[spec[1]] - x_std[spec[2]]
        return x

    def recover_x():
        # two candidates: basic values re-solved from pristine data (clean
        # unless the basis matrix is near singular) and the drifted tableau
        # rhs; keep whichever violates the original rows less
        candidates = []
        from_tableau = np.zeros(T.shape[1] - 1)
        for i in range(m):
            from_tableau[basis[i]] = T[i, -1]
        candidates.append(to_original(from_tableau))
        basic = _refined_solve(A_std[np.ix_(row_ids, basis)], b_std[row_ids])
        if basic is not None:
            from_solve = np.zeros(T.shape[1] - 1)
            from_solve[basis] = basic
            candidates.append(to_original(from_solve))
        return min(candidates, key=lambda x: row_violations(lp, x).max())

    if outcome == "optimal":
        x = recover_x()
        if row_violations(lp, x).max() > TOL_RESIDUAL:
            if not _retry:
                return _solve_dense(lp, counter, _retry=True)
            raise NumericalBreakdown(
                f"optimal point violates a row by {row_violations(lp, x).max():.3e}"
            )
        return OPTIMAL, x, None

    # unbounded: build the improving ray in original variable space
    d_std = np.zeros(T.shape[1] - 1)
    d_std[j_enter] = 1.0
    for i in range(m):
        d_std[basis[i]] = -T[i, j_enter]
    ray = np.empty(n)
    for j, spec in enumerate(col_of):
        if spec[0] == "shift":
            ray[j] = d_std[spec[1]]
        elif spec[0] == "neg":
            ray[j] = -d_std[spec[1]]
        else:
            ray[j] = d_std[spec[1]] - d_std[spec[2]]
    return UNBOUNDED, None, ray


def _refined_solve(A, b):
    """Solve A x = b with one step of iterative refinement.

    The correction residual is accumulated in extended precision, which
    matters when the optimum sits at a vertex with large coordinates.
    Returns None when the system is singular or produces non-finite
    values.
    """
    try:
        x = np.linalg.solve(A, b)
        A_w = A.astype(np.longdouble)
        r = np.asarray(b.astype(np.longdouble) - A_w @ x.astype(np.longdouble), dtype=float)
        x = x + np.linalg.solve(A, r)
    except np.linalg.LinAlgError:
        return None
    if not np.all(np.isfinite(x)):
        return None
    return x


def _pivot(T, basis, row: int, col: int, counter: _PivotCounter) -> None:
    counter.spend()
    T[row] /= T[row, col]
    factors = T[:, col].copy()
    factors[row] = 0.0
    T -= np.outer(factors, T[row])
    T[:, col] = 0.0
    T[row, col] = 1.0
    basis[row] = col


def _pivot_loop(T, basis, allowed, counter: _PivotCounter):
    """Run simplex pivots on the current objective row until optimal/unbounded."""
    m = T.shape[0] - 1
    while True:
        r = T[-1, :-1]
        entering = np.where(allowed & (r < -TOL_COST))[0]
        if entering.size == 0:
            return "optimal", -1
        if counter.bland:
            j = int(entering[0])
        else:
            j = int(entering[np.argmin(r[entering])])
        col = T[:m, j]
        pos = np.where(col > TOL_PIVOT)[0]
        if pos.size == 0:
            return "unbounded", j
        rhs = np.maximum(T[:m, -1][pos], 0.0)
        ratios = rhs / col[pos]
        rmin = ratios.min()
        tie = pos[ratios <= rmin + 1e-9 * (1.0 + abs(rmin))]
        if counter.bland:
            # Bland's guarantee needs the smallest basic index among ties
            row = int(tie[np.argmin(basis[tie])])
        else:
            # degenerate ties are common; the largest pivot entry keeps the
            # tableau from blowing up on a near-zero element
            row = int(tie[np.argmax(col[tie])])
        _pivot(T, basis, row, j, counter)


def _evict_artificials(T, basis, row_ids, art_cols, allowed, counter: _PivotCounter):
    """Pivot artificial variables out of the basis; drop redundant rows."""
    art = set(art_cols)
    m = T.shape[0] - 1
    drop = []
    for i in range(m):
        if basis[i] not in art:
            continue
        row = T[i, :-1]
        cand = np.where(allowed & (np.abs(row) > TOL_PIVOT))[0]
        if cand.size:
            # the artificial sits at zero here, so its rhs is pure phase 1
            # roundoff; clear it and take the largest entry, or the pivot
            # turns that roundoff into a macroscopic infeasibility
            T[i, -1] = 0.0
            _pivot(T, basis, i, int(cand[np.argmax(np.abs(row[cand]))]), counter)
        else:
            drop.append(i)
    if drop:
        keep = [i for i in range(m) if i not in set(drop)]
        T = np.vstack([T[keep], T[-1:]])
        basis = basis[keep]
        row_ids = row_ids[keep]
    return T, basis, row_ids


# ---------------------------------------------------------------------------
# very tall problems: solve the dual, fall back to row generation


def _solve_tall(lp: LinearProgram, counter: _PivotCounter) -> LpSolution:
    if EQ not in lp.relations:
        out = _solve_tall_dual(lp, counter)
        if out is not None:
            return out
    return _solve_tall_rowgen(lp, counter)


def _solve_tall_dual(lp: LinearProgram, counter: _PivotCounter):
    """Solve an inequality-only tall LP through its dual.

    With rows A x <= b (bounds folded in as rows) and free variables,
    the dual is min b.w subject to A^T w = -c, w >= 0: as many equality
    rows as the primal has VARIABLES, so the tableau stays a few rows
    tall no matter how many primal rows there are. The primal point is
    the dual's equality multipliers, recomputed from pristine data via
    the final basis. Returns None when this route cannot certify an
    answer (dual infeasible, dependent rows, or a failed residual
    check); the caller then falls back to row generation.
    """
    nv = lp.n_vars
    sign = np.array([-1.0 if rel == GE else 1.0 for rel in lp.relations])
    A = lp.rows * sign[:, None]
    b = lp.rhs * sign
    extra_rows, extra_rhs = [], []
    for j in range(nv):
        lo, hi = lp.lower[j], lp.upper[j]
        if np.isfinite(lo):
            e = np.zeros(nv)
            e[j] = -1.0
            extra_rows.append(e)
            extra_rhs.append(-lo)
        if np.isfinite(hi):
            e = np.zeros(nv)
            e[j] = 1.0
            extra_rows.append(e)
            extra_rhs.append(hi)
    if extra_rows:
        A = np.vstack([A, extra_rows])
        b = np.concatenate([b, extra_rhs])
    M = A.shape[0]

    D = A.T.copy()
    r = -lp.c.astype(float)
    flip = r < 0
    D[flip] *= -1.0
    r = np.abs(r)

    counter.start_solve()
    width = M + nv + 1
    T = np.zeros((nv + 1, width))
    T[:nv, :M] = D
    T[:nv, M : M + nv] = np.eye(nv)
    T[:nv, -1] = r
    D_std = T[:nv, :-1].copy()
    basis = np.arange(M, M + nv)
    row_ids = np.arange(nv)
    allowed = np.ones(width - 1, dtype=bool)
    allowed[M:] = False

    # phase 1 on the all-artificial basis
    obj = np.zeros(width)
    obj[M : M + nv] = 1.0
    for i in range(nv):
        obj = obj - T[i]
    T[-1] = obj
    outcome, _ = _pivot_loop(T, basis, allowed, counter)
    if outcome != "optimal":
        raise AssertionError("phase 1 objective is bounded below by zero")
    if -T[-1, -1] > PHASE1_TOL:
        return None  # dual infeasible: primal unbounded or infeasible
    T, basis, row_ids = _evict_artificials(T, basis, row_ids, list(range(M, M + nv)), allowed, counter)
    if len(row_ids) != nv:
        return None  # dependent dual rows; let row generation sort it out

    c2 = np.zeros(width)
    c2[:M] = b
    for i in range(nv):
        if c2[basis[i]] != 0.0:
            c2 = c2 - c2[basis[i]] * T[i]
    T[-1] = c2
    outcome, _ = _pivot_loop(T, basis, allowed, counter)
    if outcome == "unbounded":
        # dual objective sinks without bound, so the primal has no feasible point
        return _finish(lp, INFEASIBLE, None, counter)

    cost_basic = b[basis] if np.all(basis < M) else None
    if cost_basic is None:
        return None
    multipliers = _refined_solve(D_std[:, basis].T, cost_basic)
    if multipliers is None:
        return None
    x = multipliers.copy()
    x[flip] = -x[flip]
    if row_violations(lp, x).max() > TOL_RESIDUAL:
        return None
    return _finish(lp, OPTIMAL, x, counter)


def _spread_indices(order, taken_mask, limit, spacing):
    """Greedy pick of up to `limit` indices in `order`, keeping raw-index gaps."""
    chosen = []
    for i in order:
        if taken_mask[i]:
            continue
        if any(abs(i - k) <= spacing for k in chosen):
            continue
        chosen.append(int(i))
        if len(chosen) >= limit:
            break
    return chosen


def _solve_tall_rowgen(lp: LinearProgram, counter: _PivotCounter) -> LpSolution:
    m = lp.n_rows
    in_working = np.zeros(m, dtype=bool)
    seed = np.unique(np.round(np.linspace(0, m - 1, _TALL_SEED_ROWS)).astype(int))
    in_working[seed] = True
    for i, rel in enumerate(lp.relations):
        if rel == EQ:
            in_working[i] = True

    while True:
        working = np.where(in_working)[0]
        sub = lp.take_rows(working)
        status, x, ray = _solve_dense(sub, counter)
        if status == INFEASIBLE:
            # the working problem is a relaxation, so the full one is infeasible
            return _finish(lp, INFEASIBLE, None, counter)
        if status == UNBOUNDED:
            drift = lp.rows @ ray
            viol = np.zeros(m)
            for i, rel in enumerate(lp.relations):
                if rel == LE:
                    viol[i] = drift[i]
                elif rel == GE:
                    viol[i] = -drift[i]
                else:
                    viol[i] = abs(drift[i])
            order = np.argsort(-viol, kind="stable")
            order = order[viol[order] > 1e-12]
            add = _spread_indices(order, in_working, _TALL_ADD_PER_ROUND, _TALL_SPACING)
            if not add:
                return _finish(lp, UNBOUNDED, None, counter)
            in_working[add] = True
            continue
        viol = row_violations(lp, x)
        if viol.max() <= TOL_RESIDUAL:
            return _finish(lp, OPTIMAL, x, counter)
        order = np.argsort(-viol, kind="stable")
        order = order[viol[order] > TOL_RESIDUAL]
        add = _spread_indices(order, in_working, _TALL_ADD_PER_ROUND, _TALL_SPACING)
        if not add:
            # master points satisfy working rows, so a violated row is always new
            raise NumericalBreakdown("row generation stalled with outstanding violations")
        in_working[add] = True
