"""Error curves, alternation counting, quasiconvexity sampling."""

import csv
import json

import numpy as np
import pytest

from ratcheb.analysis import (
    DomainSkip,
    ErrorCurve,
    check_quasiconvexity_sample,
    count_alternations,
    deviation_function,
    error_curve,
    extrema_to_dict,
    write_error_curve_csv,
    write_extrema_json,
)
from ratcheb.basis import BasisSet, Constant, Monomial
from ratcheb.model import (
    Coefficients,
    Grid,
    RationalModel,
    build_grid,
    max_deviation,
    sqrt_abs_shift,
)


def _curve(errors):
    e = np.asarray(errors, dtype=float)
    ts = np.linspace(0.0, 1.0, e.size)
    return ErrorCurve(ts, e, float(np.max(np.abs(e))) if e.size else 0.0)


def test_three_point_alternation():
    report = count_alternations(_curve([1.0, -1.0, 1.0]), rho=0.9)
    assert report.alternation_count == 3
    assert [s for _, _, s in report.extrema] == [1, -1, 1]


def test_zero_curve_has_no_extrema():
    report = count_alternations(_curve([0.0, 0.0, 0.0, 0.0]), rho=0.9)
    assert report.alternation_count == 0
    assert report.extrema == []


def test_negation_symmetry():
    e = [0.8, -1.0, 0.6, 0.9, -0.7]
    a = count_alternations(_curve(e), rho=0.5)
    b = count_alternations(_curve([-v for v in e]), rho=0.5)
    assert a.alternation_count == b.alternation_count
    assert [s for _, _, s in a.extrema] == [-s for _, _, s in b.extrema]


def test_rho_monotone_in_count():
    # an oscillation with smaller side lobes: tighter rho drops them
    e = [1.0, -0.5, 0.45, -0.5, -1.0]
    loose = count_alternations(_curve(e), rho=0.4)
    tight = count_alternations(_curve(e), rho=0.95)
    assert loose.alternation_count == 4
    assert tight.alternation_count == 2
    assert tight.alternation_count <= loose.alternation_count


def test_same_sign_runs_collapse_to_largest():
    # two positive humps separated by a shallow dip that stays positive
    e = [0.0, 0.9, 0.2, 1.0, 0.0, -1.0]
    report = count_alternations(_curve(e), rho=0.5)
    assert report.alternation_count == 2
    (t0, e0, s0), (t1, e1, s1) = report.extrema
    assert (e0, s0) == (1.0, 1)
    assert (e1, s1) == (-1.0, -1)


def test_plateau_counts_once():
    e = [0.0, 1.0, 1.0, 0.0, -1.0]
    report = count_alternations(_curve(e), rho=0.9)
    assert report.alternation_count == 2
    assert [s for _, _, s in report.extrema] == [1, -1]


def test_endpoints_are_candidates():
    # strictly decreasing curve: only the endpoints can alternate
    e = [1.0, 0.5, 0.0, -0.5, -1.0]
    report = count_alternations(_curve(e), rho=0.9)
    assert report.alternation_count == 2
    assert report.extrema[0][0] == 0.0
    assert report.extrema[1][0] == 1.0


def test_rho_validation_and_empty_curve():
    with pytest.raises(ValueError):
        count_alternations(_curve([1.0, -1.0]), rho=0.0)
    with pytest.raises(ValueError):
        count_alternations(_curve([1.0, -1.0]), rho=1.5)
    with pytest.raises(ValueError):
        count_alternations(ErrorCurve(np.zeros(0), np.zeros(0), 0.0), rho=0.9)


def test_error_curve_matches_direct_evaluation():
    model = RationalModel(
        BasisSet((Constant(), Monomial(1))), BasisSet((Constant(),))
    )
    grid = build_grid(sqrt_abs_shift(0.0), (-1.0, 1.0), 51)
    coef = Coefficients(np.array([0.3, 0.1]), np.zeros(0))
    curve = error_curve(model, coef, grid)
    assert np.array_equal(curve.ts, grid.points)
    assert curve.max_abs == max_deviation(model, coef, grid)
    assert np.allclose(
        curve.errors, grid.values - (0.3 + 0.1 * grid.points), atol=1e-15
    )


def test_deviation_function_packs_coefficients():
    model = RationalModel(
        BasisSet((Constant(), Monomial(1))), BasisSet((Constant(), Monomial(1)))
    )
    grid = build_grid(sqrt_abs_shift(0.25), (-1.0, 1.0), 101)
    phi = deviation_function(model, grid)
    coef = Coefficients(np.array([0.5, -0.2]), np.array([0.3]))
    packed = np.array([0.5, -0.2, 0.3])
    assert phi(packed) == max_deviation(model, coef, grid)


def test_deviation_function_domain_skip():
    model = RationalModel(
        BasisSet((Constant(),)), BasisSet((Constant(), Monomial(1)))
    )
    grid = build_grid(sqrt_abs_shift(0.0), (-1.0, 1.0), 21)
    phi = deviation_function(model, grid)
    with pytest.raises(DomainSkip):
        phi(np.array([1.0, 2.0]))  # denominator 1 + 2t < 0 at t = -1
    with pytest.raises(ValueError):
        phi(np.array([1.0]))


def test_quasiconvexity_holds_on_affine_slices():
    # with the denominator fixed, deviation is convex in the numerator
    # coefficients, so sampled quasiconvexity can never fail there
    model = RationalModel(
        BasisSet((Constant(), Monomial(1))), BasisSet((Constant(),))
    )
    grid = build_grid(sqrt_abs_shift(0.25), (-1.0, 1.0), 101)
    phi = deviation_function(model, grid)
    rng = np.random.default_rng(11)
    for _ in range(50):
        x = rng.normal(size=2)
        y = rng.normal(size=2)
        lam = float(rng.uniform())
        assert check_quasiconvexity_sample(phi, x, y, lam)


def test_quasiconvexity_lambda_validation():
    phi = lambda v: float(np.max(np.abs(v)))
    with pytest.raises(ValueError):
        check_quasiconvexity_sample(phi, [0.0], [1.0], 1.5)


def test_csv_and_json_round_trip(tmp_path):
    curve = _curve([0.25, -1.0, 0.75])
    report = count_alternations(curve, rho=0.5)

    csv_path = tmp_path / "curve.csv"
    write_error_curve_csv(curve, csv_path)
    with open(csv_path, newline="") as fh:
        rows = list(csv.reader(fh))
    assert rows[0] == ["t", "e"]
    assert len(rows) == 4
    # repr round-trips doubles exactly
    assert [float(r[1]) for r in rows[1:]] == [0.25, -1.0, 0.75]

    json_path = tmp_path / "extrema.json"
    write_extrema_json(report, json_path)
    loaded = json.loads(json_path.read_text())
    assert loaded == extrema_to_dict(report)
    assert loaded["count"] == report.alternation_count
    assert loaded["extrema"][0].keys() == {"t", "e", "sign"}
