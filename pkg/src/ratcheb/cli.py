"""Command-line driver: parse a config or preset, fit, write artifacts.

Configs are single JSON documents. A run produces four files in the
output directory: result.json (coefficients, certified bracket, level
trace), error_curve.csv, extrema.json, and target.csv (the gridded
target, so plotting tools need nothing but these outputs).
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .analysis import (
    ErrorCurve,
    count_alternations,
    error_curve,
    write_error_curve_csv,
    write_extrema_json,
)
from .basis import BasisSpecError, parse_basis_set
from .bisection import (
    BisectionConfig,
    IterationLimit,
    NoFeasibleLevel,
    fit_hinge,
    fit_rational,
)
from .feasibility import HingeProblem, LpFailure
from .model import (
    InsufficientSamples,
    RationalModel,
    build_grid,
    load_samples_csv,
    sqrt_abs_shift,
)

__all__ = [
    "ConfigError",
    "RunConfig",
    "load_config",
    "preset_config",
    "list_presets",
    "run",
    "main",
    "EXIT_OK",
    "EXIT_CONFIG",
    "EXIT_IO",
    "EXIT_NO_FEASIBLE_LEVEL",
    "EXIT_ITERATION_LIMIT",
]

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_IO = 3
EXIT_NO_FEASIBLE_LEVEL = 4
EXIT_ITERATION_LIMIT = 5


class ConfigError(ValueError):
    """The run configuration is malformed or inconsistent."""


@dataclass(eq=False)
class RunConfig:
    """A validated run: everything the pipeline needs, nothing it must re-check."""

    mode: str
    target: object
    interval: tuple
    grid_size: int
    model: RationalModel = None
    hinge_coefficients: tuple = None
    epsilon: float = 1e-5
    delta: float = 1e-6
    rho: float = 0.9
    max_iterations: int = 200
    out: str = None


_ALLOWED_KEYS = {
    "mode",
    "target",
    "interval",
    "grid_size",
    "numerator",
    "denominator",
    "knots",
    "hinge_coefficients",
    "epsilon",
    "delta",
    "rho",
    "max_iterations",
    "out",
}


def _number(doc, key, default, positive=False):
    v = doc.get(key, default)
    if not isinstance(v, (int, float)) or isinstance(v, bool) or not np.isfinite(v):
        raise ConfigError(f"'{key}' must be a finite number")
    if positive and v <= 0:
        raise ConfigError(f"'{key}' must be positive")
    return float(v)


def _basis_specs(doc, key):
    v = doc.get(key)
    if isinstance(v, str):
        v = [s.strip() for s in v.split(",")]
    if not isinstance(v, list) or not v or not all(isinstance(s, str) for s in v):
        raise ConfigError(f"'{key}' must be a nonempty list of basis strings")
    return v


def _parse_target(doc, base_dir: Path):
    spec = doc.get("target")
    if not isinstance(spec, dict):
        raise ConfigError("'target' must be an object with 'builtin' or 'csv'")
    if "csv" in spec:
        if set(spec) != {"csv"} or not isinstance(spec["csv"], str):
            raise ConfigError("csv target takes exactly one string field 'csv'")
        path = Path(spec["csv"])
        if not path.is_absolute():
            path = base_dir / path
        try:
            return load_samples_csv(path)
        except ValueError as exc:
            raise ConfigError(str(exc)) from exc
    if "builtin" in spec:
        name = spec["builtin"]
        if name != "sqrt_abs_shift":
            raise ConfigError(f"unknown builtin target {name!r}")
        extra = set(spec) - {"builtin", "shift"}
        if extra:
            raise ConfigError(f"unexpected target fields: {sorted(extra)}")
        return sqrt_abs_shift(_number(spec, "shift", 0.0))
    raise ConfigError("'target' needs either 'builtin' or 'csv'")


def load_config(doc: dict, base_dir: Path = None) -> RunConfig:
    """Validate a JSON config document into a RunConfig.

    base_dir anchors relative CSV paths (normally the config file's
    directory). Raises ConfigError on any inconsistency; IO failures
    while reading a CSV target propagate as OSError.
    """
    if base_dir is None:
        base_dir = Path.cwd()
    if not isinstance(doc, dict):
        raise ConfigError("config must be a JSON object")
    unknown = set(doc) - _ALLOWED_KEYS
    if unknown:
        raise ConfigError(f"unknown config keys: {sorted(unknown)}")

    mode = doc.get("mode", "rational")
    if mode not in ("rational", "hinge"):
        raise ConfigError(f"mode must be 'rational' or 'hinge', got {mode!r}")

    target = _parse_target(doc, base_dir)

    interval = doc.get("interval")
    if (
        not isinstance(interval, (list, tuple))
        or len(interval) != 2
        or not all(isinstance(v, (int, float)) and not isinstance(v, bool) for v in interval)
    ):
        raise ConfigError("'interval' must be a pair of numbers [c, d]")
    c, d = float(interval[0]), float(interval[1])
    if not (np.isfinite(c) and np.isfinite(d) and c < d):
        raise ConfigError(f"interval must satisfy c < d, got [{c}, {d}]")

    grid_size = doc.get("grid_size", 2001)
    if not isinstance(grid_size, int) or isinstance(grid_size, bool) or grid_size < 2:
        raise ConfigError("'grid_size' must be an integer >= 2")

    epsilon = _number(doc, "epsilon", 1e-5, positive=True)
    delta = _number(doc, "delta", 1e-6, positive=True)
    rho = _number(doc, "rho", 0.9)
    if not (0 < rho <= 1):
        raise ConfigError("'rho' must be in (0, 1]")
    max_iterations = doc.get("max_iterations", 200)
    if not isinstance(max_iterations, int) or isinstance(max_iterations, bool) or max_iterations < 1:
        raise ConfigError("'max_iterations' must be a positive integer")

    out = doc.get("out")
    if out is not None and not isinstance(out, str):
        raise ConfigError("'out' must be a string path")

    model = None
    hinge_coefficients = None
    if mode == "rational":
        if "hinge_coefficients" in doc:
            raise ConfigError("'hinge_coefficients' only applies to hinge mode")
        knots = doc.get("knots", {})
        if not isinstance(knots, dict) or not all(
            isinstance(k, str) and isinstance(v, (int, float)) and not isinstance(v, bool)
            for k, v in knots.items()
        ):
            raise ConfigError("'knots' must map names to numbers")
        knots = {k: float(v) for k, v in knots.items()}
        try:
            numerator = parse_basis_set(_basis_specs(doc, "numerator"), knots)
            denominator = parse_basis_set(_basis_specs(doc, "denominator"), knots)
        except BasisSpecError as exc:
            raise ConfigError(str(exc)) from exc
        try:
            model = RationalModel(numerator, denominator)
        except ValueError as exc:
            raise ConfigError(str(exc)) from exc
    else:
        for key in ("numerator", "denominator", "knots"):
            if key in doc:
                raise ConfigError(f"'{key}' does not apply to hinge mode")
        coeffs = doc.get("hinge_coefficients")
        if (
            not isinstance(coeffs, (list, tuple))
            or len(coeffs) != 3
            or not all(isinstance(v, (int, float)) and not isinstance(v, bool) for v in coeffs)
        ):
            raise ConfigError("'hinge_coefficients' must be three numbers [a0, a1, a2]")
        a0, a1, a2 = (float(v) for v in coeffs)
        if a2 == 0.0:
            raise ConfigError("hinge coefficient a2 must be nonzero")
        hinge_coefficients = (a0, a1, a2)

    return RunConfig(
        mode=mode,
        target=target,
        interval=(c, d),
        grid_size=grid_size,
        model=model,
        hinge_coefficients=hinge_coefficients,
        epsilon=epsilon,
        delta=delta,
        rho=rho,
        max_iterations=max_iterations,
        out=out,
    )


# ---------------------------------------------------------------------------
# presets: the published experiments, encoded exactly

_SQRT_TARGET = {"builtin": "sqrt_abs_shift", "shift": 0.25}


def _quadratic_pair_config(knot1: str, knot2: str) -> dict:
    # knots are spec-grammar tokens ("0.25", "-1/3", ...) so fractions stay exact
    return {
        "mode": "rational",
        "target": dict(_SQRT_TARGET),
        "interval": [-1.0, 1.0],
        "grid_size": 2001,
        "numerator": ["1", "t", "t^2", f"hinge({knot1})", f"hinge({knot1})^2"],
        "denominator": ["1", "t", "t^2", f"hinge({knot2})", f"hinge({knot2})^2"],
        "epsilon": 1e-5,
        "delta": 1e-6,
        "rho": 0.9,
    }


def _piecewise_linear_config(numer_knots, denom_knots) -> dict:
    return {
        "mode": "rational",
        "target": dict(_SQRT_TARGET),
        "interval": [-1.0, 1.0],
        "grid_size": 2001,
        "numerator": ["1", "t"] + [f"hinge({k})" for k in numer_knots],
        "denominator": ["1", "t"] + [f"hinge({k})" for k in denom_knots],
        "epsilon": 1e-5,
        "delta": 1e-6,
        "rho": 0.9,
    }


def _build_presets() -> dict:
    presets = {}
    for tok in ("0.25", "0.5", "0", "-0.5"):
        presets[f"paper-5.2.1-theta-{tok}"] = _quadratic_pair_config(tok, tok)
    for tok1, tok2 in (
        ("0.25", "0.5"),
        ("0.25", "0"),
        ("0.5", "0.25"),
        ("0.5", "0"),
        ("0", "0.25"),
        ("0", "0.5"),
        ("-1/3", "1/3"),
        ("1/3", "-1/3"),
    ):
        presets[f"paper-table1-{tok1}-{tok2}"] = _quadratic_pair_config(tok1, tok2)
    presets["paper-5.2.2-4intervals"] = _piecewise_linear_config(
        ("-0.5", "0", "0.5"), ("-0.5", "0", "0.5")
    )
    presets["paper-5.2.2-7intervals"] = _piecewise_linear_config(
        ("-5/7", "-3/7", "-1/7"), ("1/7", "3/7", "5/7")
    )
    # chord slopes of the target around its kink; the knot is the free variable
    presets["hinge-demo"] = {
        "mode": "hinge",
        "target": dict(_SQRT_TARGET),
        "interval": [-1.0, 1.0],
        "grid_size": 2001,
        "hinge_coefficients": [0.2236, -0.8944, 2.049],
        "epsilon": 1e-5,
        "delta": 1e-6,
        "rho": 0.9,
    }
    return presets


_PRESETS = _build_presets()


def list_presets() -> list:
    return list(_PRESETS)


def preset_config(name: str) -> dict:
    if name not in _PRESETS:
        raise ConfigError(f"unknown preset {name!r}; run 'ratcheb presets' for the list")
    return json.loads(json.dumps(_PRESETS[name]))  # deep copy


# ---------------------------------------------------------------------------
# pipeline


def _write_target_csv(grid, path) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["t", "f"])
        for t, f in zip(grid.points, grid.values):
            writer.writerow([repr(float(t)), repr(float(f))])


def run(config: RunConfig, out_dir: Path, verbose: bool = False, dump_lp: bool = False) -> dict:
    """Fit per config, write the four artifacts, return the result document.

    Raises ConfigError / OSError / NoFeasibleLevel / IterationLimit /
    LpFailure; main() maps each to its exit code.
    """
    try:
        grid = build_grid(config.target, config.interval, config.grid_size)
    except InsufficientSamples as exc:
        raise ConfigError(str(exc)) from exc

    bis = BisectionConfig(
        epsilon=config.epsilon, delta=config.delta, max_iterations=config.max_iterations
    )
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)

    if config.mode == "rational":
        dump_factory = None
        if dump_lp:
            dump_factory = lambda i: open(out_dir / f"lp_{i:04d}.txt", "w")
        result = fit_rational(config.model, grid, bis, verbose=verbose, dump_factory=dump_factory)
        curve = error_curve(config.model, result.witness, grid)
        coefficients = result.witness.to_dict()
    else:
        a0, a1, a2 = config.hinge_coefficients
        problem = HingeProblem(a0, a1, a2, grid)
        result = fit_hinge(problem, bis, verbose=verbose)
        residuals = grid.values - problem.eval(result.witness, grid.points)
        curve = ErrorCurve(grid.points, residuals, float(np.max(np.abs(residuals))))
        coefficients = {"theta": float(result.witness), "a": [a0, a1, a2]}

    report = count_alternations(curve, config.rho)

    document = {
        "mode": config.mode,
        "interval": [grid.interval[0], grid.interval[1]],
        "grid_size": len(grid),
        "epsilon": config.epsilon,
        "delta": config.delta,
        "rho": config.rho,
        "coefficients": coefficients,
        "lower": result.lower,
        "upper": result.upper,
        "grid_max_deviation": result.grid_max_deviation,
        "iterations": result.iterations,
        "alternation_count": report.alternation_count,
        "levels_tried": [[z, bool(feasible)] for z, feasible in result.levels_tried],
    }

    with open(out_dir / "result.json", "w") as fh:
        json.dump(document, fh, indent=2)
        fh.write("\n")
    write_error_curve_csv(curve, out_dir / "error_curve.csv")
    write_extrema_json(report, out_dir / "extrema.json")
    _write_target_csv(grid, out_dir / "target.csv")
    return document


def _cmd_fit(args) -> int:
    try:
        if args.preset:
            doc = preset_config(args.preset)
            base_dir = Path.cwd()
        else:
            config_path = Path(args.config)
            try:
                with open(config_path) as fh:
                    doc = json.load(fh)
            except json.JSONDecodeError as exc:
                raise ConfigError(f"{config_path}: {exc}") from exc
            base_dir = config_path.parent
        config = load_config(doc, base_dir)
        out_dir = Path(args.out) if args.out else Path(config.out) if config.out else Path.cwd()
        document = run(config, out_dir, verbose=args.verbose, dump_lp=args.dump_lp)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except OSError as exc:
        print(f"io error: {exc}", file=sys.stderr)
        return EXIT_IO
    except NoFeasibleLevel as exc:
        print(f"no feasible level: {exc}", file=sys.stderr)
        return EXIT_NO_FEASIBLE_LEVEL
    except (IterationLimit, LpFailure) as exc:
        print(f"iteration limit: {exc}", file=sys.stderr)
        return EXIT_ITERATION_LIMIT
    print(
        f"deviation {document['grid_max_deviation']!r} in [{document['lower']!r}, {document['upper']!r}], "
        f"{document['iterations']} iterations, {document['alternation_count']} alternating extrema"
    )
    return EXIT_OK


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="ratcheb",
        description="Best uniform approximation by generalized rational and hinge families.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    fit = sub.add_parser("fit", help="run one approximation problem")
    source = fit.add_mutually_exclusive_group(required=True)
    source.add_argument("--config", help="path to a JSON config")
    source.add_argument("--preset", help="name of a built-in experiment")
    fit.add_argument("--out", help="output directory (default: config 'out' or the working directory)")
    fit.add_argument("--verbose", action="store_true", help="trace bisection levels on stderr")
    fit.add_argument("--dump-lp", action="store_true", help="write each level's LP next to the results")
    fit.set_defaults(func=_cmd_fit)

    presets = sub.add_parser("presets", help="list built-in experiment presets")
    presets.set_defaults(func=lambda args: (print("\n".join(list_presets())), EXIT_OK)[1])

    args = parser.parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
