"""Recover a hinge knot from noisy samples of a kinked line.

The hinge family is S(t) = a0 + a1 t + a2 max(0, t - theta) with the
slopes fixed and only the knot theta unknown. Each deviation level z
admits an exact interval of knots, so the level oracle needs no LP at
all. First fit clean samples (the knot comes back almost exactly, to
within the bisection tolerance), then bumpy ones (the certified floor
rises to match the bump).
"""

import numpy as np

from ratcheb import BisectionConfig, HingeProblem, SampledTarget, build_grid, fit_hinge

A0, A1, A2 = 0.5, -0.3, 2.0
TRUE_KNOT = 0.3
rng = np.random.default_rng(20240817)

ts = np.linspace(-1.0, 1.0, 801)
clean = A0 + A1 * ts + A2 * np.maximum(0.0, ts - TRUE_KNOT)


def fit(values, label):
    grid = build_grid(SampledTarget(ts, values), (-1.0, 1.0), 801)
    problem = HingeProblem(A0, A1, A2, grid)
    result = fit_hinge(problem, BisectionConfig(epsilon=1e-6))
    print(f"{label}:")
    print(f"  knot {result.witness:.6f} (true {TRUE_KNOT})")
    print(f"  certified deviation <= {result.upper:.2e} after {result.iterations} steps")
    trace = ", ".join(f"{z:.4f}{'+' if ok else '-'}" for z, ok in result.levels_tried[:6])
    print(f"  first levels tried: {trace}, ...")
    return result


fit(clean, "clean samples")

# a smooth bump the family cannot express becomes the deviation floor
bump = 0.05 * np.sin(4.0 * np.pi * ts)
noisy = fit(clean + bump, "samples with a 0.05 bump")
assert noisy.lower <= 0.05 + 1e-9

# jittered samples: the knot estimate degrades gracefully
jitter = rng.normal(scale=0.01, size=ts.shape)
fit(clean + jitter, "samples with sigma=0.01 jitter")
