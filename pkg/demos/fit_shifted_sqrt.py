"""Fit sqrt(|t - 0.25|) on [-1, 1] with a kinked rational model.

The target has a square-root cusp at t = 0.25. A plain polynomial ratio
smooths right past it, so the model puts a hinge at the cusp in both the
numerator and the denominator. The run prints the certified deviation
bracket, the coefficients, and the alternating extrema of the error.
"""

import numpy as np

from ratcheb import (
    BasisSet,
    BisectionConfig,
    Constant,
    Monomial,
    RationalModel,
    TruncatedPower,
    build_grid,
    count_alternations,
    error_curve,
    fit_rational,
    sqrt_abs_shift,
)

SHIFT = 0.25
basis = BasisSet((Constant(), Monomial(1), TruncatedPower(SHIFT, 1)))
model = RationalModel(numerator=basis, denominator=basis)
grid = build_grid(sqrt_abs_shift(SHIFT), (-1.0, 1.0), 2001)

result = fit_rational(model, grid, BisectionConfig(epsilon=1e-5, delta=1e-6))

print(f"certified bracket : [{result.lower:.6f}, {result.upper:.6f}]")
print(f"witness deviation : {result.grid_max_deviation:.6f}")
print(f"bisection steps   : {result.iterations}")
den = np.concatenate([[1.0], result.witness.b])  # leading coefficient is pinned
print(f"numerator  a      : {np.array2string(result.witness.a, precision=5)}")
print(f"denominator [1,b] : {np.array2string(den, precision=5)}")

# the best constant gets (max - min) / 2; the kinked ratio should crush it
flat = (grid.values.max() - grid.values.min()) / 2
print(f"\nbest constant would leave {flat:.4f}; the fit leaves {result.upper:.6f}")

curve = error_curve(model, result.witness, grid)
report = count_alternations(curve, rho=0.9)
print(f"\n{report.alternation_count} alternating extrema at >= 90% of max|e|:")
for t, e, sign in report.extrema:
    print(f"  t = {t:+.4f}   e = {e:+.7f}   sign {sign:+d}")
