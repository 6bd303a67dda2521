"""Earthwork functionals between two piecewise-linear profiles.

A design x and a ground profile w over the same stations define two
linear splines.  The exact cut-and-fill area decomposes per segment
through the stadium norm; the signed area is a plain inner product
with the knot weights eta, and its absolute value measures the final
cut/fill imbalance that must be hauled.
"""

import numpy as np

from roadalign import segment_area, signed_total_area, spline_eval, total_area, weights
from roadalign.spline_area import area_parity_value, prox_area_l1, prox_abs_signed_area

t = np.array([0.0, 80.0, 150.0, 260.0, 400.0])
w = np.array([100.0, 102.0, 101.0, 99.0, 100.5])   # ground
x = np.array([100.5, 101.0, 101.5, 100.0, 100.0])  # candidate design

aw = weights(t)
print(f"stations: {t.tolist()}")
print(f"segment half-widths tau: {aw.tau.tolist()}")
print(f"knot weights eta: {aw.eta.tolist()} (sum = road length {aw.eta.sum():.0f} m)")

print(f"\nspline evaluation at mid-span 200 m: design {spline_eval(t, x, 200.0):.3f} m, "
      f"ground {spline_eval(t, w, 200.0):.3f} m")

print("\nper-segment areas (one crossing segment shows the gap between estimates):")
d = x - w
for i in range(t.size - 1):
    sb = segment_area(aw.tau[i], d[i], d[i + 1], "stadium")
    lb = segment_area(aw.tau[i], d[i], d[i + 1], "l1")
    print(f"  segment {i}: exact {sb:8.2f} m^2   l1 bound {lb:8.2f} m^2")

print(f"\ntotal area: exact {total_area(x, w, t, 'stadium'):.2f}"
      f" <= hexagonal {total_area(x, w, t, 'hexagonal'):.2f}"
      f" <= l1 {total_area(x, w, t, 'l1'):.2f}")
print(f"odd + even split recombines exactly: "
      f"{area_parity_value(x, w, t, 'stadium', 'odd') + area_parity_value(x, w, t, 'stadium', 'even'):.2f}")

s = signed_total_area(x, w, t)
print(f"\nsigned area <eta, x - w> = {s:.2f} m^2 "
      f"({'more fill than cut' if s > 0 else 'more cut than fill'})")

# Quadrature agrees with the closed forms.
grid = np.linspace(t[0], t[-1], 1_000_001)
gap = np.interp(grid, t, x) - np.interp(grid, t, w)
print(f"quadrature check: |gap| integral {np.trapezoid(np.abs(gap), grid):.4f} "
      f"vs stadium {total_area(x, w, t, 'stadium'):.4f}")
print(f"                  gap integral   {np.trapezoid(gap, grid):.4f} "
      f"vs signed  {s:.4f}")

print("\nproximity operators pull a design toward the ground profile:")
y = prox_area_l1(x, w, aw.eta, gamma=0.01, alpha=4.0)
print(f"  l1-area prox (gamma 0.01, alpha 4): {np.round(y, 3).tolist()}")
y = prox_abs_signed_area(x, w, aw.eta, gamma=0.01, alpha=1.0)
print(f"  |signed area| prox rebalances:      {np.round(y, 3).tolist()}")
print(f"  signed area before {s:.2f}, after {signed_total_area(y, w, t):.2f}")
