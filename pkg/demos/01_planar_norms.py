"""The three planar area norms and their duals.

For elevation deviations (d1, d2) at the two ends of a road segment of
width 2*tau, tau * stadium_norm((d1, d2)) is the exact cut-and-fill
area between design and ground over that segment.  The hexagonal and
l1 norms over-estimate it but have polyhedral unit balls, which makes
their projections even cheaper.
"""

import numpy as np

from roadalign import (
    dual_hexagonal_norm,
    dual_l1_norm,
    dual_stadium_norm,
    hexagonal_norm,
    l1_norm,
    stadium_norm,
)

samples = np.array([(1.0, 1.0), (1.0, -1.0), (3.0, -1.0), (0.5, 2.0), (-2.0, 0.3)])

print("point          stadium   hexagonal  l1")
for p in samples:
    print(f"({p[0]:5.2f},{p[1]:5.2f})  {stadium_norm(p):8.4f} {hexagonal_norm(p):9.4f} {l1_norm(p):6.4f}")

print("\nThe three norms agree exactly when d1*d2 >= 0 (no crossing of the")
print("ground line inside the segment) and differ otherwise:")
p = np.array([2.0, -1.0])
print(f"  at {tuple(p)}: stadium {stadium_norm(p):.4f} <= hexagonal {hexagonal_norm(p):.4f}"
      f" <= l1 {l1_norm(p):.4f}")

print("\nDual norms (closed form):")
for p in samples:
    print(
        f"({p[0]:5.2f},{p[1]:5.2f})  {dual_stadium_norm(p):8.4f} "
        f"{dual_hexagonal_norm(p):9.4f} {dual_l1_norm(p):6.4f}"
    )

# Sanity: sampled supremum over a norm's unit sphere reproduces its dual.
rng = np.random.default_rng(0)
theta = np.linspace(0.0, 2.0 * np.pi, 20_000, endpoint=False)
dirs = np.stack([np.cos(theta), np.sin(theta)], axis=-1)
sphere = dirs / stadium_norm(dirs)[:, None]
q = np.array([1.3, -0.4])
print(f"\nsampled sup over the stadium sphere at ({q[0]}, {q[1]}): {np.max(sphere @ q):.6f}")
print(f"closed-form dual value:                          {dual_stadium_norm(q):.6f}")

try:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    g1, g2 = np.meshgrid(np.linspace(-2, 2, 400), np.linspace(-2, 2, 400))
    grid = np.stack([g1, g2], axis=-1)
    fig, axes = plt.subplots(1, 3, figsize=(12, 4))
    for ax, (name, fn) in zip(
        axes, [("stadium", stadium_norm), ("hexagonal", hexagonal_norm), ("l1", l1_norm)]
    ):
        ax.contour(g1, g2, fn(grid), levels=[0.5, 1.0, 1.5], colors="tab:blue")
        ax.set_title(f"{name} level sets")
        ax.set_aspect("equal")
    fig.tight_layout()
    fig.savefig("demo01_level_sets.png", dpi=120)
    print("\nwrote demo01_level_sets.png")
except ImportError:
    print("\nmatplotlib not installed; skipping the level-set figure")
