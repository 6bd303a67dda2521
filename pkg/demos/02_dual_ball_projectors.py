"""Closed-form projections onto the three dual norm balls.

The proximity operator of any of the planar area norms reduces by
duality to one projection onto the dual unit ball, so these three
projectors are the inner kernel of the whole solver.  The l1 dual ball
is a square (componentwise clamp), the hexagonal dual ball a hexagon
(clamp or one segment projection), and the stadium dual ball has two
smooth arcs handled by a real cubic root.
"""

import numpy as np

from roadalign import (
    DUAL_NORMS,
    project_dual_hexagon_ball,
    project_dual_l1_ball,
    project_dual_stadium_ball,
)

points = np.array([(2.0, 2.0), (2.0, -2.0), (0.5, 0.5), (-3.0, 1.0), (0.0, 5.0)])

for name, proj in (
    ("l1", project_dual_l1_ball),
    ("hexagonal", project_dual_hexagon_ball),
    ("stadium", project_dual_stadium_ball),
):
    print(f"{name} dual ball:")
    out = proj(points)
    for p, q in zip(points, out):
        moved = "fixed " if np.allclose(p, q) else "moved "
        print(
            f"  ({p[0]:5.2f},{p[1]:5.2f}) -> ({q[0]:7.4f},{q[1]:7.4f})  {moved}"
            f" dual norm {DUAL_NORMS[name](q):.6f}"
        )
    print()

# Every output lands inside the ball, and projecting twice changes nothing.
rng = np.random.default_rng(1)
cloud = rng.uniform(-6.0, 6.0, size=(100_000, 2))
for name, proj in (
    ("l1", project_dual_l1_ball),
    ("hexagonal", project_dual_hexagon_ball),
    ("stadium", project_dual_stadium_ball),
):
    out = proj(cloud)
    print(
        f"{name}: max dual norm of output {np.max(DUAL_NORMS[name](out)):.12f}, "
        f"idempotence gap {np.max(np.abs(proj(out) - out)):.2e}"
    )

try:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    fig, axes = plt.subplots(1, 3, figsize=(12, 4))
    sub = cloud[:400]
    for ax, (name, proj) in zip(
        axes,
        [
            ("l1", project_dual_l1_ball),
            ("hexagonal", project_dual_hexagon_ball),
            ("stadium", project_dual_stadium_ball),
        ],
    ):
        out = proj(sub)
        ax.plot(np.stack([sub[:, 0], out[:, 0]]), np.stack([sub[:, 1], out[:, 1]]),
                color="0.8", lw=0.5)
        ax.plot(out[:, 0], out[:, 1], ".", ms=2, color="tab:red")
        ax.set_title(f"{name} dual ball")
        ax.set_aspect("equal")
    fig.tight_layout()
    fig.savefig("demo02_dual_balls.png", dpi=120)
    print("\nwrote demo02_dual_balls.png")
except ImportError:
    print("\nmatplotlib not installed; skipping the figure")
