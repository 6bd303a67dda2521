"""The proximity-operator toolbox behind the splitting solver.

prox of gamma*f at x is the minimizer of f(y) + ||x-y||^2/(2 gamma):
a pull toward x regularized by f.  Splitting solvers need both the
prox of each objective term and the prox of its convex conjugate;
the Moreau identity ties the two together and is checked here
numerically.
"""

import numpy as np

from roadalign import moreau_complement, prox_table
from roadalign.projectors import project_dual_stadium_ball
from roadalign.prox_core import prox_norm_via_dual_ball

print("Soft thresholding: prox of alpha*||y - w||_1 moves each coordinate")
print("toward w by at most gamma*alpha:")
w = np.zeros(3)
for x in ([3.0, -0.4, 1.0], [0.2, 0.2, -0.2]):
    out = prox_table("l1", 1.0, 1.0, w, np.array(x))
    print(f"  x={x} -> {out.tolist()}")

print("\nThe quadratic row is a blend toward w:")
out = prox_table("quadratic", 0.5, 1.0, 0.0, np.array([2.0]))
print(f"  prox of 0.5*y^2 at 2 with gamma=1: {out[0]} (blend factor 1/2)")

print("\nAny planar norm term needs only its dual-ball projector:")
x = np.array([4.0, -3.0])
out = prox_norm_via_dual_ball(project_dual_stadium_ball, 1.0, 1.0, np.zeros(2), x)
print(f"  prox of the stadium norm at {tuple(x)}: ({out[0]:.4f}, {out[1]:.4f})")

print("\nMoreau identity x = gamma*prox_{f/gamma}(x/gamma) + prox_{gamma f*}(x),")
print("checked for the catalog rows on random draws:")
rng = np.random.default_rng(2)
for kind in ("quadratic", "euclidean", "l1", "abs_inner"):
    worst = 0.0
    for _ in range(2000):
        alpha, gamma = rng.uniform(0.1, 10.0, size=2)
        w = rng.uniform(-3.0, 3.0, size=2)
        x = rng.uniform(-5.0, 5.0, size=2)
        kwargs = {"xstar": np.array([1.0, -2.0])} if kind == "abs_inner" else {}
        primal = prox_table(kind, alpha, 1.0 / gamma, w, x / gamma, **kwargs)
        conj = prox_table(kind, alpha, gamma, w, x, conjugate=True, **kwargs)
        worst = max(worst, float(np.linalg.norm(x - gamma * primal - conj)))
    print(f"  {kind:10s} worst residual {worst:.2e}")

print("\nmoreau_complement derives a conjugate prox from any primal prox:")
x = np.array([3.0, 0.0])
derived = moreau_complement(lambda g, v: prox_table("euclidean", 1.0, g, np.zeros(2), v), 1.0, x)
direct = prox_table("euclidean", 1.0, 1.0, np.zeros(2), x, conjugate=True)
print(f"  derived {derived.tolist()} vs direct {direct.tolist()}")
