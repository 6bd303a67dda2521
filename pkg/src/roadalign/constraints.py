"""The six closed convex constraint sets of the alignment problem.

The feasible region is the intersection of six sets chosen so that each
set decomposes into blocks touching disjoint coordinate groups, which
makes every per-set Euclidean projection exact and cheap:

* C1 fixes the interpolated knots;
* C2/C3 hold the slope slabs for segments with odd/even index;
* C4/C5/C6 hold the curvature slabs for interior knots split by
  index residue mod 3 (each slab touches three consecutive knots).

Slope and curvature sets are slabs around a central hyperplane, so they
carry an enlargement structure ``{x : dist(x, Z) <= b}`` and admit the
intrepid projector: identity deep inside, full projection onto ``Z``
far outside, and a continuous interpolation in between.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .problem import AlignmentProblem

__all__ = [
    "ConstraintSet",
    "build_six_sets",
    "project_set",
    "intrepid_project",
    "feasibility_residual",
]


@dataclass(frozen=True, eq=False)
class ConstraintSet:
    """One of the six sets, stored as decoupled blocks.

    Interpolation sets carry ``idx``/``target``; slab sets carry the
    block index matrix ``idx`` (one row of coordinates per block), the
    per-block ``normal`` rows, and bounds ``lo <= <normal, x[idx]> <= hi``.
    A set with zero blocks is the whole space.
    """

    name: str
    kind: str  # "interpolation" | "slope" | "curvature"
    n: int
    idx: np.ndarray
    target: np.ndarray | None = None
    normal: np.ndarray | None = None
    lo: np.ndarray | None = None
    hi: np.ndarray | None = None
    has_enlargement: bool = False

    @property
    def is_trivial(self):
        return self.idx.size == 0

    def __post_init__(self):
        if self.normal is not None and self.normal.size:
            nrm2 = np.einsum("ij,ij->i", self.normal, self.normal)
            if np.any(nrm2 == 0.0):
                raise ValueError("slab normals must be nonzero")
            if np.any(self.lo > self.hi):
                raise ValueError("slabs require lo <= hi")
            object.__setattr__(self, "_nrm2", nrm2)
        else:
            object.__setattr__(self, "_nrm2", None)


def _empty_set(name, kind, n):
    return ConstraintSet(name=name, kind=kind, n=n, idx=np.empty((0,), dtype=int))


def build_six_sets(problem: AlignmentProblem):
    """Assemble C1..C6 for a problem; empty families become whole-space sets."""
    n = problem.n
    t = problem.t
    dt = np.diff(t)

    if problem.interp_idx.size:
        c1 = ConstraintSet(
            name="C1",
            kind="interpolation",
            n=n,
            idx=problem.interp_idx.copy(),
            target=problem.interp_val.copy(),
        )
    else:
        c1 = _empty_set("C1", "interpolation", n)

    sets = [c1]

    # Slope slabs |x_{j+1} - x_j| <= sigma_j dt_j on coordinate pairs,
    # split by segment parity so blocks inside one set never share a knot.
    bound = problem.sigma * dt
    for name, start in (("C2", 0), ("C3", 1)):
        rows = np.arange(start, n - 1, 2)
        if rows.size == 0:
            sets.append(_empty_set(name, "slope", n))
            continue
        idx = np.stack([rows, rows + 1], axis=1)
        normal = np.tile([-1.0, 1.0], (rows.size, 1))
        sets.append(
            ConstraintSet(
                name=name,
                kind="slope",
                n=n,
                idx=idx,
                normal=normal,
                lo=-bound[rows],
                hi=bound[rows],
                has_enlargement=True,
            )
        )

    # Curvature slabs delta_j <= (x_{j+2}-x_{j+1})/dt_{j+1} - (x_{j+1}-x_j)/dt_j
    # <= gamma_j on coordinate triples, split by residue mod 3.
    m = problem.delta.size
    for k, name in enumerate(("C4", "C5", "C6")):
        rows = np.arange(k, m, 3)
        if rows.size == 0:
            sets.append(_empty_set(name, "curvature", n))
            continue
        idx = np.stack([rows, rows + 1, rows + 2], axis=1)
        inv_a = 1.0 / dt[rows]
        inv_b = 1.0 / dt[rows + 1]
        normal = np.stack([inv_a, -inv_a - inv_b, inv_b], axis=1)
        sets.append(
            ConstraintSet(
                name=name,
                kind="curvature",
                n=n,
                idx=idx,
                normal=normal,
                lo=problem.delta[rows],
                hi=problem.gamma_c[rows],
                has_enlargement=True,
            )
        )
    return sets


def _check_dim(C, x):
    x = np.asarray(x, dtype=float)
    if x.shape != (C.n,):
        raise ValueError(f"expected a design of length {C.n}, got shape {x.shape}")
    return x


def project_set(C: ConstraintSet, x):
    """Exact Euclidean projection onto ``C`` (valid blockwise because
    blocks touch disjoint coordinates)."""
    x = _check_dim(C, x)
    if C.is_trivial:
        return x.copy()
    y = x.copy()
    if C.kind == "interpolation":
        y[C.idx] = C.target
        return y
    blocks = x[C.idx]
    g = np.einsum("ij,ij->i", C.normal, blocks)
    shift = (g - np.clip(g, C.lo, C.hi)) / C._nrm2
    y[C.idx] = blocks - shift[:, None] * C.normal
    return y


def intrepid_project(C: ConstraintSet, x):
    """Intrepid projector onto ``C`` where an enlargement structure exists.

    For a slab seen as ``{x : dist(x, Z) <= b}`` around its central
    hyperplane ``Z``, returns blockwise: ``x`` if ``dist <= b``, the
    projection onto ``Z`` if ``dist >= 2b``, and the continuous
    interpolation ``x + (b - dist) (x - P_Z x)/b`` in between.  Sets
    without enlargement (interpolation, whole space) fall back to the
    exact projector.
    """
    x = _check_dim(C, x)
    if C.is_trivial or not C.has_enlargement:
        return project_set(C, x)
    y = x.copy()
    blocks = x[C.idx]
    g = np.einsum("ij,ij->i", C.normal, blocks)
    nrm = np.sqrt(C._nrm2)
    mid = 0.5 * (C.lo + C.hi)
    beta = 0.5 * (C.hi - C.lo) / nrm
    dist = np.abs(g - mid) / nrm
    # Fraction of the step to Z: 0 inside the slab core, 1 beyond 2*beta.
    with np.errstate(invalid="ignore", divide="ignore"):
        frac = np.where(beta > 0.0, np.clip((dist - beta) / np.where(beta > 0, beta, 1.0), 0.0, 1.0), 1.0)
    to_plane = -((g - mid) / C._nrm2)[:, None] * C.normal
    y[C.idx] = blocks + frac[:, None] * to_plane
    return y


def feasibility_residual(x, sets):
    """Max-norm projection displacement, maximized over the given sets."""
    x = np.asarray(x, dtype=float)
    worst = 0.0
    for C in sets:
        if C.is_trivial:
            continue
        worst = max(worst, float(np.max(np.abs(x - project_set(C, x)))))
    return worst
