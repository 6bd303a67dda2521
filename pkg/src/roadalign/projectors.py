"""Exact Euclidean projectors onto intervals, segments, slabs, and dual norm balls.

The dual-ball projectors are the workhorses: by Moreau duality the
proximity operator of any of the planar area norms reduces to a single
projection onto the dual unit ball, and all three dual balls here admit
closed forms.  The dual stadium ball needs a real cubic root; the other
two are polyhedral.

Batch convention: planar-ball projectors accept shape ``(2,)`` or
``(..., 2)``; everything is pure and allocation-light.
"""

from __future__ import annotations

import numpy as np

__all__ = [
    "project_interval",
    "project_segment",
    "project_segment_symmetric",
    "project_slab",
    "project_dual_l1_ball",
    "project_dual_hexagon_ball",
    "project_dual_stadium_ball",
    "DUAL_BALL_PROJECTORS",
]


def project_interval(x, lo, hi):
    """Clamp ``x`` to ``[lo, hi]``; elementwise for array input.

    Satisfies the reflection identity ``1 - project_interval(x, 0, 1)
    == project_interval(1 - x, 0, 1)`` exactly.
    """
    if np.any(np.asarray(lo) > np.asarray(hi)):
        raise ValueError("interval requires lo <= hi")
    return np.minimum(np.maximum(x, lo), hi)


def project_segment(x, a, b):
    """Project ``x`` onto the segment [a, b] in R^n.

    Uses the clamped least-squares coefficient
    ``lam = clamp(<a - x, a - b> / ||a - b||^2, [0, 1])`` and returns
    ``(1 - lam) a + lam b``.
    """
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    x = np.asarray(x, dtype=float)
    d = a - b
    nrm2 = float(d @ d)
    if nrm2 == 0.0:
        raise ValueError("segment endpoints must be distinct")
    lam = float(project_interval((a - x) @ d / nrm2, 0.0, 1.0))
    return (1.0 - lam) * a + lam * b


def project_segment_symmetric(x, a, b):
    """Endpoint-symmetric form of :func:`project_segment`.

    Returns ``clamp(<b - x, b - a>/||b - a||^2) a
    + clamp(<a - x, a - b>/||a - b||^2) b``; agrees with
    :func:`project_segment` for every input.
    """
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    x = np.asarray(x, dtype=float)
    d = a - b
    nrm2 = float(d @ d)
    if nrm2 == 0.0:
        raise ValueError("segment endpoints must be distinct")
    mu = float(project_interval((b - x) @ -d / nrm2, 0.0, 1.0))
    lam = float(project_interval((a - x) @ d / nrm2, 0.0, 1.0))
    return mu * a + lam * b


def project_slab(x, normal, lo, hi):
    """Project ``x`` onto the slab ``{z : lo <= <normal, z> <= hi}``.

    Moves ``x`` along ``normal`` by the constraint violation; the
    hyperplane case is ``lo == hi``.
    """
    normal = np.asarray(normal, dtype=float)
    x = np.asarray(x, dtype=float)
    if lo > hi:
        raise ValueError("slab requires lo <= hi")
    nrm2 = float(normal @ normal)
    if nrm2 == 0.0:
        raise ValueError("slab normal must be nonzero")
    g = float(normal @ x)
    return x - ((g - float(project_interval(g, lo, hi))) / nrm2) * normal


def _planar(p):
    p = np.asarray(p, dtype=float)
    if p.ndim == 0 or p.shape[-1] != 2:
        raise ValueError(f"expected planar points with last axis of size 2, got shape {p.shape}")
    return p


def project_dual_l1_ball(p):
    """Project onto the dual ball of the l1 norm, the square [-1, 1]^2."""
    return np.clip(_planar(p), -1.0, 1.0)


def project_dual_hexagon_ball(p):
    """Project onto the dual ball of the hexagonal norm.

    The ball is conv{+-(1, 0), +-(0, 1), +-(1, 1)}.  Points in it are
    fixed; same-sign points clamp componentwise; opposite-sign points
    land on one of the two slanted edges, parametrized by x1 + x2.
    """
    p = _planar(p)
    x1, x2 = p[..., 0], p[..., 1]
    inside = np.maximum(np.maximum(np.abs(x1), np.abs(x2)), np.abs(x1 - x2)) <= 1.0
    clamped = np.clip(p, -1.0, 1.0)
    # On the slanted edge: sign(x1) (1/2, -1/2) + clamp(x1 + x2) (1/2, 1/2).
    # The branch requires x1 * x2 < 0, so sign(x1) is never 0 here.
    s = np.where(x1 >= 0.0, 1.0, -1.0)
    mid = np.clip(x1 + x2, -1.0, 1.0)
    edge = np.stack([0.5 * (s + mid), 0.5 * (mid - s)], axis=-1)
    out = np.where((x1 * x2 >= 0.0)[..., None], clamped, edge)
    return np.where(inside[..., None], p, out)


def project_dual_stadium_ball(p):
    """Project onto the dual ball of the stadium norm.

    The ball's boundary consists of the two points +-(1, 1) and two
    smooth arcs between them.  Off-diagonal exterior points project to
    an arc point found by solving a depressed cubic whose unique real
    root comes from Cardano's formula; negative radicands stay on the
    real branch via ``np.cbrt``.
    """
    p = _planar(p)
    x1, x2 = p[..., 0], p[..., 1]
    d = x1 - x2
    sgn = np.where(d >= 0.0, 1.0, -1.0)  # sgn(0) := +1; inert, see tests
    a = (1.0 + np.abs(d)) ** 3 / 27.0
    b = 0.5 * sgn * (x1 + x2)
    r = np.sqrt(b * b + a)
    s = np.cbrt(b + r) + np.cbrt(b - r)
    # The exact root lies in [-1, 1]; clipping removes rounding spill
    # and the arc point below then has dual norm exactly 1.
    s = np.clip(s, -1.0, 1.0)
    arc = np.stack(
        [0.5 * (1.0 + 2.0 * s - s * s), 0.5 * (-1.0 + 2.0 * s + s * s)],
        axis=-1,
    ) * sgn[..., None]

    inside = np.sqrt(2.0 * (x1 * x1 + x2 * x2)) + np.abs(d) <= 2.0
    out = np.where(inside[..., None], p, arc)
    corner = np.broadcast_to(np.ones(2), out.shape)
    out = np.where(((x1 >= 1.0) & (x2 >= 1.0))[..., None], corner, out)
    out = np.where(((x1 <= -1.0) & (x2 <= -1.0))[..., None], -corner, out)
    return out


DUAL_BALL_PROJECTORS = {
    "stadium": project_dual_stadium_ball,
    "hexagonal": project_dual_hexagon_ball,
    "l1": project_dual_l1_ball,
}
