"""Planar norms that measure earthwork between two elevation segments.

The stadium norm of a deviation pair ``(d1, d2)`` equals twice the area
between two line segments of heights ``d1`` and ``d2`` over a unit
half-width, so ``tau * stadium_norm((d1, d2))`` is the exact cut-and-fill
area over an interval of width ``2 * tau``.  The hexagonal and l1 norms
are polyhedral upper bounds on it that are cheaper to project against.
Each norm comes with its dual norm in closed form.

All functions accept a single point of shape ``(2,)`` or a batch of
shape ``(..., 2)`` and are pure.
"""

from __future__ import annotations

import numpy as np

__all__ = [
    "stadium_norm",
    "stadium_gradient",
    "hexagonal_norm",
    "l1_norm",
    "dual_stadium_norm",
    "dual_hexagonal_norm",
    "dual_l1_norm",
    "NORMS",
    "DUAL_NORMS",
]

_INV_SQRT2 = 1.0 / np.sqrt(2.0)


def _coords(p):
    p = np.asarray(p, dtype=float)
    if p.ndim == 0 or p.shape[-1] != 2:
        raise ValueError(f"expected planar points with last axis of size 2, got shape {p.shape}")
    return p, p[..., 0], p[..., 1]


def stadium_norm(p):
    """Exact-area norm: (x1^2 + x2^2 + 2 max(0, x1 x2)) / (|x1| + |x2|), 0 at the origin.

    Its unit sphere is stadium shaped: two parallel segments in the
    quadrants where the coordinates share a sign, joined by two arcs
    where they do not.
    """
    _, x1, x2 = _coords(p)
    denom = np.abs(x1) + np.abs(x2)
    num = x1 * x1 + x2 * x2 + 2.0 * np.maximum(0.0, x1 * x2)
    safe = np.where(denom > 0.0, denom, 1.0)
    return np.where(denom > 0.0, num / safe, 0.0)


def stadium_gradient(p):
    """Gradient of the stadium norm, defined everywhere except the origin.

    The norm is linear on the closed quadrants where x1*x2 >= 0
    (gradient (1, 1) or (-1, -1)) and smooth with a rational gradient
    on the two mixed-sign quadrants.  The pieces agree on the axes, so
    the classification below uses closed quadrants with ties resolved
    toward the constant-gradient cases.

    Raises
    ------
    ValueError
        If any input point is the origin.
    """
    p, x1, x2 = _coords(p)
    if np.any((x1 == 0.0) & (x2 == 0.0)):
        raise ValueError("stadium_gradient is undefined at the origin")

    g = np.empty_like(p)
    pos = (x1 >= 0.0) & (x2 >= 0.0)
    neg = (x1 <= 0.0) & (x2 <= 0.0)
    mixed = ~(pos | neg)

    g[..., 0] = np.where(pos, 1.0, np.where(neg, -1.0, 0.0))
    g[..., 1] = g[..., 0]

    if np.any(mixed):
        a, b = x1[mixed], x2[mixed]
        d2 = (a - b) ** 2
        # On x1 <= 0 <= x2 this is the gradient of (a^2 + b^2)/(b - a);
        # the opposite quadrant follows from symmetry of the norm.
        upper = a < b
        s = np.where(upper, 1.0, -1.0)
        g1 = s * (-a * a + 2.0 * a * b + b * b) / d2
        g2 = s * (-a * a - 2.0 * a * b + b * b) / d2
        gm = np.stack([g1, g2], axis=-1)
        g[mixed] = gm
    return g


def hexagonal_norm(p):
    """Polyhedral upper bound max{|x1|, |x2|, |x1 + x2|}; its unit ball is a hexagon."""
    _, x1, x2 = _coords(p)
    return np.maximum(np.maximum(np.abs(x1), np.abs(x2)), np.abs(x1 + x2))


def l1_norm(p):
    """Classical |x1| + |x2| upper bound."""
    _, x1, x2 = _coords(p)
    return np.abs(x1) + np.abs(x2)


def dual_stadium_norm(p):
    """Dual of the stadium norm: |x1 - x2| / 2 + ||(x1, x2)|| / sqrt(2)."""
    _, x1, x2 = _coords(p)
    return 0.5 * np.abs(x1 - x2) + _INV_SQRT2 * np.hypot(x1, x2)


def dual_hexagonal_norm(p):
    """Dual of the hexagonal norm: max{|x1|, |x2|, |x1 - x2|}."""
    _, x1, x2 = _coords(p)
    return np.maximum(np.maximum(np.abs(x1), np.abs(x2)), np.abs(x1 - x2))


def dual_l1_norm(p):
    """Dual of the l1 norm: max{|x1|, |x2|}."""
    _, x1, x2 = _coords(p)
    return np.maximum(np.abs(x1), np.abs(x2))


NORMS = {
    "stadium": stadium_norm,
    "hexagonal": hexagonal_norm,
    "l1": l1_norm,
}

DUAL_NORMS = {
    "stadium": dual_stadium_norm,
    "hexagonal": dual_hexagonal_norm,
    "l1": dual_l1_norm,
}
