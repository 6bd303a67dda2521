"""Linear splines, earthwork area functionals, and their proximity operators.

A design ``x`` and a ground profile ``w`` over stations ``t`` define two
linear splines.  The absolute area between them decomposes per segment
as ``tau_i * f(x_i - w_i, x_{i+1} - w_{i+1})`` where ``tau_i`` is the
segment half-width and ``f`` is one of the planar norms; the stadium
choice is the exact area, the hexagonal and l1 choices are upper bounds.
The signed area is the linear functional ``<eta, x - w>`` built from the
same half-widths.

Consecutive segments share a knot, so the area sum has no closed-form
prox as a whole.  Splitting it into the segments with odd and with even
index decouples each part into independent coordinate pairs, and each
pair's prox is a single dual-ball projection.  All blockwise operators
below evaluate their blocks in one vectorized sweep.
"""

from __future__ import annotations

from typing import NamedTuple

import numpy as np

from .planar_norms import NORMS
from .projectors import DUAL_BALL_PROJECTORS
from .prox_core import ProxTerm

__all__ = [
    "AreaWeights",
    "weights",
    "spline_eval",
    "segment_area",
    "segment_areas",
    "total_area",
    "area_parity_value",
    "signed_total_area",
    "prox_area_parity",
    "prox_area_parity_conjugate",
    "prox_area_l1",
    "prox_area_l1_conjugate",
    "prox_abs_signed_area",
    "prox_abs_signed_area_conjugate",
    "area_parity_term",
    "abs_signed_area_term",
]


class AreaWeights(NamedTuple):
    """Segment half-widths ``tau`` (n-1,) and knot weights ``eta`` (n,)."""

    tau: np.ndarray
    eta: np.ndarray


def _stations(t):
    t = np.asarray(t, dtype=float)
    if t.ndim != 1 or t.size < 2:
        raise ValueError("stations must be a 1-D array with at least two entries")
    if not np.all(np.diff(t) > 0.0):
        raise ValueError("stations must be strictly increasing")
    return t


def weights(t):
    """Half-widths ``tau_i = (t_{i+1} - t_i)/2`` and the knot weights ``eta``.

    ``eta`` collects, per knot, the half-widths of its adjacent
    segments (one at the ends, two in the interior), so that
    ``sum(eta) == t[-1] - t[0]`` and ``<eta, x - w>`` is the signed
    area between the splines of ``x`` and ``w``.
    """
    t = _stations(t)
    tau = np.diff(t) / 2.0
    n = t.size
    eta = np.empty(n)
    eta[0] = tau[0]
    eta[-1] = tau[-1]
    if n > 2:
        eta[1:-1] = tau[:-1] + tau[1:]
    return AreaWeights(tau=tau, eta=eta)


def spline_eval(t, x, s):
    """Evaluate the linear spline through ``(t_i, x_i)`` at ``s``.

    ``s`` may be a scalar or an array; values outside ``[t[0], t[-1]]``
    are rejected.
    """
    t = _stations(t)
    x = np.asarray(x, dtype=float)
    if x.shape != t.shape:
        raise ValueError("stations and values must have matching length")
    s_arr = np.asarray(s, dtype=float)
    if np.any(s_arr < t[0]) or np.any(s_arr > t[-1]):
        raise ValueError("query point outside the station range")
    out = np.interp(s_arr, t, x)
    return float(out) if np.isscalar(s) or s_arr.ndim == 0 else out


def segment_area(tau_i, d1, d2, norm="stadium"):
    """Area estimate between two segments with deviations ``(d1, d2)``
    over a width-``2 tau_i`` interval; elementwise on array input."""
    f = NORMS[norm]
    p = np.stack(np.broadcast_arrays(np.asarray(d1, float), np.asarray(d2, float)), axis=-1)
    return np.asarray(tau_i, dtype=float) * f(p)


def segment_areas(x, w, t, norm="stadium"):
    """Per-segment area estimates between the splines of ``x`` and ``w``."""
    t = _stations(t)
    d = np.asarray(x, dtype=float) - np.asarray(w, dtype=float)
    if d.shape != t.shape:
        raise ValueError("designs must match the station count")
    pairs = np.stack([d[:-1], d[1:]], axis=-1)
    return (np.diff(t) / 2.0) * NORMS[norm](pairs)


def total_area(x, w, t, norm="stadium"):
    """Total area estimate between the two splines; exact for ``norm="stadium"``."""
    return float(segment_areas(x, w, t, norm).sum())


def area_parity_value(x, w, t, norm="stadium", parity="odd"):
    """Sum of the segment areas with odd (1st, 3rd, ...) or even segment index."""
    start = _parity_start(parity)
    return float(segment_areas(x, w, t, norm)[start::2].sum())


def signed_total_area(x, w, t):
    """Signed area between the two splines: ``<eta, x - w>``."""
    eta = weights(t).eta
    d = np.asarray(x, dtype=float) - np.asarray(w, dtype=float)
    return float(eta @ d)


def _parity_start(parity):
    if parity == "odd":
        return 0
    if parity == "even":
        return 1
    raise ValueError(f"parity must be 'odd' or 'even', got {parity!r}")


def _parity_blocks(n, parity):
    start = _parity_start(parity)
    return start, (n - start) // 2


def prox_area_parity(x, w, tau, gamma, alpha, norm="stadium", parity="odd"):
    """Prox of ``alpha * (area sum over odd/even segments)``.

    The selected segments touch disjoint coordinate pairs, so the prox
    is one dual-ball projection per pair:
    ``(x_i, x_{i+1}) - gamma alpha tau_i * P_ball((x - w)/(gamma alpha tau_i))``.
    Coordinates not covered by a selected segment pass through
    unchanged (the first knot for the even part, the last knot when the
    pairing leaves it over).
    """
    x = np.asarray(x, dtype=float)
    w = np.broadcast_to(np.asarray(w, dtype=float), x.shape)
    if gamma <= 0.0 or alpha <= 0.0:
        raise ValueError("alpha and gamma must be positive")
    if x.size < 2:
        raise ValueError("need at least two knots")
    ball = DUAL_BALL_PROJECTORS[norm]
    start, m = _parity_blocks(x.size, parity)
    y = x.copy()
    if m:
        stop = start + 2 * m
        px = x[start:stop].reshape(m, 2)
        pw = w[start:stop].reshape(m, 2)
        lam = (gamma * alpha * np.asarray(tau, dtype=float)[start::2][:m])[:, None]
        y[start:stop] = (px - lam * ball((px - pw) / lam)).ravel()
    return y


def prox_area_parity_conjugate(x, w, tau, gamma, alpha, norm="stadium", parity="odd"):
    """Conjugate companion of :func:`prox_area_parity`.

    Blockwise ``alpha tau_i * P_ball((x - gamma w)/(alpha tau_i))``;
    pass-through coordinates map to 0, the prox of the conjugate of the
    zero function.
    """
    x = np.asarray(x, dtype=float)
    w = np.broadcast_to(np.asarray(w, dtype=float), x.shape)
    if gamma <= 0.0 or alpha <= 0.0:
        raise ValueError("alpha and gamma must be positive")
    if x.size < 2:
        raise ValueError("need at least two knots")
    ball = DUAL_BALL_PROJECTORS[norm]
    start, m = _parity_blocks(x.size, parity)
    y = np.zeros_like(x)
    if m:
        stop = start + 2 * m
        px = x[start:stop].reshape(m, 2)
        pw = w[start:stop].reshape(m, 2)
        lam = (alpha * np.asarray(tau, dtype=float)[start::2][:m])[:, None]
        y[start:stop] = (lam * ball((px - gamma * pw) / lam)).ravel()
    return y


def prox_area_l1(x, w, eta, gamma, alpha):
    """Prox of the separable l1 area estimate ``alpha * sum eta_i |x_i - w_i|``:
    a componentwise soft threshold toward ``w`` with thresholds
    ``gamma alpha eta_i``."""
    x = np.asarray(x, dtype=float)
    w = np.broadcast_to(np.asarray(w, dtype=float), x.shape)
    if gamma <= 0.0 or alpha <= 0.0:
        raise ValueError("alpha and gamma must be positive")
    v = w - x
    return x + np.sign(v) * np.minimum(np.abs(v), gamma * alpha * np.asarray(eta, dtype=float))


def prox_area_l1_conjugate(x, w, eta, gamma, alpha):
    """Conjugate companion of :func:`prox_area_l1`: clamp ``x - gamma w``
    componentwise to ``[-alpha eta_i, alpha eta_i]``."""
    x = np.asarray(x, dtype=float)
    w = np.broadcast_to(np.asarray(w, dtype=float), x.shape)
    if gamma <= 0.0 or alpha <= 0.0:
        raise ValueError("alpha and gamma must be positive")
    bound = alpha * np.asarray(eta, dtype=float)
    return np.clip(x - gamma * w, -bound, bound)


def prox_abs_signed_area(x, w, eta, gamma, alpha):
    """Prox of ``alpha * |<eta, x - w>|``, the cut-and-fill balance term:
    shrink along ``eta`` with a clamped multiplier."""
    x = np.asarray(x, dtype=float)
    w = np.broadcast_to(np.asarray(w, dtype=float), x.shape)
    eta = np.asarray(eta, dtype=float)
    if gamma <= 0.0 or alpha <= 0.0:
        raise ValueError("alpha and gamma must be positive")
    q = float(eta @ (x - w)) / (gamma * alpha * float(eta @ eta))
    return x - gamma * alpha * float(np.clip(q, -1.0, 1.0)) * eta


def prox_abs_signed_area_conjugate(x, w, eta, gamma, alpha):
    """Conjugate companion of :func:`prox_abs_signed_area`:
    ``alpha * clamp(<eta, x - gamma w> / (alpha ||eta||^2)) * eta``."""
    x = np.asarray(x, dtype=float)
    w = np.broadcast_to(np.asarray(w, dtype=float), x.shape)
    eta = np.asarray(eta, dtype=float)
    if gamma <= 0.0 or alpha <= 0.0:
        raise ValueError("alpha and gamma must be positive")
    q = float(eta @ (x - gamma * w)) / (alpha * float(eta @ eta))
    return alpha * float(np.clip(q, -1.0, 1.0)) * eta


def area_parity_term(w, tau, alpha, norm="stadium", parity="odd"):
    """Package one parity half of the area objective as a :class:`ProxTerm`."""
    w = np.asarray(w, dtype=float)
    tau = np.asarray(tau, dtype=float)
    return ProxTerm(
        kind=f"area_{parity}_{norm}",
        prox=lambda gamma, x: prox_area_parity(x, w, tau, gamma, alpha, norm, parity),
        conjugate_prox=lambda gamma, x: prox_area_parity_conjugate(
            x, w, tau, gamma, alpha, norm, parity
        ),
    )


def abs_signed_area_term(w, eta, alpha):
    """Package ``alpha * |signed area|`` as a :class:`ProxTerm`."""
    w = np.asarray(w, dtype=float)
    eta = np.asarray(eta, dtype=float)
    return ProxTerm(
        kind="abs_signed_area",
        prox=lambda gamma, x: prox_abs_signed_area(x, w, eta, gamma, alpha),
        conjugate_prox=lambda gamma, x: prox_abs_signed_area_conjugate(x, w, eta, gamma, alpha),
    )
