"""Proximity-operator calculus: Moreau decomposition, shifted-scaled norms,
dual-ball composition, and the closed-form table for the common terms.

A proximity operator maps ``x`` to the unique minimizer of
``f(y) + ||x - y||^2 / (2 gamma)``.  Splitting solvers need, for every
term of the objective, both ``prox_{gamma f}`` and the conjugate
``prox_{gamma f*}``; the two are linked by the Moreau identity

    x = gamma * prox_{f/gamma}(x/gamma) + prox_{gamma f*}(x).

Conjugate operators here are implemented from their own closed forms,
with :func:`moreau_complement` kept as an independent cross-check.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .projectors import project_interval

__all__ = [
    "ProxTerm",
    "moreau_complement",
    "prox_homogeneous",
    "prox_homogeneous_conjugate",
    "prox_norm_via_dual_ball",
    "prox_norm_via_dual_ball_conjugate",
    "prox_table",
    "PROX_TABLE_KINDS",
    "indicator_term",
    "zero_term",
]

PROX_TABLE_KINDS = ("indicator", "quadratic", "euclidean", "l1", "abs_inner")


@dataclass(frozen=True)
class ProxTerm:
    """One objective term, packaged as its two proximity evaluators.

    ``prox(gamma, x)`` evaluates ``prox_{gamma f}(x)`` and
    ``conjugate_prox(gamma, x)`` evaluates ``prox_{gamma f*}(x)``.
    Every term satisfies the Moreau identity to machine precision.
    """

    kind: str
    prox: Callable[[float, np.ndarray], np.ndarray]
    conjugate_prox: Callable[[float, np.ndarray], np.ndarray]


def moreau_complement(prox_f, gamma, x):
    """Conjugate prox derived from a primal prox via the Moreau identity.

    Parameters
    ----------
    prox_f : callable
        Evaluator ``(gamma, x) -> prox_{gamma f}(x)``.
    gamma : float
        Positive step size.
    x : array_like

    Returns
    -------
    ndarray
        ``prox_{gamma f*}(x) = x - gamma * prox_{f/gamma}(x/gamma)``.
    """
    x = np.asarray(x, dtype=float)
    if gamma <= 0.0:
        raise ValueError("gamma must be positive")
    return x - gamma * np.asarray(prox_f(1.0 / gamma, x / gamma), dtype=float)


def prox_homogeneous(prox_base, alpha, gamma, w, x):
    """Prox of ``alpha * f(x - w)`` for positively homogeneous convex ``f``.

    ``prox_base`` evaluates the unscaled ``prox_f``; scaling and shift
    fold into a single evaluation:
    ``w + gamma alpha * prox_f((x - w) / (gamma alpha))``.
    """
    x = np.asarray(x, dtype=float)
    lam = gamma * alpha
    if lam <= 0.0:
        raise ValueError("alpha and gamma must be positive")
    return w + lam * np.asarray(prox_base((x - w) / lam), dtype=float)


def prox_homogeneous_conjugate(prox_base_conjugate, alpha, gamma, w, x):
    """Conjugate companion of :func:`prox_homogeneous`:
    ``alpha * prox_{f*}((x - gamma w) / alpha)``."""
    x = np.asarray(x, dtype=float)
    if alpha <= 0.0 or gamma <= 0.0:
        raise ValueError("alpha and gamma must be positive")
    return alpha * np.asarray(prox_base_conjugate((x - gamma * w) / alpha), dtype=float)


def prox_norm_via_dual_ball(ball_project, alpha, gamma, w, x):
    """Prox of ``alpha * N(x - w)`` for a norm ``N`` with dual-ball projector.

    Since the conjugate of a norm is the indicator of its dual ball,
    ``prox_{gamma h}(x) = x - gamma alpha * P_ball((x - w) / (gamma alpha))``.
    This single rule generates the proximity operators of all three
    planar area norms.
    """
    x = np.asarray(x, dtype=float)
    lam = gamma * alpha
    if lam <= 0.0:
        raise ValueError("alpha and gamma must be positive")
    return x - lam * np.asarray(ball_project((x - w) / lam), dtype=float)


def prox_norm_via_dual_ball_conjugate(ball_project, alpha, gamma, w, x):
    """Conjugate companion of :func:`prox_norm_via_dual_ball`:
    ``alpha * P_ball((x - gamma w) / alpha)``."""
    x = np.asarray(x, dtype=float)
    if alpha <= 0.0 or gamma <= 0.0:
        raise ValueError("alpha and gamma must be positive")
    return alpha * np.asarray(ball_project((x - gamma * w) / alpha), dtype=float)


def prox_table(kind, alpha, gamma, w, x, *, conjugate=False, projector=None, xstar=None):
    """Closed-form prox (or conjugate prox) for the five catalog terms.

    Parameters
    ----------
    kind : {"indicator", "quadratic", "euclidean", "l1", "abs_inner"}
        Term family: the indicator of a convex set, ``alpha ||x - w||^2``,
        ``alpha ||x - w||``, ``alpha ||x - w||_1``, or
        ``alpha |<xstar, x - w>|``.
    alpha : float
        Positive weight (ignored for "indicator").
    gamma : float
        Positive prox step.
    w : array_like
        Shift / center.
    x : array_like
        Evaluation point.
    conjugate : bool
        Evaluate ``prox_{gamma f*}`` instead of ``prox_{gamma f}``.
    projector : callable, optional
        Set projector, required for "indicator".
    xstar : array_like, optional
        Defining vector, required for "abs_inner".
    """
    x = np.asarray(x, dtype=float)
    if gamma <= 0.0:
        raise ValueError("gamma must be positive")
    if kind != "indicator" and alpha <= 0.0:
        raise ValueError("alpha must be positive")

    if kind == "indicator":
        if projector is None:
            raise ValueError("indicator term needs a projector")
        if conjugate:
            return x - gamma * np.asarray(projector(x / gamma), dtype=float)
        return np.asarray(projector(x), dtype=float)

    w = np.broadcast_to(np.asarray(w, dtype=float), x.shape)

    if kind == "quadratic":
        if conjugate:
            return x - gamma * (x + 2.0 * alpha * w) / (gamma + 2.0 * alpha)
        return (x + 2.0 * alpha * gamma * w) / (1.0 + 2.0 * alpha * gamma)

    if kind == "euclidean":
        if conjugate:
            v = x - gamma * w
            nrm = float(np.linalg.norm(v))
            return alpha * v / nrm if nrm > alpha else v
        v = w - x
        nrm = float(np.linalg.norm(v))
        return x + alpha * gamma * v / nrm if nrm > alpha * gamma else w.copy()

    if kind == "l1":
        if conjugate:
            v = x - gamma * w
            return np.clip(v, -alpha, alpha)
        v = w - x
        return x + np.sign(v) * np.minimum(np.abs(v), alpha * gamma)

    if kind == "abs_inner":
        if xstar is None:
            raise ValueError("abs_inner term needs xstar")
        xs = np.asarray(xstar, dtype=float)
        nrm2 = float(xs @ xs)
        if nrm2 == 0.0:
            raise ValueError("xstar must be nonzero")
        if conjugate:
            q = float(xs @ (x - gamma * w)) / (alpha * nrm2)
            return alpha * float(project_interval(q, -1.0, 1.0)) * xs
        q = float(xs @ (x - w)) / (gamma * alpha * nrm2)
        return x - gamma * alpha * float(project_interval(q, -1.0, 1.0)) * xs

    raise ValueError(f"unknown prox kind: {kind!r}")


def indicator_term(projector, kind="indicator"):
    """Package a set projector as a :class:`ProxTerm`."""
    return ProxTerm(
        kind=kind,
        prox=lambda gamma, x: np.asarray(projector(np.asarray(x, dtype=float)), dtype=float),
        conjugate_prox=lambda gamma, x: np.asarray(x, dtype=float)
        - gamma * np.asarray(projector(np.asarray(x, dtype=float) / gamma), dtype=float),
    )


def zero_term():
    """The identically-zero term: prox is the identity, conjugate prox is 0."""
    return ProxTerm(
        kind="zero",
        prox=lambda gamma, x: np.asarray(x, dtype=float).copy(),
        conjugate_prox=lambda gamma, x: np.zeros_like(np.asarray(x, dtype=float)),
    )
