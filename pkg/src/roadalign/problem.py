"""Road vertical-alignment problem data: stations, ground profile,
constraint data, and cost weights.

Indices are 0-based throughout.  Interpolation fixes selected knot
elevations, slope bounds cap each segment grade ``|x_{j+1} - x_j| /
(t_{j+1} - t_j)``, and curvature bounds bracket each grade change
between consecutive segments.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace

import numpy as np

__all__ = ["AlignmentProblem"]


def _as_float_array(v, name):
    a = np.asarray(v, dtype=float)
    if not np.all(np.isfinite(a)):
        raise ValueError(f"{name} must be finite")
    return a


@dataclass(frozen=True, eq=False)
class AlignmentProblem:
    """One alignment optimization instance.

    Attributes
    ----------
    t : ndarray, shape (n,)
        Strictly increasing station distances (m).
    w : ndarray, shape (n,)
        Ground profile elevations (m).
    interp_idx : ndarray of int
        Knots with fixed elevations (may be empty).
    interp_val : ndarray
        Target elevations for ``interp_idx``.
    sigma : ndarray, shape (n-1,)
        Positive grade bounds per segment.
    delta, gamma_c : ndarray, shape (n-2,)
        Lower/upper grade-change bounds, ``delta <= gamma_c``.
    alpha, beta : float
        Nonnegative weights of the cut-and-fill area and of the
        cut-and-fill balance in the cost.
    name, seed, witness
        Optional metadata; ``witness`` is a known feasible design.
    """

    t: np.ndarray
    w: np.ndarray
    interp_idx: np.ndarray = field(default_factory=lambda: np.empty(0, dtype=int))
    interp_val: np.ndarray = field(default_factory=lambda: np.empty(0))
    sigma: np.ndarray | None = None
    delta: np.ndarray | None = None
    gamma_c: np.ndarray | None = None
    alpha: float = 4.0
    beta: float = 1.0
    name: str = ""
    seed: int | None = None
    witness: np.ndarray | None = None

    def __post_init__(self):
        t = _as_float_array(self.t, "t")
        if t.ndim != 1 or t.size < 2:
            raise ValueError("need at least two stations")
        if not np.all(np.diff(t) > 0.0):
            raise ValueError("stations must be strictly increasing")
        n = t.size

        w = _as_float_array(self.w, "w")
        if w.shape != (n,):
            raise ValueError("ground profile length must match the station count")

        idx = np.asarray(self.interp_idx, dtype=int).reshape(-1)
        val = _as_float_array(self.interp_val, "interp_val").reshape(-1)
        if idx.size != val.size:
            raise ValueError("interpolation indices and targets must pair up")
        if idx.size and (idx.min() < 0 or idx.max() >= n or np.unique(idx).size != idx.size):
            raise ValueError("interpolation indices must be unique and in [0, n)")

        if self.sigma is None:
            raise ValueError("slope bounds sigma are required")
        sigma = _as_float_array(self.sigma, "sigma")
        if sigma.shape != (n - 1,):
            raise ValueError("sigma must have one entry per segment")
        if np.any(sigma <= 0.0):
            raise ValueError("slope bounds must be positive")

        delta = np.empty(0) if self.delta is None else _as_float_array(self.delta, "delta")
        gamma_c = np.empty(0) if self.gamma_c is None else _as_float_array(self.gamma_c, "gamma_c")
        if delta.shape != gamma_c.shape:
            raise ValueError("delta and gamma_c must have matching shape")
        if delta.size not in (0, n - 2):
            raise ValueError("curvature bounds must have one entry per interior knot")
        if np.any(delta > gamma_c):
            raise ValueError("curvature bounds require delta <= gamma_c")

        if self.alpha < 0.0 or self.beta < 0.0:
            raise ValueError("cost weights must be nonnegative")

        witness = self.witness
        if witness is not None:
            witness = _as_float_array(witness, "witness")
            if witness.shape != (n,):
                raise ValueError("witness length must match the station count")

        for attr, value in (
            ("t", t),
            ("w", w),
            ("interp_idx", idx),
            ("interp_val", val),
            ("sigma", sigma),
            ("delta", delta),
            ("gamma_c", gamma_c),
            ("witness", witness),
        ):
            object.__setattr__(self, attr, value)

    @property
    def n(self):
        return self.t.size

    def with_weights(self, alpha=None, beta=None):
        """Copy with replaced cost weights."""
        return replace(
            self,
            alpha=self.alpha if alpha is None else alpha,
            beta=self.beta if beta is None else beta,
        )
