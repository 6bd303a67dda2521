"""The two iterative solvers: product-space Douglas-Rachford splitting
over the nine-term objective, and the method of cyclic intrepid
projections (CycIP) for the bare feasibility problem.

Douglas-Rachford minimizes ``alpha A_odd + alpha A_even + beta |S| +
sum_i indicator(C_i)`` by keeping one copy of the design per term,
averaging the copies, and applying each term's prox to a reflected
point.  The monitored sequence is the running average; iteration stops
once consecutive averages move less than ``eps`` in max norm *and* the
average is ``eps``-feasible.

CycIP sweeps the six sets cyclically, applying the intrepid projector
where a set carries an enlargement structure and the exact projector
otherwise, and stops at ``eps``-feasibility of the monitored iterate.

Whatever the variant being run, reported costs are always the exact
stadium area plus the absolute signed area, so runs are comparable.
"""

from __future__ import annotations

import time
from dataclasses import dataclass

import numpy as np

from .constraints import build_six_sets, feasibility_residual, intrepid_project, project_set
from .problem import AlignmentProblem
from .prox_core import indicator_term, zero_term
from .spline_area import (
    abs_signed_area_term,
    area_parity_term,
    signed_total_area,
    total_area,
    weights,
)

__all__ = [
    "VARIANT_NORMS",
    "SolverConfig",
    "DRState",
    "SolverReport",
    "assemble_terms",
    "dr_step",
    "dr_solve",
    "cycip_solve",
    "saving_ratio",
]

VARIANT_NORMS = {"sb": "stadium", "hb": "hexagonal", "lb": "l1"}

DEFAULT_CYCIP_ORDER = ("C2", "C3", "C4", "C5", "C6", "C1")


@dataclass(frozen=True)
class SolverConfig:
    """Run parameters shared by both solvers.

    ``variant`` selects the area estimate for the DR objective
    (stadium / hexagonal / l1 ball); ``alpha``/``beta`` override the
    problem's cost weights when given.  ``reflection`` chooses the
    prox argument in the DR step, see :func:`dr_step`.  CycIP applies
    the sets in ``cycip_order`` (interpolation last by default, so
    interpolated knots are exact at sweep boundaries).
    """

    gamma: float = 1.0
    eps: float = 5e-3
    k_max: int = 100_000
    variant: str = "sb"
    alpha: float | None = None
    beta: float | None = None
    reflection: str = "standard"
    cycip_order: tuple = DEFAULT_CYCIP_ORDER

    def __post_init__(self):
        if self.gamma <= 0.0 or self.eps <= 0.0 or self.k_max < 1:
            raise ValueError("need gamma > 0, eps > 0, k_max >= 1")
        if self.variant not in VARIANT_NORMS:
            raise ValueError(f"variant must be one of {sorted(VARIANT_NORMS)}")
        if self.reflection not in ("standard", "printed"):
            raise ValueError("reflection must be 'standard' or 'printed'")


@dataclass
class DRState:
    """Product-space iterate: one block per term plus their average."""

    blocks: np.ndarray  # (terms, n)
    average: np.ndarray  # (n,)
    k: int = 0


@dataclass
class SolverReport:
    """Outcome of one solver run; ``cost = alpha*area + beta*balance_abs``
    with the exact (stadium) area regardless of the variant solved."""

    algorithm: str
    x_final: np.ndarray
    iterations: int
    residual: float
    area: float
    balance_abs: float
    cost: float
    converged: bool
    wall_time: float


def _effective_weights(problem, config):
    alpha = problem.alpha if config.alpha is None else config.alpha
    beta = problem.beta if config.beta is None else config.beta
    if alpha < 0.0 or beta < 0.0:
        raise ValueError("cost weights must be nonnegative")
    return alpha, beta


def assemble_terms(problem: AlignmentProblem, config: SolverConfig, sets=None):
    """The nine prox terms of the DR objective, in a fixed order:
    odd area, even area, |signed area|, then the six set indicators.
    Zero-weight cost terms become the zero function."""
    if sets is None:
        sets = build_six_sets(problem)
    alpha, beta = _effective_weights(problem, config)
    norm = VARIANT_NORMS[config.variant]
    aw = weights(problem.t)
    terms = []
    for parity in ("odd", "even"):
        if alpha > 0.0:
            terms.append(area_parity_term(problem.w, aw.tau, alpha, norm, parity))
        else:
            terms.append(zero_term())
    terms.append(abs_signed_area_term(problem.w, aw.eta, beta) if beta > 0.0 else zero_term())
    for C in sets:
        terms.append(indicator_term(lambda x, C=C: project_set(C, x), kind=f"indicator_{C.name}"))
    return terms


def dr_step(state: DRState, terms, gamma, reflection="standard"):
    """One product-space Douglas-Rachford update.

    With ``reflection="standard"`` each term's prox is evaluated at
    ``2*average - block`` (reflection through the consensus subspace,
    the provably convergent form); ``"printed"`` evaluates at
    ``2*block - average`` instead.  Both then update
    ``block += prox_result - average``.
    """
    if len(terms) != state.blocks.shape[0]:
        raise ValueError("one term per block is required")
    xbar = state.average
    if reflection == "standard":
        args = 2.0 * xbar[None, :] - state.blocks
    elif reflection == "printed":
        args = 2.0 * state.blocks - xbar[None, :]
    else:
        raise ValueError("reflection must be 'standard' or 'printed'")
    new_blocks = np.empty_like(state.blocks)
    for i, term in enumerate(terms):
        new_blocks[i] = term.prox(gamma, args[i])
    new_blocks += state.blocks
    new_blocks -= xbar[None, :]
    return DRState(blocks=new_blocks, average=new_blocks.mean(axis=0), k=state.k + 1)


def dr_solve(problem: AlignmentProblem, config: SolverConfig | None = None):
    """Run Douglas-Rachford from the ground profile until both stopping
    tests pass on the monitored average, or ``k_max`` steps."""
    config = config or SolverConfig()
    sets = build_six_sets(problem)
    terms = assemble_terms(problem, config, sets)
    start = time.perf_counter()

    blocks = np.tile(problem.w.astype(float), (len(terms), 1))
    state = DRState(blocks=blocks, average=blocks.mean(axis=0), k=0)
    prev_avg = state.average
    converged = False
    while state.k < config.k_max:
        state = dr_step(state, terms, config.gamma, config.reflection)
        if float(np.max(np.abs(state.average - prev_avg))) < config.eps:
            if feasibility_residual(state.average, sets) < config.eps:
                converged = True
                break
        prev_avg = state.average
    wall = time.perf_counter() - start
    return _report(f"dr{config.variant}", state.average, state.k, converged, wall, problem, config, sets)


def cycip_solve(problem: AlignmentProblem, config: SolverConfig | None = None):
    """Run CycIP from the ground profile until the monitored iterate is
    ``eps``-feasible, or ``k_max`` sweeps."""
    config = config or SolverConfig()
    sets = build_six_sets(problem)
    by_name = {C.name: C for C in sets}
    try:
        order = [by_name[name] for name in config.cycip_order]
    except KeyError as exc:
        raise ValueError(f"unknown set in cycip_order: {exc}") from None
    start = time.perf_counter()

    x = problem.w.astype(float).copy()
    converged = False
    k = 0
    while True:
        if feasibility_residual(x, sets) < config.eps:
            converged = True
            break
        if k >= config.k_max:
            break
        for C in order:
            x = intrepid_project(C, x)
        k += 1
    wall = time.perf_counter() - start
    return _report("cycip", x, k, converged, wall, problem, config, sets)


def _report(algorithm, x, iterations, converged, wall, problem, config, sets):
    alpha, beta = _effective_weights(problem, config)
    area = total_area(x, problem.w, problem.t, "stadium")
    balance = abs(signed_total_area(x, problem.w, problem.t))
    return SolverReport(
        algorithm=algorithm,
        x_final=np.asarray(x, dtype=float).copy(),
        iterations=iterations,
        residual=feasibility_residual(x, sets),
        area=area,
        balance_abs=balance,
        cost=alpha * area + beta * balance,
        converged=converged,
        wall_time=wall,
    )


def saving_ratio(cost_cycip, cost_dr):
    """Relative cost saving of a DR design over the CycIP design:
    ``(F_cycip - F_dr) / F_cycip``; zero when both costs vanish."""
    if cost_cycip == 0.0:
        if cost_dr == 0.0:
            return 0.0
        raise ValueError("saving ratio undefined: baseline cost is zero")
    return (cost_cycip - cost_dr) / cost_cycip
