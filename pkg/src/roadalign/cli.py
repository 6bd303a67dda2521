"""Command-line front end.

Subcommands: ``generate``, ``solve``, ``feasibility``, ``report``,
``profile``.  Exit code 0 on success/convergence, 2 when an iteration
budget was exhausted, 1 on input errors.
"""

from __future__ import annotations

import argparse
import sys

from .constraints import build_six_sets, feasibility_residual
from .harness import (
    ProfileRecord,
    generate_problem,
    load_design,
    load_problem,
    performance_profile,
    save_design,
    save_mass_csv,
    save_problem,
    save_profile_csv,
    save_savings_csv,
)
from .solvers import SolverConfig, cycip_solve, dr_solve, saving_ratio

ALGORITHMS = ("cycip", "drsb", "drhb", "drlb")

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_BUDGET = 2


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on bad flags; input errors must exit 1 here.
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_INPUT)


def _add_solver_flags(p):
    p.add_argument("--gamma", type=float, default=1.0, help="prox step size (default 1.0)")
    p.add_argument("--eps", type=float, default=5e-3, help="stopping tolerance (default 5e-3)")
    p.add_argument("--kmax", type=int, default=100_000, help="iteration budget (default 1e5)")


def _config(args, variant="sb"):
    return SolverConfig(gamma=args.gamma, eps=args.eps, k_max=args.kmax, variant=variant)


def _solve_one(problem, algo, args):
    if algo == "cycip":
        return cycip_solve(problem, _config(args))
    return dr_solve(problem, _config(args, variant=algo[2:]))


def build_parser():
    parser = _Parser(prog="roadalign", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("generate", help="write a seeded synthetic problem file")
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--n", type=int, required=True, help="number of stations")
    p.add_argument("--out", required=True, help="output problem JSON path")
    p.add_argument("--sigma", type=float, default=0.05, help="max grade (default 0.05)")
    p.add_argument("--curvature", type=float, default=0.01, help="grade-change bound (default 0.01)")
    p.add_argument("--interp", type=int, default=3, help="number of interpolated knots")
    p.add_argument("--alpha", type=float, default=4.0, help="area cost weight")
    p.add_argument("--beta", type=float, default=1.0, help="balance cost weight")

    p = sub.add_parser("solve", help="solve one problem with one algorithm")
    p.add_argument("problem", help="problem JSON path")
    p.add_argument("--algo", choices=ALGORITHMS, default="drsb")
    _add_solver_flags(p)
    p.add_argument("--design", help="write the design CSV here")
    p.add_argument("--mass", help="write the mass-diagram CSV here")

    p = sub.add_parser("feasibility", help="report the feasibility residual of a design")
    p.add_argument("problem", help="problem JSON path")
    p.add_argument("--design", help="design CSV (defaults to the ground profile)")

    p = sub.add_parser("report", help="cost table and savings of one DR variant vs CycIP")
    p.add_argument("problems", nargs="+", help="problem JSON paths")
    p.add_argument("--algo", choices=ALGORITHMS[1:], default="drsb")
    _add_solver_flags(p)
    p.add_argument("--out", help="write savings.csv here")

    p = sub.add_parser("profile", help="performance profiles of all four algorithms")
    p.add_argument("problems", nargs="+", help="problem JSON paths")
    _add_solver_flags(p)
    p.add_argument("--out", required=True, help="write profile.csv here")
    return parser


def _cmd_generate(args):
    problem = generate_problem(
        args.seed,
        args.n,
        sigma_max=args.sigma,
        curvature_bound=args.curvature,
        n_interp=args.interp,
        alpha=args.alpha,
        beta=args.beta,
    )
    save_problem(args.out, problem)
    print(f"wrote {args.out}: n={problem.n}, length={problem.t[-1] - problem.t[0]:.1f} m")
    return EXIT_OK


def _cmd_solve(args):
    problem = load_problem(args.problem)
    report = _solve_one(problem, args.algo, args)
    print(
        f"{args.algo}: iterations={report.iterations} converged={report.converged} "
        f"residual={report.residual:.3e}"
    )
    print(
        f"cost: area={report.area:.3f} balance={report.balance_abs:.3f} "
        f"F={report.cost:.3f}"
    )
    if args.design:
        save_design(args.design, problem, report.x_final)
        print(f"wrote {args.design}")
    if args.mass:
        save_mass_csv(args.mass, problem, report.x_final)
        print(f"wrote {args.mass}")
    return EXIT_OK if report.converged else EXIT_BUDGET


def _cmd_feasibility(args):
    problem = load_problem(args.problem)
    if args.design:
        _, _, x = load_design(args.design)
        if x.size != problem.n:
            raise ValueError("design length does not match the problem")
    else:
        x = problem.w
    sets = build_six_sets(problem)
    for C in sets:
        res = feasibility_residual(x, [C])
        print(f"{C.name} ({C.kind}): residual={res:.6e}")
    print(f"max residual: {feasibility_residual(x, sets):.6e}")
    return EXIT_OK


def _cmd_report(args):
    rows = []
    exhausted = False
    print(f"{'problem':<24} {'F_cycip':>12} {'F_' + args.algo:>12} {'saving':>8}")
    for path in args.problems:
        problem = load_problem(path)
        base = cycip_solve(problem, _config(args))
        trial = _solve_one(problem, args.algo, args)
        exhausted = exhausted or not (base.converged and trial.converged)
        delta = saving_ratio(base.cost, trial.cost)
        rows.append((problem.name or path, base.cost, trial.cost, delta))
        print(f"{rows[-1][0]:<24} {base.cost:>12.3f} {trial.cost:>12.3f} {delta:>7.2%}")
    if args.out:
        save_savings_csv(args.out, rows)
        print(f"wrote {args.out}")
    return EXIT_BUDGET if exhausted else EXIT_OK


def _cmd_profile(args):
    records = []
    exhausted = False
    for path in args.problems:
        problem = load_problem(path)
        name = problem.name or path
        for algo in ALGORITHMS:
            report = _solve_one(problem, algo, args)
            exhausted = exhausted or not report.converged
            records.append(
                ProfileRecord(
                    algorithm=algo,
                    problem=name,
                    iterations=max(1, report.iterations),
                    solved=report.converged,
                )
            )
    curves = performance_profile(records)
    save_profile_csv(args.out, curves)
    print(f"wrote {args.out}")
    return EXIT_BUDGET if exhausted else EXIT_OK


_COMMANDS = {
    "generate": _cmd_generate,
    "solve": _cmd_solve,
    "feasibility": _cmd_feasibility,
    "report": _cmd_report,
    "profile": _cmd_profile,
}


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except (ValueError, OSError) as exc:
        print(f"roadalign: error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
