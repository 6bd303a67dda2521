"""End-to-end alignment optimization: feasibility baseline vs splitting.

CycIP answers "give me any feasible design"; Douglas-Rachford answers
"give me the cheapest one", with cost alpha * (cut-and-fill area)
+ beta * |final imbalance|.  The three DR variants differ only in the
area estimate inside the objective (exact stadium, hexagonal, l1);
reported costs always use the exact area, so they are comparable.
"""

from roadalign import dr_solve, cycip_solve, exact_cost, generate_problem, saving_ratio
from roadalign.harness import cumulative_cut_fill, mass_diagram, save_design, save_mass_csv
from roadalign.solvers import SolverConfig

problem = generate_problem(seed=7, n=200)
print(f"problem: {problem.n} stations over {problem.t[-1] / 1000:.1f} km, "
      f"{problem.interp_idx.size} interpolated knots, alpha={problem.alpha}, beta={problem.beta}")

config = SolverConfig(gamma=0.002, eps=5e-3, k_max=100_000)
baseline = cycip_solve(problem, config)
print(f"\nCycIP baseline: {baseline.iterations} sweeps, "
      f"residual {baseline.residual:.1e}, cost {baseline.cost:,.0f}")

print(f"\n{'variant':<8} {'iterations':>10} {'area m^2':>12} {'|balance|':>10} "
      f"{'cost':>12} {'saving':>8}")
reports = {}
for variant in ("sb", "hb", "lb"):
    report = dr_solve(problem, SolverConfig(gamma=0.002, variant=variant))
    reports[variant] = report
    delta = saving_ratio(baseline.cost, report.cost)
    print(f"dr{variant:<6} {report.iterations:>10} {report.area:>12,.0f} "
          f"{report.balance_abs:>10,.0f} {report.cost:>12,.0f} {delta:>7.2%}")

best = reports["sb"]
area, balance, cost = exact_cost(best.x_final, problem)
print(f"\nbest design recomputed: area {area:,.0f} m^2, imbalance {balance:,.0f} m^2, "
      f"cost {cost:,.0f}")

save_design("demo06_design.csv", problem, best.x_final)
save_mass_csv("demo06_mass.csv", problem, best.x_final)
print("wrote demo06_design.csv and demo06_mass.csv")

try:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    fig, (top, bottom) = plt.subplots(2, 1, figsize=(11, 7), sharex=True)
    top.plot(problem.t, problem.w, color="saddlebrown", lw=1.2, label="ground")
    top.plot(problem.t, baseline.x_final, color="gray", lw=1.0, label="CycIP (feasible)")
    top.plot(problem.t, best.x_final, color="tab:blue", lw=1.2, label="DRsb (optimized)")
    top.set_ylabel("elevation [m]")
    top.legend(loc="best")
    top.set_title("vertical alignment")

    for label, report, color in (
        ("CycIP", baseline, "gray"),
        ("DRsb", best, "tab:blue"),
    ):
        bottom.plot(problem.t, mass_diagram(report.x_final, problem.w, problem.t),
                    color=color, lw=1.2, label=f"{label} signed")
        bottom.plot(problem.t, cumulative_cut_fill(report.x_final, problem.w, problem.t),
                    color=color, lw=1.2, ls="--", label=f"{label} cumulative")
    bottom.axhline(0.0, color="k", lw=0.5)
    bottom.set_xlabel("station [m]")
    bottom.set_ylabel("running area [m^2]")
    bottom.legend(loc="best", ncol=2)
    bottom.set_title("mass diagrams")
    fig.tight_layout()
    fig.savefig("demo06_alignment.png", dpi=120)
    print("wrote demo06_alignment.png")
except ImportError:
    print("matplotlib not installed; skipping the figure")
