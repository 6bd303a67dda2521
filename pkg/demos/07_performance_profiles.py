"""Benchmarking the four algorithms with performance profiles.

rho_a(kappa) is the fraction of problems that algorithm a solves
within a factor 2**kappa of the best iteration count for that
problem: high values at kappa=0 mean "often fastest", high values at
large kappa mean "robust".
"""

import numpy as np

from roadalign.harness import (
    ProfileRecord,
    battery_problems,
    performance_profile,
    run_battery,
    save_profile_csv,
)
from roadalign.solvers import SolverConfig

ALGOS = ("cycip", "drsb", "drhb", "drlb")

problems = battery_problems(count=20, n_range=(50, 300))
print(f"running {len(ALGOS)} algorithms on {len(problems)} problems ...")
results = run_battery(problems, ALGOS, SolverConfig(gamma=0.002))

records = []
for (name, algo), report in results.items():
    records.append(
        ProfileRecord(algorithm=algo, problem=name,
                      iterations=max(1, report.iterations), solved=report.converged)
    )

by_algo = {a: [r.iterations for r in records if r.algorithm == a] for a in ALGOS}
print(f"\n{'algorithm':<8} {'median iters':>12} {'max iters':>10}")
for a in ALGOS:
    print(f"{a:<8} {int(np.median(by_algo[a])):>12} {max(by_algo[a]):>10}")

curves = performance_profile(records)
print(f"\n{'kappa':>6} " + " ".join(f"{a:>7}" for a in ALGOS))
for kappa in (0.0, 0.5, 1.0, 2.0, 4.0, 6.0):
    print(f"{kappa:>6.1f} " + " ".join(f"{curves[a](kappa):>7.2f}" for a in ALGOS))

save_profile_csv("demo07_profile.csv", curves)
print("\nwrote demo07_profile.csv")

try:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    kappas = np.linspace(0.0, 8.0, 400)
    fig, ax = plt.subplots(figsize=(7, 4.5))
    for a in ALGOS:
        ax.step(kappas, curves[a](kappas), where="post", label=a)
    ax.set_xlabel(r"$\kappa$")
    ax.set_ylabel(r"$\rho(\kappa)$")
    ax.set_ylim(-0.02, 1.02)
    ax.legend()
    ax.set_title("performance profiles (iteration counts)")
    fig.tight_layout()
    fig.savefig("demo07_profiles.png", dpi=120)
    print("wrote demo07_profiles.png")
except ImportError:
    print("matplotlib not installed; skipping the figure")
