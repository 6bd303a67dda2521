import json

import numpy as np
import pytest
from numpy.testing import assert_allclose

from oracles import integrate_area
from roadalign.constraints import build_six_sets, feasibility_residual
from roadalign.harness import (
    ProfileRecord,
    battery_problems,
    brute_force_prox_oracle,
    cumulative_cut_fill,
    exact_cost,
    generate_problem,
    load_design,
    load_problem,
    mass_diagram,
    performance_profile,
    run_battery,
    save_design,
    save_mass_csv,
    save_problem,
    save_profile_csv,
    save_savings_csv,
)
from roadalign.problem import AlignmentProblem
from roadalign.solvers import SolverConfig
from roadalign.spline_area import signed_total_area, total_area


def test_problem_roundtrip(tmp_path):
    problem = generate_problem(42, 17)
    path = tmp_path / "p.json"
    save_problem(path, problem)
    back = load_problem(path)
    assert np.array_equal(back.t, problem.t)
    assert np.array_equal(back.w, problem.w)
    assert np.array_equal(back.interp_idx, problem.interp_idx)
    assert np.array_equal(back.interp_val, problem.interp_val)
    assert np.array_equal(back.sigma, problem.sigma)
    assert np.array_equal(back.delta, problem.delta)
    assert np.array_equal(back.gamma_c, problem.gamma_c)
    assert np.array_equal(back.witness, problem.witness)
    assert back.alpha == problem.alpha and back.beta == problem.beta
    assert back.name == problem.name and back.seed == problem.seed


def test_load_rejects_bad_documents(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text("not json")
    with pytest.raises(ValueError):
        load_problem(path)
    path.write_text(json.dumps({"schema": "other/9"}))
    with pytest.raises(ValueError):
        load_problem(path)

    problem = generate_problem(1, 6)
    save_problem(path, problem)
    doc = json.loads(path.read_text())

    bad = dict(doc)
    bad["t"] = doc["t"][::-1]
    path.write_text(json.dumps(bad))
    with pytest.raises(ValueError):
        load_problem(path)

    bad = dict(doc)
    del bad["sigma"]
    path.write_text(json.dumps(bad))
    with pytest.raises(ValueError):
        load_problem(path)

    bad = dict(doc)
    bad["n"] = 99
    path.write_text(json.dumps(bad))
    with pytest.raises(ValueError):
        load_problem(path)

    # A stored witness must actually be feasible.
    bad = dict(doc)
    bad["witness"] = list(np.asarray(doc["witness"]) + np.linspace(0, 50, len(doc["witness"])))
    path.write_text(json.dumps(bad))
    with pytest.raises(ValueError):
        load_problem(path)


def test_generate_problem_reproducible():
    a = generate_problem(7, 30)
    b = generate_problem(7, 30)
    assert np.array_equal(a.t, b.t) and np.array_equal(a.w, b.w)
    assert np.array_equal(a.witness, b.witness)
    c = generate_problem(8, 30)
    assert not np.array_equal(a.w, c.w)


def test_generated_witness_is_feasible_and_interpolation_from_witness():
    for seed in (0, 1, 2, 3):
        p = generate_problem(seed, 50)
        assert feasibility_residual(p.witness, build_six_sets(p)) == 0.0
        assert_allclose(p.interp_val, p.witness[p.interp_idx])


def test_generated_ground_is_infeasible():
    # The ground profile should violate constraints, otherwise there is
    # nothing to optimize.
    p = generate_problem(11, 80)
    assert feasibility_residual(p.w, build_six_sets(p)) > 0.1


def test_exact_cost_examples():
    p = generate_problem(2, 12)
    area, balance, cost = exact_cost(p.w, p)
    assert area == balance == cost == 0.0

    t = np.array([0.0, 30.0, 70.0, 100.0])
    q = AlignmentProblem(t=t, w=np.full(4, 5.0), sigma=np.full(3, 1.0), alpha=4.0, beta=1.0)
    area, balance, cost = exact_cost(q.w + 2.0, q)
    assert area == pytest.approx(200.0)
    assert balance == pytest.approx(200.0)
    assert cost == pytest.approx(5.0 * 200.0)


def test_exact_cost_matches_integration_oracle():
    rng = np.random.default_rng(3)
    p = generate_problem(3, 25)
    x = p.w + rng.normal(scale=3.0, size=p.n)
    area, balance, cost = exact_cost(x, p)
    quad = integrate_area(p.t, x, p.w, steps=500_000)
    assert area == pytest.approx(quad, rel=1e-6)
    assert cost == pytest.approx(p.alpha * area + p.beta * balance)


def test_mass_diagram_telescopes():
    p = generate_problem(4, 20)
    rng = np.random.default_rng(5)
    x = p.w + rng.normal(scale=2.0, size=p.n)
    signed = mass_diagram(x, p.w, p.t)
    cumulative = cumulative_cut_fill(x, p.w, p.t)
    assert signed[0] == 0.0 and cumulative[0] == 0.0
    assert signed[-1] == pytest.approx(signed_total_area(x, p.w, p.t))
    assert cumulative[-1] == pytest.approx(total_area(x, p.w, p.t, "stadium"))
    assert signed.shape == cumulative.shape == (p.n,)
    assert np.all(np.diff(cumulative) >= -1e-12)

    zeros = mass_diagram(p.w, p.w, p.t)
    assert np.array_equal(zeros, np.zeros(p.n))

    # Antisymmetric design over uniform stations balances out.
    t = np.arange(5.0)
    d = np.array([1.0, -1.0, 0.0, 1.0, -1.0])
    assert mass_diagram(d, np.zeros(5), t)[-1] == pytest.approx(0.0)


def test_design_csv_roundtrip(tmp_path):
    p = generate_problem(6, 15)
    x = p.w + 0.123456789123456789
    path = tmp_path / "design.csv"
    save_design(path, p, x)
    t, w, design = load_design(path)
    assert np.array_equal(t, p.t)
    assert np.array_equal(w, p.w)
    assert np.array_equal(design, x)
    assert np.all(np.diff(t) > 0)
    with pytest.raises(ValueError):
        save_design(path, p, x[:-1])
    (tmp_path / "junk.csv").write_text("a,b\n1,2\n")
    with pytest.raises(ValueError):
        load_design(tmp_path / "junk.csv")


def test_mass_csv(tmp_path):
    p = generate_problem(7, 9)
    x = p.w + 1.0
    path = tmp_path / "mass.csv"
    save_mass_csv(path, p, x)
    rows = path.read_text().strip().splitlines()
    assert rows[0] == "station,signed_cum,abs_cum"
    data = np.array([[float(v) for v in r.split(",")] for r in rows[1:]])
    assert data.shape == (p.n, 3)
    assert np.all(np.diff(data[:, 0]) > 0)
    assert data[-1, 1] == pytest.approx(signed_total_area(x, p.w, p.t))
    assert data[-1, 2] == pytest.approx(total_area(x, p.w, p.t, "stadium"))


def test_performance_profile_single_algorithm():
    records = [ProfileRecord("a", f"p{i}", 10 + i, True) for i in range(5)]
    curves = performance_profile(records)
    assert curves["a"](0.0) == 1.0


def test_performance_profile_two_algorithms():
    records = [
        ProfileRecord("fast", "p", 10, True),
        ProfileRecord("slow", "p", 20, True),
    ]
    curves = performance_profile(records)
    assert curves["fast"](0.0) == 1.0
    assert curves["slow"](0.0) == 0.0
    assert curves["slow"](1.0) == 1.0
    assert curves["slow"](0.999) == 0.0


def test_performance_profile_ties_and_failures():
    records = [
        ProfileRecord("a", "p", 7, True),
        ProfileRecord("b", "p", 7, True),
        ProfileRecord("a", "q", 5, True),
        ProfileRecord("b", "q", 50, False),
    ]
    curves = performance_profile(records)
    assert curves["a"](0.0) == 1.0
    assert curves["b"](0.0) == 0.5
    # The failed run never counts, even far out.
    assert curves["b"](50.0) == 0.5
    with pytest.raises(ValueError):
        performance_profile(records + [ProfileRecord("a", "p", 3, True)])


def test_performance_profile_monotone_bounded():
    rng = np.random.default_rng(8)
    records = []
    for a in ("x", "y", "z"):
        for i in range(40):
            records.append(ProfileRecord(a, f"p{i}", int(rng.integers(1, 500)), rng.random() > 0.1))
    curves = performance_profile(records)
    kappas = np.linspace(0.0, 12.0, 200)
    for curve in curves.values():
        rho = curve(kappas)
        assert np.all(np.diff(rho) >= 0.0)
        assert np.all(rho <= 1.0)


def test_profile_and_savings_csv(tmp_path):
    records = [
        ProfileRecord("a", "p", 10, True),
        ProfileRecord("b", "p", 20, True),
    ]
    curves = performance_profile(records)
    out = tmp_path / "profile.csv"
    save_profile_csv(out, curves)
    rows = out.read_text().strip().splitlines()
    assert rows[0] == "kappa,rho_a,rho_b"
    data = np.array([[float(v) for v in r.split(",")] for r in rows[1:]])
    assert np.all(np.diff(data[:, 0]) > 0)
    assert data[-1, 1] == 1.0 and data[-1, 2] == 1.0

    sav = tmp_path / "savings.csv"
    save_savings_csv(sav, [("p1", 10.0, 8.0, 0.2)])
    rows = sav.read_text().strip().splitlines()
    assert rows[0] == "problem,F_cycip,F_dr,delta"
    assert rows[1].split(",")[0] == "p1"


def test_battery_problems_and_run_battery():
    problems = battery_problems(count=3, n_range=(10, 20))
    assert [p.n for p in problems] == [10, 15, 20]
    results = run_battery(problems, algorithms=("cycip", "drlb"), config=SolverConfig(gamma=0.002))
    assert len(results) == 6
    assert list(results) == sorted(results)
    for (_, algo), report in results.items():
        assert report.converged, algo


def test_battery_parallel_matches_sequential():
    problems = battery_problems(count=2, n_range=(8, 12))
    config = SolverConfig(gamma=0.002)
    seq = run_battery(problems, algorithms=("cycip", "drsb"), config=config, workers=1)
    par = run_battery(problems, algorithms=("cycip", "drsb"), config=config, workers=2)
    assert list(seq) == list(par)
    for key in seq:
        assert np.array_equal(seq[key].x_final, par[key].x_final)
        assert seq[key].iterations == par[key].iterations


def test_oracle_quadratic_recovers_closed_form():
    obj = lambda Y: 3.0 * np.sum(Y**2, axis=1)
    x = np.array([2.0, -1.0])
    # prox of 3||y||^2 with gamma: (1 + 6 gamma)^{-1} x
    out = brute_force_prox_oracle(obj, x, 0.5, radius=5.0)
    assert_allclose(out, x / 4.0, atol=1e-5)


def test_oracle_l1_recovers_soft_threshold():
    obj = lambda Y: np.sum(np.abs(Y), axis=1)
    out = brute_force_prox_oracle(obj, np.array([3.0, -0.4]), 1.0, radius=5.0)
    assert_allclose(out, [2.0, 0.0], atol=1e-5)


def test_oracle_indicator_recovers_projection():
    big = 1e12
    obj = lambda Y: np.where(np.all((Y >= 0.0) & (Y <= 1.0), axis=1), 0.0, big)
    out = brute_force_prox_oracle(obj, np.array([2.0, 0.4]), 1.0, radius=4.0)
    assert_allclose(out, [1.0, 0.4], atol=1e-5)


def test_oracle_validates_input():
    with pytest.raises(ValueError):
        brute_force_prox_oracle(lambda Y: np.zeros(len(Y)), np.zeros(4), 1.0)
    with pytest.raises(ValueError):
        brute_force_prox_oracle(lambda Y: np.zeros(len(Y)), np.zeros(2), 0.0)
