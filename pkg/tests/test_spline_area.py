import numpy as np
import pytest
from numpy.testing import assert_allclose

from oracles import integrate_area, integrate_signed_exact
from roadalign.harness import brute_force_prox_oracle
from roadalign.planar_norms import NORMS
from roadalign.spline_area import (
    area_parity_value,
    prox_abs_signed_area,
    prox_abs_signed_area_conjugate,
    prox_area_l1,
    prox_area_l1_conjugate,
    prox_area_parity,
    prox_area_parity_conjugate,
    segment_area,
    segment_areas,
    signed_total_area,
    spline_eval,
    total_area,
    weights,
)


def test_spline_eval_examples():
    assert spline_eval((0.0, 2.0), (0.0, 4.0), 1.0) == 2.0
    assert spline_eval((0.0, 1.0, 3.0), (1.0, 1.0, 5.0), 2.0) == 3.0
    t = np.array([0.0, 1.5, 4.0])
    x = np.array([2.0, -1.0, 0.5])
    for ti, xi in zip(t, x):
        assert spline_eval(t, x, ti) == xi


def test_spline_eval_rejects_out_of_range():
    with pytest.raises(ValueError):
        spline_eval((0.0, 1.0), (0.0, 1.0), 1.5)
    with pytest.raises(ValueError):
        spline_eval((0.0, 1.0), (0.0, 1.0), -0.1)


def test_weights_examples():
    aw = weights((0.0, 2.0, 6.0))
    assert_allclose(aw.tau, [1.0, 2.0])
    assert_allclose(aw.eta, [1.0, 3.0, 2.0])
    aw = weights((0.0, 1.0))
    assert_allclose(aw.tau, [0.5])
    assert_allclose(aw.eta, [0.5, 0.5])
    aw = weights(np.arange(4) * 3.0)
    assert_allclose(aw.eta, [1.5, 3.0, 3.0, 1.5])


def test_weights_sum_to_total_width():
    rng = np.random.default_rng(0)
    for _ in range(100):
        t = np.sort(rng.uniform(0.0, 100.0, size=rng.integers(2, 40)))
        t += np.arange(t.size) * 1e-3
        aw = weights(t)
        assert np.isclose(aw.eta.sum(), t[-1] - t[0], rtol=1e-12)


def test_weights_rejects_bad_stations():
    with pytest.raises(ValueError):
        weights((0.0, 0.0, 1.0))
    with pytest.raises(ValueError):
        weights((3.0,))


def test_segment_area_examples():
    assert segment_area(1.0, 1.0, 1.0, "stadium") == 2.0
    assert segment_area(1.0, 1.0, -1.0, "stadium") == 1.0
    assert segment_area(1.0, 1.0, -1.0, "l1") == 2.0


def test_total_area_examples():
    t = np.array([0.0, 2.0, 4.0])
    w = np.array([1.0, -1.0, 2.0])
    assert total_area(w, w, t, "stadium") == 0.0
    assert total_area(w + 1.0, w, t, "stadium") == pytest.approx(4.0)


def test_total_area_matches_integration_oracle():
    rng = np.random.default_rng(1)
    for _ in range(20):
        n = rng.integers(2, 50)
        t = np.cumsum(rng.uniform(0.5, 3.0, size=n))
        x = rng.normal(size=n) * 3.0
        w = rng.normal(size=n) * 3.0
        exact = total_area(x, w, t, "stadium")
        quad = integrate_area(t, x, w, steps=400_000)
        assert exact == pytest.approx(quad, rel=1e-6)
        # The polyhedral estimates upper-bound the true area.
        assert total_area(x, w, t, "hexagonal") >= quad - 1e-9
        assert total_area(x, w, t, "l1") >= quad - 1e-9


def test_segmentwise_upper_bounds():
    rng = np.random.default_rng(2)
    for _ in range(200):
        n = rng.integers(2, 30)
        t = np.cumsum(rng.uniform(0.5, 3.0, size=n))
        x = rng.normal(size=n)
        w = rng.normal(size=n)
        sb = segment_areas(x, w, t, "stadium")
        hb = segment_areas(x, w, t, "hexagonal")
        lb = segment_areas(x, w, t, "l1")
        assert np.all(sb <= hb + 1e-12) and np.all(hb <= lb + 1e-12)


def test_area_splits_into_odd_and_even():
    rng = np.random.default_rng(3)
    for _ in range(10_000):
        n = rng.integers(2, 12)
        t = np.cumsum(rng.uniform(0.5, 2.0, size=n))
        x = rng.normal(size=n)
        w = rng.normal(size=n)
        total = total_area(x, w, t, "hexagonal")
        split = area_parity_value(x, w, t, "hexagonal", "odd") + area_parity_value(
            x, w, t, "hexagonal", "even"
        )
        assert total == pytest.approx(split, abs=1e-12, rel=1e-12)


def test_signed_area_examples():
    t = np.array([0.0, 2.0])
    w = np.zeros(2)
    assert signed_total_area(w, w, t) == 0.0
    assert signed_total_area(np.array([3.0, -1.0]), w, t) == pytest.approx(2.0)
    t4 = np.arange(4.0)
    assert signed_total_area(np.array([1.0, -1.0, 1.0, -1.0]), np.zeros(4), t4) == pytest.approx(0.0)


def test_signed_area_matches_exact_integral():
    rng = np.random.default_rng(4)
    for _ in range(300):
        n = rng.integers(2, 40)
        t = np.cumsum(rng.uniform(0.5, 3.0, size=n))
        x = rng.normal(size=n) * 4.0
        w = rng.normal(size=n) * 4.0
        s = signed_total_area(x, w, t)
        ref = integrate_signed_exact(t, x, w)
        assert s == pytest.approx(ref, rel=1e-8, abs=1e-10)


def test_prox_area_fixed_at_ground():
    rng = np.random.default_rng(5)
    w = rng.normal(size=5)
    tau = rng.uniform(0.5, 2.0, size=4)
    for norm in NORMS:
        for parity in ("odd", "even"):
            out = prox_area_parity(w.copy(), w, tau, 1.0, 2.0, norm, parity)
            assert_allclose(out, w, atol=1e-15)
            conj = prox_area_parity_conjugate(w.copy(), w, tau, 1.0, 2.0, norm, parity)
            assert_allclose(conj, np.zeros(5), atol=1e-15)


def test_prox_area_l1_choice_example():
    # n=2, unit half-width, so the blocks reduce to componentwise
    # soft-thresholding with thresholds 1.
    out = prox_area_parity(np.array([3.0, -2.0]), np.zeros(2), np.array([1.0]), 1.0, 1.0, "l1", "odd")
    assert_allclose(out, [2.0, -1.0])


def test_prox_area_odd_leaves_trailing_knot():
    x = np.array([4.0, -1.0, 7.0])
    w = np.zeros(3)
    tau = np.array([1.0, 1.0])
    out = prox_area_parity(x, w, tau, 1.0, 1.0, "l1", "odd")
    assert out[2] == 7.0
    conj = prox_area_parity_conjugate(x, w, tau, 1.0, 1.0, "l1", "odd")
    assert conj[2] == 0.0


def test_prox_area_even_passthrough_structure():
    x = np.array([4.0, 3.0, -9.0, 2.0])
    w = np.zeros(4)
    tau = np.ones(3)
    out = prox_area_parity(x, w, tau, 1.0, 1.0, "l1", "even")
    assert out[0] == 4.0 and out[3] == 2.0
    conj = prox_area_parity_conjugate(x, w, tau, 1.0, 1.0, "l1", "even")
    assert conj[0] == 0.0 and conj[3] == 0.0
    # n=2 even part is the zero function.
    x2 = np.array([1.0, -2.0])
    assert_allclose(prox_area_parity(x2, np.zeros(2), np.ones(1), 1.0, 1.0, "l1", "even"), x2)
    assert_allclose(
        prox_area_parity_conjugate(x2, np.zeros(2), np.ones(1), 1.0, 1.0, "l1", "even"),
        np.zeros(2),
    )


def test_prox_area_rejects_bad_input():
    with pytest.raises(ValueError):
        prox_area_parity(np.array([1.0]), np.zeros(1), np.ones(1), 1.0, 1.0, "l1", "odd")
    with pytest.raises(ValueError):
        prox_area_parity(np.ones(2), np.zeros(2), np.ones(1), 1.0, 1.0, "l1", "sideways")
    with pytest.raises(ValueError):
        prox_area_parity(np.ones(2), np.zeros(2), np.ones(1), -1.0, 1.0, "l1", "odd")


@pytest.mark.parametrize("norm", sorted(NORMS))
@pytest.mark.parametrize("parity", ["odd", "even"])
def test_prox_area_parity_matches_oracle(norm, parity):
    rng = np.random.default_rng(6)
    f = NORMS[norm]
    for _ in range(25):
        alpha, gamma = rng.uniform(0.1, 10.0, size=2)
        n = 3
        w = rng.uniform(-3.0, 3.0, size=n)
        x = rng.uniform(-5.0, 5.0, size=n)
        tau = rng.uniform(0.2, 2.0, size=n - 1)
        closed = prox_area_parity(x, w, tau, gamma, alpha, norm, parity)
        i0 = 0 if parity == "odd" else 1

        def objective(Y):
            pair = np.stack([Y[:, i0] - w[i0], Y[:, i0 + 1] - w[i0 + 1]], axis=-1)
            return alpha * tau[i0] * f(pair)

        numeric = brute_force_prox_oracle(objective, x, gamma, radius=25.0)
        assert np.max(np.abs(numeric - closed)) < 1e-4


def test_prox_area_l1_examples():
    w = np.array([1.0, -1.0, 0.5])
    eta = np.array([0.5, 1.5, 1.0])
    x = w + np.array([0.3, -1.0, 0.9])
    out = prox_area_l1(x, w, eta, 1.0, 1.0)
    assert_allclose(out, w + [0.0, 0.0, 0.0])  # all gaps within thresholds
    x2 = w + np.array([2.0, -3.0, 4.0])
    assert_allclose(prox_area_l1(x2, w, eta, 1.0, 1.0), w + [1.5, -1.5, 3.0])
    # Scalar-style case: threshold 1, gap 3, move by 1.
    assert_allclose(prox_area_l1(np.array([3.0, 0.0]), np.zeros(2), np.ones(2), 1.0, 1.0), [2.0, 0.0])


def test_prox_area_l1_matches_oracle_and_beats_split_composition():
    rng = np.random.default_rng(7)
    for _ in range(20):
        alpha, gamma = rng.uniform(0.1, 5.0, size=2)
        n = 3
        t = np.concatenate([[0.0], np.cumsum(rng.uniform(0.5, 2.0, size=n - 1))])
        aw = weights(t)
        w = rng.uniform(-2.0, 2.0, size=n)
        x = rng.uniform(-4.0, 4.0, size=n)
        closed = prox_area_l1(x, w, aw.eta, gamma, alpha)

        def objective(Y):
            return alpha * np.sum(np.abs(Y - w) * aw.eta, axis=1)

        numeric = brute_force_prox_oracle(objective, x, gamma, radius=25.0)
        assert np.max(np.abs(numeric - closed)) < 1e-4

        # Composing the odd and even prox operators is not the prox of
        # the full sum: it can only do as well in objective value.
        comp = prox_area_parity(
            prox_area_parity(x, w, aw.tau, gamma, alpha, "l1", "odd"),
            w, aw.tau, gamma, alpha, "l1", "even",
        )
        val = lambda y: objective(y[None, :])[0] + np.sum((x - y) ** 2) / (2.0 * gamma)
        assert val(comp) >= val(closed) - 1e-10


def test_prox_abs_signed_area_examples():
    t = np.array([0.0, 2.0])
    eta = weights(t).eta  # (1, 1)
    w = np.zeros(2)
    assert_allclose(prox_abs_signed_area(w.copy(), w, eta, 1.0, 1.0), w)
    assert_allclose(prox_abs_signed_area(np.array([2.0, 0.0]), w, eta, 1.0, 1.0), [1.0, -1.0])
    # Saturated clamp: large imbalance moves by exactly gamma*alpha*eta.
    x = np.array([50.0, 70.0])
    assert_allclose(prox_abs_signed_area(x, w, eta, 2.0, 3.0), x - 6.0 * eta)


def test_prox_abs_signed_area_matches_oracle():
    rng = np.random.default_rng(8)
    for _ in range(25):
        alpha, gamma = rng.uniform(0.1, 10.0, size=2)
        n = 3
        t = np.concatenate([[0.0], np.cumsum(rng.uniform(0.5, 2.0, size=n - 1))])
        eta = weights(t).eta
        w = rng.uniform(-2.0, 2.0, size=n)
        x = rng.uniform(-4.0, 4.0, size=n)
        closed = prox_abs_signed_area(x, w, eta, gamma, alpha)
        objective = lambda Y: alpha * np.abs((Y - w) @ eta)
        basis, _ = np.linalg.qr(np.column_stack([eta, np.eye(n)[:, :2]]))
        numeric = brute_force_prox_oracle(
            objective, x, gamma, radius=25.0, directions=[basis[:, 1], basis[:, 2]]
        )
        assert np.max(np.abs(numeric - closed)) < 1e-4


@pytest.mark.parametrize("norm", sorted(NORMS))
def test_area_prox_characterization(norm):
    # The prox output must minimize objective + ||x-y||^2/(2 gamma)
    # against random nearby perturbations.
    rng = np.random.default_rng(11)
    f = NORMS[norm]
    for _ in range(10):
        alpha, gamma = rng.uniform(0.1, 10.0, size=2)
        n = 5
        w = rng.uniform(-3.0, 3.0, size=n)
        x = rng.uniform(-5.0, 5.0, size=n)
        t = np.concatenate([[0.0], np.cumsum(rng.uniform(0.5, 2.0, size=n - 1))])
        aw = weights(t)

        for parity in ("odd", "even"):
            y = prox_area_parity(x, w, aw.tau, gamma, alpha, norm, parity)
            obj = lambda Z: np.array(
                [alpha * area_parity_value(z, w, t, norm, parity) for z in Z]
            )
            vy = obj(y[None, :])[0] + np.sum((x - y) ** 2) / (2.0 * gamma)
            z = y[None, :] + rng.normal(scale=0.2, size=(1000, n))
            vz = obj(z) + np.sum((x - z) ** 2, axis=1) / (2.0 * gamma)
            assert np.all(vz >= vy - 1e-8)

        y = prox_abs_signed_area(x, w, aw.eta, gamma, alpha)
        vy = alpha * abs((y - w) @ aw.eta) + np.sum((x - y) ** 2) / (2.0 * gamma)
        z = y[None, :] + rng.normal(scale=0.2, size=(1000, n))
        vz = alpha * np.abs((z - w) @ aw.eta) + np.sum((x - z) ** 2, axis=1) / (2.0 * gamma)
        assert np.all(vz >= vy - 1e-8)


@pytest.mark.parametrize("norm", sorted(NORMS))
def test_conjugate_prox_satisfies_moreau(norm):
    rng = np.random.default_rng(9)
    for _ in range(1500):
        alpha, gamma = rng.uniform(0.1, 10.0, size=2)
        n = int(rng.integers(2, 7))
        w = rng.uniform(-3.0, 3.0, size=n)
        x = rng.uniform(-5.0, 5.0, size=n)
        tau = rng.uniform(0.2, 2.0, size=n - 1)
        for parity in ("odd", "even"):
            primal = prox_area_parity(x / gamma, w, tau, 1.0 / gamma, alpha, norm, parity)
            conj = prox_area_parity_conjugate(x, w, tau, gamma, alpha, norm, parity)
            assert np.linalg.norm(x - gamma * primal - conj) < 1e-9


def test_conjugate_prox_l1_and_signed_satisfy_moreau():
    rng = np.random.default_rng(10)
    for _ in range(2000):
        alpha, gamma = rng.uniform(0.1, 10.0, size=2)
        n = int(rng.integers(2, 7))
        w = rng.uniform(-3.0, 3.0, size=n)
        x = rng.uniform(-5.0, 5.0, size=n)
        eta = rng.uniform(0.2, 2.5, size=n)
        primal = prox_area_l1(x / gamma, w, eta, 1.0 / gamma, alpha)
        conj = prox_area_l1_conjugate(x, w, eta, gamma, alpha)
        assert np.linalg.norm(x - gamma * primal - conj) < 1e-9
        primal = prox_abs_signed_area(x / gamma, w, eta, 1.0 / gamma, alpha)
        conj = prox_abs_signed_area_conjugate(x, w, eta, gamma, alpha)
        assert np.linalg.norm(x - gamma * primal - conj) < 1e-9
