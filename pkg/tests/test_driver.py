import numpy as np
import pytest
from scipy import stats

from util_problems import quadratic_problem

from bregopt.driver import (SolverConfig, default_lambda, fit_loglog,
                            format_csv_rows, parse_csv_rows, run_convex,
                            run_for_regime, run_mirror_descent_smooth,
                            run_model_based, sample_tstar, stepsize_constant,
                            sweep)
from bregopt.problems import get_problem


def test_stepsize_formulas():
    assert stepsize_constant(1.0, 1.0, 3, "A") == pytest.approx(1.0 / 3.0)
    assert stepsize_constant(1.0, 1.0, 3, "B", M=2.0) == pytest.approx(0.2)
    assert stepsize_constant(1.0, 2.0, 99, "C") == pytest.approx(0.2)
    with pytest.raises(ValueError):
        stepsize_constant(-1.0, 1.0, 3, "A")
    with pytest.raises(ValueError):
        stepsize_constant(1.0, 0.0, 3, "A")


def test_sample_tstar_weights():
    rng = np.random.default_rng(0)
    # eta = (1/2, 1/4) with rho = 0 gives probabilities (2/3, 1/3)
    draws = sample_tstar([0.5, 0.25], 0.0, rng, size=200000)
    freq = np.bincount(draws, minlength=2) / draws.size
    assert abs(freq[0] - 2.0 / 3.0) <= 3 * np.sqrt((2 / 3) * (1 / 3) / draws.size)
    # a single step index is returned with probability one
    assert sample_tstar([0.5], 0.9, rng) == 0
    with pytest.raises(ValueError):
        sample_tstar([0.5, 0.5], 2.0, rng)


def test_tstar_chi_square_against_weights():
    rng = np.random.default_rng(1)
    etas = 1.0 / (np.arange(8) + 2.0)
    rho = 0.5
    w = etas / (1.0 - etas * rho)
    p = w / w.sum()
    draws = sample_tstar(etas, rho, rng, size=20000)
    obs = np.bincount(draws, minlength=etas.size)
    assert stats.chisquare(obs, p * draws.size).pvalue >= 1e-3


def test_reduction_to_explicit_gradient_descent():
    # with deterministic gradients, Euclidean phi, and r = 0 the loop is
    # bitwise the recursion x_{t+1} = x_t - eta_t grad f(x_t)
    x0 = np.array([1.7, -0.4])
    prob = quadratic_problem(x0)
    etas = [0.5, 0.4, 0.3, 0.3, 0.2, 0.1]
    config = SolverConfig(5, seed=0, lam=1.0, schedule=("explicit", etas))
    trace = run_model_based(prob, config)
    x = x0.copy()
    for t, eta in enumerate(etas):
        assert np.array_equal(trace.iterates[t], x)
        x = x - eta * x  # grad f(x) = x for x_star = 0
    assert np.array_equal(trace.iterates[-1], x)


def test_seed_determinism():
    p1 = get_problem("P1")
    a = run_model_based(p1, SolverConfig(30, seed=42))
    b = run_model_based(p1, SolverConfig(30, seed=42))
    assert np.array_equal(a.iterates, b.iterates)
    assert a.sampled_xi_ids == b.sampled_xi_ids
    assert a.t_star == b.t_star
    c = run_model_based(p1, SolverConfig(30, seed=43))
    assert not np.array_equal(a.iterates, c.iterates)


def test_feasibility_of_iterates():
    p3 = get_problem("P3")
    tr = run_convex(p3, SolverConfig(60, seed=7))
    assert np.all(tr.iterates > 0)
    assert np.allclose(tr.iterates.sum(axis=1), 1.0, atol=1e-9)
    p5 = get_problem("P5")
    tr = run_model_based(p5, SolverConfig(60, seed=7))
    assert np.all(np.linalg.norm(tr.iterates, axis=1) <= 2.0 + 1e-9)


def test_trace_shapes_and_t0():
    p1 = get_problem("P1")
    tr = run_model_based(p1, SolverConfig(0, seed=1))
    assert tr.iterates.shape == (2, 1)          # x_0 and x_1
    assert len(tr.etas) == 1 and len(tr.sampled_xi_ids) == 1
    assert tr.t_star == 0
    assert np.array_equal(tr.returned_point, tr.iterates[0])


def test_run_convex_averages():
    p3 = get_problem("P3")
    tr = run_convex(p3, SolverConfig(40, seed=2))
    # constant steps make the weighted average the plain average
    assert np.allclose(tr.weighted_average, tr.plain_average, atol=1e-12)
    assert np.allclose(tr.weighted_average, tr.iterates[:-1].mean(axis=0))
    tr0 = run_convex(p3, SolverConfig(0, seed=2))
    assert np.allclose(tr0.weighted_average, p3.x0)
    # the strongly convex schedule is eta_t = 1/(mu (t+1))
    p4 = get_problem("P4")
    tr4 = run_convex(p4, SolverConfig(2, seed=2, schedule=("strongly_convex",)))
    assert np.allclose(tr4.etas, [1.0, 0.5, 1.0 / 3.0])


def test_config_validation():
    p1 = get_problem("P1")
    c = p1.oracle.constants
    bad_lam = 1.0 / (c.tau + c.rho) * 1.01
    with pytest.raises(ValueError):
        run_model_based(p1, SolverConfig(3, seed=0, lam=bad_lam))
    with pytest.raises(ValueError):
        run_model_based(p1, SolverConfig(2, seed=0,
                                         schedule=("explicit", [0.1, 0.2, 0.1])))
    p3 = get_problem("P3")
    with pytest.raises(ValueError):
        run_convex(p3, SolverConfig(3, seed=0, schedule=("strongly_convex",)))
    p2 = get_problem("P2")
    lam = default_lambda(p2)
    cap = lam / (1.0 + lam * p2.oracle.constants.smooth_M)
    with pytest.raises(ValueError):
        run_mirror_descent_smooth(
            p2, SolverConfig(2, seed=0, lam=lam,
                             schedule=("explicit", [cap, cap, cap])))
    with pytest.raises(ValueError):
        run_model_based(p3, SolverConfig(3, seed=0))  # wrong regime for loop


def test_nonincreasing_sequence_lemma():
    # sum a_t (b_t - b_{t+1}) <= a_0 (b_0 - min_t b_t) for nonincreasing a > 0
    rng = np.random.default_rng(3)
    for _ in range(300):
        T = int(rng.integers(1, 40))
        a = np.sort(rng.uniform(0.01, 3.0, T + 1))[::-1]
        b = rng.uniform(-5.0, 5.0, T + 2)
        lhs = float(np.sum(a * (b[:-1] - b[1:])))
        rhs = a[0] * (b[0] - b.min())
        assert lhs <= rhs + 1e-10 * (1.0 + abs(rhs))


def test_fit_loglog_converged_and_slope():
    fit = fit_loglog([8, 16, 32], [0.0, 0.0, 0.0])
    assert fit["converged"] and fit["slope"] is None
    ts = np.array([8, 16, 32, 64])
    fit = fit_loglog(ts, 3.0 / (ts + 1.0))
    assert fit["slope"] == pytest.approx(-1.0, abs=1e-12)
    assert fit["r2"] == pytest.approx(1.0)


def test_sweep_zero_metric_reports_converged():
    # starting exactly at the minimizer of a deterministic problem keeps
    # every iterate and its proximal point there
    prob = quadratic_problem(np.zeros(2))
    res = sweep(prob, [4, 8], n_seeds=2, alpha=1.0)
    assert all(m == 0.0 for m in res.means)
    assert res.fit["converged"]
    assert res.slope_json()["slope"] is None


def test_sweep_rows_roundtrip_and_threads():
    p3 = get_problem("P3")
    res = sweep(p3, [8, 16], n_seeds=2)
    text = format_csv_rows(res.rows)
    back = parse_csv_rows(text)
    assert len(back) == len(res.rows)
    for row, orig in zip(back, res.rows):
        assert row["metric_value"] == orig["metric_value"]  # bit-exact
        assert row["eta0"] == orig["eta0"]
    js = res.slope_json()
    assert set(js) == {"slope", "intercept", "r2", "horizons", "n_seeds"}
    # concurrent execution assembles the same rows (modulo wall time)
    res2 = sweep(p3, [8, 16], n_seeds=2, threads=3)
    strip = lambda rows: [{k: v for k, v in r.items() if k != "wall_ms"}
                          for r in rows]
    assert strip(res2.rows) == strip(res.rows)


def test_sweep_horizons_must_increase():
    with pytest.raises(ValueError):
        sweep(get_problem("P3"), [16, 8], n_seeds=1)


def test_smooth_loop_on_simplex_is_exponentiated_gradient():
    # a linear objective is 0-relatively-smooth, so the regime-B loop on the
    # simplex must reproduce the multiplicative update with positive iterates
    from bregopt.legendre import ShannonEntropy
    from bregopt.models import LinearMirrorOracle, OracleConstants
    from bregopt.problems import ProblemInstance
    from bregopt.subproblem import SimplexIndicator, linear_model

    d = 4
    cost = np.array([0.9, 0.1, 0.5, 0.3])
    steps = np.array([[0.2, -0.1, 0.0, 0.1], [0.0, 0.2, -0.2, 0.0]])
    oracle = LinearMirrorOracle(
        f_fn=lambda x: float(cost @ x),
        grad_map=lambda x, xi: cost + steps[xi],
        weights=[0.5, 0.5], lip_fn=lambda xi: 2.0, regime="B",
        constants=OracleConstants(tau=0.0, smooth_M=0.0, lip_bound_L=2.0,
                                  variance_sigma=1.0),
        grad_f_fn=lambda x: cost.copy(),
        test_point_sampler=lambda rng: rng.dirichlet(np.ones(d)))
    prob = ProblemInstance("EG", oracle, SimplexIndicator(),
                           ShannonEntropy(on_simplex=True), "B", d,
                           np.full(d, 0.25), sampler=oracle.test_point_sampler)
    prob._objective_builder = lambda: linear_model(cost)
    trace = run_mirror_descent_smooth(prob, SolverConfig(10, seed=4))
    assert np.all(trace.iterates > 0)
    x = prob.x0.copy()
    for t in range(11):
        g = cost + steps[trace.sampled_xi_ids[t]]
        w = x * np.exp(-trace.etas[t] * g)
        x = w / w.sum()
        assert np.allclose(trace.iterates[t + 1], x, rtol=1e-12)


def test_deterministic_strongly_convex_descent_is_monotone():
    # sigma = 0 sanity check: after the first few steps the objective is
    # nonincreasing along the iterates
    prob = quadratic_problem(np.array([2.0, -1.5]))
    trace = run_model_based(prob, SolverConfig(30, seed=0, lam=1.0,
                                               schedule=("constant", 1.0)))
    vals = [prob.exact_F(x) for x in trace.iterates]
    assert all(b <= a + 1e-12 for a, b in zip(vals[2:], vals[3:]))
