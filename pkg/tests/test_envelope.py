import numpy as np
import pytest

from util_problems import halfsq_problem, smooth_problem

from bregopt.envelope import (bregman_prox_point, envelope_gradient,
                              envelope_value, stationarity)
from bregopt.legendre import (Euclidean, ShannonEntropy,
                              build_norm_power_legendre, finite_difference_step)
from bregopt.models import NoisyGradientOracle, OracleConstants
from bregopt.problems import ProblemInstance, get_problem
from bregopt.subproblem import PointModel, ZeroRegularizer


def test_halfsq_closed_forms():
    prob = halfsq_problem()
    x = np.array([2.0, 0.0])
    x_hat = bregman_prox_point(prob, prob.phi, x, 1.0)
    assert np.allclose(x_hat, [1.0, 0.0], atol=1e-10)
    assert envelope_value(prob, prob.phi, x, 1.0) == pytest.approx(1.0, abs=1e-10)
    g = envelope_gradient(prob, prob.phi, x, 1.0)
    assert np.allclose(g, [1.0, 0.0], atol=1e-10)
    rep = stationarity(prob, prob.phi, x, 1.0)
    assert rep.divergence == pytest.approx(0.5, abs=1e-10)
    # the local-norm estimate is tight in the Euclidean case
    assert abs(rep.lower_bound_check) <= 1e-9


def test_stationary_at_minimizer():
    prob = halfsq_problem()
    rep = stationarity(prob, prob.phi, np.zeros(2), 0.7)
    assert rep.divergence <= 1e-18
    assert np.linalg.norm(rep.envelope_gradient) <= 1e-9


def test_constant_objective_both_paths():
    d = 2
    f = lambda y: 3.25
    oracle = NoisyGradientOracle(
        f, lambda y: np.zeros(d), lambda rng: np.zeros(d), regime="B",
        constants=OracleConstants(),
        test_point_sampler=lambda rng: rng.uniform(-2, 2, d))
    prob = ProblemInstance("CONST", oracle, ZeroRegularizer(), Euclidean(),
                           "B", d, np.zeros(d), sampler=oracle.test_point_sampler)
    prob._objective_builder = lambda: PointModel(
        f, lambda y: np.zeros(d), smooth=True, hessian_fn=lambda y: np.zeros((d, d)))
    for x in (np.zeros(2), np.array([1.3, -0.2])):
        assert envelope_value(prob, prob.phi, x, 0.9, path="direct") == pytest.approx(3.25, abs=1e-10)
        assert envelope_value(prob, prob.phi, x, 0.9, path="conjugate") == pytest.approx(3.25, abs=1e-10)


def phi_cases():
    return [
        smooth_problem(Euclidean()),
        smooth_problem(build_norm_power_legendre([1.0, 0.0, 1.0])),
        smooth_problem(ShannonEntropy(), center=np.array([1.2, 0.8])),
    ]


def test_envelope_is_a_minorant():
    rng = np.random.default_rng(0)
    for prob in phi_cases():
        for _ in range(20):
            x = prob.sample_domain_point(rng)
            env = envelope_value(prob, prob.phi, x, 0.5)
            assert env <= prob.exact_F(x) + 1e-10


def test_direct_and_conjugate_paths_agree():
    rng = np.random.default_rng(1)
    for prob in phi_cases():
        for _ in range(15):
            x = prob.sample_domain_point(rng)
            a = envelope_value(prob, prob.phi, x, 0.5, path="direct")
            b = envelope_value(prob, prob.phi, x, 0.5, path="conjugate")
            assert abs(a - b) <= 1e-6 * (1.0 + abs(a)), prob.id


def test_gradient_formula_matches_finite_differences():
    rng = np.random.default_rng(2)
    lam = 0.5
    for prob in phi_cases():
        for _ in range(8):
            x = prob.sample_domain_point(rng)
            g = envelope_gradient(prob, prob.phi, x, lam, tol=1e-12)
            h = finite_difference_step(x)
            fd = np.zeros_like(x)
            for i in range(x.size):
                e = np.zeros_like(x)
                e[i] = h
                fd[i] = (envelope_value(prob, prob.phi, x + e, lam, tol=1e-12)
                         - envelope_value(prob, prob.phi, x - e, lam, tol=1e-12)) / (2 * h)
            err = np.linalg.norm(fd - g) / (1.0 + np.linalg.norm(fd))
            assert err <= 1e-5, prob.id


def test_local_norm_lower_bound():
    rng = np.random.default_rng(3)
    lam = 0.5
    for prob in phi_cases():
        if prob.phi.strong_convexity_modulus is None:
            continue
        for _ in range(20):
            x = prob.sample_domain_point(rng)
            rep = stationarity(prob, prob.phi, x, lam)
            assert rep.lower_bound_check is not None
            assert rep.lower_bound_check >= -1e-9
    # entropy off the simplex declares no modulus: the bound is not claimed
    ent_prob = phi_cases()[2]
    rep = stationarity(ent_prob, ent_prob.phi, np.array([1.0, 1.0]), lam)
    assert rep.lower_bound_check is None


def test_monotone_in_lambda():
    rng = np.random.default_rng(4)
    for prob in phi_cases():
        x = prob.sample_domain_point(rng)
        lams = [0.05, 0.1, 0.2, 0.4, 0.8]
        vals = [envelope_value(prob, prob.phi, x, lam) for lam in lams]
        for a, b in zip(vals, vals[1:]):
            assert b <= a + 1e-10


def test_lambda_admissibility_enforced():
    p1 = get_problem("P1")
    tau = p1.oracle.constants.tau
    with pytest.raises(ValueError):
        bregman_prox_point(p1, p1.phi, p1.x0, 1.0 / tau)
    with pytest.raises(ValueError):
        envelope_value(p1, p1.phi, p1.x0, -0.1)


def test_piecewise_1d_prox_matches_golden_oracle():
    p1 = get_problem("P1")
    lam = 0.25
    x = np.array([1.4])
    x_hat = bregman_prox_point(p1, p1.phi, x, lam, tol=1e-12)

    def total(y):
        return p1.exact_F(np.array([y])) + p1.phi.bregman(np.array([y]), x) / lam

    # golden section inside a coarse-grid bracket
    ts = np.linspace(-2.5, 2.5, 20001)
    vals = np.array([total(t) for t in ts])
    k = int(np.argmin(vals))
    a, b = ts[max(k - 1, 0)], ts[min(k + 1, len(ts) - 1)]
    invphi = (np.sqrt(5) - 1) / 2
    while b - a > 1e-12:
        c, d = b - invphi * (b - a), a + invphi * (b - a)
        if total(c) < total(d):
            b = d
        else:
            a = c
    assert abs(x_hat[0] - 0.5 * (a + b)) <= 1e-8
