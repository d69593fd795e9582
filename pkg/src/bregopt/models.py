"""Stochastic one-sided model oracles.

An oracle represents a family of sampled models f_x(., xi) of an objective
f: at the base point the model agrees with f in expectation, and away from
it the expected overshoot above f is controlled by tau times the Bregman
divergence.  Four families are implemented:

  proximal_point  f_x(y, xi) = f(y, xi), a full sampled function
  linear_mirror   f_x(y, xi) = f(x) + <G(x, xi), y - x>
  prox_linear     f_x(y, xi) = h(c(x, xi) + J(x, xi)(y - x), xi)
  saddle          f_x(y, xi) = g(y, w_hat(x, xi), xi), w_hat the inner argmax

Constants (tau, rho, mu, L, M, sigma) are declared by the problem builder
and validated statistically by the verify_* checks below, never estimated
implicitly: the step-size rules need them a priori.
"""

import numpy as np

from .subproblem import PointModel, linear_model, absolute_affine_model


class OracleConstants:
    """Declared constants of the assumption regime the oracle claims."""

    def __init__(self, tau=0.0, rho=0.0, mu=0.0, lip_bound_L=0.0,
                 smooth_M=0.0, variance_sigma=0.0):
        if min(tau, rho, mu, lip_bound_L, smooth_M, variance_sigma) < 0:
            raise ValueError("oracle constants must be nonnegative")
        self.tau = float(tau)
        self.rho = float(rho)
        self.mu = float(mu)
        self.lip_bound_L = float(lip_bound_L)
        self.smooth_M = float(smooth_M)
        self.variance_sigma = float(variance_sigma)


class ModelOracle:
    """Base class: immutable family of sampled one-sided models.

    Randomness enters only through the generator passed to sample(), so
    concurrent runs with distinct generator states are race-free and
    bit-reproducible under a fixed seed.
    """

    family = "abstract"

    def __init__(self, regime, constants, sample_space, test_point_sampler=None):
        if regime not in ("A", "B", "C"):
            raise ValueError("regime must be one of A, B, C")
        self.regime = regime
        self.constants = constants
        self.sample_space = sample_space
        self.test_point_sampler = test_point_sampler

    # -- sampling -----------------------------------------------------------
    def sample(self, rng):
        raise NotImplementedError

    def draw_test_point(self, rng):
        if self.test_point_sampler is None:
            raise ValueError("oracle has no test point sampler configured")
        return np.asarray(self.test_point_sampler(rng), dtype=float)

    # -- models -------------------------------------------------------------
    def model_at(self, x, xi):
        """The sampled model anchored at x, as a PointModel."""
        raise NotImplementedError

    def model_value(self, x, y, xi):
        return self.model_at(x, xi).value(y)

    def model_subgradient(self, x, y, xi):
        return self.model_at(x, xi).subgradient(y)

    def lip_L(self, xi):
        """Per-sample Lipschitz-type constant L(xi)."""
        raise NotImplementedError

    # -- exact expectations ---------------------------------------------------
    def f_exact(self, x):
        """The true objective component f (exact or frozen-empirical)."""
        raise NotImplementedError

    def expected_model_value(self, x, y):
        """E_xi f_x(y, xi), exact for finite support."""
        raise NotImplementedError

    def expected_lip_sq(self):
        """E[L(xi)^2], exact for finite support."""
        raise NotImplementedError


class FiniteSupportOracle(ModelOracle):
    """Mixin for oracles whose sample space is {0..m-1} with given weights."""

    def __init__(self, weights, **kw):
        weights = np.asarray(weights, dtype=float)
        if np.any(weights < 0) or abs(weights.sum() - 1.0) > 1e-12:
            raise ValueError("weights must be a probability vector")
        self.weights = weights
        self.n_atoms = weights.size
        super().__init__(**kw)

    def sample(self, rng):
        return int(rng.choice(self.n_atoms, p=self.weights))

    def expected_model_value(self, x, y):
        return float(sum(w * self.model_value(x, y, i)
                         for i, w in enumerate(self.weights)))

    def expected_lip_sq(self):
        return float(sum(w * self.lip_L(i) ** 2 for i, w in enumerate(self.weights)))


# ---------------------------------------------------------------------------
# linear models from a stochastic (sub)gradient map
# ---------------------------------------------------------------------------

class LinearMirrorOracle(FiniteSupportOracle):
    """f_x(y, xi) = f(x) + <G(x, xi), y - x> over a finite sample space."""

    family = "linear_mirror"

    def __init__(self, f_fn, grad_map, weights, lip_fn, regime, constants,
                 grad_f_fn=None, hess_f_fn=None, sample_space="finite support",
                 test_point_sampler=None):
        self._f = f_fn
        self._G = grad_map           # (x, atom index) -> vector
        self._lip = lip_fn           # atom index -> L(xi)
        self.grad_f = grad_f_fn
        self.hess_f = hess_f_fn
        super().__init__(weights=weights, regime=regime, constants=constants,
                         sample_space=sample_space,
                         test_point_sampler=test_point_sampler)

    def model_at(self, x, xi):
        x = np.asarray(x, dtype=float)
        g = np.asarray(self._G(x, xi), dtype=float)
        offset = self.f_exact(x) - float(np.dot(g, x))
        m = linear_model(g, offset=offset)
        return m

    def lip_L(self, xi):
        return float(self._lip(xi))

    def f_exact(self, x):
        return float(self._f(np.asarray(x, dtype=float)))


class NoisyGradientOracle(ModelOracle):
    """Linear models built from an exact gradient plus additive noise.

    The smooth-minimization regime: xi is the noise vector itself, drawn from
    a seedable parametric generator with E[noise] = 0 and
    E||noise||^2 <= sigma^2 / 2.
    """

    family = "linear_mirror"

    def __init__(self, f_fn, grad_f_fn, noise_sampler, regime, constants,
                 hess_f_fn=None, sample_space="parametric gaussian noise",
                 test_point_sampler=None, mc_samples=100000):
        self._f = f_fn
        self.grad_f = grad_f_fn
        self.hess_f = hess_f_fn
        self._noise = noise_sampler  # rng -> vector
        self.mc_samples = int(mc_samples)
        super().__init__(regime=regime, constants=constants,
                         sample_space=sample_space,
                         test_point_sampler=test_point_sampler)

    def sample(self, rng):
        return np.asarray(self._noise(rng), dtype=float)

    def model_at(self, x, xi):
        x = np.asarray(x, dtype=float)
        g = self.grad_f(x) + np.asarray(xi, dtype=float)
        offset = self.f_exact(x) - float(np.dot(g, x))
        return linear_model(g, offset=offset)

    def lip_L(self, xi):
        raise NotImplementedError(
            "noisy-gradient oracles claim a variance bound, not a Lipschitz one")

    def f_exact(self, x):
        return float(self._f(np.asarray(x, dtype=float)))

    def expected_model_value(self, x, y):
        # the noise is mean-zero, so the expected model is the exact tangent
        x = np.asarray(x, dtype=float)
        y = np.asarray(y, dtype=float)
        return self.f_exact(x) + float(np.dot(self.grad_f(x), y - x))


# ---------------------------------------------------------------------------
# partial linearization (Gauss-Newton / prox-linear) models
# ---------------------------------------------------------------------------

class CompositeData:
    """Data of a composite objective f(x) = E[h(c(x, xi), xi)].

    outer h(., xi) is convex and L1(xi)-Lipschitz; inner c(., xi) is smooth
    with Jacobian J.  Two growth polynomials describe the inner map: p bounds
    the Jacobian's Lipschitz modulus via L2_accuracy(xi)(p(||x||)+p(||y||)),
    and q bounds its operator norm via L2_growth(xi) sqrt(q(||x||)).
    """

    def __init__(self, outer_value, outer_subgrad, outer_lip,
                 inner_value, inner_jacobian, l2_accuracy, l2_growth,
                 jacobian_lip_growth, jacobian_growth, outer_is_abs=False):
        self.outer_value = outer_value        # (v, xi) -> float
        self.outer_subgrad = outer_subgrad    # (v, xi) -> array over outputs
        self.outer_lip = outer_lip            # xi -> L1(xi)
        self.inner_value = inner_value        # (x, xi) -> array (m outputs)
        self.inner_jacobian = inner_jacobian  # (x, xi) -> (m, d) array
        self.l2_accuracy = l2_accuracy        # xi -> L2(xi) for the p bound
        self.l2_growth = l2_growth            # xi -> L2(xi) for the q bound
        self.jacobian_lip_growth = [float(a) for a in jacobian_lip_growth]
        self.jacobian_growth = [float(b) for b in jacobian_growth]
        self.outer_is_abs = outer_is_abs      # h = |.| on a scalar output


class ProxLinearOracle(FiniteSupportOracle):
    """Models h(c(x, xi) + J(x, xi)(y - x), xi): convex in y, rho = 0."""

    family = "prox_linear"

    def __init__(self, composite, weights, regime, constants,
                 sample_space="finite support", test_point_sampler=None):
        self.composite = composite
        super().__init__(weights=weights, regime=regime, constants=constants,
                         sample_space=sample_space,
                         test_point_sampler=test_point_sampler)

    def model_at(self, x, xi):
        comp = self.composite
        x = np.asarray(x, dtype=float)
        c0 = np.atleast_1d(np.asarray(comp.inner_value(x, xi), dtype=float))
        J = np.atleast_2d(np.asarray(comp.inner_jacobian(x, xi), dtype=float))
        bias = c0 - J @ x

        if comp.outer_is_abs and c0.size == 1:
            return absolute_affine_model(J[0], float(bias[0]))

        def val(y):
            return float(comp.outer_value(J @ y + bias, xi))

        def sub(y):
            return J.T @ np.atleast_1d(comp.outer_subgrad(J @ y + bias, xi))

        return PointModel(val, sub)

    def lip_L(self, xi):
        comp = self.composite
        return float(np.sqrt(2.0) * comp.outer_lip(xi) * comp.l2_growth(xi))

    def f_exact(self, x):
        comp = self.composite
        x = np.asarray(x, dtype=float)
        return float(sum(w * comp.outer_value(
            np.atleast_1d(comp.inner_value(x, i)), i)
            for i, w in enumerate(self.weights)))

    def tau_from_accuracy(self):
        """tau = (4/3) E[L1 L2] for the accuracy-adapted Legendre function."""
        comp = self.composite
        return float(4.0 / 3.0 * sum(
            w * comp.outer_lip(i) * comp.l2_accuracy(i)
            for i, w in enumerate(self.weights)))


# ---------------------------------------------------------------------------
# saddle / robust models
# ---------------------------------------------------------------------------

class SaddleData:
    """Data of a robust objective f(x) = E[sup_{w in W} g(x, w, xi)].

    argmax_solver returns w_hat(x, xi) attaining the inner sup of the model
    g_x(x, ., xi); for an l2-ball uncertainty set with g affine in w this is
    the closed-form radius * normalize(coefficient) selection.
    """

    def __init__(self, g_value, model_value, model_subgrad, argmax_solver,
                 w_set_kind, w_radius=None, w_points=None):
        self.g_value = g_value            # (x, w, xi) -> float
        self.model_value = model_value    # (base x, y, w, xi) -> float
        self.model_subgrad = model_subgrad
        self.argmax_solver = argmax_solver  # (x, xi) -> w_hat
        self.w_set_kind = w_set_kind       # "l2_ball" or "finite"
        self.w_radius = w_radius
        self.w_points = w_points

    def sup_g(self, x, xi):
        w_hat = self.argmax_solver(x, xi)
        return self.g_value(x, w_hat, xi)


class SaddleOracle(FiniteSupportOracle):
    """f_x(y, xi) = g_x(y, w_hat(x, xi), xi) with w_hat the inner argmax."""

    family = "saddle"

    def __init__(self, saddle, weights, lip_fn, regime, constants,
                 f_sup_exact=None, linear_slope=None,
                 sample_space="finite support", test_point_sampler=None):
        self.saddle = saddle
        self._lip = lip_fn
        self._f_sup = f_sup_exact
        self._linear_slope = linear_slope  # (x, xi) -> slope when g_x affine in y
        super().__init__(weights=weights, regime=regime, constants=constants,
                         sample_space=sample_space,
                         test_point_sampler=test_point_sampler)

    def model_at(self, x, xi):
        x = np.asarray(x, dtype=float)
        w_hat = self.saddle.argmax_solver(x, xi)
        if self._linear_slope is not None:
            g = np.asarray(self._linear_slope(x, xi), dtype=float)
            offset = self.saddle.model_value(x, x, w_hat, xi) - float(np.dot(g, x))
            return linear_model(g, offset=offset)

        def val(y):
            return float(self.saddle.model_value(x, y, w_hat, xi))

        def sub(y):
            return np.asarray(self.saddle.model_subgrad(x, y, w_hat, xi), dtype=float)

        return PointModel(val, sub)

    def lip_L(self, xi):
        return float(self._lip(xi))

    def f_exact(self, x):
        x = np.asarray(x, dtype=float)
        if self._f_sup is not None:
            return float(self._f_sup(x))
        return float(sum(w * self.saddle.sup_g(x, i)
                         for i, w in enumerate(self.weights)))


# ---------------------------------------------------------------------------
# full sampled functions (stochastic Bregman-proximal point)
# ---------------------------------------------------------------------------

class ProximalPointOracle(FiniteSupportOracle):
    """f_x(y, xi) = f(y, xi): the model is the sampled function itself."""

    family = "proximal_point"

    def __init__(self, atom_value, atom_grad, atom_hess, weights, lip_fn,
                 regime, constants, sample_space="finite support",
                 test_point_sampler=None):
        self._val = atom_value    # (y, xi) -> float
        self._grad = atom_grad    # (y, xi) -> vector
        self._hess = atom_hess    # (y, xi) -> matrix or None
        self._lip = lip_fn
        super().__init__(weights=weights, regime=regime, constants=constants,
                         sample_space=sample_space,
                         test_point_sampler=test_point_sampler)

    def model_at(self, x, xi):
        hess = None
        if self._hess is not None:
            hess = lambda y: self._hess(y, xi)
        return PointModel(lambda y: float(self._val(y, xi)),
                          lambda y: np.asarray(self._grad(y, xi), dtype=float),
                          smooth=True, hessian_fn=hess)

    def lip_L(self, xi):
        return float(self._lip(xi))

    def f_exact(self, x):
        x = np.asarray(x, dtype=float)
        return float(sum(w * self._val(x, i) for i, w in enumerate(self.weights)))

    def grad_f(self, x):
        x = np.asarray(x, dtype=float)
        out = np.zeros_like(x)
        for i, w in enumerate(self.weights):
            out += w * np.asarray(self._grad(x, i), dtype=float)
        return out

    def hess_f(self, x):
        x = np.asarray(x, dtype=float)
        d = x.size
        out = np.zeros((d, d))
        for i, w in enumerate(self.weights):
            out += w * np.asarray(self._hess(x, i), dtype=float)
        return out


# ---------------------------------------------------------------------------
# statistical verification of the declared constants
# ---------------------------------------------------------------------------

class VerifyReport:
    def __init__(self, passed, **fields):
        self.passed = bool(passed)
        for k, v in fields.items():
            setattr(self, k, v)

    def __repr__(self):
        keys = {k: v for k, v in self.__dict__.items() if k != "passed"}
        return "VerifyReport(passed=%s, %s)" % (self.passed, keys)


REL_TOL = 1e-9


def _mc_overshoot(oracle, x, y, n_samples, rng):
    """Monte-Carlo estimate of E[f_x(y, xi)] with common random numbers."""
    vals = np.empty(n_samples)
    for k in range(n_samples):
        xi = oracle.sample(rng)
        vals[k] = oracle.model_value(x, y, xi)
    return float(vals.mean()), float(vals.std(ddof=1) / np.sqrt(n_samples))


def verify_one_sided(oracle, phi, x, y, n_samples=10000, rng=None):
    """Check the one-sided accuracy contract at a single pair (x, y).

    mean_gap_at_x = E[f_x(x, xi)] - f(x) should vanish; mean_overshoot =
    E[f_x(y, xi) - f(y)] must stay below bound_rhs = tau * D(y, x) (zero tau
    in the convex regime, where the models globally under-estimate), up to
    three standard errors on the Monte-Carlo path.
    """
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    tau = 0.0 if oracle.regime == "C" else oracle.constants.tau
    D = phi.bregman(y, x)
    bound_rhs = tau * D
    try:
        m_at_x = oracle.expected_model_value(x, x)
        m_at_y = oracle.expected_model_value(x, y)
        se_x = se_y = 0.0
    except NotImplementedError:
        rng = np.random.default_rng(0) if rng is None else rng
        m_at_x, se_x = _mc_overshoot(oracle, x, x, n_samples, rng)
        m_at_y, se_y = _mc_overshoot(oracle, x, y, n_samples, rng)
    fx = oracle.f_exact(x)
    fy = oracle.f_exact(y)
    scale = 1.0 + abs(fx) + abs(bound_rhs)
    gap_at_x = m_at_x - fx
    overshoot = m_at_y - fy
    ok = (abs(gap_at_x) <= 3.0 * se_x + REL_TOL * scale
          and overshoot - bound_rhs <= 3.0 * se_y + REL_TOL * scale)
    return VerifyReport(ok, mean_gap_at_x=gap_at_x, mean_overshoot=overshoot,
                        bound_rhs=bound_rhs, std_err=max(se_x, se_y))


def verify_lipschitz(oracle, phi, n_pairs, rng):
    """Check f_x(x, xi) - f_x(y, xi) <= L(xi) sqrt(D(y, x)) on random pairs.

    Also confirms the declared aggregate sqrt(E[L(xi)^2]) <= L.  Pairs with
    x = y are skipped (the ratio is 0/0 there).
    """
    max_ratio = 0.0
    max_normalized = 0.0
    used = 0
    ok = True
    for _ in range(n_pairs):
        x = oracle.draw_test_point(rng)
        y = oracle.draw_test_point(rng)
        D = phi.bregman(y, x)
        if D <= 1e-18:
            continue
        xi = oracle.sample(rng)
        gap = oracle.model_value(x, x, xi) - oracle.model_value(x, y, xi)
        ratio = gap / np.sqrt(D)
        L = oracle.lip_L(xi)
        max_ratio = max(max_ratio, ratio)
        if L > 0:
            max_normalized = max(max_normalized, ratio / L)
        elif ratio > REL_TOL:
            ok = False
        used += 1
    if max_normalized > 1.0 + REL_TOL:
        ok = False
    claimed = oracle.constants.lip_bound_L
    second_moment = oracle.expected_lip_sq()
    if np.sqrt(second_moment) > claimed * (1.0 + REL_TOL):
        ok = False
    return VerifyReport(ok, max_ratio=max_ratio, claimed_L=claimed,
                        max_normalized=max_normalized,
                        second_moment=second_moment, n_used=used)


def verify_relative_smoothness(oracle, phi, n_pairs, rng):
    """Check -tau D(y,x) <= f(y) - f(x) - <grad f(x), y-x> <= M D(y,x)."""
    if getattr(oracle, "grad_f", None) is None:
        raise ValueError("relative smoothness check needs an exact gradient")
    tau = oracle.constants.tau
    M = oracle.constants.smooth_M
    worst_lower = np.inf
    worst_upper = np.inf
    ok = True
    for _ in range(n_pairs):
        x = oracle.draw_test_point(rng)
        y = oracle.draw_test_point(rng)
        D = phi.bregman(y, x)
        lin_err = (oracle.f_exact(y) - oracle.f_exact(x)
                   - float(np.dot(oracle.grad_f(x), y - x)))
        scale = REL_TOL * (1.0 + abs(lin_err) + D)
        lower_slack = lin_err + tau * D
        upper_slack = M * D - lin_err
        worst_lower = min(worst_lower, lower_slack)
        worst_upper = min(worst_upper, upper_slack)
        if lower_slack < -scale or upper_slack < -scale:
            ok = False
    return VerifyReport(ok, worst_lower_slack=worst_lower,
                        worst_upper_slack=worst_upper, tau=tau, M=M)


def verify_variance(oracle, n_samples, x, rng):
    """Check E||G(x, xi) - grad f(x)||^2 <= sigma^2 / 2 + 3 s.e.

    The deviation is measured in the Euclidean norm, the dual of the norm
    every registered finite-variance oracle declares its strong convexity in.
    """
    x = np.asarray(x, dtype=float)
    g_exact = oracle.grad_f(x)
    sq = np.empty(n_samples)
    for k in range(n_samples):
        xi = oracle.sample(rng)
        g = oracle.model_at(x, xi).linear
        sq[k] = float(np.sum((g - g_exact) ** 2))
    mean = float(sq.mean())
    se = float(sq.std(ddof=1) / np.sqrt(n_samples))
    bound = oracle.constants.variance_sigma ** 2 / 2.0
    ok = mean <= bound + 3.0 * se + REL_TOL * (1.0 + bound)
    return VerifyReport(ok, empirical_second_moment=mean, bound=bound, std_err=se)
