"""Bregman-Moreau envelope diagnostics.

Stationarity of a weakly convex composite F = f + r is measured through the
envelope

    env(x) = inf_y { F(y) + (1/lam) D(y, x) }

and its proximal point x_hat = argmin of the same subproblem.  The distance
D(x_hat, x) is the quantity the outer algorithms drive to zero; the envelope
is differentiable with

    grad env(x) = (1/lam) hessian_phi(x) (x - x_hat),

and when phi is 1-strongly convex the square root of D(x_hat, x) dominates
(lam/sqrt(2)) times the local dual norm of that gradient.  Two independent
evaluation paths are provided: the direct infimum and the convex-conjugate
assembly

    env(x) = -(F + phi/lam)^*(grad phi(x)/lam) - phi(x)/lam
             + <grad phi(x), x>/lam,

whose agreement is enforced as a runtime cross-check.  The diagnostic is
always computed offline on recorded iterates, never inside an algorithm
loop.
"""

import numpy as np

from .subproblem import prox_step


class EnvelopeReport:
    """Stationarity diagnostics at one point."""

    def __init__(self, prox_point, divergence, envelope_value_direct,
                 envelope_value_conjugate, envelope_gradient,
                 local_dual_norm_of_gradient, lower_bound_check):
        self.prox_point = prox_point
        self.divergence = divergence
        self.envelope_value_direct = envelope_value_direct
        self.envelope_value_conjugate = envelope_value_conjugate
        self.envelope_gradient = envelope_gradient
        self.local_dual_norm_of_gradient = local_dual_norm_of_gradient
        self.lower_bound_check = lower_bound_check


def _weak_modulus(problem):
    c = problem.oracle.constants
    return c.tau + c.rho


def _check_lambda(problem, lam):
    if lam <= 0:
        raise ValueError("smoothing parameter must be positive")
    wm = _weak_modulus(problem)
    if wm > 0 and lam * wm >= 1.0:
        raise ValueError("need lam * (tau + rho) < 1 for a convex prox subproblem")


def bregman_prox_point(problem, phi, x, lam, tol=1e-10):
    """argmin_y { F(y) + (1/lam) D(y, x) } for the exact objective F."""
    _check_lambda(problem, lam)
    model = problem.exact_objective()
    res = prox_step(model, problem.regularizer, phi, x, lam,
                    rho=_weak_modulus(problem), inner_tol=tol)
    return res.minimizer


def envelope_value(problem, phi, x, lam, path="direct", tol=1e-10):
    """The envelope at x by the requested evaluation path."""
    x = np.asarray(x, dtype=float)
    x_hat = bregman_prox_point(problem, phi, x, lam, tol=tol)
    if path == "direct":
        return problem.exact_F(x_hat) + phi.bregman(x_hat, x) / lam
    if path != "conjugate":
        raise ValueError("path must be 'direct' or 'conjugate'")
    gx = phi.gradient(x)
    u = gx / lam
    # (F + phi/lam)^* at u; the supremum is attained at the proximal point
    conj = float(np.dot(u, x_hat)) - problem.exact_F(x_hat) - phi.value(x_hat) / lam
    return -conj - phi.value(x) / lam + float(np.dot(gx, x)) / lam


def envelope_gradient(problem, phi, x, lam, tol=1e-10):
    """grad env(x) = (1/lam) hessian_phi(x) (x - prox(x))."""
    x = np.asarray(x, dtype=float)
    x_hat = bregman_prox_point(problem, phi, x, lam, tol=tol)
    return phi.hessian_apply(x, x - x_hat) / lam


def stationarity(problem, phi, x, lam, tol=1e-10):
    """Full stationarity report at x.

    The divergence field D(prox(x), x) is the convergence metric of the
    weakly convex rate theory.  lower_bound_check is
    sqrt(D) - (lam/sqrt(2)) * ||grad env||_x^* when phi declares a strong
    convexity modulus >= 1, and None otherwise (the bound is then not
    claimed, so it is flagged rather than guessed).
    """
    x = np.asarray(x, dtype=float)
    x_hat = bregman_prox_point(problem, phi, x, lam, tol=tol)
    div = phi.bregman(x_hat, x)
    direct = problem.exact_F(x_hat) + div / lam
    gx = phi.gradient(x)
    u = gx / lam
    conj = float(np.dot(u, x_hat)) - problem.exact_F(x_hat) - phi.value(x_hat) / lam
    conjugate = -conj - phi.value(x) / lam + float(np.dot(gx, x)) / lam
    if abs(direct - conjugate) > 1e-6 * (1.0 + abs(direct)):
        raise RuntimeError(
            "direct and conjugate envelope values disagree: %.12g vs %.12g"
            % (direct, conjugate))
    grad = phi.hessian_apply(x, x - x_hat) / lam
    dual = phi.local_dual_norm(x, grad)
    modulus = phi.strong_convexity_modulus
    check = None
    if modulus is not None and modulus >= 1.0:
        check = float(np.sqrt(max(div, 0.0)) - (lam / np.sqrt(2.0)) * dual)
    return EnvelopeReport(x_hat, div, direct, conjugate, grad, dual, check)
