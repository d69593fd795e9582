"""Legendre functions, Bregman divergences, and local norms.

Every solver in this package measures proximity with a Bregman divergence

    D(y, x) = phi(y) - phi(x) - <grad phi(x), y - x>

generated by a Legendre function phi (proper, closed, strictly convex,
essentially smooth).  This module provides the supported phi zoo -- squared
Euclidean norm, Shannon entropy, Burg entropy, and radial norm-power sums --
together with gradients, Hessian actions, local dual norms, and the two
builders that turn polynomial growth data into a compatible phi.
"""

import numpy as np


class DomainError(ValueError):
    """Point lies outside the (interior of the) domain of phi."""


class SingularHessianError(ValueError):
    """Hessian of phi is not invertible at the requested point."""


ALL_SPACE = "all_space"
POSITIVE_ORTHANT = "positive_orthant"
OPEN_POSITIVE_ORTHANT = "open_positive_orthant"


def primal_norm(v, kind):
    if kind == "l1":
        return float(np.sum(np.abs(v)))
    return float(np.linalg.norm(v))


class LocalNormContext:
    """Local norm data at an interior base point.

    Carries the symmetric positive definite factor H = hessian of phi at the
    base point.  The local norm of y is ||H y||_* and its dual is ||H^-1 v||
    in the primal norm declared by phi.
    """

    def __init__(self, base_point, hessian_factor, norm="l2"):
        self.base_point = np.asarray(base_point, dtype=float)
        self.hessian_factor = np.asarray(hessian_factor, dtype=float)
        self.norm = norm

    def local_norm(self, y):
        w = self.hessian_factor @ np.asarray(y, dtype=float)
        # dual of l1 is l-infinity; dual of l2 is l2
        if self.norm == "l1":
            return float(np.max(np.abs(w)))
        return float(np.linalg.norm(w))

    def local_dual_norm(self, v):
        u = np.linalg.solve(self.hessian_factor, np.asarray(v, dtype=float))
        return primal_norm(u, self.norm)


class LegendreFunction:
    """Base class for the phi zoo.

    Subclasses implement value / gradient / hessian_apply / hessian_solve and
    declare their domain, primal norm, and (when known) a strong convexity
    modulus with respect to that norm.  Instances are immutable after
    construction and all operations are pure, so they are safe to share
    across concurrent workers.
    """

    kind = "abstract"
    domain = ALL_SPACE
    norm = "l2"
    strong_convexity_modulus = None

    def value(self, x):
        raise NotImplementedError

    def gradient(self, x):
        raise NotImplementedError

    def hessian_apply(self, x, v):
        raise NotImplementedError

    def hessian_solve(self, x, v):
        raise NotImplementedError

    def in_domain(self, x):
        x = np.asarray(x, dtype=float)
        if self.domain == ALL_SPACE:
            return True
        if self.domain == POSITIVE_ORTHANT:
            return bool(np.all(x >= 0))
        return bool(np.all(x > 0))

    def in_interior(self, x):
        x = np.asarray(x, dtype=float)
        if self.domain == ALL_SPACE:
            return True
        return bool(np.all(x > 0))

    def check_interior(self, x):
        if not self.in_interior(x):
            raise DomainError("%r is not interior to dom(phi) for kind=%s"
                              % (np.asarray(x), self.kind))

    def bregman(self, y, x):
        """D(y, x) = phi(y) - phi(x) - <grad phi(x), y - x>.

        Requires x interior and y in the domain; nonnegative, and zero only
        for y = x (strict convexity).
        """
        y = np.asarray(y, dtype=float)
        x = np.asarray(x, dtype=float)
        vy = self.value(y)
        if not np.isfinite(vy):
            raise DomainError("second argument of the divergence must lie in dom(phi)")
        g = self.gradient(x)
        return float(vy - self.value(x) - np.dot(g, y - x))

    def local_dual_norm(self, x, v):
        """||hessian(x)^-1 v|| in the declared primal norm."""
        u = self.hessian_solve(x, np.asarray(v, dtype=float))
        return primal_norm(u, self.norm)

    def hessian_matrix(self, x):
        x = np.asarray(x, dtype=float)
        d = x.size
        cols = [self.hessian_apply(x, e) for e in np.eye(d)]
        return np.column_stack(cols)

    def local_norm_context(self, x):
        self.check_interior(x)
        return LocalNormContext(x, self.hessian_matrix(x), norm=self.norm)

    def radial_terms(self):
        """(coefs, powers) arrays when phi(x) = sum_k c_k ||x||^p_k, else None."""
        return None

    def to_config(self):
        raise NotImplementedError


class Euclidean(LegendreFunction):
    """phi(x) = (1/2)||x||^2, the classical proximal geometry."""

    kind = "euclidean"
    strong_convexity_modulus = 1.0

    def value(self, x):
        x = np.asarray(x, dtype=float)
        return 0.5 * float(np.dot(x, x))

    def gradient(self, x):
        return np.array(x, dtype=float)

    def hessian_apply(self, x, v):
        return np.array(v, dtype=float)

    def hessian_solve(self, x, v):
        return np.array(v, dtype=float)

    def radial_terms(self):
        return np.array([0.5]), np.array([2.0])

    def to_config(self):
        return {"kind": "euclidean"}


class ShannonEntropy(LegendreFunction):
    """phi(x) = sum_i x_i log x_i on the nonnegative orthant (0 log 0 = 0).

    Restricted to the probability simplex the divergence is the KL
    divergence, which is 1-strongly convex in the l1 norm (Pinsker); the
    ``on_simplex`` flag declares that modulus.
    """

    kind = "shannon_entropy"
    domain = POSITIVE_ORTHANT

    def __init__(self, on_simplex=False):
        self.on_simplex = bool(on_simplex)
        if on_simplex:
            self.norm = "l1"
            self.strong_convexity_modulus = 1.0

    def value(self, x):
        x = np.asarray(x, dtype=float)
        if np.any(x < 0):
            return np.inf
        pos = x[x > 0]
        return float(np.sum(pos * np.log(pos)))

    def gradient(self, x):
        self.check_interior(x)
        return 1.0 + np.log(np.asarray(x, dtype=float))

    def hessian_apply(self, x, v):
        self.check_interior(x)
        return np.asarray(v, dtype=float) / np.asarray(x, dtype=float)

    def hessian_solve(self, x, v):
        self.check_interior(x)
        return np.asarray(v, dtype=float) * np.asarray(x, dtype=float)

    def to_config(self):
        return {"kind": "shannon_entropy", "on_simplex": self.on_simplex}


class Burg(LegendreFunction):
    """phi(x) = -sum_i log x_i on the open positive orthant."""

    kind = "burg"
    domain = OPEN_POSITIVE_ORTHANT

    def value(self, x):
        x = np.asarray(x, dtype=float)
        if np.any(x <= 0):
            return np.inf
        return -float(np.sum(np.log(x)))

    def gradient(self, x):
        self.check_interior(x)
        return -1.0 / np.asarray(x, dtype=float)

    def hessian_apply(self, x, v):
        self.check_interior(x)
        x = np.asarray(x, dtype=float)
        return np.asarray(v, dtype=float) / (x * x)

    def hessian_solve(self, x, v):
        self.check_interior(x)
        x = np.asarray(x, dtype=float)
        return np.asarray(v, dtype=float) * (x * x)

    def to_config(self):
        return {"kind": "burg"}


class RadialPowerSum(LegendreFunction):
    """phi(x) = sum_k c_k ||x||^p_k with c_k >= 0 and powers p_k >= 2.

    The gradient of each term c ||x||^p is c p ||x||^(p-2) x, defined as 0 at
    the origin for p > 2 (the analytic limit), and the Hessian has the
    scaled-identity-plus-rank-one form

        c p ||x||^(p-2) I + c p (p-2) ||x||^(p-4) x x^T.

    A power-2 term with coefficient c contributes 2c to the strong convexity
    modulus in the Euclidean norm.
    """

    def __init__(self, coefs, powers, kind="norm_power_sum", source_coeffs=None):
        coefs = np.asarray(coefs, dtype=float)
        powers = np.asarray(powers, dtype=float)
        if np.any(coefs < 0):
            raise ValueError("radial power coefficients must be nonnegative")
        if not np.any(coefs > 0):
            raise ValueError("at least one radial power coefficient must be positive")
        if np.any(powers < 2):
            raise ValueError("radial powers below 2 are not Legendre on all space")
        keep = coefs > 0
        self.coefs = coefs[keep]
        self.powers = powers[keep]
        self.kind = kind
        self.source_coeffs = None if source_coeffs is None else list(map(float, source_coeffs))
        quad = self.coefs[self.powers == 2.0]
        if quad.size:
            self.strong_convexity_modulus = 2.0 * float(np.sum(quad))

    def value(self, x):
        r = float(np.linalg.norm(x))
        return float(np.sum(self.coefs * r ** self.powers))

    def gradient(self, x):
        x = np.asarray(x, dtype=float)
        r = float(np.linalg.norm(x))
        if r == 0.0:
            return np.zeros_like(x)
        scale = float(np.sum(self.coefs * self.powers * r ** (self.powers - 2.0)))
        return scale * x

    def hessian_apply(self, x, v):
        x = np.asarray(x, dtype=float)
        v = np.asarray(v, dtype=float)
        r = float(np.linalg.norm(x))
        if r == 0.0:
            a = 2.0 * float(np.sum(self.coefs[self.powers == 2.0]))
            return a * v
        a = float(np.sum(self.coefs * self.powers * r ** (self.powers - 2.0)))
        b = float(np.sum(self.coefs * self.powers * (self.powers - 2.0)
                         * r ** (self.powers - 4.0)))
        return a * v + b * np.dot(x, v) * x

    def hessian_solve(self, x, v):
        x = np.asarray(x, dtype=float)
        v = np.asarray(v, dtype=float)
        r = float(np.linalg.norm(x))
        if r == 0.0:
            a = 2.0 * float(np.sum(self.coefs[self.powers == 2.0]))
            if a == 0.0:
                raise SingularHessianError(
                    "hessian of a pure high-order radial phi is singular at 0")
            return v / a
        a = float(np.sum(self.coefs * self.powers * r ** (self.powers - 2.0)))
        b = float(np.sum(self.coefs * self.powers * (self.powers - 2.0)
                         * r ** (self.powers - 4.0)))
        # Sherman-Morrison on a*I + b*x*x^T
        return v / a - (b * np.dot(x, v) / (a * (a + b * r * r))) * x

    def radial_terms(self):
        return self.coefs.copy(), self.powers.copy()

    def to_config(self):
        coeffs = self.source_coeffs
        if coeffs is None:
            coeffs = [float(c) for c in self.coefs]
        return {"kind": self.kind, "coeffs": coeffs}


class WeightedSum(LegendreFunction):
    """Weighted sum of Legendre functions sharing a common domain."""

    kind = "weighted_sum"

    def __init__(self, children, weights):
        if len(children) != len(weights) or not children:
            raise ValueError("need matching nonempty children and weights")
        weights = [float(w) for w in weights]
        if any(w <= 0 for w in weights):
            raise ValueError("weights must be positive")
        domains = {c.domain for c in children}
        if OPEN_POSITIVE_ORTHANT in domains:
            self.domain = OPEN_POSITIVE_ORTHANT
        elif POSITIVE_ORTHANT in domains:
            self.domain = POSITIVE_ORTHANT
        else:
            self.domain = ALL_SPACE
        self.children = list(children)
        self.weights = weights
        norms = {c.norm for c in children}
        if len(norms) == 1:
            self.norm = norms.pop()
            moduli = [c.strong_convexity_modulus for c in children]
            if any(m is not None for m in moduli):
                self.strong_convexity_modulus = float(
                    sum(w * (m or 0.0) for w, m in zip(weights, moduli)))

    def value(self, x):
        return float(sum(w * c.value(x) for w, c in zip(self.weights, self.children)))

    def gradient(self, x):
        self.check_interior(x)
        out = np.zeros(np.asarray(x, dtype=float).shape)
        for w, c in zip(self.weights, self.children):
            out += w * c.gradient(x)
        return out

    def hessian_apply(self, x, v):
        out = np.zeros(np.asarray(v, dtype=float).shape)
        for w, c in zip(self.weights, self.children):
            out += w * c.hessian_apply(x, v)
        return out

    def hessian_solve(self, x, v):
        terms = self.radial_terms()
        if terms is not None:
            coefs, powers = terms
            return RadialPowerSum(coefs, powers).hessian_solve(x, v)
        H = self.hessian_matrix(x)
        try:
            return np.linalg.solve(H, np.asarray(v, dtype=float))
        except np.linalg.LinAlgError as exc:
            raise SingularHessianError(str(exc)) from exc

    def radial_terms(self):
        coefs = []
        powers = []
        for w, c in zip(self.weights, self.children):
            t = c.radial_terms()
            if t is None:
                return None
            coefs.append(w * t[0])
            powers.append(t[1])
        return np.concatenate(coefs), np.concatenate(powers)

    def to_config(self):
        return {
            "kind": "weighted_sum",
            "weights": list(self.weights),
            "children": [c.to_config() for c in self.children],
        }


def build_poly_legendre(p_coeffs):
    """Legendre function adapted to the growth polynomial p(u) = sum_i a_i u^i.

    Returns phi(x) = sum_i a_i (3i+7)/(i+2) ||x||^(i+2), whose divergence
    dominates ((p(||x||)+p(||y||))/2) ||x-y||^2.  Coefficients must be
    nonnegative with at least one strictly positive.
    """
    p_coeffs = [float(a) for a in p_coeffs]
    if any(a < 0 for a in p_coeffs):
        raise ValueError("growth polynomial coefficients must be nonnegative")
    if not any(a > 0 for a in p_coeffs):
        raise ValueError("growth polynomial must have a positive coefficient")
    coefs = [a * (3 * i + 7) / (i + 2) for i, a in enumerate(p_coeffs)]
    powers = [i + 2 for i in range(len(p_coeffs))]
    return RadialPowerSum(coefs, powers, kind="poly_growth", source_coeffs=p_coeffs)


def build_norm_power_legendre(q_coeffs):
    """phi(x) = sum_i b_i/(i+2) ||x||^(i+2) for q(u) = sum_i b_i u^i."""
    q_coeffs = [float(b) for b in q_coeffs]
    if any(b < 0 for b in q_coeffs):
        raise ValueError("norm-power coefficients must be nonnegative")
    if not any(b > 0 for b in q_coeffs):
        raise ValueError("norm-power polynomial must have a positive coefficient")
    coefs = [b / (i + 2) for i, b in enumerate(q_coeffs)]
    powers = [i + 2 for i in range(len(q_coeffs))]
    return RadialPowerSum(coefs, powers, kind="norm_power_sum", source_coeffs=q_coeffs)


def build_composite_legendre(p_coeffs, q_coeffs):
    """Sum of the accuracy-adapted and Lipschitz-adapted radial functions.

    p_coeffs control the model-accuracy polynomial (the (3i+7)/(i+2)
    weights), q_coeffs the Jacobian-growth polynomial (b_i/(i+2) weights).
    Either list may be all zeros, but not both.
    """
    children = []
    if any(float(a) > 0 for a in p_coeffs):
        children.append(build_poly_legendre(p_coeffs))
    if any(float(b) > 0 for b in q_coeffs):
        children.append(build_norm_power_legendre(q_coeffs))
    if not children:
        raise ValueError("composite phi needs a positive coefficient on some side")
    return WeightedSum(children, [1.0] * len(children))


def legendre_from_config(cfg):
    """Rebuild a LegendreFunction from its JSON-style config."""
    kind = cfg["kind"]
    if kind == "euclidean":
        return Euclidean()
    if kind == "shannon_entropy":
        return ShannonEntropy(on_simplex=bool(cfg.get("on_simplex", False)))
    if kind == "burg":
        return Burg()
    if kind == "poly_growth":
        return build_poly_legendre([float(a) for a in cfg["coeffs"]])
    if kind == "norm_power_sum":
        return build_norm_power_legendre([float(b) for b in cfg["coeffs"]])
    if kind == "weighted_sum":
        children = [legendre_from_config(c) for c in cfg["children"]]
        return WeightedSum(children, [float(w) for w in cfg["weights"]])
    raise ValueError("unknown Legendre kind %r" % (kind,))


def finite_difference_step(x):
    """Central-difference step h = eps^(1/3) (1 + ||x||)."""
    return float(np.finfo(float).eps ** (1.0 / 3.0) * (1.0 + np.linalg.norm(x)))


def gradient_by_differences(fun, x, h=None):
    """Central finite differences of a scalar function, the validation oracle."""
    x = np.asarray(x, dtype=float)
    if h is None:
        h = finite_difference_step(x)
    g = np.zeros_like(x)
    for i in range(x.size):
        e = np.zeros_like(x)
        e[i] = h
        g[i] = (fun(x + e) - fun(x - e)) / (2.0 * h)
    return g
