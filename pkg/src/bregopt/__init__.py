"""Stochastic model-based minimization under Bregman geometry.

A numpy library for minimizing F = f + r when f is only accessible through
sampled one-sided models whose accuracy and variation are controlled by a
Bregman divergence: Legendre geometry, model oracles, certified Bregman
proximal steps, the outer stochastic loops with their step-size schedules,
and Bregman-Moreau envelope stationarity diagnostics, plus a desk-scale
problem registry and CLI used to validate every claimed inequality and rate.
"""

from .legendre import (Burg, DomainError, Euclidean, LegendreFunction,
                       LocalNormContext, RadialPowerSum, ShannonEntropy,
                       SingularHessianError, WeightedSum,
                       build_composite_legendre, build_norm_power_legendre,
                       build_poly_legendre, legendre_from_config)
from .models import (CompositeData, LinearMirrorOracle, ModelOracle,
                     NoisyGradientOracle, OracleConstants, ProxLinearOracle,
                     ProximalPointOracle, SaddleData, SaddleOracle,
                     verify_lipschitz, verify_one_sided,
                     verify_relative_smoothness, verify_variance)
from .subproblem import (BallIndicator, CompositeObjective, EntropyLike,
                         InnerSolveError, L1Regularizer, PointModel,
                         ProxStepResult, QuadraticRegularizer, Regularizer,
                         SimplexIndicator, ZeroRegularizer,
                         absolute_affine_model, check_three_point,
                         inner_solve, linear_model, prox_step,
                         prox_step_radial, solve_monotone_power)
from .driver import (RunTrace, SolverConfig, default_lambda, fit_loglog,
                     format_csv_rows, parse_csv_rows, run_convex,
                     run_for_regime, run_mirror_descent_smooth,
                     run_model_based, sample_tstar, stepsize_constant, sweep)
from .envelope import (EnvelopeReport, bregman_prox_point, envelope_gradient,
                       envelope_value, stationarity)
from .problems import (OracleResult, ProblemInstance, brute_force_min,
                       default_configs, dump_config, get_problem,
                       instance_from_config, load_config, registry)

__version__ = "0.1.0"
