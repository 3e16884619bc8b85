# calculus/rotgrp.py
"""One-parameter rotation subgroups g_theta = exp(theta X) and their second quantizations."""
import logging
from dataclasses import dataclass, field

import numpy as np
from scipy import linalg

from . import fock
from .exceptions import InvalidConfigError, SkewnessError
from .modespace import as_kernel, is_skew

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class FlowSpec:
    """Skew generator X, the theta grid, and the finite-difference step with its number of halvings"""
    X: tuple
    thetas: tuple = (-0.3, -0.1, 0.1, 0.3)
    steps: int = 3
    h: float = 0.1

    def __post_init__(self):
        if not self.thetas:
            raise InvalidConfigError("theta grid must not be empty")
        if self.steps < 1:
            raise InvalidConfigError(f"steps must be >= 1, got {self.steps}")
        if not self.h > 0:
            raise InvalidConfigError(f"finite-difference step must be positive, got {self.h}")
        _check_skew(self.generator)

    @classmethod
    def of(cls, X, thetas=(-0.3, -0.1, 0.1, 0.3), steps=3, h=0.1):
        X = as_kernel(X)
        return cls(tuple(map(tuple, X.tolist())), tuple(float(t) for t in thetas), steps, float(h))

    @property
    def generator(self):
        return as_kernel(np.array(self.X, dtype=complex))


def _check_skew(X, tolerance=1e-10):
    if not is_skew(X, tolerance):
        raise SkewnessError("rotation flows need a skew-symmetric generator")


def one_particle_flow(X, theta):
    """exp(theta X) for skew X; real orthogonal when X is real"""
    X = as_kernel(X)
    _check_skew(X)
    return linalg.expm(theta * X)


def flow_property_residual(X, theta1, theta2):
    composed = one_particle_flow(X, theta1) @ one_particle_flow(X, theta2)
    return fock.max_abs(one_particle_flow(X, theta1 + theta2) - composed)


def orthogonality_residual(X, theta):
    g = one_particle_flow(X, theta)
    return fock.max_abs(g.T @ g - np.eye(g.shape[0]))


def unitarity_residual(cfg, g):
    """max |Γ(g)* Γ(g) - I|; sector-exact for orthogonal g"""
    gamma = fock.second_quantization(cfg, g)
    return fock.max_abs(gamma.conj().T @ gamma - fock.identity(cfg))


@dataclass
class GeneratorResiduals:
    exact: float
    flow: float
    per_theta: dict = field(default_factory=dict)


def generator_identity_check(cfg, X, thetas=(-0.3, -0.1, 0.1, 0.3)):
    """
    exact: max |dΓ(X) - 2 Ξ_{1,1}(X/2)|.
    flow: max over thetas of |Γ(exp(theta X)) - exp(theta dΓ(X))|.
    """
    X = as_kernel(X, cfg.d)
    _check_skew(X)
    generator = fock.differential_second_quantization(cfg, X)
    exact = fock.max_abs(generator - fock.rotation_op(cfg, X / 2))
    per_theta = {}
    for theta in thetas:
        flow = fock.second_quantization(cfg, one_particle_flow(X, theta))
        per_theta[float(theta)] = fock.max_abs(flow - linalg.expm(theta * generator))
    logger.debug(f"generator identity: exact {exact:.3e}, flow {max(per_theta.values(), default=0.0):.3e}")
    return GeneratorResiduals(exact, max(per_theta.values(), default=0.0), per_theta)


@dataclass
class InvarianceResiduals:
    commutator: float
    conjugation: float
    literal: float

    @property
    def invariant(self):
        return max(self.commutator, self.conjugation)


def rotation_invariance_check(cfg, xi_matrix, X, theta, creator_degree=0):
    """
    commutator: |[Γ(g), Ξ]|; conjugation: |Γ(g)^{-1} Ξ Γ(g) - Ξ|;
    literal: |Γ(g) Ξ Γ(g) - Ξ|. All guarded at `creator_degree`.
    """
    X = as_kernel(X, cfg.d)
    _check_skew(X)
    gamma = fock.second_quantization(cfg, one_particle_flow(X, theta))
    inverse = fock.second_quantization(cfg, one_particle_flow(X, -theta))
    xi_matrix = np.asarray(xi_matrix, dtype=complex)
    commutator = fock.guarded_equal(cfg, gamma @ xi_matrix, xi_matrix @ gamma, creator_degree)
    conjugation = fock.guarded_equal(cfg, inverse @ xi_matrix @ gamma, xi_matrix, creator_degree)
    literal = fock.guarded_equal(cfg, gamma @ xi_matrix @ gamma, xi_matrix, creator_degree)
    return InvarianceResiduals(commutator, conjugation, literal)


def finite_difference_errors(cfg, X, h=0.1, steps=3):
    """
    |(Γ(g_h) - I)/h - dΓ(X)| for h, h/2, ...; first order, so each halving
    roughly halves the error.
    """
    X = as_kernel(X, cfg.d)
    _check_skew(X)
    generator = fock.differential_second_quantization(cfg, X)
    identity = fock.identity(cfg)
    errors = []
    for _ in range(steps + 1):
        flow = fock.second_quantization(cfg, one_particle_flow(X, h))
        errors.append(fock.max_abs((flow - identity) / h - generator))
        h /= 2
    return errors
