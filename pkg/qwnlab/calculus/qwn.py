# calculus/qwn.py
"""Quantum white noise derivatives, symbolic and on Fock matrices."""
import logging
from dataclasses import dataclass

from . import fock, wick
from .exceptions import InvalidConfigError
from .modespace import as_vector

logger = logging.getLogger(__name__)

PLUS = 'plus'
MINUS = 'minus'

DEFAULT_DERIVATIVE_CAP = 6


@dataclass(frozen=True)
class DerivativeSpec:
    """D^{k±}_zeta: sign, order k and direction zeta"""
    sign: str
    k: int
    zeta: tuple
    cap: int = DEFAULT_DERIVATIVE_CAP

    def __post_init__(self):
        if self.sign not in (PLUS, MINUS):
            raise InvalidConfigError(f"sign must be '{PLUS}' or '{MINUS}', got {self.sign!r}")
        if not 0 <= self.k <= self.cap:
            raise InvalidConfigError(f"derivative order {self.k} outside 0..{self.cap}")

    @classmethod
    def of(cls, sign, k, zeta, cap=DEFAULT_DERIVATIVE_CAP):
        return cls(sign, k, tuple(complex(z) for z in as_vector(zeta)), cap)


def d_plus(zeta, xi):
    """Creation derivative D+_zeta Ξ = [a(zeta), Ξ]"""
    return wick.bracket(wick.annihilator(zeta), xi)


def d_minus(zeta, xi):
    """Annihilation derivative D-_zeta Ξ = -[a*(zeta), Ξ]"""
    return wick.scale(wick.bracket(wick.creator(zeta), xi), -1)


def iterated(spec, xi):
    """
    D^{0±} = D±; for k >= 1, D^{k+} Ξ = [D^{(k-1)+} Ξ, Ξ] and
    D^{k-} Ξ = -[D^{(k-1)-} Ξ, Ξ]. The recursion brackets against Ξ itself.
    """
    zeta = list(spec.zeta)
    if spec.sign == PLUS:
        current = d_plus(zeta, xi)
        for _ in range(spec.k):
            current = wick.bracket(current, xi)
    else:
        current = d_minus(zeta, xi)
        for _ in range(spec.k):
            current = wick.scale(wick.bracket(current, xi), -1)
    logger.debug(f"D^{spec.k}{'+' if spec.sign == PLUS else '-'} computed with signatures {current.signatures}")
    return current


def fock_d_plus(cfg, zeta, matrix):
    return fock.commutator(fock.annihilation_op(cfg, zeta), matrix)


def fock_d_minus(cfg, zeta, matrix):
    return -fock.commutator(fock.creation_op(cfg, zeta), matrix)


def fock_iterated(cfg, spec, matrix):
    """Matrix mirror of `iterated`; valid on the guard band only"""
    zeta = list(spec.zeta)
    if spec.sign == PLUS:
        current = fock_d_plus(cfg, zeta, matrix)
        for _ in range(spec.k):
            current = fock.commutator(current, matrix)
    else:
        current = fock_d_minus(cfg, zeta, matrix)
        for _ in range(spec.k):
            current = -fock.commutator(current, matrix)
    return current
