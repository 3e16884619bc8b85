# calculus/wick.py
"""
Exact symbolic algebra of normal-ordered white noise operators.

A SymbolicOperator is scalar * Id plus one block-symmetrized kernel per
signature (l, m). Products are normal ordered by Wick contraction through the
bilinear pairing; brackets are differences of products taken before any
signature check, so cancelling intermediate terms never trip the guard.
"""
import logging
import math
from collections import defaultdict

import numpy as np

from . import fock
from .exceptions import DimensionMismatchError, SkewnessError, UnsupportedSignatureError
from .fock import supported_signature
from .modespace import (
    as_kernel,
    as_tensor,
    as_vector,
    block_symmetrize,
    identity_kernel,
    is_skew,
)

logger = logging.getLogger(__name__)

DEFAULT_M_MAX = 4

# Kernels whose entries all fall below this are pruned from canonical forms.
PRUNE_TOLERANCE = 1e-12


class SymbolicOperator:
    """
    scalar * Id + sum over signatures of Ξ_{l,m}(kernel).

    `terms` holds canonical (block-symmetrized) kernels and defines equality.
    `declared` remembers the kernels an operator was written with before
    symmetrization; only the formal coordinatizer reads it.
    """

    __slots__ = ('d', 'scalar', 'terms', 'declared', 'm_max')

    def __init__(self, d, scalar=0.0, terms=None, declared=None, m_max=DEFAULT_M_MAX):
        self.d = int(d)
        self.scalar = complex(scalar)
        self.m_max = m_max
        canonical = {}
        for (l, m), kernel in (terms or {}).items():
            if not supported_signature(l, m, m_max):
                raise UnsupportedSignatureError((l, m))
            kernel = block_symmetrize(as_tensor(kernel, self.d, l + m), l)
            if np.max(np.abs(kernel), initial=0.0) > PRUNE_TOLERANCE:
                canonical[(l, m)] = kernel
        self.terms = dict(sorted(canonical.items()))
        self.declared = {sig: np.array(kernel, dtype=complex) for sig, kernel in (declared or {}).items()}

    def __repr__(self):
        parts = []
        if self.scalar != 0:
            parts.append(f"{self.scalar:.4g}·Id")
        parts.extend(f"Ξ{sig}" for sig in self.terms)
        return f"SymbolicOperator(d={self.d}, {' + '.join(parts) or '0'})"

    @property
    def signatures(self):
        return tuple(self.terms)

    @property
    def is_zero(self):
        return abs(self.scalar) <= PRUNE_TOLERANCE and not self.terms

    @property
    def creator_degree(self):
        """Largest creator order among the terms (0 for scalars)"""
        return max((l for l, _ in self.terms), default=0)

    def kernel(self, signature):
        """Canonical kernel for a signature (zeros when absent)"""
        l, m = signature
        if signature in self.terms:
            return self.terms[signature]
        return np.zeros((self.d,) * (l + m), dtype=complex)

    def declared_kernel(self, signature):
        if signature in self.declared:
            return self.declared[signature]
        return self.kernel(signature)

    def distance(self, other):
        """Max absolute deviation between canonical forms"""
        _check_same_modes(self, other)
        worst = abs(self.scalar - other.scalar)
        for signature in set(self.terms) | set(other.terms):
            worst = max(worst, float(np.max(np.abs(self.kernel(signature) - other.kernel(signature)))))
        return float(worst)

    def equals(self, other, tolerance=1e-10):
        return self.distance(other) <= tolerance

    def __add__(self, other):
        return add(self, other)

    def __sub__(self, other):
        return add(self, scale(other, -1))

    def __neg__(self):
        return scale(self, -1)

    def __mul__(self, factor):
        return scale(self, factor)

    __rmul__ = __mul__


def _check_same_modes(a, b):
    if a.d != b.d:
        raise DimensionMismatchError("operators live over different mode counts", expected=a.d, got=b.d)


def make(signature, kernel, d=None, m_max=DEFAULT_M_MAX):
    """Single-term operator Ξ_{l,m}(kernel)"""
    l, m = signature
    if not supported_signature(l, m, m_max):
        raise UnsupportedSignatureError((l, m))
    kernel = np.asarray(kernel, dtype=complex)
    if d is None:
        d = kernel.shape[0] if kernel.ndim else 1
    kernel = as_tensor(kernel, d, l + m)
    return SymbolicOperator(d, 0.0, {(l, m): kernel}, declared={(l, m): kernel}, m_max=m_max)


def identity(d, scalar=1.0, m_max=DEFAULT_M_MAX):
    return SymbolicOperator(d, scalar, m_max=m_max)


def zero(d, m_max=DEFAULT_M_MAX):
    return SymbolicOperator(d, 0.0, m_max=m_max)


def scale(a, factor):
    factor = complex(factor)
    return SymbolicOperator(
        a.d,
        factor * a.scalar,
        {sig: factor * kernel for sig, kernel in a.terms.items()},
        declared={sig: factor * kernel for sig, kernel in a.declared.items()},
        m_max=a.m_max,
    )


def add(a, b):
    _check_same_modes(a, b)
    terms = dict(a.terms)
    for sig, kernel in b.terms.items():
        terms[sig] = terms[sig] + kernel if sig in terms else kernel
    declared = {}
    for sig in set(a.declared) | set(b.declared):
        declared[sig] = a.declared_kernel(sig) + b.declared_kernel(sig)
    return SymbolicOperator(a.d, a.scalar + b.scalar, terms, declared=declared, m_max=max(a.m_max, b.m_max))


def linear_combination(coefficients, operators):
    if not operators:
        raise ValueError("linear combination of an empty operator list")
    total = zero(operators[0].d, operators[0].m_max)
    for coefficient, operator in zip(coefficients, operators):
        if coefficient != 0:
            total = add(total, scale(operator, coefficient))
    return total


# Named operators

def annihilator(f):
    """a(f) = Ξ_{0,1}(f)"""
    f = as_vector(f)
    return make((0, 1), f, d=f.shape[0])


def creator(f):
    """a*(f) = Ξ_{1,0}(f)"""
    f = as_vector(f)
    return make((1, 0), f, d=f.shape[0])


def conservation(operator):
    """Λ(S) = Ξ_{1,1}(tau_S)"""
    operator = as_kernel(operator)
    return make((1, 1), operator, d=operator.shape[0])


def generalized_gross(operator):
    """Δ_G(S) = Ξ_{0,2}(tau_S)"""
    operator = as_kernel(operator)
    return make((0, 2), operator, d=operator.shape[0])


def number(d):
    return conservation(identity_kernel(d))


def gross_laplacian(d):
    return generalized_gross(identity_kernel(d))


def euler(d):
    """Δ_G + N"""
    return add(gross_laplacian(d), number(d))


def rotation(kappa):
    """R_kappa = 2 Ξ_{1,1}(kappa) for skew kappa"""
    kappa = as_kernel(kappa)
    if not is_skew(kappa):
        raise SkewnessError("rotation operator needs a skew-symmetric kernel")
    return scale(conservation(kappa), 2)


def pure_annihilation(kernel, m_max=DEFAULT_M_MAX):
    """Ξ_{0,m}(kappa) with m the order of the kernel"""
    kernel = np.asarray(kernel, dtype=complex)
    return make((0, kernel.ndim), kernel, d=kernel.shape[0], m_max=m_max)


# Products

def _contract(kernel_a, la, ma, kernel_b, lb, mb, j):
    """
    Contract the first j annihilator slots of A with the first j creator
    slots of B and reorder to [creators of A, creators of B, annihilators of
    A, annihilators of B].
    """
    if j == 0:
        product = np.multiply.outer(kernel_a, kernel_b)
    else:
        product = np.tensordot(kernel_a, kernel_b, axes=(list(range(la, la + j)), list(range(j))))
    rest_a = ma - j
    rest_b = lb - j
    creators_a = list(range(la))
    annihilators_a = list(range(la, la + rest_a))
    creators_b = list(range(la + rest_a, la + rest_a + rest_b))
    annihilators_b = list(range(la + rest_a + rest_b, la + rest_a + rest_b + mb))
    return np.transpose(product, creators_a + creators_b + annihilators_a + annihilators_b)


def _raw_product(a, b):
    """Normal-ordered product as (scalar, {signature: unsymmetrized kernel})"""
    _check_same_modes(a, b)
    scalar = a.scalar * b.scalar
    raw = defaultdict(lambda: 0)
    for sig, kernel in b.terms.items():
        raw[sig] = raw[sig] + a.scalar * kernel
    for sig, kernel in a.terms.items():
        raw[sig] = raw[sig] + b.scalar * kernel
    for (la, ma), kernel_a in a.terms.items():
        for (lb, mb), kernel_b in b.terms.items():
            for j in range(min(ma, lb) + 1):
                weight = math.factorial(j) * math.comb(ma, j) * math.comb(lb, j)
                contracted = weight * _contract(kernel_a, la, ma, kernel_b, lb, mb, j)
                signature = (la + lb - j, ma + mb - j)
                if signature == (0, 0):
                    scalar += complex(contracted)
                else:
                    raw[signature] = raw[signature] + contracted
    return scalar, dict(raw)


def _finalize(d, scalar, raw, m_max, pair):
    terms = {}
    for signature, kernel in raw.items():
        l, _ = signature
        kernel = block_symmetrize(kernel, l)
        if np.max(np.abs(kernel), initial=0.0) <= PRUNE_TOLERANCE:
            continue
        if not supported_signature(*signature, m_max):
            raise UnsupportedSignatureError(signature, pair=pair)
        terms[signature] = kernel
    return SymbolicOperator(d, scalar, terms, m_max=m_max)


def wick_product(a, b):
    """
    Normal-ordered product AB.

    For each term pair and each contraction count j the coefficient is
    j! C(m_A, j) C(l_B, j); full contractions land in the scalar slot.
    """
    scalar, raw = _raw_product(a, b)
    return _finalize(a.d, scalar, raw, max(a.m_max, b.m_max), (a.signatures, b.signatures))


def bracket(a, b):
    """[A, B] = AB - BA in canonical form"""
    scalar_ab, raw_ab = _raw_product(a, b)
    scalar_ba, raw_ba = _raw_product(b, a)
    raw = dict(raw_ab)
    for sig, kernel in raw_ba.items():
        raw[sig] = raw[sig] - kernel if sig in raw else -kernel
    return _finalize(a.d, scalar_ab - scalar_ba, raw, max(a.m_max, b.m_max), (a.signatures, b.signatures))


def adjoint(a):
    """Ξ_{l,m}(kappa) -> Ξ_{m,l}(kappa^dagger); the scalar is conjugated"""

    def flip(signature, kernel):
        l, m = signature
        return (m, l), np.conj(np.transpose(kernel, list(range(l, l + m)) + list(range(l))))

    terms = dict(flip(sig, kernel) for sig, kernel in a.terms.items())
    declared = dict(flip(sig, kernel) for sig, kernel in a.declared.items())
    return SymbolicOperator(a.d, np.conj(a.scalar), terms, declared=declared, m_max=a.m_max)


def to_fock(cfg, a):
    """Realization morphism: scalar * Id + sum of build_xi over the terms"""
    if cfg.d != a.d:
        raise DimensionMismatchError("operator and Fock space have different mode counts", expected=cfg.d, got=a.d)
    matrix = a.scalar * fock.identity(cfg)
    for (l, m), kernel in a.terms.items():
        matrix = matrix + fock.build_xi(cfg, l, m, kernel)
    return matrix
