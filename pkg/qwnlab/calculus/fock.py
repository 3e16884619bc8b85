# calculus/fock.py
"""
Truncated bosonic Fock space over d modes with total occupation <= M.

Every operator is a dense complex matrix over the occupation-number basis,
enumerated sector by sector (graded) and lexicographically descending inside
a sector. Creators annihilate the top sector, so identities are compared on
the guard band of source sectors |beta| <= M - creator degree.
"""
import itertools
import logging
import math
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .exceptions import (
    DimensionMismatchError,
    InvalidConfigError,
    ModeIndexError,
    NonSymmetricTensorError,
    PreconditionError,
    SkewnessError,
    UnsupportedSignatureError,
)
from .modespace import (
    ModeConfig,
    as_kernel,
    as_tensor,
    as_vector,
    block_symmetrize,
    content,
    identity_kernel,
    is_skew,
    multisets,
    symmetrize,
    symmetry_deviation,
)

logger = logging.getLogger(__name__)

FockVector = np.ndarray
FockMatrix = np.ndarray


@dataclass(frozen=True)
class FockConfig:
    """Truncation of the Fock space and the guard band used for comparisons"""
    mode: ModeConfig = field(default_factory=ModeConfig)
    M: int = 6
    guard: int = 4
    m_max: int = 4

    def __post_init__(self):
        if self.M < 1:
            raise InvalidConfigError(f"M must be >= 1, got {self.M}")
        if self.guard < 0 or self.M < self.guard:
            raise InvalidConfigError(f"guard must satisfy 0 <= guard <= M, got guard={self.guard}, M={self.M}")
        if self.m_max < 1:
            raise InvalidConfigError(f"m_max must be >= 1, got {self.m_max}")

    @property
    def d(self):
        return self.mode.d

    @property
    def tolerance(self):
        return self.mode.tolerance

    @property
    def dimension(self):
        return len(_basis(self.d, self.M))


def supported_signature(l, m, m_max=4):
    """Ξ_{l,m} is realized when (l, m) != (0, 0) and both orders are <= m_max"""
    return l >= 0 and m >= 0 and (l, m) != (0, 0) and l <= m_max and m <= m_max


def check_signature(l, m, m_max=4, pair=None):
    if not supported_signature(l, m, m_max):
        raise UnsupportedSignatureError((l, m), pair=pair)


@lru_cache(maxsize=None)
def _basis(d, M):
    indices = []
    for n in range(M + 1):
        for modes in itertools.combinations_with_replacement(range(d), n):
            indices.append(content(modes, d))
    return tuple(indices)


@lru_cache(maxsize=None)
def _positions(d, M):
    return {alpha: position for position, alpha in enumerate(_basis(d, M))}


@lru_cache(maxsize=None)
def _sectors(d, M):
    return np.array([sum(alpha) for alpha in _basis(d, M)], dtype=int)


def _factorial(alpha):
    return math.prod(math.factorial(n) for n in alpha)


def _falling(alpha, nu):
    """prod_i alpha_i! / (alpha_i - nu_i)!"""
    return math.prod(math.perm(a, n) for a, n in zip(alpha, nu))


def enumerate_basis(cfg):
    """Deterministic graded-lexicographic occupation basis"""
    return list(_basis(cfg.d, cfg.M))


def basis_position(cfg, alpha):
    return _positions(cfg.d, cfg.M)[tuple(alpha)]


def sector_sizes(cfg):
    return [math.comb(n + cfg.d - 1, cfg.d - 1) for n in range(cfg.M + 1)]


def sector_of(cfg):
    """Total occupation |alpha| of every basis position"""
    return _sectors(cfg.d, cfg.M)


def identity(cfg):
    return np.eye(cfg.dimension, dtype=complex)


def commutator(a, b):
    return a @ b - b @ a


def mode_annihilator(cfg, i):
    """a_i e_alpha = sqrt(alpha_i) e_{alpha - delta_i}"""
    if not 0 <= i < cfg.d:
        raise ModeIndexError(f"mode index {i} outside 0..{cfg.d - 1}")
    basis = _basis(cfg.d, cfg.M)
    positions = _positions(cfg.d, cfg.M)
    matrix = np.zeros((len(basis), len(basis)), dtype=complex)
    for column, alpha in enumerate(basis):
        if alpha[i] == 0:
            continue
        target = list(alpha)
        target[i] -= 1
        matrix[positions[tuple(target)], column] = math.sqrt(alpha[i])
    return matrix


def mode_creator(cfg, i):
    """Hermitian adjoint of the annihilator; zero on the top sector"""
    return mode_annihilator(cfg, i).conj().T


def annihilation_op(cfg, f):
    """a(f) = sum_i f_i a_i, coefficients unconjugated"""
    f = as_vector(f, cfg.d)
    matrix = np.zeros((cfg.dimension, cfg.dimension), dtype=complex)
    for i, coefficient in enumerate(f):
        if coefficient != 0:
            matrix += coefficient * mode_annihilator(cfg, i)
    return matrix


def creation_op(cfg, f):
    """a*(f) = sum_i f_i a_i^dagger"""
    f = as_vector(f, cfg.d)
    matrix = np.zeros((cfg.dimension, cfg.dimension), dtype=complex)
    for i, coefficient in enumerate(f):
        if coefficient != 0:
            matrix += coefficient * mode_creator(cfg, i)
    return matrix


def build_xi(cfg, l, m, kernel):
    """
    Realize Ξ_{l,m}(kappa) = sum kappa[u, v] a*_{u1}..a*_{ul} a_{v1}..a_{vm}.

    The kernel is block-symmetrized first, so the sum runs over multisets of
    creator and annihilator modes with their ordered-tuple multiplicities.
    """
    check_signature(l, m, cfg.m_max)
    kappa = block_symmetrize(as_tensor(kernel, cfg.d, l + m), l)
    basis = _basis(cfg.d, cfg.M)
    positions = _positions(cfg.d, cfg.M)
    creators = list(multisets(cfg.d, l))
    annihilators = list(multisets(cfg.d, m))
    matrix = np.zeros((len(basis), len(basis)), dtype=complex)
    for column, beta in enumerate(basis):
        for nu, v_index, v_count in annihilators:
            if any(b < n for b, n in zip(beta, nu)):
                continue
            gamma = tuple(b - n for b, n in zip(beta, nu))
            lowered = math.sqrt(_falling(beta, nu))
            for mu, u_index, u_count in creators:
                alpha = tuple(g + n for g, n in zip(gamma, mu))
                if sum(alpha) > cfg.M:
                    continue
                coefficient = kappa[u_index + v_index]
                if coefficient == 0:
                    continue
                raised = math.sqrt(_falling(alpha, mu))
                matrix[positions[alpha], column] += u_count * v_count * coefficient * lowered * raised
    return matrix


def conservation_op(cfg, operator):
    """Λ(S) = Ξ_{1,1}(tau_S)"""
    return build_xi(cfg, 1, 1, as_kernel(operator, cfg.d))


def generalized_gross(cfg, operator):
    """Δ_G(S) = Ξ_{0,2}(tau_S); only the symmetric part of S survives"""
    return build_xi(cfg, 0, 2, as_kernel(operator, cfg.d))


def rotation_op(cfg, kappa):
    """R_kappa = 2 Ξ_{1,1}(kappa) for a skew kernel"""
    kappa = as_kernel(kappa, cfg.d)
    if not is_skew(kappa, cfg.tolerance):
        raise SkewnessError("rotation operator needs a skew-symmetric kernel")
    return 2 * build_xi(cfg, 1, 1, kappa)


def number_operator(cfg):
    return conservation_op(cfg, identity_kernel(cfg.d))


def gross_laplacian(cfg):
    return generalized_gross(cfg, identity_kernel(cfg.d))


def euler_operator(cfg):
    """Δ_G + N"""
    return gross_laplacian(cfg) + number_operator(cfg)


def _polynomial_times_linear(polynomial, column):
    product = {}
    for monomial, coefficient in polynomial.items():
        for mode, weight in enumerate(column):
            if weight == 0:
                continue
            raised = list(monomial)
            raised[mode] += 1
            raised = tuple(raised)
            product[raised] = product.get(raised, 0) + coefficient * weight
    return product


def _from_polynomials(cfg, columns):
    """
    Assemble a sector-preserving matrix from creator polynomials.

    columns[beta] maps each occupation alpha to the coefficient c_alpha of
    prod a*^alpha |0>; the matrix entry is c_alpha sqrt(alpha!) / sqrt(beta!).
    """
    basis = _basis(cfg.d, cfg.M)
    positions = _positions(cfg.d, cfg.M)
    matrix = np.zeros((len(basis), len(basis)), dtype=complex)
    for column, beta in enumerate(basis):
        norm = math.sqrt(_factorial(beta))
        for alpha, coefficient in columns[column].items():
            matrix[positions[alpha], column] = coefficient * math.sqrt(_factorial(alpha)) / norm
    return matrix


def second_quantization(cfg, operator):
    """Γ(T): acts on the n-particle sector as T^{(x) n}"""
    operator = as_kernel(operator, cfg.d)
    columns = []
    for beta in _basis(cfg.d, cfg.M):
        polynomial = {(0,) * cfg.d: 1.0 + 0j}
        for mode, power in enumerate(beta):
            for _ in range(power):
                polynomial = _polynomial_times_linear(polynomial, operator[:, mode])
        columns.append(polynomial)
    return _from_polynomials(cfg, columns)


def differential_second_quantization(cfg, operator):
    """dΓ(T): sum over tensor slots of T acting in that slot; zero on the vacuum"""
    operator = as_kernel(operator, cfg.d)
    columns = []
    for beta in _basis(cfg.d, cfg.M):
        polynomial = {}
        for mode, power in enumerate(beta):
            if power == 0:
                continue
            lowered = list(beta)
            lowered[mode] -= 1
            term = _polynomial_times_linear({tuple(lowered): complex(power)}, operator[:, mode])
            for alpha, coefficient in term.items():
                polynomial[alpha] = polynomial.get(alpha, 0) + coefficient
        columns.append(polynomial)
    return _from_polynomials(cfg, columns)


def exponential_vector(cfg, xi):
    """φ_xi with coefficient prod_i xi_i^alpha_i / sqrt(alpha!)"""
    xi = as_vector(xi, cfg.d)
    vector = np.zeros(cfg.dimension, dtype=complex)
    for position, alpha in enumerate(_basis(cfg.d, cfg.M)):
        amplitude = math.prod(complex(x) ** a for x, a in zip(xi, alpha))
        vector[position] = amplitude / math.sqrt(_factorial(alpha))
    return vector


def exponential_norm_partial(norm_squared, M):
    """sum_{n <= M} r^n / n!, the truncated squared norm of an exponential vector"""
    return sum(norm_squared ** n / math.factorial(n) for n in range(M + 1))


def vacuum(cfg):
    vector = np.zeros(cfg.dimension, dtype=complex)
    vector[0] = 1.0
    return vector


def zero_coefficients(cfg):
    return [np.zeros((cfg.d,) * n, dtype=complex) for n in range(cfg.M + 1)]


def coeffs_to_fock(cfg, sequence, tolerance=None):
    """
    Map Wiener-Ito coefficients (f_0, ..., f_M) to occupation coordinates.

    c_alpha = sqrt(alpha!) * (n! / alpha!) * f_n[t(alpha)], so that the Fock
    norm equals sum_n n! |f_n|^2.
    """
    tolerance = cfg.tolerance if tolerance is None else tolerance
    if len(sequence) > cfg.M + 1:
        raise DimensionMismatchError(
            f"coefficient sequence has {len(sequence)} sectors, truncation keeps {cfg.M + 1}",
            expected=cfg.M + 1,
            got=len(sequence),
        )
    tensors = []
    for n, tensor in enumerate(sequence):
        tensor = as_tensor(tensor, cfg.d, n)
        deviation = symmetry_deviation(tensor)
        if deviation > tolerance:
            raise NonSymmetricTensorError(n, deviation)
        tensors.append(tensor)
    vector = np.zeros(cfg.dimension, dtype=complex)
    for position, alpha in enumerate(_basis(cfg.d, cfg.M)):
        n = sum(alpha)
        if n >= len(tensors):
            continue
        representative = tuple(mode for mode, count in enumerate(alpha) for _ in range(count))
        weight = math.factorial(n) / math.sqrt(_factorial(alpha))
        vector[position] = weight * tensors[n][representative]
    return vector


def fock_to_coeffs(cfg, vector):
    """Inverse of coeffs_to_fock: symmetric tensors f_n for n = 0..M"""
    vector = np.asarray(vector, dtype=complex)
    if vector.shape != (cfg.dimension,):
        raise DimensionMismatchError("Fock vector has the wrong length", expected=cfg.dimension, got=vector.shape)
    positions = _positions(cfg.d, cfg.M)
    sequence = zero_coefficients(cfg)
    for n in range(cfg.M + 1):
        tensor = sequence[n]
        for index in np.ndindex(*tensor.shape):
            alpha = content(index, cfg.d)
            tensor[index] = vector[positions[alpha]] * math.sqrt(_factorial(alpha)) / math.factorial(n)
    return sequence


def apply_contraction(cfg, l, m, kernel, sequence):
    """
    Act with Ξ_{l,m}(kappa) on Wiener-Ito coefficients.

    g_{l+n} = symmetrize((n+m)!/n! * kappa (x)_m f_{n+m}); sectors that would
    leave the truncation are dropped.
    """
    check_signature(l, m, cfg.m_max)
    kappa = block_symmetrize(as_tensor(kernel, cfg.d, l + m), l)
    if len(sequence) > cfg.M + 1:
        raise DimensionMismatchError("coefficient sequence longer than the truncation", expected=cfg.M + 1, got=len(sequence))
    padded = list(sequence) + [np.zeros((cfg.d,) * n, dtype=complex) for n in range(len(sequence), cfg.M + 1)]
    output = zero_coefficients(cfg)
    for n in range(cfg.M + 1):
        source = n + m
        if source > cfg.M or l + n > cfg.M:
            continue
        f = np.asarray(padded[source], dtype=complex)
        if m == 0:
            contracted = np.multiply.outer(kappa, f)
        else:
            contracted = np.tensordot(kappa, f, axes=(list(range(l, l + m)), list(range(m))))
        factor = math.factorial(n + m) / math.factorial(n)
        output[l + n] = output[l + n] + symmetrize(factor * contracted)
    return output


def guarded_equal(cfg, a, b, creator_degree):
    """
    Max |(A - B)[alpha, beta]| over source sectors |beta| <= M - creator_degree.
    """
    if creator_degree > cfg.guard:
        raise PreconditionError('creator_degree <= guard', creator_degree=creator_degree, guard=cfg.guard)
    columns = sector_of(cfg) <= cfg.M - creator_degree
    if not np.any(columns):
        return 0.0
    difference = np.asarray(a)[:, columns] - np.asarray(b)[:, columns]
    return float(np.max(np.abs(difference), initial=0.0))


def sector_shifts(cfg, matrix, tolerance=1e-13):
    """Set of |alpha| - |beta| over the nonzero entries of a Fock matrix"""
    sectors = sector_of(cfg)
    rows, columns = np.nonzero(np.abs(matrix) > tolerance)
    return {int(sectors[row] - sectors[column]) for row, column in zip(rows, columns)}


def max_abs(matrix):
    return float(np.max(np.abs(matrix), initial=0.0))
