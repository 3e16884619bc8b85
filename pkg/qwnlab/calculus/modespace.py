# calculus/modespace.py
"""
Finite d-mode model of the one-particle space.

The truncation fixes a real orthonormal basis, so the canonical bilinear
pairing is the unconjugated dot product and a kernel in E (x) E* is the same
matrix as the operator it defines through the kernel theorem.
"""
import itertools
import logging
import math
from dataclasses import dataclass

import numpy as np
from scipy import linalg

from .exceptions import DimensionMismatchError, InvalidConfigError

logger = logging.getLogger(__name__)

# Plain numpy arrays carry every mode-space value.
ModeVector = np.ndarray      # shape (d,)
KernelMatrix = np.ndarray    # shape (d, d)
KernelTensor = np.ndarray    # shape (d,) * order


@dataclass(frozen=True)
class ModeConfig:
    """Mode count, numerical equality threshold and orbit length cap"""
    d: int = 2
    tolerance: float = 1e-10
    orbit_cap: int = 8

    def __post_init__(self):
        if self.d < 1:
            raise InvalidConfigError(f"mode count d must be >= 1, got {self.d}")
        if self.tolerance < 0:
            raise InvalidConfigError(f"tolerance must be >= 0, got {self.tolerance}")
        if self.orbit_cap < 1:
            raise InvalidConfigError(f"orbit_cap must be >= 1, got {self.orbit_cap}")


def as_vector(values, d=None):
    """Coerce to a complex mode vector, checking the length when d is given"""
    vector = np.asarray(values, dtype=complex)
    if vector.ndim != 1:
        raise DimensionMismatchError(f"mode vector must be one-dimensional, got shape {vector.shape}")
    if d is not None and vector.shape[0] != d:
        raise DimensionMismatchError(f"mode vector must have length {d}", expected=d, got=vector.shape[0])
    return vector


def as_kernel(values, d=None):
    """Coerce to a complex square kernel matrix"""
    kernel = np.asarray(values, dtype=complex)
    if kernel.ndim != 2 or kernel.shape[0] != kernel.shape[1]:
        raise DimensionMismatchError(f"kernel must be a square matrix, got shape {kernel.shape}")
    if d is not None and kernel.shape[0] != d:
        raise DimensionMismatchError(f"kernel must be {d}x{d}", expected=d, got=kernel.shape[0])
    return kernel


def as_tensor(values, d, order):
    """Coerce to a complex tensor of the given order over d modes"""
    tensor = np.asarray(values, dtype=complex)
    expected = (d,) * order
    if tensor.shape != expected:
        raise DimensionMismatchError(
            f"kernel of order {order} over {d} modes must have shape {expected}, got {tensor.shape}",
            expected=expected,
            got=tensor.shape,
        )
    return tensor


def identity_kernel(d):
    """The kernel tau of the identity operator"""
    return np.eye(d, dtype=complex)


def bilinear_pair(xi, eta):
    """Canonical bilinear form <xi, eta> = sum_i xi_i eta_i (no conjugation)"""
    xi = as_vector(xi)
    eta = as_vector(eta)
    if xi.shape != eta.shape:
        raise DimensionMismatchError("pairing needs vectors of equal length", expected=xi.shape, got=eta.shape)
    return complex(np.dot(xi, eta))


def convolve(f2, f1):
    """Kernel convolution (f2 * f1)(s, t) = sum_u f2(s, u) f1(u, t)"""
    f2 = as_kernel(f2)
    f1 = as_kernel(f1, f2.shape[0])
    return f2 @ f1


def transpose(kernel):
    """kappa*(s, t) = kappa(t, s)"""
    return as_kernel(kernel).T.copy()


def conjugate(kernel):
    return np.conj(as_kernel(kernel))


def is_skew(kernel, tolerance=1e-10):
    kernel = as_kernel(kernel)
    return float(np.max(np.abs(kernel + kernel.T), initial=0.0)) <= tolerance


def is_symmetric(kernel, tolerance=1e-10):
    kernel = as_kernel(kernel)
    return float(np.max(np.abs(kernel - kernel.T), initial=0.0)) <= tolerance


def power_parity(operator, k, tolerance=1e-10):
    """
    Classify S^k as 'symmetric', 'skew', 'zero' or 'neither'.

    For skew S the power is skew when k is odd and symmetric when k is even.
    """
    power = np.linalg.matrix_power(as_kernel(operator), k)
    symmetric = is_symmetric(power, tolerance)
    skew = is_skew(power, tolerance)
    if symmetric and skew:
        return 'zero'
    if symmetric:
        return 'symmetric'
    if skew:
        return 'skew'
    return 'neither'


def orbit(operator, zeta, kmax):
    """[zeta, S zeta, ..., S^kmax zeta]; always kmax + 1 vectors"""
    operator = as_kernel(operator)
    current = as_vector(zeta, operator.shape[0])
    vectors = [current.copy()]
    for _ in range(kmax):
        current = operator @ current
        vectors.append(current.copy())
    return vectors


def numerical_rank(matrix, tolerance=1e-10):
    """Count singular values above tolerance times the largest one"""
    matrix = np.asarray(matrix, dtype=complex)
    if matrix.size == 0:
        return 0
    singular = linalg.svdvals(matrix)
    if singular.size == 0 or singular[0] == 0.0:
        return 0
    return int(np.count_nonzero(singular > tolerance * singular[0]))


def orbit_span_dim(operator, zeta, kmax, tolerance=1e-10):
    vectors = orbit(operator, zeta, kmax)
    return numerical_rank(np.column_stack(vectors), tolerance)


def is_orbit_eigenvector(operator, zeta, k=1, tolerance=1e-10):
    """
    Return (True, lambda) when S^k zeta = lambda zeta, else (False, None).
    """
    operator = as_kernel(operator)
    zeta = as_vector(zeta, operator.shape[0])
    image = np.linalg.matrix_power(operator, k) @ zeta
    pivot = int(np.argmax(np.abs(zeta)))
    if abs(zeta[pivot]) == 0.0:
        return False, None
    eigenvalue = image[pivot] / zeta[pivot]
    if float(np.max(np.abs(image - eigenvalue * zeta))) <= tolerance:
        return True, complex(eigenvalue)
    return False, None


# Tensor helpers shared by the Fock realization and the symbolic algebra

def symmetrize(tensor):
    """Average a tensor over all permutations of its axes"""
    tensor = np.asarray(tensor, dtype=complex)
    order = tensor.ndim
    if order < 2:
        return tensor.copy()
    total = np.zeros_like(tensor)
    for perm in itertools.permutations(range(order)):
        total += np.transpose(tensor, perm)
    return total / math.factorial(order)


def block_symmetrize(tensor, l):
    """Symmetrize separately within the first l axes and within the rest"""
    tensor = np.asarray(tensor, dtype=complex)
    order = tensor.ndim
    m = order - l
    if l < 2 and m < 2:
        return tensor.copy()
    total = np.zeros_like(tensor)
    for left in itertools.permutations(range(l)):
        for right in itertools.permutations(range(l, order)):
            total += np.transpose(tensor, left + right)
    return total / (math.factorial(l) * math.factorial(m))


def symmetry_deviation(tensor):
    tensor = np.asarray(tensor, dtype=complex)
    if tensor.ndim < 2:
        return 0.0
    return float(np.max(np.abs(tensor - symmetrize(tensor))))


def multisets(d, order):
    """
    Enumerate multisets of modes of the given size.

    Yields (occupation, index_tuple, count) where index_tuple is the sorted
    representative and count = order! / occupation! is the number of ordered
    tuples with that content.
    """
    for modes in itertools.combinations_with_replacement(range(d), order):
        occupation = [0] * d
        for mode in modes:
            occupation[mode] += 1
        count = math.factorial(order)
        for n in occupation:
            count //= math.factorial(n)
        yield tuple(occupation), modes, count


def content(index_tuple, d):
    """Occupation vector of an ordered index tuple"""
    occupation = [0] * d
    for mode in index_tuple:
        occupation[mode] += 1
    return tuple(occupation)


def random_vector(rng, d, real=False):
    vector = rng.standard_normal(d)
    if not real:
        vector = vector + 1j * rng.standard_normal(d)
    return vector.astype(complex) / np.sqrt(d)


def random_tensor(rng, d, order, real=False):
    shape = (d,) * order
    tensor = rng.standard_normal(shape)
    if not real:
        tensor = tensor + 1j * rng.standard_normal(shape)
    return tensor.astype(complex) / np.sqrt(d ** max(order, 1))


def random_kernel(rng, d, symmetry=None, real=False):
    """Random d x d kernel, optionally projected to its symmetric or skew part"""
    kernel = random_tensor(rng, d, 2, real=real)
    if symmetry == 'symmetric':
        return (kernel + kernel.T) / 2
    if symmetry == 'skew':
        return (kernel - kernel.T) / 2
    if symmetry is not None:
        raise ValueError(f"unknown symmetry {symmetry!r}")
    return kernel
