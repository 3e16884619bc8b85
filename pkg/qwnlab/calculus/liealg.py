# calculus/liealg.py
"""
Finite-dimensional Lie algebras spanned by symbolic white noise operators.

Operators are turned into coordinate vectors by a Coordinatizer. In realized
mode the coordinates are the canonical (block-symmetrized) kernels, so an
operator such as Δ_G(S) with skew S coordinatizes to zero. In formal mode the
kernels an operator was declared with are read as written, and Δ_G(S) stays a
nonzero element. Brackets are always computed on canonical kernels.
"""
import itertools
import logging
from dataclasses import dataclass, field

import numpy as np
from scipy import linalg

from . import wick
from .exceptions import ClosureError, PreconditionError, SkewnessError, SpanMembershipError
from .modespace import as_kernel, as_vector, is_skew, orbit_span_dim

logger = logging.getLogger(__name__)

REALIZED = 'realized'
FORMAL = 'formal'
MODES = (REALIZED, FORMAL)

DEFAULT_MAX_ROUNDS = 12

_SLOT_ORDER = [(0, 1), (1, 0), (1, 1), (0, 2), (2, 0)]


def _signature_key(signature):
    if signature in _SLOT_ORDER:
        return (0, _SLOT_ORDER.index(signature), 0)
    l, m = signature
    return (1, l + m, l)


def row_space(matrix, tolerance=1e-10):
    """
    Orthonormal rows spanning the row space of `matrix`.

    Singular values count when they exceed tolerance times the largest one and
    the largest one itself exceeds tolerance.
    """
    matrix = np.atleast_2d(np.asarray(matrix, dtype=complex))
    if matrix.size == 0:
        return np.zeros((0, matrix.shape[-1]), dtype=complex)
    _, singular, vh = linalg.svd(matrix, full_matrices=False)
    if singular.size == 0 or singular[0] <= tolerance:
        return np.zeros((0, matrix.shape[1]), dtype=complex)
    rank = int(np.count_nonzero(singular > tolerance * singular[0]))
    return vh[:rank]


def span_rank(matrix, tolerance=1e-10):
    return row_space(matrix, tolerance).shape[0]


class Coordinatizer:
    """
    Slot layout: scalar first, then one block per signature in the order
    (0,1), (1,0), (1,1), (0,2), (2,0), then any higher signatures.

    Realized blocks hold one entry per (creator multiset, annihilator
    multiset); formal blocks hold every entry of the declared kernel.
    """

    def __init__(self, d, signatures, mode=REALIZED):
        if mode not in MODES:
            raise ValueError(f"unknown coordinate mode {mode!r}")
        self.d = d
        self.mode = mode
        self.signatures = sorted(set(signatures), key=_signature_key)
        self.layout = []
        for l, m in self.signatures:
            if mode == REALIZED:
                creators = list(itertools.combinations_with_replacement(range(d), l))
                annihilators = list(itertools.combinations_with_replacement(range(d), m))
                indices = [c + a for c in creators for a in annihilators]
            else:
                indices = list(np.ndindex(*((d,) * (l + m))))
            self.layout.append(((l, m), indices))
        self.size = 1 + sum(len(indices) for _, indices in self.layout)

    def __repr__(self):
        return f"Coordinatizer(d={self.d}, mode={self.mode}, signatures={self.signatures})"

    @classmethod
    def for_operators(cls, operators, mode=REALIZED):
        operators = list(operators)
        if not operators:
            raise ValueError("cannot coordinatize an empty operator list")
        signatures = set()
        for operator in operators:
            signatures.update(operator.terms)
            if mode == FORMAL:
                signatures.update(operator.declared)
        return cls(operators[0].d, signatures, mode)

    def _kernel(self, operator, signature):
        if self.mode == FORMAL:
            return operator.declared_kernel(signature)
        return operator.kernel(signature)

    def flatten(self, operator):
        vector = np.zeros(self.size, dtype=complex)
        vector[0] = operator.scalar
        position = 1
        for signature, indices in self.layout:
            kernel = self._kernel(operator, signature)
            for index in indices:
                vector[position] = kernel[index]
                position += 1
        extra = (set(operator.terms) | (set(operator.declared) if self.mode == FORMAL else set())) - set(self.signatures)
        if any(np.any(np.abs(self._kernel(operator, sig)) > wick.PRUNE_TOLERANCE) for sig in extra):
            raise SpanMembershipError(f"operator has signatures {sorted(extra)} outside the layout {self.signatures}")
        return vector

    def unflatten(self, vector, m_max=wick.DEFAULT_M_MAX):
        vector = np.asarray(vector, dtype=complex)
        if vector.shape != (self.size,):
            raise ValueError(f"coordinate vector must have length {self.size}, got {vector.shape}")
        terms = {}
        position = 1
        for (l, m), indices in self.layout:
            kernel = np.zeros((self.d,) * (l + m), dtype=complex)
            values = vector[position:position + len(indices)]
            position += len(indices)
            if self.mode == FORMAL:
                for index, value in zip(indices, values):
                    kernel[index] = value
            else:
                lookup = dict(zip(indices, values))
                for index in np.ndindex(*kernel.shape):
                    key = tuple(sorted(index[:l])) + tuple(sorted(index[l:]))
                    kernel[index] = lookup[key]
            terms[(l, m)] = kernel
        declared = dict(terms) if self.mode == FORMAL else None
        return wick.SymbolicOperator(self.d, vector[0], terms, declared=declared, m_max=m_max)

    def matrix(self, operators):
        """Coordinate vectors of the operators as rows"""
        return np.array([self.flatten(operator) for operator in operators], dtype=complex).reshape(-1, self.size)


def coordinates(operators, mode=REALIZED):
    coordinatizer = Coordinatizer.for_operators(operators, mode)
    return coordinatizer, coordinatizer.matrix(operators)


@dataclass
class LieBasis:
    """Numerically independent operators spanning a subspace"""
    elements: list
    mode: str = REALIZED
    tolerance: float = 1e-10
    closed: bool = False

    @property
    def dimension(self):
        return len(self.elements)

    @property
    def d(self):
        return self.elements[0].d if self.elements else None

    def coefficients(self, operator):
        """Coordinates of `operator` in this basis; raises when it lies outside the span"""
        if not self.elements:
            if operator.is_zero:
                return np.zeros(0, dtype=complex)
            raise SpanMembershipError("nonzero operator is outside the zero subspace")
        _, rows = coordinates(self.elements + [operator], self.mode)
        basis, target = rows[:-1], rows[-1]
        solution, *_ = linalg.lstsq(basis.T, target)
        residual = float(np.max(np.abs(basis.T @ solution - target), initial=0.0))
        scale = max(1.0, float(np.max(np.abs(target), initial=0.0)))
        if residual > self.tolerance * scale:
            raise SpanMembershipError(f"operator lies outside the span (residual {residual:.3e})")
        return solution

    def contains(self, operator):
        try:
            self.coefficients(operator)
        except SpanMembershipError:
            return False
        return True

    def combination(self, coefficients):
        return wick.linear_combination(list(coefficients), self.elements)


def independent_subset(operators, mode=REALIZED, tolerance=1e-10):
    """Greedy selection of operators that raise the span rank, in input order"""
    chosen = []
    for operator in operators:
        candidate = chosen + [operator]
        _, rows = coordinates(candidate, mode)
        if span_rank(rows, tolerance) == len(candidate):
            chosen.append(operator)
    return chosen


def closure(generators, max_rounds=DEFAULT_MAX_ROUNDS, mode=REALIZED, tolerance=1e-10):
    """
    Bracket closure of the generators.

    Each round brackets every pair that involves an element added in the
    previous round and keeps the results that enlarge the span. Returns once a
    round adds nothing; raises ClosureError if max_rounds pass without that.
    """
    if max_rounds < 1:
        raise ValueError(f"max_rounds must be >= 1, got {max_rounds}")
    generators = list(generators)
    if not generators:
        return LieBasis([], mode, tolerance, closed=True)
    elements = independent_subset(generators, mode, tolerance)
    frontier = 0
    for round_number in range(1, max_rounds + 1):
        added = 0
        count = len(elements)
        for i, j in itertools.combinations(range(count), 2):
            if j < frontier:
                continue
            candidate = wick.bracket(elements[i], elements[j])
            if candidate.is_zero:
                continue
            _, rows = coordinates(elements + [candidate], mode)
            if span_rank(rows, tolerance) > len(elements):
                elements.append(candidate)
                added += 1
        logger.debug(f"closure round {round_number} ({mode}): dimension {len(elements)}, {added} added")
        if not added:
            return LieBasis(elements, mode, tolerance, closed=True)
        frontier = count
    raise ClosureError(max_rounds, len(elements))


@dataclass
class StructureConstants:
    """c[i, j, k] with [x_i, x_j] = sum_k c[i, j, k] x_k"""
    tensor: np.ndarray
    tolerance: float = 1e-10

    @classmethod
    def from_basis(cls, basis):
        n = basis.dimension
        tensor = np.zeros((n, n, n), dtype=complex)
        for i, j in itertools.combinations(range(n), 2):
            coefficients = basis.coefficients(wick.bracket(basis.elements[i], basis.elements[j]))
            tensor[i, j] = coefficients
            tensor[j, i] = -coefficients
        return cls(tensor, basis.tolerance)

    @property
    def dimension(self):
        return self.tensor.shape[0]

    def ad(self, i):
        """Matrix of ad x_i acting on coefficient vectors"""
        return self.tensor[i].T

    def antisymmetry_residual(self):
        return float(np.max(np.abs(self.tensor + self.tensor.transpose(1, 0, 2)), initial=0.0))

    def jacobi_residual(self):
        c = self.tensor
        total = (
            np.einsum('jkl,ilm->ijkm', c, c)
            + np.einsum('kil,jlm->ijkm', c, c)
            + np.einsum('ijl,klm->ijkm', c, c)
        )
        return float(np.max(np.abs(total), initial=0.0))

    def bracket_span(self, left, right):
        """Row space of [span(left), span(right)] in coefficient coordinates"""
        n = self.dimension
        left = np.atleast_2d(left)
        right = np.atleast_2d(right)
        if left.shape[0] == 0 or right.shape[0] == 0:
            return np.zeros((0, n), dtype=complex)
        products = np.einsum('ai,bj,ijk->abk', left, right, self.tensor).reshape(-1, n)
        return row_space(products, self.tolerance)

    def killing_form(self):
        return np.einsum('ilk,jkl->ij', self.tensor, self.tensor)


def _series(constants, nested):
    n = constants.dimension
    dims = [n]
    current = np.eye(n, dtype=complex)
    full = np.eye(n, dtype=complex)
    while dims[-1] > 0:
        current = constants.bracket_span(full if nested else current, current)
        dims.append(current.shape[0])
        if dims[-1] == dims[-2]:
            break
    return dims


def derived_series(basis, constants=None):
    """Dimensions of g, [g, g], [g', g'], ... until zero or stable"""
    constants = constants or StructureConstants.from_basis(basis)
    return _series(constants, nested=False)


def lower_central_series(basis, constants=None):
    """Dimensions of g, [g, g], [g, g_1], ... until zero or stable"""
    constants = constants or StructureConstants.from_basis(basis)
    return _series(constants, nested=True)


def is_solvable(basis, constants=None):
    return derived_series(basis, constants)[-1] == 0


def is_nilpotent(basis, constants=None):
    return lower_central_series(basis, constants)[-1] == 0


def killing_form(basis, constants=None):
    constants = constants or StructureConstants.from_basis(basis)
    return constants.killing_form()


def is_semisimple(basis, constants=None):
    """Cartan criterion: the Killing form is nondegenerate"""
    if basis.dimension == 0:
        return False
    form = killing_form(basis, constants)
    return span_rank(form, basis.tolerance) == basis.dimension


def ideal_closure(x, basis, constants=None):
    """Smallest subspace containing x and closed under brackets with the basis"""
    coefficients = basis.coefficients(x)
    constants = constants or StructureConstants.from_basis(basis)
    n = basis.dimension
    current = row_space(coefficients.reshape(1, n), basis.tolerance)
    while True:
        images = np.einsum('ai,jik->ajk', current, constants.tensor).reshape(-1, n) if current.shape[0] else current
        grown = row_space(np.vstack([current, images]), basis.tolerance)
        if grown.shape[0] == current.shape[0]:
            break
        current = grown
    elements = [basis.combination(row) for row in current]
    logger.debug(f"ideal closure of dimension {len(elements)} inside dimension {n}")
    return LieBasis(elements, basis.mode, basis.tolerance, closed=True)


def contains_identity(sub):
    if not sub.elements:
        return False
    return sub.contains(wick.identity(sub.d))


def is_adjoint_closed(basis):
    return all(basis.contains(wick.adjoint(element)) for element in basis.elements)


# Generator sets

def base_generators(zeta):
    """Id, a(zeta), a*(zeta), N, Δ_G"""
    zeta = as_vector(zeta)
    d = zeta.shape[0]
    return [wick.identity(d), wick.annihilator(zeta), wick.creator(zeta), wick.number(d), wick.gross_laplacian(d)]


def pure_annihilation_generators(kernels):
    """N together with Ξ_{0,m_i}(kappa_i)"""
    kernels = [np.asarray(kernel, dtype=complex) for kernel in kernels]
    if not kernels:
        raise ValueError("at least one annihilation kernel is required")
    d = kernels[0].shape[0]
    return [wick.number(d)] + [wick.pure_annihilation(kernel) for kernel in kernels]


def orbit_vectors(operator, zeta, orbit_cap=8, tolerance=1e-10):
    """S^k zeta for k = 0, 1, ... up to the first k where the orbit span stops growing"""
    operator = as_kernel(operator)
    zeta = as_vector(zeta, operator.shape[0])
    vectors = []
    previous = 0
    current = zeta
    for k in range(orbit_cap + 1):
        dimension = orbit_span_dim(operator, zeta, k, tolerance)
        if dimension <= previous:
            break
        vectors.append(current)
        previous = dimension
        current = operator @ current
    return vectors


def standard_generators(operator, zeta, cfg):
    """
    Id, a(S^k zeta), a*(S^k zeta), N, Λ(S), Δ_G, Δ_G(S) with the orbit cut at
    numerical dependence. `cfg` is a ModeConfig.
    """
    operator = as_kernel(operator, cfg.d)
    zeta = as_vector(zeta, cfg.d)
    if not is_skew(operator, cfg.tolerance):
        raise SkewnessError("the rotation generator set needs a skew-symmetric S")
    if float(np.max(np.abs(zeta))) <= cfg.tolerance:
        raise PreconditionError('zeta nonzero')
    vectors = orbit_vectors(operator, zeta, cfg.orbit_cap, cfg.tolerance)
    d = cfg.d
    return (
        [wick.identity(d)]
        + [wick.annihilator(v) for v in vectors]
        + [wick.creator(v) for v in vectors]
        + [wick.number(d), wick.conservation(operator), wick.gross_laplacian(d), wick.generalized_gross(operator)]
    )


def fixed_point_constraints(K, L, zeta):
    """Residual of every constraint on the fixed-point data, keyed by name"""
    K = as_kernel(K)
    L = as_kernel(L, K.shape[0])
    zeta = as_vector(zeta, K.shape[0])

    def worst(array):
        return float(np.max(np.abs(array), initial=0.0))

    return {
        'K symmetric': worst(K - K.T),
        'L self-adjoint': worst(L - L.conj().T),
        'KL = K': worst(K @ L - K),
        'conj(L)K = K': worst(L.conj() @ K - K),
        'conj(K)K = L': worst(K.conj() @ K - L),
        'conj(K zeta) = zeta': worst(np.conj(K @ zeta) - zeta),
        'L zeta = zeta': worst(L @ zeta - zeta),
    }


def fixed_point_generators(K, L, zeta, tolerance=1e-10):
    """Id, a(zeta), a*(zeta), Λ(L), Δ_G(K), Δ_G(K)*; every constraint must hold"""
    for constraint, residual in fixed_point_constraints(K, L, zeta).items():
        if residual > tolerance:
            raise PreconditionError(constraint, residual)
    K = as_kernel(K)
    d = K.shape[0]
    gross = wick.generalized_gross(K)
    return [
        wick.identity(d),
        wick.annihilator(zeta),
        wick.creator(zeta),
        wick.conservation(L),
        gross,
        wick.adjoint(gross),
    ]


@dataclass
class DimensionTable:
    """Closure dimensions of one generator set in both coordinate modes"""
    label: str
    formal: int
    realized: int
    notes: list = field(default_factory=list)

    def as_dict(self):
        return {'label': self.label, 'formal': self.formal, 'realized': self.realized, 'notes': list(self.notes)}


def dimension_table(label, generators, max_rounds=DEFAULT_MAX_ROUNDS, tolerance=1e-10):
    formal = closure(generators, max_rounds, FORMAL, tolerance)
    realized = closure(generators, max_rounds, REALIZED, tolerance)
    table = DimensionTable(label, formal.dimension, realized.dimension)
    if formal.dimension != realized.dimension:
        table.notes.append(f"{formal.dimension - realized.dimension} element(s) vanish after symmetrization")
    return table
