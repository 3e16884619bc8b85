# verification/suites.py
"""
Verification suites.

Each suite is a function (config, recorder) registered with the `suite`
decorator. The recorder collects named residuals with their bounds, boolean
expectations, facts such as dimensions, and flags; the runner turns it into a
SuiteResult.
"""
import functools
import logging
import math
from collections import defaultdict
from dataclasses import dataclass, field

import numpy as np
from django.conf import settings

from calculus import fock, liealg, qwn, rotgrp, wick
from calculus.modespace import (
    ModeConfig,
    bilinear_pair,
    block_symmetrize,
    convolve,
    is_orbit_eigenvector,
    orbit_span_dim,
    power_parity,
    random_kernel,
    random_tensor,
    random_vector,
    symmetrize,
)

from .anchors import ANCHORS

logger = logging.getLogger(__name__)

PASS = 'pass'
FAIL = 'fail'
FLAGGED = 'flagged'
GATE = 'wick-gate'

REFERENCE_S = np.array([[0, 1], [-1, 0]], dtype=complex)
REFERENCE_ZETA = np.array([1, 0], dtype=complex)
ISOTROPIC_ZETA = np.array([1, -1j], dtype=complex)
EIGEN_S = np.array([[0, 1j], [-1j, 0]], dtype=complex)
EIGEN_ZETA = np.array([1, -1j], dtype=complex)
FIXED_POINT_K = np.diag([1, 0]).astype(complex)
FIXED_POINT_L = np.diag([1, 0]).astype(complex)

# Signatures whose pairwise products the wick gate compares against the Fock realization.
GATE_FAMILY = [
    (0, 1), (1, 0), (1, 1), (0, 2), (2, 0), (1, 2), (2, 1), (0, 3), (3, 0),
    (2, 2), (1, 3), (3, 1), (0, 4), (4, 0),
]
QUADRATIC_FAMILY = [(0, 1), (1, 0), (1, 1), (0, 2), (2, 0)]


@dataclass(frozen=True)
class SuiteDefinition:
    name: str
    function: object
    anchors: tuple
    needs: tuple = ()
    needs_seed: bool = True
    needs_skew: bool = False
    gated: bool = True


SUITES = {}


def suite(name, anchors, needs=(), seed=True, skew=False, gated=True):
    """Register a suite; registry order is execution and report order"""
    unknown = [anchor for anchor in anchors if anchor not in ANCHORS]
    if unknown:
        raise ValueError(f"suite {name!r} names unknown anchors {unknown}")

    def register(function):
        SUITES[name] = SuiteDefinition(name, function, tuple(anchors), tuple(needs), seed, skew, gated)
        return function

    return register


@dataclass
class SuiteResult:
    name: str
    status: str
    checks: list = field(default_factory=list)
    residuals: dict = field(default_factory=dict)
    facts: dict = field(default_factory=dict)
    notes: list = field(default_factory=list)
    anchors: tuple = ()
    dimensions: list = field(default_factory=list)
    wall_time: float = 0.0

    @property
    def failed(self):
        return self.status == FAIL


class SuiteRecorder:
    def __init__(self, name, anchors=()):
        self.name = name
        self.anchors = tuple(anchors)
        self.checks = []
        self.residuals = {}
        self.facts = {}
        self.notes = []
        self.flags = []
        self.dimensions = []
        self.failures = []

    def _record(self, name, kind, value, bound, ok):
        self.checks.append({'name': name, 'kind': kind, 'value': value, 'bound': bound, 'ok': bool(ok)})
        if not ok:
            self.failures.append(name)
            logger.warning(f"{self.name}: check '{name}' failed (value {value}, bound {bound})")

    def residual(self, name, value, bound):
        """Passes when value <= bound"""
        value = float(value)
        self.residuals[name] = value
        self._record(name, 'max', value, float(bound), value <= bound)

    def exceeds(self, name, value, floor):
        """Negative control: passes when value > floor"""
        value = float(value)
        self.residuals[name] = value
        self._record(name, 'min', value, float(floor), value > floor)

    def expect(self, name, condition):
        self._record(name, 'bool', bool(condition), True, bool(condition))

    def equal(self, name, value, expected):
        self.facts[name] = value
        self._record(name, 'equal', value, expected, value == expected)

    def fact(self, name, value):
        self.facts[name] = value

    def note(self, text):
        self.notes.append(text)

    def flag(self, text):
        self.flags.append(text)
        self.notes.append(f"flagged: {text}")

    def dimension(self, table):
        self.dimensions.append(table.as_dict())

    def fail(self, text):
        self.failures.append(text)
        self.notes.append(text)

    @property
    def status(self):
        if self.failures:
            return FAIL
        if self.flags:
            return FLAGGED
        return PASS

    def result(self, wall_time=0.0):
        return SuiteResult(
            name=self.name,
            status=self.status,
            checks=list(self.checks),
            residuals=dict(self.residuals),
            facts=dict(self.facts),
            notes=list(self.notes),
            anchors=self.anchors,
            dimensions=list(self.dimensions),
            wall_time=wall_time,
        )


# Shared helpers

def bracket_residuals(fcfg, a, b, expected):
    """(symbolic distance, guarded Fock residual) of [a, b] against `expected`"""
    symbolic = wick.bracket(a, b).distance(expected)
    degree = max(a.creator_degree, b.creator_degree)
    realized = fock.guarded_equal(
        fcfg,
        fock.commutator(wick.to_fock(fcfg, a), wick.to_fock(fcfg, b)),
        wick.to_fock(fcfg, expected),
        degree,
    )
    return symbolic, realized


class Worst(defaultdict):
    """Running maxima keyed by check name"""

    def __init__(self):
        super().__init__(float)

    def update_max(self, name, value):
        self[name] = max(self[name], float(value))


def orbit_powers(S, zeta, count):
    powers = [np.asarray(zeta, dtype=complex)]
    for _ in range(count - 1):
        powers.append(S @ powers[-1])
    return powers


def derivative_spec(sign, k, zeta):
    return qwn.DerivativeSpec.of(sign, k, zeta, cap=settings.QWNLAB['DERIVATIVE_CAP'])


def analyse(basis):
    constants = liealg.StructureConstants.from_basis(basis)
    return {
        'dimension': basis.dimension,
        'derived': liealg.derived_series(basis, constants),
        'lower_central': liealg.lower_central_series(basis, constants),
        'solvable': liealg.is_solvable(basis, constants),
        'nilpotent': liealg.is_nilpotent(basis, constants),
        'constants': constants,
    }


def record_analysis(rec, label, analysis):
    for key in ('dimension', 'derived', 'lower_central', 'solvable', 'nilpotent'):
        rec.fact(f"{label} {key}", analysis[key])


# Suites

@suite(GATE, anchors=('normal-ordering',), gated=False)
def wick_gate(cfg, rec):
    """Normal-ordered products and brackets against Fock matrix products"""
    fcfg = cfg.fock_config()
    rng = cfg.rng(GATE)
    d = cfg.d
    worst = Worst()
    pairs = bracket_only = 0
    for la, ma in GATE_FAMILY:
        for lb, mb in GATE_FAMILY:
            with_product = la + lb <= cfg.m_max and ma + mb <= cfg.m_max and lb <= cfg.guard
            # the uncontracted terms cancel in a bracket, so its top signature is one lower
            with_bracket = la + lb - 1 <= cfg.m_max and ma + mb - 1 <= cfg.m_max and max(la, lb) <= cfg.guard
            if not (with_product or with_bracket):
                continue
            pairs += 1
            bracket_only += not with_product
            for _ in range(2):
                a = wick.make((la, ma), random_tensor(rng, d, la + ma), d=d, m_max=cfg.m_max)
                b = wick.make((lb, mb), random_tensor(rng, d, lb + mb), d=d, m_max=cfg.m_max)
                fa, fb = wick.to_fock(fcfg, a), wick.to_fock(fcfg, b)
                product = fa @ fb
                scale = max(1.0, fock.max_abs(product))
                if with_product:
                    realized = wick.to_fock(fcfg, wick.wick_product(a, b))
                    worst.update_max('product vs Fock', fock.guarded_equal(fcfg, realized, product, lb) / scale)
                if with_bracket:
                    commutator = fock.commutator(fa, fb)
                    realized = wick.to_fock(fcfg, wick.bracket(a, b))
                    worst.update_max(
                        'bracket vs Fock', fock.guarded_equal(fcfg, realized, commutator, max(la, lb)) / scale
                    )
    rec.fact('signature pairs', pairs)
    rec.fact('bracket-only pairs', bracket_only)
    rec.residual('product vs Fock', worst['product vs Fock'], 1e-10)
    rec.residual('bracket vs Fock', worst['bracket vs Fock'], 1e-10)

    gross = wick.gross_laplacian(d)
    product = wick.wick_product(gross, wick.adjoint(gross))
    rec.residual('Gross product scalar', abs(product.scalar - 2 * d), cfg.tolerance)
    rec.residual('Gross product (1,1) kernel', fock.max_abs(product.kernel((1, 1)) - 4 * np.eye(d)), cfg.tolerance)

    for _ in range(cfg.samples):
        a, b, c = (
            wick.linear_combination(
                [1.0] * len(QUADRATIC_FAMILY),
                [wick.make(sig, random_tensor(rng, d, sum(sig)), d=d) for sig in QUADRATIC_FAMILY],
            )
            for _ in range(3)
        )
        jacobi = (
            wick.bracket(a, wick.bracket(b, c))
            + wick.bracket(b, wick.bracket(c, a))
            + wick.bracket(c, wick.bracket(a, b))
        )
        worst.update_max('Jacobi identity', jacobi.distance(wick.zero(d)))
        worst.update_max('antisymmetry', (wick.bracket(a, b) + wick.bracket(b, a)).distance(wick.zero(d)))
        fa = wick.to_fock(fcfg, a)
        worst.update_max('adjoint vs Hermitian transpose', fock.max_abs(wick.to_fock(fcfg, wick.adjoint(a)) - fa.conj().T))
        worst.update_max('adjoint involution', wick.adjoint(wick.adjoint(a)).distance(a))
    for name in ('Jacobi identity', 'antisymmetry', 'adjoint vs Hermitian transpose', 'adjoint involution'):
        rec.residual(name, worst[name], 1e-10)


@suite('ccr', anchors=('canonical-commutation-relations', 'generalized-ccr', 'commutator-product-identity'))
def canonical_commutation_relations(cfg, rec):
    fcfg = cfg.fock_config()
    rng = cfg.rng('ccr')
    d = cfg.d
    identity = fock.identity(fcfg)
    worst = Worst()
    annihilators = [fock.mode_annihilator(fcfg, i) for i in range(d)]
    creators = [fock.mode_creator(fcfg, i) for i in range(d)]
    for i in range(d):
        for j in range(d):
            worst.update_max('[a_i, a_j]', fock.max_abs(fock.commutator(annihilators[i], annihilators[j])))
            worst.update_max('[a_i*, a_j*]', fock.max_abs(fock.commutator(creators[i], creators[j])))
            expected = identity if i == j else 0 * identity
            worst.update_max(
                '[a_i, a_j*]', fock.guarded_equal(fcfg, fock.commutator(annihilators[i], creators[j]), expected, 1)
            )
    for name in ('[a_i, a_j]', '[a_i*, a_j*]', '[a_i, a_j*]'):
        rec.residual(name, worst[name], 1e-12)

    defect = fock.guarded_equal(fcfg, fock.commutator(annihilators[0], creators[0]), identity, 0)
    rec.fact('unguarded top-sector defect', defect)
    rec.residual('unguarded defect equals M + 1', abs(defect - (cfg.M + 1)), 1e-9)

    for _ in range(cfg.samples):
        y, xi = random_vector(rng, d), random_vector(rng, d)
        symbolic, realized = bracket_residuals(
            fcfg, wick.annihilator(y), wick.creator(xi), wick.identity(d, bilinear_pair(y, xi))
        )
        worst.update_max('generalized CCR symbolic', symbolic)
        worst.update_max('generalized CCR Fock', realized)

        ladder = annihilators + creators
        A, B, C, D = (ladder[index] for index in rng.integers(0, len(ladder), size=4))
        lhs = fock.commutator(A @ B, C @ D)
        rhs = (
            A @ fock.commutator(B, C) @ D
            + fock.commutator(A, C) @ B @ D
            + C @ A @ fock.commutator(B, D)
            + C @ fock.commutator(A, D) @ B
        )
        worst.update_max('[AB, CD] expansion', fock.max_abs(lhs - rhs) / max(1.0, fock.max_abs(lhs)))
    rec.residual('generalized CCR symbolic', worst['generalized CCR symbolic'], cfg.tolerance)
    rec.residual('generalized CCR Fock', worst['generalized CCR Fock'], 1e-10)
    rec.residual('[AB, CD] expansion', worst['[AB, CD] expansion'], 1e-12)


@suite('relations', anchors=('basic-commutation-relations', 'annihilation-creation-operators'))
def basic_relations(cfg, rec):
    fcfg = cfg.fock_config()
    rng = cfg.rng('relations')
    d = cfg.d
    N, gross = wick.number(d), wick.gross_laplacian(d)
    worst = Worst()
    for _ in range(cfg.samples):
        zeta = random_vector(rng, d)
        a, a_star = wick.annihilator(zeta), wick.creator(zeta)
        items = {
            1: (a, a_star, wick.identity(d, bilinear_pair(zeta, zeta))),
            2: (a, N, a),
            3: (a, gross, wick.zero(d)),
            4: (a_star, N, -a_star),
            5: (a_star, gross, -2 * a),
            6: (gross, N, 2 * gross),
        }
        for m in (2, 3):
            xi = wick.pure_annihilation(random_tensor(rng, d, m))
            items[f"7 (m={m})"] = (N, xi, -m * xi)
        for item, (left, right, expected) in items.items():
            symbolic, realized = bracket_residuals(fcfg, left, right, expected)
            worst.update_max(f"item {item} symbolic", symbolic)
            worst.update_max(f"item {item} Fock", realized)
    for name in sorted(worst):
        bound = cfg.tolerance if name.endswith('symbolic') else 1e-10
        rec.residual(name, worst[name], bound)


@suite(
    'kernel-commutators',
    anchors=(
        'conservation-commutator',
        'annihilation-commute',
        'gross-conservation-commutator',
        'gross-laplacian-conservation',
        'skew-gross-conservation',
    ),
)
def kernel_commutators(cfg, rec):
    fcfg = cfg.fock_config()
    rng = cfg.rng('kernel-commutators')
    d = cfg.d
    gross = wick.gross_laplacian(d)
    worst = Worst()
    for _ in range(cfg.samples):
        f1, f2 = random_kernel(rng, d), random_kernel(rng, d)
        lam, kappa = random_kernel(rng, d), random_kernel(rng, d)
        skew = random_kernel(rng, d, symmetry='skew')
        cases = {
            'conservation commutator': (
                wick.conservation(f1),
                wick.conservation(f2),
                wick.conservation(convolve(f1, f2) - convolve(f2, f1)),
            ),
            'Gross-conservation commutator': (
                wick.make((0, 2), lam),
                wick.conservation(kappa),
                wick.make((0, 2), convolve(lam, kappa)) + wick.make((0, 2), convolve(lam.T, kappa)),
            ),
            'Gross Laplacian with conservation': (gross, wick.conservation(kappa), 2 * wick.make((0, 2), kappa)),
            'skew Gross with conservation': (wick.make((0, 2), skew), wick.conservation(skew), wick.zero(d)),
            'annihilation operators commute': (
                wick.pure_annihilation(random_tensor(rng, d, 2)),
                wick.pure_annihilation(random_tensor(rng, d, 3)),
                wick.zero(d),
            ),
        }
        for name, (left, right, expected) in cases.items():
            symbolic, realized = bracket_residuals(fcfg, left, right, expected)
            worst.update_max(f"{name} symbolic", symbolic)
            worst.update_max(f"{name} Fock", realized)
    for name in sorted(worst):
        bound = cfg.tolerance if name.endswith('symbolic') else 1e-10
        rec.residual(name, worst[name], bound)
    rec.note("the skew case holds trivially: Xi_02 of a skew kernel is the zero operator")


@suite('commutations', anchors=('skew-orbit-commutations',), needs=('S', 'zeta'), skew=True)
def orbit_commutations(cfg, rec):
    """Items 1-10 for powers j, k <= 3 along the orbit of S, for the configured and a random direction"""
    fcfg = cfg.fock_config()
    rng = cfg.rng('commutations')
    d, S = cfg.d, cfg.S
    N, gross = wick.number(d), wick.gross_laplacian(d)
    conservation, gross_S = wick.conservation(S), wick.generalized_gross(S)
    worst = Worst()
    stated = Worst()

    def check(item, left, right, expected, target=worst):
        symbolic, realized = bracket_residuals(fcfg, left, right, expected)
        target.update_max(f"item {item} symbolic", symbolic)
        target.update_max(f"item {item} Fock", realized)

    for zeta in (cfg.zeta, random_vector(rng, d)):
        powers = orbit_powers(S, zeta, 5)
        for j in range(4):
            for k in range(4):
                check(1, wick.annihilator(powers[j]), wick.creator(powers[k]),
                      wick.identity(d, bilinear_pair(powers[j], powers[k])))
        check(2, gross, gross_S, wick.zero(d))
        check(3, N, gross_S, -2 * gross_S)
        check(4, N, conservation, wick.zero(d))
        check(9, gross, conservation, 2 * gross_S)
        check(10, gross_S, conservation, wick.zero(d))
        for k in range(4):
            a_k, a_star_k = wick.annihilator(powers[k]), wick.creator(powers[k])
            a_next, a_star_next = wick.annihilator(powers[k + 1]), wick.creator(powers[k + 1])
            check(5, a_star_k, conservation, -a_star_next)
            check(6, a_k, conservation, -a_next)
            check(5, a_star_k, conservation, a_star_next, target=stated)
            check(6, a_k, conservation, (-1) ** (k + 1) * a_next, target=stated)
            check(7, a_star_k, gross_S, wick.zero(d))
            check(8, a_k, gross_S, wick.zero(d))

    for name in sorted(worst):
        bound = cfg.tolerance if name.endswith('symbolic') else 1e-10
        rec.residual(name, worst[name], bound)
    for name in sorted(stated):
        rec.fact(f"stated sign {name}", stated[name])
    if stated['item 5 Fock'] > 1e-10:
        rec.flag("item 5: the direct commutator [a*(S^k z), Lambda(S)] is -a*(S^{k+1} z); the stated sign is +")
    if stated['item 6 Fock'] > 1e-10:
        rec.flag("item 6: the direct commutator [a(S^k z), Lambda(S)] is -a(S^{k+1} z); the stated sign (-1)^{k+1} differs for odd k")
    rec.note("items 3 and 9 hold with both sides zero: the generalized Gross Laplacian of a skew S vanishes")


@suite(
    'qwn',
    anchors=(
        'qwn-derivatives',
        'conservation-operator',
        'generalized-gross-laplacian',
        'derivatives-of-quadratic-operators',
        'iterated-derivatives',
    ),
    needs=('S', 'zeta'),
    skew=True,
)
def white_noise_derivatives(cfg, rec):
    fcfg = cfg.fock_config()
    rng = cfg.rng('qwn')
    d, S, zeta = cfg.d, cfg.S, cfg.zeta
    conservation, gross_S = wick.conservation(S), wick.generalized_gross(S)
    conservation_matrix = wick.to_fock(fcfg, conservation)
    powers = orbit_powers(S, zeta, 6)
    worst = Worst()

    for k in range(5):
        minus, plus = derivative_spec(qwn.MINUS, k, zeta), derivative_spec(qwn.PLUS, k, zeta)
        expected_minus = wick.creator(powers[k + 1])
        expected_plus = (-1) ** (k + 1) * wick.annihilator(powers[k + 1])
        worst.update_max('D^k- Lambda(S)', qwn.iterated(minus, conservation).distance(expected_minus))
        worst.update_max('D^k+ Lambda(S)', qwn.iterated(plus, conservation).distance(expected_plus))
        worst.update_max('D^k- Gross(S)', qwn.iterated(minus, gross_S).distance(wick.zero(d)))
        worst.update_max('D^k+ Gross(S)', qwn.iterated(plus, gross_S).distance(wick.zero(d)))
        worst.update_max('D^k- Lambda(S) Fock', fock.guarded_equal(
            fcfg, qwn.fock_iterated(fcfg, minus, conservation_matrix), wick.to_fock(fcfg, expected_minus), 1))
        worst.update_max('D^k+ Lambda(S) Fock', fock.guarded_equal(
            fcfg, qwn.fock_iterated(fcfg, plus, conservation_matrix), wick.to_fock(fcfg, expected_plus), 1))

    for _ in range(cfg.samples):
        general = random_kernel(rng, d)
        direction = random_vector(rng, d)
        other = random_vector(rng, d)
        cons, gross = wick.conservation(general), wick.generalized_gross(general)
        cases = {
            'D+ Lambda(S) = a(S^T z)': (qwn.d_plus(direction, cons), wick.annihilator(general.T @ direction)),
            'D- Lambda(S) = a*(S z)': (qwn.d_minus(direction, cons), wick.creator(general @ direction)),
            'D+ Gross(S) = 0': (qwn.d_plus(direction, gross), wick.zero(d)),
            'D- Gross(S) = a(S z) + a(S^T z)': (
                qwn.d_minus(direction, gross),
                wick.annihilator(general @ direction) + wick.annihilator(general.T @ direction),
            ),
            'D+ Id = 0': (qwn.d_plus(direction, wick.identity(d)), wick.zero(d)),
        }
        for name, (value, expected) in cases.items():
            worst.update_max(name, value.distance(expected))
        cons_matrix = wick.to_fock(fcfg, cons)
        worst.update_max('D+ Fock consistency', fock.guarded_equal(
            fcfg, qwn.fock_d_plus(fcfg, direction, cons_matrix), wick.to_fock(fcfg, qwn.d_plus(direction, cons)), 1))
        worst.update_max('D- Fock consistency', fock.guarded_equal(
            fcfg, qwn.fock_d_minus(fcfg, direction, cons_matrix), wick.to_fock(fcfg, qwn.d_minus(direction, cons)), 1))

        A = cons
        B = wick.creator(random_vector(rng, d)) + wick.make((0, 2), random_kernel(rng, d))
        leibniz = qwn.d_plus(direction, wick.wick_product(A, B))
        expanded = wick.wick_product(qwn.d_plus(direction, A), B) + wick.wick_product(A, qwn.d_plus(direction, B))
        worst.update_max('Leibniz rule', leibniz.distance(expanded))

        alpha, beta = complex(*rng.standard_normal(2)), complex(*rng.standard_normal(2))
        combined = qwn.d_plus(alpha * direction + beta * other, B)
        separate = alpha * qwn.d_plus(direction, B) + beta * qwn.d_plus(other, B)
        worst.update_max('linearity in z', combined.distance(separate))
        combined = qwn.d_minus(direction, alpha * A + beta * B)
        separate = alpha * qwn.d_minus(direction, A) + beta * qwn.d_minus(direction, B)
        worst.update_max('linearity in the operator', combined.distance(separate))

    for name in sorted(worst):
        bound = 1e-10 if 'Fock' in name else cfg.tolerance
        rec.residual(name, worst[name], bound)

    stated = Worst()
    for k in range(4):
        commutator = fock.commutator(wick.to_fock(fcfg, wick.creator(powers[k])), conservation_matrix)
        next_creator = wick.to_fock(fcfg, wick.creator(powers[k + 1]))
        stated.update_max('[a*(S^k z), Lambda(S)] vs -a*(S^{k+1} z)', fock.guarded_equal(fcfg, commutator, -next_creator, 1))
        stated.update_max('[a*(S^k z), Lambda(S)] vs +a*(S^{k+1} z)', fock.guarded_equal(fcfg, commutator, next_creator, 1))
    for name, value in stated.items():
        rec.fact(name, value)
    rec.residual('direct commutator sign', stated['[a*(S^k z), Lambda(S)] vs -a*(S^{k+1} z)'], 1e-10)
    if stated['[a*(S^k z), Lambda(S)] vs +a*(S^{k+1} z)'] > 1e-10:
        rec.flag(
            "D^{k-} Lambda(S) = a*(S^{k+1} z) forces [a*(S^k z), Lambda(S)] = -a*(S^{k+1} z); "
            "the commutation table states +a*(S^{k+1} z)"
        )


@suite(
    'rotation',
    anchors=('skew-generator-kernel', 'rotation-generator', 'rotation-invariance', 'rotation-operator-kernel'),
    needs=('S',),
    skew=True,
)
def rotation_flows(cfg, rec):
    fcfg = cfg.fock_config()
    rng = cfg.rng('rotation')
    flow = rotgrp.FlowSpec.of(cfg.S, cfg.theta_grid)
    d, X = cfg.d, flow.generator
    real = fock.max_abs(X.imag) == 0.0

    residuals = rotgrp.generator_identity_check(fcfg, X, flow.thetas)
    rec.residual('dGamma(X) - 2 Xi_11(X/2)', residuals.exact, 1e-13)
    rec.residual('Gamma(exp(theta X)) - exp(theta dGamma(X))', residuals.flow, 1e-10)
    generator = fock.differential_second_quantization(fcfg, X)
    rec.residual('R_k for k = X/2 vs dGamma(X)', fock.max_abs(wick.to_fock(fcfg, wick.rotation(X / 2)) - generator), 1e-13)

    worst = Worst()
    for _ in range(cfg.samples):
        eta, xi = random_vector(rng, d), random_vector(rng, d)
        paired = np.einsum('ij,i,j->', X / 2, eta, xi)
        worst.update_max('<k, eta (x) xi> - <eta, X xi>/2', abs(paired - bilinear_pair(eta, X @ xi) / 2))
    rec.residual('<k, eta (x) xi> - <eta, X xi>/2', worst['<k, eta (x) xi> - <eta, X xi>/2'], 1e-13)

    thetas = list(flow.thetas)
    for theta in thetas:
        if real:
            worst.update_max('orthogonality', rotgrp.orthogonality_residual(X, theta))
            worst.update_max('Gamma(g) unitarity', rotgrp.unitarity_residual(fcfg, rotgrp.one_particle_flow(X, theta)))
        for other in thetas:
            worst.update_max('flow property', rotgrp.flow_property_residual(X, theta, other))
        invariance = {
            'N': rotgrp.rotation_invariance_check(fcfg, fock.number_operator(fcfg), X, theta),
            'Gross Laplacian': rotgrp.rotation_invariance_check(fcfg, fock.gross_laplacian(fcfg), X, theta),
            'Euler operator': rotgrp.rotation_invariance_check(fcfg, fock.euler_operator(fcfg), X, theta),
        }
        worst.update_max('N commutator', invariance['N'].commutator)
        worst.update_max('Gross Laplacian conjugation', invariance['Gross Laplacian'].conjugation)
        worst.update_max('Euler operator conjugation', invariance['Euler operator'].conjugation)
        for name, result in invariance.items():
            worst.update_max(f"{name} literal", result.literal)
    rec.residual('flow property', worst['flow property'], 1e-12)
    if real:
        rec.residual('orthogonality', worst['orthogonality'], 1e-12)
        rec.residual('Gamma(g) unitarity', worst['Gamma(g) unitarity'], 1e-12)
    else:
        rec.note("S has complex entries: orthogonality and unitarity checks skipped")
    for name in ('N commutator', 'Gross Laplacian conjugation', 'Euler operator conjugation'):
        rec.residual(name, worst[name], 1e-11)
    for name in ('N literal', 'Gross Laplacian literal', 'Euler operator literal'):
        rec.fact(f"Gamma(g) Xi Gamma(g) - Xi, {name.split(' literal')[0]}", worst[name])

    direction = rng.standard_normal(d)
    direction = direction / np.linalg.norm(direction)
    control = rotgrp.rotation_invariance_check(fcfg, fock.annihilation_op(fcfg, direction), X, 0.5)
    if fock.max_abs(X) > cfg.tolerance:
        rec.exceeds('a(z) conjugation (negative control)', control.conjugation, 0.1)
    else:
        rec.fact('a(z) conjugation (negative control)', control.conjugation)

    errors = rotgrp.finite_difference_errors(fcfg, X, flow.h, flow.steps)
    rec.fact('finite difference errors', errors)
    if errors[0] > 1e-12:
        ratios = [later / earlier for earlier, later in zip(errors, errors[1:])]
        rec.fact('finite difference ratios', ratios)
        rec.expect('finite difference is first order', all(0.35 < ratio < 0.65 for ratio in ratios))


@suite(
    'second-quantization',
    anchors=(
        'kernel-theorem',
        'kernel-convolution',
        'second-quantization',
        'differential-second-quantization',
        'exponential-vectors',
        'number-operator',
        'gross-laplacian',
    ),
)
def second_quantization(cfg, rec):
    fcfg = cfg.fock_config()
    rng = cfg.rng('second-quantization')
    d, M = cfg.d, cfg.M
    identity = fock.identity(fcfg)
    one_particle = [fock.basis_position(fcfg, tuple(int(i == j) for j in range(d))) for i in range(d)]
    worst = Worst()

    for _ in range(cfg.samples):
        T1, T2 = random_kernel(rng, d), random_kernel(rng, d)
        gamma_product = fock.second_quantization(fcfg, T1 @ T2)
        composed = fock.second_quantization(fcfg, T1) @ fock.second_quantization(fcfg, T2)
        worst.update_max('Gamma functoriality', fock.max_abs(gamma_product - composed) / max(1.0, fock.max_abs(composed)))
        worst.update_max('dGamma(K) - Xi_11(K)', fock.max_abs(
            fock.differential_second_quantization(fcfg, T1) - fock.build_xi(fcfg, 1, 1, T1)))

        xi = random_vector(rng, d)
        xi = 0.5 * xi / np.linalg.norm(xi)
        image = fock.second_quantization(fcfg, T1) @ fock.exponential_vector(fcfg, xi)
        worst.update_max('Gamma(T) phi_xi - phi_(T xi)', fock.max_abs(image - fock.exponential_vector(fcfg, T1 @ xi)))

        eta = random_vector(rng, d)
        worst.update_max('kernel pairing', abs(np.einsum('ij,i,j->', T1, eta, xi) - bilinear_pair(eta, T1 @ xi)))
        block = wick.to_fock(fcfg, wick.conservation(T1))[np.ix_(one_particle, one_particle)]
        worst.update_max('one-particle block of Lambda(S) is S', fock.max_abs(block - T1))

        composed = wick.to_fock(fcfg, wick.conservation(T1)) @ wick.to_fock(fcfg, wick.conservation(T2))
        worst.update_max('convolution is composition', fock.max_abs(
            composed[np.ix_(one_particle, one_particle)] - convolve(T1, T2)))
        alpha = complex(*rng.standard_normal(2))
        worst.update_max('convolution bilinearity', fock.max_abs(
            convolve(alpha * T1 + T2, T2) - (alpha * convolve(T1, T2) + convolve(T2, T2))))

        r = float(np.vdot(xi, xi).real)
        phi = fock.exponential_vector(fcfg, xi)
        worst.update_max('exponential vector norm', abs(np.vdot(phi, phi).real - fock.exponential_norm_partial(r, M)))
        f = random_vector(rng, d)
        deviation = fock.annihilation_op(fcfg, f) @ phi - bilinear_pair(f, xi) * phi
        tail = math.exp(r) - fock.exponential_norm_partial(r, M - 1)
        bound = 10 * abs(bilinear_pair(f, xi)) * math.sqrt(tail)
        worst.update_max('a(f) phi_xi eigen relation (excess over tail)', max(0.0, np.linalg.norm(deviation) - bound))

        sequence = [
            functools.reduce(np.multiply.outer, [xi] * n, np.array(1.0 + 0j)) / math.factorial(n) for n in range(M + 1)
        ]
        worst.update_max('coefficients of phi_xi', fock.max_abs(fock.coeffs_to_fock(fcfg, sequence) - phi))
        coefficients = [symmetrize(random_tensor(rng, d, n)) for n in range(M + 1)]
        vector = fock.coeffs_to_fock(fcfg, coefficients)
        chaos_norm = sum(math.factorial(n) * float(np.sum(np.abs(c) ** 2)) for n, c in enumerate(coefficients))
        worst.update_max('Fock norm as chaos sum', abs(np.vdot(vector, vector).real - chaos_norm) / max(1.0, chaos_norm))
        recovered = fock.fock_to_coeffs(fcfg, vector)
        worst.update_max('coefficient round trip', max(fock.max_abs(a - b) for a, b in zip(recovered, coefficients)))

        gross_phi = fock.gross_laplacian(fcfg) @ phi
        low = fock.sector_of(fcfg) <= M - 2
        worst.update_max('Gross Laplacian on phi_xi', fock.max_abs((gross_phi - bilinear_pair(xi, xi) * phi)[low]))

    for name in sorted(worst):
        bound = 1e-13 if name == 'dGamma(K) - Xi_11(K)' else 1e-12
        rec.residual(name, worst[name], bound)

    rec.residual('Gamma(Id) = Id', fock.max_abs(fock.second_quantization(fcfg, np.eye(d)) - identity), 1e-13)
    number = fock.number_operator(fcfg)
    rec.residual('dGamma(Id) = N', fock.max_abs(fock.differential_second_quantization(fcfg, np.eye(d)) - number), 1e-13)
    rec.residual('N is diagonal with the sector', fock.max_abs(number - np.diag(fock.sector_of(fcfg))), 1e-13)
    squares = sum(a @ a for a in (fock.mode_annihilator(fcfg, i) for i in range(d)))
    rec.residual('Gross Laplacian = sum of a_i^2', fock.max_abs(fock.gross_laplacian(fcfg) - squares), 1e-13)
    rec.residual('Euler operator', fock.max_abs(wick.to_fock(fcfg, wick.euler(d)) - fock.euler_operator(fcfg)), 1e-13)
    rec.residual('phi_0 is the vacuum', fock.max_abs(fock.exponential_vector(fcfg, np.zeros(d)) - fock.vacuum(fcfg)), 1e-15)

    symmetric = random_kernel(rng, d, symmetry='symmetric')
    shifts = {
        'N': (fock.number_operator(fcfg), {0}),
        'Lambda(S)': (fock.conservation_op(fcfg, symmetric), {0}),
        'Gamma(T)': (fock.second_quantization(fcfg, symmetric), {0}),
        'dGamma(T)': (fock.differential_second_quantization(fcfg, symmetric), {0}),
        'Gross(S)': (fock.generalized_gross(fcfg, symmetric), {-2}),
        'a(f)': (fock.annihilation_op(fcfg, random_vector(rng, d)), {-1}),
        'a*(f)': (fock.creation_op(fcfg, random_vector(rng, d)), {1}),
    }
    for name, (matrix, expected) in shifts.items():
        rec.expect(f"{name} sector shift {sorted(expected)}", fock.sector_shifts(fcfg, matrix) == expected)


@suite('lie-structure', anchors=('five-dimensional-solvable', 'pure-annihilation-solvable', 'rotation-orbit-algebra'),
       needs=('S', 'zeta'), skew=True)
def lie_structure(cfg, rec):
    rng = cfg.rng('lie-structure')
    rounds, tolerance = cfg.max_rounds, cfg.tolerance

    base = analyse(liealg.closure(liealg.base_generators(REFERENCE_ZETA), rounds, tolerance=tolerance))
    record_analysis(rec, 'base', base)
    rec.equal('base dimension', base['dimension'], 5)
    rec.expect('base solvable', base['solvable'])
    rec.expect('base not nilpotent', not base['nilpotent'])

    kernels = [block_symmetrize(random_tensor(rng, 2, 2), 0), random_tensor(rng, 2, 3)]
    pure = analyse(liealg.closure(liealg.pure_annihilation_generators(kernels), rounds, tolerance=tolerance))
    record_analysis(rec, 'pure annihilation', pure)
    rec.equal('pure annihilation dimension', pure['dimension'], len(kernels) + 1)
    rec.expect('pure annihilation solvable', pure['solvable'])
    rec.expect('pure annihilation not nilpotent', not pure['nilpotent'])

    abelian = liealg.closure(
        [wick.make((0, 2), random_tensor(rng, 2, 2)), wick.make((0, 2), random_tensor(rng, 2, 2))], rounds,
        tolerance=tolerance,
    )
    rec.expect('commuting Gross operators nilpotent', liealg.is_nilpotent(abelian))

    generators = liealg.standard_generators(REFERENCE_S, REFERENCE_ZETA, ModeConfig(d=2, tolerance=tolerance))
    table = liealg.dimension_table('orbit algebra, S = [[0,1],[-1,0]], z = (1,0)', generators, rounds, tolerance)
    rec.dimension(table)
    rec.equal('orbit algebra realized dimension', table.realized, 8)
    rec.equal('orbit algebra formal dimension', table.formal, 9)
    basis = liealg.closure(generators, rounds, tolerance=tolerance)
    orbit = analyse(basis)
    record_analysis(rec, 'orbit algebra', orbit)
    rec.equal('orbit algebra derived series', orbit['derived'], [8, 6, 3, 0])
    rec.equal('orbit algebra lower central series', orbit['lower_central'], [8, 6, 6])
    rec.residual('structure constant antisymmetry', orbit['constants'].antisymmetry_residual(), 1e-9)
    rec.residual('Jacobi identity', orbit['constants'].jacobi_residual(), 1e-9)
    rec.equal('closure idempotent', liealg.closure(basis.elements, rounds, tolerance=tolerance).dimension, basis.dimension)

    mixing = rng.standard_normal((len(generators), len(generators))) + 1j * rng.standard_normal((len(generators), len(generators)))
    mixed = [wick.linear_combination(row, generators) for row in mixing]
    mixed_analysis = analyse(liealg.closure(mixed, rounds, tolerance=tolerance))
    rec.equal('mixed generators dimension', mixed_analysis['dimension'], orbit['dimension'])
    rec.expect('mixed generators verdicts', (mixed_analysis['solvable'], mixed_analysis['nilpotent']) == (True, False))

    configured = liealg.standard_generators(cfg.S, cfg.zeta, cfg.mode_config())
    table = liealg.dimension_table('orbit algebra, configured S and z', configured, rounds, tolerance)
    rec.dimension(table)
    configured = analyse(liealg.closure(configured, rounds, tolerance=tolerance))
    record_analysis(rec, 'configured orbit algebra', configured)
    rec.expect('configured orbit algebra solvable', configured['solvable'])
    rec.expect('configured orbit algebra not nilpotent', not configured['nilpotent'])


@suite('ideals', anchors=('ideals-contain-identity',), needs=('S', 'zeta'), seed=False, skew=True)
def ideals(cfg, rec):
    rounds, tolerance = cfg.max_rounds, cfg.tolerance
    d, S, zeta = cfg.d, cfg.S, cfg.zeta
    basis = liealg.closure(liealg.standard_generators(S, zeta, cfg.mode_config()), rounds, tolerance=tolerance)
    constants = liealg.StructureConstants.from_basis(basis)
    isotropic = abs(bilinear_pair(zeta, zeta)) <= tolerance
    S_zeta = S @ zeta
    orbit = liealg.orbit_vectors(S, zeta, cfg.orbit_cap, tolerance)
    cases = {}
    for k, vector in enumerate(orbit_powers(S, zeta, min(3, cfg.orbit_cap + 1))):
        # a(v) reaches Id through [a(v), a*(w)] = <v, w> Id for some orbit vector w
        degenerate = max(abs(bilinear_pair(vector, w)) for w in orbit) <= tolerance
        label = 'z' if k == 0 else f"S^{k} z"
        cases[f"a({label})"] = (wick.annihilator(vector), degenerate)
        cases[f"a*({label})"] = (wick.creator(vector), degenerate)
    cases.update({
        'N': (wick.number(d), isotropic),
        'Lambda(S)': (wick.conservation(S), abs(bilinear_pair(S_zeta, S_zeta)) <= tolerance),
        'Gross Laplacian': (wick.gross_laplacian(d), isotropic),
    })
    for name, (x, degenerate) in cases.items():
        ideal = liealg.ideal_closure(x, basis, constants)
        reached = liealg.contains_identity(ideal)
        rec.fact(f"ideal of {name} dimension", ideal.dimension)
        if degenerate:
            rec.fact(f"ideal of {name} contains Id", reached)
            rec.note(f"ideal of {name}: degenerate pairing, identity reached: {reached}")
        else:
            rec.expect(f"ideal of {name} contains Id", reached)

    reference = liealg.closure(
        liealg.standard_generators(REFERENCE_S, ISOTROPIC_ZETA, ModeConfig(d=2, tolerance=tolerance)),
        rounds, tolerance=tolerance,
    )
    ideal = liealg.ideal_closure(wick.annihilator(ISOTROPIC_ZETA), reference)
    reached = liealg.contains_identity(ideal)
    rec.fact('isotropic z = (1,-i): ideal of a(z) dimension', ideal.dimension)
    rec.fact('isotropic z = (1,-i): ideal of a(z) contains Id', reached)
    rec.note(f"isotropic z = (1,-i): <z,z> = 0, the ideal of a(z) has dimension {ideal.dimension}, identity reached: {reached}")

    formal = liealg.closure(liealg.standard_generators(S, zeta, cfg.mode_config()), rounds, liealg.FORMAL, tolerance)
    gross_S = wick.generalized_gross(S)
    if formal.contains(gross_S) and fock.max_abs(S) > tolerance:
        ideal = liealg.ideal_closure(gross_S, formal)
        rec.equal('formal ideal spanned by Gross(S) dimension', ideal.dimension, 1)
        rec.expect('formal ideal spanned by Gross(S) avoids Id', not liealg.contains_identity(ideal))


@suite('semisimple', anchors=('not-semisimple',), needs=('S', 'zeta'), seed=False, skew=True)
def semisimplicity(cfg, rec):
    rounds, tolerance = cfg.max_rounds, cfg.tolerance
    reference_mode = ModeConfig(d=2, tolerance=tolerance)
    algebras = {
        'base algebra': liealg.base_generators(REFERENCE_ZETA),
        'orbit algebra (reference)': liealg.standard_generators(REFERENCE_S, REFERENCE_ZETA, reference_mode),
        'orbit algebra (configured)': liealg.standard_generators(cfg.S, cfg.zeta, cfg.mode_config()),
        'fixed-point algebra': liealg.fixed_point_generators(FIXED_POINT_K, FIXED_POINT_L, REFERENCE_ZETA, tolerance),
    }
    for name, generators in algebras.items():
        basis = liealg.closure(generators, rounds, tolerance=tolerance)
        constants = liealg.StructureConstants.from_basis(basis)
        form = liealg.killing_form(basis, constants)
        rank = liealg.span_rank(form, tolerance)
        rec.fact(f"{name} Killing rank", rank)
        rec.fact(f"{name} dimension", basis.dimension)
        if basis.contains(wick.identity(basis.d)):
            identity = basis.coefficients(wick.identity(basis.d))
            ad_identity = np.einsum('i,ijk->jk', identity, constants.tensor)
            rec.residual(f"{name}: ad Id", fock.max_abs(ad_identity), 1e-9)
            rec.expect(f"{name}: Killing form degenerate", rank < basis.dimension)
            rec.expect(f"{name}: not semisimple", not liealg.is_semisimple(basis, constants))


@suite('fixed-point', anchors=('fixed-point-algebra',), needs=('K', 'L', 'zeta'), seed=False)
def fixed_point(cfg, rec):
    rounds, tolerance = cfg.max_rounds, cfg.tolerance
    constraints = liealg.fixed_point_constraints(cfg.K, cfg.L, cfg.zeta)
    for name, residual in constraints.items():
        rec.residual(name, residual, tolerance)
    rec.residual('L^2 = L', fock.max_abs(cfg.L @ cfg.L - cfg.L), tolerance)
    generators = liealg.fixed_point_generators(cfg.K, cfg.L, cfg.zeta, tolerance)
    table = liealg.dimension_table('fixed-point algebra', generators, rounds, tolerance)
    rec.dimension(table)
    basis = liealg.closure(generators, rounds, tolerance=tolerance)
    analysis = analyse(basis)
    record_analysis(rec, 'fixed-point', analysis)
    rec.equal('fixed-point dimension', analysis['dimension'], 6)
    rec.expect('fixed-point not solvable', not analysis['solvable'])
    rec.expect('fixed-point closed under adjoint', liealg.is_adjoint_closed(basis))


@suite('orbit', anchors=('orbit-finite-dimension',), needs=('S', 'zeta'), skew=True)
def orbits(cfg, rec):
    rng = cfg.rng('orbit')
    rounds, tolerance = cfg.max_rounds, cfg.tolerance
    for k in range(5):
        parity = power_parity(cfg.S, k, tolerance)
        rec.fact(f"S^{k} parity", parity)
        allowed = {'symmetric', 'zero'} if k % 2 == 0 else {'skew', 'zero'}
        rec.expect(f"S^{k} is {'symmetric' if k % 2 == 0 else 'skew'}", parity in allowed)
    rec.fact('configured orbit span', orbit_span_dim(cfg.S, cfg.zeta, cfg.orbit_cap, tolerance))

    eigen, eigenvalue = is_orbit_eigenvector(EIGEN_S, EIGEN_ZETA, 1, tolerance)
    rec.expect('z = (1,-i) is an eigenvector of S = [[0,i],[-i,0]]', eigen and abs(eigenvalue - 1) <= tolerance)
    generators = liealg.standard_generators(EIGEN_S, EIGEN_ZETA, ModeConfig(d=2, tolerance=tolerance))
    table = liealg.dimension_table('eigenvector orbit, S z = z', generators, rounds, tolerance)
    rec.dimension(table)
    rec.equal('eigenvector orbit realized dimension', table.realized, 6)
    rec.equal('eigenvector orbit formal dimension', table.formal, 7)

    real = rng.standard_normal((3, 3))
    skew = real - real.T
    zeta = random_vector(rng, 3)
    mode = ModeConfig(d=3, tolerance=tolerance, orbit_cap=cfg.orbit_cap)
    basis = liealg.closure(liealg.standard_generators(skew, zeta, mode), rounds, tolerance=tolerance)
    rec.fact('rank-2 skew S in 3 modes: closure dimension', basis.dimension)
    rec.expect('rank-2 skew S in 3 modes: orbit span at most 3', orbit_span_dim(skew, zeta, cfg.orbit_cap, tolerance) <= 3)
    rec.expect('rank-2 skew S in 3 modes: finite closure', basis.closed)


@suite('dual-impl', anchors=('wiener-ito-action',), gated=False)
def dual_implementation(cfg, rec):
    """apply_contraction on coefficients against build_xi on Fock vectors"""
    fcfg = cfg.fock_config()
    rng = cfg.rng('dual-impl')
    d, M = cfg.d, cfg.M
    signatures = [
        (l, m) for l in range(cfg.m_max + 1) for m in range(cfg.m_max + 1)
        if fock.supported_signature(l, m, cfg.m_max) and l + m <= M
    ]
    worst = 0.0
    cases = max(50, len(signatures))
    for case in range(cases):
        l, m = signatures[case % len(signatures)]
        kernel = random_tensor(rng, d, l + m)
        sequence = [symmetrize(random_tensor(rng, d, n)) / math.factorial(n) for n in range(M + 1)]
        output = fock.coeffs_to_fock(fcfg, fock.apply_contraction(fcfg, l, m, kernel, sequence))
        expected = fock.build_xi(fcfg, l, m, kernel) @ fock.coeffs_to_fock(fcfg, sequence)
        worst = max(worst, fock.max_abs(output - expected) / max(1.0, fock.max_abs(expected)))
    rec.fact('cases', cases)
    rec.fact('signatures', [list(sig) for sig in signatures])
    rec.residual('apply_contraction vs build_xi', worst, 1e-12)

    sequence = [symmetrize(random_tensor(rng, d, n)) for n in range(M + 1)]
    numbered = fock.apply_contraction(fcfg, 1, 1, np.eye(d), sequence)
    rec.residual('number operator scales sector n by n', max(
        fock.max_abs(numbered[n] - n * sequence[n]) for n in range(M + 1)), 1e-12)

    xi = random_vector(rng, d)
    xi = 0.5 * xi / np.linalg.norm(xi)
    sequence = [functools.reduce(np.multiply.outer, [xi] * n, np.array(1.0 + 0j)) / math.factorial(n) for n in range(M + 1)]
    contracted = fock.apply_contraction(fcfg, 0, 2, np.eye(d), sequence)
    rec.residual('Gross Laplacian on phi_xi coefficients', max(
        fock.max_abs(contracted[n] - bilinear_pair(xi, xi) * sequence[n]) for n in range(M - 1)), 1e-12)
