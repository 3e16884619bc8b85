# calculus/tests/test_liealg.py
import numpy as np
from django.test import SimpleTestCase
from hypothesis import assume, given, settings, strategies as st

from calculus import liealg, wick
from calculus.exceptions import ClosureError, PreconditionError, SkewnessError, SpanMembershipError
from calculus.modespace import ModeConfig, bilinear_pair, random_kernel, random_tensor, random_vector

ROTATION = np.array([[0, 1], [-1, 0]], dtype=complex)
ZETA = np.array([1, 0], dtype=complex)
PROJECTION = np.diag([1, 0]).astype(complex)
MODE = ModeConfig(d=2)
seeds = st.integers(min_value=0, max_value=2**32 - 1)


class CoordinateTests(SimpleTestCase):
    def test_rank(self):
        self.assertEqual(liealg.span_rank(np.zeros((3, 3))), 0)
        self.assertEqual(liealg.span_rank(np.array([[1, 0], [2, 0]])), 1)

    def test_skew_gross_in_each_mode(self):
        gross = wick.generalized_gross(ROTATION)
        _, realized = liealg.coordinates([gross], liealg.REALIZED)
        _, formal = liealg.coordinates([gross], liealg.FORMAL)
        self.assertEqual(liealg.span_rank(realized), 0)
        self.assertEqual(liealg.span_rank(formal), 1)

    def test_unflatten_round_trip(self):
        rng = np.random.default_rng(11)
        operator = wick.conservation(random_tensor(rng, 2, 2)) + wick.creator([1, 2])
        coordinatizer, rows = liealg.coordinates([operator])
        self.assertTrue(coordinatizer.unflatten(rows[0]).equals(operator))

    def test_signature_outside_layout(self):
        coordinatizer, _ = liealg.coordinates([wick.number(2)])
        with self.assertRaises(SpanMembershipError):
            coordinatizer.flatten(wick.gross_laplacian(2))

    def test_unknown_mode(self):
        with self.assertRaises(ValueError):
            liealg.Coordinatizer(2, [(1, 1)], mode='other')


class ClosureTests(SimpleTestCase):
    def test_base_algebra(self):
        basis = liealg.closure(liealg.base_generators(ZETA))
        self.assertEqual(basis.dimension, 5)
        self.assertEqual(liealg.derived_series(basis), [5, 4, 2, 0])
        self.assertEqual(liealg.lower_central_series(basis), [5, 4, 4])
        self.assertTrue(liealg.is_solvable(basis))
        self.assertFalse(liealg.is_nilpotent(basis))

    def test_pure_annihilation_algebra(self):
        rng = np.random.default_rng(12)
        kernels = [random_tensor(rng, 2, 2), random_tensor(rng, 2, 3)]
        basis = liealg.closure(liealg.pure_annihilation_generators(kernels))
        self.assertEqual(basis.dimension, 3)
        self.assertTrue(liealg.is_solvable(basis))
        self.assertFalse(liealg.is_nilpotent(basis))

    def test_commuting_operators_are_nilpotent(self):
        rng = np.random.default_rng(13)
        basis = liealg.closure([wick.make((0, 2), random_tensor(rng, 2, 2)) for _ in range(2)])
        self.assertTrue(liealg.is_nilpotent(basis))

    def test_rotation_orbit_algebra(self):
        generators = liealg.standard_generators(ROTATION, ZETA, MODE)
        table = liealg.dimension_table('rotation', generators)
        self.assertEqual((table.realized, table.formal), (8, 9))
        self.assertEqual(len(table.notes), 1)
        basis = liealg.closure(generators)
        self.assertEqual(liealg.derived_series(basis), [8, 6, 3, 0])
        self.assertEqual(liealg.lower_central_series(basis), [8, 6, 6])

    def test_eigenvector_orbit(self):
        S = np.array([[0, 1j], [-1j, 0]])
        table = liealg.dimension_table('eigen', liealg.standard_generators(S, [1, -1j], MODE))
        self.assertEqual((table.realized, table.formal), (6, 7))

    def test_idempotent(self):
        basis = liealg.closure(liealg.standard_generators(ROTATION, ZETA, MODE))
        self.assertEqual(liealg.closure(basis.elements).dimension, basis.dimension)

    @given(seeds)
    @settings(max_examples=5, deadline=None)
    def test_generator_mixing(self, seed):
        rng = np.random.default_rng(seed)
        generators = liealg.base_generators(ZETA)
        mixing = rng.standard_normal((5, 5)) + 1j * rng.standard_normal((5, 5))
        mixed = [wick.linear_combination(row, generators) for row in mixing]
        basis = liealg.closure(mixed)
        self.assertEqual(basis.dimension, 5)
        self.assertTrue(liealg.is_solvable(basis))

    def test_round_limit(self):
        with self.assertRaises(ClosureError):
            liealg.closure([wick.creator(ZETA), wick.gross_laplacian(2)], max_rounds=1)

    def test_generator_preconditions(self):
        with self.assertRaises(SkewnessError):
            liealg.standard_generators(np.eye(2), ZETA, MODE)
        with self.assertRaises(PreconditionError):
            liealg.standard_generators(ROTATION, [0, 0], MODE)


class StructureTests(SimpleTestCase):
    def setUp(self):
        self.basis = liealg.closure(liealg.standard_generators(ROTATION, ZETA, MODE))
        self.constants = liealg.StructureConstants.from_basis(self.basis)

    def test_residuals(self):
        self.assertLessEqual(self.constants.antisymmetry_residual(), 1e-9)
        self.assertLessEqual(self.constants.jacobi_residual(), 1e-9)

    def test_not_semisimple(self):
        form = liealg.killing_form(self.basis, self.constants)
        self.assertLess(liealg.span_rank(form), self.basis.dimension)
        self.assertFalse(liealg.is_semisimple(self.basis, self.constants))

    def test_membership(self):
        self.assertTrue(self.basis.contains(wick.identity(2)))
        self.assertFalse(self.basis.contains(wick.creator([0, 0]) + wick.make((2, 0), np.eye(2))))
        with self.assertRaises(SpanMembershipError):
            self.basis.coefficients(wick.make((2, 0), np.eye(2)))


class IdealTests(SimpleTestCase):
    def test_ideals_contain_identity(self):
        basis = liealg.closure(liealg.standard_generators(ROTATION, ZETA, MODE))
        for x in (wick.annihilator(ZETA), wick.creator(ZETA), wick.number(2), wick.conservation(ROTATION),
                  wick.gross_laplacian(2)):
            with self.subTest(x=x):
                self.assertTrue(liealg.contains_identity(liealg.ideal_closure(x, basis)))

    @given(seeds)
    @settings(max_examples=5, deadline=None)
    def test_orbit_ladder_ideals_contain_identity(self, seed):
        rng = np.random.default_rng(seed)
        S, zeta = random_kernel(rng, 2, symmetry='skew'), random_vector(rng, 2)
        powers = [zeta, S @ zeta, S @ S @ zeta]
        assume(all(max(abs(bilinear_pair(v, w)) for w in powers) > 1e-3 for v in powers))
        basis = liealg.closure(liealg.standard_generators(S, zeta, MODE))
        constants = liealg.StructureConstants.from_basis(basis)
        for k, vector in enumerate(powers):
            for x in (wick.annihilator(vector), wick.creator(vector)):
                ideal = liealg.ideal_closure(x, basis, constants)
                self.assertTrue(liealg.contains_identity(ideal), msg=f"k={k}, dimension {ideal.dimension}")

    def test_isotropic_direction(self):
        zeta = np.array([1, -1j])
        basis = liealg.closure(liealg.standard_generators(ROTATION, zeta, MODE))
        ideal = liealg.ideal_closure(wick.annihilator(zeta), basis)
        self.assertEqual(ideal.dimension, 1)
        self.assertFalse(liealg.contains_identity(ideal))

    def test_formal_gross_ideal(self):
        basis = liealg.closure(liealg.standard_generators(ROTATION, ZETA, MODE), mode=liealg.FORMAL)
        ideal = liealg.ideal_closure(wick.generalized_gross(ROTATION), basis)
        self.assertEqual(ideal.dimension, 1)
        self.assertFalse(liealg.contains_identity(ideal))


class FixedPointTests(SimpleTestCase):
    def test_constraints(self):
        residuals = liealg.fixed_point_constraints(PROJECTION, PROJECTION, ZETA)
        self.assertEqual(len(residuals), 7)
        self.assertTrue(all(value == 0.0 for value in residuals.values()))

    def test_algebra(self):
        basis = liealg.closure(liealg.fixed_point_generators(PROJECTION, PROJECTION, ZETA))
        self.assertEqual(basis.dimension, 6)
        self.assertFalse(liealg.is_solvable(basis))
        self.assertTrue(liealg.is_adjoint_closed(basis))

    def test_violated_constraint(self):
        with self.assertRaises(PreconditionError) as raised:
            liealg.fixed_point_generators(PROJECTION, PROJECTION, [0, 1])
        self.assertIn(raised.exception.constraint, ('conj(K zeta) = zeta', 'L zeta = zeta'))
