# calculus/tests/test_modespace.py
import numpy as np
from django.test import SimpleTestCase
from hypothesis import given, settings, strategies as st
from numpy.testing import assert_allclose

from calculus.exceptions import DimensionMismatchError, InvalidConfigError
from calculus.modespace import (
    ModeConfig,
    bilinear_pair,
    block_symmetrize,
    content,
    convolve,
    is_orbit_eigenvector,
    is_skew,
    is_symmetric,
    multisets,
    orbit,
    orbit_span_dim,
    power_parity,
    random_kernel,
    random_tensor,
    random_vector,
    symmetrize,
    symmetry_deviation,
    transpose,
)

ROTATION = np.array([[0, 1], [-1, 0]], dtype=complex)
seeds = st.integers(min_value=0, max_value=2**32 - 1)
dims = st.integers(min_value=1, max_value=4)


class ModeConfigTests(SimpleTestCase):
    def test_defaults(self):
        cfg = ModeConfig()
        self.assertEqual((cfg.d, cfg.tolerance, cfg.orbit_cap), (2, 1e-10, 8))

    def test_invalid_values(self):
        for kwargs in ({'d': 0}, {'tolerance': -1.0}, {'orbit_cap': 0}):
            with self.subTest(**kwargs), self.assertRaises(InvalidConfigError):
                ModeConfig(**kwargs)


class PairingTests(SimpleTestCase):
    def test_orthonormal_basis(self):
        self.assertEqual(bilinear_pair([1, 0], [1, 0]), 1)

    def test_isotropic_vector(self):
        self.assertEqual(bilinear_pair([1, -1j], [1, -1j]), 0)

    def test_no_conjugation(self):
        self.assertEqual(bilinear_pair([1, 2], [3, -1]), 1)
        self.assertEqual(bilinear_pair([1j], [1j]), -1)

    def test_length_mismatch(self):
        with self.assertRaises(DimensionMismatchError):
            bilinear_pair([1, 0], [1, 0, 0])


class KernelTests(SimpleTestCase):
    def test_identity_is_unit(self):
        kappa = np.array([[1, 2], [3, 4]], dtype=complex)
        assert_allclose(convolve(np.eye(2), kappa), kappa)
        assert_allclose(convolve(kappa, np.eye(2)), kappa)

    def test_zero(self):
        assert_allclose(convolve(ROTATION, np.zeros((2, 2))), np.zeros((2, 2)))

    def test_rotation_squared(self):
        assert_allclose(convolve(ROTATION, ROTATION), -np.eye(2))

    def test_mismatched_shapes(self):
        with self.assertRaises(DimensionMismatchError):
            convolve(np.eye(2), np.eye(3))

    def test_skew_predicates(self):
        self.assertTrue(is_skew(ROTATION))
        self.assertTrue(is_skew(np.array([[0, 1j], [-1j, 0]])))
        self.assertFalse(is_skew(np.eye(2)))
        self.assertTrue(is_symmetric(np.eye(2)))
        self.assertFalse(is_symmetric(ROTATION))

    @given(seeds, dims)
    @settings(max_examples=25, deadline=None)
    def test_transpose_reverses_convolution(self, seed, d):
        rng = np.random.default_rng(seed)
        a, b, c = (random_kernel(rng, d) for _ in range(3))
        assert_allclose(transpose(transpose(a)), a)
        assert_allclose(transpose(convolve(a, b)), convolve(transpose(b), transpose(a)), atol=1e-12)
        assert_allclose(convolve(convolve(a, b), c), convolve(a, convolve(b, c)), atol=1e-12)

    @given(seeds, dims)
    @settings(max_examples=25, deadline=None)
    def test_skew_pairing(self, seed, d):
        rng = np.random.default_rng(seed)
        S = random_kernel(rng, d, symmetry='skew')
        xi, eta = random_vector(rng, d), random_vector(rng, d)
        self.assertAlmostEqual(bilinear_pair(S @ xi, eta), -bilinear_pair(xi, S @ eta), places=12)
        self.assertAlmostEqual(abs(bilinear_pair(xi, S @ xi)), 0.0, places=12)


class OrbitTests(SimpleTestCase):
    def test_rotation_orbit(self):
        vectors = orbit(ROTATION, [1, 0], 2)
        assert_allclose(np.array(vectors), [[1, 0], [0, -1], [-1, 0]])

    def test_zero_operator(self):
        vectors = orbit(np.zeros((2, 2)), [1, 0], 2)
        self.assertEqual(len(vectors), 3)
        assert_allclose(vectors[1], [0, 0])
        self.assertEqual(orbit_span_dim(np.zeros((2, 2)), [1, 0], 2), 1)

    def test_eigenvector_orbit(self):
        S = np.array([[0, 1j], [-1j, 0]])
        zeta = np.array([1, -1j])
        first, second = orbit(S, zeta, 1)
        assert_allclose(first, second)
        self.assertEqual(orbit_span_dim(S, zeta, 4), 1)
        self.assertEqual(is_orbit_eigenvector(S, zeta), (True, 1 + 0j))

    def test_rotation_span(self):
        self.assertEqual(orbit_span_dim(ROTATION, [1, 0], 4), 2)
        self.assertEqual(is_orbit_eigenvector(ROTATION, [1, 0]), (False, None))

    @given(seeds, dims, st.integers(min_value=0, max_value=5))
    @settings(max_examples=25, deadline=None)
    def test_span_bound(self, seed, d, kmax):
        rng = np.random.default_rng(seed)
        S = random_kernel(rng, d, symmetry='skew')
        zeta = random_vector(rng, d)
        bound = min(kmax + 1, np.linalg.matrix_rank(S) + 1, d)
        self.assertLessEqual(orbit_span_dim(S, zeta, kmax), bound)

    def test_power_parity(self):
        expected = ['symmetric', 'skew', 'symmetric', 'skew', 'symmetric']
        self.assertEqual([power_parity(ROTATION, k) for k in range(5)], expected)
        self.assertEqual(power_parity(np.zeros((2, 2)), 1), 'zero')
        self.assertEqual(power_parity(np.array([[1, 2], [0, 1]]), 1), 'neither')


class TensorTests(SimpleTestCase):
    def test_symmetrize(self):
        rng = np.random.default_rng(5)
        tensor = random_tensor(rng, 3, 3)
        self.assertGreater(symmetry_deviation(tensor), 1e-3)
        self.assertLess(symmetry_deviation(symmetrize(tensor)), 1e-14)

    def test_block_symmetrize(self):
        rng = np.random.default_rng(6)
        tensor = block_symmetrize(random_tensor(rng, 2, 3), 1)
        assert_allclose(tensor, np.transpose(tensor, (0, 2, 1)), atol=1e-14)

    def test_multisets(self):
        self.assertEqual(
            list(multisets(2, 2)),
            [((2, 0), (0, 0), 1), ((1, 1), (0, 1), 2), ((0, 2), (1, 1), 1)],
        )

    def test_content(self):
        self.assertEqual(content((0, 1, 1), 2), (1, 2))
