# calculus/tests/test_rotgrp.py
import math

import numpy as np
from django.test import SimpleTestCase
from hypothesis import given, settings, strategies as st
from numpy.testing import assert_allclose

from calculus import fock, rotgrp
from calculus.exceptions import InvalidConfigError, SkewnessError
from calculus.modespace import ModeConfig

CFG = fock.FockConfig(ModeConfig(d=2), M=6)
ROTATION = np.array([[0, 1], [-1, 0]], dtype=float)
thetas = st.floats(min_value=-1.0, max_value=1.0, allow_nan=False)


class FlowSpecTests(SimpleTestCase):
    def test_valid(self):
        spec = rotgrp.FlowSpec.of(ROTATION)
        assert_allclose(spec.generator, ROTATION)
        self.assertEqual(spec.thetas, (-0.3, -0.1, 0.1, 0.3))
        self.assertEqual((spec.steps, spec.h), (3, 0.1))

    def test_invalid(self):
        with self.assertRaises(SkewnessError):
            rotgrp.FlowSpec.of(np.eye(2))
        with self.assertRaises(InvalidConfigError):
            rotgrp.FlowSpec.of(ROTATION, thetas=())
        with self.assertRaises(InvalidConfigError):
            rotgrp.FlowSpec.of(ROTATION, steps=0)
        with self.assertRaises(InvalidConfigError):
            rotgrp.FlowSpec.of(ROTATION, h=0.0)

    def test_drives_finite_differences(self):
        spec = rotgrp.FlowSpec.of(ROTATION, steps=2, h=0.2)
        errors = rotgrp.finite_difference_errors(CFG, spec.generator, spec.h, spec.steps)
        self.assertEqual(len(errors), spec.steps + 1)


class OneParticleTests(SimpleTestCase):
    def test_plane_rotation(self):
        theta = 0.3
        expected = [[math.cos(theta), math.sin(theta)], [-math.sin(theta), math.cos(theta)]]
        assert_allclose(rotgrp.one_particle_flow(ROTATION, theta), expected, atol=1e-14)

    @given(thetas, thetas)
    @settings(max_examples=25, deadline=None)
    def test_flow_property(self, first, second):
        self.assertLessEqual(rotgrp.flow_property_residual(ROTATION, first, second), 1e-12)
        self.assertLessEqual(rotgrp.orthogonality_residual(ROTATION, first), 1e-12)

    def test_unitarity(self):
        g = rotgrp.one_particle_flow(ROTATION, 0.7)
        self.assertLessEqual(rotgrp.unitarity_residual(CFG, g), 1e-12)


class GeneratorTests(SimpleTestCase):
    def test_generator_identity(self):
        residuals = rotgrp.generator_identity_check(CFG, ROTATION)
        self.assertLessEqual(residuals.exact, 1e-13)
        self.assertLessEqual(residuals.flow, 1e-10)
        self.assertEqual(sorted(residuals.per_theta), [-0.3, -0.1, 0.1, 0.3])

    def test_finite_differences_are_first_order(self):
        errors = rotgrp.finite_difference_errors(CFG, ROTATION, h=0.1, steps=3)
        self.assertEqual(len(errors), 4)
        for earlier, later in zip(errors, errors[1:]):
            self.assertAlmostEqual(later / earlier, 0.5, delta=0.15)


class InvarianceTests(SimpleTestCase):
    def test_invariant_operators(self):
        for name, matrix in (
            ('number', fock.number_operator(CFG)),
            ('gross', fock.gross_laplacian(CFG)),
            ('euler', fock.euler_operator(CFG)),
        ):
            for theta in (-0.3, 0.1, 0.3):
                with self.subTest(operator=name, theta=theta):
                    residuals = rotgrp.rotation_invariance_check(CFG, matrix, ROTATION, theta)
                    self.assertLessEqual(residuals.conjugation, 1e-11)
        residuals = rotgrp.rotation_invariance_check(CFG, fock.number_operator(CFG), ROTATION, 0.3)
        self.assertLessEqual(residuals.commutator, 1e-11)

    def test_annihilator_is_not_invariant(self):
        residuals = rotgrp.rotation_invariance_check(CFG, fock.annihilation_op(CFG, [1, 0]), ROTATION, 0.5)
        self.assertGreater(residuals.conjugation, 0.1)
        self.assertFalse(residuals.invariant <= 1e-11)
