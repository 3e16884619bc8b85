# verification/tests/test_suites.py
import numpy as np
from django.test import SimpleTestCase

from verification import suites
from verification.anchors import ANCHORS
from verification.config import RunConfig
from verification.runner import run_suite
from verification.suites import FAIL, FLAGGED, GATE, PASS, SUITES, SuiteRecorder


def small_config(**overrides):
    values = dict(
        d=2,
        M=6,
        seed=5,
        samples=3,
        S=suites.REFERENCE_S,
        zeta=suites.REFERENCE_ZETA,
        K=suites.FIXED_POINT_K,
        L=suites.FIXED_POINT_L,
    )
    values.update(overrides)
    return RunConfig(**values)


class RegistryTests(SimpleTestCase):
    def test_every_statement_is_exercised(self):
        covered = {anchor for definition in SUITES.values() for anchor in definition.anchors}
        self.assertEqual(covered, set(ANCHORS))

    def test_gate_runs_first(self):
        self.assertEqual(next(iter(SUITES)), GATE)
        self.assertFalse(SUITES[GATE].gated)
        self.assertFalse(SUITES['dual-impl'].gated)

    def test_unknown_anchor(self):
        with self.assertRaisesMessage(ValueError, "unknown anchors"):
            suites.suite('bogus', anchors=('no-such-statement',))

    def test_requirements(self):
        self.assertEqual(SUITES['fixed-point'].needs, ('K', 'L', 'zeta'))
        self.assertTrue(SUITES['rotation'].needs_skew)
        self.assertFalse(SUITES['ideals'].needs_seed)


class RecorderTests(SimpleTestCase):
    def test_pass(self):
        rec = SuiteRecorder('example', ('kernel-theorem',))
        rec.residual('small', 1e-14, 1e-12)
        rec.exceeds('control', 0.5, 0.1)
        rec.expect('holds', True)
        rec.equal('dimension', 5, 5)
        result = rec.result(0.25)
        self.assertEqual(result.status, PASS)
        self.assertEqual(result.residuals, {'small': 1e-14, 'control': 0.5})
        self.assertEqual(result.facts, {'dimension': 5})
        self.assertEqual([check['kind'] for check in result.checks], ['max', 'min', 'bool', 'equal'])
        self.assertEqual(result.wall_time, 0.25)

    def test_flag(self):
        rec = SuiteRecorder('example')
        rec.residual('small', 0.0, 1e-12)
        rec.flag('sign differs')
        self.assertEqual(rec.status, FLAGGED)
        self.assertEqual(rec.notes, ['flagged: sign differs'])

    def test_failure_wins(self):
        rec = SuiteRecorder('example')
        rec.flag('sign differs')
        rec.residual('large', 1.0, 1e-12)
        self.assertEqual(rec.status, FAIL)
        self.assertTrue(rec.result().failed)
        self.assertFalse(rec.checks[0]['ok'])

    def test_negative_control_fails_when_small(self):
        rec = SuiteRecorder('example')
        rec.exceeds('control', 0.01, 0.1)
        self.assertEqual(rec.status, FAIL)


class SuiteRunTests(SimpleTestCase):
    """Each suite on a two-mode truncation with few random samples"""

    def run_named(self, name, **overrides):
        return run_suite(SUITES[name], small_config(**overrides))

    def assertPassed(self, result):
        failed = [check['name'] for check in result.checks if not check['ok']]
        self.assertEqual(result.status, PASS, msg=f"{result.name}: {failed} {result.notes}")

    def test_gate(self):
        result = self.run_named(GATE)
        self.assertPassed(result)
        self.assertGreater(result.facts['signature pairs'], 0)
        self.assertGreater(result.facts['bracket-only pairs'], 0)

    def test_gate_family_covers_low_signatures(self):
        expected = {(l, m) for l in range(5) for m in range(5) if 0 < l + m <= 4}
        self.assertEqual(set(suites.GATE_FAMILY), expected)
        self.assertEqual(len(suites.GATE_FAMILY), len(expected))

    def test_gate_with_narrow_guard(self):
        result = self.run_named(GATE, guard=2)
        self.assertPassed(result)
        self.assertLess(result.facts['signature pairs'], self.run_named(GATE).facts['signature pairs'])

    def test_canonical_commutation_relations(self):
        result = self.run_named('ccr')
        self.assertPassed(result)
        self.assertAlmostEqual(result.facts['unguarded top-sector defect'], 7.0)

    def test_basic_relations(self):
        self.assertPassed(self.run_named('relations'))

    def test_kernel_commutators(self):
        self.assertPassed(self.run_named('kernel-commutators'))

    def test_orbit_commutations_flag_signs(self):
        result = self.run_named('commutations')
        self.assertEqual(result.status, FLAGGED)
        self.assertTrue(all(check['ok'] for check in result.checks))
        self.assertEqual(len([note for note in result.notes if note.startswith('flagged')]), 2)

    def test_white_noise_derivatives(self):
        result = self.run_named('qwn')
        self.assertEqual(result.status, FLAGGED)
        self.assertLessEqual(result.residuals['direct commutator sign'], 1e-10)
        self.assertLessEqual(result.residuals['D^k+ Lambda(S)'], 1e-10)

    def test_rotation(self):
        result = self.run_named('rotation')
        self.assertPassed(result)
        self.assertGreater(result.residuals['a(z) conjugation (negative control)'], 0.1)

    def test_rotation_with_complex_generator(self):
        result = self.run_named('rotation', S=suites.EIGEN_S, zeta=suites.EIGEN_ZETA)
        self.assertNotIn('orthogonality', result.residuals)
        self.assertIn('S has complex entries: orthogonality and unitarity checks skipped', result.notes)

    def test_rotation_with_empty_theta_grid(self):
        result = self.run_named('rotation', theta_grid=())
        self.assertEqual(result.status, FAIL)
        self.assertEqual(result.notes, ['InvalidConfigError: theta grid must not be empty'])

    def test_second_quantization(self):
        self.assertPassed(self.run_named('second-quantization'))

    def test_lie_structure(self):
        result = self.run_named('lie-structure')
        self.assertPassed(result)
        self.assertEqual(result.facts['base dimension'], 5)
        self.assertEqual(result.facts['base derived'], [5, 4, 2, 0])
        self.assertEqual(result.facts['orbit algebra lower central'], [8, 6, 6])
        self.assertEqual([table['realized'] for table in result.dimensions], [8, 8])

    def test_ideals(self):
        result = self.run_named('ideals')
        self.assertPassed(result)
        self.assertEqual(result.facts['isotropic z = (1,-i): ideal of a(z) dimension'], 1)
        self.assertIs(result.facts['isotropic z = (1,-i): ideal of a(z) contains Id'], False)
        checked = {check['name'] for check in result.checks}
        for k in (1, 2):
            self.assertIn(f"ideal of a(S^{k} z) contains Id", checked)
            self.assertIn(f"ideal of a*(S^{k} z) contains Id", checked)

    def test_ideals_with_isotropic_direction(self):
        result = self.run_named('ideals', zeta=suites.ISOTROPIC_ZETA)
        self.assertPassed(result)
        self.assertEqual(result.facts['ideal of a(z) dimension'], 1)
        self.assertIn('ideal of a(z) contains Id', result.facts)
        self.assertEqual(result.facts['ideal of a(S^2 z) dimension'], 1)
        self.assertIs(result.facts['ideal of a(S^1 z) contains Id'], False)

    def test_semisimple(self):
        result = self.run_named('semisimple')
        self.assertPassed(result)
        self.assertLess(result.facts['base algebra Killing rank'], result.facts['base algebra dimension'])

    def test_fixed_point(self):
        result = self.run_named('fixed-point')
        self.assertPassed(result)
        self.assertEqual(result.dimensions[0]['realized'], 6)

    def test_fixed_point_with_violated_constraint(self):
        result = self.run_named('fixed-point', zeta=np.array([0, 1], dtype=complex))
        self.assertEqual(result.status, FAIL)

    def test_orbit(self):
        result = self.run_named('orbit')
        self.assertPassed(result)
        self.assertEqual(result.facts['S^1 parity'], 'skew')
        self.assertEqual(result.facts['configured orbit span'], 2)

    def test_dual_implementation(self):
        result = self.run_named('dual-impl')
        self.assertPassed(result)
        self.assertGreaterEqual(result.facts['cases'], 50)
