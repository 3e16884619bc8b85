# verification/tests/test_runner.py
import dataclasses
import json
import tempfile
from io import StringIO
from pathlib import Path
from unittest.mock import patch

import numpy as np
from django.core.management import call_command
from django.core.management.base import CommandError
from django.test import SimpleTestCase, TestCase

from verification import suites
from verification.config import RunConfig
from verification.models import VerificationRun
from verification.reports import ReportError, emit_report, load_report, render
from verification.runner import rounded, run_suites, select_suites
from verification.suites import FAIL, GATE, PASS, SUITES

CONFIG = {
    'd': 2,
    'M': 5,
    'seed': 11,
    'samples': 2,
    'S': [[0, 1], [-1, 0]],
    'zeta': [1, 0],
    'K': [[1, 0], [0, 0]],
    'L': [[1, 0], [0, 0]],
    'suites': ['ccr', 'dual-impl'],
}


def broken_gate(cfg, rec):
    rec.residual('product vs Fock', 1.0, 1e-10)


def failing_gate():
    return patch.dict(SUITES, {GATE: dataclasses.replace(SUITES[GATE], function=broken_gate)})


class TemporaryDirectoryMixin:
    def setUp(self):
        super().setUp()
        self.directory = tempfile.TemporaryDirectory()
        self.addCleanup(self.directory.cleanup)

    def path(self, name):
        return Path(self.directory.name) / name

    def write_config(self, **overrides):
        path = self.path('config.json')
        path.write_text(json.dumps(dict(CONFIG, **overrides)))
        return str(path)


class RunnerTests(SimpleTestCase):
    def config(self, **overrides):
        values = dict(d=2, M=5, seed=11, samples=2, S=suites.REFERENCE_S, zeta=suites.REFERENCE_ZETA,
                      suites=('ccr', 'dual-impl'))
        values.update(overrides)
        return RunConfig(**values)

    def test_selection_adds_gate(self):
        self.assertEqual(select_suites(['relations']), [GATE, 'relations'])
        self.assertEqual(select_suites(['dual-impl']), ['dual-impl'])
        self.assertEqual(select_suites(None), list(SUITES))

    def test_report_is_deterministic(self):
        cfg = self.config()
        first = emit_report(run_suites(cfg))
        second = emit_report(run_suites(cfg, jobs=2))
        self.assertEqual(first, second)
        data = json.loads(first)
        self.assertEqual([entry['name'] for entry in data['suites']], [GATE, 'ccr', 'dual-impl'])
        self.assertEqual(data['status'], PASS)
        self.assertEqual(data['config_digest'], cfg.digest())
        self.assertNotIn('wall_time', data['suites'][0])

    def test_timings_on_request(self):
        data = run_suites(self.config(suites=('dual-impl',))).as_dict(include_timings=True)
        self.assertGreater(data['suites'][0]['wall_time'], 0.0)

    def test_failed_gate_blocks_dependents(self):
        with failing_gate():
            report = run_suites(self.config())
        self.assertEqual(report.result(GATE).status, FAIL)
        self.assertEqual(report.result('ccr').status, FAIL)
        self.assertEqual(report.result('ccr').notes, ['wick gate failed'])
        self.assertEqual(report.result('ccr').checks, [])
        self.assertEqual(report.result('dual-impl').status, PASS)
        self.assertEqual(report.exit_code, 1)
        self.assertEqual(report.failed, [GATE, 'ccr'])

    def test_non_skew_operator_fails_only_dependent_suites(self):
        report = run_suites(self.config(S=np.eye(2, dtype=complex), suites=('ccr', 'rotation')))
        self.assertEqual(report.result('rotation').status, FAIL)
        self.assertTrue(any('SkewnessError' in note for note in report.result('rotation').notes))
        self.assertEqual(report.result('ccr').status, PASS)
        self.assertEqual(report.failed, ['rotation'])

    def test_unknown_result(self):
        with self.assertRaises(KeyError):
            run_suites(self.config(suites=('dual-impl',))).result('ccr')

    def test_rounding(self):
        self.assertEqual(rounded(np.float64(1.23456789e-11)), 1.234568e-11)
        self.assertEqual(rounded({'a': [np.int64(3), np.bool_(True)]}), {'a': [3, True]})
        self.assertEqual(rounded(float('inf')), float('inf'))


class ReportRenderingTests(TemporaryDirectoryMixin, SimpleTestCase):
    def setUp(self):
        super().setUp()
        cfg = RunConfig(d=2, M=4, seed=3, samples=2, suites=('dual-impl',))
        self.report = run_suites(cfg)

    def test_markdown(self):
        text = emit_report(self.report, format='markdown', include_timings=True)
        self.assertIn('Status: **pass**', text)
        self.assertIn('## Statements exercised', text)
        self.assertIn('| wiener-ito-action |', text)
        self.assertIn('## Wall times', text)
        self.assertNotIn('&#x27;', text)

    def test_written_report_loads(self):
        path = self.path('report.json')
        self.assertIsNone(emit_report(self.report, path))
        self.assertEqual(load_report(path), json.loads(json.dumps(self.report.as_dict())))

    def test_unknown_format(self):
        with self.assertRaises(ValueError):
            render(self.report.as_dict(), 'html')

    def test_malformed_report(self):
        path = self.path('other.json')
        path.write_text('{"status": "pass"}')
        with self.assertRaisesMessage(ReportError, "missing config, config_digest, suites"):
            load_report(path)
        path.write_text('{')
        with self.assertRaisesMessage(ReportError, ":1:2:"):
            load_report(path)


class VerifyCommandTests(TemporaryDirectoryMixin, TestCase):
    def call(self, *args):
        stdout, stderr = StringIO(), StringIO()
        call_command('verify', *args, stdout=stdout, stderr=stderr, no_color=True)
        return stdout.getvalue(), stderr.getvalue()

    def test_report_to_stdout(self):
        stdout, stderr = self.call('--config', self.write_config())
        self.assertEqual(json.loads(stdout)['status'], PASS)
        self.assertIn('ccr: pass', stderr)

    def test_report_to_file_and_store(self):
        out = self.path('report.json')
        stdout, stderr = self.call('--config', self.write_config(), '--suite', 'dual-impl', '--out', str(out), '--store')
        self.assertEqual(stdout, '')
        self.assertIn('Stored run', stderr)
        data = load_report(out)
        self.assertEqual([entry['name'] for entry in data['suites']], ['dual-impl'])
        run = VerificationRun.objects.get()
        self.assertEqual(run.report, data)
        self.assertEqual(run.seed, 11)

    def test_invalid_config(self):
        with self.assertRaises(CommandError) as raised:
            self.call('--config', self.write_config(S=[[1, 0], [0, 1]], suites=['rotation']))
        self.assertEqual(raised.exception.returncode, 2)
        self.assertIn('skew-symmetric', str(raised.exception))

    def test_failed_suite(self):
        with failing_gate(), self.assertRaises(CommandError) as raised:
            self.call('--config', self.write_config(suites=['ccr']))
        self.assertEqual(raised.exception.returncode, 1)
        self.assertIn('wick-gate, ccr', str(raised.exception))

    def test_markdown_format(self):
        stdout, _ = self.call('--config', self.write_config(suites=['dual-impl']), '--format', 'markdown')
        self.assertTrue(stdout.startswith('# Verification report'))


class ReportCommandTests(TemporaryDirectoryMixin, TestCase):
    def setUp(self):
        super().setUp()
        self.report = run_suites(RunConfig(d=2, M=4, seed=3, samples=2, suites=('dual-impl',)))

    def test_from_file(self):
        path = self.path('report.json')
        emit_report(self.report, path)
        stdout = StringIO()
        call_command('report', '--in', str(path), stdout=stdout)
        self.assertIn('| dual-impl | pass |', stdout.getvalue())

    def test_from_database(self):
        run = VerificationRun.record(self.report)
        out = self.path('report.json')
        call_command('report', '--run', str(run.pk), '--format', 'json', '--out', str(out), stderr=StringIO())
        self.assertEqual(json.loads(out.read_text()), run.report)

    def test_missing_run(self):
        with self.assertRaises(CommandError) as raised:
            call_command('report', '--run', '999')
        self.assertEqual(raised.exception.returncode, 2)


class ClosureCommandTests(TemporaryDirectoryMixin, SimpleTestCase):
    def test_dimensions(self):
        stdout = StringIO()
        call_command('closure', '--config', self.write_config(), stdout=stdout)
        output = stdout.getvalue()
        self.assertIn('base (Id, a, a*, N, Gross)', output)
        self.assertIn('derived series:       [5, 4, 2, 0]', output)
        self.assertIn('formal dimension:     9', output)
        self.assertIn('realized dimension:   8', output)
        self.assertIn('lower central series: [8, 6, 6]', output)
        self.assertIn('realized dimension:   6', output)

    def test_no_direction(self):
        config = dict(CONFIG, suites=['ccr'])
        del config['zeta']
        path = self.path('nozeta.json')
        path.write_text(json.dumps(config))
        with self.assertRaises(CommandError) as raised:
            call_command('closure', '--config', str(path), stdout=StringIO())
        self.assertEqual(raised.exception.returncode, 2)
