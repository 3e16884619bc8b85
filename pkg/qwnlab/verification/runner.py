# verification/runner.py
"""Run the selected suites for a RunConfig and collect a report."""
import logging
import math
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np
from django.conf import settings

from .suites import FAIL, FLAGGED, GATE, PASS, SUITES, SuiteRecorder, SuiteResult

logger = logging.getLogger(__name__)


def rounded(value):
    """Floats to six significant digits, recursively; numpy scalars to Python"""
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, (float, np.floating)):
        value = float(value)
        return value if not math.isfinite(value) else float(f"{value:.6e}")
    if isinstance(value, dict):
        return {str(key): rounded(item) for key, item in value.items()}
    if isinstance(value, (list, tuple)):
        return [rounded(item) for item in value]
    return value


@dataclass
class VerificationReport:
    config: dict
    digest: str
    results: list = field(default_factory=list)

    @property
    def status(self):
        statuses = {result.status for result in self.results}
        if FAIL in statuses:
            return FAIL
        if FLAGGED in statuses:
            return FLAGGED
        return PASS

    @property
    def exit_code(self):
        return 1 if self.status == FAIL else 0

    @property
    def failed(self):
        return [result.name for result in self.results if result.failed]

    def result(self, name):
        for result in self.results:
            if result.name == name:
                return result
        raise KeyError(name)

    def as_dict(self, include_timings=False):
        """JSON-ready report; wall times only on request so that reruns compare equal"""
        suites = []
        for result in self.results:
            entry = {
                'name': result.name,
                'status': result.status,
                'anchors': list(result.anchors),
                'checks': rounded(result.checks),
                'residuals': rounded(result.residuals),
                'facts': rounded(result.facts),
                'dimensions': rounded(result.dimensions),
                'notes': list(result.notes),
            }
            if include_timings:
                entry['wall_time'] = rounded(result.wall_time)
            suites.append(entry)
        return {
            'config': self.config,
            'config_digest': self.digest,
            'status': self.status,
            'suites': suites,
        }


def select_suites(names):
    """Registry order; the wick gate joins whenever a suite depends on it"""
    names = set(names or SUITES)
    if any(SUITES[name].gated for name in names):
        names.add(GATE)
    return [name for name in SUITES if name in names]


def run_suite(definition, cfg):
    recorder = SuiteRecorder(definition.name, definition.anchors)
    start = time.perf_counter()
    try:
        definition.function(cfg, recorder)
    except Exception as error:
        logger.error(f"Suite {definition.name} raised {type(error).__name__}: {error}")
        recorder.fail(f"{type(error).__name__}: {error}")
    result = recorder.result(time.perf_counter() - start)
    logger.info(f"Suite {definition.name}: {result.status} in {result.wall_time:.2f}s")
    return result


def blocked(definition, reason):
    return SuiteResult(name=definition.name, status=FAIL, notes=[reason], anchors=definition.anchors)


def run_suites(cfg, jobs=None):
    """
    Run the wick gate first, then every other selected suite, optionally on
    `jobs` threads. Suites that depend on a failed gate are not run.
    """
    jobs = jobs or settings.QWNLAB['SUITE_JOBS']
    names = select_suites(cfg.suites)
    results = {}
    if GATE in names:
        results[GATE] = run_suite(SUITES[GATE], cfg)
    gate_failed = GATE in results and results[GATE].failed
    pending = []
    for name in names:
        if name == GATE:
            continue
        definition = SUITES[name]
        if gate_failed and definition.gated:
            logger.warning(f"Skipping suite {name}: wick gate failed")
            results[name] = blocked(definition, 'wick gate failed')
        else:
            pending.append(definition)
    with ThreadPoolExecutor(max_workers=max(1, jobs)) as pool:
        futures = {definition.name: pool.submit(run_suite, definition, cfg) for definition in pending}
        for name, future in futures.items():
            results[name] = future.result()
    report = VerificationReport(cfg.as_dict(), cfg.digest(), [results[name] for name in names])
    logger.info(f"Verification {report.status}: {len(names)} suite(s), failed: {', '.join(report.failed) or 'none'}")
    return report
