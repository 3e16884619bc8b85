# verification/config.py
"""Run configuration: a validated, immutable view of a JSON config file."""
import hashlib
import json
import logging
import zlib
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from calculus.exceptions import PreconditionError
from calculus.fock import FockConfig
from calculus.modespace import ModeConfig

from .forms import RunConfigForm

logger = logging.getLogger(__name__)


class ConfigError(Exception):
    """Unreadable, malformed or invalid run configuration"""


def encode_complex(value):
    """[re, im] pairs, recursively, for matrices and vectors"""
    array = np.asarray(value, dtype=complex)
    if array.ndim == 0:
        return [float(array.real), float(array.imag)]
    return [encode_complex(item) for item in array]


@dataclass(frozen=True)
class RunConfig:
    d: int
    M: int
    seed: int = None
    guard: int = 4
    tolerance: float = 1e-10
    m_max: int = 4
    orbit_cap: int = 8
    samples: int = 20
    S: np.ndarray = None
    zeta: np.ndarray = None
    K: np.ndarray = None
    L: np.ndarray = None
    suites: tuple = ()
    theta_grid: tuple = (-0.3, -0.1, 0.1, 0.3)
    max_rounds: int = 12
    source: str = field(default='', compare=False)

    def mode_config(self):
        return ModeConfig(d=self.d, tolerance=self.tolerance, orbit_cap=self.orbit_cap)

    def fock_config(self):
        return FockConfig(mode=self.mode_config(), M=self.M, guard=self.guard, m_max=self.m_max)

    def rng(self, name):
        """Generator private to one suite, derived from the run seed and the suite name"""
        if self.seed is None:
            raise PreconditionError('seed present')
        return np.random.default_rng([self.seed, zlib.crc32(name.encode())])

    def as_dict(self):
        """JSON-ready form; complex arrays as [re, im] pairs"""
        data = {
            'd': self.d,
            'M': self.M,
            'seed': self.seed,
            'guard': self.guard,
            'tolerance': self.tolerance,
            'm_max': self.m_max,
            'orbit_cap': self.orbit_cap,
            'samples': self.samples,
            'suites': list(self.suites),
            'theta_grid': list(self.theta_grid),
        }
        for name in ('S', 'zeta', 'K', 'L'):
            value = getattr(self, name)
            if value is not None:
                data[name] = encode_complex(value)
        return data

    def digest(self):
        canonical = json.dumps(self.as_dict(), sort_keys=True, separators=(',', ':'))
        return hashlib.sha256(canonical.encode()).hexdigest()


def load_config(path, suites=None):
    """
    Read and validate a JSON run configuration.

    `suites` overrides the file's suite list. Raises ConfigError with line
    and column on parse errors and with the field path on schema errors.
    """
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as error:
        raise ConfigError(f"cannot read {path}: {error.strerror or error}") from error
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as error:
        raise ConfigError(f"{path}:{error.lineno}:{error.colno}: {error.msg}") from error
    if not isinstance(raw, dict):
        raise ConfigError(f"{path}: top level must be an object, got {type(raw).__name__}")
    if suites:
        raw = dict(raw, suites=list(suites))
    form = RunConfigForm(data=raw)
    if not form.is_valid():
        raise ConfigError(f"{path}: {form.error_summary()}")
    config = RunConfig(**form.cleaned_config(), source=str(path))
    logger.info(f"Loaded config {path} with suites {', '.join(config.suites)}")
    return config
