# verification/forms.py
import numbers

import numpy as np
from django import forms
from django.conf import settings
from django.core.exceptions import ValidationError

from calculus.exceptions import InvalidConfigError
from calculus.fock import FockConfig
from calculus.modespace import ModeConfig, is_skew

from .suites import GATE, SUITES


def _complex_entry(value, path):
    """A number or an [re, im] pair"""
    if isinstance(value, bool):
        raise ValidationError(f"{path}: expected a number or an [re, im] pair, got a boolean")
    if isinstance(value, numbers.Real):
        return complex(value)
    if (
        isinstance(value, list)
        and len(value) == 2
        and all(isinstance(part, numbers.Real) and not isinstance(part, bool) for part in value)
    ):
        return complex(value[0], value[1])
    raise ValidationError(f"{path}: expected a number or an [re, im] pair, got {value!r}")


def parse_vector(value, path):
    if not isinstance(value, list) or not value:
        raise ValidationError(f"{path}: expected a non-empty list of complex entries")
    return np.array([_complex_entry(item, f"{path}[{i}]") for i, item in enumerate(value)], dtype=complex)


def parse_matrix(value, path):
    if not isinstance(value, list) or not value:
        raise ValidationError(f"{path}: expected a non-empty list of rows")
    rows = []
    for i, row in enumerate(value):
        if not isinstance(row, list):
            raise ValidationError(f"{path}[{i}]: expected a row of complex entries")
        rows.append(parse_vector(row, f"{path}[{i}]"))
    width = len(rows[0])
    for i, row in enumerate(rows):
        if len(row) != width:
            raise ValidationError(f"{path}[{i}]: row has {len(row)} entries, expected {width}")
    return np.array(rows, dtype=complex)


class RunConfigForm(forms.Form):
    """Schema of a JSON run configuration; unknown keys are rejected"""

    d = forms.IntegerField(min_value=1, max_value=6, help_text="Number of modes")
    M = forms.IntegerField(min_value=1, max_value=12, help_text="Maximum total occupation")
    seed = forms.IntegerField(required=False, min_value=0, help_text="Seed for random kernels and vectors")
    guard = forms.IntegerField(required=False, min_value=0, help_text="Creator-degree guard band")
    tolerance = forms.FloatField(required=False, min_value=0.0, help_text="Numerical equality threshold")
    m_max = forms.IntegerField(required=False, min_value=1, max_value=6, help_text="Largest supported pure order")
    orbit_cap = forms.IntegerField(required=False, min_value=1, help_text="Longest orbit considered")
    samples = forms.IntegerField(required=False, min_value=1, help_text="Random samples per identity")
    S = forms.JSONField(required=False, help_text="Skew operator, complex entries as [re, im]")
    zeta = forms.JSONField(required=False, help_text="Direction vector")
    K = forms.JSONField(required=False, help_text="Symmetric operator of the fixed-point data")
    L = forms.JSONField(required=False, help_text="Self-adjoint operator of the fixed-point data")
    suites = forms.JSONField(required=False, help_text="Suite names, default all")
    theta_grid = forms.JSONField(required=False, help_text="Rotation angles")

    MATRIX_FIELDS = ('S', 'K', 'L')

    def clean_S(self):
        return self._clean_matrix('S')

    def clean_K(self):
        return self._clean_matrix('K')

    def clean_L(self):
        return self._clean_matrix('L')

    def _json_value(self, name):
        """The cleaned JSON value; an explicit [] stays a list instead of counting as absent"""
        value = self.cleaned_data.get(name)
        if value is None and self.data.get(name) == []:
            return []
        return value

    def _clean_matrix(self, name):
        value = self._json_value(name)
        if value is None:
            return None
        return parse_matrix(value, name)

    def clean_zeta(self):
        value = self._json_value('zeta')
        if value is None:
            return None
        return parse_vector(value, 'zeta')

    def clean_suites(self):
        value = self._json_value('suites')
        if value is None:
            return list(SUITES)
        if not isinstance(value, list) or not value:
            raise ValidationError("suites: expected a non-empty list of suite names")
        for i, name in enumerate(value):
            if name not in SUITES:
                raise ValidationError(f"suites[{i}]: unknown suite {name!r}; known: {', '.join(SUITES)}")
        if len(set(value)) != len(value):
            raise ValidationError("suites: duplicate suite names")
        selected = set(value)
        if any(SUITES[name].gated for name in selected):
            selected.add(GATE)
        return [name for name in SUITES if name in selected]

    def clean_theta_grid(self):
        value = self._json_value('theta_grid')
        if value is None:
            return list(settings.QWNLAB['DEFAULT_THETA_GRID'])
        if not isinstance(value, list) or not value:
            raise ValidationError("theta_grid: expected a non-empty list of real numbers")
        for i, theta in enumerate(value):
            if isinstance(theta, bool) or not isinstance(theta, numbers.Real):
                raise ValidationError(f"theta_grid[{i}]: expected a real number, got {theta!r}")
        return [float(theta) for theta in value]

    def clean(self):
        cleaned = super().clean()
        for key in sorted(set(self.data) - set(self.fields)):
            self.add_error(None, f"{key}: unknown key")
        d = cleaned.get('d')
        if d is None:
            return cleaned
        self._check_shapes(cleaned, d)
        self._check_truncation(cleaned)
        self._check_suite_requirements(cleaned)
        return cleaned

    def _check_shapes(self, cleaned, d):
        for name in self.MATRIX_FIELDS:
            matrix = cleaned.get(name)
            if matrix is not None and matrix.shape != (d, d):
                self.add_error(name, f"{name}: expected a {d}x{d} matrix, got {matrix.shape[0]}x{matrix.shape[1]}")
                cleaned[name] = None
        zeta = cleaned.get('zeta')
        if zeta is not None and zeta.shape != (d,):
            self.add_error('zeta', f"zeta: expected {d} entries, got {zeta.shape[0]}")
            cleaned['zeta'] = None

    def _check_truncation(self, cleaned):
        defaults = self.defaults()
        try:
            FockConfig(
                mode=ModeConfig(
                    d=cleaned['d'],
                    tolerance=self._value(cleaned, 'tolerance', defaults),
                    orbit_cap=self._value(cleaned, 'orbit_cap', defaults),
                ),
                M=cleaned.get('M') or 1,
                guard=self._value(cleaned, 'guard', defaults),
                m_max=self._value(cleaned, 'm_max', defaults),
            )
        except InvalidConfigError as error:
            self.add_error(None, f"truncation: {error}")

    def _check_suite_requirements(self, cleaned):
        tolerance = self._value(cleaned, 'tolerance', self.defaults())
        for name in cleaned.get('suites') or []:
            definition = SUITES[name]
            if definition.needs_seed and cleaned.get('seed') is None:
                self.add_error('seed', f"seed: required by suite {name!r}")
            for field_name in definition.needs:
                if cleaned.get(field_name) is None and field_name not in self.errors:
                    self.add_error(field_name, f"{field_name}: required by suite {name!r}")
            S = cleaned.get('S')
            if definition.needs_skew and S is not None and not is_skew(S, tolerance):
                deviation = float(np.max(np.abs(S + S.T)))
                self.add_error('S', f"S: suite {name!r} needs a skew-symmetric S (deviation {deviation:.3e})")

    @staticmethod
    def defaults():
        qwnlab = settings.QWNLAB
        return {
            'guard': qwnlab['DEFAULT_GUARD'],
            'tolerance': qwnlab['DEFAULT_TOLERANCE'],
            'm_max': qwnlab['DEFAULT_M_MAX'],
            'orbit_cap': qwnlab['DEFAULT_ORBIT_CAP'],
            'samples': qwnlab['DEFAULT_SAMPLES'],
        }

    @staticmethod
    def _value(cleaned, name, defaults):
        value = cleaned.get(name)
        return defaults[name] if value is None else value

    def cleaned_config(self):
        """Keyword arguments for RunConfig, defaults filled in from settings"""
        cleaned = self.cleaned_data
        defaults = self.defaults()
        config = {name: self._value(cleaned, name, defaults) for name in defaults}
        config.update(
            d=cleaned['d'],
            M=cleaned['M'],
            seed=cleaned.get('seed'),
            S=cleaned.get('S'),
            zeta=cleaned.get('zeta'),
            K=cleaned.get('K'),
            L=cleaned.get('L'),
            suites=tuple(cleaned['suites']),
            theta_grid=tuple(cleaned['theta_grid']),
            max_rounds=settings.QWNLAB['CLOSURE_MAX_ROUNDS'],
        )
        return config

    def error_summary(self):
        """One line: every error message, each already carrying its field path"""
        messages = []
        for field_name, errors in self.errors.items():
            for message in errors:
                if field_name == '__all__' or message.startswith(field_name):
                    messages.append(message)
                else:
                    messages.append(f"{field_name}: {message}")
        return '; '.join(messages)
