# verification/management/commands/closure.py
from django.core.management.base import BaseCommand, CommandError

from calculus import liealg
from calculus.exceptions import CalculusError
from verification.config import ConfigError, load_config


class Command(BaseCommand):
    help = "Print closure dimensions and series for the generator sets of a configuration"

    def add_arguments(self, parser):
        parser.add_argument('--config', required=True, help="Path to the JSON run configuration")

    def generator_sets(self, cfg):
        sets = {}
        if cfg.zeta is not None:
            sets['base (Id, a, a*, N, Gross)'] = liealg.base_generators(cfg.zeta)
        if cfg.S is not None and cfg.zeta is not None:
            sets['orbit of S'] = liealg.standard_generators(cfg.S, cfg.zeta, cfg.mode_config())
        if cfg.K is not None and cfg.L is not None and cfg.zeta is not None:
            sets['fixed point (K, L)'] = liealg.fixed_point_generators(cfg.K, cfg.L, cfg.zeta, cfg.tolerance)
        return sets

    def handle(self, *args, **options):
        try:
            cfg = load_config(options['config'])
        except ConfigError as error:
            raise CommandError(str(error), returncode=2) from error

        sets = self.generator_sets(cfg)
        if not sets:
            raise CommandError("configuration has no zeta, nothing to close", returncode=2)
        for label, generators in sets.items():
            try:
                table = liealg.dimension_table(label, generators, cfg.max_rounds, cfg.tolerance)
                basis = liealg.closure(generators, cfg.max_rounds, tolerance=cfg.tolerance)
            except CalculusError as error:
                raise CommandError(f"{label}: {error}", returncode=1) from error
            constants = liealg.StructureConstants.from_basis(basis)
            self.stdout.write(self.style.MIGRATE_HEADING(label))
            self.stdout.write(f"  formal dimension:     {table.formal}")
            self.stdout.write(f"  realized dimension:   {table.realized}")
            self.stdout.write(f"  derived series:       {liealg.derived_series(basis, constants)}")
            self.stdout.write(f"  lower central series: {liealg.lower_central_series(basis, constants)}")
            self.stdout.write(f"  solvable: {liealg.is_solvable(basis, constants)}, "
                              f"nilpotent: {liealg.is_nilpotent(basis, constants)}")
            for note in table.notes:
                self.stdout.write(f"  note: {note}")
