# verification/management/commands/verify.py
from django.core.management.base import BaseCommand, CommandError

from verification.config import ConfigError, load_config
from verification.models import VerificationRun
from verification.reports import FORMATS, emit_report
from verification.runner import run_suites


class Command(BaseCommand):
    help = "Run verification suites for a JSON run configuration"

    def add_arguments(self, parser):
        parser.add_argument('--config', required=True, help="Path to the JSON run configuration")
        parser.add_argument('--suite', action='append', dest='suites', help="Run only this suite (repeatable)")
        parser.add_argument('--out', help="Write the report here instead of stdout")
        parser.add_argument('--format', choices=FORMATS, default='json')
        parser.add_argument('--jobs', type=int, help="Worker threads for independent suites")
        parser.add_argument('--timings', action='store_true', help="Include wall times in the report")
        parser.add_argument('--store', action='store_true', help="Save the run in the database")

    def handle(self, *args, **options):
        try:
            cfg = load_config(options['config'], options['suites'])
        except ConfigError as error:
            raise CommandError(str(error), returncode=2) from error

        report = run_suites(cfg, options['jobs'])
        text = emit_report(report, options['out'], options['format'], options['timings'])
        if text is not None:
            self.stdout.write(text, ending='')
        else:
            self.stderr.write(f"Report written to {options['out']}")

        if options['store']:
            run = VerificationRun.record(report)
            self.stderr.write(f"Stored run {run.pk}")

        for result in report.results:
            line = f"{result.name}: {result.status}"
            if result.failed:
                self.stderr.write(self.style.ERROR(line))
            elif result.status == 'flagged':
                self.stderr.write(self.style.WARNING(line))
            else:
                self.stderr.write(self.style.SUCCESS(line))

        if report.exit_code:
            raise CommandError(f"failed suites: {', '.join(report.failed)}", returncode=report.exit_code)
