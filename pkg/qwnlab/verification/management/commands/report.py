# verification/management/commands/report.py
from pathlib import Path

from django.core.management.base import BaseCommand, CommandError

from verification.models import VerificationRun
from verification.reports import FORMATS, ReportError, load_report, render


class Command(BaseCommand):
    help = "Re-render a stored JSON report, from a file or from the database"

    def add_arguments(self, parser):
        source = parser.add_mutually_exclusive_group(required=True)
        source.add_argument('--in', dest='input', help="JSON report written by verify")
        source.add_argument('--run', type=int, help="Primary key of a stored run")
        parser.add_argument('--format', choices=FORMATS, default='markdown')
        parser.add_argument('--out', help="Write here instead of stdout")

    def handle(self, *args, **options):
        if options['input']:
            try:
                data = load_report(options['input'])
            except ReportError as error:
                raise CommandError(str(error), returncode=2) from error
        else:
            try:
                data = VerificationRun.objects.get(pk=options['run']).report
            except VerificationRun.DoesNotExist as error:
                raise CommandError(f"no stored run {options['run']}", returncode=2) from error

        text = render(data, options['format'])
        if options['out']:
            Path(options['out']).write_text(text)
            self.stderr.write(f"Report written to {options['out']}")
        else:
            self.stdout.write(text, ending='')
