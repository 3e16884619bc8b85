# verification/models.py
from django.db import models, transaction


class VerificationRun(models.Model):
    """A stored invocation of the verify command"""
    STATUS_CHOICES = [
        ('pass', 'Pass'),
        ('flagged', 'Flagged'),
        ('fail', 'Fail'),
    ]

    config_digest = models.CharField(max_length=64, db_index=True, help_text="SHA-256 of the canonical config")
    config = models.JSONField(help_text="Validated run configuration")
    seed = models.BigIntegerField(null=True, blank=True)
    status = models.CharField(max_length=10, choices=STATUS_CHOICES)
    report = models.JSONField(help_text="Full report without wall times")

    created_at = models.DateTimeField(auto_now_add=True)

    class Meta:
        db_table = 'verification_runs'
        verbose_name = 'Verification Run'
        verbose_name_plural = 'Verification Runs'
        ordering = ['-created_at']

    def __str__(self):
        return f"Run {self.config_digest[:12]} ({self.get_status_display()})"

    @classmethod
    def record(cls, report):
        """Persist a VerificationReport with one outcome per suite"""
        data = report.as_dict()
        with transaction.atomic():
            run = cls.objects.create(
                config_digest=report.digest,
                config=report.config,
                seed=report.config.get('seed'),
                status=report.status,
                report=data,
            )
            SuiteOutcome.objects.bulk_create([
                SuiteOutcome(
                    run=run,
                    suite=entry['name'],
                    wall_time=result.wall_time,
                    status=entry['status'],
                    worst_residual=max(
                        (check['value'] for check in entry['checks'] if check['kind'] == 'max'),
                        default=None,
                    ),
                    anchors=entry['anchors'],
                    notes=entry['notes'],
                )
                for entry, result in zip(data['suites'], report.results)
            ])
        return run

    @property
    def failed_suites(self):
        return list(self.outcomes.filter(status='fail').values_list('suite', flat=True))

    def matches(self, other):
        """Same config and same report, e.g. a rerun with the same seed"""
        return self.config_digest == other.config_digest and self.report == other.report


class SuiteOutcome(models.Model):
    """Status of one suite within a stored run"""
    run = models.ForeignKey(
        VerificationRun,
        on_delete=models.CASCADE,
        related_name='outcomes',
    )
    suite = models.CharField(max_length=50)
    status = models.CharField(max_length=10, choices=VerificationRun.STATUS_CHOICES)
    worst_residual = models.FloatField(null=True, blank=True, help_text="Largest recorded residual")
    anchors = models.JSONField(default=list)
    notes = models.JSONField(default=list)
    wall_time = models.FloatField(default=0.0, help_text="Seconds spent in the suite")

    class Meta:
        db_table = 'verification_suite_outcomes'
        verbose_name = 'Suite Outcome'
        verbose_name_plural = 'Suite Outcomes'
        unique_together = ['run', 'suite']
        ordering = ['run', 'id']

    def __str__(self):
        return f"{self.suite}: {self.status}"
