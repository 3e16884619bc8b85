# Generated by Django 5.0.1 on 2026-10-18 09:00

import django.db.models.deletion
from django.db import migrations, models


class Migration(migrations.Migration):

    initial = True

    dependencies = [
    ]

    operations = [
        migrations.CreateModel(
            name='VerificationRun',
            fields=[
                ('id', models.BigAutoField(auto_created=True, primary_key=True, serialize=False, verbose_name='ID')),
                ('config_digest', models.CharField(db_index=True, help_text='SHA-256 of the canonical config', max_length=64)),
                ('config', models.JSONField(help_text='Validated run configuration')),
                ('seed', models.BigIntegerField(blank=True, null=True)),
                ('status', models.CharField(choices=[('pass', 'Pass'), ('flagged', 'Flagged'), ('fail', 'Fail')], max_length=10)),
                ('report', models.JSONField(help_text='Full report without wall times')),
                ('created_at', models.DateTimeField(auto_now_add=True)),
            ],
            options={
                'verbose_name': 'Verification Run',
                'verbose_name_plural': 'Verification Runs',
                'db_table': 'verification_runs',
                'ordering': ['-created_at'],
            },
        ),
        migrations.CreateModel(
            name='SuiteOutcome',
            fields=[
                ('id', models.BigAutoField(auto_created=True, primary_key=True, serialize=False, verbose_name='ID')),
                ('suite', models.CharField(max_length=50)),
                ('status', models.CharField(choices=[('pass', 'Pass'), ('flagged', 'Flagged'), ('fail', 'Fail')], max_length=10)),
                ('worst_residual', models.FloatField(blank=True, help_text='Largest recorded residual', null=True)),
                ('anchors', models.JSONField(default=list)),
                ('notes', models.JSONField(default=list)),
                ('wall_time', models.FloatField(default=0.0, help_text='Seconds spent in the suite')),
                ('run', models.ForeignKey(on_delete=django.db.models.deletion.CASCADE, related_name='outcomes', to='verification.verificationrun')),
            ],
            options={
                'verbose_name': 'Suite Outcome',
                'verbose_name_plural': 'Suite Outcomes',
                'db_table': 'verification_suite_outcomes',
                'ordering': ['run', 'id'],
                'unique_together': {('run', 'suite')},
            },
        ),
    ]
