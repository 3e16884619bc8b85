# verification/reports.py
"""JSON and Markdown renderings of a verification report."""
import json
import logging
from pathlib import Path

from django.template.loader import render_to_string

from .anchors import ANCHORS

logger = logging.getLogger(__name__)

FORMATS = ('json', 'markdown')


class ReportError(Exception):
    """Unreadable or malformed stored report"""


def render_json(data):
    return json.dumps(data, sort_keys=True, indent=2) + '\n'


def report_context(data):
    """Template context built from the dict form of a report"""
    anchor_rows = []
    dimension_rows = []
    check_rows = []
    timings = []
    for entry in data['suites']:
        for slug in entry['anchors']:
            anchor_rows.append({
                'slug': slug,
                'statement': ANCHORS.get(slug, ''),
                'suite': entry['name'],
                'status': entry['status'],
            })
        for table in entry.get('dimensions', []):
            dimension_rows.append(dict(table, suite=entry['name'], notes='; '.join(table.get('notes', []))))
        for check in entry.get('checks', []):
            check_rows.append(dict(check, suite=entry['name'], ok='yes' if check['ok'] else 'NO'))
        if 'wall_time' in entry:
            timings.append({'suite': entry['name'], 'seconds': entry['wall_time']})
    return {
        'status': data['status'],
        'digest': data['config_digest'],
        'config': data['config'],
        'suites': data['suites'],
        'anchor_rows': anchor_rows,
        'dimension_rows': dimension_rows,
        'check_rows': check_rows,
        'timings': timings,
    }


def render_markdown(data):
    return render_to_string('verification/report.md', report_context(data))


def render(data, format='json'):
    if format not in FORMATS:
        raise ValueError(f"unknown report format {format!r}; expected one of {', '.join(FORMATS)}")
    return render_json(data) if format == 'json' else render_markdown(data)


def emit_report(report, path=None, format='json', include_timings=False):
    """
    Render a VerificationReport. Writes to `path` when given and returns None,
    otherwise returns the text.
    """
    text = render(report.as_dict(include_timings), format)
    if path is None:
        return text
    Path(path).write_text(text)
    logger.info(f"Wrote {format} report to {path}")
    return None


def load_report(path):
    """Dict form of a JSON report written by emit_report"""
    path = Path(path)
    try:
        data = json.loads(path.read_text())
    except OSError as error:
        raise ReportError(f"cannot read {path}: {error.strerror or error}") from error
    except json.JSONDecodeError as error:
        raise ReportError(f"{path}:{error.lineno}:{error.colno}: {error.msg}") from error
    missing = [key for key in ('config', 'config_digest', 'status', 'suites') if key not in data]
    if missing:
        raise ReportError(f"{path}: not a verification report (missing {', '.join(missing)})")
    return data
