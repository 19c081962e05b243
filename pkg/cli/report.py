"""
Rendering of run results: a table for the terminal and a JSON document.

The JSON field names are a stable interface, listed in docs/report-schema.md.
"""

import json
import logging
from typing import List

from cli.runner import ERROR, FAILED, OK, RunOptions, TaskReport
from common import get_settings

logger = logging.getLogger(__name__)

SCHEMA_VERSION = 1


def render_table(reports: List[TaskReport]) -> str:
    """One row per task: index, kind, line, status and summary."""
    rows = [('#', 'task', 'line', 'status', 'summary')]
    for r in reports:
        rows.append((str(r.index), r.task.kind, str(r.task.line), r.status, r.summary))
    widths = [max(len(row[k]) for row in rows) for k in range(4)]
    lines = []
    for i, row in enumerate(rows):
        cells = [cell.ljust(width) for cell, width in zip(row, widths)]
        lines.append('  '.join(cells + [row[4]]).rstrip())
        if i == 0:
            lines.append('  '.join('-' * w for w in widths + [len(row[4])]))
    return '\n'.join(lines)


def summary_counts(reports: List[TaskReport]) -> dict:
    return {status: sum(1 for r in reports if r.status == status) for status in (OK, FAILED, ERROR)}


def build_report(reports: List[TaskReport], options: RunOptions, field: str) -> dict:
    """
    The JSON document of a run.

    Timings are included only in verbose runs, so that reports of identical
    inputs and seeds are byte-identical.
    """
    return {
        'schema': SCHEMA_VERSION,
        'field': field,
        'seed': get_settings().seed,
        'tasks': [r.to_dict(timing=options.verbose) for r in reports],
        'summary': summary_counts(reports),
    }


def write_json(path: str, report: dict):
    with open(path, 'w', encoding='utf-8') as handle:
        json.dump(report, handle, indent=2, ensure_ascii=False, sort_keys=False)
        handle.write('\n')
    logger.info(f"Wrote report to {path}")
