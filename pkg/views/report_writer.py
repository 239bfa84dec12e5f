"""Renders experiment rows, traces and graphs as CSV, JSON and JSON lines."""
import csv
import io
import json
import logging
from dataclasses import fields

from utils.helpers import format_float

WALLCLOCK = 'wallclock_ms'


def row_columns(row_type, include_wallclock=True):
    """Column names in dataclass field order."""
    return [f.name for f in fields(row_type) if include_wallclock or f.name != WALLCLOCK]


def _cell(value):
    if value is None:
        return ''
    if isinstance(value, bool):
        return 'true' if value else 'false'
    if isinstance(value, float):
        return format_float(value)
    return str(value)


def _json_value(value):
    if isinstance(value, float):
        # 17 significant digits, as in the CSV
        return float(format_float(value))
    return value


def render_csv(rows, include_wallclock=True):
    """CSV text of dataclass rows (all of one type)."""
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator='\n')
    if rows:
        columns = row_columns(type(rows[0]), include_wallclock)
        writer.writerow(columns)
        for row in rows:
            writer.writerow([_cell(getattr(row, name)) for name in columns])
    return buffer.getvalue()


def render_json(rows, include_wallclock=True):
    records = []
    for row in rows:
        columns = row_columns(type(row), include_wallclock)
        records.append({name: _json_value(getattr(row, name)) for name in columns})
    return json.dumps(records, indent=2) + '\n'


def render_rows(rows, output_format='csv', include_wallclock=True):
    if output_format == 'csv':
        return render_csv(rows, include_wallclock)
    if output_format == 'json':
        return render_json(rows, include_wallclock)
    raise ValueError(f"unknown format {output_format!r}")


def render_mapping(data, output_format='csv'):
    """A flat dict as 'key,value' lines or a JSON object."""
    if output_format == 'json':
        return json.dumps({k: _json_value(v) for k, v in data.items()}, indent=2) + '\n'
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator='\n')
    writer.writerow(['key', 'value'])
    for key, value in data.items():
        if isinstance(value, list):
            value = '; '.join(str(item) for item in value)
        writer.writerow([key, _cell(value)])
    return buffer.getvalue()


def trace_lines(trace, trial=None):
    """One JSON object per round: round, cop, robber, gain (and vertices)."""
    for step in trace.rounds:
        record = {
            'round': step.round,
            'cop': [_json_value(x) for x in step.cop],
            'robber': [_json_value(x) for x in step.robber],
            'gain': _json_value(step.cop_gain),
        }
        if step.cop_vertex is not None:
            record['cop_vertex'] = step.cop_vertex
            record['robber_vertex'] = step.robber_vertex
        if trial is not None:
            record = {'trial': trial, **record}
        yield json.dumps(record)


def render_positions(g):
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator='\n')
    writer.writerow(['vertex'] + [f'x{i}' for i in range(g.d)])
    for vertex, position in enumerate(g.positions):
        writer.writerow([vertex] + [format_float(x) for x in position])
    return buffer.getvalue()


def write_text(path, text):
    """Write to path, or to stdout for None / '-'."""
    if path in (None, '-'):
        print(text, end='')
        return
    try:
        with open(path, 'w', newline='', encoding='utf-8') as f:
            f.write(text)
    except OSError as e:
        logging.error(f"Could not write {path}: {str(e)}")
        raise


def write_traces(path, results):
    lines = []
    for result in results:
        if result.trace is not None:
            lines.extend(trace_lines(result.trace, trial=result.row.trial))
    write_text(path, '\n'.join(lines) + ('\n' if lines else ''))
