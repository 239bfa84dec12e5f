"""Tests for views.report_writer."""
import json
import os

from absl.testing import absltest

from controllers.experiments import ExperimentRow, TrialResult
from models import game
from models.rgg import Rgg
from views import report_writer

COLUMNS = ['trial', 'seed', 'n', 'r', 'd', 'profile', 'outcome', 'rounds', 'min_step_gain',
           'fault_reason', 'wallclock_ms', 'mode', 'cop', 'robber', 'events']


def _row(trial=0, outcome=game.CAPTURED):
    return ExperimentRow(trial=trial, seed=11, n=None, r=0.1, d=2, profile='paper', outcome=outcome,
                         rounds=12, min_step_gain=0.002, fault_reason='', wallclock_ms=1.5)


class RenderRowsTest(absltest.TestCase):

    def test_column_order(self):
        self.assertEqual(report_writer.row_columns(ExperimentRow), COLUMNS)
        self.assertNotIn('wallclock_ms', report_writer.row_columns(ExperimentRow, include_wallclock=False))

    def test_csv(self):
        lines = report_writer.render_csv([_row()]).splitlines()
        self.assertEqual(lines[0], ','.join(COLUMNS))
        self.assertEqual(lines[1], '0,11,,0.10000000000000001,2,paper,captured,12,0.002,,1.5,continuous,paper,paper,0')

    def test_csv_without_wallclock(self):
        text = report_writer.render_rows([_row()], 'csv', include_wallclock=False)
        self.assertNotIn('wallclock_ms', text)
        self.assertNotIn('1.5', text)

    def test_json(self):
        records = json.loads(report_writer.render_rows([_row(0), _row(1, game.ESCAPED)], 'json'))
        self.assertEqual([record['outcome'] for record in records], ['captured', 'escaped'])
        self.assertEqual(records[0]['r'], 0.1)
        self.assertIsNone(records[0]['n'])

    def test_empty(self):
        self.assertEqual(report_writer.render_csv([]), '')
        self.assertEqual(json.loads(report_writer.render_json([])), [])

    def test_unknown_format(self):
        with self.assertRaises(ValueError):
            report_writer.render_rows([_row()], 'xml')

    def test_mapping(self):
        text = report_writer.render_mapping({'passed': True, 'notes': ['a', 'b'], 'r': None})
        self.assertEqual(text.splitlines(), ['key,value', 'passed,true', 'notes,a; b', 'r,'])


class TraceOutputTest(absltest.TestCase):

    def test_trace_lines(self):
        g = Rgg.from_positions([(0.5, 0.5), (0.5, 0.05)], 0.1)
        config = game.GameConfig(d=2, r=0.1, max_rounds=2, mode=game.DISCRETE)
        trace = game.play(config, game.IdleCop(0), game.StationaryRobber(1), g)
        records = [json.loads(line) for line in report_writer.trace_lines(trace, trial=4)]
        self.assertLen(records, 3)
        self.assertEqual(records[0], {'trial': 4, 'round': 0, 'cop': [0.5, 0.5], 'robber': [0.5, 0.05],
                                      'gain': 0.0, 'cop_vertex': 0, 'robber_vertex': 1})

    def test_write_traces_and_positions(self):
        directory = self.create_tempdir().full_path
        g = Rgg.from_positions([(0.5, 0.5), (0.25, 0.75)], 0.1)
        config = game.GameConfig(d=2, r=0.1, max_rounds=1)
        trace = game.play(config, game.IdleCop(), game.StationaryRobber((0.1, 0.1)), game.Cube(2))
        path = os.path.join(directory, 'trace.jsonl')
        report_writer.write_traces(path, [TrialResult(_row(), trace), TrialResult(_row(1))])
        with open(path, encoding='utf-8') as f:
            self.assertLen(f.read().splitlines(), 2)

        positions = report_writer.render_positions(g).splitlines()
        self.assertEqual(positions, ['vertex,x0,x1', '0,0.5,0.5', '1,0.25,0.75'])


if __name__ == '__main__':
    absltest.main()
