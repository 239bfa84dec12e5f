"""Tests for models.game."""
import numpy as np
from absl.testing import absltest
from absl.testing import parameterized

from models import game
from models.continuous_strategy import PaperCop, PaperRobber
from models.errors import NoValidPlacement
from models.profiles import PAPER


class RaisingRobber:

    def place(self, world, config, cop):
        raise NoValidPlacement("nowhere to go")


class TeleportingRobber:

    def place(self, world, config, cop):
        return np.array([0.9, 0.5])

    def move(self, world, config, cop, robber, trace):
        return np.array([0.1, 0.5])


class BrokenCop(game.IdleCop):

    def respond(self, world, config, cop, robber, trace):
        raise RuntimeError("boom")


class MaxRoundBoundTest(parameterized.TestCase):

    @parameterized.parameters(
        (2, 0.1, 252),
        (2, 0.5, 12),
        (3, 0.1, 377),
        (2, 0.2, 65),
    )
    def test_formula(self, d, r, expected):
        self.assertEqual(game.max_round_bound(d, r, PAPER), expected)

    def test_rejects_zero_radius(self):
        with self.assertRaises(ValueError):
            game.max_round_bound(2, 0.0, PAPER)


class PlayTest(absltest.TestCase):

    def config(self, r=0.1, max_rounds=10):
        return game.GameConfig(d=2, r=r, max_rounds=max_rounds, profile=PAPER)

    def test_initial_capture(self):
        trace = game.play(self.config(), game.IdleCop(),
                          game.StationaryRobber(np.array([0.55, 0.5])), game.Cube(2))
        self.assertEqual(trace.outcome, game.captured(1))
        self.assertEqual(trace.rounds_played, 1)
        np.testing.assert_allclose(trace.rounds[-1].cop, [0.55, 0.5])

    def test_nobody_moves(self):
        trace = game.play(self.config(), game.IdleCop(),
                          game.StationaryRobber(np.array([0.8, 0.5])), game.Cube(2))
        self.assertEqual(trace.outcome, game.escaped(10))
        self.assertEqual([step.round for step in trace.rounds], list(range(11)))

    def test_capture_is_closed_at_r(self):
        trace = game.play(self.config(), game.IdleCop(),
                          game.StationaryRobber(np.array([0.5 + 0.1 * (1 + 1e-10), 0.5])), game.Cube(2))
        self.assertEqual(trace.outcome, game.escaped(10))

    def test_placement_error_is_fault(self):
        trace = game.play(self.config(), game.IdleCop(), RaisingRobber(), game.Cube(2))
        self.assertTrue(trace.is_fault)
        self.assertEqual(trace.outcome.round, 0)
        self.assertEqual(trace.outcome.reason, "NoValidPlacement: nowhere to go")

    def test_long_robber_move_is_fault(self):
        trace = game.play(self.config(), game.IdleCop(), TeleportingRobber(), game.Cube(2))
        self.assertTrue(trace.is_fault)
        self.assertEqual(trace.outcome.round, 2)
        self.assertTrue(trace.outcome.reason.startswith("MoveTooLong"))

    def test_unexpected_error_is_fault(self):
        trace = game.play(self.config(), BrokenCop(),
                          game.StationaryRobber(np.array([0.8, 0.5])), game.Cube(2))
        self.assertTrue(trace.is_fault)
        self.assertEqual(trace.outcome.reason, "RuntimeError: boom")

    def test_position_outside_cube_is_fault(self):
        trace = game.play(self.config(), game.IdleCop(),
                          game.StationaryRobber(np.array([1.5, 0.5])), game.Cube(2))
        self.assertTrue(trace.outcome.reason.startswith("StrategyViolation"))

    def test_paper_game_within_bound(self):
        bound = game.max_round_bound(2, 0.1, PAPER)
        trace = game.play(self.config(max_rounds=bound), PaperCop(), PaperRobber(), game.Cube(2))
        self.assertTrue(trace.is_captured, trace.outcome)
        self.assertLessEqual(trace.outcome.round, bound)
        self.assertGreaterEqual(trace.min_step_gain(), 0.2 * 0.1**2 * (1 - 1e-9))


class TraceTest(absltest.TestCase):

    def test_step_gains_skip_placement_and_capture(self):
        trace = game.GameTrace(config=game.GameConfig(d=2, r=0.1, max_rounds=5))
        world = game.Cube(2)
        for t, gain in enumerate([0.0, 0.01, 0.02, 0.5]):
            trace.current_round = t
            trace.record(world, np.array([0.5, 0.5]), np.array([0.6, 0.5]), gain)
        trace.outcome = game.captured(3)
        self.assertEqual(trace.step_gains(), [0.01, 0.02])
        self.assertEqual(trace.min_step_gain(), 0.01)

    def test_events_and_diagnostics(self):
        trace = game.GameTrace(config=game.GameConfig(d=2, r=0.1, max_rounds=5))
        trace.current_round = 3
        trace.note('stay', 'XTooCloseToCenter')
        trace.note('stay')
        trace.track_max('max_snap_angle', 0.1)
        trace.track_max('max_snap_angle', 0.05)
        self.assertEqual(trace.event_count('stay'), 2)
        self.assertEqual(trace.events[0], (3, 'stay', 'XTooCloseToCenter'))
        self.assertEqual(trace.diagnostics['max_snap_angle'], 0.1)

    def test_config_validation(self):
        with self.assertRaises(ValueError):
            game.GameConfig(d=2, r=0.1, max_rounds=0)
        with self.assertRaises(ValueError):
            game.GameConfig(d=2, r=0.1, max_rounds=5, mode='hybrid')


if __name__ == '__main__':
    absltest.main()
