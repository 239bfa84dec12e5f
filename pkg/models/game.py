"""Game engine shared by continuous and discrete play.

Order of play: the cop is placed, then the robber, then
every round t >= 1 is a robber move (in round 1 the placement itself)
followed by the cop's turn. At the cop's turn the cop captures whenever
the robber is within r, moving onto the robber's position.
"""
import logging
import math
from dataclasses import dataclass, field

import numpy as np

from models.errors import MoveTooLong, PursuitError, StrategyViolation, describe
from models.geometry import REL_TOL, as_point, center, in_cube
from models.profiles import PAPER

CONTINUOUS = 'continuous'
DISCRETE = 'discrete'

CAPTURED = 'captured'
ESCAPED = 'escaped'
FAULT = 'fault'


@dataclass(frozen=True)
class GameConfig:
    d: int
    r: float
    max_rounds: int
    profile: object = PAPER
    mode: str = CONTINUOUS

    def __post_init__(self):
        if self.max_rounds < 1:
            raise ValueError("max_rounds must be at least 1")
        if not self.r > 0:
            raise ValueError("r must be positive")
        if self.mode not in (CONTINUOUS, DISCRETE):
            raise ValueError(f"unknown mode {self.mode!r}")


@dataclass(frozen=True)
class Outcome:
    kind: str
    round: int = 0
    reason: str = ''

    def __str__(self):
        if self.kind == FAULT:
            return f"fault({self.reason})"
        return f"{self.kind}({self.round})"


def captured(t):
    return Outcome(CAPTURED, t)


def escaped(max_rounds):
    return Outcome(ESCAPED, max_rounds)


def fault(t, reason):
    return Outcome(FAULT, t, reason or 'unspecified fault')


@dataclass
class TraceRound:
    round: int
    cop: tuple
    robber: tuple
    cop_gain: float
    cop_vertex: int = None
    robber_vertex: int = None


@dataclass
class GameTrace:
    config: GameConfig
    rounds: list = field(default_factory=list)
    outcome: Outcome = None
    events: list = field(default_factory=list)
    diagnostics: dict = field(default_factory=dict)
    current_round: int = 0

    def record(self, world, cop, robber, gain):
        discrete = self.config.mode == DISCRETE
        self.rounds.append(TraceRound(
            round=self.current_round,
            cop=tuple(float(x) for x in world.point(cop)),
            robber=tuple(float(x) for x in world.point(robber)),
            cop_gain=float(gain),
            cop_vertex=int(cop) if discrete else None,
            robber_vertex=int(robber) if discrete else None,
        ))

    def note(self, kind, detail=''):
        """Record a non-fatal condition observed during the current round."""
        self.events.append((self.current_round, kind, detail))
        logging.debug(f"round {self.current_round}: {kind} {detail}")

    def track_max(self, key, value):
        self.diagnostics[key] = max(self.diagnostics.get(key, value), value)

    @property
    def is_captured(self):
        return self.outcome is not None and self.outcome.kind == CAPTURED

    @property
    def is_fault(self):
        return self.outcome is not None and self.outcome.kind == FAULT

    @property
    def rounds_played(self):
        return self.rounds[-1].round if self.rounds else 0

    def step_gains(self):
        """Cop gains of the non-capturing moves (rounds 1..)."""
        steps = self.rounds[1:]
        if self.is_captured:
            steps = steps[:-1]
        return [step.cop_gain for step in steps]

    def min_step_gain(self):
        gains = self.step_gains()
        return min(gains) if gains else None

    def event_count(self, kind):
        return sum(1 for _, k, _ in self.events if k == kind)


class Cube:
    """The continuous world [0,1]^d; positions are points."""

    def __init__(self, d):
        self.d = d

    def point(self, position):
        return position

    def is_valid(self, position):
        position = np.asarray(position, dtype=float)
        return position.shape == (self.d,) and in_cube(position)


def max_round_bound(d, r, profile):
    """ceil((d/4) / (gain_coeff r^2)) + 2 rounds.

    The cop's squared distance from O grows by at least gain_coeff*r^2 per
    non-capturing step and can never exceed d/4.
    """
    if not r > 0:
        raise ValueError("r must be positive")
    steps = (d / 4) / profile.gain(r)
    # Shave rounding noise so exact quotients do not round up.
    return math.ceil(steps * (1.0 - 1e-12)) + 2


def _check_position(world, position, who):
    if not world.is_valid(position):
        raise StrategyViolation(f"{who} placed at an invalid position {position!r}")


def _check_move(world, config, before, after, who):
    _check_position(world, after, who)
    step = float(np.linalg.norm(as_point(world.point(after)) - as_point(world.point(before))))
    if step > config.r * (1.0 + REL_TOL):
        raise MoveTooLong(f"{who} moved {step:.6g} > r = {config.r:.6g}")


def play(config, cop_strategy, robber_strategy, world):
    """Run one game and return its GameTrace; never raises for strategy errors."""
    trace = GameTrace(config=config)
    O = center(config.d)

    def squared_from_center(position):
        offset = as_point(world.point(position)) - O
        return float(offset @ offset)

    try:
        cop = cop_strategy.place(world, config)
        _check_position(world, cop, 'cop')
        robber = robber_strategy.place(world, config, cop)
        _check_position(world, robber, 'robber')
    except Exception as e:
        return _finish_with_fault(trace, e)
    trace.record(world, cop, robber, 0.0)

    for t in range(1, config.max_rounds + 1):
        trace.current_round = t
        try:
            if t > 1:
                moved = robber_strategy.move(world, config, cop, robber, trace)
                _check_move(world, config, robber, moved, 'robber')
                robber = moved
            before = squared_from_center(cop)
            gap = float(np.linalg.norm(as_point(world.point(cop)) - as_point(world.point(robber))))
            if gap <= config.r:
                trace.record(world, robber, robber, squared_from_center(robber) - before)
                trace.outcome = captured(t)
                return trace
            moved = cop_strategy.respond(world, config, cop, robber, trace)
            _check_move(world, config, cop, moved, 'cop')
            cop = moved
        except Exception as e:
            return _finish_with_fault(trace, e)
        trace.record(world, cop, robber, squared_from_center(cop) - before)

    trace.outcome = escaped(config.max_rounds)
    return trace


def _finish_with_fault(trace, error):
    if isinstance(error, PursuitError):
        logging.info(f"Game fault in round {trace.current_round}: {describe(error)}")
    else:
        logging.exception(f"Unexpected error in round {trace.current_round}")
    trace.outcome = fault(trace.current_round, describe(error))
    return trace


class IdleCop:
    """Sits at O (or a given position) and never moves."""

    def __init__(self, position=None):
        self.position = position

    def place(self, world, config):
        if self.position is not None:
            return self.position
        if config.mode == DISCRETE:
            return world.nearest_vertex(center(config.d))
        return center(config.d)

    def respond(self, world, config, cop, robber, trace):
        return cop


class StationaryRobber:
    """Never moves; without a position the placement of ``placer`` is used."""

    def __init__(self, position=None, placer=None):
        if position is None and placer is None:
            raise ValueError("StationaryRobber needs a position or a placer")
        self.position = position
        self.placer = placer

    def place(self, world, config, cop):
        if self.position is None:
            return self.placer.place(world, config, cop)
        return self.position

    def move(self, world, config, cop, robber, trace):
        return robber
