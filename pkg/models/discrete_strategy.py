"""The continuous strategies played on G_d(n, r).

The cop computes its continuous target X and moves to a vertex of the
thin region T(X) behind it; the robber computes its continuous sidestep
R' and moves to a nearby vertex at least as far from the cop as R' is.
"""
import math
from dataclasses import dataclass, field

import numpy as np

from models.continuous_strategy import (
    cop_step,
    cornered_step,
    placement_radius,
    random_placement,
    robber_initial,
    robber_step,
)
from models.errors import (
    BothDirectionsExitCube,
    EmptyRegion,
    MoveTooLong,
    NoValidPlacement,
    StrategyViolation,
    XTooCloseToBoundary,
    XTooCloseToCenter,
    describe,
)
from models.geometry import REL_TOL, center, make_region

CAPTURE = 'capture'
MOVE = 'move'
STAY = 'stay'


@dataclass
class SnapDecision:
    kind: str
    vertex: int
    target: np.ndarray = None
    region: object = None
    snap_angle: float = None
    event: str = ''
    violations: list = field(default_factory=list)


@dataclass
class RobberSnap:
    vertex: int
    target: np.ndarray
    shortfall: bool = False
    cornered: bool = False


def cop_initial_vertex(g):
    """Vertex nearest the centre, ties by smallest id."""
    return g.nearest_vertex(center(g.d))


def _line_angle(apex, a, b):
    """Angle at ``apex`` between the lines through a and b."""
    u = a - apex
    v = b - apex
    norms = np.linalg.norm(u) * np.linalg.norm(v)
    if norms == 0.0:
        return 0.0
    cosine = min(abs(float(u @ v)) / norms, 1.0)
    return math.acos(cosine)


def cop_snap_step(g, O, c, rp, profile, r):
    cop_point = g.point(c)
    robber_point = g.point(rp)
    if np.linalg.norm(cop_point - robber_point) <= r:
        return SnapDecision(CAPTURE, vertex=rp)

    # The cop sits on a snapped vertex, so the segment invariant holds only
    # approximately; broken step checks are reported, not raised.
    decision = cop_step(O, cop_point, robber_point, r, profile, strict=False)
    X = decision.target
    try:
        region = make_region(X, O, profile, r)
    except (XTooCloseToCenter, XTooCloseToBoundary) as e:
        return SnapDecision(STAY, vertex=c, target=X, event=describe(e),
                            violations=decision.violations)

    members = g.vertices_in_cone(region)
    if not members:
        raise EmptyRegion(f"no vertex inside T(X) at {np.array2string(X, precision=6)}")
    chosen = next((x for x in members if g.is_legal_move(c, x)), None)
    if chosen is None:
        raise MoveTooLong(f"none of the {len(members)} vertices of T(X) is adjacent to the cop")

    snapped = g.point(chosen)
    if np.linalg.norm(snapped - X) > region.slant * (1.0 + REL_TOL):
        raise StrategyViolation("snapped vertex lies outside the region's reach")
    return SnapDecision(
        MOVE,
        vertex=chosen,
        target=X,
        region=region,
        snap_angle=_line_angle(robber_point, snapped, O),
        violations=decision.violations,
    )


def robber_snap_step(g, O, c, rv, r):
    cop_point = g.point(c)
    robber_point = g.point(rv)
    cornered = False
    try:
        target = robber_step(O, cop_point, robber_point, r)
    except BothDirectionsExitCube:
        target = cornered_step(O, cop_point, robber_point, r)
        cornered = True

    candidates = np.array(g.neighbors_within(robber_point, r), dtype=np.int64)
    if len(candidates) == 0:
        # rv is always within r of itself; only rounding can get here.
        return RobberSnap(rv, target, shortfall=True, cornered=cornered)
    positions = g.positions[candidates]
    cop_gaps = np.linalg.norm(positions - cop_point, axis=1)
    needed = float(np.linalg.norm(target - cop_point))
    safe = cop_gaps >= needed * (1.0 - REL_TOL)
    if np.any(safe):
        pool = candidates[safe]
        gaps = np.linalg.norm(g.positions[pool] - target, axis=1)
        return RobberSnap(int(pool[np.lexsort((pool, gaps))[0]]), target, cornered=cornered)
    # Nobody keeps the continuous separation: run as far as possible.
    best = candidates[np.lexsort((candidates, -cop_gaps))[0]]
    return RobberSnap(int(best), target, shortfall=True, cornered=cornered)


class SnapCop:
    def place(self, world, config):
        return cop_initial_vertex(world)

    def respond(self, world, config, cop, robber, trace):
        decision = cop_snap_step(world, center(config.d), cop, robber, config.profile, config.r)
        if decision.violations:
            trace.note('out_of_regime', ','.join(decision.violations))
        if decision.kind == STAY:
            trace.note('stay', decision.event)
            return cop
        if decision.snap_angle is not None:
            trace.track_max('max_snap_angle', decision.snap_angle)
        return decision.vertex


class SnapRobber:
    def __init__(self, rng=None):
        self.rng = rng

    def place(self, world, config, cop):
        cop_point = world.point(cop)
        if self.rng is not None:
            wanted = random_placement(self.rng, config.d, cop_point, config.r,
                                      radius=placement_radius(config.r))
        else:
            wanted = robber_initial(center(config.d), cop_point, config.r)
        far_enough = np.linalg.norm(world.positions - cop_point, axis=1) > config.r
        vertex = world.nearest_vertex(wanted, mask=far_enough)
        if vertex is None:
            raise NoValidPlacement("every vertex is within r of the cop")
        return vertex

    def move(self, world, config, cop, robber, trace):
        snap = robber_snap_step(world, center(config.d), cop, robber, config.r)
        if snap.cornered:
            trace.note('cornered')
        if snap.shortfall:
            trace.note('separation_shortfall')
        return snap.vertex
