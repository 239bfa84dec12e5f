"""Cop and robber strategies for the continuous game on [0,1]^d.

The cop stays on the segment from the centre O to the robber, at least
keep_coeff*r^2 away from the robber, and raises its squared distance from O by at
least gain_coeff*r^2 per step. The robber steps exactly r perpendicular to
the line to the cop, on the side making an angle of at most pi/2 with the
direction to O, so its squared distance from O grows by at most r^2.
"""
import logging
from dataclasses import dataclass, field

import numpy as np

from models.errors import (
    AbovePerpendicular,
    BothDirectionsExitCube,
    GainViolation,
    MoveTooLong,
    NoValidPlacement,
    SeparationViolation,
)
from models.geometry import (
    REL_TOL,
    as_point,
    candidate_point,
    center,
    clip_to_cube,
    feasible_step,
    in_cube,
    perpendicular_pair,
    unit,
)

CAPTURE = 'capture'
MOVE = 'move'

# Positions closer than this to O count as the centre itself.
CENTER_TOL = 1e-12
TIE_TOL = 1e-12
# A cop closer than CLOSE_CALL * r makes the paper robber slide around O.
CLOSE_CALL = 0.1
TANGENT_TOL = 1e-6


@dataclass
class CopDecision:
    kind: str
    target: np.ndarray = None
    gain: float = 0.0
    case: int = 0
    violations: list = field(default_factory=list)

    @property
    def is_capture(self):
        return self.kind == CAPTURE


def cop_initial(d):
    return center(d)


def _squared(v):
    return float(v @ v)


def cop_step(O, C, Rp, r, profile, strict=None):
    """One cop response to the robber's new position Rp.

    With ``strict`` (default: r inside the profile's proven regime) a broken
    step invariant raises; otherwise it is listed in ``violations``.
    """
    O = as_point(O)
    C = as_point(C)
    Rp = as_point(Rp)
    if strict is None:
        strict = profile.in_regime(r)
    if np.linalg.norm(C - Rp) <= r:
        return CopDecision(CAPTURE, target=Rp.copy())

    violations = []
    keep = profile.separation(r)
    ray = unit(Rp - O)
    if ray is None:
        raise AbovePerpendicular("robber sits on the centre out of reach")
    reach = float(np.linalg.norm(Rp - O))

    if np.linalg.norm(C - O) <= CENTER_TOL:
        c_prime = O.copy()
    else:
        try:
            c_prime = candidate_point(O, C, Rp)
        except AbovePerpendicular:
            if strict:
                raise
            violations.append(AbovePerpendicular.__name__)
            c_prime = O + float(np.clip((C - O) @ ray, 0.0, reach)) * ray

    shift = float(np.linalg.norm(c_prime - C))
    if shift > r / 2:
        case = 1
        target = c_prime
    else:
        case = 2
        advance = min(r - shift, float(np.linalg.norm(Rp - c_prime)) - keep)
        target = c_prime + max(advance, 0.0) * ray

    # Back-shift toward O until the separation is exactly keep.
    if np.linalg.norm(target - Rp) < keep:
        target = O + max(reach - keep, 0.0) * ray

    gain = _squared(target - O) - _squared(C - O)
    checks = [
        (np.linalg.norm(target - C) > r * (1.0 + REL_TOL), MoveTooLong,
         f"step {np.linalg.norm(target - C):.6g} exceeds r = {r:.6g}"),
        (np.linalg.norm(target - Rp) < keep * (1.0 - REL_TOL), SeparationViolation,
         f"separation {np.linalg.norm(target - Rp):.6g} below {keep:.6g}"),
        (gain < profile.gain(r) * (1.0 - REL_TOL), GainViolation,
         f"gain {gain:.6g} below {profile.gain(r):.6g} (case {case})"),
    ]
    for failed, error, message in checks:
        if not failed:
            continue
        if strict:
            raise error(message)
        violations.append(error.__name__)
    return CopDecision(MOVE, target=target, gain=gain, case=case, violations=violations)


def robber_initial(O, cop, r):
    """Deterministic start at O + min(2r, 1/4) e_1, or the mirror point."""
    O = as_point(O)
    cop = as_point(cop)
    if r >= 0.25:
        raise NoValidPlacement(f"r = {r} is outside the robber's regime (r < 1/4)")
    offset = np.zeros_like(O)
    offset[0] = min(2 * r, 0.25)
    for candidate in (O + offset, O - offset):
        if np.linalg.norm(candidate - cop) > r:
            return candidate
    raise NoValidPlacement("both axis placements are within r of the cop")


def _ordered_perpendiculars(O, C, R):
    direction = unit(C - R)
    if direction is None:
        raise ValueError("robber_step needs R != C")
    first, second = perpendicular_pair(direction)
    # The step must make an angle of at most pi/2 with R->O; first element wins ties.
    if (O - R) @ first >= -TIE_TOL:
        return first, second
    return second, first


def robber_step(O, C, R, r):
    O = as_point(O)
    C = as_point(C)
    R = as_point(R)
    for p in _ordered_perpendiculars(O, C, R):
        candidate = R + r * p
        if in_cube(candidate):
            return clip_to_cube(candidate)
    raise BothDirectionsExitCube(f"robber at {np.array2string(R, precision=6)} has no room to sidestep")


def sidestep(O, C, R, r):
    """robber_step, except when the cop is closer than CLOSE_CALL * r.

    Then the robber slides r along the sphere around O, toward the side
    facing away from the cop. The squared distance from O still grows by
    exactly r^2, and the distance to the cop stays clear of r instead of
    collapsing onto it in floating point. A cop on the ray from O to the
    robber leaves no such side and gets the plain sidestep.
    """
    O = as_point(O)
    C = as_point(C)
    R = as_point(R)
    if np.linalg.norm(C - R) < CLOSE_CALL * r:
        inward = unit(O - R)
        away = unit(R - C)
        if inward is not None and away is not None:
            slide = away - float(away @ inward) * inward
            norm = float(np.linalg.norm(slide))
            if norm > TANGENT_TOL:
                candidate = R + (r / norm) * slide
                if in_cube(candidate):
                    return clip_to_cube(candidate)
    return robber_step(O, C, R, r)


def cornered_step(O, C, R, r):
    """Perpendicular step truncated at the cube boundary (longer side wins)."""
    O = as_point(O)
    C = as_point(C)
    R = as_point(R)
    best_step, best_direction = -1.0, None
    for p in _ordered_perpendiculars(O, C, R):
        step = feasible_step(R, p, r)
        if step > best_step:
            best_step, best_direction = step, p
    return clip_to_cube(R + best_step * best_direction)


def placement_radius(r):
    """Ball around O for random robber starts: 1/4, widened to 2r for large r."""
    return min(max(0.25, 2 * r), 0.5)


def random_placement(rng, d, cop, r, radius=None, attempts=10000):
    """Uniform point at distance > r from the cop, in the cube or in the
    ball of the given radius around O."""
    O = center(d)
    cop = as_point(cop)
    for _ in range(attempts):
        if radius is None:
            candidate = rng.random(d)
        else:
            direction = unit(rng.standard_normal(d))
            if direction is None:
                continue
            candidate = O + radius * rng.random() ** (1.0 / d) * direction
        if np.linalg.norm(candidate - cop) > r:
            return candidate
    raise NoValidPlacement(f"no placement found after {attempts} attempts")


class PaperCop:
    def place(self, world, config):
        return cop_initial(config.d)

    def respond(self, world, config, cop, robber, trace):
        decision = cop_step(center(config.d), cop, robber, config.r, config.profile)
        if decision.is_capture:
            return decision.target
        if decision.violations:
            trace.note('out_of_regime', ','.join(decision.violations))
        return decision.target


class GreedyCop:
    """Runs straight at the robber."""

    def place(self, world, config):
        return cop_initial(config.d)

    def respond(self, world, config, cop, robber, trace):
        cop = as_point(cop)
        robber = as_point(robber)
        gap = float(np.linalg.norm(robber - cop))
        if gap <= config.r:
            return robber.copy()
        return cop + (config.r / gap) * (robber - cop)


class PaperRobber:
    """Sidesteps perpendicular to the cop; ``on_cornered`` decides what
    happens when both sidesteps leave the cube ('truncate' or 'fault')."""

    def __init__(self, rng=None, on_cornered='truncate'):
        if on_cornered not in ('truncate', 'fault'):
            raise ValueError(f"unknown on_cornered policy {on_cornered!r}")
        self.rng = rng
        self.on_cornered = on_cornered

    def place(self, world, config, cop):
        if self.rng is not None:
            return random_placement(self.rng, config.d, cop, config.r, radius=placement_radius(config.r))
        return robber_initial(center(config.d), cop, config.r)

    def move(self, world, config, cop, robber, trace):
        O = center(config.d)
        try:
            return sidestep(O, cop, robber, config.r)
        except BothDirectionsExitCube:
            if self.on_cornered == 'fault':
                raise
            trace.note('cornered')
            return cornered_step(O, cop, robber, config.r)


class RandomRobber:
    """Uniform point of the r-ball around the robber, clipped to the cube."""

    def __init__(self, rng):
        self.rng = rng

    def place(self, world, config, cop):
        return random_placement(self.rng, config.d, cop, config.r)

    def move(self, world, config, cop, robber, trace):
        direction = unit(self.rng.standard_normal(config.d))
        if direction is None:
            return robber
        length = config.r * self.rng.random() ** (1.0 / config.d)
        return clip_to_cube(as_point(robber) + length * direction)


class GreedyRobber:
    """Flees r straight away from the cop, clipped to the cube."""

    def __init__(self, rng=None):
        self.rng = rng

    def place(self, world, config, cop):
        if self.rng is not None:
            return random_placement(self.rng, config.d, cop, config.r)
        return robber_initial(center(config.d), cop, config.r)

    def move(self, world, config, cop, robber, trace):
        robber = as_point(robber)
        away = unit(robber - as_point(cop))
        if away is None:
            logging.debug("greedy robber shares the cop's position; staying")
            return robber
        return clip_to_cube(robber + config.r * away)
