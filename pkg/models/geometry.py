"""Dimension-generic vector math and the snapping region T(X).

Points and unit vectors are 1-D float64 numpy arrays of length d
(1 <= d <= 8). Game positions live in the unit cube; intermediate
constructions may leave it and are checked where it matters.
"""
import math
from dataclasses import dataclass

import numpy as np

from models.errors import (
    AbovePerpendicular,
    DimensionMismatch,
    NoPerpendicular,
    XTooCloseToBoundary,
    XTooCloseToCenter,
)

MAX_DIM = 8
REL_TOL = 1e-9
CUBE_TOL = 1e-12


def as_point(coords):
    point = np.asarray(coords, dtype=float)
    if point.ndim != 1 or not 1 <= point.shape[0] <= MAX_DIM:
        raise DimensionMismatch(f"Expected 1 to {MAX_DIM} coordinates, got shape {point.shape}")
    return point


def center(d):
    """The centre O of [0,1]^d."""
    return np.full(d, 0.5)


def _check_dims(a, b):
    if a.shape != b.shape:
        raise DimensionMismatch(f"Dimension mismatch: {a.shape[0]} vs {b.shape[0]}")


def distance(a, b):
    a = as_point(a)
    b = as_point(b)
    _check_dims(a, b)
    return float(np.linalg.norm(a - b))


def unit(v):
    """Normalize v; returns None for the zero vector."""
    v = np.asarray(v, dtype=float)
    norm = np.linalg.norm(v)
    if norm == 0.0:
        return None
    return v / norm


def is_unit(v):
    return abs(np.linalg.norm(v) - 1.0) <= REL_TOL


def in_cube(point, tol=CUBE_TOL):
    point = np.asarray(point, dtype=float)
    return bool(np.all(point >= -tol) and np.all(point <= 1.0 + tol))


@dataclass(frozen=True)
class ApexCone:
    """T(X): apex X, axis pointing from the apex toward the base (and O).

    For d = 2 this is the isosceles triangle with height ``height`` and base
    half-width ``base_radius``; for d >= 3 a right circular cone.
    """
    apex: np.ndarray
    axis: np.ndarray
    height: float
    base_radius: float

    def __post_init__(self):
        if not (self.height > 0 and self.base_radius > 0):
            raise ValueError("Region height and base radius must be positive")
        if not is_unit(self.axis):
            raise ValueError("Region axis must be a unit vector")

    @property
    def d(self):
        return self.apex.shape[0]

    @property
    def base_center(self):
        return self.apex + self.height * self.axis

    @property
    def slant(self):
        """Largest distance from the apex to any point of the region."""
        return math.hypot(self.height, self.base_radius)

    def contains(self, p):
        return bool(self.contains_many(np.asarray(p, dtype=float)[None, :])[0])

    def contains_many(self, points):
        points = np.atleast_2d(np.asarray(points, dtype=float))
        if points.shape[1] != self.d:
            raise DimensionMismatch(f"Dimension mismatch: {points.shape[1]} vs {self.d}")
        rel = points - self.apex
        t = rel @ self.axis
        radial = np.linalg.norm(rel - np.outer(t, self.axis), axis=1)
        # Tolerances absorb rounding for points exactly on the rim or base.
        slack = REL_TOL * self.slant
        inside = (t >= -slack) & (t <= self.height + slack)
        return inside & (radial <= self.base_radius * np.clip(t, 0.0, None) / self.height + slack)

    def bounding_box(self):
        """Axis-aligned box (lo, hi) containing the region."""
        extent = self.base_radius * np.sqrt(np.clip(1.0 - self.axis**2, 0.0, None))
        base = self.base_center
        lo = np.minimum(self.apex, base - extent)
        hi = np.maximum(self.apex, base + extent)
        return lo, hi


@dataclass(frozen=True)
class OrientedRectangle:
    """Cover rectangle: ``anchor`` is the midpoint of the short edge facing
    away from O, the rectangle extends ``height`` along ``toward``."""
    anchor: np.ndarray
    toward: np.ndarray
    width: float
    height: float

    def __post_init__(self):
        if not (self.width > 0 and self.height > 0):
            raise ValueError("Rectangle width and height must be positive")
        if self.anchor.shape[0] != 2:
            raise DimensionMismatch("Cover rectangles are planar")

    @property
    def normal(self):
        return np.array([-self.toward[1], self.toward[0]])

    @property
    def area(self):
        return self.width * self.height

    def corners(self):
        half = 0.5 * self.width * self.normal
        far = self.anchor + self.height * self.toward
        return np.array([self.anchor - half, self.anchor + half, far + half, far - half])

    def contains_many(self, points):
        return rectangle_contains(self.anchor, self.toward, self.width, self.height, points)

    def contains(self, p):
        return bool(self.contains_many(np.asarray(p, dtype=float)[None, :])[0])


def rectangle_contains(anchors, towards, width, height, points):
    """Vectorized membership of points[k] in the rectangle (anchors[k], towards[k]).

    ``anchors``/``towards`` broadcast against ``points`` (shape (..., 2)).
    """
    rel = np.asarray(points, dtype=float) - anchors
    towards = np.asarray(towards, dtype=float)
    along = np.sum(rel * towards, axis=-1)
    across = rel[..., 1] * towards[..., 0] - rel[..., 0] * towards[..., 1]
    return (along >= 0.0) & (along <= height) & (np.abs(across) <= 0.5 * width)


def region_inside_cube(region, tol=CUBE_TOL):
    lo, hi = region.bounding_box()
    return bool(np.all(lo >= -tol) and np.all(hi <= 1.0 + tol))


def region_volume(region):
    """Area (d = 2) or volume (d >= 3) of T(X)."""
    d = region.d
    if d == 1:
        return region.height
    if d == 2:
        return region.height * region.base_radius
    # (1/d) * V_{d-1} * rho^{d-1} * h, V_k the volume of the unit k-ball
    k = d - 1
    unit_ball = math.pi ** (k / 2) / math.gamma(k / 2 + 1)
    return unit_ball * region.base_radius**k * region.height / d


def make_region(X, O, profile, r):
    """Build T(X) for the target point X.

    Raises XTooCloseToCenter when X is within r/2 of O and
    XTooCloseToBoundary when the region leaves the cube.
    """
    X = as_point(X)
    O = as_point(O)
    _check_dims(X, O)
    gap = float(np.linalg.norm(O - X))
    if gap < r / 2:
        raise XTooCloseToCenter(f"target at distance {gap:.6g} from the centre, needs at least {r / 2:.6g}")
    d = X.shape[0]
    region = ApexCone(
        apex=X,
        axis=(O - X) / gap,
        height=profile.region_height(r),
        base_radius=profile.region_base_radius(r, d),
    )
    if not region_inside_cube(region):
        raise XTooCloseToBoundary(f"region at {np.array2string(X, precision=6)} leaves the cube")
    return region


def cone_contains(region, p):
    return region.contains(p)


def candidate_point(O, C, Rp):
    """C' : the point of line O-Rp at the same level as C along u = unit(C - O)."""
    O = as_point(O)
    C = as_point(C)
    Rp = as_point(Rp)
    _check_dims(O, C)
    _check_dims(O, Rp)
    u = unit(C - O)
    if u is None:
        raise ValueError("candidate_point needs C != O")
    if unit(Rp - O) is None:
        raise ValueError("candidate_point needs Rp != O")
    level_c = float((C - O) @ u)
    level_rp = float((Rp - O) @ u)
    if level_rp < level_c * (1.0 - REL_TOL):
        raise AbovePerpendicular(f"robber level {level_rp:.6g} above cop level {level_c:.6g}")
    s = min(level_c / level_rp, 1.0)
    return O + s * (Rp - O)


def perpendicular_pair(direction):
    """Two opposite unit vectors orthogonal to ``direction``.

    d = 2 rotates by +90 degrees first; d > 2 runs Gram-Schmidt against the
    first coordinate axis that is not parallel to the direction.
    """
    u = unit(as_point(direction))
    if u is None:
        raise ValueError("perpendicular_pair needs a nonzero direction")
    d = u.shape[0]
    if d < 2:
        raise NoPerpendicular("no perpendicular direction in one dimension")
    if d == 2:
        p = np.array([-u[1], u[0]])
        return p, -p
    for axis in range(d):
        if abs(u[axis]) < 1.0 - 1e-6:
            e = np.zeros(d)
            e[axis] = 1.0
            p = unit(e - u[axis] * u)
            return p, -p
    raise NoPerpendicular(f"no axis usable against {u}")


def feasible_step(point, direction, limit=math.inf):
    """Largest t <= limit with point + t*direction inside the cube."""
    t = limit
    for x, v in zip(point, direction):
        if v > 0:
            t = min(t, (1.0 - x) / v)
        elif v < 0:
            t = min(t, -x / v)
    return max(t, 0.0)


def clip_to_cube(point):
    return np.clip(point, 0.0, 1.0)
