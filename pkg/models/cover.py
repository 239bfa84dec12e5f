"""Occupancy checks for the snapping regions.

A fixed lattice of thin rectangles (anchored on a grid, long side toward
O) is cut so that every region T(X) fully contains one of them; if every
rectangle holds a vertex, every T(X) does. The probability arithmetic is
done in log-space: n*area is large while area is tiny.
"""
import logging
import math
from dataclasses import dataclass

import numpy as np
from scipy import stats

from models.errors import CoverTooLarge, DimensionMismatch
from models.geometry import ApexCone, OrientedRectangle, rectangle_contains, region_volume

MAX_ANCHORS = 5 * 10**7
_ROW_CHUNK = 256


@dataclass(frozen=True)
class ThresholdParams:
    c: float
    n: int
    r: float = None
    d: int = 2

    def __post_init__(self):
        if not self.c > 0:
            raise ValueError("c must be positive")
        if self.n < 1:
            raise ValueError("n must be at least 1")


def _towards_center(anchors):
    offset = 0.5 - anchors
    length = np.linalg.norm(offset, axis=-1, keepdims=True)
    with np.errstate(invalid='ignore', divide='ignore'):
        return offset / length


class CoverFamily:
    """Rectangles anchored at ((i+1/2)g, (j+1/2)g); ``mask[i, j]`` marks
    the anchors kept in the family. Rectangles are built on demand."""

    def __init__(self, r, profile, grid_step, mask):
        self.r = r
        self.profile = profile
        self.grid_step = grid_step
        self.mask = mask
        self.width = profile.cover_width(r)
        self.height = profile.cover_height(r)

    @property
    def m(self):
        return self.mask.shape[0]

    @property
    def area(self):
        return self.width * self.height

    def __len__(self):
        return int(np.count_nonzero(self.mask))

    def anchor(self, i, j):
        return (np.array([i, j], dtype=float) + 0.5) * self.grid_step

    def rectangle(self, i, j):
        anchor = self.anchor(i, j)
        return OrientedRectangle(anchor, _towards_center(anchor), self.width, self.height)

    def __iter__(self):
        for i, j in np.argwhere(self.mask):
            yield self.rectangle(int(i), int(j))

    @property
    def rectangles(self):
        return list(self)

    def kept_in_box(self, lo, hi):
        """Index arrays (ii, jj) of kept anchors inside the box [lo, hi]."""
        lo_idx = np.maximum(np.floor(np.asarray(lo) / self.grid_step - 0.5).astype(int), 0)
        hi_idx = np.minimum(np.ceil(np.asarray(hi) / self.grid_step - 0.5).astype(int), self.m - 1)
        if np.any(lo_idx > hi_idx):
            return np.empty(0, dtype=int), np.empty(0, dtype=int)
        window = self.mask[lo_idx[0]:hi_idx[0] + 1, lo_idx[1]:hi_idx[1] + 1]
        ii, jj = np.nonzero(window)
        return ii + lo_idx[0], jj + lo_idx[1]


def exclusion_radius(r, profile):
    """Anchors closer than this to O are dropped; a valid T(X) (apex at
    least r/2 from O) never reaches further in than r/2 - height."""
    return max(r / 2 - profile.region_height(r), 0.0)


def build_cover(r, profile, max_anchors=MAX_ANCHORS):
    grid_step = profile.cover_width(r)
    if not grid_step < 1:
        raise ValueError(f"grid step {grid_step} must be below 1")
    m = math.ceil(1.0 / grid_step)
    if m * m > max_anchors:
        raise CoverTooLarge(f"{m}x{m} anchors exceed the limit of {max_anchors}")

    width = profile.cover_width(r)
    height = profile.cover_height(r)
    excluded = exclusion_radius(r, profile)
    coords = (np.arange(m) + 0.5) * grid_step
    mask = np.zeros((m, m), dtype=bool)
    for start in range(0, m, _ROW_CHUNK):
        stop = min(start + _ROW_CHUNK, m)
        anchors = np.stack(np.broadcast_arrays(coords[start:stop, None], coords[None, :]), axis=-1)
        gap = np.linalg.norm(0.5 - anchors, axis=-1)
        toward = _towards_center(anchors)
        normal = np.stack([-toward[..., 1], toward[..., 0]], axis=-1)
        half = 0.5 * width * normal
        far = anchors + height * toward
        inside = np.ones(gap.shape, dtype=bool)
        for corner in (anchors - half, anchors + half, far - half, far + half):
            inside &= np.all((corner >= 0.0) & (corner <= 1.0), axis=-1)
        mask[start:stop] = (gap > 0.0) & (gap >= excluded) & inside
    family = CoverFamily(r, profile, grid_step, mask)
    logging.info(f"Cover for r={r}: {len(family)} of {m * m} anchors kept")
    return family


def cover_witness(cover, region):
    """A rectangle of the family fully inside the region, or None."""
    lo, hi = region.bounding_box()
    ii, jj = cover.kept_in_box(lo - cover.grid_step, hi + cover.grid_step)
    if len(ii) == 0:
        return None
    anchors = (np.stack([ii, jj], axis=-1) + 0.5) * cover.grid_step
    toward = _towards_center(anchors)
    normal = np.stack([-toward[:, 1], toward[:, 0]], axis=-1)
    half = 0.5 * cover.width * normal
    far = anchors + cover.height * toward
    corners = np.stack([anchors - half, anchors + half, far - half, far + half], axis=1)
    fits = region.contains_many(corners.reshape(-1, 2)).reshape(-1, 4).all(axis=1)
    if not np.any(fits):
        return None
    k = int(np.argmax(fits))
    return cover.rectangle(int(ii[k]), int(jj[k]))


def check_regions_nonempty(g, cover):
    """Number of rectangles of the family holding no vertex of g."""
    if g.d != 2:
        raise DimensionMismatch("the rectangle cover is planar")
    step = cover.grid_step
    m = cover.m
    points = g.positions
    occupied = np.zeros_like(cover.mask)
    reach = math.hypot(cover.height, cover.width / 2)
    ring = math.ceil(reach / step) + 1
    base = np.floor(points / step).astype(np.int64)
    for di in range(-ring, ring + 1):
        for dj in range(-ring, ring + 1):
            ii = base[:, 0] + di
            jj = base[:, 1] + dj
            valid = (ii >= 0) & (ii < m) & (jj >= 0) & (jj < m)
            if not np.any(valid):
                continue
            ii, jj, near = ii[valid], jj[valid], points[valid]
            anchors = (np.stack([ii, jj], axis=-1) + 0.5) * step
            hits = cover.mask[ii, jj] & rectangle_contains(
                anchors, _towards_center(anchors), cover.width, cover.height, near)
            occupied[ii[hits], jj[hits]] = True
    return int(np.count_nonzero(cover.mask & ~occupied))


def log_empty_probability(area, n):
    if not 0.0 <= area <= 1.0:
        raise ValueError(f"area must be in [0, 1], got {area}")
    if n == 0 or area == 0.0:
        return 0.0
    if area == 1.0:
        return -math.inf
    return n * math.log1p(-area)


def empty_probability_bound(area, n):
    """(1 - area)^n: chance that a fixed region of this area holds no vertex."""
    return math.exp(log_empty_probability(area, n))


def threshold_radius(c, n, d=2):
    """r solving r^(3d-1) = c log n / n."""
    return (c * math.log(n) / n) ** (1.0 / (3 * d - 1))


def cover_upper_count(r, profile):
    return math.ceil(1.0 / profile.cover_width(r)) ** 2


def log_union_bound(params, profile, rectangles=None):
    """Natural log of count * (1 - area)^n, the lemma's failure bound.

    Without ``rectangles`` the count is the full lattice size
    ceil(1/grid_step)^2; ``params.r=None`` uses the threshold radius.
    """
    r = params.r if params.r is not None else threshold_radius(params.c, params.n, params.d)
    count = cover_upper_count(r, profile) if rectangles is None else rectangles
    if count == 0:
        return -math.inf
    area = min(profile.cover_width(r) * profile.cover_height(r), 1.0)
    return math.log(count) + log_empty_probability(area, params.n)


def union_bound_threshold(params, profile, rectangles=None):
    return math.exp(log_union_bound(params, profile, rectangles))


def expected_region_occupancy(d, n, r, profile):
    """Expected number of vertices inside one region T(X)."""
    region = ApexCone(
        apex=np.full(d, 0.5),
        axis=np.eye(d)[0],
        height=profile.region_height(r),
        base_radius=profile.region_base_radius(r, d),
    )
    return n * region_volume(region)


@dataclass(frozen=True)
class OccupancyResult:
    trials: int
    empty: int
    expected: float

    @property
    def frequency(self):
        return self.empty / self.trials

    @property
    def standard_error(self):
        return float(stats.binom(self.trials, self.expected).std()) / self.trials

    def within(self, errors=3.0):
        return abs(self.frequency - self.expected) <= errors * self.standard_error


def occupancy_trials(area, n, trials, seed, batch=32):
    """Monte Carlo frequency of an empty fixed rectangle among n uniform points."""
    side = math.sqrt(area)
    rect = OrientedRectangle(np.array([0.5, 0.25]), np.array([0.0, 1.0]), side, side)
    rng = np.random.default_rng(seed)
    empty = 0
    done = 0
    while done < trials:
        size = min(batch, trials - done)
        points = rng.random((size, n, 2))
        inside = rect.contains_many(points.reshape(-1, 2)).reshape(size, n)
        empty += int(np.count_nonzero(~inside.any(axis=1)))
        done += size
    return OccupancyResult(trials, empty, empty_probability_bound(area, n))
