import itertools
import logging
import math
from dataclasses import dataclass

import networkx as nx
import numpy as np

from models.errors import PointOutsideCube
from models.geometry import CUBE_TOL, MAX_DIM


@dataclass(frozen=True)
class RggParams:
    n: int
    r: float
    d: int = 2
    seed: int = 0

    def __post_init__(self):
        if self.n < 1:
            raise ValueError(f"n must be at least 1, got {self.n}")
        if not 1 <= self.d <= MAX_DIM:
            raise ValueError(f"d must be between 1 and {MAX_DIM}, got {self.d}")
        if not self.r > 0:
            raise ValueError(f"r must be positive, got {self.r}")
        if self.r > math.sqrt(self.d):
            logging.debug(f"r={self.r} exceeds the cube diameter; the graph is complete")
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must be a 64-bit unsigned integer")


class GridIndex:
    """Fixed-radius grid: maps integer cell coordinates to vertex ids."""

    def __init__(self, positions, cell_size):
        if cell_size <= 0:
            raise ValueError("cell_size must be positive")
        self.cell_size = float(cell_size)
        self.positions = positions
        self.cells = {}
        if len(positions) == 0:
            return
        keys = np.floor(positions / self.cell_size).astype(np.int64)
        unique_keys, inverse = np.unique(keys, axis=0, return_inverse=True)
        inverse = inverse.reshape(-1)
        order = np.argsort(inverse, kind='stable')
        bounds = np.cumsum(np.bincount(inverse, minlength=len(unique_keys)))[:-1]
        for key, ids in zip(unique_keys, np.split(order, bounds)):
            self.cells[tuple(int(k) for k in key)] = ids

    def cell_of(self, point):
        return tuple(int(k) for k in np.floor(np.asarray(point) / self.cell_size))

    def ids_in_box(self, lo, hi):
        """Ids stored in every cell that meets the box [lo, hi] (unfiltered)."""
        lo_cell = np.floor(np.asarray(lo) / self.cell_size).astype(np.int64)
        hi_cell = np.floor(np.asarray(hi) / self.cell_size).astype(np.int64)
        return self.ids_in_cells(lo_cell, hi_cell)

    def ids_in_cells(self, lo_cell, hi_cell):
        ranges = [range(int(a), int(b) + 1) for a, b in zip(lo_cell, hi_cell)]
        span = math.prod(len(rng) for rng in ranges)
        if span > len(self.cells):
            # Cheaper to walk the occupied cells than the box.
            chunks = [ids for key, ids in self.cells.items()
                      if all(a <= k <= b for k, a, b in zip(key, lo_cell, hi_cell))]
        else:
            chunks = [self.cells[key] for key in itertools.product(*ranges) if key in self.cells]
        if not chunks:
            return np.empty(0, dtype=np.int64)
        return np.concatenate(chunks)

    def ids_near(self, point, radius):
        """Ids in the ceil(radius/cell_size)-ring of cells around point."""
        ring = max(1, math.ceil(radius / self.cell_size)) if radius > 0 else 0
        base = np.floor(np.asarray(point) / self.cell_size).astype(np.int64)
        return self.ids_in_cells(base - ring, base + ring)

    def nbytes(self):
        return sum(ids.nbytes for ids in self.cells.values())


class Rgg:
    """G_d(n, r) as points plus a grid index; edges are never stored.

    Vertices u != v are adjacent iff their distance is at most r.
    """

    def __init__(self, params, positions):
        positions = np.array(positions, dtype=float)
        positions.setflags(write=False)
        self.params = params
        self.positions = positions
        self.index = GridIndex(positions, params.r)

    @classmethod
    def generate(cls, params):
        rng = np.random.default_rng(params.seed)
        positions = rng.random((params.n, params.d))
        logging.debug(f"Sampled G_{params.d}({params.n}, {params.r}) with seed {params.seed}")
        return cls(params, positions)

    @classmethod
    def from_positions(cls, positions, r, seed=0):
        positions = np.atleast_2d(np.asarray(positions, dtype=float))
        outside = np.any((positions < -CUBE_TOL) | (positions > 1.0 + CUBE_TOL), axis=1)
        if np.any(outside):
            raise PointOutsideCube(f"vertex {int(np.argmax(outside))} lies outside the unit cube")
        params = RggParams(n=positions.shape[0], r=r, d=positions.shape[1], seed=seed)
        return cls(params, np.clip(positions, 0.0, 1.0))

    @property
    def n(self):
        return self.params.n

    @property
    def r(self):
        return self.params.r

    @property
    def d(self):
        return self.params.d

    def point(self, vertex):
        return self.positions[vertex]

    def is_valid(self, vertex):
        return isinstance(vertex, (int, np.integer)) and 0 <= vertex < self.n

    def adjacent(self, u, v):
        if u == v:
            return False
        return float(np.linalg.norm(self.positions[u] - self.positions[v])) <= self.r

    def neighbors_within(self, center, radius):
        """Sorted ids with distance(position, center) <= radius."""
        center = np.asarray(center, dtype=float)
        candidates = self.index.ids_near(center, radius)
        if len(candidates) == 0:
            return []
        gaps = np.linalg.norm(self.positions[candidates] - center, axis=1)
        return sorted(int(v) for v in candidates[gaps <= radius])

    def vertices_in_cone(self, region):
        """Ids inside the region, nearest to the apex first (ties by id)."""
        lo, hi = region.bounding_box()
        candidates = self.index.ids_in_box(lo - self.index.cell_size, hi + self.index.cell_size)
        if len(candidates) == 0:
            return []
        members = candidates[region.contains_many(self.positions[candidates])]
        if len(members) == 0:
            return []
        gaps = np.linalg.norm(self.positions[members] - region.apex, axis=1)
        return [int(v) for v in members[np.lexsort((members, gaps))]]

    def nearest_vertex(self, point, mask=None):
        """Vertex closest to point (ties by smallest id), optionally among mask."""
        gaps = np.linalg.norm(self.positions - np.asarray(point, dtype=float), axis=1)
        if mask is not None:
            if not np.any(mask):
                return None
            gaps = np.where(mask, gaps, np.inf)
        return int(np.argmin(gaps))

    def is_legal_move(self, u, v):
        """Edge or stay."""
        gap = float(np.linalg.norm(self.positions[u] - self.positions[v]))
        return gap <= self.r

    def memory_footprint(self):
        """Bytes held by positions and index (grows with n, not with degree)."""
        return self.positions.nbytes + self.index.nbytes()

    def to_networkx(self, max_n=2000):
        if self.n > max_n:
            raise ValueError(f"refusing to materialize edges for n={self.n} > {max_n}")
        graph = nx.Graph()
        graph.add_nodes_from(range(self.n))
        for u in range(self.n):
            for v in self.neighbors_within(self.positions[u], self.r):
                if v > u:
                    graph.add_edge(u, v)
        return graph
