"""Tests for models.cover."""
import math
import os

import numpy as np
from absl.testing import absltest
from absl.testing import parameterized

from controllers.experiments import sample_valid_region
from models import cover
from models.errors import CoverTooLarge, DimensionMismatch
from models.profiles import DESK, PAPER, resolve_profile
from models.rgg import Rgg, RggParams

LONG = os.environ.get('RGG_PURSUIT_LONG') == '1'

# Rectangles 0.027 x 0.09 at r = 0.3: a small lattice that is cheap to brute force.
COARSE = resolve_profile('coarse')


class EmptyProbabilityTest(parameterized.TestCase):

    @parameterized.parameters(
        (0.5, 1, 0.5),
        (0.0, 10, 1.0),
        (0.3, 0, 1.0),
        (1.0, 3, 0.0),
    )
    def test_exact_values(self, area, n, expected):
        self.assertAlmostEqual(cover.empty_probability_bound(area, n), expected, places=12)

    def test_small_area_many_points(self):
        self.assertAlmostEqual(cover.empty_probability_bound(5e-4, 10**4), 6.7295e-3, delta=1e-6)

    def test_area_out_of_range(self):
        with self.assertRaises(ValueError):
            cover.log_empty_probability(1.5, 10)


class UnionBoundTest(absltest.TestCase):

    def test_threshold_radius(self):
        n = 10**6
        r = cover.threshold_radius(1e13, n)
        self.assertAlmostEqual(r**5, 1e13 * math.log(n) / n, delta=1e-6 * r**5)
        self.assertAlmostEqual(r, 42.47, delta=0.05)

    def test_no_rectangles(self):
        params = cover.ThresholdParams(c=1.0, n=100, r=0.25)
        self.assertEqual(cover.log_union_bound(params, DESK, rectangles=0), -math.inf)
        self.assertEqual(cover.union_bound_threshold(params, DESK, rectangles=0), 0.0)

    def test_desk_scale_bound(self):
        params = cover.ThresholdParams(c=1.0, n=10**7, r=0.25)
        self.assertEqual(cover.cover_upper_count(0.25, DESK), 1024**2)
        self.assertLess(cover.union_bound_threshold(params, DESK), 1e-3)
        self.assertAlmostEqual(cover.log_union_bound(params, DESK), -24.28, delta=0.02)

    def test_paper_constants_beat_target(self):
        n = 10**6
        params = cover.ThresholdParams(c=1e13, n=n)
        target = -8 * math.log(n)
        self.assertEqual(cover.cover_upper_count(cover.threshold_radius(1e13, n), PAPER), 196)
        self.assertLess(cover.log_union_bound(params, PAPER), target)
        self.assertLess(cover.log_union_bound(params, PAPER, rectangles=n**2), target)

    def test_small_c_does_not(self):
        n = 10**6
        params = cover.ThresholdParams(c=1e12, n=n)
        self.assertGreater(cover.log_union_bound(params, PAPER, rectangles=n**2), -8 * math.log(n))

    def test_params_validation(self):
        with self.assertRaises(ValueError):
            cover.ThresholdParams(c=0.0, n=10)
        with self.assertRaises(ValueError):
            cover.ThresholdParams(c=1.0, n=0)

    def test_expected_region_occupancy(self):
        expected = 10**6 * DESK.region_height(0.25) * DESK.region_base_radius(0.25, 2)
        self.assertAlmostEqual(cover.expected_region_occupancy(2, 10**6, 0.25, DESK), expected)
        self.assertAlmostEqual(expected, 61.035, places=2)


class BuildCoverTest(absltest.TestCase):

    @classmethod
    def setUpClass(cls):
        super().setUpClass()
        cls.r = 0.3
        cls.family = cover.build_cover(cls.r, COARSE)

    def test_grid(self):
        self.assertAlmostEqual(self.family.grid_step, 0.027)
        self.assertEqual(self.family.m, 38)
        self.assertGreater(len(self.family), 0)
        self.assertLess(len(self.family), 38 * 38)

    def test_rectangles_inside_cube_and_away_from_centre(self):
        excluded = cover.exclusion_radius(self.r, COARSE)
        self.assertAlmostEqual(excluded, 0.15 - 0.0225)
        for rect in self.family:
            corners = rect.corners()
            self.assertTrue(np.all(corners >= 0.0) and np.all(corners <= 1.0))
            self.assertGreaterEqual(np.linalg.norm(rect.anchor - 0.5), excluded)
            np.testing.assert_allclose(np.linalg.norm(rect.toward), 1.0)

    def test_rectangles_point_to_centre(self):
        rect = self.family.rectangles[0]
        toward = (0.5 - rect.anchor) / np.linalg.norm(0.5 - rect.anchor)
        np.testing.assert_allclose(rect.toward, toward)

    def test_too_large(self):
        with self.assertRaises(CoverTooLarge):
            cover.build_cover(0.3, DESK, max_anchors=1000)

    def test_grid_step_must_be_small(self):
        with self.assertRaises(ValueError):
            cover.build_cover(1.0, COARSE)


class CheckRegionsTest(absltest.TestCase):

    @classmethod
    def setUpClass(cls):
        super().setUpClass()
        cls.family = cover.build_cover(0.3, COARSE)

    def test_vertex_at_centre_leaves_all_empty(self):
        g = Rgg.from_positions([(0.5, 0.5)], 0.3)
        self.assertEqual(cover.check_regions_nonempty(g, self.family), len(self.family))

    def test_dense_grid_fills_all(self):
        # Spacing w/2: every w x h rectangle contains a grid point.
        step = self.family.width / 2
        ticks = (np.arange(math.ceil(1.0 / step)) + 0.5) * step
        ticks = ticks[ticks <= 1.0]
        grid = np.stack(np.meshgrid(ticks, ticks, indexing='ij'), axis=-1).reshape(-1, 2)
        g = Rgg.from_positions(grid, 0.3)
        self.assertEqual(cover.check_regions_nonempty(g, self.family), 0)

    def test_matches_brute_force(self):
        rng = np.random.default_rng(3)
        g = Rgg.from_positions(rng.random((300, 2)), 0.3)
        empty = sum(1 for rect in self.family if not np.any(rect.contains_many(g.positions)))
        self.assertGreater(empty, 0)
        self.assertEqual(cover.check_regions_nonempty(g, self.family), empty)

    def test_planar_only(self):
        g = Rgg.generate(RggParams(n=10, r=0.3, d=3, seed=0))
        with self.assertRaises(DimensionMismatch):
            cover.check_regions_nonempty(g, self.family)


class CoverPropertyTest(absltest.TestCase):
    """Every valid region fully contains a rectangle of the family."""

    def test_desk_regions_have_witness(self):
        r = 0.3
        family = cover.build_cover(r, DESK)
        rng = np.random.default_rng(11)
        samples = 2000 if LONG else 200
        for _ in range(samples):
            region = sample_valid_region(rng, r, DESK)
            self.assertIsNotNone(region)
            witness = cover.cover_witness(family, region)
            self.assertIsNotNone(witness, region.apex)
            self.assertTrue(np.all(region.contains_many(witness.corners())))


class OccupancyTest(absltest.TestCase):

    def test_frequency_matches_bound(self):
        trials = 10**4 if LONG else 2000
        result = cover.occupancy_trials(5e-4, 10**4, trials, seed=5)
        self.assertEqual(result.trials, trials)
        self.assertAlmostEqual(result.expected, 6.7295e-3, delta=1e-6)
        self.assertTrue(result.within(), (result.frequency, result.standard_error))

    def test_standard_error(self):
        result = cover.OccupancyResult(trials=100, empty=10, expected=0.1)
        self.assertAlmostEqual(result.frequency, 0.1)
        self.assertAlmostEqual(result.standard_error, 0.03)
        self.assertTrue(result.within())
        self.assertFalse(cover.OccupancyResult(trials=100, empty=40, expected=0.1).within())


if __name__ == '__main__':
    absltest.main()
