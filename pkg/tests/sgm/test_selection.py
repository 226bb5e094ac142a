#!/usr/bin/env python
# -*- coding: UTF-8 -*-
#
import unittest

import numpy as np

from temposgm.geometry import DisparityMap
from temposgm.matching import CostVolume, SearchRangeMap
from temposgm.sgm import median_refine, winner_takes_all


def create_volume(lo, hi, costs, d_max=8, defined=True):
    ranges = SearchRangeMap(np.array([[lo]]), np.array([[hi]]), d_max)
    return CostVolume(
        ranges=ranges,
        offsets=ranges.offsets(),
        costs=np.array(costs, dtype=np.uint16),
        defined=np.array([[defined]]),
    )


class TestWinnerTakesAll(unittest.TestCase):
    def test_offset_range(self):
        result = winner_takes_all(create_volume(3, 5, [5, 2, 9]))
        self.assertEqual(result.disparity[0, 0], 4)
        self.assertTrue(result.valid[0, 0])

    def test_tie_goes_to_smaller_disparity(self):
        self.assertEqual(
            winner_takes_all(create_volume(0, 1, [2, 2])).disparity[0, 0], 0
        )
        self.assertEqual(
            winner_takes_all(create_volume(2, 5, [7, 3, 1, 1])).disparity[0, 0], 4
        )

    def test_single_disparity(self):
        self.assertEqual(winner_takes_all(create_volume(6, 6, [20])).disparity[0, 0], 6)

    def test_undefined_pixel(self):
        result = winner_takes_all(create_volume(0, 2, [1, 0, 1], defined=False))
        self.assertFalse(result.valid[0, 0])


class TestMedianRefine(unittest.TestCase):
    def test_spike(self):
        disparity = np.full((5, 5), 10, dtype=np.int32)
        disparity[2, 2] = 100
        result = median_refine(DisparityMap(disparity, np.ones((5, 5), bool)))
        np.testing.assert_array_equal(result.disparity, np.full((5, 5), 10))
        self.assertTrue(result.valid.all())

    def test_constant_map(self):
        dm = DisparityMap(np.full((4, 6), 7, dtype=np.int32), np.ones((4, 6), bool))
        result = median_refine(dm)
        np.testing.assert_array_equal(result.disparity, dm.disparity)
        np.testing.assert_array_equal(result.valid, dm.valid)

    def test_lower_median(self):
        disparity = np.array([[1, 2], [3, 4]], dtype=np.int32)
        result = median_refine(DisparityMap(disparity, np.ones((2, 2), bool)))
        np.testing.assert_array_equal(result.disparity, np.full((2, 2), 2))

    def test_invalid_neighbors_are_ignored(self):
        disparity = np.array([[5, 0, 5], [5, 5, 0], [0, 0, 0]], dtype=np.int32)
        valid = disparity > 0
        result = median_refine(DisparityMap(disparity, valid))
        self.assertEqual(result.disparity[1, 1], 5)

    def test_fill_rule(self):
        disparity = np.full((3, 3), 8, dtype=np.int32)
        valid = np.ones((3, 3), bool)
        valid[1, 1] = False
        result = median_refine(DisparityMap(disparity, valid))
        # eight valid neighbors fill the center
        self.assertTrue(result.valid[1, 1])
        self.assertEqual(result.disparity[1, 1], 8)

        valid = np.zeros((3, 3), bool)
        valid[0, :] = True
        valid[1, 0] = True
        result = median_refine(DisparityMap(disparity, valid))
        # four valid neighbors are not enough
        self.assertFalse(result.valid[1, 1])
        self.assertTrue(result.valid[0, 0])

        valid[2, 0] = True
        self.assertTrue(median_refine(DisparityMap(disparity, valid)).valid[1, 1])

    def test_all_invalid(self):
        result = median_refine(DisparityMap.invalid(4, 4))
        self.assertFalse(result.valid.any())
