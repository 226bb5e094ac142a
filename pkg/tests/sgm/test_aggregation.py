#!/usr/bin/env python
# -*- coding: UTF-8 -*-
#
import unittest

import numpy as np
import pytest

from temposgm.matching import (
    CostVolume,
    SearchRangeMap,
    build_cost_volume,
    census_transform,
)
from temposgm.sgm import (
    ALL_DIRECTIONS,
    SgmParams,
    aggregate_direction,
    aggregate_paths,
    winner_takes_all,
)
from temposgm.sgm.aggregation import split_passes


def naive_path_costs(volume, direction, p1, p2):
    """
    Evaluate the path recursion pixel by pixel, following every path back
    to the image border.

    :return: A dict mapping (x, y) to the list of path costs over [lo, hi].
    """
    height, width = volume.shape
    lo, hi = volume.ranges.lo, volume.ranges.hi
    dx, dy = direction
    cache = {}

    def path_cost(x, y):
        if (x, y) in cache:
            return cache[(x, y)]
        costs = [int(c) for c in volume.at(x, y)]
        qx, qy = x - dx, y - dy
        if not (0 <= qx < width and 0 <= qy < height):
            result = costs
        else:
            previous = dict(zip(range(lo[qy, qx], hi[qy, qx] + 1), path_cost(qx, qy)))
            q_min = min(previous.values())
            result = []
            for t, d in enumerate(range(lo[y, x], hi[y, x] + 1)):
                candidates = [q_min + p2]
                if d in previous:
                    candidates.append(previous[d])
                if d - 1 in previous:
                    candidates.append(previous[d - 1] + p1)
                if d + 1 in previous:
                    candidates.append(previous[d + 1] + p1)
                result.append(costs[t] + min(candidates) - q_min)
        cache[(x, y)] = result
        return result

    return {(x, y): path_cost(x, y) for y in range(height) for x in range(width)}


def create_volume(seed, width=16, height=8, d_max=8, ranges=None):
    rng = np.random.default_rng(seed)
    left = rng.integers(0, 256, (height, width), dtype=np.uint8)
    right = rng.integers(0, 256, (height, width), dtype=np.uint8)
    if ranges is None:
        ranges = SearchRangeMap.full(height, width, d_max)
    return build_cost_volume(census_transform(left), census_transform(right), ranges)


def create_uniform_volume(height, width, d_max, value):
    ranges = SearchRangeMap.full(height, width, d_max)
    offsets = ranges.offsets()
    return CostVolume(
        ranges=ranges,
        offsets=offsets,
        costs=np.full(int(offsets[-1]), value, dtype=np.uint8),
        defined=np.ones((height, width), dtype=bool),
    )


def test_full_range_matches_naive_recursion():
    params = SgmParams(p1=6, p2=65, paths=8, d_max=8)
    for seed in range(50):
        volume = create_volume(seed)
        total = np.zeros(volume.size, dtype=np.int64)
        for direction in ALL_DIRECTIONS:
            expected = naive_path_costs(volume, direction, params.p1, params.p2)
            actual = aggregate_direction(volume, params, direction)
            for (x, y), costs in expected.items():
                np.testing.assert_array_equal(actual.at(x, y), costs)
            total += actual.costs
        aggregated = aggregate_paths(volume, params)
        np.testing.assert_array_equal(aggregated.costs, total)

        dense = total.reshape(8, 16, 8)
        disparity = winner_takes_all(aggregated)
        np.testing.assert_array_equal(
            disparity.disparity[volume.defined], np.argmin(dense, axis=-1)[
                volume.defined
            ]
        )


def test_reduced_ranges_match_naive_recursion():
    params = SgmParams(p1=6, p2=65, paths=8, d_max=8)
    rng = np.random.default_rng(99)
    for seed in range(10):
        lo = rng.integers(0, 8, (8, 16))
        hi = np.minimum(lo + rng.integers(0, 4, (8, 16)), 7)
        volume = create_volume(seed, ranges=SearchRangeMap(lo, hi, 8))
        for direction in ALL_DIRECTIONS:
            expected = naive_path_costs(volume, direction, params.p1, params.p2)
            actual = aggregate_direction(volume, params, direction)
            for (x, y), costs in expected.items():
                np.testing.assert_array_equal(actual.at(x, y), costs)


class TestAggregation(unittest.TestCase):
    def test_single_pixel(self):
        volume = create_uniform_volume(1, 1, 4, 0)
        volume.costs[:] = [3, 1, 4, 1]
        for direction in ALL_DIRECTIONS:
            result = aggregate_direction(volume, SgmParams(d_max=4), direction)
            np.testing.assert_array_equal(result.costs, [3, 1, 4, 1])

    def test_uniform_costs(self):
        volume = create_uniform_volume(6, 7, 5, 9)
        for paths, path_set in (
            (8, "nondiagonal"), (4, "nondiagonal"), (4, "diagonal")
        ):
            params = SgmParams(paths=paths, path_set=path_set, d_max=5)
            result = aggregate_paths(volume, params)
            self.assertEqual(result.costs.dtype, np.uint16)
            self.assertTrue(np.all(result.costs == paths * 9))

    def test_bounded_by_p2(self):
        volume = create_volume(3, width=24, height=12, d_max=16)
        params = SgmParams(p1=6, p2=65, d_max=16)
        costs = volume.costs.astype(np.int64)
        for direction in ALL_DIRECTIONS:
            result = aggregate_direction(volume, params, direction).costs
            self.assertTrue(np.all(result >= costs))
            self.assertTrue(np.all(result <= costs + params.p2))

    def test_invalid_direction(self):
        volume = create_uniform_volume(2, 2, 2, 0)
        self.assertRaises(
            ValueError, aggregate_direction, volume, SgmParams(d_max=2), (0, 0)
        )
        self.assertRaises(
            ValueError, aggregate_direction, volume, SgmParams(d_max=2), (2, 1)
        )


def test_split_passes():
    forward, backward = split_passes(ALL_DIRECTIONS)
    assert sorted(map(tuple, forward)) == sorted([(1, 0), (0, 1), (1, 1), (-1, 1)])
    assert sorted(map(tuple, backward)) == sorted([(-1, 0), (0, -1), (-1, -1), (1, -1)])


@pytest.mark.parametrize("path_set", ["nondiagonal", "diagonal"])
def test_four_paths_sum(path_set):
    volume = create_volume(5)
    params = SgmParams(paths=4, path_set=path_set, d_max=8)
    expected = sum(
        aggregate_direction(volume, params, direction).costs.astype(np.int64)
        for direction in params.directions()
    )
    np.testing.assert_array_equal(aggregate_paths(volume, params).costs, expected)
