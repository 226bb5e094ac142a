#!/usr/bin/env python
# -*- coding: UTF-8 -*-
#
import unittest

import numpy as np
import pytest

from temposgm.matching import SearchRangeMap
from temposgm.sgm import SemiGlobalMatcher, SgmParams, sgm_match


class TestSemiGlobalMatcher(unittest.TestCase):
    def setUp(self):
        self.params = SgmParams(d_max=16)
        self.matcher = SemiGlobalMatcher(self.params)
        rng = np.random.default_rng(11)
        texture = rng.integers(0, 256, (40, 70), dtype=np.uint8)
        self.left = texture[:, :64].copy()
        self.right = texture[:, 6:].copy()

    def test_recovers_shift(self):
        result = self.matcher.match(self.left, self.right)
        interior = result.disparity[6:-6, 16:-6]
        self.assertGreaterEqual(np.mean(interior == 6), 0.99)
        self.assertTrue(result.valid[2:-2, 2:-2].all())
        self.assertFalse(result.valid[:2].any())

    def test_forced_range(self):
        ranges = SearchRangeMap.constant(40, 64, 3, 3, 16)
        result = self.matcher.match(self.left, self.right, ranges)
        self.assertTrue(np.all(result.disparity[result.valid] == 3))

    def test_timings(self):
        self.matcher.match(self.left, self.right)
        self.assertEqual(
            list(self.matcher.timings), ["census", "cost", "aggregate", "wta"]
        )

    def test_parameters(self):
        parameters = self.matcher.pipeline.parameters()
        self.assertDictEqual(parameters["aggregate"], self.params.to_dict())

    def test_size_mismatch(self):
        self.assertRaises(ValueError, self.matcher.match, self.left, self.right[:, :-1])

    def test_level_mismatch(self):
        ranges = SearchRangeMap.full(40, 64, 8)
        self.assertRaises(ValueError, self.matcher.match, self.left, self.right, ranges)

    def test_color_input(self):
        color = np.dstack([self.left] * 3)
        self.assertRaises(ValueError, self.matcher.match, color, self.right)


@pytest.mark.parametrize(
    "paths, path_set", [(8, "nondiagonal"), (4, "nondiagonal"), (4, "diagonal")]
)
def test_sgm_match_is_deterministic(shifted_pair, paths, path_set):
    left, right = shifted_pair(width=48, height=32, shift=4, seed=3)
    params = SgmParams(paths=paths, path_set=path_set, d_max=12)
    first = sgm_match(left, right, None, params)
    second = SemiGlobalMatcher(params).match(
        left, right, SearchRangeMap.full(32, 48, 12)
    )
    np.testing.assert_array_equal(first.disparity, second.disparity)
    np.testing.assert_array_equal(first.valid, second.valid)
