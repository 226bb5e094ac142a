#!/usr/bin/env python
# -*- coding: UTF-8 -*-
#
import unittest

import numpy as np

from temposgm.geometry import DisparityMap, DisparityState


class TestDisparityMap(unittest.TestCase):
    def test_shape_mismatch(self):
        self.assertRaises(ValueError, DisparityMap, np.zeros((4, 5)), np.zeros((5, 4)))
        self.assertRaises(ValueError, DisparityMap, np.zeros(4), np.zeros(4))

    def test_invalid(self):
        dm = DisparityMap.invalid(3, 4)
        self.assertEqual(dm.shape, (3, 4))
        self.assertEqual(dm.density(), 0.0)

    def test_masked(self):
        dm = DisparityMap(
            np.array([[3, 4], [5, 6]]), np.array([[True, False], [False, True]])
        )
        np.testing.assert_array_equal(dm.masked(-1), [[3, -1], [-1, 6]])
        self.assertEqual(dm.density(), 0.5)


class TestDisparityState(unittest.TestCase):
    def setUp(self):
        self.state = DisparityState(
            np.array([[1.4, 2.6], [3.5, 9.0]]),
            np.array([[1.0, 2.0], [3.0, 4.0]]),
            np.array([[True, True], [True, False]]),
        )

    def test_empty(self):
        state = DisparityState.empty(2, 3, p_init=7.0)
        self.assertFalse(state.valid.any())
        self.assertTrue(np.all(state.p == 7.0))

    def test_from_map(self):
        dm = DisparityMap(np.array([[3, 4]]), np.array([[True, False]]))
        state = DisparityState.from_map(dm, 2.5)
        np.testing.assert_array_equal(state.d, [[3.0, 0.0]])
        np.testing.assert_array_equal(state.p, [[2.5, 2.5]])
        np.testing.assert_array_equal(state.valid, dm.valid)

    def test_copy_is_independent(self):
        copy = self.state.copy()
        copy.d[0, 0] = 50.0
        self.assertEqual(self.state.d[0, 0], 1.4)

    def test_invalidate(self):
        mask = np.array([[False, True], [False, False]])
        result = self.state.invalidate(mask, 99.0)
        self.assertFalse(result.valid[0, 1])
        self.assertEqual(result.p[0, 1], 99.0)
        self.assertTrue(self.state.valid[0, 1])

    def test_to_map(self):
        dm = self.state.to_map()
        np.testing.assert_array_equal(dm.disparity, [[1, 3], [4, 0]])
        np.testing.assert_array_equal(dm.valid, self.state.valid)

    def test_check(self):
        self.state.check(d_max=10)
        self.assertRaises(ValueError, self.state.check, 3)
        self.state.p[0, 0] = 0.0
        self.assertRaises(ValueError, self.state.check, 10)
