#!/usr/bin/env python
# -*- coding: UTF-8 -*-
#
import unittest

import numpy as np
import pytest

from temposgm.filtering import (
    FilterConfig,
    NoiseParams,
    correct,
    derive_search_ranges,
    difference_map,
    fill_zoom_holes,
    predict,
    reject_discontinuities,
    screen_prediction,
    warp_prior,
)
from temposgm.geometry import DisparityMap, DisparityState, RigidMotion, StereoCalib


def create_uniform_state(shape, d, p):
    return DisparityState(
        np.full(shape, float(d)), np.full(shape, float(p)), np.ones(shape, bool)
    )


@pytest.mark.parametrize("q", [0.0, 0.3])
def test_constant_scene_matches_scalar_recursion(calib_factory, q):
    calib = calib_factory(width=8, height=6, d_max=32)
    # the noise has to be positive, 1e-300 vanishes next to any variance
    cfg = FilterConfig(noise=NoiseParams(q=q or 1e-300, r=1.5))
    rng = np.random.default_rng(5)
    state = create_uniform_state(calib.shape, 20.0, 50.0)
    d, p = 20.0, 50.0
    variances = []
    for _ in range(100):
        z = int(rng.integers(18, 23))
        prediction = predict(state, RigidMotion.identity(), calib, cfg)
        state = correct(
            prediction,
            DisparityMap(np.full(calib.shape, z), np.ones(calib.shape, bool)),
            cfg,
        )

        p_pred = p + cfg.noise.q
        gain = p_pred / (p_pred + cfg.noise.r)
        d = d + gain * (z - d)
        p = (1 - gain) ** 2 * p_pred + gain * gain * cfg.noise.r
        np.testing.assert_allclose(state.d, d, rtol=0, atol=1e-12)
        np.testing.assert_allclose(state.p, p, rtol=0, atol=1e-12)
        assert state.valid.all()
        variances.append(p)
    if q == 0.0:
        assert all(b < a for a, b in zip(variances, variances[1:]))


class TestPredict(unittest.TestCase):
    def setUp(self):
        self.calib = StereoCalib(100.0, 32.0, 24.0, 0.2, 64, 48, d_max=32)
        self.cfg = FilterConfig(noise=NoiseParams(q=0.5, r=1.0), p_init=1000.0)

    def test_identity_adds_process_noise(self):
        state = create_uniform_state(self.calib.shape, 10.0, 2.0)
        prediction = predict(state, RigidMotion.identity(), self.calib, self.cfg)
        np.testing.assert_array_equal(prediction.d, state.d)
        np.testing.assert_array_equal(prediction.p, np.full(self.calib.shape, 2.5))

    def test_empty_state(self):
        prediction = predict(
            DisparityState.empty(*self.calib.shape),
            RigidMotion.identity(),
            self.calib,
            self.cfg,
        )
        self.assertFalse(prediction.valid.any())
        self.assertTrue(np.all(prediction.p == 1000.0))

    def test_shape_mismatch(self):
        state = DisparityState.empty(10, 10)
        self.assertRaises(
            ValueError, predict, state, RigidMotion.identity(), self.calib, self.cfg
        )

    def test_forward_motion_scales_variance(self):
        # a plane at 2 m seen with disparity 10 comes closer to 1.6 m
        state = create_uniform_state(self.calib.shape, 10.0, 2.0)
        motion = RigidMotion(translation=[0.0, 0.0, 0.4])
        prediction = predict(state, motion, self.calib, self.cfg)
        valid = prediction.valid
        self.assertGreater(np.mean(valid), 0.9)
        np.testing.assert_allclose(prediction.d[valid], 12.5)
        np.testing.assert_allclose(prediction.p[valid], 1.5625 * 2.0 + 0.5)
        self.assertTrue(np.all(prediction.p[~valid] == 1000.0))

    def test_sideways_motion_uncovers_border(self):
        # one baseline to the right shifts the image left by the disparity
        state = create_uniform_state(self.calib.shape, 10.0, 2.0)
        motion = RigidMotion(translation=[0.2, 0.0, 0.0])
        prediction = predict(state, motion, self.calib, self.cfg)
        self.assertTrue(prediction.valid[:, :54].all())
        self.assertFalse(prediction.valid[:, 54:].any())


class TestRejectDiscontinuities(unittest.TestCase):
    def test_step(self):
        state = create_uniform_state((4, 6), 10.0, 1.0)
        state.d[:, 3:] = 15.0
        result = reject_discontinuities(state, FilterConfig(disc_thresh=2.0), 99.0)
        expected = np.ones((4, 6), bool)
        expected[:, 2:4] = False
        np.testing.assert_array_equal(result.valid, expected)
        self.assertTrue(np.all(result.p[:, 2:4] == 99.0))

    def test_small_changes_survive(self):
        state = create_uniform_state((4, 6), 10.0, 1.0)
        state.d[:, 3:] = 12.0
        result = reject_discontinuities(state, FilterConfig(disc_thresh=2.0))
        self.assertTrue(result.valid.all())

    def test_invalid_neighbors_are_ignored(self):
        state = create_uniform_state((3, 3), 10.0, 1.0)
        state.d[1, 1] = 40.0
        state.valid[1, 1] = False
        result = reject_discontinuities(state, FilterConfig())
        np.testing.assert_array_equal(result.valid, state.valid)


class TestScreenPrediction(unittest.TestCase):
    def create_step(self):
        state = create_uniform_state((5, 12), 10.0, 1.0)
        state.d[:, 6:] = 16.0
        return state

    def test_margin_around_edge(self):
        result = screen_prediction(
            self.create_step(), FilterConfig(disc_margin=2), 99.0
        )
        expected = np.ones((5, 12), bool)
        expected[:, 3:9] = False
        np.testing.assert_array_equal(result.valid, expected)
        self.assertTrue(np.all(result.p[:, 3:9] == 99.0))
        self.assertTrue(np.all(result.d[:, 9:] == 16.0))

    def test_without_margin(self):
        state = self.create_step()
        result = screen_prediction(state, FilterConfig(disc_margin=0), 99.0)
        expected = reject_discontinuities(state, FilterConfig(), 99.0)
        np.testing.assert_array_equal(result.valid, expected.valid)

    def test_smooth_state_untouched(self):
        state = create_uniform_state((5, 12), 10.0, 1.0)
        result = screen_prediction(state, FilterConfig(), 99.0)
        np.testing.assert_array_equal(result.d, state.d)
        self.assertTrue(result.valid.all())

    def test_predict_screens_the_prior(self):
        calib = StereoCalib(100.0, 6.0, 2.5, 0.2, 12, 5, d_max=32)
        cfg = FilterConfig(p_init=99.0)
        state = self.create_step()
        prior = warp_prior(state, RigidMotion.identity(), calib, cfg)
        np.testing.assert_array_equal(prior.d, state.d)
        self.assertTrue(prior.valid.all())
        prediction = predict(state, RigidMotion.identity(), calib, cfg)
        screened = screen_prediction(prior, cfg, 99.0)
        np.testing.assert_array_equal(prediction.valid, screened.valid)
        np.testing.assert_array_equal(prediction.p, screened.p)


class TestFillZoomHoles(unittest.TestCase):
    def test_horizontal_hole(self):
        state = create_uniform_state((3, 5), 10.0, 1.0)
        state.valid[:, 2] = False
        state.d[:, 3] = 14.0
        state.p[:, 3] = 3.0
        result = fill_zoom_holes(state)
        self.assertTrue(result.valid.all())
        np.testing.assert_allclose(result.d[:, 2], 12.0)
        np.testing.assert_allclose(result.p[:, 2], 2.0)

    def test_cross_hole_uses_all_neighbors(self):
        state = create_uniform_state((3, 3), 10.0, 1.0)
        state.valid[1, 1] = False
        state.d[0, 1] = 14.0
        result = fill_zoom_holes(state)
        self.assertAlmostEqual(result.d[1, 1], 11.0)

    def test_wide_holes_stay(self):
        state = create_uniform_state((1, 6), 10.0, 1.0)
        state.valid[0, 2:4] = False
        result = fill_zoom_holes(state)
        np.testing.assert_array_equal(result.valid, state.valid)


class TestDeriveSearchRanges(unittest.TestCase):
    def setUp(self):
        self.calib = StereoCalib(100.0, 2.5, 0.5, 0.2, 5, 1, d_max=32)

    def create_state(self, entries):
        state = DisparityState.empty(1, 5, p_init=256.0)
        for x, (d, p) in enumerate(entries):
            state.d[0, x], state.p[0, x], state.valid[0, x] = d, p, True
        return state

    def test_variance_ranges(self):
        state = self.create_state([(20.3, 4.0), (20.4, 0.1), (0.2, 0.1), (31.2, 0.1)])
        ranges = derive_search_ranges(state, self.calib, FilterConfig())
        np.testing.assert_array_equal(ranges.lo, [[16, 18, 0, 27, 0]])
        np.testing.assert_array_equal(ranges.hi, [[25, 22, 4, 31, 31]])

    def test_stddev_ranges(self):
        state = self.create_state([(20.0, 4.0)])
        ranges = derive_search_ranges(
            state, self.calib, FilterConfig(range_mode="stddev")
        )
        self.assertEqual((ranges.lo[0, 0], ranges.hi[0, 0]), (14, 26))

    def test_wide_variance_is_clipped(self):
        state = self.create_state([(10.0, 500.0)])
        ranges = derive_search_ranges(state, self.calib, FilterConfig())
        self.assertEqual((ranges.lo[0, 0], ranges.hi[0, 0]), (0, 31))

    def test_full_ranges(self):
        state = self.create_state([(20.0, 1.0)])
        cfg = FilterConfig(reduce_search=False)
        full = derive_search_ranges(state, self.calib, cfg)
        self.assertTrue(full.is_full())
        empty = DisparityState.empty(1, 5)
        self.assertTrue(
            derive_search_ranges(empty, self.calib, FilterConfig()).is_full()
        )


class TestCorrect(unittest.TestCase):
    def setUp(self):
        self.cfg = FilterConfig(noise=NoiseParams(q=0.5, r=1.0))
        self.prediction = DisparityState(
            np.array([[10.0, 7.0, 0.0, 0.0]]),
            np.array([[1.0, 2.0, 50.0, 50.0]]),
            np.array([[True, True, False, False]]),
        )
        self.measurement = DisparityMap(
            np.array([[12, 0, 30, 0]]), np.array([[True, False, True, False]])
        )

    def test_fusion(self):
        result = correct(self.prediction, self.measurement, self.cfg)
        np.testing.assert_allclose(result.d[0], [11.0, 7.0, 30.0, 0.0])
        np.testing.assert_allclose(result.p[0, :3], [0.5, 2.0, 1.0])
        np.testing.assert_array_equal(result.valid[0], [True, True, True, False])

    def test_prediction_untouched(self):
        correct(self.prediction, self.measurement, self.cfg)
        self.assertEqual(self.prediction.d[0, 0], 10.0)
        self.assertFalse(self.prediction.valid[0, 2])

    def test_shape_mismatch(self):
        self.assertRaises(
            ValueError, correct, self.prediction, DisparityMap.invalid(2, 4), self.cfg
        )

    def test_difference_map(self):
        diff = difference_map(self.prediction, self.measurement)
        np.testing.assert_array_equal(diff, [[2.0, 0.0, 0.0, 0.0]])
