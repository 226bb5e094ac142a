#!/usr/bin/env python
# -*- coding: UTF-8 -*-
#
import unittest

import numpy as np
import pytest

from temposgm.dataset import frame_motions
from temposgm.detection import (
    DetectConfig,
    DetectionBox,
    detect_candidate_windows,
    detect_in_difference,
    detect_moving_objects,
    greedy_merge,
)
from temposgm.filtering import TemporalMatcher
from temposgm.geometry import DisparityMap


def test_translating_square_is_detected(translating_square):
    calib, frames = translating_square
    matcher = TemporalMatcher(calib)
    # a lateral move leaves two 3 px wide strips of 6 px difference at the
    # edges of the square: 0.72 on average in a 50x40 window covering both
    # of them, 0.36 in a window covering one, so only windows spanning the
    # moved region score above 0.55
    cfg = DetectConfig(windows=[(50, 40)], score_thresh=0.55, stride_divisor=25)

    hits = 0
    for frame, motion in zip(frames, frame_motions(frames)):
        result = matcher.step(frame.left, frame.right, motion)
        if motion is None:
            continue
        boxes = detect_moving_objects(result.prior, result.measurement, cfg)
        assert boxes == detect_in_difference(result.diff, cfg)
        (expected,) = frame.gt_boxes
        if len(boxes) == 1 and boxes[0].iou(expected) >= 0.3:
            hits += 1
    assert hits >= 0.8 * (len(frames) - 1)


class TestCandidateWindows(unittest.TestCase):
    def test_static_scene(self):
        self.assertEqual(
            detect_candidate_windows(np.zeros((150, 200)), DetectConfig()), []
        )

    def test_window_positions(self):
        diff = np.zeros((90, 100))
        diff[60:80, 40:60] = 10.0
        cfg = DetectConfig(windows=[(20, 20)], score_thresh=9.0)
        (box,) = detect_candidate_windows(diff, cfg)
        self.assertEqual((box.x0, box.y0, box.x1, box.y1), (40, 60, 60, 80))
        self.assertAlmostEqual(box.score, 10.0)

    def test_upper_part_is_ignored(self):
        diff = np.zeros((90, 100))
        diff[0:25, 0:40] = 10.0
        self.assertEqual(detect_candidate_windows(diff, DetectConfig()), [])

    def test_windows_larger_than_region(self):
        cfg = DetectConfig(windows=[(50, 75)])
        self.assertEqual(detect_candidate_windows(np.full((90, 100), 5.0), cfg), [])

    def test_order(self):
        diff = np.full((60, 60), 5.0)
        cfg = DetectConfig(windows=[(20, 20), (40, 40)])
        candidates = detect_candidate_windows(diff, cfg)
        sizes = [box.width for box in candidates]
        self.assertEqual(sizes, sorted(sizes))
        first = [(box.y0, box.x0) for box in candidates if box.width == 20]
        self.assertEqual(first, sorted(first))


class TestGreedyMerge(unittest.TestCase):
    def test_overlapping_pair(self):
        cfg = DetectConfig()
        boxes = [
            DetectionBox(0, 0, 30, 30, 3.0),
            DetectionBox(10, 0, 40, 30, 3.0),
            DetectionBox(100, 100, 130, 130, 4.0),
        ]
        merged = greedy_merge(boxes, cfg)
        self.assertEqual(len(merged), 2)
        self.assertEqual((merged[0].x0, merged[0].x1), (0, 40))
        self.assertEqual(merged[1], boxes[2])

    def test_tie_goes_to_first_pair(self):
        cfg = DetectConfig(merge_stop_iou=0.3, min_box_area=0)
        boxes = [
            DetectionBox(0, 0, 20, 20),
            DetectionBox(10, 0, 30, 20),
            DetectionBox(20, 0, 40, 20),
        ]
        merged = greedy_merge(boxes, cfg)
        self.assertEqual([(b.x0, b.x1) for b in merged], [(0, 30), (20, 40)])

    def test_chain_merges_into_one(self):
        cfg = DetectConfig(min_box_area=0)
        boxes = [
            DetectionBox(0, 0, 20, 20),
            DetectionBox(10, 0, 30, 20),
            DetectionBox(20, 0, 40, 20),
        ]
        merged = greedy_merge(boxes, cfg)
        self.assertEqual([(b.x0, b.x1) for b in merged], [(0, 40)])

    def test_small_boxes_are_dropped(self):
        boxes = [DetectionBox(0, 0, 10, 10), DetectionBox(50, 50, 80, 80)]
        self.assertEqual(greedy_merge(boxes, DetectConfig()), [boxes[1]])

    def test_empty(self):
        self.assertEqual(greedy_merge([], DetectConfig()), [])


class TestDetectMovingObjects(unittest.TestCase):
    def test_difference_of_valid_pixels(self):
        pred = DisparityMap(np.full((90, 100), 10.0), np.ones((90, 100), bool))
        disparity = np.full((90, 100), 10.0)
        disparity[50:80, 30:60] = 40.0
        valid = np.ones((90, 100), bool)
        measured = DisparityMap(disparity, valid)
        cfg = DetectConfig(windows=[(30, 30)], score_thresh=25.0)
        boxes = detect_moving_objects(pred, measured, cfg)
        self.assertEqual(len(boxes), 1)
        self.assertGreater(boxes[0].iou(DetectionBox(30, 50, 60, 80)), 0.7)

        valid[50:80, 30:60] = False
        self.assertEqual(
            detect_moving_objects(pred, DisparityMap(disparity, valid), cfg), []
        )

    def test_shape_mismatch(self):
        pred = DisparityMap.invalid(10, 10)
        self.assertRaises(
            ValueError,
            detect_moving_objects,
            pred,
            DisparityMap.invalid(10, 11),
            DetectConfig(),
        )

    def test_wrong_type(self):
        with pytest.raises(TypeError):
            detect_moving_objects(
                np.zeros((10, 10)), DisparityMap.invalid(10, 10), DetectConfig()
            )

    def test_detect_in_difference(self):
        self.assertEqual(detect_in_difference(np.zeros((60, 80)), DetectConfig()), [])
