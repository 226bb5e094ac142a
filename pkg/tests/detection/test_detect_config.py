#!/usr/bin/env python
# -*- coding: UTF-8 -*-
#
import unittest

from temposgm.detection import DEFAULT_WINDOWS, DetectConfig


class TestDetectConfig(unittest.TestCase):
    def test_defaults(self):
        cfg = DetectConfig()
        self.assertEqual(cfg.windows, DEFAULT_WINDOWS)
        self.assertEqual(cfg.score_thresh, 2.0)
        self.assertEqual(cfg.merge_stop_iou, 0.2)
        self.assertEqual(cfg.min_box_area, 400)

    def test_first_row(self):
        cfg = DetectConfig()
        self.assertEqual(cfg.first_row(150), 50)
        self.assertEqual(cfg.first_row(375), 125)
        self.assertEqual(cfg.first_row(10), 3)
        self.assertEqual(DetectConfig(region_top=0.0).first_row(375), 0)

    def test_stride(self):
        cfg = DetectConfig()
        self.assertEqual(cfg.stride(20), 5)
        self.assertEqual(cfg.stride(75), 18)
        self.assertEqual(DetectConfig(stride_divisor=100).stride(50), 1)

    def test_invalid(self):
        self.assertRaises(ValueError, DetectConfig, windows=[])
        self.assertRaises(ValueError, DetectConfig, windows=[(10, 20)])
        self.assertRaises(ValueError, DetectConfig, windows=[(50, 80)])
        self.assertRaises(ValueError, DetectConfig, score_thresh=0.0)
        self.assertRaises(ValueError, DetectConfig, merge_stop_iou=1.0)
        self.assertRaises(ValueError, DetectConfig, min_box_area=-1)
        self.assertRaises(ValueError, DetectConfig, region_top=1.0)
        self.assertRaises(ValueError, DetectConfig, stride_divisor=0)

    def test_equality(self):
        self.assertEqual(DetectConfig(), DetectConfig(windows=list(DEFAULT_WINDOWS)))
        self.assertNotEqual(DetectConfig(), DetectConfig(score_thresh=3.0))
        self.assertEqual(DetectConfig().to_dict()["windows"][-1], [50, 75])
