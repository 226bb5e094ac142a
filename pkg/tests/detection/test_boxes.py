#!/usr/bin/env python
# -*- coding: UTF-8 -*-
#
import unittest

import numpy as np
from hypothesis import given, strategies as st

from temposgm.detection import DetectionBox, iou_matrix, iou_with


@st.composite
def boxes(draw):
    x0 = draw(st.integers(0, 100))
    y0 = draw(st.integers(0, 100))
    return DetectionBox(
        x0, y0, x0 + draw(st.integers(1, 60)), y0 + draw(st.integers(1, 60))
    )


@given(boxes(), boxes())
def test_iou_is_symmetric_and_bounded(first, second):
    assert first.iou(second) == second.iou(first)
    assert 0.0 <= first.iou(second) <= 1.0


@given(boxes(), boxes())
def test_union_encloses_both(first, second):
    union = first.union(second)
    assert union.intersection_area(first) == first.area
    assert union.intersection_area(second) == second.area


class TestDetectionBox(unittest.TestCase):
    def setUp(self):
        self.box = DetectionBox(10, 20, 40, 60, score=3.0)

    def test_size(self):
        self.assertEqual(
            (self.box.width, self.box.height, self.box.area), (30, 40, 1200)
        )

    def test_invalid(self):
        self.assertRaises(ValueError, DetectionBox, -1, 0, 5, 5)
        self.assertRaises(ValueError, DetectionBox, 5, 0, 5, 5)
        self.assertRaises(ValueError, DetectionBox, 0, 6, 5, 5)

    def test_iou(self):
        other = DetectionBox(25, 20, 55, 60)
        self.assertAlmostEqual(self.box.iou(other), 600 / 1800)
        self.assertEqual(self.box.iou(self.box), 1.0)
        self.assertEqual(self.box.iou(DetectionBox(40, 20, 50, 30)), 0.0)

    def test_union_score(self):
        union = self.box.union(DetectionBox(40, 20, 70, 60, score=1.0))
        self.assertEqual((union.x0, union.y0, union.x1, union.y1), (10, 20, 70, 60))
        self.assertAlmostEqual(union.score, 2.0)

    def test_enclosing(self):
        box = DetectionBox.enclosing(
            [DetectionBox(0, 5, 2, 6), DetectionBox(4, 0, 6, 2)]
        )
        self.assertEqual((box.x0, box.y0, box.x1, box.y1), (0, 0, 6, 6))
        self.assertRaises(ValueError, DetectionBox.enclosing, [])

    def test_mask(self):
        mask = DetectionBox(1, 2, 3, 4).mask(5, 5)
        self.assertEqual(mask.sum(), 4)
        self.assertTrue(mask[2:4, 1:3].all())

    def test_fits(self):
        self.assertTrue(self.box.fits(40, 60))
        self.assertFalse(self.box.fits(39, 60))


def test_iou_matrix():
    candidates = [
        DetectionBox(0, 0, 10, 10),
        DetectionBox(5, 0, 15, 10),
        DetectionBox(50, 50, 60, 60),
    ]
    matrix = iou_matrix(candidates)
    expected = [[a.iou(b) for b in candidates] for a in candidates]
    np.testing.assert_allclose(matrix, expected)
    np.testing.assert_allclose(iou_with(candidates[0], candidates), expected[0])
