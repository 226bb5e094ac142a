#!/usr/bin/env python
# -*- coding: UTF-8 -*-
#
import numpy as np
import pytest

from temposgm.detection import (
    DetectionBox,
    draw_boxes,
    format_detections,
    read_detections,
    write_detections,
)


def test_format():
    lines = format_detections(7, [DetectionBox(1, 2, 30, 40, 2.345678)])
    assert lines == ["7 1 2 30 40 2.3457"]


def test_write_and_read(tmp_path):
    path = tmp_path / "detections.txt"
    detections = {
        3: [DetectionBox(0, 0, 20, 20, 2.5)],
        1: [DetectionBox(5, 6, 50, 60, 3.0), DetectionBox(70, 6, 90, 60, 4.25)],
        2: [],
    }
    write_detections(path, detections)
    assert [line.split()[0] for line in path.read_text().splitlines()] == [
        "1", "1", "3"
    ]
    loaded = read_detections(path)
    assert sorted(loaded) == [1, 3]
    assert loaded[1] == detections[1]
    assert loaded[3] == detections[3]


def test_read_bad_line(tmp_path):
    path = tmp_path / "detections.txt"
    path.write_text("1 0 0 20 20 2.0\n\n2 0 0 20\n")
    with pytest.raises(ValueError, match=":3:"):
        read_detections(path)


def test_draw_boxes_on_gray():
    image = np.full((40, 50), 100, dtype=np.uint8)
    canvas = draw_boxes(image, [DetectionBox(10, 5, 30, 25)], thickness=1)
    assert canvas.shape == (40, 50, 3)
    assert tuple(canvas[5, 10]) == (0, 0, 255)
    assert tuple(canvas[24, 29]) == (0, 0, 255)
    assert tuple(canvas[15, 20]) == (100, 100, 100)
    assert tuple(canvas[25, 30]) == (100, 100, 100)
    assert image.ndim == 2


def test_draw_boxes_keeps_input():
    image = np.zeros((20, 20, 3), dtype=np.uint8)
    canvas = draw_boxes(image, [DetectionBox(2, 2, 10, 10)], color=(0, 255, 0))
    assert tuple(canvas[2, 2]) == (0, 255, 0)
    assert not image.any()
