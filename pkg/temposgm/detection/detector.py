#!/usr/bin/env python
# -*- coding: UTF-8 -*-
#
"""
Detection of moving objects in the difference of predicted and measured
disparities.

Static scene parts are predicted well by the ego-motion, so large
differences between the prediction and the measurement indicate objects
moving on their own. Windows of several sizes slide over the lower part of
the difference map, windows with a high mean difference become candidates
and overlapping candidates are merged greedily.
"""
import logging
from typing import List, Sequence

import numpy as np

from temposgm.geometry import DisparityMap, DisparityState
from .boxes import DetectionBox, iou_matrix, iou_with
from .config import DetectConfig
from .integral import box_sums, integral_image

__all__ = [
    "detect_candidate_windows",
    "greedy_merge",
    "detect_in_difference",
    "detect_moving_objects",
]

_logger = logging.getLogger(__name__)


def detect_candidate_windows(diff, cfg: DetectConfig, sat=None) -> List[DetectionBox]:
    """
    Slide all configured windows over the lower part of the difference map.

    :param diff: The absolute disparity difference map.
    :param cfg: The detector configuration.
    :param sat: The summed-area table of `diff`, computed if omitted.
    :return: The windows whose mean difference exceeds the score threshold,
        ordered by window size, row and column.
    """
    diff = np.asarray(diff)
    height, width = diff.shape
    if sat is None:
        sat = integral_image(diff)
    top = cfg.first_row(height)
    candidates = []
    for w, h in cfg.windows:
        if w > width or h > height - top:
            continue
        xs = np.arange(0, width - w + 1, cfg.stride(w))
        ys = np.arange(top, height - h + 1, cfg.stride(h))
        means = box_sums(sat, xs, ys, w, h) / float(w * h)
        for row, col in zip(*np.nonzero(means > cfg.score_thresh)):
            x0 = int(xs[col])
            y0 = int(ys[row])
            candidates.append(
                DetectionBox(x0, y0, x0 + w, y0 + h, float(means[row, col]))
            )
    return candidates


def greedy_merge(
    boxes: Sequence[DetectionBox], cfg: DetectConfig
) -> List[DetectionBox]:
    """
    Repeatedly replace the pair of boxes with the highest IoU by their
    enclosing box until no pair overlaps by at least `merge_stop_iou`.

    Ties go to the pair that comes first in the current list order. The
    merged box takes the place of the first box of the pair. Boxes smaller
    than `min_box_area` are dropped at the end.

    :param boxes: The candidate boxes.
    :param cfg: The detector configuration.
    :return: The merged boxes.
    """
    boxes = list(boxes)
    if len(boxes) > 1:
        overlap = iou_matrix(boxes)
        while len(boxes) > 1:
            upper = np.triu(overlap, k=1)
            flat = int(np.argmax(upper))
            i, j = divmod(flat, len(boxes))
            if upper[i, j] < cfg.merge_stop_iou:
                break
            merged = boxes[i].union(boxes[j])
            boxes[i] = merged
            del boxes[j]
            overlap = np.delete(np.delete(overlap, j, axis=0), j, axis=1)
            row = iou_with(merged, boxes)
            overlap[i, :] = row
            overlap[:, i] = row
            overlap[i, i] = 0.0
    return [box for box in boxes if box.area >= cfg.min_box_area]


def detect_in_difference(diff, cfg: DetectConfig) -> List[DetectionBox]:
    """
    Detect moving objects in an absolute disparity difference map.
    """
    candidates = detect_candidate_windows(diff, cfg)
    merged = greedy_merge(candidates, cfg)
    _logger.debug(
        "%d candidate windows merged into %d boxes", len(candidates), len(merged)
    )
    return merged


def _values(disparities):
    if isinstance(disparities, DisparityState):
        return disparities.d, disparities.valid
    if isinstance(disparities, DisparityMap):
        return disparities.disparity, disparities.valid
    raise TypeError(
        f"Expected a disparity state or map, got {type(disparities).__name__}"
    )


def detect_moving_objects(pred, measured, cfg: DetectConfig) -> List[DetectionBox]:
    """
    Detect the objects whose motion the ego-motion doesn't explain.

    :param pred: The predicted disparities, a state or a map.
    :param measured: The measured disparities, a state or a map.
    :param cfg: The detector configuration.
    :return: The boxes around the moving objects.
    """
    d_pred, valid_pred = _values(pred)
    d_meas, valid_meas = _values(measured)
    if d_pred.shape != d_meas.shape:
        raise ValueError(
            f"Prediction {d_pred.shape} and measurement {d_meas.shape} differ in shape"
        )
    both = valid_pred & valid_meas
    diff = np.where(both, np.abs(d_pred.astype(np.float64) - d_meas), 0.0)
    return detect_in_difference(diff, cfg)
