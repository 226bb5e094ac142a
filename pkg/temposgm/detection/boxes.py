#!/usr/bin/env python
# -*- coding: UTF-8 -*-
#
"""
Axis aligned boxes around moving objects.
"""
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

__all__ = ["DetectionBox", "iou_matrix", "iou_with"]


@dataclass(frozen=True)
class DetectionBox:
    """
    A box covering the columns x0 <= x < x1 and the rows y0 <= y < y1.

    `score` is the mean absolute disparity difference inside the box.
    """

    x0: int
    y0: int
    x1: int
    y1: int
    score: float = 0.0

    def __post_init__(self):
        if self.x0 < 0 or self.y0 < 0:
            raise ValueError(
                f"Box corners must not be negative, got ({self.x0}, {self.y0})"
            )
        if not (self.x0 < self.x1 and self.y0 < self.y1):
            raise ValueError(
                f"Boxes must not be empty, got ({self.x0}, {self.y0}, {self.x1}, {self.y1})"
            )

    @property
    def width(self) -> int:
        return self.x1 - self.x0

    @property
    def height(self) -> int:
        return self.y1 - self.y0

    @property
    def area(self) -> int:
        return self.width * self.height

    def intersection_area(self, other: "DetectionBox") -> int:
        w = min(self.x1, other.x1) - max(self.x0, other.x0)
        h = min(self.y1, other.y1) - max(self.y0, other.y0)
        return max(0, w) * max(0, h)

    def iou(self, other: "DetectionBox") -> float:
        """
        :return: The area of intersection relative to the area of the union.
        """
        inter = self.intersection_area(other)
        return inter / float(self.area + other.area - inter)

    def union(self, other: "DetectionBox") -> "DetectionBox":
        """
        The smallest box containing both boxes. The score is the area
        weighted mean of both scores.
        """
        score = (self.score * self.area + other.score * other.area) / float(
            self.area + other.area
        )
        return DetectionBox(
            min(self.x0, other.x0),
            min(self.y0, other.y0),
            max(self.x1, other.x1),
            max(self.y1, other.y1),
            score,
        )

    def fits(self, width: int, height: int) -> bool:
        return self.x1 <= width and self.y1 <= height

    def mask(self, height: int, width: int) -> np.ndarray:
        """
        :return: A boolean image which is True inside the box.
        """
        result = np.zeros((height, width), dtype=bool)
        result[self.y0 : self.y1, self.x0 : self.x1] = True
        return result

    @staticmethod
    def enclosing(boxes: Iterable["DetectionBox"]) -> "DetectionBox":
        boxes = list(boxes)
        if not boxes:
            raise ValueError("Can't enclose an empty list of boxes")
        result = boxes[0]
        for box in boxes[1:]:
            result = result.union(box)
        return result


def iou_matrix(boxes: Sequence[DetectionBox]) -> np.ndarray:
    """
    :return: The pairwise IoU of `boxes` as an (n, n) matrix.
    """
    coords = np.array([[b.x0, b.y0, b.x1, b.y1] for b in boxes], dtype=np.float64)
    coords = coords.reshape(-1, 4)
    x0, y0, x1, y1 = coords.T
    areas = (x1 - x0) * (y1 - y0)
    w = np.maximum(0.0, np.minimum(x1[:, None], x1) - np.maximum(x0[:, None], x0))
    h = np.maximum(0.0, np.minimum(y1[:, None], y1) - np.maximum(y0[:, None], y0))
    inter = w * h
    return inter / (areas[:, None] + areas - inter)


def iou_with(box: DetectionBox, boxes: Sequence[DetectionBox]) -> np.ndarray:
    """
    :return: The IoU of `box` with each of `boxes`.
    """
    coords = np.array([[b.x0, b.y0, b.x1, b.y1] for b in boxes], dtype=np.float64)
    coords = coords.reshape(-1, 4)
    x0, y0, x1, y1 = coords.T
    w = np.maximum(0.0, np.minimum(x1, box.x1) - np.maximum(x0, box.x0))
    h = np.maximum(0.0, np.minimum(y1, box.y1) - np.maximum(y0, box.y0))
    inter = w * h
    return inter / ((x1 - x0) * (y1 - y0) + box.area - inter)
