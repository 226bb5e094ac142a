#!/usr/bin/env python
# -*- coding: UTF-8 -*-
#
"""
Reading and writing detections and drawing them into images.

A detection file holds one box per line: frame x0 y0 x1 y1 score
"""
from pathlib import Path
from typing import Dict, List, Sequence, Tuple

import cv2
import numpy as np

from .boxes import DetectionBox

__all__ = ["format_detections", "write_detections", "read_detections", "draw_boxes"]


def format_detections(frame: int, boxes: Sequence[DetectionBox]) -> List[str]:
    return [
        f"{frame} {b.x0} {b.y0} {b.x1} {b.y1} {b.score:.4f}" for b in boxes
    ]


def write_detections(path, detections: Dict[int, Sequence[DetectionBox]]) -> None:
    """
    Write the boxes of several frames, ordered by frame index.
    """
    lines = []
    for frame in sorted(detections):
        lines.extend(format_detections(frame, detections[frame]))
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text("".join(line + "\n" for line in lines))


def read_detections(path) -> Dict[int, List[DetectionBox]]:
    """
    Read a detection file. Frames without boxes are absent from the result.
    """
    detections = {}
    for number, line in enumerate(Path(path).read_text().splitlines(), start=1):
        if not line.strip():
            continue
        fields = line.split()
        if len(fields) != 6:
            raise ValueError(
                f"{path}:{number}: expected 'frame x0 y0 x1 y1 score', got '{line}'"
            )
        frame, x0, y0, x1, y1 = (int(v) for v in fields[:5])
        detections.setdefault(frame, []).append(
            DetectionBox(x0, y0, x1, y1, float(fields[5]))
        )
    return detections


def draw_boxes(
    image: np.ndarray,
    boxes: Sequence[DetectionBox],
    color: Tuple[int, int, int] = (0, 0, 255),
    thickness: int = 2,
) -> np.ndarray:
    """
    Burn the boxes into a copy of `image`.

    :param image: A gray scale or BGR 8 bit image.
    :return: The BGR image with the boxes drawn.
    """
    if image.ndim == 2:
        canvas = cv2.cvtColor(image, cv2.COLOR_GRAY2BGR)
    else:
        canvas = image.copy()
    for box in boxes:
        cv2.rectangle(
            canvas, (box.x0, box.y0), (box.x1 - 1, box.y1 - 1), color, thickness
        )
    return canvas
