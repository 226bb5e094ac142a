#!/usr/bin/env python
# -*- coding: UTF-8 -*-
#
"""
A frame of a stereo image sequence.
"""
from dataclasses import dataclass
from typing import List, Optional

import numpy as np

from temposgm.detection import DetectionBox
from temposgm.geometry import DisparityMap, RigidMotion, relative_motion

__all__ = ["SequenceFrame", "frame_motions"]

_POSE_TOLERANCE = 1e-6


@dataclass
class SequenceFrame:
    """
    A rectified stereo pair with the optional ground truth of its frame.

    `pose` is the 3x4 camera-to-world pose of the left camera. `gt_boxes`
    lists the regions covered by moving objects in this or the previous
    frame.
    """

    index: int
    left: np.ndarray
    right: np.ndarray
    pose: Optional[np.ndarray] = None
    gt_disp: Optional[DisparityMap] = None
    gt_boxes: Optional[List[DetectionBox]] = None

    def __post_init__(self):
        if self.left.shape != self.right.shape:
            raise ValueError(
                f"Frame {self.index}: the left {self.left.shape} and right "
                f"{self.right.shape} images differ in size"
            )
        if self.pose is not None:
            self.pose = np.asarray(self.pose, dtype=np.float64)[:3, :4]
            rotation = self.pose[:, :3]
            if not np.allclose(rotation.T @ rotation, np.eye(3), atol=_POSE_TOLERANCE):
                raise ValueError(
                    f"Frame {self.index}: the pose rotation is not orthonormal"
                )
        if self.gt_disp is not None and self.gt_disp.shape != self.left.shape:
            raise ValueError(
                f"Frame {self.index}: the ground truth {self.gt_disp.shape} doesn't "
                f"match the images {self.left.shape}"
            )

    @property
    def shape(self) -> tuple:
        return self.left.shape


def frame_motions(frames: List[SequenceFrame]) -> List[Optional[RigidMotion]]:
    """
    The ego-motion into every frame from its predecessor.

    The first frame and frames following a frame without pose get None.
    """
    motions = [None]
    for prev, cur in zip(frames, frames[1:]):
        if prev.pose is None or cur.pose is None:
            motions.append(None)
        else:
            motions.append(relative_motion(prev.pose, cur.pose))
    return motions[: len(frames)]
