#!/usr/bin/env python
# -*- coding: UTF-8 -*-
#
"""
This module implements the disparity space of a rectified stereo rig.

A point of the left image at (x, y) with disparity d maps to the 3D point

    Z = f * b / d,  X = (x - cx) * Z / f,  Y = (y - cy) * Z / f

Written in homogeneous coordinates this is the linear reprojection matrix Q.
A rigid motion T of the scene is therefore a 4x4 linear map in disparity
space as well:

    H = Q^-1 * T * Q
"""
from dataclasses import dataclass

import numpy as np

from .calib import RigidMotion, StereoCalib

__all__ = [
    "DispHomography",
    "reprojection_matrix",
    "disparity_homography",
    "triangulate",
    "project",
]


@dataclass(frozen=True)
class DispHomography:
    """
    A 4x4 map acting on homogeneous disparity coordinates (x, y, d, 1).
    """

    m: np.ndarray

    def __post_init__(self):
        matrix = np.asarray(self.m, dtype=np.float64)
        if matrix.shape != (4, 4):
            raise ValueError(f"A disparity homography is 4x4, got {matrix.shape}")
        object.__setattr__(self, "m", matrix)

    def apply(self, x, y, d):
        """
        Map disparity space coordinates and divide by the homogeneous coordinate.

        :return: The tuple (x', y', d') of arrays.
        """
        points = np.stack(
            np.broadcast_arrays(
                np.asarray(x, float), np.asarray(y, float), np.asarray(d, float), 1.0
            )
        )
        mapped = np.tensordot(self.m, points, axes=1)
        with np.errstate(divide="ignore", invalid="ignore"):
            return mapped[0] / mapped[3], mapped[1] / mapped[3], mapped[2] / mapped[3]


def reprojection_matrix(calib: StereoCalib) -> np.ndarray:
    """
    :return: The matrix Q mapping (x, y, d, 1) to homogeneous 3D points.
    """
    f = calib.focal_px
    b = calib.baseline_m
    return np.array(
        [
            [1.0, 0.0, 0.0, -calib.cx],
            [0.0, 1.0, 0.0, -calib.cy],
            [0.0, 0.0, 0.0, f],
            [0.0, 0.0, 1.0 / b, 0.0],
        ]
    )


def _projection_matrix(calib: StereoCalib) -> np.ndarray:
    # the closed form inverse of the reprojection matrix
    f = calib.focal_px
    return np.array(
        [
            [1.0, 0.0, calib.cx / f, 0.0],
            [0.0, 1.0, calib.cy / f, 0.0],
            [0.0, 0.0, 0.0, calib.baseline_m],
            [0.0, 0.0, 1.0 / f, 0.0],
        ]
    )


def disparity_homography(motion: RigidMotion, calib: StereoCalib) -> DispHomography:
    """
    Build the map predicting the disparity space coordinates of static scene
    points in the current frame from their coordinates in the previous frame.

    :param motion: The camera ego-motion between the frames.
    :param calib: The stereo calibration.
    :return: The homography H = Q^-1 T Q.
    """
    if calib.focal_px == 0 or calib.baseline_m == 0:
        raise ValueError(
            "Can't build a disparity homography for a singular calibration"
        )
    if motion.is_identity:
        return DispHomography(np.eye(4))
    matrix = _projection_matrix(calib) @ motion.point_transform() @ reprojection_matrix(
        calib
    )
    # any positive multiple is equivalent, keep the homogeneous row comparable to I
    scale = np.abs(matrix).max()
    return DispHomography(matrix / scale)


def triangulate(x, y, d, calib: StereoCalib) -> np.ndarray:
    """
    Compute the 3D point (meters, left camera frame) seen at (x, y) with disparity d.

    Inputs may be scalars or arrays of the same shape; the result has an
    additional last axis of size 3.
    """
    d = np.asarray(d, dtype=np.float64)
    if np.any(d <= 0):
        raise ValueError("Only positive disparities can be triangulated")
    z = calib.focal_px * calib.baseline_m / d
    return np.stack(
        np.broadcast_arrays(
            (np.asarray(x, float) - calib.cx) * z / calib.focal_px,
            (np.asarray(y, float) - calib.cy) * z / calib.focal_px,
            z,
        ),
        axis=-1,
    )


def project(point, calib: StereoCalib) -> np.ndarray:
    """
    Project 3D points (..., 3) of the left camera frame to (x, y, d).
    """
    point = np.asarray(point, dtype=np.float64)
    z = point[..., 2]
    if np.any(z <= 0):
        raise ValueError("Only points in front of the camera can be projected")
    f = calib.focal_px
    return np.stack(
        [
            f * point[..., 0] / z + calib.cx,
            f * point[..., 1] / z + calib.cy,
            f * calib.baseline_m / z,
        ],
        axis=-1,
    )
