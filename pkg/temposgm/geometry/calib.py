#!/usr/bin/env python
# -*- coding: UTF-8 -*-
#
"""
This module implements the camera model of a rectified stereo rig and the
rigid motion of that rig between two frames.

Poses are read in the KITTI odometry convention: one line per frame holding
the twelve numbers of the row-major 3x4 matrix [R|t], which maps points of
the camera frame into the world frame.
"""
import os
from typing import List

import numpy as np

__all__ = [
    "StereoCalib",
    "RigidMotion",
    "relative_motion",
    "read_pose_file",
    "write_pose_file",
    "read_kitti_calib",
]

_ORTHONORMAL_TOLERANCE = 1e-9


class StereoCalib:
    """
    The intrinsics of a rectified stereo pair.

    Both cameras share the focal length `focal_px` (fx = fy) and the
    principal point (`cx`, `cy`). The right camera is displaced by
    `baseline_m` meters along the x axis of the left camera.
    `d_max` is the number of disparity levels searched by the matcher.
    """

    def __init__(
        self,
        focal_px: float,
        cx: float,
        cy: float,
        baseline_m: float,
        width: int,
        height: int,
        d_max: int = 128,
    ):
        if focal_px <= 0 or baseline_m <= 0:
            raise ValueError(
                "The calibration is singular: focal length and baseline have to be "
                f"positive, got f={focal_px:g} and b={baseline_m:g}"
            )
        if width < 1 or height < 1:
            raise ValueError(f"Invalid image size {width}x{height}")
        if not (0 <= cx < width and 0 <= cy < height):
            raise ValueError(
                f"The principal point ({cx:g}, {cy:g}) lies outside of the image"
            )
        if d_max < 1:
            raise ValueError(f"At least one disparity level is required, got {d_max}")
        self.__focal_px = float(focal_px)
        self.__cx = float(cx)
        self.__cy = float(cy)
        self.__baseline_m = float(baseline_m)
        self.__width = int(width)
        self.__height = int(height)
        self.__d_max = int(d_max)

    @property
    def focal_px(self) -> float:
        """
        The focal length in pixels, shared by both axes and both cameras.
        """
        return self.__focal_px

    @property
    def cx(self) -> float:
        """
        The x coordinate of the principal point.
        """
        return self.__cx

    @property
    def cy(self) -> float:
        """
        The y coordinate of the principal point.
        """
        return self.__cy

    @property
    def baseline_m(self) -> float:
        """
        The distance between the two camera centers in meters.
        """
        return self.__baseline_m

    @property
    def width(self) -> int:
        return self.__width

    @property
    def height(self) -> int:
        return self.__height

    @property
    def shape(self) -> tuple:
        """
        The image shape as (height, width), the numpy order.
        """
        return self.__height, self.__width

    @property
    def d_max(self) -> int:
        """
        The number of disparity levels. Valid disparities lie in [0, d_max).
        """
        return self.__d_max

    def with_size(self, width: int, height: int) -> "StereoCalib":
        """
        Return a copy of this calibration for another image size.
        """
        return StereoCalib(
            self.focal_px, self.cx, self.cy, self.baseline_m, width, height, self.d_max
        )

    def with_d_max(self, d_max: int) -> "StereoCalib":
        """
        Return a copy of this calibration searching `d_max` disparity levels.
        """
        return StereoCalib(
            self.focal_px,
            self.cx,
            self.cy,
            self.baseline_m,
            self.width,
            self.height,
            d_max,
        )

    def to_dict(self) -> dict:
        return {
            "focal_px": self.focal_px,
            "cx": self.cx,
            "cy": self.cy,
            "baseline_m": self.baseline_m,
            "width": self.width,
            "height": self.height,
            "d_max": self.d_max,
        }

    def __eq__(self, other) -> bool:
        if isinstance(other, StereoCalib):
            return other.to_dict() == self.to_dict()
        return False

    def __hash__(self) -> int:
        return hash(tuple(self.to_dict().items()))

    def __repr__(self) -> str:
        return (
            f"StereoCalib(f={self.focal_px:g}, cx={self.cx:g}, cy={self.cy:g}, "
            f"b={self.baseline_m:g}, size={self.width}x{self.height}, "
            f"d_max={self.d_max})"
        )


class RigidMotion:
    """
    The ego-motion of the camera between two consecutive frames.

    `rotation` and `translation` give the pose of the current camera in the
    coordinate frame of the previous camera. A static scene point therefore
    moves as X_cur = R^T (X_prev - t) when seen from the camera.
    """

    def __init__(self, rotation=None, translation=None):
        rotation = np.eye(3) if rotation is None else np.asarray(rotation, float)
        translation = (
            np.zeros(3) if translation is None else np.asarray(translation, float)
        )
        if rotation.shape != (3, 3):
            raise ValueError(
                f"The rotation has to be a 3x3 matrix, got {rotation.shape}"
            )
        if translation.shape != (3,):
            raise ValueError(
                f"The translation has to be a 3-vector, got {translation.shape}"
            )
        if not np.allclose(
            rotation.T @ rotation, np.eye(3), rtol=0, atol=_ORTHONORMAL_TOLERANCE
        ) or abs(np.linalg.det(rotation) - 1) > _ORTHONORMAL_TOLERANCE:
            raise ValueError("The rotation is not an orthonormal matrix with det=+1")
        self.__rotation = rotation.copy()
        self.__translation = translation.copy()
        self.__rotation.flags.writeable = False
        self.__translation.flags.writeable = False

    @classmethod
    def identity(cls) -> "RigidMotion":
        return cls()

    @classmethod
    def from_matrix(cls, matrix) -> "RigidMotion":
        """
        Create a motion from a 3x4 or 4x4 homogeneous pose matrix.
        """
        matrix = np.asarray(matrix, float)
        if matrix.shape not in ((3, 4), (4, 4)):
            raise ValueError(f"Expected a 3x4 or 4x4 matrix, got {matrix.shape}")
        return cls(rotation=matrix[:3, :3], translation=matrix[:3, 3])

    @classmethod
    def from_axis_angle(cls, axis, angle: float, translation=None) -> "RigidMotion":
        """
        Create a motion rotating by `angle` radians about `axis`.
        """
        axis = np.asarray(axis, float)
        axis = axis / np.linalg.norm(axis)
        skew = np.array(
            [
                [0.0, -axis[2], axis[1]],
                [axis[2], 0.0, -axis[0]],
                [-axis[1], axis[0], 0.0],
            ]
        )
        rotation = (
            np.eye(3) + np.sin(angle) * skew + (1 - np.cos(angle)) * (skew @ skew)
        )
        return cls(rotation=rotation, translation=translation)

    @property
    def rotation(self) -> np.ndarray:
        return self.__rotation

    @property
    def translation(self) -> np.ndarray:
        return self.__translation

    @property
    def is_identity(self) -> bool:
        """
        True if this motion is exactly the identity.
        """
        return bool(
            np.array_equal(self.__rotation, np.eye(3))
            and not np.any(self.__translation)
        )

    def matrix(self) -> np.ndarray:
        """
        :return: The 4x4 homogeneous pose matrix of the current camera
                 in the previous camera frame.
        """
        pose = np.eye(4)
        pose[:3, :3] = self.__rotation
        pose[:3, 3] = self.__translation
        return pose

    def point_transform(self) -> np.ndarray:
        """
        :return: The 4x4 homogeneous matrix moving static points from the
                 previous into the current camera frame.
        """
        transform = np.eye(4)
        transform[:3, :3] = self.__rotation.T
        transform[:3, 3] = -self.__rotation.T @ self.__translation
        return transform

    def apply_to_points(self, points) -> np.ndarray:
        """
        Move static points (N x 3) from the previous into the current camera frame.
        """
        points = np.asarray(points, float)
        return (points - self.__translation) @ self.__rotation

    def compose(self, other: "RigidMotion") -> "RigidMotion":
        """
        Chain this motion with the `other` motion which follows it.
        """
        return RigidMotion.from_matrix(self.matrix() @ other.matrix())

    def inverse(self) -> "RigidMotion":
        return RigidMotion.from_matrix(self.point_transform())

    def __repr__(self) -> str:
        return (
            f"RigidMotion(rotation={self.__rotation.tolist()}, "
            f"translation={self.__translation.tolist()})"
        )


def relative_motion(pose_prev, pose_cur) -> RigidMotion:
    """
    Compute the ego-motion between two absolute camera-to-world poses.

    :param pose_prev: The 3x4 or 4x4 pose of the previous frame.
    :param pose_cur: The 3x4 or 4x4 pose of the current frame.
    :return: The pose of the current camera in the previous camera frame.
    """
    prev = _homogeneous(pose_prev)
    cur = _homogeneous(pose_cur)
    relative = np.linalg.inv(prev) @ cur
    # re-orthonormalize, chained poses drift away from SO(3)
    u, _, vt = np.linalg.svd(relative[:3, :3])
    relative[:3, :3] = u @ vt
    return RigidMotion.from_matrix(relative)


def _homogeneous(pose) -> np.ndarray:
    pose = np.asarray(pose, float)
    if pose.shape == (4, 4):
        return pose
    if pose.shape != (3, 4):
        raise ValueError(f"Expected a 3x4 or 4x4 pose, got {pose.shape}")
    return np.vstack([pose, [0.0, 0.0, 0.0, 1.0]])


def read_pose_file(path) -> List[np.ndarray]:
    """
    Read a KITTI odometry style pose file.

    :param path: The path of the text file.
    :return: One 3x4 camera-to-world pose per frame.
    """
    poses = []
    with open(path, "r", encoding="utf-8") as stream:
        for number, line in enumerate(stream, start=1):
            if not line.strip():
                continue
            values = line.split()
            if len(values) != 12:
                raise ValueError(
                    f"{path}:{number}: expected 12 numbers but got {len(values)}"
                )
            poses.append(np.array([float(v) for v in values]).reshape(3, 4))
    return poses


def write_pose_file(path, poses) -> None:
    """
    Write poses in the format read by :func:`read_pose_file`.
    """
    with open(path, "w", encoding="utf-8") as stream:
        for pose in poses:
            row = np.asarray(pose, float)[:3, :4].reshape(-1)
            stream.write(" ".join(f"{v:.12e}" for v in row) + os.linesep)


def read_kitti_calib(path, d_max: int = 128) -> StereoCalib:
    """
    Read the rectified calibration of cameras 0 and 1 from a KITTI raw
    ``calib_cam_to_cam.txt`` file.

    :param path: The path of the calibration file.
    :param d_max: The number of disparity levels to search.
    :return: The stereo calibration of the gray scale camera pair.
    """
    entries = {}
    with open(path, "r", encoding="utf-8") as stream:
        for line in stream:
            key, _, value = line.partition(":")
            entries[key.strip()] = value.split()
    try:
        left = np.array([float(v) for v in entries["P_rect_00"]]).reshape(3, 4)
        right = np.array([float(v) for v in entries["P_rect_01"]]).reshape(3, 4)
        width, height = (int(float(v)) for v in entries["S_rect_00"])
    except (KeyError, ValueError) as error:
        raise ValueError(f"{path} is not a valid KITTI calibration: {error}") from error
    focal = left[0, 0]
    return StereoCalib(
        focal_px=focal,
        cx=left[0, 2],
        cy=left[1, 2],
        baseline_m=-right[0, 3] / focal,
        width=width,
        height=height,
        d_max=d_max,
    )
