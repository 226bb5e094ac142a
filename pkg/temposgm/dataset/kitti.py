#!/usr/bin/env python
# -*- coding: UTF-8 -*-
#
"""
Loading of sequences in the KITTI raw layout::

    <sequence>/image_00/data/NNNNNNNNNN.png   left gray scale images
    <sequence>/image_01/data/NNNNNNNNNN.png   right gray scale images
    <sequence>/disp_gt/NNNNNNNNNN.png         optional ground truth disparity
    <sequence>/oxts/data/NNNNNNNNNN.txt       optional GPS/IMU packets
    <sequence>/poses.txt                      optional 3x4 poses, one per line
    <sequence>/gt_boxes.txt                   optional moving object boxes

The color cameras image_02 and image_03 are used if the gray scale cameras
are missing.
"""
import logging
import math
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path
from typing import Dict, List, Optional

import numpy as np

from temposgm.config import read_toml
from temposgm.detection import read_detections
from temposgm.errors import DatasetError
from temposgm.geometry import StereoCalib, read_kitti_calib, read_pose_file
from .frame import SequenceFrame
from .io import read_disparity_png, read_gray

__all__ = [
    "CAMERA_PAIRS",
    "EARTH_RADIUS_M",
    "list_frame_files",
    "read_oxts_poses",
    "load_sequence_calib",
    "load_kitti_sequence",
]

_logger = logging.getLogger(__name__)

CAMERA_PAIRS = (("image_00", "image_01"), ("image_02", "image_03"))
EARTH_RADIUS_M = 6378137.0


def list_frame_files(directory: Path, suffix: str) -> Dict[int, Path]:
    """
    Map the frame index of every file in `directory` to its path.
    """
    files = {}
    for path in sorted(directory.glob(f"*{suffix}")):
        try:
            index = int(path.stem)
        except ValueError as error:
            raise DatasetError(f"'{path}' is not named by a frame index") from error
        if index in files:
            raise DatasetError(
                f"Frame {index} appears twice: '{files[index]}' and '{path}'"
            )
        files[index] = path
    return files


def _camera_dirs(seq_dir: Path):
    for left, right in CAMERA_PAIRS:
        left_dir = seq_dir / left / "data"
        right_dir = seq_dir / right / "data"
        if left_dir.is_dir() or right_dir.is_dir():
            if not (left_dir.is_dir() and right_dir.is_dir()):
                raise DatasetError(
                    f"'{seq_dir}' contains only one of the cameras {left} and {right}"
                )
            return left_dir, right_dir
    raise DatasetError(f"'{seq_dir}' contains no stereo image folders")


def _read_rigid_calib(path: Path) -> np.ndarray:
    entries = {}
    for line in path.read_text().splitlines():
        key, _, value = line.partition(":")
        entries[key.strip()] = value.split()
    try:
        rotation = np.array([float(v) for v in entries["R"]]).reshape(3, 3)
        translation = np.array([float(v) for v in entries["T"]])
    except (KeyError, ValueError) as error:
        raise DatasetError(
            f"'{path}' is not a valid rigid calibration: {error}"
        ) from error
    transform = np.eye(4)
    transform[:3, :3] = rotation
    transform[:3, 3] = translation
    return transform


def _find_file(seq_dir: Path, name: str) -> Optional[Path]:
    for directory in (seq_dir, seq_dir.parent):
        if (directory / name).is_file():
            return directory / name
    return None


def _oxts_pose(packet: np.ndarray, scale: float) -> np.ndarray:
    lat, lon, alt, roll, pitch, yaw = packet[:6]
    translation = np.array(
        [
            scale * lon * math.pi * EARTH_RADIUS_M / 180.0,
            scale * EARTH_RADIUS_M * math.log(math.tan((90.0 + lat) * math.pi / 360.0)),
            alt,
        ]
    )
    cr, sr = math.cos(roll), math.sin(roll)
    cp, sp = math.cos(pitch), math.sin(pitch)
    cy, sy = math.cos(yaw), math.sin(yaw)
    rx = np.array([[1, 0, 0], [0, cr, -sr], [0, sr, cr]])
    ry = np.array([[cp, 0, sp], [0, 1, 0], [-sp, 0, cp]])
    rz = np.array([[cy, -sy, 0], [sy, cy, 0], [0, 0, 1]])
    pose = np.eye(4)
    pose[:3, :3] = rz @ ry @ rx
    pose[:3, 3] = translation
    return pose


def read_oxts_poses(seq_dir) -> Dict[int, np.ndarray]:
    """
    Derive the poses of camera 0 from the GPS/IMU packets of a KITTI raw drive.

    The packets are converted to metric poses with a Mercator projection
    scaled at the latitude of the first packet. The IMU poses are moved into
    the camera frame with the IMU-to-velodyne and velodyne-to-camera
    calibrations of the drive's date folder.

    :param seq_dir: The drive folder.
    :return: The 3x4 camera-to-world pose of every frame, the first one
        being the identity.
    """
    seq_dir = Path(seq_dir)
    packets = list_frame_files(seq_dir / "oxts" / "data", ".txt")
    if not packets:
        raise DatasetError(f"'{seq_dir}' contains no oxts packets")
    imu_to_velo = _find_file(seq_dir, "calib_imu_to_velo.txt")
    velo_to_cam = _find_file(seq_dir, "calib_velo_to_cam.txt")
    if imu_to_velo is None or velo_to_cam is None:
        raise DatasetError(
            f"The IMU and velodyne calibrations of '{seq_dir}' are missing"
        )
    cam_from_imu = _read_rigid_calib(velo_to_cam) @ _read_rigid_calib(imu_to_velo)
    imu_from_cam = np.linalg.inv(cam_from_imu)

    poses = {}
    origin = None
    scale = None
    for index in sorted(packets):
        try:
            packet = np.array([float(v) for v in packets[index].read_text().split()])
        except ValueError as error:
            raise DatasetError(
                f"Frame {index}: invalid oxts packet: {error}"
            ) from error
        if packet.size < 6:
            raise DatasetError(f"Frame {index}: the oxts packet is truncated")
        if scale is None:
            scale = math.cos(packet[0] * math.pi / 180.0)
        imu_pose = _oxts_pose(packet, scale)
        if origin is None:
            origin = np.linalg.inv(imu_pose)
        poses[index] = (cam_from_imu @ origin @ imu_pose @ imu_from_cam)[:3, :4]
    return poses


def load_sequence_calib(seq_dir, d_max: Optional[int] = None) -> StereoCalib:
    """
    Load the stereo calibration of a sequence.

    A ``calib.toml`` inside the sequence folder takes precedence over the
    KITTI ``calib_cam_to_cam.txt`` of the sequence or its date folder.

    :param seq_dir: The sequence folder.
    :param d_max: Overrides the number of disparity levels.
    :return: The calibration.
    """
    seq_dir = Path(seq_dir)
    toml_path = seq_dir / "calib.toml"
    if toml_path.is_file():
        values = read_toml(toml_path)
        try:
            calib = StereoCalib(
                focal_px=values["focal_px"],
                cx=values["cx"],
                cy=values["cy"],
                baseline_m=values["baseline_m"],
                width=values["width"],
                height=values["height"],
                d_max=values.get("d_max", 128),
            )
        except KeyError as error:
            raise DatasetError(f"'{toml_path}' lacks the key {error}") from error
    else:
        kitti_path = _find_file(seq_dir, "calib_cam_to_cam.txt")
        if kitti_path is None:
            raise DatasetError(f"No calibration found for '{seq_dir}'")
        calib = read_kitti_calib(kitti_path)
    if d_max is not None:
        calib = calib.with_d_max(d_max)
    return calib


def load_kitti_sequence(
    seq_dir,
    poses_path=None,
    gt_dir=None,
    threads: int = 1,
) -> List[SequenceFrame]:
    """
    Load a stereo sequence in the KITTI raw layout.

    :param seq_dir: The sequence folder.
    :param poses_path: A pose file with one 3x4 pose per frame index. If
        omitted, ``poses.txt`` or the oxts packets of the sequence are used.
    :param gt_dir: The folder of the ground truth disparities, ``disp_gt``
        of the sequence by default.
    :param threads: The number of threads decoding the images.
    :return: The frames ordered by index.
    """
    seq_dir = Path(seq_dir)
    if not seq_dir.is_dir():
        raise DatasetError(f"The sequence folder '{seq_dir}' doesn't exist")
    left_dir, right_dir = _camera_dirs(seq_dir)
    left_files = list_frame_files(left_dir, ".png")
    right_files = list_frame_files(right_dir, ".png")
    for index in sorted(set(left_files) ^ set(right_files)):
        side = "right" if index in left_files else "left"
        raise DatasetError(f"Frame {index}: the {side} image is missing")
    if not left_files:
        raise DatasetError(f"'{seq_dir}' contains no images")
    indices = sorted(left_files)

    poses = _load_poses(seq_dir, poses_path, indices)
    gt_dir = Path(gt_dir) if gt_dir is not None else seq_dir / "disp_gt"
    gt_files = list_frame_files(gt_dir, ".png") if gt_dir.is_dir() else {}
    boxes_path = seq_dir / "gt_boxes.txt"
    boxes = read_detections(boxes_path) if boxes_path.is_file() else None

    def load(index: int) -> SequenceFrame:
        return SequenceFrame(
            index=index,
            left=read_gray(left_files[index]),
            right=read_gray(right_files[index]),
            pose=None if poses is None else poses[index],
            gt_disp=read_disparity_png(gt_files[index]) if index in gt_files else None,
            gt_boxes=None if boxes is None else boxes.get(index, []),
        )

    with ThreadPoolExecutor(max_workers=max(1, threads)) as pool:
        frames = list(pool.map(load, indices))
    _logger.info("Loaded %d frames from '%s'", len(frames), seq_dir)
    return frames


def _load_poses(seq_dir: Path, poses_path, indices) -> Optional[Dict[int, np.ndarray]]:
    if poses_path is None and (seq_dir / "poses.txt").is_file():
        poses_path = seq_dir / "poses.txt"
    if poses_path is not None:
        try:
            poses = dict(enumerate(read_pose_file(poses_path)))
        except (OSError, ValueError) as error:
            raise DatasetError(
                f"Can't read the poses '{poses_path}': {error}"
            ) from error
    elif (seq_dir / "oxts" / "data").is_dir():
        poses = read_oxts_poses(seq_dir)
    else:
        return None
    missing = [index for index in indices if index not in poses]
    if missing:
        raise DatasetError(f"Frame {missing[0]}: no pose available")
    return poses
