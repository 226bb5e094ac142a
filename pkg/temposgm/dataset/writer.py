#!/usr/bin/env python
# -*- coding: UTF-8 -*-
#
"""
Writing sequences in the layout read by :func:`load_kitti_sequence`.
"""
import logging
from pathlib import Path
from typing import Sequence

from temposgm.detection import write_detections
from temposgm.geometry import StereoCalib, write_pose_file
from .frame import SequenceFrame
from .io import write_disparity_png, write_image

__all__ = ["frame_name", "write_calib_toml", "write_sequence"]

_logger = logging.getLogger(__name__)


def frame_name(index: int, suffix: str = ".png") -> str:
    return f"{index:010d}{suffix}"


def write_calib_toml(path, calib: StereoCalib) -> None:
    """
    Write the calibration as flat TOML keys, readable as a configuration file.
    """
    lines = [f"{key} = {value!r}" for key, value in calib.to_dict().items()]
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def write_sequence(
    frames: Sequence[SequenceFrame], out_dir, calib: StereoCalib
) -> Path:
    """
    Write frames with their poses, ground truth and calibration.

    :param frames: The frames to write.
    :param out_dir: The sequence folder, created if missing.
    :param calib: The calibration of the sequence.
    :return: The sequence folder.
    """
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    for frame in frames:
        name = frame_name(frame.index)
        write_image(out_dir / "image_00" / "data" / name, frame.left)
        write_image(out_dir / "image_01" / "data" / name, frame.right)
        if frame.gt_disp is not None:
            write_disparity_png(out_dir / "disp_gt" / name, frame.gt_disp)
    if frames and all(frame.pose is not None for frame in frames):
        if [frame.index for frame in frames] != list(range(len(frames))):
            raise ValueError("Poses can only be written for frames indexed from 0")
        write_pose_file(out_dir / "poses.txt", [frame.pose for frame in frames])
    if any(frame.gt_boxes is not None for frame in frames):
        write_detections(
            out_dir / "gt_boxes.txt",
            {frame.index: frame.gt_boxes or [] for frame in frames},
        )
    write_calib_toml(out_dir / "calib.toml", calib)
    _logger.info("Wrote %d frames to '%s'", len(frames), out_dir)
    return out_dir
