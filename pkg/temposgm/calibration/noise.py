#!/usr/bin/env python
# -*- coding: UTF-8 -*-
#
"""
Estimation of the noise variances of the temporal filter from sequences
with ground truth disparities.

The process noise is the error of predicting the ground truth of a frame
by warping the ground truth of its predecessor with the ego-motion. The
measurement noise is the error of the matcher searching the whole
disparity space. Both are the variance of the pooled errors, ignoring
gross errors beyond :data:`GATE_PX` which stem from occlusions rather than
noise.

The measurement errors only cover pixels whose true correspondence lies
within the census-defined part of the right image, x - d_gt >= CENSUS_RADIUS.
Left of that the matcher has nothing to find.
"""
import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import List, Sequence, Tuple

import numpy as np

from temposgm.errors import EmptyDataError
from temposgm.filtering import NoiseParams
from temposgm.geometry import (
    DisparityState,
    StereoCalib,
    disparity_homography,
    relative_motion,
    warp_state,
)
from temposgm.matching import CENSUS_RADIUS
from temposgm.sgm import SgmParams, sgm_match
from .histogram import ErrorHistogram

__all__ = [
    "GATE_PX",
    "Q_FLOOR",
    "process_errors",
    "has_correspondence",
    "measurement_errors",
    "gated_variance",
    "estimate_process_noise",
    "estimate_measurement_noise",
    "accumulate_error_map",
    "normalize_error_map",
    "CalibrationReport",
]

_logger = logging.getLogger(__name__)

GATE_PX = 10.0
Q_FLOOR = 0.1


def _check_ground_truth(frames, need_pose: bool):
    for frame in frames:
        if frame.gt_disp is None:
            raise ValueError(f"Frame {frame.index} has no ground truth disparity")
        if need_pose and frame.pose is None:
            raise ValueError(f"Frame {frame.index} has no pose")


def _warp_error(prev, cur, calib: StereoCalib) -> Tuple[np.ndarray, np.ndarray]:
    gt_prev = prev.gt_disp
    gt_cur = cur.gt_disp
    # ground truth may exceed the search space of the matcher
    levels = max(calib.d_max, int(math.ceil(np.max(gt_prev.masked(0)))) + 2)
    H = disparity_homography(relative_motion(prev.pose, cur.pose), calib)
    warped = warp_state(DisparityState.from_map(gt_prev, 1.0), H, levels)
    both = warped.valid & gt_cur.valid
    return np.where(both, warped.d - gt_cur.disparity, 0.0), both


def _map_pairs(function, items, threads: int) -> list:
    if threads <= 1:
        return [function(item) for item in items]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(function, items))


def process_errors(
    frames: Sequence, calib: StereoCalib, threads: int = 1
) -> np.ndarray:
    """
    Pool the errors of predicting every frame's ground truth from its predecessor.

    :param frames: At least two frames with ground truth disparities and poses.
    :param calib: The stereo calibration.
    :param threads: The number of frame pairs processed in parallel.
    :return: The errors (warped minus actual) over all mutually valid pixels.
    """
    frames = list(frames)
    if len(frames) < 2:
        raise ValueError(f"At least two frames are required, got {len(frames)}")
    _check_ground_truth(frames, need_pose=True)
    results = _map_pairs(
        lambda pair: _warp_error(pair[0], pair[1], calib),
        list(zip(frames, frames[1:])),
        threads,
    )
    errors = np.concatenate([error[valid] for error, valid in results])
    if errors.size == 0:
        raise EmptyDataError("The warped and actual ground truth don't overlap")
    return errors


def has_correspondence(gt) -> np.ndarray:
    """
    :param gt: A ground truth disparity map.
    :return: The mask of the pixels whose match has a census signature in
        the right image.
    """
    columns = np.arange(gt.disparity.shape[1], dtype=np.float64)[np.newaxis, :]
    with np.errstate(invalid="ignore"):
        return columns - gt.disparity >= CENSUS_RADIUS


def measurement_errors(
    frames: Sequence, params: SgmParams, threads: int = 1
) -> np.ndarray:
    """
    Pool the errors of the matcher searching the whole disparity space.

    Every frame is matched on its own, as if it were the first one.

    :param frames: At least one frame with ground truth disparities.
    :param params: The matcher parameters.
    :param threads: The number of frames processed in parallel.
    :return: The errors (matched minus ground truth) over all pixels valid in
        both whose correspondence lies inside the right image.
    """
    frames = list(frames)
    if not frames:
        raise ValueError("At least one frame is required")
    _check_ground_truth(frames, need_pose=False)

    def frame_errors(frame):
        estimate = sgm_match(frame.left, frame.right, None, params)
        gt = frame.gt_disp
        both = estimate.valid & gt.valid & has_correspondence(gt)
        return (estimate.disparity[both] - gt.disparity[both]).astype(np.float64)

    errors = np.concatenate(_map_pairs(frame_errors, frames, threads))
    if errors.size == 0:
        raise EmptyDataError("The matched and ground truth disparities don't overlap")
    return errors


def gated_variance(errors: np.ndarray, gate: float = GATE_PX) -> float:
    """
    :return: The variance of the errors within ±gate.
    """
    inliers = errors[np.abs(errors) <= gate]
    if inliers.size == 0:
        raise EmptyDataError(f"No error lies within ±{gate:g} px")
    return float(np.var(inliers))


def estimate_process_noise(
    frames: Sequence, calib: StereoCalib, threads: int = 1
) -> Tuple[float, ErrorHistogram]:
    """
    Estimate the process noise q from a static sequence with poses.

    :return: The variance q in pixels², which may be 0 for a perfect
        sequence, and the histogram of all errors.
    """
    errors = process_errors(frames, calib, threads)
    q = gated_variance(errors)
    _logger.info("Process noise q=%.4f from %d errors", q, errors.size)
    return q, ErrorHistogram.from_errors(errors)


def estimate_measurement_noise(
    frames: Sequence, params: SgmParams, threads: int = 1
) -> Tuple[float, ErrorHistogram]:
    """
    Estimate the measurement noise r of the full range matcher.

    :return: The variance r in pixels² and the histogram of all errors.
    """
    errors = measurement_errors(frames, params, threads)
    r = gated_variance(errors)
    _logger.info("Measurement noise r=%.4f from %d errors", r, errors.size)
    return r, ErrorHistogram.from_errors(errors)


def accumulate_error_map(
    frames: Sequence, calib: StereoCalib, threads: int = 1
) -> np.ndarray:
    """
    Sum the absolute prediction errors of the ground truth per pixel.

    :return: The accumulated absolute error of every pixel over all frame pairs.
    """
    frames = list(frames)
    if len(frames) < 2:
        raise ValueError(f"At least two frames are required, got {len(frames)}")
    _check_ground_truth(frames, need_pose=True)
    results = _map_pairs(
        lambda pair: _warp_error(pair[0], pair[1], calib),
        list(zip(frames, frames[1:])),
        threads,
    )
    if not any(valid.any() for _, valid in results):
        raise EmptyDataError("The warped and actual ground truth don't overlap")
    accumulated = np.zeros(frames[0].shape)
    for error, _ in results:
        accumulated += np.abs(error)
    return accumulated


def normalize_error_map(error_map: np.ndarray) -> np.ndarray:
    """
    Scale an error map to 8 bit gray values, the largest error being white.
    """
    peak = float(np.max(error_map)) if error_map.size else 0.0
    if peak <= 0:
        return np.zeros(error_map.shape, dtype=np.uint8)
    return np.rint(255.0 * error_map / peak).astype(np.uint8)


@dataclass
class CalibrationReport:
    """
    The estimated noise variances with the error distributions they came from.
    """

    q: float
    r: float
    process: ErrorHistogram
    measurement: ErrorHistogram

    def to_noise_params(self, floor: float = Q_FLOOR) -> NoiseParams:
        """
        :return: The noise parameters, degenerate estimates raised to `floor`.
        """
        return NoiseParams(q=max(self.q, floor), r=max(self.r, floor))

    def to_text(self) -> str:
        """
        Render the report. The leading keys form a valid configuration file.
        """
        noise = self.to_noise_params()
        lines: List[str] = [
            f"q = {noise.q!r}",
            f"r = {noise.r!r}",
            "",
            f"# estimated q: {self.q:.6f} px^2",
            f"# estimated r: {self.r:.6f} px^2",
        ]
        for name, histogram in (
            ("process", self.process), ("measurement", self.measurement)
        ):
            lines.append(
                f"# {name} errors: {histogram.total}, "
                f"within 1 px: {100.0 * histogram.inlier_fraction():.2f}%, "
                f"mean: {histogram.mean:.4f} px"
            )
            lines.extend(f"# {row}" for row in histogram.to_table().splitlines())
        return "\n".join(lines) + "\n"
