#!/usr/bin/env python
# -*- coding: UTF-8 -*-
#
"""
Accuracy and runtime comparison of matcher configurations over a sequence.

Supported modes:

    conventional   the matcher searches the whole disparity space in every frame
    temporal       the search space is reduced by the temporal filter
    opencv         the semi-global block matcher of OpenCV, for reference
    ground-truth   the ground truth scored against itself
"""
import csv
import logging
import math
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, List, Optional, Sequence

import cv2
import numpy as np

from temposgm.dataset import SequenceFrame, frame_motions
from temposgm.detection import DetectConfig, detect_moving_objects
from temposgm.errors import EmptyDataError
from temposgm.filtering import FilterConfig, TemporalMatcher
from temposgm.geometry import DisparityMap, StereoCalib
from temposgm.sgm import SemiGlobalMatcher, SgmParams, median_refine
from .metrics import outlier_counts

__all__ = [
    "MODES",
    "CSV_COLUMNS",
    "BenchmarkConfig",
    "FrameReport",
    "BenchmarkResult",
    "run_config",
    "run_benchmark",
    "format_table",
    "write_csv",
]

_logger = logging.getLogger(__name__)

MODES = ("conventional", "temporal", "opencv", "ground-truth")
CSV_COLUMNS = (
    "config",
    "frames",
    "mean_time_s",
    "median_time_s",
    "outlier_pct",
    "density_pct",
)


@dataclass
class BenchmarkConfig:
    """
    A named matcher configuration to benchmark.

    `detect` enables the moving object detection in temporal mode, which is
    then timed as a stage of its own.
    """

    name: str
    mode: str = "temporal"
    params: SgmParams = field(default_factory=SgmParams)
    filter_cfg: FilterConfig = field(default_factory=FilterConfig)
    detect: Optional[DetectConfig] = None
    strict: bool = False

    def __post_init__(self):
        if self.mode not in MODES:
            raise ValueError(
                f"Unknown benchmark mode '{self.mode}', expected one of {', '.join(MODES)}"
            )


@dataclass
class FrameReport:
    """
    The result of one frame. `outlier_pct` is None for frames without
    ground truth.
    """

    index: int
    outlier_pct: Optional[float]
    valid_density: float
    timings: Dict[str, float]
    total: float
    outliers: int = 0
    evaluated: int = 0


@dataclass
class BenchmarkResult:
    """
    The aggregated result of one configuration.

    `outlier_pct` pools the pixels of all frames, `mean_frame_outlier_pct`
    averages the per-frame percentages.
    """

    name: str
    frames: List[FrameReport]

    @property
    def frame_count(self) -> int:
        return len(self.frames)

    def times(self, skip_first: bool = False) -> np.ndarray:
        frames = self.frames[1:] if skip_first else self.frames
        return np.array([frame.total for frame in frames], dtype=np.float64)

    def mean_time(self, skip_first: bool = False) -> float:
        times = self.times(skip_first)
        return float(np.mean(times)) if times.size else math.nan

    def median_time(self, skip_first: bool = False) -> float:
        times = self.times(skip_first)
        return float(np.median(times)) if times.size else math.nan

    @property
    def outlier_pct(self) -> float:
        evaluated = sum(frame.evaluated for frame in self.frames)
        if evaluated == 0:
            return math.nan
        return 100.0 * sum(frame.outliers for frame in self.frames) / evaluated

    @property
    def mean_frame_outlier_pct(self) -> float:
        values = [f.outlier_pct for f in self.frames if f.outlier_pct is not None]
        return float(np.mean(values)) if values else math.nan

    @property
    def density_pct(self) -> float:
        if not self.frames:
            return math.nan
        return float(np.mean([frame.valid_density for frame in self.frames]))

    def stage_means(self) -> Dict[str, float]:
        """
        :return: The mean duration of every stage over all frames.
        """
        sums: Dict[str, float] = {}
        for frame in self.frames:
            for stage, duration in frame.timings.items():
                sums[stage] = sums.get(stage, 0.0) + duration
        return {stage: total / len(self.frames) for stage, total in sums.items()}

    def to_row(self) -> Dict[str, object]:
        return {
            "config": self.name,
            "frames": self.frame_count,
            "mean_time_s": self.mean_time(),
            "median_time_s": self.median_time(),
            "outlier_pct": self.outlier_pct,
            "density_pct": self.density_pct,
        }


OPENCV_BLOCK = 5


def _opencv_matcher(params: SgmParams):
    """
    The OpenCV reference matcher with as many levels and paths as `params`.

    Its block matching costs sum intensity differences over the block, which
    census penalties can't be translated to. The penalties stay at the usual
    OpenCV choice of 8 and 32 times the block area.
    """
    block = OPENCV_BLOCK
    levels = int(math.ceil(params.d_max / 16.0)) * 16
    mode = cv2.STEREO_SGBM_MODE_HH if params.paths == 8 else cv2.STEREO_SGBM_MODE_SGBM
    return cv2.StereoSGBM_create(
        minDisparity=0,
        numDisparities=levels,
        blockSize=block,
        P1=8 * block * block,
        P2=32 * block * block,
        mode=mode,
    )


def _opencv_match(matcher, frame: SequenceFrame, d_max: int) -> DisparityMap:
    raw = matcher.compute(frame.left, frame.right).astype(np.float64) / 16.0
    valid = (raw >= 0) & (raw < d_max)
    return DisparityMap(np.where(valid, raw, 0.0), valid)


def _score(
    report: FrameReport, estimate: DisparityMap, frame: SequenceFrame, strict: bool
):
    report.valid_density = 100.0 * estimate.density()
    if frame.gt_disp is None:
        return
    report.outliers, report.evaluated = outlier_counts(estimate, frame.gt_disp, strict)
    if report.evaluated:
        report.outlier_pct = 100.0 * report.outliers / report.evaluated


def run_config(
    frames: Sequence[SequenceFrame], calib: StereoCalib, config: BenchmarkConfig
) -> BenchmarkResult:
    """
    Run one configuration over the frames. The frames are decoded beforehand,
    so the timings exclude all I/O.
    """
    frames = list(frames)
    params = config.params
    if params.d_max != calib.d_max:
        params = params.replace(d_max=calib.d_max)
    reports = []

    if config.mode == "temporal":
        matcher = TemporalMatcher(calib, params, config.filter_cfg)
        for frame, motion in zip(frames, frame_motions(frames)):
            start = time.perf_counter()
            result = matcher.step(frame.left, frame.right, motion)
            timings = dict(result.timings)
            if config.detect is not None and motion is not None:
                detect_start = time.perf_counter()
                detect_moving_objects(
                    result.prior, result.measurement, config.detect
                )
                timings["detect"] = time.perf_counter() - detect_start
            report = FrameReport(
                frame.index, None, 0.0, timings, time.perf_counter() - start
            )
            _score(report, result.export, frame, config.strict)
            reports.append(report)
    elif config.mode == "conventional":
        matcher = SemiGlobalMatcher(params)
        for frame in frames:
            start = time.perf_counter()
            estimate = matcher.match(frame.left, frame.right)
            timings = dict(matcher.timings)
            median_start = time.perf_counter()
            estimate = median_refine(estimate)
            timings["median"] = time.perf_counter() - median_start
            report = FrameReport(
                frame.index, None, 0.0, timings, time.perf_counter() - start
            )
            _score(report, estimate, frame, config.strict)
            reports.append(report)
    elif config.mode == "opencv":
        matcher = _opencv_matcher(params)
        for frame in frames:
            start = time.perf_counter()
            estimate = _opencv_match(matcher, frame, params.d_max)
            elapsed = time.perf_counter() - start
            report = FrameReport(frame.index, None, 0.0, {"opencv": elapsed}, elapsed)
            _score(report, estimate, frame, config.strict)
            reports.append(report)
    else:
        for frame in frames:
            if frame.gt_disp is None:
                raise EmptyDataError(
                    f"Frame {frame.index} has no ground truth disparity"
                )
            report = FrameReport(frame.index, None, 0.0, {}, 0.0)
            _score(report, frame.gt_disp, frame, config.strict)
            reports.append(report)

    result = BenchmarkResult(config.name, reports)
    _logger.info(
        "%s: %d frames, %.4fs per frame, %.2f%% outliers",
        config.name,
        result.frame_count,
        result.mean_time(),
        result.outlier_pct,
    )
    return result


def run_benchmark(
    frames: Sequence[SequenceFrame],
    calib: StereoCalib,
    configs: Sequence[BenchmarkConfig],
) -> List[BenchmarkResult]:
    """
    Run every configuration over the sequence, one after the other.

    :param frames: The decoded frames.
    :param calib: The stereo calibration.
    :param configs: The configurations, with unique names.
    :return: One result per configuration.
    """
    names = [config.name for config in configs]
    if len(set(names)) != len(names):
        raise ValueError(f"The benchmark configurations need unique names, got {names}")
    return [run_config(frames, calib, config) for config in configs]


def format_table(results: Sequence[BenchmarkResult]) -> str:
    """
    Render the results as an aligned text table.
    """
    header = (
        f"{'config':<24} {'frames':>6} {'mean [s]':>10} {'median [s]':>10} "
        f"{'outliers [%]':>12} {'frame mean [%]':>14} {'density [%]':>11}"
    )
    rows = [header, "-" * len(header)]
    for result in results:
        rows.append(
            f"{result.name:<24} {result.frame_count:>6d} {result.mean_time():>10.4f} "
            f"{result.median_time():>10.4f} {result.outlier_pct:>12.2f} "
            f"{result.mean_frame_outlier_pct:>14.2f} {result.density_pct:>11.2f}"
        )
    return "\n".join(rows)


def write_csv(path, results: Sequence[BenchmarkResult]) -> None:
    """
    Write one row per configuration with the columns of :data:`CSV_COLUMNS`.
    """
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", newline="", encoding="utf-8") as stream:
        writer = csv.DictWriter(stream, fieldnames=CSV_COLUMNS)
        writer.writeheader()
        for result in results:
            writer.writerow(result.to_row())
