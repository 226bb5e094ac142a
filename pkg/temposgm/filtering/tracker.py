#!/usr/bin/env python
# -*- coding: UTF-8 -*-
#
"""
The temporal stereo matcher: one frame of prediction, reduced range
matching and correction.
"""
import logging
import time
from dataclasses import dataclass, field
from typing import Dict, Optional, Tuple

import numpy as np

from temposgm.geometry import DisparityMap, DisparityState, RigidMotion, StereoCalib
from temposgm.matching import SearchRangeMap
from temposgm.sgm import SemiGlobalMatcher, SgmParams, median_refine
from .config import FilterConfig
from .kalman import (
    correct,
    derive_search_ranges,
    difference_map,
    screen_prediction,
    warp_prior,
)

__all__ = ["StepResult", "TemporalMatcher", "step"]

_logger = logging.getLogger(__name__)


@dataclass
class StepResult:
    """
    Everything one frame of the temporal matcher produced.

    `prior` is the warped posterior of the previous frame and `prediction`
    the same after dropping the pixels around discontinuities. The
    difference map compares the measurement with the prior, so edges that
    moved since the previous frame show up in it.
    """

    state: DisparityState
    prior: DisparityState
    prediction: DisparityState
    measurement: DisparityMap
    export: DisparityMap
    diff: np.ndarray
    ranges: SearchRangeMap
    timings: Dict[str, float] = field(default_factory=dict)

    @property
    def mean_range(self) -> float:
        """
        The average number of disparities searched per pixel.
        """
        return float(np.mean(self.ranges.lengths()))


def _predict(
    state: DisparityState,
    motion: Optional[RigidMotion],
    calib: StereoCalib,
    cfg: FilterConfig,
) -> Tuple[DisparityState, DisparityState]:
    p_init = cfg.initial_variance(calib.d_max)
    if motion is None:
        prior = DisparityState.empty(*calib.shape, p_init=p_init)
    else:
        prior = warp_prior(state, motion, calib, cfg)
    if not prior.valid.any():
        return prior, prior.copy()
    return prior, screen_prediction(prior, cfg, p_init)


def _export_map(state: DisparityState, d_max: int) -> DisparityMap:
    levels = state.to_map()
    np.clip(levels.disparity, 0, d_max - 1, out=levels.disparity)
    return median_refine(levels)


class TemporalMatcher:
    """
    Owns the filter state of one image sequence.

    Each call of :meth:`step` consumes the next stereo pair together with the
    ego-motion since the previous pair. Without a motion, as for the first
    frame, the prediction is skipped and the matcher searches the whole
    disparity space.

    :param calib: The stereo calibration.
    :param params: The matcher parameters.
    :param cfg: The filter configuration.
    """

    def __init__(
        self,
        calib: StereoCalib,
        params: Optional[SgmParams] = None,
        cfg: Optional[FilterConfig] = None,
    ):
        params = params if params is not None else SgmParams(d_max=calib.d_max)
        if params.d_max != calib.d_max:
            raise ValueError(
                f"The matcher searches {params.d_max} levels but the calibration "
                f"declares {calib.d_max}"
            )
        self.__calib = calib
        self.__cfg = cfg if cfg is not None else FilterConfig()
        self.__matcher = SemiGlobalMatcher(params)
        self.__state = None
        self.__frame = 0
        self.reset()

    @property
    def calib(self) -> StereoCalib:
        return self.__calib

    @property
    def params(self) -> SgmParams:
        return self.__matcher.params

    @property
    def cfg(self) -> FilterConfig:
        return self.__cfg

    @property
    def state(self) -> DisparityState:
        return self.__state.copy()

    @property
    def frame(self) -> int:
        """
        The number of frames processed since the last reset.
        """
        return self.__frame

    def reset(self):
        """
        Forget all disparities, as before the first frame.
        """
        p_init = self.__cfg.initial_variance(self.__calib.d_max)
        self.__state = DisparityState.empty(*self.__calib.shape, p_init=p_init)
        self.__frame = 0

    def step(self, left, right, motion: Optional[RigidMotion] = None) -> StepResult:
        """
        Process the next stereo pair.

        :param left: The left gray scale image.
        :param right: The right gray scale image.
        :param motion: The ego-motion since the previous pair, None for the first.
        :return: The result of this frame.
        """
        timings = {}
        start = time.perf_counter()
        prior, prediction = _predict(self.__state, motion, self.__calib, self.__cfg)
        ranges = derive_search_ranges(prediction, self.__calib, self.__cfg)
        timings["predict"] = time.perf_counter() - start

        measurement = self.__matcher.match(left, right, ranges)
        timings.update(self.__matcher.timings)

        start = time.perf_counter()
        posterior = correct(prediction, measurement, self.__cfg)
        diff = difference_map(prior, measurement)
        export = _export_map(posterior, self.__calib.d_max)
        timings["correct"] = time.perf_counter() - start

        self.__state = posterior
        self.__frame += 1
        _logger.debug(
            "Frame %d: %.2f levels per pixel, %.1f%% valid",
            self.__frame,
            float(np.mean(ranges.lengths())),
            100.0 * export.density(),
        )
        return StepResult(
            state=posterior.copy(),
            prior=prior,
            prediction=prediction,
            measurement=measurement,
            export=export,
            diff=diff,
            ranges=ranges,
            timings=timings,
        )


def step(
    state: DisparityState,
    left,
    right,
    motion: Optional[RigidMotion],
    calib: StereoCalib,
    params: SgmParams,
    cfg: FilterConfig,
) -> Tuple[DisparityState, DisparityMap, np.ndarray]:
    """
    Process one stereo pair starting from `state`.

    :return: The posterior state, the exported disparity map and the
        difference map of the warped prior and the measurement.
    """
    prior, prediction = _predict(state, motion, calib, cfg)
    ranges = derive_search_ranges(prediction, calib, cfg)
    measurement = SemiGlobalMatcher(params).match(left, right, ranges)
    posterior = correct(prediction, measurement, cfg)
    return (
        posterior,
        _export_map(posterior, calib.d_max),
        difference_map(prior, measurement),
    )
