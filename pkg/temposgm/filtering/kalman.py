#!/usr/bin/env python
# -*- coding: UTF-8 -*-
#
"""
The operations of the per-pixel Kalman filters over disparity.

Every pixel carries a scalar filter of its disparity. A frame is processed
by predicting the filters with the ego-motion, deriving the search ranges
of the matcher from the prediction and fusing the matched disparities into
the prediction.
"""
import logging

import cv2
import numpy as np

from temposgm.geometry import (
    DisparityMap,
    DisparityState,
    RigidMotion,
    StereoCalib,
    disparity_homography,
    forward_warp,
)
from temposgm.matching import SearchRangeMap
from .config import FilterConfig

__all__ = [
    "warp_prior",
    "predict",
    "screen_prediction",
    "reject_discontinuities",
    "fill_zoom_holes",
    "derive_search_ranges",
    "correct",
    "difference_map",
]

_logger = logging.getLogger(__name__)


def warp_prior(
    state: DisparityState, motion: RigidMotion, calib: StereoCalib, cfg: FilterConfig
) -> DisparityState:
    """
    Warp the posterior of the previous frame into the current one.

    The state is warped with the disparity homography of the ego-motion.
    The variance of every warped pixel is scaled by the squared ratio of
    its predicted and previous disparity and increased by the process noise.

    :param state: The posterior state of the previous frame.
    :param motion: The camera ego-motion between the frames.
    :param calib: The stereo calibration.
    :param cfg: The filter configuration.
    :return: The warped state, discontinuities and holes left as they are.
    """
    if state.shape != calib.shape:
        raise ValueError(
            f"The state of shape {state.shape} doesn't fit the calibration "
            f"{calib.shape}"
        )
    p_init = cfg.initial_variance(calib.d_max)
    if not state.valid.any():
        return DisparityState.empty(*state.shape, p_init=p_init)

    warped = forward_warp(state, disparity_homography(motion, calib), calib.d_max)
    prior = warped.state
    valid = prior.valid & (warped.source_d > 0)
    phi = np.ones(prior.shape)
    np.divide(prior.d, warped.source_d, out=phi, where=valid)
    prior.p = np.where(valid, phi * phi * prior.p + cfg.noise.q, p_init)
    prior.d = np.where(valid, prior.d, 0.0)
    prior.valid = valid
    return prior


def screen_prediction(
    prior: DisparityState, cfg: FilterConfig, p_init: float
) -> DisparityState:
    """
    Drop the warped predictions at and around discontinuities, then fill the
    holes the warp opened.

    Besides the pixels :func:`reject_discontinuities` invalidates, every
    valid pixel within `cfg.disc_margin` pixels of one of them is reset, so
    an edge that moved since the previous frame is searched in full.
    """
    prediction = reject_discontinuities(prior, cfg, p_init)
    rejected = prior.valid & ~prediction.valid
    if cfg.disc_margin > 0 and rejected.any():
        size = 2 * cfg.disc_margin + 1
        near = cv2.dilate(
            rejected.astype(np.uint8), np.ones((size, size), np.uint8)
        ).astype(bool)
        prediction = prediction.invalidate(near & prediction.valid, p_init)
    return fill_zoom_holes(prediction)


def predict(
    state: DisparityState, motion: RigidMotion, calib: StereoCalib, cfg: FilterConfig
) -> DisparityState:
    """
    Predict the state of the current frame from the state of the previous one.

    This is :func:`warp_prior` followed by :func:`screen_prediction`.

    :param state: The posterior state of the previous frame.
    :param motion: The camera ego-motion between the frames.
    :param calib: The stereo calibration.
    :param cfg: The filter configuration.
    :return: The predicted state.
    """
    prior = warp_prior(state, motion, calib, cfg)
    if not prior.valid.any():
        return prior
    prediction = screen_prediction(prior, cfg, cfg.initial_variance(calib.d_max))
    _logger.debug(
        "Predicted %d of %d pixels",
        np.count_nonzero(prediction.valid),
        prediction.valid.size,
    )
    return prediction


def reject_discontinuities(
    state: DisparityState, cfg: FilterConfig, p_init: float = None
) -> DisparityState:
    """
    Invalidate every valid pixel whose disparity differs from a valid
    4-neighbor by more than the discontinuity threshold.

    :param state: The state to clean.
    :param cfg: The filter configuration.
    :param p_init: The variance of rejected pixels. Defaults to the
        configured initial variance, or the largest variance of the state.
    :return: A new state.
    """
    if p_init is None:
        p_init = cfg.p_init if cfg.p_init is not None else float(np.max(state.p))
    d = state.d
    valid = state.valid
    rejected = np.zeros_like(valid)

    steps = np.abs(d[:, 1:] - d[:, :-1]) > cfg.disc_thresh
    jump = valid[:, 1:] & valid[:, :-1] & steps
    rejected[:, 1:] |= jump
    rejected[:, :-1] |= jump
    steps = np.abs(d[1:, :] - d[:-1, :]) > cfg.disc_thresh
    jump = valid[1:, :] & valid[:-1, :] & steps
    rejected[1:, :] |= jump
    rejected[:-1, :] |= jump

    if not rejected.any():
        return state.copy()
    return state.invalidate(rejected, p_init)


def fill_zoom_holes(state: DisparityState) -> DisparityState:
    """
    Fill the holes the forward warp leaves when the camera approaches the scene.

    An invalid pixel whose two horizontal or two vertical neighbors are
    valid takes the mean disparity and variance of that pair, or of all four
    neighbors if both pairs are valid. All fills are computed from the input
    state, so filled pixels never feed other fills.

    :param state: The state to fill.
    :return: A new state.
    """
    height, width = state.shape
    valid = state.valid
    d = state.d
    p = state.p

    horizontal = np.zeros_like(valid)
    vertical = np.zeros_like(valid)
    horizontal[:, 1:-1] = valid[:, :-2] & valid[:, 2:]
    vertical[1:-1, :] = valid[:-2, :] & valid[2:, :]
    horizontal &= ~valid
    vertical &= ~valid
    holes = horizontal | vertical
    result = state.copy()
    if not holes.any():
        return result

    sum_d = np.zeros((height, width))
    sum_p = np.zeros((height, width))
    count = np.zeros((height, width))
    sum_d[:, 1:-1] += np.where(horizontal[:, 1:-1], d[:, :-2] + d[:, 2:], 0.0)
    sum_p[:, 1:-1] += np.where(horizontal[:, 1:-1], p[:, :-2] + p[:, 2:], 0.0)
    count[:, 1:-1] += np.where(horizontal[:, 1:-1], 2, 0)
    sum_d[1:-1, :] += np.where(vertical[1:-1, :], d[:-2, :] + d[2:, :], 0.0)
    sum_p[1:-1, :] += np.where(vertical[1:-1, :], p[:-2, :] + p[2:, :], 0.0)
    count[1:-1, :] += np.where(vertical[1:-1, :], 2, 0)

    result.d[holes] = sum_d[holes] / count[holes]
    result.p[holes] = sum_p[holes] / count[holes]
    result.valid[holes] = True
    return result


def derive_search_ranges(
    state: DisparityState, calib: StereoCalib, cfg: FilterConfig
) -> SearchRangeMap:
    """
    Derive the disparity interval the matcher searches at every pixel.

    A valid pixel searches [floor(d - w), ceil(d + w)] where the half-width
    w is the variance, or a multiple of the standard deviation in "stddev"
    mode. Intervals narrower than 2 * min_range_halfwidth + 1 levels are
    widened around the rounded prediction. Invalid pixels search the whole
    disparity space.

    :param state: The predicted state.
    :param calib: The stereo calibration.
    :param cfg: The filter configuration.
    :return: The search ranges.
    """
    d_max = calib.d_max
    height, width = state.shape
    if not cfg.reduce_search or not state.valid.any():
        return SearchRangeMap.full(height, width, d_max)

    valid = state.valid
    d = np.where(valid, state.d, 0.0)
    p = np.where(valid, state.p, 0.0)
    if cfg.range_mode == "variance":
        halfwidth = p
    else:
        halfwidth = cfg.range_scale * np.sqrt(p)

    lo = np.clip(np.floor(d - halfwidth), 0, d_max - 1)
    hi = np.clip(np.ceil(d + halfwidth), 0, d_max - 1)

    needed = min(2 * cfg.min_range_halfwidth + 1, d_max)
    narrow = (hi - lo + 1) < needed
    center = np.clip(np.rint(d), 0, d_max - 1)
    wide_lo = np.clip(center - cfg.min_range_halfwidth, 0, d_max - needed)
    wide_hi = wide_lo + needed - 1
    lo = np.where(narrow, np.minimum(lo, wide_lo), lo)
    hi = np.where(narrow, np.maximum(hi, wide_hi), hi)

    lo = np.where(valid, lo, 0).astype(np.int32)
    hi = np.where(valid, hi, d_max - 1).astype(np.int32)
    return SearchRangeMap(lo, hi, d_max)


def correct(
    pred: DisparityState, meas: DisparityMap, cfg: FilterConfig
) -> DisparityState:
    """
    Fuse the measured disparities into the prediction.

    With gain K = p / (p + r) the posterior is d + K (d_z - d) with variance
    (1 - K)² p + K² r. A measurement without prediction starts a new filter
    with variance r, a prediction without measurement is carried through.

    :param pred: The predicted state.
    :param meas: The disparities measured by the matcher.
    :param cfg: The filter configuration.
    :return: The posterior state.
    """
    if pred.shape != meas.shape:
        raise ValueError(
            f"Prediction {pred.shape} and measurement {meas.shape} differ in shape"
        )
    r = cfg.noise.r
    d_z = meas.disparity.astype(np.float64)
    both = pred.valid & meas.valid
    only_meas = meas.valid & ~pred.valid

    result = pred.copy()
    gain = pred.p[both] / (pred.p[both] + r)
    result.d[both] = pred.d[both] + gain * (d_z[both] - pred.d[both])
    result.p[both] = (1.0 - gain) ** 2 * pred.p[both] + gain * gain * r
    result.d[only_meas] = d_z[only_meas]
    result.p[only_meas] = r
    result.valid = pred.valid | meas.valid
    result.d[~result.valid] = 0.0
    return result


def difference_map(pred: DisparityState, meas: DisparityMap) -> np.ndarray:
    """
    The temporal matcher passes the warped prior of :func:`warp_prior` here,
    whose pixels at moved edges are still valid.

    :return: |d_pred - d_z| where prediction and measurement are valid, 0 elsewhere.
    """
    both = pred.valid & meas.valid
    return np.where(both, np.abs(pred.d - meas.disparity), 0.0)
