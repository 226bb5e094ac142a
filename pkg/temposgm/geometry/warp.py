#!/usr/bin/env python
# -*- coding: UTF-8 -*-
#
"""
Forward warping of disparity states between frames.

Every valid source pixel is mapped by the disparity homography and written
to the nearest target pixel. If several sources hit the same target, the
larger disparity wins because the nearer surface occludes the farther one.
Targets which receive no source stay invalid; these are the holes of the
zooming effect.
"""
from dataclasses import dataclass

import numpy as np

from .homography import DispHomography
from .state import DisparityState

__all__ = ["WarpResult", "forward_warp", "warp_state"]


@dataclass
class WarpResult:
    """
    The warped state together with the disparity each target pixel came from.
    """

    state: DisparityState
    source_d: np.ndarray


def forward_warp(state: DisparityState, H: DispHomography, d_max: int) -> WarpResult:
    """
    Warp a state and remember the source disparity of every target pixel.

    :param state: The state of the previous frame.
    :param H: The disparity homography between the frames.
    :param d_max: Predictions outside of (0, d_max) are dropped.
    :return: The warped state and the per-target source disparity.
    """
    height, width = state.shape
    ys, xs = np.nonzero(state.valid)
    d_src = state.d[ys, xs]
    p_src = state.p[ys, xs]
    x_new, y_new, d_new = H.apply(xs, ys, d_src)

    tx = np.rint(x_new)
    ty = np.rint(y_new)
    keep = (
        np.isfinite(tx)
        & np.isfinite(ty)
        & np.isfinite(d_new)
        & (tx >= 0)
        & (tx < width)
        & (ty >= 0)
        & (ty < height)
        & (d_new > 0)
        & (d_new < d_max)
    )
    target = ty[keep].astype(np.int64) * width + tx[keep].astype(np.int64)
    d_new = d_new[keep]
    p_src = p_src[keep]
    d_src = d_src[keep]

    # sort by target, then disparity ascending, then variance descending:
    # the last entry of every target group is the winner, whatever the
    # traversal order of the sources was
    order = np.lexsort((-p_src, d_new, target))
    target = target[order]
    is_last = np.ones(target.size, dtype=bool)
    is_last[:-1] = target[1:] != target[:-1]
    winners = order[is_last]
    target = target[is_last]

    warped = DisparityState.empty(height, width, p_init=1.0)
    flat_d = warped.d.reshape(-1)
    flat_p = warped.p.reshape(-1)
    flat_valid = warped.valid.reshape(-1)
    source = np.zeros(height * width)
    flat_d[target] = d_new[winners]
    flat_p[target] = p_src[winners]
    flat_valid[target] = True
    source[target] = d_src[winners]
    return WarpResult(state=warped, source_d=source.reshape(height, width))


def warp_state(state: DisparityState, H: DispHomography, d_max: int) -> DisparityState:
    """
    Forward warp a disparity state into the next frame.

    The variance is carried unchanged. Its propagation belongs to the
    prediction step of the temporal filter.

    :param state: The state of the previous frame.
    :param H: The disparity homography between the frames.
    :param d_max: The number of disparity levels.
    :return: The warped state.
    """
    return forward_warp(state, H, d_max).state
