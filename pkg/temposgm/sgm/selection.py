#!/usr/bin/env python
# -*- coding: UTF-8 -*-
#
"""
Disparity selection and refinement.

The winner-takes-all step picks the disparity of minimal aggregated cost
inside every pixel's range, ties going to the smaller disparity. The 3x3
median filter is applied to exported maps only and never fed back into the
temporal filter.
"""
import numba
import numpy as np

from temposgm.geometry import DisparityMap
from temposgm.matching import CostVolume

__all__ = ["MEDIAN_MIN_VALID", "winner_takes_all", "median_refine"]

# an invalid pixel is filled if at least this many of its 3x3 neighbors are valid
MEDIAN_MIN_VALID = 5


@numba.njit(parallel=True, cache=True)
def _wta_kernel(costs, offsets, lo, defined, out, valid):
    height, width = lo.shape
    for y in numba.prange(height):
        for x in range(width):
            pixel = y * width + x
            start = offsets[pixel]
            count = offsets[pixel + 1] - start
            if count == 0 or not defined[y, x]:
                out[y, x] = 0
                valid[y, x] = False
                continue
            best = 0
            best_cost = costs[start]
            for t in range(1, count):
                if costs[start + t] < best_cost:
                    best_cost = costs[start + t]
                    best = t
            out[y, x] = lo[y, x] + best
            valid[y, x] = True


def winner_takes_all(agg: CostVolume) -> DisparityMap:
    """
    Select the disparity of minimal aggregated cost at every pixel.

    :param agg: The aggregated cost volume.
    :return: The integer disparity map. Pixels without defined costs are invalid.
    """
    height, width = agg.shape
    out = np.zeros((height, width), dtype=np.int32)
    valid = np.zeros((height, width), dtype=bool)
    _wta_kernel(agg.costs, agg.offsets, agg.ranges.lo, agg.defined, out, valid)
    return DisparityMap(out, valid)


@numba.njit(parallel=True, cache=True)
def _median_kernel(disparity, valid, min_valid, out, out_valid):
    height, width = disparity.shape
    for y in numba.prange(height):
        window = np.empty(9, dtype=disparity.dtype)
        for x in range(width):
            count = 0
            for dy in range(-1, 2):
                yy = y + dy
                if yy < 0 or yy >= height:
                    continue
                for dx in range(-1, 2):
                    xx = x + dx
                    if xx < 0 or xx >= width or not valid[yy, xx]:
                        continue
                    # insertion sort while collecting
                    value = disparity[yy, xx]
                    k = count
                    while k > 0 and window[k - 1] > value:
                        window[k] = window[k - 1]
                        k -= 1
                    window[k] = value
                    count += 1
            if count > 0 and (valid[y, x] or count >= min_valid):
                # lower median, the result stays an integer level
                out[y, x] = window[(count - 1) // 2]
                out_valid[y, x] = True
            else:
                out[y, x] = 0
                out_valid[y, x] = False


def median_refine(dm: DisparityMap) -> DisparityMap:
    """
    Apply the 3x3 median filter over valid disparities.

    Every valid pixel takes the lower median of the valid disparities in its
    3x3 neighborhood. An invalid pixel is filled the same way if at least 5
    of the 9 pixels are valid.

    :param dm: The disparity map to refine.
    :return: The refined map.
    """
    disparity = np.ascontiguousarray(dm.disparity)
    out = np.zeros_like(disparity)
    out_valid = np.zeros(disparity.shape, dtype=bool)
    _median_kernel(
        disparity, np.ascontiguousarray(dm.valid), MEDIAN_MIN_VALID, out, out_valid
    )
    return DisparityMap(out, out_valid)
