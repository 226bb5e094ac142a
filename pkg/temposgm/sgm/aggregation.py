#!/usr/bin/env python
# -*- coding: UTF-8 -*-
#
"""
This module implements the path-wise cost aggregation of semi-global matching.

Along every path direction r the costs are accumulated recursively:

    L_r(p, d) = C(p, d) + min(L_r(p-r, d),
                              L_r(p-r, d-1) + P1,
                              L_r(p-r, d+1) + P1,
                              min_k L_r(p-r, k) + P2) - min_k L_r(p-r, k)

Only the disparities inside the search range of the predecessor take part.
A disparity of the current pixel outside that range is reached through the
P2 branch alone. Subtracting the predecessor minimum keeps every value in
[C, C + P2].

The image is traversed twice. The first pass runs from the top left to the
bottom right and serves all directions whose predecessor lies above or to
the left, the second pass runs back and serves the others. Only the row
buffers of the current and the previous row are kept per direction.
"""
from typing import Iterable, Tuple

import numba
import numpy as np

from temposgm.matching import CostVolume
from .params import SgmParams

__all__ = ["aggregate_paths", "aggregate_direction", "split_passes"]


def split_passes(directions: Iterable[Tuple[int, int]]):
    """
    Split directions into those served by the forward and the backward pass.

    :return: Two (n, 2) int arrays of (dx, dy) steps.
    """
    forward = []
    backward = []
    for dx, dy in directions:
        if dy > 0 or (dy == 0 and dx > 0):
            forward.append((dx, dy))
        else:
            backward.append((dx, dy))
    return (
        np.array(forward, dtype=np.int64).reshape(-1, 2),
        np.array(backward, dtype=np.int64).reshape(-1, 2),
    )


@numba.njit(cache=True)
def _aggregate_pass(costs, offsets, lo, directions, forward, p1, p2, max_row, total):
    height, width = lo.shape
    n_dirs = directions.shape[0]
    prev = np.zeros((n_dirs, max_row), dtype=np.int32)
    cur = np.zeros((n_dirs, max_row), dtype=np.int32)
    for i in range(height):
        y = i if forward else height - 1 - i
        row_start = offsets[y * width]
        for j in range(width):
            x = j if forward else width - 1 - j
            pixel = y * width + x
            start = offsets[pixel]
            count = offsets[pixel + 1] - start
            local = start - row_start
            first = lo[y, x]
            for k in range(n_dirs):
                dx = directions[k, 0]
                dy = directions[k, 1]
                qx = x - dx
                qy = y - dy
                if qx < 0 or qx >= width or qy < 0 or qy >= height:
                    for t in range(count):
                        value = np.int32(costs[start + t])
                        cur[k, local + t] = value
                        total[start + t] += value
                    continue
                buf = cur if dy == 0 else prev
                q_pixel = qy * width + qx
                q_local = offsets[q_pixel] - offsets[qy * width]
                q_count = offsets[q_pixel + 1] - offsets[q_pixel]
                q_first = lo[qy, qx]
                q_min = buf[k, q_local]
                for t in range(1, q_count):
                    if buf[k, q_local + t] < q_min:
                        q_min = buf[k, q_local + t]
                for t in range(count):
                    u = first + t - q_first
                    best = q_min + p2
                    if 0 <= u < q_count:
                        best = min(best, buf[k, q_local + u])
                    if 0 <= u - 1 < q_count:
                        best = min(best, buf[k, q_local + u - 1] + p1)
                    if 0 <= u + 1 < q_count:
                        best = min(best, buf[k, q_local + u + 1] + p1)
                    value = np.int32(costs[start + t]) + best - q_min
                    cur[k, local + t] = value
                    total[start + t] += value
        prev, cur = cur, prev


def _run_passes(vol: CostVolume, params: SgmParams, directions) -> np.ndarray:
    total = np.zeros(vol.size, dtype=np.int32)
    max_row = max(vol.max_row_size(), 1)
    for is_forward, subset in zip((True, False), split_passes(directions)):
        if subset.shape[0] == 0:
            continue
        _aggregate_pass(
            vol.costs,
            vol.offsets,
            vol.ranges.lo,
            subset,
            is_forward,
            np.int32(params.p1),
            np.int32(params.p2),
            max_row,
            total,
        )
    return total


def aggregate_direction(
    vol: CostVolume, params: SgmParams, direction: Tuple[int, int]
) -> CostVolume:
    """
    Compute the costs L_r of a single path direction.

    :param vol: The matching cost volume.
    :param params: The penalties.
    :param direction: The (dx, dy) step from the predecessor to the pixel.
    :return: A volume of the same layout holding L_r as 32 bit integers.
    """
    dx, dy = direction
    if (dx, dy) == (0, 0) or max(abs(dx), abs(dy)) != 1:
        raise ValueError(f"Invalid path direction {direction}")
    return vol.with_costs(_run_passes(vol, params, [(dx, dy)]))


def aggregate_paths(vol: CostVolume, params: SgmParams) -> CostVolume:
    """
    Sum the path costs over all directions selected by `params`.

    :param vol: The matching cost volume.
    :param params: The penalties and the path selection.
    :return: The aggregated 16 bit cost volume.
    """
    total = _run_passes(vol, params, params.directions())
    return vol.with_costs(total.astype(np.uint16))
