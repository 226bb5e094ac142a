#!/usr/bin/env python
# -*- coding: UTF-8 -*-
#
"""
Summed-area tables for constant time box sums.
"""
import numpy as np

__all__ = ["integral_image", "box_sum", "box_sums"]


def integral_image(values) -> np.ndarray:
    """
    Compute the summed-area table of a 2D map.

    The table has one row and one column more than the map. Entry [i, j]
    is the sum of the map over the rows < i and columns < j. Integer maps
    are summed with 64 bit integers, so their box sums are exact.

    :param values: The 2D map.
    :return: The (h + 1) x (w + 1) table.
    """
    values = np.asarray(values)
    if values.ndim != 2:
        raise ValueError(f"Expected a 2D map, got {values.ndim} dimensions")
    dtype = np.int64 if np.issubdtype(values.dtype, np.integer) else np.float64
    if values.dtype == bool:
        dtype = np.int64
    table = np.zeros((values.shape[0] + 1, values.shape[1] + 1), dtype=dtype)
    np.cumsum(values, axis=0, dtype=dtype, out=table[1:, 1:])
    np.cumsum(table[1:, 1:], axis=1, out=table[1:, 1:])
    return table


def box_sum(sat: np.ndarray, box):
    """
    Sum the map inside `box` by inclusion-exclusion.

    :param sat: The summed-area table of the map.
    :param box: An object with the inclusive-exclusive bounds x0, y0, x1, y1.
    :return: The sum of the map over the box.
    """
    height, width = sat.shape[0] - 1, sat.shape[1] - 1
    x0, y0, x1, y1 = int(box.x0), int(box.y0), int(box.x1), int(box.y1)
    if not (0 <= x0 <= x1 <= width and 0 <= y0 <= y1 <= height):
        raise ValueError(
            f"The box ({x0}, {y0}, {x1}, {y1}) exceeds the map of size {width}x{height}"
        )
    return sat[y1, x1] - sat[y0, x1] - sat[y1, x0] + sat[y0, x0]


def box_sums(sat: np.ndarray, x0, y0, width: int, height: int) -> np.ndarray:
    """
    Sum all boxes of one size whose top left corners form the grid of
    `x0` and `y0`.

    :return: An array of shape (len(y0), len(x0)).
    """
    x0 = np.asarray(x0, dtype=np.int64)[np.newaxis, :]
    y0 = np.asarray(y0, dtype=np.int64)[:, np.newaxis]
    x1 = x0 + width
    y1 = y0 + height
    return sat[y1, x1] - sat[y0, x1] - sat[y1, x0] + sat[y0, x0]
