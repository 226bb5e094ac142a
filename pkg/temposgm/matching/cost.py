#!/usr/bin/env python
# -*- coding: UTF-8 -*-
#
"""
This module implements the Hamming distance matching cost and the ragged
cost volume holding it.

Every pixel only stores the costs of the disparities inside its own search
range [lo, hi]. The costs of all pixels are concatenated in raster order
into one flat array; `offsets[i]` is the start of pixel i (y * width + x)
and `offsets[i + 1] - offsets[i]` its number of disparities.
"""
from dataclasses import dataclass

import numba
import numpy as np

from .census import CENSUS_BITS, CensusMap

__all__ = [
    "MAX_COST",
    "SearchRangeMap",
    "CostVolume",
    "hamming_distance",
    "matching_cost",
    "build_cost_volume",
]

MAX_COST = CENSUS_BITS


@dataclass
class SearchRangeMap:
    """
    The inclusive disparity interval [lo, hi] searched at every pixel.
    """

    lo: np.ndarray
    hi: np.ndarray
    d_max: int

    def __post_init__(self):
        self.lo = np.ascontiguousarray(self.lo, dtype=np.int32)
        self.hi = np.ascontiguousarray(self.hi, dtype=np.int32)
        if self.lo.ndim != 2 or self.lo.shape != self.hi.shape:
            raise ValueError("lo and hi have to be 2D images of the same shape")
        if np.any(self.lo < 0) or np.any(self.hi >= self.d_max):
            raise ValueError(f"Search ranges have to lie inside [0, {self.d_max - 1}]")
        if np.any(self.lo > self.hi):
            raise ValueError("Search ranges must not be empty")

    @classmethod
    def full(cls, height: int, width: int, d_max: int) -> "SearchRangeMap":
        """
        The whole disparity space at every pixel.
        """
        return cls(
            np.zeros((height, width), np.int32),
            np.full((height, width), d_max - 1, np.int32),
            d_max,
        )

    @classmethod
    def constant(
        cls, height: int, width: int, lo: int, hi: int, d_max: int
    ) -> "SearchRangeMap":
        return cls(
            np.full((height, width), lo, np.int32),
            np.full((height, width), hi, np.int32),
            d_max,
        )

    @property
    def shape(self) -> tuple:
        return self.lo.shape

    def lengths(self) -> np.ndarray:
        """
        :return: The number of disparities searched at every pixel.
        """
        return self.hi - self.lo + 1

    def offsets(self) -> np.ndarray:
        """
        :return: The start of every pixel in a flat ragged array, plus the total size.
        """
        lengths = self.lengths().reshape(-1)
        offsets = np.zeros(lengths.size + 1, dtype=np.int64)
        np.cumsum(lengths, out=offsets[1:])
        return offsets

    def is_full(self) -> bool:
        return bool(np.all(self.lo == 0) and np.all(self.hi == self.d_max - 1))


@dataclass
class CostVolume:
    """
    Per-pixel cost arrays over the search ranges.

    Matching costs fit 8 bits, aggregated costs 16 bits. Pixels whose left
    census signature is undefined are flagged in `defined`.
    """

    ranges: SearchRangeMap
    offsets: np.ndarray
    costs: np.ndarray
    defined: np.ndarray

    @property
    def shape(self) -> tuple:
        return self.ranges.shape

    @property
    def size(self) -> int:
        return int(self.costs.size)

    def at(self, x: int, y: int) -> np.ndarray:
        """
        :return: The costs of pixel (x, y) over its range [lo, hi].
        """
        index = y * self.shape[1] + x
        return self.costs[self.offsets[index] : self.offsets[index + 1]]

    def with_costs(self, costs: np.ndarray) -> "CostVolume":
        """
        Return a volume of the same layout holding other costs.
        """
        if costs.shape != self.costs.shape:
            raise ValueError("The costs don't match the layout of this volume")
        return CostVolume(self.ranges, self.offsets, costs, self.defined)

    def max_row_size(self) -> int:
        """
        :return: The largest number of entries held by a single image row.
        """
        width = self.shape[1]
        row_starts = self.offsets[::width]
        return int(np.max(np.diff(row_starts))) if row_starts.size > 1 else 0


@numba.njit(inline="always")
def _popcount(value):
    value = value - ((value >> 1) & 0x55555555)
    value = (value & 0x33333333) + ((value >> 2) & 0x33333333)
    value = (value + (value >> 4)) & 0x0F0F0F0F
    return ((value * 0x01010101) & 0xFFFFFFFF) >> 24


@numba.njit(cache=True)
def hamming_distance(a, b):
    """
    The number of differing bits of two census signatures.
    """
    return _popcount(np.int64(a) ^ np.int64(b))


def matching_cost(cl: CensusMap, cr: CensusMap, x: int, y: int, d: int) -> int:
    """
    The cost of matching the left pixel (x, y) with the right pixel (x - d, y).

    Impossible matches (x - d < 0) and undefined signatures cost the maximum.

    :return: The Hamming distance of the signatures, in [0, 24].
    """
    xr = x - d
    if xr < 0 or not cl.defined[y, x] or not cr.defined[y, xr]:
        return MAX_COST
    return int(hamming_distance(cl.sig[y, x], cr.sig[y, xr]))


@numba.njit(parallel=True, cache=True)
def _cost_kernel(sig_l, def_l, sig_r, def_r, lo, hi, offsets, out):
    height, width = sig_l.shape
    for y in numba.prange(height):
        for x in range(width):
            base = offsets[y * width + x]
            first = lo[y, x]
            for d in range(first, hi[y, x] + 1):
                xr = x - d
                if xr < 0 or not def_l[y, x] or not def_r[y, xr]:
                    out[base + d - first] = 24
                else:
                    out[base + d - first] = _popcount(
                        np.int64(sig_l[y, x]) ^ np.int64(sig_r[y, xr])
                    )


def build_cost_volume(
    cl: CensusMap, cr: CensusMap, ranges: SearchRangeMap
) -> CostVolume:
    """
    Compute the matching cost of every pixel for every disparity of its range.

    :param cl: The census of the left image.
    :param cr: The census of the right image.
    :param ranges: The per-pixel search ranges.
    :return: The 8 bit cost volume.
    """
    if cl.shape != cr.shape or cl.shape != ranges.shape:
        raise ValueError(
            f"Size mismatch: left {cl.shape}, right {cr.shape}, ranges {ranges.shape}"
        )
    offsets = ranges.offsets()
    costs = np.empty(int(offsets[-1]), dtype=np.uint8)
    _cost_kernel(
        cl.sig, cl.defined, cr.sig, cr.defined, ranges.lo, ranges.hi, offsets, costs
    )
    return CostVolume(ranges=ranges, offsets=offsets, costs=costs, defined=cl.defined)
