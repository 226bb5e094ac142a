#!/usr/bin/env python
# -*- coding: UTF-8 -*-
#
"""
This module implements the 5x5 census transform.

Each pixel is described by 24 bits, one per non-center pixel of its 5x5
window. The window is visited in raster order (top row first, left to
right) and every visited neighbor shifts the signature one bit to the
left, so the top-left neighbor ends up in bit 23 and the bottom-right
neighbor in bit 0. A bit is set if the neighbor is strictly darker than the
center.

The two pixel wide frame of the image has no complete window. Its
signatures are 0 and flagged as undefined.
"""
from dataclasses import dataclass

import numba
import numpy as np

__all__ = ["CENSUS_RADIUS", "CENSUS_BITS", "CensusMap", "census_transform", "as_gray"]

CENSUS_RADIUS = 2
CENSUS_BITS = (2 * CENSUS_RADIUS + 1) ** 2 - 1


@dataclass
class CensusMap:
    """
    The census signatures of an image and the mask of defined signatures.
    """

    sig: np.ndarray
    defined: np.ndarray

    @property
    def shape(self) -> tuple:
        return self.sig.shape


def as_gray(image) -> np.ndarray:
    """
    Check that `image` is an 8 bit gray scale image and return it as array.
    """
    image = np.asarray(image)
    if image.ndim != 2:
        raise ValueError(f"Expected a 2D gray scale image, got shape {image.shape}")
    if image.dtype != np.uint8:
        raise ValueError(f"Expected an 8 bit image, got {image.dtype}")
    return np.ascontiguousarray(image)


@numba.njit(parallel=True, cache=True)
def _census_kernel(image, sig):
    height, width = image.shape
    for y in numba.prange(2, height - 2):
        for x in range(2, width - 2):
            center = image[y, x]
            value = 0
            for dy in range(-2, 3):
                for dx in range(-2, 3):
                    if dy == 0 and dx == 0:
                        continue
                    value <<= 1
                    if image[y + dy, x + dx] < center:
                        value |= 1
            sig[y, x] = value


def census_transform(image) -> CensusMap:
    """
    Compute the census signatures of a gray scale image.

    :param image: The 8 bit image, at least 5x5 pixels.
    :return: The signature of every pixel.
    """
    image = as_gray(image)
    height, width = image.shape
    size = 2 * CENSUS_RADIUS + 1
    if height < size or width < size:
        raise ValueError(
            f"The census transform needs at least {size}x{size} pixels, "
            f"got {width}x{height}"
        )
    sig = np.zeros((height, width), dtype=np.uint32)
    _census_kernel(image, sig)
    defined = np.zeros((height, width), dtype=bool)
    defined[CENSUS_RADIUS:-CENSUS_RADIUS, CENSUS_RADIUS:-CENSUS_RADIUS] = True
    return CensusMap(sig=sig, defined=defined)
