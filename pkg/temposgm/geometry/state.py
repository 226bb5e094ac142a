#!/usr/bin/env python
# -*- coding: UTF-8 -*-
#
"""
The per-pixel images passed between the matcher and the temporal filter.
"""
from dataclasses import dataclass

import numpy as np

__all__ = ["DisparityMap", "DisparityState"]


@dataclass
class DisparityMap:
    """
    A disparity image together with its validity mask.

    The matcher produces integer disparity levels. Ground truth maps read
    from disk carry real valued disparities.
    """

    disparity: np.ndarray
    valid: np.ndarray

    def __post_init__(self):
        self.disparity = np.asarray(self.disparity)
        self.valid = np.asarray(self.valid, dtype=bool)
        if self.disparity.ndim != 2 or self.disparity.shape != self.valid.shape:
            raise ValueError(
                "Disparity and validity have to be 2D images of the same shape, got "
                f"{self.disparity.shape} and {self.valid.shape}"
            )

    @property
    def shape(self) -> tuple:
        return self.disparity.shape

    @classmethod
    def invalid(cls, height: int, width: int, dtype=np.int32) -> "DisparityMap":
        return cls(
            np.zeros((height, width), dtype=dtype), np.zeros((height, width), bool)
        )

    def masked(self, fill=0) -> np.ndarray:
        """
        :return: The disparities with `fill` written into invalid pixels.
        """
        return np.where(self.valid, self.disparity, fill)

    def density(self) -> float:
        """
        :return: The fraction of valid pixels.
        """
        return float(np.count_nonzero(self.valid)) / self.valid.size


@dataclass
class DisparityState:
    """
    The state image of the per-pixel Kalman filters.

    `d` holds the disparity mean and `p` its variance. Entries of invalid
    pixels are meaningless and must not be read.
    """

    d: np.ndarray
    p: np.ndarray
    valid: np.ndarray

    def __post_init__(self):
        self.d = np.asarray(self.d, dtype=np.float64)
        self.p = np.asarray(self.p, dtype=np.float64)
        self.valid = np.asarray(self.valid, dtype=bool)
        if not (self.d.ndim == 2 and self.d.shape == self.p.shape == self.valid.shape):
            raise ValueError(
                "Mean, variance and validity have to be 2D images of the same shape"
            )

    @property
    def shape(self) -> tuple:
        return self.d.shape

    @classmethod
    def empty(cls, height: int, width: int, p_init: float = 1.0) -> "DisparityState":
        """
        Create a state without any known disparity, as used for the first frame.
        """
        return cls(
            np.zeros((height, width)),
            np.full((height, width), float(p_init)),
            np.zeros((height, width), bool),
        )

    @classmethod
    def from_map(cls, disparity_map: DisparityMap, variance: float) -> "DisparityState":
        """
        Create a state from a disparity map with a uniform variance.
        """
        return cls(
            disparity_map.masked().astype(np.float64),
            np.full(disparity_map.shape, float(variance)),
            disparity_map.valid.copy(),
        )

    def copy(self) -> "DisparityState":
        return DisparityState(self.d.copy(), self.p.copy(), self.valid.copy())

    def invalidate(self, mask: np.ndarray, p_init: float) -> "DisparityState":
        """
        Return a copy in which the pixels in `mask` are invalid and carry `p_init`.
        """
        result = self.copy()
        result.valid &= ~mask
        result.d[mask] = 0.0
        result.p[mask] = p_init
        return result

    def to_map(self) -> DisparityMap:
        """
        Render the mean as integer disparity levels.
        """
        levels = np.rint(np.where(self.valid, self.d, 0.0)).astype(np.int32)
        return DisparityMap(levels, self.valid.copy())

    def check(self, d_max: int) -> None:
        """
        Raise a :class:`ValueError` if a valid pixel violates 0 <= d < d_max or p > 0.
        """
        d = self.d[self.valid]
        p = self.p[self.valid]
        if np.any(d < 0) or np.any(d >= d_max):
            raise ValueError(f"Valid disparities have to lie in [0, {d_max})")
        if np.any(p <= 0):
            raise ValueError("Valid variances have to be positive")
