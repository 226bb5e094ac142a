#!/usr/bin/env python
# -*- coding: UTF-8 -*-
#
"""
The parameters of the per-pixel disparity filters.
"""
import math
from typing import Optional

__all__ = ["RANGE_MODES", "NoiseParams", "FilterConfig"]

RANGE_MODES = ("variance", "stddev")


class NoiseParams:
    """
    The noise variances of the filter in pixels².

    `q` is the process noise added by every prediction, `r` the noise of
    the disparities measured by the matcher.
    """

    def __init__(self, q: float = 0.5, r: float = 1.0):
        if not (math.isfinite(q) and q > 0):
            raise ValueError(f"The process noise q has to be positive, got {q}")
        if not (math.isfinite(r) and r > 0):
            raise ValueError(f"The measurement noise r has to be positive, got {r}")
        self.__q = float(q)
        self.__r = float(r)

    @property
    def q(self) -> float:
        return self.__q

    @property
    def r(self) -> float:
        return self.__r

    def to_dict(self) -> dict:
        return {"q": self.q, "r": self.r}

    def __eq__(self, other) -> bool:
        if isinstance(other, NoiseParams):
            return other.q == self.q and other.r == self.r
        return False

    def __hash__(self) -> int:
        return hash((self.q, self.r))

    def __repr__(self) -> str:
        return f"NoiseParams(q={self.q!r}, r={self.r!r})"


class FilterConfig:
    """
    The configuration of the temporal filter.

    :param noise: The process and measurement noise.
    :param p_init: The variance of pixels without a known disparity. It has
        to cover the whole disparity space. If omitted, d_max² / 4 is used.
    :param disc_thresh: Disparity jumps above this threshold between
        4-neighbors count as discontinuities.
    :param disc_margin: Valid predictions within this many pixels of a
        discontinuity are reset as well.
    :param min_range_halfwidth: The smallest half-width of a search range.
    :param range_mode: "variance" searches d ± p, "stddev" searches
        d ± range_scale * sqrt(p).
    :param range_scale: The scale of the standard deviation in "stddev" mode.
    :param reduce_search: If False, the matcher always searches the full
        disparity space while the filter keeps running.
    """

    def __init__(
        self,
        noise: Optional[NoiseParams] = None,
        p_init: Optional[float] = None,
        disc_thresh: float = 2.0,
        disc_margin: int = 2,
        min_range_halfwidth: int = 2,
        range_mode: str = "variance",
        range_scale: float = 3.0,
        reduce_search: bool = True,
    ):
        if p_init is not None and not p_init > 0:
            raise ValueError(f"The initial variance has to be positive, got {p_init}")
        if disc_thresh < 1:
            raise ValueError(
                f"The discontinuity threshold has to be at least 1, got {disc_thresh}"
            )
        if disc_margin < 0:
            raise ValueError(
                f"The discontinuity margin must not be negative, got {disc_margin}"
            )
        if min_range_halfwidth < 0:
            raise ValueError(
                "The minimal range half-width must not be negative, "
                f"got {min_range_halfwidth}"
            )
        if range_mode not in RANGE_MODES:
            raise ValueError(
                f"Unknown range mode '{range_mode}', "
                f"expected one of {', '.join(RANGE_MODES)}"
            )
        if not range_scale > 0:
            raise ValueError(f"The range scale has to be positive, got {range_scale}")
        self.__noise = noise if noise is not None else NoiseParams()
        self.__p_init = None if p_init is None else float(p_init)
        self.__disc_thresh = float(disc_thresh)
        self.__disc_margin = int(disc_margin)
        self.__min_range_halfwidth = int(min_range_halfwidth)
        self.__range_mode = range_mode
        self.__range_scale = float(range_scale)
        self.__reduce_search = bool(reduce_search)

    @property
    def noise(self) -> NoiseParams:
        return self.__noise

    @property
    def p_init(self) -> Optional[float]:
        """
        The configured initial variance, None if it derives from d_max.
        """
        return self.__p_init

    def initial_variance(self, d_max: int) -> float:
        """
        :return: The variance assigned to pixels without a known disparity.
        """
        if self.__p_init is not None:
            return self.__p_init
        return d_max * d_max / 4.0

    @property
    def disc_thresh(self) -> float:
        return self.__disc_thresh

    @property
    def disc_margin(self) -> int:
        return self.__disc_margin

    @property
    def min_range_halfwidth(self) -> int:
        return self.__min_range_halfwidth

    @property
    def range_mode(self) -> str:
        return self.__range_mode

    @property
    def range_scale(self) -> float:
        return self.__range_scale

    @property
    def reduce_search(self) -> bool:
        return self.__reduce_search

    def to_dict(self) -> dict:
        values = self.noise.to_dict()
        values.update(
            {
                "p_init": self.p_init,
                "disc_thresh": self.disc_thresh,
                "disc_margin": self.disc_margin,
                "min_range_halfwidth": self.min_range_halfwidth,
                "range_mode": self.range_mode,
                "range_scale": self.range_scale,
                "reduce_search": self.reduce_search,
            }
        )
        return values

    def replace(self, **changes) -> "FilterConfig":
        """
        Return a copy with some of the settings changed. `q` and `r` replace
        the noise parameters.
        """
        values = self.to_dict()
        values.update(changes)
        noise = NoiseParams(values.pop("q"), values.pop("r"))
        return FilterConfig(noise=noise, **values)

    def __eq__(self, other) -> bool:
        if isinstance(other, FilterConfig):
            return other.to_dict() == self.to_dict()
        return False

    def __hash__(self) -> int:
        return hash(tuple(self.to_dict().items()))

    def __repr__(self) -> str:
        values = ", ".join(f"{k}={v!r}" for k, v in self.to_dict().items())
        return f"FilterConfig({values})"
