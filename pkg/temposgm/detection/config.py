#!/usr/bin/env python
# -*- coding: UTF-8 -*-
#
"""
The parameters of the moving object detection.
"""
import math
from typing import Iterable, Optional, Tuple

__all__ = ["DEFAULT_WINDOWS", "MIN_WINDOW", "MAX_WINDOW", "DetectConfig"]

# (width, height) of the sliding windows
DEFAULT_WINDOWS = ((20, 20), (30, 30), (40, 40), (50, 50), (50, 75))
MIN_WINDOW = (20, 20)
MAX_WINDOW = (50, 75)


class DetectConfig:
    """
    The configuration of the sliding window detector.

    :param windows: The (width, height) of the sliding windows.
    :param score_thresh: Windows whose mean disparity difference exceeds
        this threshold are candidates.
    :param merge_stop_iou: Merging stops once no pair of boxes overlaps by
        at least this IoU.
    :param min_box_area: Merged boxes smaller than this area are dropped.
    :param region_top: The fraction of the image height above which no
        windows are placed. Defaults to the top third.
    :param stride_divisor: Windows advance by their size divided by this.
    """

    def __init__(
        self,
        windows: Optional[Iterable[Tuple[int, int]]] = None,
        score_thresh: float = 2.0,
        merge_stop_iou: float = 0.2,
        min_box_area: int = 400,
        region_top: float = 1.0 / 3.0,
        stride_divisor: int = 4,
    ):
        windows = DEFAULT_WINDOWS if windows is None else windows
        windows = tuple((int(w), int(h)) for w, h in windows)
        if not windows:
            raise ValueError("At least one window size is required")
        for w, h in windows:
            fits_width = MIN_WINDOW[0] <= w <= MAX_WINDOW[0]
            if not (fits_width and MIN_WINDOW[1] <= h <= MAX_WINDOW[1]):
                raise ValueError(
                    f"Window {w}x{h} lies outside of "
                    f"{MIN_WINDOW[0]}x{MIN_WINDOW[1]} to {MAX_WINDOW[0]}x{MAX_WINDOW[1]}"
                )
        if not score_thresh > 0:
            raise ValueError(
                f"The score threshold has to be positive, got {score_thresh}"
            )
        if not 0 < merge_stop_iou < 1:
            raise ValueError(
                f"The merge stop IoU has to lie in (0, 1), got {merge_stop_iou}"
            )
        if min_box_area < 0:
            raise ValueError(
                f"The minimal box area must not be negative, got {min_box_area}"
            )
        if not 0 <= region_top < 1:
            raise ValueError(f"The region top has to lie in [0, 1), got {region_top}")
        if stride_divisor < 1:
            raise ValueError(
                f"The stride divisor has to be at least 1, got {stride_divisor}"
            )
        self.__windows = windows
        self.__score_thresh = float(score_thresh)
        self.__merge_stop_iou = float(merge_stop_iou)
        self.__min_box_area = int(min_box_area)
        self.__region_top = float(region_top)
        self.__stride_divisor = int(stride_divisor)

    @property
    def windows(self) -> Tuple[Tuple[int, int], ...]:
        return self.__windows

    @property
    def score_thresh(self) -> float:
        return self.__score_thresh

    @property
    def merge_stop_iou(self) -> float:
        return self.__merge_stop_iou

    @property
    def min_box_area(self) -> int:
        return self.__min_box_area

    @property
    def region_top(self) -> float:
        return self.__region_top

    @property
    def stride_divisor(self) -> int:
        return self.__stride_divisor

    def first_row(self, height: int) -> int:
        """
        :return: The topmost row a window may cover in an image of `height` rows.
        """
        return int(math.floor(height * self.__region_top + 1e-9))

    def stride(self, size: int) -> int:
        return max(1, size // self.__stride_divisor)

    def to_dict(self) -> dict:
        return {
            "windows": [list(w) for w in self.windows],
            "score_thresh": self.score_thresh,
            "merge_stop_iou": self.merge_stop_iou,
            "min_box_area": self.min_box_area,
            "region_top": self.region_top,
            "stride_divisor": self.stride_divisor,
        }

    def __eq__(self, other) -> bool:
        if isinstance(other, DetectConfig):
            return other.to_dict() == self.to_dict()
        return False

    def __hash__(self) -> int:
        return hash((self.windows, self.score_thresh, self.merge_stop_iou))

    def __repr__(self) -> str:
        values = ", ".join(f"{k}={v!r}" for k, v in self.to_dict().items())
        return f"DetectConfig({values})"
