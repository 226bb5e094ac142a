#!/usr/bin/env python
# -*- coding: UTF-8 -*-
#
"""
The KITTI outlier metric.

A pixel is an outlier if its disparity error exceeds both 3 pixels and 5%
of the ground truth disparity.
"""
from typing import Tuple

import numpy as np

from temposgm.errors import EmptyDataError
from temposgm.geometry import DisparityMap

__all__ = ["ABS_THRESH", "REL_THRESH", "outlier_mask", "outlier_counts", "outlier_rate"]

ABS_THRESH = 3.0
REL_THRESH = 0.05


def outlier_mask(est, gt) -> np.ndarray:
    """
    :return: True where |est - gt| > 3 and |est - gt| / gt > 0.05.
    """
    error = np.abs(np.asarray(est, dtype=np.float64) - gt)
    with np.errstate(divide="ignore", invalid="ignore"):
        relative = error / np.abs(gt)
    return (error > ABS_THRESH) & (relative > REL_THRESH)


def outlier_counts(
    est: DisparityMap, gt: DisparityMap, strict: bool = False
) -> Tuple[int, int]:
    """
    Count the outliers of an estimate.

    :param est: The estimated disparities.
    :param gt: The ground truth disparities.
    :param strict: If True, ground truth pixels without estimate count as outliers.
    :return: The number of outliers and the number of evaluated pixels.
    """
    if est.shape != gt.shape:
        raise ValueError(f"The estimate {est.shape} and ground truth {gt.shape} differ")
    both = est.valid & gt.valid
    outliers = int(
        np.count_nonzero(outlier_mask(est.disparity[both], gt.disparity[both]))
    )
    evaluated = int(np.count_nonzero(both))
    if strict:
        missing = int(np.count_nonzero(gt.valid & ~est.valid))
        outliers += missing
        evaluated += missing
    return outliers, evaluated


def outlier_rate(est: DisparityMap, gt: DisparityMap, strict: bool = False) -> float:
    """
    The percentage of outliers among the evaluated pixels.

    :raises EmptyDataError: If no pixel can be evaluated.
    """
    outliers, evaluated = outlier_counts(est, gt, strict)
    if evaluated == 0:
        raise EmptyDataError("The estimate and the ground truth don't overlap")
    return 100.0 * outliers / evaluated
