#!/usr/bin/env python
# -*- coding: UTF-8 -*-
#
"""
The semi-global matcher assembled from its stages:

    census -> cost -> aggregate -> wta

The median filter is not part of the matcher. It is applied to exported
maps only.
"""
from dataclasses import dataclass
from typing import Any, Dict, Optional

import numpy as np

from temposgm.geometry import DisparityMap
from temposgm.matching import (
    CensusMap,
    CostVolume,
    SearchRangeMap,
    as_gray,
    build_cost_volume,
    census_transform,
)
from .aggregation import aggregate_paths
from .params import SgmParams
from .pipeline import StageNode, StagePipeline
from .selection import winner_takes_all

__all__ = [
    "StereoInput",
    "CensusPair",
    "CensusNode",
    "CostNode",
    "AggregationNode",
    "SelectionNode",
    "SemiGlobalMatcher",
    "sgm_match",
]


@dataclass
class StereoInput:
    left: np.ndarray
    right: np.ndarray
    ranges: SearchRangeMap


@dataclass
class CensusPair:
    left: CensusMap
    right: CensusMap
    ranges: SearchRangeMap


class CensusNode(StageNode):
    name = "census"
    input_type = "StereoInput"
    output_type = "CensusPair"

    def parameters(self) -> Dict[str, Any]:
        return {"window": "5x5"}

    def execute(self, input_data: StereoInput, **kwargs: Any) -> CensusPair:
        return CensusPair(
            census_transform(input_data.left),
            census_transform(input_data.right),
            input_data.ranges,
        )


class CostNode(StageNode):
    name = "cost"
    input_type = "CensusPair"
    output_type = "CostVolume"

    def parameters(self) -> Dict[str, Any]:
        return {"metric": "hamming"}

    def execute(self, input_data: CensusPair, **kwargs: Any) -> CostVolume:
        return build_cost_volume(input_data.left, input_data.right, input_data.ranges)


class AggregationNode(StageNode):
    name = "aggregate"
    input_type = "CostVolume"
    output_type = "AggregatedVolume"

    def __init__(self, params: SgmParams):
        self.__params = params

    def parameters(self) -> Dict[str, Any]:
        return self.__params.to_dict()

    def execute(self, input_data: CostVolume, **kwargs: Any) -> CostVolume:
        return aggregate_paths(input_data, self.__params)


class SelectionNode(StageNode):
    name = "wta"
    input_type = "AggregatedVolume"
    output_type = "DisparityMap"

    def parameters(self) -> Dict[str, Any]:
        return {"tie_break": "smallest disparity"}

    def execute(self, input_data: CostVolume, **kwargs: Any) -> DisparityMap:
        return winner_takes_all(input_data)


class SemiGlobalMatcher:
    """
    Computes disparity maps of rectified stereo pairs over per-pixel search ranges.

    The stage durations of the last call are available in :attr:`timings`.
    """

    def __init__(self, params: Optional[SgmParams] = None):
        self.__params = params if params is not None else SgmParams()
        self.__pipeline = StagePipeline(
            CensusNode(), CostNode(), AggregationNode(self.__params), SelectionNode()
        )

    @property
    def params(self) -> SgmParams:
        return self.__params

    @property
    def pipeline(self) -> StagePipeline:
        return self.__pipeline

    @property
    def timings(self) -> Dict[str, float]:
        return self.__pipeline.timings

    def match(
        self, left, right, ranges: Optional[SearchRangeMap] = None
    ) -> DisparityMap:
        """
        Match a rectified stereo pair.

        :param left: The left 8 bit gray scale image.
        :param right: The right 8 bit gray scale image.
        :param ranges: The per-pixel search ranges, the full space if omitted.
        :return: The integer disparity map of the left image.
        """
        left = as_gray(left)
        right = as_gray(right)
        if left.shape != right.shape:
            raise ValueError(
                f"The images of a stereo pair have to be equally sized, "
                f"got {left.shape} and {right.shape}"
            )
        if ranges is None:
            ranges = SearchRangeMap.full(*left.shape, self.__params.d_max)
        elif ranges.d_max != self.__params.d_max:
            raise ValueError(
                f"The ranges cover {ranges.d_max} levels but the matcher "
                f"{self.__params.d_max}"
            )
        return self.__pipeline.execute(StereoInput(left, right, ranges))


def sgm_match(
    left, right, ranges: Optional[SearchRangeMap], params: SgmParams
) -> DisparityMap:
    """
    Match a rectified stereo pair with semi-global matching.

    :param left: The left 8 bit gray scale image.
    :param right: The right 8 bit gray scale image.
    :param ranges: The per-pixel search ranges, the full space if None.
    :param params: The matcher parameters.
    :return: The winner-takes-all disparity map, without median filtering.
    """
    return SemiGlobalMatcher(params).match(left, right, ranges)
