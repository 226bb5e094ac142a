#!/usr/bin/env python
# -*- coding: UTF-8 -*-
#
"""
This module implements the census transform and the Hamming distance
matching cost over per-pixel disparity ranges.
"""
from .census import CENSUS_RADIUS, CensusMap, census_transform, as_gray  # NOQA
from .cost import (  # NOQA
    MAX_COST,
    SearchRangeMap,
    CostVolume,
    hamming_distance,
    matching_cost,
    build_cost_volume,
)
