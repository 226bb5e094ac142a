#!/usr/bin/env python
# -*- coding: UTF-8 -*-
#
"""
This module implements semi-global matching over per-pixel reduced search
ranges: path-wise cost aggregation, winner-takes-all selection and the
median refinement of exported maps.
"""
from temposgm.geometry import DisparityMap  # NOQA
from .params import SgmParams, NONDIAGONAL, DIAGONAL, ALL_DIRECTIONS  # NOQA
from .pipeline import StageNode, StagePipeline  # NOQA
from .aggregation import aggregate_paths, aggregate_direction  # NOQA
from .selection import winner_takes_all, median_refine  # NOQA
from .matcher import SemiGlobalMatcher, sgm_match  # NOQA
