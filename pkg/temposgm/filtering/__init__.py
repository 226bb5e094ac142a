#!/usr/bin/env python
# -*- coding: UTF-8 -*-
#
"""
This module implements the per-pixel Kalman filtering of disparities over
an image sequence and the temporal matcher built on it.
"""
from .config import NoiseParams, FilterConfig, RANGE_MODES  # NOQA
from .kalman import (  # NOQA
    warp_prior,
    predict,
    screen_prediction,
    reject_discontinuities,
    fill_zoom_holes,
    derive_search_ranges,
    correct,
    difference_map,
)
from .tracker import StepResult, TemporalMatcher, step  # NOQA
