#!/usr/bin/env python
# -*- coding: UTF-8 -*-
#
"""
This module implements the estimation of the process and measurement
noise of the temporal filter from sequences with ground truth.
"""
from .histogram import ErrorHistogram, NoiseModel  # NOQA
from .noise import (  # NOQA
    GATE_PX,
    Q_FLOOR,
    process_errors,
    has_correspondence,
    measurement_errors,
    gated_variance,
    estimate_process_noise,
    estimate_measurement_noise,
    accumulate_error_map,
    normalize_error_map,
    CalibrationReport,
)
