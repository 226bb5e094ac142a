#!/usr/bin/env python
# -*- coding: UTF-8 -*-
#
"""
This module implements the accuracy and runtime evaluation of the matchers.
"""
from .metrics import (  # NOQA
    ABS_THRESH,
    REL_THRESH,
    outlier_mask,
    outlier_counts,
    outlier_rate,
)
from .benchmark import (  # NOQA
    MODES,
    CSV_COLUMNS,
    BenchmarkConfig,
    FrameReport,
    BenchmarkResult,
    run_config,
    run_benchmark,
    format_table,
    write_csv,
)
