#!/usr/bin/env python
# -*- coding: UTF-8 -*-
#
"""
This module implements the detection of moving objects from the difference
of predicted and measured disparities.
"""
from .integral import integral_image, box_sum, box_sums  # NOQA
from .boxes import DetectionBox, iou_matrix, iou_with  # NOQA
from .config import DetectConfig, DEFAULT_WINDOWS  # NOQA
from .detector import (  # NOQA
    detect_candidate_windows,
    greedy_merge,
    detect_in_difference,
    detect_moving_objects,
)
from .export import (  # NOQA
    format_detections,
    write_detections,
    read_detections,
    draw_boxes,
)
