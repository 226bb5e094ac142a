#!/usr/bin/env python
# -*- coding: UTF-8 -*-
#
"""
TempoSGM computes dense stereo disparity with semi-global matching over a
per-pixel reduced search space. The disparity is kept alive between frames
by per-pixel Kalman filters driven by the camera ego-motion, and moving
objects are detected where prediction and measurement disagree.
"""
