#!/usr/bin/env python
# -*- coding: UTF-8 -*-
#
"""
This module implements the geometry of a rectified stereo rig moving
through a static scene: calibration, ego-motion, the disparity space
homography and the forward warping of disparity states.
"""
from .calib import (  # NOQA
    StereoCalib,
    RigidMotion,
    relative_motion,
    read_pose_file,
    write_pose_file,
    read_kitti_calib,
)
from .homography import (  # NOQA
    DispHomography,
    disparity_homography,
    triangulate,
    project,
)
from .state import DisparityMap, DisparityState  # NOQA
from .warp import WarpResult, forward_warp, warp_state  # NOQA
