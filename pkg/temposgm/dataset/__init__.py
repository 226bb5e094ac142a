#!/usr/bin/env python
# -*- coding: UTF-8 -*-
#
"""
This module implements the ingestion of stereo sequences in the KITTI raw
layout and the generation of synthetic sequences with exact ground truth.
"""
from .io import (  # NOQA
    DISPARITY_SCALE,
    read_gray,
    write_image,
    read_disparity_png,
    write_disparity_png,
)
from .frame import SequenceFrame, frame_motions  # NOQA
from .kitti import (  # NOQA
    list_frame_files,
    read_oxts_poses,
    load_sequence_calib,
    load_kitti_sequence,
)
from .synth import MovingObject, SynthConfig, synth_sequence  # NOQA
from .writer import frame_name, write_calib_toml, write_sequence  # NOQA
