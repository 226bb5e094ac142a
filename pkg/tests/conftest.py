#!/usr/bin/env python
# -*- coding: UTF-8 -*-
#
import numpy as np
import pytest

from temposgm.dataset import MovingObject, SynthConfig, synth_sequence
from temposgm.geometry import StereoCalib


def create_calib(width=64, height=48, focal=100.0, baseline=0.2, d_max=32):
    return StereoCalib(
        focal_px=focal,
        cx=width / 2.0,
        cy=height / 2.0,
        baseline_m=baseline,
        width=width,
        height=height,
        d_max=d_max,
    )


def create_shifted_pair(width=64, height=48, shift=5, seed=0):
    """
    A random texture seen by both cameras of a rig looking at a
    fronto-parallel plane at disparity `shift`: left(x) = right(x - shift).
    """
    rng = np.random.default_rng(seed)
    texture = rng.integers(0, 256, (height, width + shift), dtype=np.uint8)
    left = texture[:, :width].copy()
    right = texture[:, shift:].copy()
    return left, right


def create_translating_square(frames=20):
    """
    A static rig in front of a textured plane at disparity 10 and a 40x40
    square at disparity 16 moving right by 3 px per frame.
    """
    calib = create_calib(width=200, height=150, focal=160.0, baseline=0.5, d_max=32)
    square = MovingObject(
        x=40, y=90, width=40, height=40, disparity_offset=6.0, velocity=(3, 0)
    )
    cfg = SynthConfig(calib, frames=frames, plane_depth=8.0, objects=[square])
    return calib, synth_sequence(cfg)


@pytest.fixture
def calib():
    return create_calib()


@pytest.fixture
def shifted_pair():
    return create_shifted_pair


@pytest.fixture
def calib_factory():
    return create_calib


@pytest.fixture
def translating_square():
    return create_translating_square()
