#!/usr/bin/env python
# -*- coding: UTF-8 -*-
#
"""
Synthetic rectified stereo sequences with exact ground truth.

The scene is a textured plane at constant depth in front of the first
camera, seen by a stereo rig moving along a trajectory. Moving objects are
textured rectangles in image space that float in front of the plane at a
constant disparity offset.
"""
import logging
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

import numpy as np

from temposgm.detection import DetectionBox
from temposgm.errors import ConfigError
from temposgm.geometry import DisparityMap, RigidMotion, StereoCalib
from .frame import SequenceFrame

__all__ = ["MovingObject", "SynthConfig", "synth_sequence"]

_logger = logging.getLogger(__name__)

# keeps texel lookups of integer coordinates off the cell borders
_TEXEL_EPS = 1e-7


@dataclass(frozen=True)
class MovingObject:
    """
    A textured rectangle moving across the image.

    The rectangle covers columns x..x+width and rows y..y+height in the first
    frame and moves by `velocity` pixels per frame. Its disparity exceeds
    the disparity of the plane behind its center by `disparity_offset`.
    """

    x: int
    y: int
    width: int
    height: int
    disparity_offset: float
    velocity: Tuple[int, int] = (0, 0)
    seed: int = 1

    def __post_init__(self):
        if self.width < 1 or self.height < 1:
            raise ConfigError(f"Invalid object size {self.width}x{self.height}")

    def position(self, frame: int) -> Tuple[int, int]:
        return (
            self.x + self.velocity[0] * frame,
            self.y + self.velocity[1] * frame,
        )

    def footprint(self, frame: int, width: int, height: int) -> Optional[DetectionBox]:
        """
        :return: The visible part of the object in `frame`, None if it left the image.
        """
        x, y = self.position(frame)
        x0, y0 = max(0, x), max(0, y)
        x1, y1 = min(width, x + self.width), min(height, y + self.height)
        if x0 >= x1 or y0 >= y1:
            return None
        return DetectionBox(x0, y0, x1, y1)


class SynthConfig:
    """
    The description of a synthetic sequence.

    :param calib: The stereo calibration, which also defines the image size.
    :param frames: The number of frames.
    :param plane_depth: The distance of the textured plane from the first
        camera in meters.
    :param seed: The seed of the textures and the image noise.
    :param trajectory: The ego-motion into each frame from its predecessor,
        `frames - 1` motions. A static camera if omitted.
    :param objects: The moving objects.
    :param noise_sigma: The standard deviation of the additive intensity noise.
    :param texture_size: The period of the plane texture in texels.
    """

    def __init__(
        self,
        calib: StereoCalib,
        frames: int = 2,
        plane_depth: float = 10.0,
        seed: int = 0,
        trajectory: Optional[Sequence[RigidMotion]] = None,
        objects: Sequence[MovingObject] = (),
        noise_sigma: float = 0.0,
        texture_size: int = 512,
    ):
        if frames < 1:
            raise ConfigError(f"At least one frame is required, got {frames}")
        if not plane_depth > 0:
            raise ConfigError(
                f"The plane has to lie in front of the camera, got {plane_depth}"
            )
        if trajectory is None:
            trajectory = [RigidMotion.identity()] * (frames - 1)
        trajectory = list(trajectory)
        if len(trajectory) != frames - 1:
            raise ConfigError(
                f"{frames} frames need {frames - 1} motions, got {len(trajectory)}"
            )
        if noise_sigma < 0:
            raise ConfigError(f"The noise must not be negative, got {noise_sigma}")
        if texture_size < 2:
            raise ConfigError(
                f"The texture needs at least 2 texels, got {texture_size}"
            )
        self.__calib = calib
        self.__frames = int(frames)
        self.__plane_depth = float(plane_depth)
        self.__seed = int(seed)
        self.__trajectory = tuple(trajectory)
        self.__objects = tuple(objects)
        self.__noise_sigma = float(noise_sigma)
        self.__texture_size = int(texture_size)

    @property
    def calib(self) -> StereoCalib:
        return self.__calib

    @property
    def frames(self) -> int:
        return self.__frames

    @property
    def plane_depth(self) -> float:
        return self.__plane_depth

    @property
    def plane_disparity(self) -> float:
        """
        The disparity of the plane in the first frame.
        """
        return self.__calib.focal_px * self.__calib.baseline_m / self.__plane_depth

    @property
    def seed(self) -> int:
        return self.__seed

    @property
    def trajectory(self) -> Tuple[RigidMotion, ...]:
        return self.__trajectory

    @property
    def objects(self) -> Tuple[MovingObject, ...]:
        return self.__objects

    @property
    def noise_sigma(self) -> float:
        return self.__noise_sigma

    @property
    def texture_size(self) -> int:
        return self.__texture_size

    def poses(self) -> List[np.ndarray]:
        """
        :return: The 4x4 camera-to-world pose of every frame, the world
            being the frame of the first camera.
        """
        poses = [np.eye(4)]
        for motion in self.__trajectory:
            poses.append(poses[-1] @ motion.matrix())
        return poses


def _plane_view(pose: np.ndarray, cfg: SynthConfig, offset: float):
    """
    Intersect the viewing rays of a camera with the plane.

    :param offset: The displacement of the camera center along its x axis.
    :return: The texture column and row of every pixel, the depth of every
        pixel and the mask of the pixels seeing the plane.
    """
    calib = cfg.calib
    f = calib.focal_px
    us, vs = np.meshgrid(
        np.arange(calib.width, dtype=np.float64),
        np.arange(calib.height, dtype=np.float64),
    )
    rays = np.stack([(us - calib.cx) / f, (vs - calib.cy) / f, np.ones_like(us)], -1)
    rotation = pose[:3, :3]
    center = pose[:3, 3] + rotation @ np.array([offset, 0.0, 0.0])
    world_rays = rays @ rotation.T
    with np.errstate(divide="ignore", invalid="ignore"):
        depth = (cfg.plane_depth - center[2]) / world_rays[..., 2]
    valid = np.isfinite(depth) & (depth > 0) & (world_rays[..., 2] > 0)
    depth = np.where(valid, depth, 1.0)
    scale = f / cfg.plane_depth
    points_x = center[0] + depth * world_rays[..., 0]
    points_y = center[1] + depth * world_rays[..., 1]
    columns = np.floor(points_x * scale + calib.cx + _TEXEL_EPS)
    rows = np.floor(points_y * scale + calib.cy + _TEXEL_EPS)
    return columns, rows, depth, valid


def _sample(texture: np.ndarray, columns, rows, valid) -> np.ndarray:
    size = texture.shape[0]
    rows = np.mod(np.where(valid, rows, 0), size).astype(np.int64)
    columns = np.mod(np.where(valid, columns, 0), size).astype(np.int64)
    return np.where(valid, texture[rows, columns], 0).astype(np.float64)


def _add_noise(image: np.ndarray, sigma: float, rng: np.random.Generator) -> np.ndarray:
    if sigma > 0:
        image = image + rng.normal(0.0, sigma, image.shape)
    return np.clip(np.rint(image), 0, 255).astype(np.uint8)


def _render_frame(index: int, pose: np.ndarray, cfg: SynthConfig, textures):
    calib = cfg.calib
    fb = calib.focal_px * calib.baseline_m
    plane_texture, object_textures = textures

    columns, rows, depth, valid = _plane_view(pose, cfg, 0.0)
    left = _sample(plane_texture, columns, rows, valid)
    disparity = np.where(valid, fb / depth, 0.0)
    columns, rows, _, valid_right = _plane_view(pose, cfg, calib.baseline_m)
    right = _sample(plane_texture, columns, rows, valid_right)

    xs = np.arange(calib.width)
    for obj, texture in zip(cfg.objects, object_textures):
        x, y = obj.position(index)
        footprint = obj.footprint(index, calib.width, calib.height)
        if footprint is None:
            continue
        cx = int(np.clip(x + obj.width // 2, 0, calib.width - 1))
        cy = int(np.clip(y + obj.height // 2, 0, calib.height - 1))
        if not valid[cy, cx]:
            raise ConfigError(
                f"Frame {index}: the plane behind an object is not visible"
            )
        d_obj = disparity[cy, cx] + obj.disparity_offset
        if not 0 < d_obj < calib.d_max:
            raise ConfigError(
                f"Frame {index}: the object disparity {d_obj:.2f} leaves (0, {calib.d_max})"
            )
        rows_slice = slice(footprint.y0, footprint.y1)
        tex_rows = np.arange(footprint.y0, footprint.y1) - y
        left_cols = np.arange(footprint.x0, footprint.x1)
        left[rows_slice, footprint.x0 : footprint.x1] = texture[
            np.ix_(tex_rows, left_cols - x)
        ]
        disparity[rows_slice, footprint.x0 : footprint.x1] = d_obj
        valid[rows_slice, footprint.x0 : footprint.x1] = True
        tex_cols = np.floor(xs + d_obj - x + _TEXEL_EPS).astype(np.int64)
        inside = (tex_cols >= 0) & (tex_cols < obj.width)
        if inside.any():
            right[rows_slice, :] = np.where(
                inside[np.newaxis, :],
                texture[tex_rows][:, np.clip(tex_cols, 0, obj.width - 1)],
                right[rows_slice, :],
            )

    if np.any(valid & ((disparity <= 0) | (disparity >= calib.d_max))):
        raise ConfigError(
            f"Frame {index}: the plane disparities leave (0, {calib.d_max})"
        )
    rng = np.random.default_rng([cfg.seed, index])
    left = _add_noise(left, cfg.noise_sigma, rng)
    right = _add_noise(right, cfg.noise_sigma, rng)
    return left, right, DisparityMap(disparity, valid)


def _moved_regions(cfg: SynthConfig, index: int) -> List[DetectionBox]:
    if index == 0:
        return []
    width, height = cfg.calib.width, cfg.calib.height
    boxes = []
    for obj in cfg.objects:
        if obj.position(index) == obj.position(index - 1):
            continue
        parts = [
            box
            for box in (
                obj.footprint(index - 1, width, height),
                obj.footprint(index, width, height),
            )
            if box is not None
        ]
        if parts:
            boxes.append(DetectionBox.enclosing(parts))
    return boxes


def synth_sequence(cfg: SynthConfig) -> List[SequenceFrame]:
    """
    Render a synthetic sequence.

    The right image of every frame is the left view resampled by the ground
    truth disparity. The ground truth boxes of a frame enclose the old and
    new footprint of every object that moved into it.

    :param cfg: The sequence description.
    :return: The frames with poses, ground truth disparities and boxes.
    """
    rng = np.random.default_rng(cfg.seed)
    plane_texture = rng.integers(
        0, 256, (cfg.texture_size, cfg.texture_size), dtype=np.uint8
    )
    object_textures = [
        np.random.default_rng([cfg.seed, obj.seed, i])
        .integers(0, 256, (obj.height, obj.width), dtype=np.uint8)
        .astype(np.float64)
        for i, obj in enumerate(cfg.objects)
    ]
    frames = []
    for index, pose in enumerate(cfg.poses()):
        left, right, gt = _render_frame(
            index, pose, cfg, (plane_texture, object_textures)
        )
        frames.append(
            SequenceFrame(
                index=index,
                left=left,
                right=right,
                pose=pose[:3, :4],
                gt_disp=gt,
                gt_boxes=_moved_regions(cfg, index),
            )
        )
    _logger.debug("Rendered %d synthetic frames", len(frames))
    return frames
