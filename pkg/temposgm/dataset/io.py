#!/usr/bin/env python
# -*- coding: UTF-8 -*-
#
"""
Image and disparity file formats.

Disparities are stored as 16 bit PNGs holding round(d * 256). A stored 0
marks a pixel without disparity.
"""
from pathlib import Path

import cv2
import numpy as np

from temposgm.errors import DatasetError, DisparityFormatError
from temposgm.geometry import DisparityMap

__all__ = [
    "DISPARITY_SCALE",
    "read_gray",
    "write_image",
    "read_disparity_png",
    "write_disparity_png",
]

DISPARITY_SCALE = 256.0


def read_gray(path) -> np.ndarray:
    """
    Read an image as 8 bit gray scale. Color images are converted with the
    standard luma weights.

    :param path: The image file.
    :return: The 2D uint8 image.
    """
    image = cv2.imread(str(path), cv2.IMREAD_UNCHANGED)
    if image is None:
        raise DatasetError(f"Can't read the image '{path}'")
    if image.ndim == 3:
        code = cv2.COLOR_BGRA2GRAY if image.shape[2] == 4 else cv2.COLOR_BGR2GRAY
        image = cv2.cvtColor(image, code)
    if image.dtype != np.uint8:
        raise DatasetError(f"'{path}' is not an 8 bit image but {image.dtype}")
    return image


def write_image(path, image: np.ndarray) -> None:
    """
    Write an 8 bit gray scale or BGR image, creating missing folders.
    """
    _write(path, np.asarray(image, dtype=np.uint8))


def read_disparity_png(path) -> DisparityMap:
    """
    Read a 16 bit disparity PNG.

    :param path: The PNG file.
    :return: The real valued disparity map. Zero pixels are invalid.
    """
    raw = cv2.imread(str(path), cv2.IMREAD_UNCHANGED)
    if raw is None:
        raise DatasetError(f"Can't read the disparity image '{path}'")
    if raw.ndim != 2 or raw.dtype != np.uint16:
        raise DisparityFormatError(
            f"'{path}' is not a single channel 16 bit PNG "
            f"(got {raw.dtype} with shape {raw.shape})"
        )
    valid = raw > 0
    return DisparityMap(np.where(valid, raw / DISPARITY_SCALE, 0.0), valid)


def write_disparity_png(path, disparity_map: DisparityMap) -> None:
    """
    Write a disparity map as 16 bit PNG.

    Valid disparities are stored as round(d * 256), at least 1 so they stay
    distinguishable from invalid pixels.
    """
    scaled = np.rint(disparity_map.masked(0).astype(np.float64) * DISPARITY_SCALE)
    scaled = np.clip(scaled, 1, np.iinfo(np.uint16).max)
    raw = np.where(disparity_map.valid, scaled, 0).astype(np.uint16)
    _write(path, raw)


def _write(path, image: np.ndarray) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    if not cv2.imwrite(str(path), image):
        raise DatasetError(f"Can't write the image '{path}'")
