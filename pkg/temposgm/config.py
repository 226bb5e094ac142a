#!/usr/bin/env python
# -*- coding: UTF-8 -*-
#
"""
The run configuration of the command line tools.

Settings are taken from three layers. Command line flags override the keys
of a TOML configuration file, which override the built-in defaults. The
configuration file holds flat keys only:

.. code:: toml

    q = 0.5
    r = 1.0
    paths = 8
    path_set = "nondiagonal"
    d_max = 128
    focal_px = 721.5
"""
import sys
from pathlib import Path
from typing import Any, Dict, Mapping, Optional

if sys.version_info >= (3, 11):
    import tomllib
else:  # pragma: no cover
    import tomli as tomllib

from temposgm.detection import DetectConfig
from temposgm.errors import ConfigError
from temposgm.filtering import FilterConfig, NoiseParams
from temposgm.geometry import StereoCalib
from temposgm.sgm import SgmParams

__all__ = ["DEFAULTS", "PATH_SET_ALIASES", "read_toml", "RunConfig"]

DEFAULTS: Dict[str, Any] = {
    # temporal filter
    "q": 0.5,
    "r": 1.0,
    "p_init": None,
    "disc_thresh": 2.0,
    "disc_margin": 2,
    "min_range_halfwidth": 2,
    "range_mode": "variance",
    "range_scale": 3.0,
    "reduce_search": True,
    # matcher
    "p1": 6,
    "p2": 65,
    "paths": 8,
    "path_set": "nondiagonal",
    "d_max": 128,
    # detection
    "windows": None,
    "score_thresh": 2.0,
    "merge_stop_iou": 0.2,
    "min_box_area": 400,
    # runtime
    "threads": 1,
    # calibration
    "focal_px": None,
    "cx": None,
    "cy": None,
    "baseline_m": None,
    "width": None,
    "height": None,
}

PATH_SET_ALIASES = {
    "nondiag": "nondiagonal",
    "nondiagonal": "nondiagonal",
    "diag": "diagonal",
    "diagonal": "diagonal",
}

_CALIB_KEYS = ("focal_px", "cx", "cy", "baseline_m")


def read_toml(path) -> Dict[str, Any]:
    """
    Read a TOML file.

    :raises ConfigError: If the file is missing or malformed.
    """
    try:
        with open(path, "rb") as stream:
            return tomllib.load(stream)
    except OSError as error:
        raise ConfigError(f"Can't read the configuration '{path}': {error}") from error
    except tomllib.TOMLDecodeError as error:
        raise ConfigError(f"'{path}' is not valid TOML: {error}") from error


class RunConfig:
    """
    The merged settings of a run.

    :param values: The settings from a configuration file.
    :param overrides: Settings from the command line. None values are ignored.
    :param sequence: The input sequence folder.
    :param out_dir: The output folder.
    :param poses: The pose file.
    :param gt_dir: The ground truth disparity folder.
    """

    def __init__(
        self,
        values: Optional[Mapping[str, Any]] = None,
        overrides: Optional[Mapping[str, Any]] = None,
        sequence=None,
        out_dir=None,
        poses=None,
        gt_dir=None,
    ):
        merged = dict(DEFAULTS)
        for layer in (values or {}, overrides or {}):
            for key, value in layer.items():
                if key not in DEFAULTS:
                    raise ConfigError(f"Unknown configuration key '{key}'")
                if value is not None:
                    merged[key] = value
        if merged["path_set"] not in PATH_SET_ALIASES:
            raise ConfigError(f"Unknown path set '{merged['path_set']}'")
        merged["path_set"] = PATH_SET_ALIASES[merged["path_set"]]
        if int(merged["threads"]) < 1:
            raise ConfigError(
                f"The thread count has to be at least 1, got {merged['threads']}"
            )
        self.__values = merged
        self.__sequence = None if sequence is None else Path(sequence)
        self.__out_dir = None if out_dir is None else Path(out_dir)
        self.__poses = None if poses is None else Path(poses)
        self.__gt_dir = None if gt_dir is None else Path(gt_dir)
        for name, path in (
            ("sequence", self.__sequence),
            ("pose file", self.__poses),
            ("ground truth folder", self.__gt_dir),
        ):
            if path is not None and not path.exists():
                raise ConfigError(f"The {name} '{path}' doesn't exist")
        # fail early on invalid parameters
        self.sgm_params()
        self.filter_config()
        self.detect_config()

    @classmethod
    def load(cls, path=None, overrides=None, **paths) -> "RunConfig":
        """
        Create a configuration from an optional TOML file and command line overrides.
        """
        values = read_toml(path) if path is not None else {}
        return cls(values, overrides, **paths)

    def __getitem__(self, key: str) -> Any:
        return self.__values[key]

    def to_dict(self) -> Dict[str, Any]:
        return dict(self.__values)

    @property
    def sequence(self) -> Optional[Path]:
        return self.__sequence

    @property
    def out_dir(self) -> Optional[Path]:
        return self.__out_dir

    @property
    def poses(self) -> Optional[Path]:
        return self.__poses

    @property
    def gt_dir(self) -> Optional[Path]:
        return self.__gt_dir

    @property
    def threads(self) -> int:
        return int(self.__values["threads"])

    @property
    def d_max(self) -> int:
        return int(self.__values["d_max"])

    def sgm_params(self) -> SgmParams:
        v = self.__values
        return self._build(
            SgmParams,
            p1=int(v["p1"]),
            p2=int(v["p2"]),
            paths=int(v["paths"]),
            path_set=v["path_set"],
            d_max=int(v["d_max"]),
        )

    def noise_params(self) -> NoiseParams:
        return self._build(
            NoiseParams, q=float(self.__values["q"]), r=float(self.__values["r"])
        )

    def filter_config(self) -> FilterConfig:
        v = self.__values
        return self._build(
            FilterConfig,
            noise=self.noise_params(),
            p_init=v["p_init"],
            disc_thresh=float(v["disc_thresh"]),
            disc_margin=int(v["disc_margin"]),
            min_range_halfwidth=int(v["min_range_halfwidth"]),
            range_mode=v["range_mode"],
            range_scale=float(v["range_scale"]),
            reduce_search=bool(v["reduce_search"]),
        )

    def detect_config(self) -> DetectConfig:
        v = self.__values
        return self._build(
            DetectConfig,
            windows=v["windows"],
            score_thresh=float(v["score_thresh"]),
            merge_stop_iou=float(v["merge_stop_iou"]),
            min_box_area=int(v["min_box_area"]),
        )

    def has_calib(self) -> bool:
        return all(self.__values[key] is not None for key in _CALIB_KEYS)

    def calib(self, width: int, height: int) -> StereoCalib:
        """
        Build the calibration from the configured intrinsics.

        :param width: The image width, unless configured.
        :param height: The image height, unless configured.
        """
        if not self.has_calib():
            missing = [key for key in _CALIB_KEYS if self.__values[key] is None]
            raise ConfigError(f"The calibration lacks {', '.join(missing)}")
        v = self.__values
        return self._build(
            StereoCalib,
            focal_px=float(v["focal_px"]),
            cx=float(v["cx"]),
            cy=float(v["cy"]),
            baseline_m=float(v["baseline_m"]),
            width=int(v["width"] if v["width"] is not None else width),
            height=int(v["height"] if v["height"] is not None else height),
            d_max=self.d_max,
        )

    @staticmethod
    def _build(factory, **kwargs):
        try:
            return factory(**kwargs)
        except ValueError as error:
            if isinstance(error, ConfigError):
                raise
            raise ConfigError(str(error)) from error
