#!/usr/bin/env python
# -*- coding: UTF-8 -*-
#
"""
The exception types raised by this package.

Invalid arguments are reported with plain :class:`ValueError` s. The
classes defined here mark failures which depend on the processed data.
"""

__all__ = [
    "TempoSgmError",
    "EmptyDataError",
    "ConfigError",
    "DatasetError",
    "DisparityFormatError",
]


class TempoSgmError(Exception):
    """
    The base class of all errors raised because of the processed data.
    """


class EmptyDataError(TempoSgmError, ValueError):
    """
    Raised if a computation has no pixels or frames left to work on.
    """


class ConfigError(TempoSgmError, ValueError):
    """
    Raised if a configuration can't be used.
    """


class DatasetError(TempoSgmError):
    """
    Raised if a sequence on disk can't be loaded.
    """


class DisparityFormatError(DatasetError):
    """
    Raised if a disparity image is not encoded as 16 bit single channel PNG.
    """
