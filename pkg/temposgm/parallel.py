#!/usr/bin/env python
# -*- coding: UTF-8 -*-
#
"""
Control over the worker threads used by the JIT compiled kernels.

The census, cost, selection and median kernels run in parallel over the
image rows. Their results never depend on the number of threads.
"""
import logging

import numba

__all__ = ["set_threads", "get_threads"]

_logger = logging.getLogger(__name__)


def set_threads(count: int) -> int:
    """
    Limit the number of threads the kernels are allowed to use.

    The count is clipped to the size of the thread pool numba was started with.

    :param count: The requested number of threads. Must be at least one.
    :return: The number of threads which is used from now on.
    """
    if count < 1:
        raise ValueError(f"The thread count has to be at least 1, got {count}")
    available = numba.config.NUMBA_NUM_THREADS
    if count > available:
        _logger.warning(
            "Requested %d threads but only %d are available", count, available
        )
        count = available
    numba.set_num_threads(count)
    return count


def get_threads() -> int:
    """
    :return: The number of threads the kernels currently use.
    """
    return numba.get_num_threads()
