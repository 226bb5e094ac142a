#!/usr/bin/env python
# -*- coding: UTF-8 -*-
#
"""
Histograms of disparity errors and the Gaussian noise models fitted to them.

Both can be plotted if the "plotting" extra is installed.

.. code:: python

    histogram = ErrorHistogram.from_errors(errors)
    histogram.plot(histogram.fit())
"""
import logging
import math
from typing import Optional

import numpy as np

__all__ = ["ErrorHistogram", "NoiseModel", "DEFAULT_BIN_WIDTH"]

DEFAULT_BIN_WIDTH = 0.25


def _get_matplotlib():
    try:
        from matplotlib import pyplot as plt

        return plt
    except ImportError:  # pragma: no cover
        logging.getLogger().error(
            "Error importing the matplotlib. "
            "Did you forget to install the 'plotting' extra?"
        )
        return None


class NoiseModel:
    """
    A zero-centered or shifted Gaussian model of disparity errors.

    The probability density function (PDF) is defined as follows:

        P(X) = 1/sqrt(2*pi*variance)*e^(-(X-mean)^2/(2*variance))
    """

    def __init__(self, mean: float, variance: float):
        if variance < 0:
            raise ValueError(f"The variance must not be negative, got {variance}")
        self.__mean = float(mean)
        self.__variance = float(variance)

    @property
    def mean(self) -> float:
        return self.__mean

    @property
    def variance(self) -> float:
        return self.__variance

    @property
    def scale(self) -> float:
        """
        The standard deviation of the model
        """
        return math.sqrt(self.__variance)

    def pdf(self, x):
        """
        Calculate the density of the model at `x`.

        :param x: A value or an array of values.
        :return: The density at `x`.
        """
        if self.__variance == 0:
            return np.where(np.asarray(x) == self.__mean, np.inf, 0.0)
        return np.exp(-((np.asarray(x) - self.mean) ** 2) / (2 * self.variance)) / (
            np.sqrt(2 * np.pi * self.variance)
        )

    def plot(self, axes=None):
        """
        Plot the PDF of this model.

        :param axes: The matplotlib axes to draw into, a new figure if omitted.
        :return: ``None`` if matplotlib is not installed, otherwise the figure
                 which contains the plot.
        """
        plt = _get_matplotlib()
        if plt is None:
            return None
        if axes is None:
            figure, axes = plt.subplots()
        else:
            figure = axes.figure
        spread = max(3 * self.scale, 1.0)
        x = np.linspace(self.mean - spread, self.mean + spread, num=1000)
        axes.plot(
            x, self.pdf(x), label=f"mean={self.mean:g}, variance={self.variance:g}"
        )
        axes.set_xlabel("Error [px]")
        axes.set_ylabel("PDF(X)")
        legend = axes.legend(loc="best", fancybox=True, framealpha=0.2)
        legend.set_draggable(True)
        return figure

    def __repr__(self) -> str:
        return f"NoiseModel(mean={self.mean:g}, variance={self.variance:g})"


class ErrorHistogram:
    """
    The distribution of pooled disparity errors in pixels.

    Besides the binned counts, the histogram keeps the exact moments of the
    errors it was built from.
    """

    def __init__(
        self,
        edges: np.ndarray,
        counts: np.ndarray,
        total: int,
        mean: float,
        variance: float,
        within_one: int,
    ):
        edges = np.asarray(edges, dtype=np.float64)
        counts = np.asarray(counts, dtype=np.int64)
        if edges.ndim != 1 or counts.shape != (edges.size - 1,):
            raise ValueError("A histogram needs one more edge than counts")
        if np.any(counts < 0):
            raise ValueError("Histogram counts must not be negative")
        self.__edges = edges
        self.__counts = counts
        self.__total = int(total)
        self.__mean = float(mean)
        self.__variance = float(variance)
        self.__within_one = int(within_one)

    @classmethod
    def from_errors(
        cls, errors, bin_width: float = DEFAULT_BIN_WIDTH, limit: Optional[float] = None
    ) -> "ErrorHistogram":
        """
        Build the histogram of `errors`.

        :param errors: The errors in pixels.
        :param bin_width: The width of the bins.
        :param limit: The bins cover [-limit, limit]. Defaults to the largest
            absolute error, so every error falls into a bin.
        """
        errors = np.asarray(errors, dtype=np.float64).reshape(-1)
        if limit is None:
            limit = 1.0
            if errors.size:
                limit = max(1.0, math.ceil(float(np.max(np.abs(errors)))))
        steps = int(math.ceil(limit / bin_width))
        edges = np.arange(-steps, steps + 1) * bin_width
        counts, _ = np.histogram(np.clip(errors, edges[0], edges[-1]), bins=edges)
        return cls(
            edges,
            counts,
            errors.size,
            float(np.mean(errors)) if errors.size else 0.0,
            float(np.var(errors)) if errors.size else 0.0,
            int(np.count_nonzero(np.abs(errors) <= 1.0)),
        )

    @property
    def edges(self) -> np.ndarray:
        return self.__edges

    @property
    def counts(self) -> np.ndarray:
        return self.__counts

    @property
    def centers(self) -> np.ndarray:
        return 0.5 * (self.__edges[1:] + self.__edges[:-1])

    @property
    def total(self) -> int:
        """
        The number of errors.
        """
        return self.__total

    @property
    def mean(self) -> float:
        return self.__mean

    @property
    def variance(self) -> float:
        return self.__variance

    def inlier_fraction(self) -> float:
        """
        The fraction of errors within ±1 pixel.
        """
        if self.__total == 0:
            return 0.0
        return self.__within_one / self.__total

    def fit(self) -> NoiseModel:
        """
        :return: The Gaussian with the mean and variance of the errors.
        """
        return NoiseModel(self.__mean, self.__variance)

    def density(self) -> np.ndarray:
        """
        :return: The counts normalized to a probability density.
        """
        if self.__total == 0:
            return np.zeros(self.__counts.shape)
        return self.__counts / (self.__total * np.diff(self.__edges))

    def to_table(self) -> str:
        """
        Render the non-empty bins as text, one "lower upper count" row per bin.
        """
        rows = [f"{'lower':>8} {'upper':>8} {'count':>10}"]
        for lower, upper, count in zip(self.__edges, self.__edges[1:], self.__counts):
            if count:
                rows.append(f"{lower:8.2f} {upper:8.2f} {count:10d}")
        return "\n".join(rows)

    def plot(self, model: Optional[NoiseModel] = None, title: Optional[str] = None):
        """
        Plot the normalized histogram, optionally overlaid with a noise model.

        :return: ``None`` if matplotlib is not installed, otherwise the figure
                 which contains the plot.
        """
        plt = _get_matplotlib()
        if plt is None:
            return None
        figure, axes = plt.subplots()
        axes.bar(
            self.centers,
            self.density(),
            width=np.diff(self.__edges),
            alpha=0.6,
            label=f"{self.__total} errors",
        )
        if model is not None:
            model.plot(axes)
        axes.set_xlabel("Error [px]")
        axes.set_ylabel("Density")
        if title:
            axes.set_title(title)
        legend = axes.legend(loc="best", fancybox=True, framealpha=0.2)
        legend.set_draggable(True)
        return figure
