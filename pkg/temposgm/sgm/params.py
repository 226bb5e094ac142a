#!/usr/bin/env python
# -*- coding: UTF-8 -*-
#
"""
The parameters of the semi-global matcher.

Defaults follow the tuned configuration of the matcher: P1 = 6, P2 = 65,
a 5x5 census window, 128 disparity levels and 8 aggregation paths.
"""
from typing import Tuple

import numpy as np

from temposgm.matching import MAX_COST

__all__ = [
    "PATH_SETS",
    "NONDIAGONAL",
    "DIAGONAL",
    "ALL_DIRECTIONS",
    "SgmParams",
]

# a direction r is the step from the predecessor p - r to the pixel p
NONDIAGONAL = ((1, 0), (-1, 0), (0, 1), (0, -1))
DIAGONAL = ((1, 1), (-1, -1), (-1, 1), (1, -1))
ALL_DIRECTIONS = NONDIAGONAL + DIAGONAL
PATH_SETS = ("nondiagonal", "diagonal")

_UINT16_MAX = np.iinfo(np.uint16).max


class SgmParams:
    """
    Penalties and path selection of the cost aggregation.

    `p1` penalizes disparity changes of one level between neighbors on a
    path, `p2` larger jumps. With four paths, `path_set` selects either the
    horizontal and vertical paths or the four diagonals.
    """

    def __init__(
        self,
        p1: int = 6,
        p2: int = 65,
        paths: int = 8,
        path_set: str = "nondiagonal",
        d_max: int = 128,
    ):
        if not 0 < p1 <= p2:
            raise ValueError(
                f"The penalties have to fulfill 0 < P1 <= P2, got {p1}, {p2}"
            )
        if paths not in (4, 8):
            raise ValueError(f"Only 4 or 8 paths are supported, got {paths}")
        if path_set not in PATH_SETS:
            raise ValueError(
                f"Unknown path set '{path_set}', expected one of {', '.join(PATH_SETS)}"
            )
        if d_max < 1:
            raise ValueError(f"At least one disparity level is required, got {d_max}")
        # every path contributes at most C + P2
        if paths * (MAX_COST + p2) > _UINT16_MAX:
            raise ValueError(
                f"P2={p2} with {paths} paths overflows the 16 bit aggregated costs"
            )
        self.__p1 = int(p1)
        self.__p2 = int(p2)
        self.__paths = int(paths)
        self.__path_set = path_set
        self.__d_max = int(d_max)

    @property
    def p1(self) -> int:
        return self.__p1

    @property
    def p2(self) -> int:
        return self.__p2

    @property
    def paths(self) -> int:
        return self.__paths

    @property
    def path_set(self) -> str:
        """
        The four path set used if `paths` is 4. Ignored for 8 paths.
        """
        return self.__path_set

    @property
    def d_max(self) -> int:
        return self.__d_max

    def directions(self) -> Tuple[Tuple[int, int], ...]:
        """
        :return: The (dx, dy) steps of the selected aggregation paths.
        """
        if self.__paths == 8:
            return ALL_DIRECTIONS
        return NONDIAGONAL if self.__path_set == "nondiagonal" else DIAGONAL

    def to_dict(self) -> dict:
        return {
            "p1": self.p1,
            "p2": self.p2,
            "paths": self.paths,
            "path_set": self.path_set,
            "d_max": self.d_max,
        }

    def replace(self, **changes) -> "SgmParams":
        """
        Return a copy with some of the parameters changed.
        """
        values = self.to_dict()
        values.update(changes)
        return SgmParams(**values)

    def __eq__(self, other) -> bool:
        if isinstance(other, SgmParams):
            return other.to_dict() == self.to_dict()
        return False

    def __hash__(self) -> int:
        return hash(tuple(self.to_dict().items()))

    def __repr__(self) -> str:
        values = ", ".join(f"{k}={v!r}" for k, v in self.to_dict().items())
        return f"SgmParams({values})"
