"""
Distance-profile and matrix-profile result types.
"""

from dataclasses import dataclass
from enum import Enum
from typing import Optional

import numpy as np


NO_NEIGHBOR = -1


class JoinKind(str, Enum):
    """Which join produced a matrix profile."""

    SELF = "self-join"
    AB = "ab-join"
    DICTIONARY = "dictionary-join"


@dataclass(frozen=True, eq=False)
class DistanceProfile:
    """Distances from one query to every window of a series."""

    values: np.ndarray
    query_origin: Optional[int] = None

    def __len__(self) -> int:
        return int(self.values.shape[0])


@dataclass(frozen=True, eq=False)
class MatrixProfile:
    """
    Nearest-neighbor distance and index for every window of a series.

    ``indices[i]`` is the start of the 1NN window in the target series, or
    ``NO_NEIGHBOR`` when every candidate was excluded.
    """

    values: np.ndarray
    indices: np.ndarray
    kind: JoinKind
    m: int

    def __post_init__(self):
        values = np.asarray(self.values, dtype=np.float64)
        indices = np.asarray(self.indices, dtype=np.int64)
        if values.shape != indices.shape:
            raise ValueError("Matrix profile values and indices must have equal length")
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "indices", indices)
        object.__setattr__(self, "kind", JoinKind(self.kind))

    def __len__(self) -> int:
        return int(self.values.shape[0])

    @property
    def exclusion_radius(self) -> int:
        """Half-width of the trivial-match zone, floor(m / 2)."""
        return self.m // 2

    def discord_index(self) -> int:
        """Start of the window with the largest profile value (lowest index on ties)."""
        return int(np.argmax(self.values))

    def motif_index(self) -> int:
        """Start of the window with the smallest profile value (lowest index on ties)."""
        return int(np.argmin(self.values))
