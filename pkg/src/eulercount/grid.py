"""Integer sensor grids, binary masks, component counting, and PGM rendering.

Coordinates are (x, y) with x in [0, width) and y in [0, height); arrays are
stored row-major with shape (height, width), so cell (x, y) is ``values[y, x]``.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np
from scipy import ndimage

__all__ = [
    "Connectivity",
    "HeightField",
    "BitMask",
    "betti0",
    "euler_char8",
    "render_pgm",
]


class Connectivity(Enum):
    """Pixel adjacency convention for component counting."""

    FOUR_NEIGHBOR = 4
    EIGHT_NEIGHBOR = 8


# Structuring elements for scipy.ndimage.label.
_STRUCTURE = {
    Connectivity.FOUR_NEIGHBOR: np.array(
        [[0, 1, 0], [1, 1, 1], [0, 1, 0]], dtype=bool
    ),
    Connectivity.EIGHT_NEIGHBOR: np.ones((3, 3), dtype=bool),
}


@dataclass(frozen=True)
class HeightField:
    """Dense grid of non-negative target counts, one per sensor.

    Dimensions are fixed at construction; cell values are mutated in place by
    stamping (single owner per field). Safe to share across workers once no
    more stamping will happen.
    """

    width: int
    height: int
    values: np.ndarray

    def __post_init__(self) -> None:
        if self.width < 1 or self.height < 1:
            raise ValueError(f"field dimensions must be >= 1, got {self.width}x{self.height}")
        if self.values.shape != (self.height, self.width):
            raise ValueError(
                f"values shape {self.values.shape} does not match "
                f"(height, width)=({self.height}, {self.width})"
            )
        if self.values.min(initial=0) < 0:
            raise ValueError("height field values must be non-negative")

    @classmethod
    def zeros(cls, width: int, height: int) -> "HeightField":
        return cls(width, height, np.zeros((height, width), dtype=np.int64))

    @classmethod
    def from_array(cls, values: np.ndarray) -> "HeightField":
        values = np.asarray(values, dtype=np.int64)
        if values.ndim != 2:
            raise ValueError("height field array must be 2-dimensional")
        h, w = values.shape
        return cls(w, h, values)

    def max_value(self) -> int:
        return int(self.values.max(initial=0))

    def scaled(self, k: int) -> "HeightField":
        """Pointwise multiple k*h of this field (k >= 0)."""
        if k < 0:
            raise ValueError("scale factor must be non-negative")
        return HeightField(self.width, self.height, self.values * k)


@dataclass(frozen=True)
class BitMask:
    """Boolean mask with the same geometry as the field it was derived from."""

    width: int
    height: int
    bits: np.ndarray

    def __post_init__(self) -> None:
        if self.bits.shape != (self.height, self.width):
            raise ValueError(
                f"bits shape {self.bits.shape} does not match "
                f"(height, width)=({self.height}, {self.width})"
            )
        if self.bits.dtype != np.bool_:
            raise ValueError("bits must be a boolean array")

    @classmethod
    def from_array(cls, bits: np.ndarray) -> "BitMask":
        bits = np.asarray(bits, dtype=bool)
        h, w = bits.shape
        return cls(w, h, bits)


def _component_count(bits: np.ndarray, conn: Connectivity) -> int:
    if not bits.any():
        return 0
    _, count = ndimage.label(bits, structure=_STRUCTURE[conn])
    return int(count)


def betti0(mask: BitMask, conn: Connectivity) -> int:
    """Number of connected components of the true cells under ``conn``.

    An all-false mask has zero components.
    """
    return _component_count(mask.bits, conn)


def euler_char8(bits: np.ndarray) -> int:
    """Euler characteristic of a pixel set under 8-connectivity.

    Treats each true pixel as a closed unit square and returns V - E + F of
    the union. Equals (number of 8-connected components) minus (number of
    bounded 4-connected holes), which makes it the per-level term of the
    duality formula; see euler.euler_integral.
    """
    bits = np.asarray(bits, dtype=bool)
    faces = int(np.count_nonzero(bits))
    if faces == 0:
        return 0
    p = np.pad(bits, 1)
    vertices = int(np.count_nonzero(p[:-1, :-1] | p[:-1, 1:] | p[1:, :-1] | p[1:, 1:]))
    edges_h = int(np.count_nonzero(p[:-1, 1:-1] | p[1:, 1:-1]))
    edges_v = int(np.count_nonzero(p[1:-1, :-1] | p[1:-1, 1:]))
    return vertices - edges_h - edges_v + faces


def render_pgm(field: HeightField) -> bytes:
    """Render the field as a binary PGM (P5, maxval 255).

    The global maximum count maps to 255 and zero to 0; intermediate values
    scale linearly with round-half-up so output bytes are platform independent.
    An all-zero field renders all black.
    """
    header = f"P5\n{field.width} {field.height}\n255\n".encode("ascii")
    peak = field.max_value()
    if peak == 0:
        body = np.zeros((field.height, field.width), dtype=np.uint8)
    else:
        scaled = np.floor(field.values * (255.0 / peak) + 0.5)
        body = scaled.astype(np.uint8)
    return header + body.tobytes()
