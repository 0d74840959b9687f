"""Discrete disks and uniform discrete placement of targets on a sensor field.

A radius-r target covers the lattice offsets with dx^2 + dy^2 < r^2 (strict:
the <= form grows spurious bumps on the rim). Centers land on integer cells,
uniformly over the margin box that keeps every disk r units clear of the edge.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .grid import HeightField

__all__ = [
    "DiskTemplate",
    "FieldConfig",
    "rasterize_disk",
    "place_uniform",
    "stamp",
    "stamp_all",
    "stamp_clipped",
]

MAX_RADIUS = 128


@dataclass(frozen=True)
class DiskTemplate:
    """Offsets of a discrete disk, plus a dense mask for fast stamping.

    ``mask`` has shape (2r-1, 2r-1) with the center at index (r-1, r-1);
    mask[r-1+dy, r-1+dx] is true exactly for the offsets.
    """

    radius: int
    offsets: frozenset[tuple[int, int]]
    mask: np.ndarray = field(repr=False)

    def __len__(self) -> int:
        return len(self.offsets)


def rasterize_disk(r: int) -> DiskTemplate:
    """Discrete disk of radius r: all (dx, dy) with dx^2 + dy^2 < r^2."""
    if r < 1:
        raise ValueError(f"radius must be >= 1, got {r}")
    if r > MAX_RADIUS:
        raise ValueError(f"radius must be <= {MAX_RADIUS}, got {r}")
    span = np.arange(-(r - 1), r)
    dx, dy = np.meshgrid(span, span)
    mask = dx * dx + dy * dy < r * r
    offsets = frozenset(
        (int(x), int(y)) for x, y in zip(dx[mask].ravel(), dy[mask].ravel())
    )
    return DiskTemplate(radius=r, offsets=offsets, mask=mask)


@dataclass(frozen=True)
class FieldConfig:
    """One experiment setup: an l x w sensor grid and n radius-r targets.

    ``length`` is the x extent and ``width`` the y extent of the grid.
    """

    length: int
    width: int
    radius: int
    n: int
    seed: int = 0

    def __post_init__(self) -> None:
        if self.radius < 1:
            raise ValueError(f"radius must be >= 1, got {self.radius}")
        if self.length <= 2 * self.radius or self.width <= 2 * self.radius:
            raise ValueError(
                f"field {self.length}x{self.width} leaves no room for centers "
                f"of radius-{self.radius} disks (need length, width > 2r)"
            )
        if self.n < 0:
            raise ValueError(f"target count must be >= 0, got {self.n}")

    @property
    def center_area(self) -> int:
        """Size of the allowed-center box, (l - 2r) * (w - 2r)."""
        return (self.length - 2 * self.radius) * (self.width - 2 * self.radius)

    def empty_field(self) -> HeightField:
        return HeightField.zeros(self.length, self.width)


def place_uniform(config: FieldConfig, rng: np.random.Generator) -> np.ndarray:
    """Draw n centers i.i.d. uniform over [r, l-r-1] x [r, w-r-1].

    Returns an (n, 2) int array of (x, y) centers; x coordinates are drawn
    first, then y, so the output is a pure function of the stream state.
    Centers may coincide.
    """
    r = config.radius
    xs = rng.integers(r, config.length - r, size=config.n)
    ys = rng.integers(r, config.width - r, size=config.n)
    return np.column_stack([xs, ys]).astype(np.int64)


def stamp(field: HeightField, template: DiskTemplate, center: tuple[int, int]) -> HeightField:
    """Increment every cell covered by the disk placed at ``center``.

    The whole disk must lie inside the field (guaranteed for centers from
    place_uniform). Mutates and returns ``field``.
    """
    cx, cy = int(center[0]), int(center[1])
    r = template.radius
    x0, y0 = cx - (r - 1), cy - (r - 1)
    x1, y1 = cx + r, cy + r
    if x0 < 0 or y0 < 0 or x1 > field.width or y1 > field.height:
        raise ValueError(
            f"disk of radius {r} at ({cx}, {cy}) does not fit in "
            f"{field.width}x{field.height} field"
        )
    field.values[y0:y1, x0:x1] += template.mask
    return field


def stamp_all(field: HeightField, template: DiskTemplate, centers: np.ndarray) -> HeightField:
    """Stamp many disks at once (bincount scatter-add; equals repeated stamp)."""
    centers = np.asarray(centers, dtype=np.int64)
    if centers.size == 0:
        return field
    r = template.radius
    if (
        centers.min() < r - 1
        or centers[:, 0].max() + r > field.width
        or centers[:, 1].max() + r > field.height
    ):
        raise ValueError("some disk does not fit in the field")
    dy, dx = np.nonzero(template.mask)
    dx = dx - (r - 1)
    dy = dy - (r - 1)
    flat = (centers[:, 1:2] + dy) * field.width + (centers[:, 0:1] + dx)
    counts = np.bincount(flat.ravel(), minlength=field.width * field.height)
    field.values[:, :] += counts.reshape(field.height, field.width)
    return field


def stamp_clipped(field: HeightField, template: DiskTemplate, center: tuple[int, int]) -> HeightField:
    """Stamp a disk whose footprint may extend past the field edge.

    Cells outside the field are dropped. Used for the one-target-per-sensor
    construction, where disks centered near edges are clipped by design.
    """
    cx, cy = int(center[0]), int(center[1])
    r = template.radius
    x0, y0 = cx - (r - 1), cy - (r - 1)
    x1, y1 = cx + r, cy + r
    fx0, fy0 = max(x0, 0), max(y0, 0)
    fx1, fy1 = min(x1, field.width), min(y1, field.height)
    if fx0 >= fx1 or fy0 >= fy1:
        return field
    field.values[fy0:fy1, fx0:fx1] += template.mask[
        fy0 - y0 : fy1 - y0, fx0 - x0 : fx1 - x0
    ]
    return field
