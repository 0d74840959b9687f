"""Euler characteristic integral of a height field via the duality formula.

The integral is the sum over levels s of beta0{h > s} - beta0{h <= s} + 1.
Both excursion sets are counted with 8-neighbor adjacency. The convention is
a single global constant, fixed by calibration against the known two-disk
position counts: 8 tangency offsets for radius 1, 88 for radius 6, and
error-type counts (8, 112, 8) for radius 8. Of the four adjacency pairings,
only 8/8 reproduces these and every other tabulated count through radius 55;
the 8-upper/4-lower pairing, for example, assigns integral -1 to the
diagonal staircase contact of two radius-6 disks, which the tables rule out.

The field is conceptually embedded in an infinite zero plane. A one-cell zero
border realizes this exactly: adjacency is local, and the unbounded outside
contributes exactly one component to every lower excursion set.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .grid import Connectivity, HeightField, _component_count

__all__ = [
    "UPPER_CONNECTIVITY",
    "LOWER_CONNECTIVITY",
    "LevelContribution",
    "euler_integral",
    "level_contributions",
]

UPPER_CONNECTIVITY = Connectivity.EIGHT_NEIGHBOR
LOWER_CONNECTIVITY = Connectivity.EIGHT_NEIGHBOR


@dataclass(frozen=True)
class LevelContribution:
    """Per-level term of the duality sum (diagnostic decomposition)."""

    level: int
    upper_components: int
    lower_components: int
    term: int


def _prepared(field: HeightField, zero_pad: bool) -> np.ndarray:
    if zero_pad:
        return np.pad(field.values, 1)
    return field.values


def euler_integral(field: HeightField, zero_pad: bool = True) -> int:
    """Integral of the field with respect to the Euler characteristic.

    For s at or above the maximum value the term vanishes ({h > s} is empty
    and {h <= s} is everything), so the sum stops at max(h) - 1. An all-zero
    field integrates to 0.

    ``zero_pad=False`` drops the zero border; that mode exists only as a
    diagnostic for the boundary effect (a constant-10 field then integrates
    to 20 instead of 10) and is not the estimator.
    """
    h = _prepared(field, zero_pad)
    total = 0
    for s in range(int(h.max(initial=0))):
        upper = h > s
        total += (
            _component_count(upper, UPPER_CONNECTIVITY)
            - _component_count(~upper, LOWER_CONNECTIVITY)
            + 1
        )
    return total


def level_contributions(field: HeightField, zero_pad: bool = True) -> list[LevelContribution]:
    """Per-level terms; they sum to euler_integral and the list has max(h) entries."""
    h = _prepared(field, zero_pad)
    out = []
    for s in range(int(h.max(initial=0))):
        upper = h > s
        up = _component_count(upper, UPPER_CONNECTIVITY)
        lo = _component_count(~upper, LOWER_CONNECTIVITY)
        out.append(LevelContribution(level=s, upper_components=up, lower_components=lo, term=up - lo + 1))
    return out
