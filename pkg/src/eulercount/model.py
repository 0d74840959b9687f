"""Bias formulas for the integral as a target-count estimator, and their inverse.

The expected integral for n uniformly placed disks is n minus the expected
number of errors. First order, errors are tangencies: n(n-1) b_corr / A.
Second order, each existing error cluster shields c positions where a new
tangency discriminates itself and adds no error, giving the recurrence
E_k = E_{k-1} (1 - c/A) + (k-1) b_corr / A with closed form
E_n = (b_corr / c^2) ((1 - c/A)^n A - A + n c).

With c = b_corr the predicted integral n - E_n increases strictly to the
ceiling A b_corr / c^2, so it can be inverted by bisection to turn an
observed integral into a bias-corrected count estimate. With c > b_corr it
increases without bound; with c < b_corr it eventually decreases, which is
why c = b_corr is the robust default.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Sequence

from .euler import euler_integral
from .grid import HeightField
from .targets import DiskTemplate, stamp_clipped

__all__ = [
    "ModelParams",
    "ErrorEstimate",
    "Order",
    "first_order_errors",
    "second_order_errors_recurrence",
    "second_order_errors_closed",
    "solve_linear_recurrence",
    "predicted_integral",
    "invert_estimate",
    "one_layer_H",
    "asymptotic_integral",
]

MAX_BISECTION_ITERATIONS = 200


@dataclass(frozen=True)
class ModelParams:
    """Constants of the bias model for one field geometry.

    area is the allowed-center count (l - 2r)(w - 2r); b_corr the
    edge-corrected tangency constant; c the discrimination constant.
    """

    area: float
    b_corr: float
    c: float

    def __post_init__(self) -> None:
        if self.area < 1:
            raise ValueError(f"area must be >= 1, got {self.area}")
        if not 0 < self.c < self.area:
            raise ValueError(f"c must lie in (0, area), got c={self.c}, area={self.area}")
        if self.b_corr <= 0:
            raise ValueError(f"b_corr must be positive, got {self.b_corr}")

    @classmethod
    def for_field(cls, length: int, width: int, radius: int, b_corr: float, c: float) -> "ModelParams":
        area = (length - 2 * radius) * (width - 2 * radius)
        return cls(area=float(area), b_corr=b_corr, c=c)


@dataclass(frozen=True)
class ErrorEstimate:
    """Expected miscount for n targets, and the implied integral."""

    n: float
    expected_errors: float
    predicted_integral: float


class Order(Enum):
    FIRST = 1
    SECOND_CLOSED = 2


def first_order_errors(n: float, p: ModelParams) -> float:
    """Expected tangency count n(n-1) b_corr / A; zero for n <= 1."""
    return n * (n - 1) * p.b_corr / p.area


def second_order_errors_recurrence(n: int, p: ModelParams) -> float:
    """Iterate E_k = E_{k-1}(1 - c/A) + (k-1) b_corr / A from E_0 = 0."""
    if n < 0:
        raise ValueError("n must be non-negative")
    decay = 1.0 - p.c / p.area
    rate = p.b_corr / p.area
    e = 0.0
    for k in range(1, int(n) + 1):
        e = e * decay + (k - 1) * rate
    return e


def second_order_errors_closed(n: float, p: ModelParams) -> float:
    """Closed form (b_corr / c^2)((1 - c/A)^n A - A + n c).

    (1 - c/A)^n A - A is evaluated as A expm1(n log1p(-c/A)) so the result
    stays accurate when n c / A is tiny and the leading terms cancel.
    """
    if n < 0:
        raise ValueError("n must be non-negative")
    growth = p.area * math.expm1(n * math.log1p(-p.c / p.area))
    return p.b_corr / (p.c * p.c) * (growth + n * p.c)


def solve_linear_recurrence(f: Sequence[float], g: Sequence[float], a0: float, n: int) -> float:
    """a_n for a_{k+1} = f_k a_k + g_k via the product-sum solution.

    Evaluates (prod_{k<n} f_k) (a0 + sum_{m<n} g_m / prod_{k<=m} f_k),
    which equals direct iteration. Every f_k up to n must be nonzero.
    """
    if n < 0:
        raise ValueError("n must be non-negative")
    if len(f) < n or len(g) < n:
        raise ValueError(f"need {n} coefficients, got f:{len(f)} g:{len(g)}")
    product = 1.0
    acc = a0
    for k in range(n):
        if f[k] == 0:
            raise ValueError(f"zero coefficient f[{k}]")
        product *= f[k]
        acc += g[k] / product
    return product * acc


def expected_errors(n: float, p: ModelParams, order: Order) -> float:
    if order is Order.FIRST:
        return first_order_errors(n, p)
    return second_order_errors_closed(n, p)


def predicted_integral(n: float, p: ModelParams, order: Order = Order.SECOND_CLOSED) -> float:
    """Expected integral: n minus the selected error estimate."""
    return n - expected_errors(n, p, order)


def estimate(n: float, p: ModelParams, order: Order = Order.SECOND_CLOSED) -> ErrorEstimate:
    e = expected_errors(n, p, order)
    return ErrorEstimate(n=n, expected_errors=e, predicted_integral=n - e)


def _forward_supremum(p: ModelParams) -> float:
    # n - E_n -> n (1 - b/c) + A b / c^2 (1 - (1-c/A)^n): bounded iff c <= b_corr.
    if p.c > p.b_corr:
        return math.inf
    return p.area * p.b_corr / (p.c * p.c)


def invert_estimate(observed: float, p: ModelParams, tol: float = 1e-6) -> float:
    """Solve predicted_integral(n) = observed for real n >= 0 by bisection.

    Requires c >= b_corr, which makes the forward map strictly increasing
    (the paper's injectivity condition). With c = b_corr the map is bounded
    above by A b_corr / c^2; observed values at or beyond that ceiling, or
    below 0, are rejected.
    """
    if p.c < p.b_corr:
        raise ValueError(
            f"inversion requires c >= b_corr for injectivity, got c={p.c} < b_corr={p.b_corr}"
        )
    if observed < 0:
        raise ValueError(f"observed integral must be >= 0, got {observed}")
    sup = _forward_supremum(p)
    if observed >= sup:
        raise ValueError(
            f"observed {observed} is at or above the attainable ceiling {sup} for c = b_corr"
        )
    forward = lambda n: predicted_integral(n, p, Order.SECOND_CLOSED)
    hi = 1.0
    while forward(hi) < observed:
        hi *= 2.0
        if hi > 1e18:
            raise RuntimeError("failed to bracket the observed value")
    lo = 0.0
    mid = hi / 2.0
    for _ in range(MAX_BISECTION_ITERATIONS):
        mid = 0.5 * (lo + hi)
        value = forward(mid)
        if value < observed:
            lo = mid
        else:
            hi = mid
        if abs(value - observed) <= tol and hi - lo <= 1e-9 * max(1.0, mid):
            return mid
    if abs(forward(mid) - observed) <= tol:
        return mid
    raise RuntimeError(
        f"bisection did not reach tolerance {tol} after {MAX_BISECTION_ITERATIONS} iterations"
    )


def one_layer_H(length: int, width: int, template: DiskTemplate) -> int:
    """Integral of the field with one disk centered on every sensor.

    Disks centered near the edge are clipped: the construction puts a target
    over every sensor regardless of margins.
    """
    field = HeightField.zeros(length, width)
    for y in range(width):
        for x in range(length):
            stamp_clipped(field, template, (x, y))
    return euler_integral(field)


def asymptotic_integral(m: int, H: int) -> int:
    """Large-n integral H*m when n = m * (sensor count): m full layers."""
    if m < 1:
        raise ValueError("m must be a positive integer")
    return H * m
