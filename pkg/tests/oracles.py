"""Brute-force reference implementations kept independent of the package."""

from collections import deque

import numpy as np

FOUR_STEPS = [(1, 0), (-1, 0), (0, 1), (0, -1)]
EIGHT_STEPS = FOUR_STEPS + [(1, 1), (1, -1), (-1, 1), (-1, -1)]


def flood_fill_components(bits: np.ndarray, steps) -> int:
    """BFS flood-fill component count over true cells."""
    bits = np.asarray(bits, dtype=bool)
    h, w = bits.shape
    seen = np.zeros_like(bits)
    count = 0
    for sy in range(h):
        for sx in range(w):
            if not bits[sy, sx] or seen[sy, sx]:
                continue
            count += 1
            queue = deque([(sy, sx)])
            seen[sy, sx] = True
            while queue:
                y, x = queue.popleft()
                for dx, dy in steps:
                    ny, nx = y + dy, x + dx
                    if 0 <= ny < h and 0 <= nx < w and bits[ny, nx] and not seen[ny, nx]:
                        seen[ny, nx] = True
                        queue.append((ny, nx))
    return count


def brute_disk_offsets(r: int) -> set[tuple[int, int]]:
    """Integer points strictly inside the radius-r circle, by double loop."""
    return {
        (dx, dy)
        for dx in range(-r, r + 1)
        for dy in range(-r, r + 1)
        if dx * dx + dy * dy < r * r
    }
