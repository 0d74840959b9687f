import csv
from pathlib import Path

import pytest

DATA_DIR = Path(__file__).parent / "data"


@pytest.fixture(autouse=True)
def _isolated_cache(tmp_path, monkeypatch):
    # keep calibration caching away from the real home directory
    monkeypatch.setenv("EULERCOUNT_CACHE_DIR", str(tmp_path / "cache"))


@pytest.fixture(scope="session")
def golden_error_table() -> dict[int, tuple[int, int, int]]:
    """Published per-radius (type0, type1, type3) position counts."""
    table = {}
    with open(DATA_DIR / "error_type_positions.csv", newline="") as fh:
        for row in csv.DictReader(fh):
            table[int(row["radius"])] = (
                int(row["type0"]),
                int(row["type1"]),
                int(row["type3"]),
            )
    assert len(table) == 100
    return table


@pytest.fixture(scope="session")
def summary_table() -> list[dict[str, float]]:
    """Published 500x500 r=6 results: observed means and formula columns."""
    rows = []
    with open(DATA_DIR / "summary_table.csv", newline="") as fh:
        for row in csv.DictReader(fh):
            rows.append({k: float(v) for k, v in row.items()})
    assert len(rows) == 19
    return rows
