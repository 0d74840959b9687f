"""Seeded Monte Carlo harness reproducing the observed-value experiments.

Each trial places n disks uniformly, stamps them, and takes the Euler
characteristic integral of the resulting field. Trial t of an experiment
draws its generator from SeedSequence((master_seed, t)), so results do not
depend on scheduling or worker count; aggregation uses exact integer sums.
"""

from __future__ import annotations

import io
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace

import numpy as np

from . import calibrate as _calibrate
from .euler import euler_integral
from .model import ModelParams, Order, predicted_integral
from .targets import FieldConfig, place_uniform, rasterize_disk, stamp_all

__all__ = [
    "SimReport",
    "run_trial",
    "run_experiment",
    "reproduce_summary_table",
]


@dataclass(frozen=True)
class SimReport:
    """Monte Carlo statistics for one configuration, with formula predictions."""

    config: FieldConfig
    trials: int
    mean_integral: float
    std_dev: float
    first_order_pred: float
    second_order_pred_c2: float | None
    second_order_pred_cb: float


def run_trial(config: FieldConfig, trial_seed) -> int:
    """Integral of one simulated field; deterministic in (config, trial_seed)."""
    rng = np.random.default_rng(trial_seed)
    field = config.empty_field()
    template = rasterize_disk(config.radius)
    centers = place_uniform(config, rng)
    stamp_all(field, template, centers)
    return euler_integral(field)


def _trial_at(config: FieldConfig, master_seed: int, index: int) -> int:
    return run_trial(config, np.random.SeedSequence((master_seed, index)))


def _run_trials(config: FieldConfig, trials: int, master_seed: int, workers: int) -> list[int]:
    if workers <= 1:
        return [_trial_at(config, master_seed, t) for t in range(trials)]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(
            pool.map(
                _trial_at,
                [config] * trials,
                [master_seed] * trials,
                range(trials),
                chunksize=max(1, trials // (4 * workers)),
            )
        )


def _model_constants(config: FieldConfig, b_corr: float | None, c2: float | None):
    if b_corr is None:
        b_corr = _calibrate.corrected_b(config.radius, config.length, config.width)
    if c2 is None:
        type0, _, type3 = _calibrate.error_type_counts(config.radius)
        c2 = _calibrate.second_order_c(config.radius) if type0 == 0 and type3 == 0 else None
    return b_corr, c2


def run_experiment(
    config: FieldConfig,
    trials: int,
    master_seed: int | None = None,
    workers: int = 1,
    b_corr: float | None = None,
    c2: float | None = None,
) -> SimReport:
    """Mean and sample standard deviation over seeded trials, plus predictions.

    b_corr and c2 may be passed to reuse calibration constants; otherwise
    they are computed (c2 only exists for radii without type-0/3 positions).
    """
    if trials < 1:
        raise ValueError("need at least one trial")
    if master_seed is None:
        master_seed = config.seed
    values = _run_trials(config, trials, master_seed, workers)
    total = sum(values)
    total_sq = sum(v * v for v in values)
    mean = total / trials
    var = (total_sq - total * total / trials) / (trials - 1) if trials > 1 else 0.0
    b_corr, c2 = _model_constants(config, b_corr, c2)
    p_cb = ModelParams.for_field(config.length, config.width, config.radius, b_corr, b_corr)
    n = config.n
    return SimReport(
        config=config,
        trials=trials,
        mean_integral=mean,
        std_dev=max(var, 0.0) ** 0.5,
        first_order_pred=predicted_integral(n, p_cb, Order.FIRST),
        second_order_pred_c2=(
            predicted_integral(
                n,
                ModelParams.for_field(config.length, config.width, config.radius, b_corr, c2),
                Order.SECOND_CLOSED,
            )
            if c2 is not None
            else None
        ),
        second_order_pred_cb=predicted_integral(n, p_cb, Order.SECOND_CLOSED),
    )


def reproduce_summary_table(
    n_values: list[int],
    config: FieldConfig,
    trials: int,
    master_seed: int | None = None,
    workers: int = 1,
) -> str:
    """CSV with one row per n: observed mean next to the three formula columns.

    Calibration constants are computed once and shared across rows. Output
    is byte-identical for identical (config, n_values, trials, master_seed),
    regardless of worker count.
    """
    b_corr, c2 = _model_constants(config, None, None)
    out = io.StringIO()
    out.write("n,observed,first_order,second_c2,second_cb\n")
    for n in n_values:
        report = run_experiment(
            replace(config, n=n), trials, master_seed, workers, b_corr=b_corr, c2=c2
        )
        c2_text = "" if report.second_order_pred_c2 is None else f"{report.second_order_pred_c2:.6f}"
        out.write(
            f"{n},{report.mean_integral:.6f},{report.first_order_pred:.6f},"
            f"{c2_text},{report.second_order_pred_cb:.6f}\n"
        )
    return out.getvalue()
