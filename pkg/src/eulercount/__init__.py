"""Target counting on discrete sensor grids via Euler characteristic integrals.

Simulates disk-shaped targets on rectangular sensor grids, evaluates the
Euler characteristic integral by the duality formula, calibrates all
discretization-error constants by exhaustive enumeration, and applies or
inverts the first- and second-order bias formulas.
"""

from .calibrate import (
    CalibrationResult,
    calibrate_radius,
    classify_pair_offsets,
    corrected_b,
    error_type_counts,
    pair_integral_map,
    second_order_c,
)
from .euler import LevelContribution, euler_integral, level_contributions
from .grid import BitMask, Connectivity, HeightField, betti0, euler_char8, render_pgm
from .model import (
    ErrorEstimate,
    ModelParams,
    Order,
    asymptotic_integral,
    first_order_errors,
    invert_estimate,
    one_layer_H,
    predicted_integral,
    second_order_errors_closed,
    second_order_errors_recurrence,
    solve_linear_recurrence,
)
from .sim import SimReport, reproduce_summary_table, run_experiment, run_trial
from .targets import (
    DiskTemplate,
    FieldConfig,
    place_uniform,
    rasterize_disk,
    stamp,
    stamp_all,
    stamp_clipped,
)

__version__ = "0.1.0"
