"""Double-precision series for Hl and 2F1 and the cross-agreement driver."""
from ._kernels import HAVE_NUMBA, default_backend
from .series import (
    LogarithmicCase,
    NoConvergence,
    OutsideDisk,
    SeriesResult,
    gauss_2f1_series,
    gauss_coefficients,
    heun_coefficients,
    heun_series,
)
from .verify import (
    BranchHazard,
    ClassCheck,
    SampleInfeasible,
    VerificationReport,
    distinct_a_values,
    draw_is_safe,
    evaluate_many,
    evaluate_solution,
    mutate_q,
    pointwise_check,
    safe_draws,
    sample_points,
    solution_table,
    verify_all,
    verify_class,
)

__all__ = [name for name in dir() if not name.startswith("_")]
