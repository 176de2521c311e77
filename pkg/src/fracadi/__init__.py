"""Solver for the two-dimensional Riesz space-fractional diffusion
equation: fractional powers of the fourth-order compact discrete
Laplacian in the sine eigenbasis, advanced by a Crank-Nicolson
Peaceman-Rachford ADI scheme, plus a convergence-study harness."""

from .adi import (
    StepReport,
    SteppingOperators,
    amplification_spectral_radius,
    factored_step,
    make_stepping_operators,
    operators_for,
    pr_step,
    solve,
    splitting_perturbation,
    step_report,
    unsplit_cn_step,
)
from .errors import (
    DimensionError,
    DivergenceError,
    InvalidGridError,
    NonFiniteFieldError,
    NonFiniteInputError,
    UndefinedRateError,
    UnsupportedOrderError,
)
from .harness import (
    ConvergenceReport,
    StudyRow,
    StudySpec,
    convergence_rate,
    emit_report,
    max_error,
    parse_report_csv,
    read_field_dump,
    run_study,
    write_field_dump,
)
from .problems import Problem, example1, example2, grid_for, riesz_constant, sample_field
from .spectral import (
    CompactPair,
    Field,
    FractionalOperator1D,
    Grid1D,
    Grid2D,
    apply_operator,
    build_grid,
    compact_eigenvalues,
    compact_pair,
    compact_second_derivative,
    inverse_sine_transform,
    make_operator,
    materialize_operator,
    sine_matrix,
    sine_transform,
    sine_transform_direct,
)

__version__ = "0.1.0"
