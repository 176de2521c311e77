"""Crank-Nicolson time stepping with Peaceman-Rachford direction sweeps.

One time step of size k advances

    du/dt = -[cx * Dx + cy * Dy] u + s

where Dx, Dy are the fractional powers built in `spectral`.  With
Sx = (k/2) cx Dx and Ty = (k/2) cy Dy, the factored Crank-Nicolson
scheme is

    (1 + Sx)(1 + Ty) u_new = (1 - Sx)(1 - Ty) u_old + (k/2)(s_old + s_new)

and splits into two one-dimensional sweeps with an intermediate field
kept in physical space.  Each sweep carries a quarter of the trapezoidal
source, (k/4)(s_old + s_new), so the composed sweeps reproduce the
factored scheme exactly; `factored_step` and `unsplit_cn_step` are
independent reference steppers for cross-checking.

Every operator here is diagonal in the tensor-product sine basis, so
sweep solves are exact mode-wise divisions rather than linear solves.
SteppingOperators are immutable and shareable; within one step the
row/column solves of a sweep are independent, while steps themselves are
strictly sequential.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionError, DivergenceError, NonFiniteFieldError
from .problems import Problem, sample_field
from .spectral import (
    Field,
    FractionalOperator1D,
    Grid2D,
    inverse_sine_transform,
    make_operator,
    sine_transform,
)

__all__ = [
    "SteppingOperators",
    "StepReport",
    "make_stepping_operators",
    "pr_step",
    "factored_step",
    "unsplit_cn_step",
    "amplification_spectral_radius",
    "splitting_perturbation",
    "step_report",
    "solve",
    "operators_for",
]


@dataclass(frozen=True)
class SteppingOperators:
    """Direction operators of one time step.

    sigma_x[i] = (k_t/2) * cx * lambda_i^(alpha/2) are the effective
    symbols of Sx (likewise sigma_y for Ty); both are >= 0, strictly
    positive when the coefficient is.
    """

    sx: FractionalOperator1D
    ty: FractionalOperator1D
    k_t: float
    sigma_x: np.ndarray
    sigma_y: np.ndarray


def make_stepping_operators(
    op_x: FractionalOperator1D, op_y: FractionalOperator1D, k_t: float
) -> SteppingOperators:
    """Fold the time step and diffusion coefficients into the symbols."""
    if not k_t > 0.0:
        raise ValueError(f"time step must be positive, got {k_t}")
    sig_x = 0.5 * k_t * op_x.coeff * op_x.symbols
    sig_y = 0.5 * k_t * op_y.coeff * op_y.symbols
    sig_x.flags.writeable = False
    sig_y.flags.writeable = False
    return SteppingOperators(sx=op_x, ty=op_y, k_t=float(k_t),
                             sigma_x=sig_x, sigma_y=sig_y)


@dataclass(frozen=True)
class StepReport:
    """Stability diagnostics of a stepping configuration."""

    spectral_radius_x: float
    spectral_radius_y: float
    splitting_perturbation_norm: float | None = None


def _check_shapes(ops: SteppingOperators, *fields: Field) -> tuple[int, int]:
    nx = ops.sx.grid.interior_count
    ny = ops.ty.grid.interior_count
    for f in fields:
        if f.values.shape != (nx, ny):
            raise DimensionError(
                f"field shape {f.values.shape} does not match operator "
                f"interior shape {(nx, ny)}"
            )
    return ops.sx.grid.cells, ops.ty.grid.cells


def _apply_sigma(values: np.ndarray, sigma: np.ndarray, cells: int, ax: int) -> np.ndarray:
    shape = [1, 1]
    shape[ax] = -1
    coef = sine_transform(values, cells, axis=ax) * sigma.reshape(shape)
    return inverse_sine_transform(coef, cells, axis=ax)


def _solve_one_plus(values: np.ndarray, sigma: np.ndarray, cells: int, ax: int) -> np.ndarray:
    shape = [1, 1]
    shape[ax] = -1
    coef = sine_transform(values, cells, axis=ax) / (1.0 + sigma.reshape(shape))
    return inverse_sine_transform(coef, cells, axis=ax)


def pr_step(state: Field, ops: SteppingOperators, src_n: Field, src_np1: Field) -> Field:
    """One Peaceman-Rachford step: x-implicit sweep to the intermediate
    field, then y-implicit sweep, each with source (k_t/4)(s_n + s_np1)."""
    mx, my = _check_shapes(ops, state, src_n, src_np1)
    f = 0.25 * ops.k_t * (src_n.values + src_np1.values)

    rhs = state.values - _apply_sigma(state.values, ops.sigma_y, my, 1) + f
    u_star = _solve_one_plus(rhs, ops.sigma_x, mx, 0)

    rhs = u_star - _apply_sigma(u_star, ops.sigma_x, mx, 0) + f
    return Field(_solve_one_plus(rhs, ops.sigma_y, my, 1))


def factored_step(state: Field, ops: SteppingOperators, src_n: Field, src_np1: Field) -> Field:
    """Reference stepper: the factored Crank-Nicolson scheme applied
    directly in the tensor-product sine basis."""
    mx, my = _check_shapes(ops, state, src_n, src_np1)
    sx = ops.sigma_x[:, None]
    sy = ops.sigma_y[None, :]

    u_hat = sine_transform(sine_transform(state.values, mx, axis=0), my, axis=1)
    f_hat = 0.5 * ops.k_t * sine_transform(
        sine_transform(src_n.values + src_np1.values, mx, axis=0), my, axis=1
    )
    out_hat = ((1.0 - sx) * (1.0 - sy) * u_hat + f_hat) / ((1.0 + sx) * (1.0 + sy))
    out = inverse_sine_transform(inverse_sine_transform(out_hat, mx, axis=0), my, axis=1)
    return Field(out)


def unsplit_cn_step(state: Field, ops: SteppingOperators, src_n: Field, src_np1: Field) -> Field:
    """Unsplit Crank-Nicolson step (no directional factorization); used
    to measure the splitting perturbation."""
    mx, my = _check_shapes(ops, state, src_n, src_np1)
    sig = ops.sigma_x[:, None] + ops.sigma_y[None, :]

    u_hat = sine_transform(sine_transform(state.values, mx, axis=0), my, axis=1)
    f_hat = 0.5 * ops.k_t * sine_transform(
        sine_transform(src_n.values + src_np1.values, mx, axis=0), my, axis=1
    )
    out_hat = ((1.0 - sig) * u_hat + f_hat) / (1.0 + sig)
    out = inverse_sine_transform(inverse_sine_transform(out_hat, mx, axis=0), my, axis=1)
    return Field(out)


def amplification_spectral_radius(ops: SteppingOperators) -> tuple[float, float]:
    """Spectral radii of (I+Sx)^{-1}(I-Sx) and (I+Ty)^{-1}(I-Ty):
    max_i |1 - sigma_i| / (1 + sigma_i) per direction.  Both are < 1
    whenever the corresponding coefficient is positive, which is what
    makes the scheme unconditionally stable."""
    rx = float(np.max(np.abs(1.0 - ops.sigma_x) / (1.0 + ops.sigma_x)))
    ry = float(np.max(np.abs(1.0 - ops.sigma_y) / (1.0 + ops.sigma_y)))
    return rx, ry


def splitting_perturbation(ops: SteppingOperators, after: Field, before: Field) -> Field:
    """Sx Ty (after - before): the term by which the factored scheme
    differs from unsplit Crank-Nicolson."""
    mx, my = _check_shapes(ops, after, before)
    diff = after.values - before.values
    out = _apply_sigma(_apply_sigma(diff, ops.sigma_y, my, 1), ops.sigma_x, mx, 0)
    return Field(out)


def step_report(
    ops: SteppingOperators, before: Field | None = None, after: Field | None = None
) -> StepReport:
    """Stability radii, plus the max-norm of the splitting perturbation
    when a step's before/after fields are supplied."""
    rx, ry = amplification_spectral_radius(ops)
    norm = None
    if before is not None and after is not None:
        norm = float(np.max(np.abs(splitting_perturbation(ops, after, before).values)))
    return StepReport(spectral_radius_x=rx, spectral_radius_y=ry,
                      splitting_perturbation_norm=norm)


_STEPPERS = {"pr": pr_step, "factored": factored_step, "unsplit": unsplit_cn_step}


def solve(problem: Problem, grid: Grid2D, time_steps: int, stepper: str = "pr") -> Field:
    """March the problem from its initial data to t = horizon in
    `time_steps` uniform steps and return the final interior field.

    The step size is horizon / time_steps; sources are sampled at both
    endpoints of every step.
    """
    if int(time_steps) != time_steps or time_steps < 1:
        raise ValueError(f"time_steps must be a positive integer, got {time_steps}")
    try:
        step_fn = _STEPPERS[stepper]
    except KeyError:
        raise ValueError(f"unknown stepper {stepper!r}, expected one of "
                         f"{sorted(_STEPPERS)}") from None

    k_t = problem.horizon / time_steps
    op_x = make_operator(grid.x, problem.alpha, problem.cx)
    op_y = make_operator(grid.y, problem.beta, problem.cy)
    ops = make_stepping_operators(op_x, op_y, k_t)

    u = sample_field(problem.initial, grid)
    s_prev = sample_field(problem.source, grid, 0.0)
    for n in range(int(time_steps)):
        s_next = sample_field(problem.source, grid, (n + 1) * k_t)
        try:
            u = step_fn(u, ops, s_prev, s_next)
        except NonFiniteFieldError as exc:
            raise DivergenceError(
                f"non-finite solution values after step {n + 1} of "
                f"{time_steps} (k_t={k_t:.6g})"
            ) from exc
        s_prev = s_next
    return u


def operators_for(problem: Problem, grid: Grid2D, k_t: float) -> SteppingOperators:
    """Stepping operators for `problem` on `grid` with time step `k_t`."""
    op_x = make_operator(grid.x, problem.alpha, problem.cx)
    op_y = make_operator(grid.y, problem.beta, problem.cy)
    return make_stepping_operators(op_x, op_y, k_t)
