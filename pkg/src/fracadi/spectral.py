"""Grids, the compact second-derivative operator, sine transforms, and
fractional powers of the compact discrete Laplacian.

The building block is the fourth-order compact approximation of the 1D
second derivative on a uniform grid with homogeneous Dirichlet data.
Writing delta^2 for the three-point central difference, the operator
(1/h^2) delta^2 / (1 + delta^2/12) is realised by the matrix pair
A = (h^2/12) tridiag(1, 10, 1) and B = tridiag(1, -2, 1): the discrete
derivative w of v solves A w = B v.  The matrix -A^{-1} B is symmetric
positive definite with eigenvalues

    lambda_i = 12 sin^2(i pi / 2M) / (h^2 (3 - sin^2(i pi / 2M)))

and eigenvectors sin(i j pi / M), the type-I discrete sine basis.  A
fractional power of the operator is therefore the same basis with the
eigenvalues raised to the power, which is how the fractional diffusion
operators here are built and applied.  Fractional powers are never taken
through matrix functions, only through eigenvalue powers.

All types in this module are immutable after construction and safe to
share across concurrent workers; transforms over independent slices may
run in parallel.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.fft import dst
from scipy.linalg import solve_banded

from .errors import (
    DimensionError,
    InvalidGridError,
    NonFiniteFieldError,
    UnsupportedOrderError,
)

__all__ = [
    "Grid1D",
    "Grid2D",
    "CompactPair",
    "FractionalOperator1D",
    "Field",
    "build_grid",
    "compact_eigenvalues",
    "compact_pair",
    "compact_second_derivative",
    "sine_matrix",
    "sine_transform",
    "sine_transform_direct",
    "inverse_sine_transform",
    "make_operator",
    "apply_operator",
    "materialize_operator",
]


@dataclass(frozen=True)
class Grid1D:
    """Uniform 1D mesh on [lower, upper] with `cells` intervals."""

    lower: float
    upper: float
    cells: int

    def __post_init__(self):
        if not (np.isfinite(self.lower) and np.isfinite(self.upper)):
            raise InvalidGridError("grid bounds must be finite")
        if not self.upper > self.lower:
            raise InvalidGridError(
                f"degenerate interval [{self.lower}, {self.upper}]"
            )
        if int(self.cells) != self.cells or self.cells < 2:
            raise InvalidGridError(
                f"need at least 2 cells for an interior point, got {self.cells}"
            )

    @property
    def step(self) -> float:
        return (self.upper - self.lower) / self.cells

    @property
    def interior_count(self) -> int:
        return self.cells - 1

    def node(self, i: int) -> float:
        return self.lower + i * self.step

    def interior_nodes(self) -> np.ndarray:
        return self.lower + self.step * np.arange(1, self.cells)


def build_grid(lower: float, upper: float, cells: int) -> Grid1D:
    """Construct a validated uniform grid with `cells` intervals."""
    return Grid1D(lower, upper, int(cells))


@dataclass(frozen=True)
class Grid2D:
    """Tensor-product mesh: independent uniform grids per direction."""

    x: Grid1D
    y: Grid1D

    @property
    def interior_shape(self) -> tuple[int, int]:
        return (self.x.interior_count, self.y.interior_count)


@dataclass(frozen=True)
class Field:
    """Interior nodal values u[i, j], i over x nodes, j over y nodes.

    Construction copies nothing but validates: values must be a finite
    2D array.  Treat instances as immutable; mutation is confined to one
    owner at a time.
    """

    values: np.ndarray

    def __post_init__(self):
        vals = np.asarray(self.values, dtype=float)
        if vals.ndim != 2:
            raise DimensionError(f"field must be 2D, got shape {vals.shape}")
        if not np.all(np.isfinite(vals)):
            raise NonFiniteFieldError("field contains non-finite entries")
        object.__setattr__(self, "values", vals)

    @property
    def nx(self) -> int:
        return self.values.shape[0]

    @property
    def ny(self) -> int:
        return self.values.shape[1]

    @classmethod
    def zeros(cls, nx: int, ny: int) -> "Field":
        return cls(np.zeros((nx, ny)))


@dataclass(frozen=True)
class CompactPair:
    """Stencil coefficients (sub, main, super) of the compact pair
    A = (h^2/12) tridiag(1, 10, 1) and B = tridiag(1, -2, 1)."""

    a_diag: tuple[float, float, float]
    b_diag: tuple[float, float, float]
    order: int

    def a_matrix(self) -> np.ndarray:
        return _tridiag(self.a_diag, self.order)

    def b_matrix(self) -> np.ndarray:
        return _tridiag(self.b_diag, self.order)


def _tridiag(coeffs, n: int) -> np.ndarray:
    lo, mid, up = coeffs
    out = mid * np.eye(n)
    idx = np.arange(n - 1)
    out[idx + 1, idx] = lo
    out[idx, idx + 1] = up
    return out


def compact_pair(grid: Grid1D) -> CompactPair:
    """The (A, B) matrix pair of the compact scheme on `grid`."""
    s = grid.step ** 2 / 12.0
    return CompactPair(
        a_diag=(s, 10.0 * s, s),
        b_diag=(1.0, -2.0, 1.0),
        order=grid.interior_count,
    )


def compact_second_derivative(pair: CompactPair, values: np.ndarray) -> np.ndarray:
    """Fourth-order second derivative: solve A w = B v with zero ghost
    values outside the interior (homogeneous Dirichlet closure)."""
    v = np.asarray(values, dtype=float)
    if v.shape != (pair.order,):
        raise DimensionError(
            f"expected vector of length {pair.order}, got shape {v.shape}"
        )
    bl, bm, bu = pair.b_diag
    rhs = bm * v
    rhs[1:] += bl * v[:-1]
    rhs[:-1] += bu * v[1:]
    al, am, au = pair.a_diag
    n = pair.order
    ab = np.zeros((3, n))
    ab[0, 1:] = au
    ab[1, :] = am
    ab[2, :-1] = al
    return solve_banded((1, 1), ab, rhs)


def compact_eigenvalues(grid: Grid1D) -> np.ndarray:
    """Eigenvalues of -A^{-1}B on `grid`, ascending in the mode index."""
    m = grid.cells
    i = np.arange(1, m)
    s2 = np.sin(i * np.pi / (2.0 * m)) ** 2
    return 12.0 * s2 / (grid.step ** 2 * (3.0 - s2))


def sine_matrix(cells: int) -> np.ndarray:
    """DST-I basis matrix P with entries sin(i j pi / M); symmetric, and
    P^{-1} = (2/M) P by orthogonality."""
    i = np.arange(1, cells)
    return np.sin(np.outer(i, i) * (np.pi / cells))


def sine_transform(values: np.ndarray, cells: int, axis: int = -1) -> np.ndarray:
    """Type-I discrete sine transform along `axis`:

        out_k = sum_{i=1}^{M-1} values_i sin(i k pi / M)

    Applying the transform twice multiplies by M/2, so the inverse is
    (2/M) times the forward transform.  FFT-backed; matches the direct
    summation of `sine_transform_direct` to round-off.
    """
    v = np.asarray(values, dtype=float)
    if v.shape[axis] != cells - 1:
        raise DimensionError(
            f"expected length {cells - 1} along axis {axis}, got {v.shape[axis]}"
        )
    return dst(v, type=1, axis=axis) / 2.0


def sine_transform_direct(values: np.ndarray, cells: int, axis: int = -1) -> np.ndarray:
    """O(M^2) summation form of `sine_transform`; reference path."""
    v = np.asarray(values, dtype=float)
    if v.shape[axis] != cells - 1:
        raise DimensionError(
            f"expected length {cells - 1} along axis {axis}, got {v.shape[axis]}"
        )
    p = sine_matrix(cells)
    out = np.tensordot(p, v, axes=([1], [axis % v.ndim]))
    return np.moveaxis(out, 0, axis % v.ndim)


def inverse_sine_transform(values: np.ndarray, cells: int, axis: int = -1) -> np.ndarray:
    """Inverse of `sine_transform`: (2/M) times the forward transform."""
    return sine_transform(values, cells, axis=axis) * (2.0 / cells)


@dataclass(frozen=True)
class FractionalOperator1D:
    """Fractional power of the compact Laplacian in one direction.

    `symbols` holds lambda_i^(gamma/2); the operator acts on a slice by
    sine transform, mode-wise multiplication and inverse transform.
    `coeff` is the diffusion coefficient carried for the time stepper;
    it is not folded into `symbols`.
    """

    grid: Grid1D
    gamma: float
    coeff: float
    symbols: np.ndarray


def make_operator(grid: Grid1D, gamma: float, coeff: float) -> FractionalOperator1D:
    """Build the order-`gamma` fractional operator on `grid`."""
    if not 1.0 < gamma <= 2.0:
        raise UnsupportedOrderError(
            f"fractional order must lie in (1, 2], got {gamma}"
        )
    if coeff < 0.0:
        raise ValueError(f"diffusion coefficient must be >= 0, got {coeff}")
    symbols = compact_eigenvalues(grid) ** (gamma / 2.0)
    symbols.flags.writeable = False
    return FractionalOperator1D(grid=grid, gamma=float(gamma), coeff=float(coeff),
                                symbols=symbols)


_AXES = {"x": 0, "y": 1}


def apply_operator(op: FractionalOperator1D, field: Field, axis: str) -> Field:
    """Apply the fractional operator (without its coefficient) to every
    1D slice of `field` along `axis`."""
    try:
        ax = _AXES[axis]
    except KeyError:
        raise DimensionError(f"axis must be 'x' or 'y', got {axis!r}") from None
    m = op.grid.cells
    if field.values.shape[ax] != op.grid.interior_count:
        raise DimensionError(
            f"field extent {field.values.shape[ax]} along {axis} does not "
            f"match operator interior count {op.grid.interior_count}"
        )
    shape = [1, 1]
    shape[ax] = -1
    coef = sine_transform(field.values, m, axis=ax) * op.symbols.reshape(shape)
    return Field(inverse_sine_transform(coef, m, axis=ax))


def materialize_operator(op: FractionalOperator1D) -> np.ndarray:
    """Dense matrix P diag(symbols) P^{-1} of the operator (coefficient
    and time-step scalings are the caller's business).  Symmetric
    positive definite."""
    p = sine_matrix(op.grid.cells)
    return (2.0 / op.grid.cells) * ((p * op.symbols) @ p)
