"""Problem definitions: a generic container plus two manufactured
benchmarks with closed-form sources and exact solutions.

Both benchmarks drive

    du/dt = cx * d^alpha u / d|x|^alpha + cy * d^beta u / d|y|^beta + s

on a rectangle with homogeneous Dirichlet boundaries.  Their source
terms are transcribed sign-for-sign from the published closed forms,
built from Gamma-function evaluations and the Riesz constant
1 / (2 cos(pi gamma / 2)), which is negative for gamma in (1, 2).
Problem callables must be pure and re-entrant; they are sampled
concurrently.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from .errors import NonFiniteInputError
from .spectral import Field, Grid2D, build_grid

__all__ = [
    "Problem",
    "example1",
    "example2",
    "sample_field",
    "grid_for",
    "riesz_constant",
]


def riesz_constant(gamma: float) -> float:
    """1 / (2 cos(pi gamma / 2)); negative for gamma in (1, 2)."""
    return 1.0 / (2.0 * math.cos(math.pi * gamma / 2.0))


@dataclass(frozen=True)
class Problem:
    """A fractional diffusion problem on a rectangle.

    domain is (x_lower, x_upper, y_lower, y_upper).  source(x, y, t),
    initial(x, y) and the optional exact(x, y, t) should accept numpy
    arrays; plain scalar callables are tolerated but slower.  The
    initial data must vanish on the boundary, which is checked by
    sampling boundary nodes at construction.
    """

    alpha: float
    beta: float
    cx: float
    cy: float
    domain: tuple[float, float, float, float]
    horizon: float
    source: Callable
    initial: Callable
    exact: Optional[Callable] = None

    def __post_init__(self):
        if not (1.0 < self.alpha <= 2.0 and 1.0 < self.beta <= 2.0):
            raise ValueError(
                f"fractional orders must lie in (1, 2], got "
                f"alpha={self.alpha}, beta={self.beta}"
            )
        if self.cx < 0.0 or self.cy < 0.0:
            raise ValueError("diffusion coefficients must be >= 0")
        x0, x1, y0, y1 = self.domain
        if not (x1 > x0 and y1 > y0):
            raise ValueError(f"degenerate domain {self.domain}")
        if not self.horizon > 0.0:
            raise ValueError(f"horizon must be positive, got {self.horizon}")
        _check_boundary_compatibility(self)


def _check_boundary_compatibility(problem: Problem, samples: int = 9) -> None:
    x0, x1, y0, y1 = problem.domain
    xs = np.linspace(x0, x1, samples)
    ys = np.linspace(y0, y1, samples)
    edges = [
        (xs, np.full(samples, y0)),
        (xs, np.full(samples, y1)),
        (np.full(samples, x0), ys),
        (np.full(samples, x1), ys),
    ]
    xi = np.linspace(x0, x1, samples + 2)[1:-1]
    yi = np.linspace(y0, y1, samples + 2)[1:-1]
    scale = 1.0 + float(np.max(np.abs(_evaluate(problem.initial,
                                                *np.meshgrid(xi, yi, indexing="ij")))))
    for ex, ey in edges:
        vals = _evaluate(problem.initial, ex, ey)
        worst = float(np.max(np.abs(vals)))
        if worst > 1e-9 * scale:
            raise ValueError(
                f"initial data does not vanish on the boundary "
                f"(|initial| up to {worst:.3e} there)"
            )


def _evaluate(fn: Callable, x: np.ndarray, y: np.ndarray, t: float | None = None) -> np.ndarray:
    args = (x, y) if t is None else (x, y, t)
    try:
        out = np.asarray(fn(*args), dtype=float)
    except (TypeError, ValueError):
        out = np.vectorize(lambda *a: float(fn(*a)))(*args)
    if out.shape != x.shape:
        out = np.broadcast_to(out, x.shape).astype(float)
    return out


def sample_field(fn: Callable, grid: Grid2D, t: float | None = None) -> Field:
    """Evaluate a callable at all interior nodes of `grid` (at time `t`
    when given) and return the resulting field."""
    xs = grid.x.interior_nodes()
    ys = grid.y.interior_nodes()
    x, y = np.meshgrid(xs, ys, indexing="ij")
    vals = _evaluate(fn, x, y, t)
    if not np.all(np.isfinite(vals)):
        i, j = np.argwhere(~np.isfinite(vals))[0]
        raise NonFiniteInputError(
            f"callable produced a non-finite value at node "
            f"(x={xs[i]!r}, y={ys[j]!r})" + ("" if t is None else f", t={t!r}")
        )
    return Field(vals)


def grid_for(problem: Problem, mx: int, my: int) -> Grid2D:
    """Grid covering the problem domain with mx-by-my cells."""
    x0, x1, y0, y1 = problem.domain
    return Grid2D(build_grid(x0, x1, mx), build_grid(y0, y1, my))


def example1(alpha: float = 1.8, beta: float = 1.6) -> Problem:
    """Benchmark on the unit square, horizon T = e: exact solution
    x y (1-x)(1-y) sin(pi t), zero initial data, cx = cy = 0.25."""
    cx = cy = 0.25
    va = riesz_constant(alpha)
    vb = riesz_constant(beta)
    g2a, g3a = math.gamma(2.0 - alpha), math.gamma(3.0 - alpha)
    g2b, g3b = math.gamma(2.0 - beta), math.gamma(3.0 - beta)

    def exact(x, y, t):
        return x * y * (1.0 - x) * (1.0 - y) * np.sin(np.pi * t)

    def initial(x, y):
        return np.zeros_like(np.asarray(x, dtype=float) * y)

    def source(x, y, t):
        sx = (cx * y * (1.0 - y) * np.sin(np.pi * t) * va) * (
            (x ** (1.0 - alpha) + (1.0 - x) ** (1.0 - alpha)) / g2a
            - 2.0 * (x ** (2.0 - alpha) + (1.0 - x) ** (2.0 - alpha)) / g3a
        )
        sy = (cy * x * (1.0 - x) * np.sin(np.pi * t) * vb) * (
            (y ** (1.0 - beta) + (1.0 - y) ** (1.0 - beta)) / g2b
            - 2.0 * (y ** (2.0 - beta) + (1.0 - y) ** (2.0 - beta)) / g3b
        )
        return sx + sy + np.pi * x * y * (1.0 - x) * (1.0 - y) * np.cos(np.pi * t)

    return Problem(alpha=alpha, beta=beta, cx=cx, cy=cy,
                   domain=(0.0, 1.0, 0.0, 1.0), horizon=math.e,
                   source=source, initial=initial, exact=exact)


def example2(alpha: float = 1.8, beta: float = 1.6) -> Problem:
    """Benchmark on (0, pi)^2, horizon T = 2: exact solution
    x^2 y^2 (pi-x)(pi-y) e^{-t}, cx = cy = 0.25."""
    cx = cy = 0.25
    va = riesz_constant(alpha)
    vb = riesz_constant(beta)
    g3a, g4a = math.gamma(3.0 - alpha), math.gamma(4.0 - alpha)
    g3b, g4b = math.gamma(3.0 - beta), math.gamma(4.0 - beta)
    pi = math.pi

    def exact(x, y, t):
        return x ** 2 * y ** 2 * (pi - x) * (pi - y) * np.exp(-t)

    def initial(x, y):
        return x ** 2 * y ** 2 * (pi - x) * (pi - y)

    def source(x, y, t):
        sx = (cx * y ** 2 * (pi - y) * np.exp(-t) * va) * (
            2.0 * pi * (x ** (2.0 - alpha) + (pi - x) ** (2.0 - alpha)) / g3a
            - 6.0 * (x ** (3.0 - alpha) + (pi - x) ** (3.0 - alpha)) / g4a
        )
        sy = (cy * x ** 2 * (pi - x) * np.exp(-t) * vb) * (
            2.0 * pi * (y ** (2.0 - beta) + (pi - y) ** (2.0 - beta)) / g3b
            - 6.0 * (y ** (3.0 - beta) + (pi - y) ** (3.0 - beta)) / g4b
        )
        return sx + sy - x ** 2 * y ** 2 * (pi - x) * (pi - y) * np.exp(-t)

    return Problem(alpha=alpha, beta=beta, cx=cx, cy=cy,
                   domain=(0.0, pi, 0.0, pi), horizon=2.0,
                   source=source, initial=initial, exact=exact)
