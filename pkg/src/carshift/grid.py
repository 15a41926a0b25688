"""Uniform grid discretization of the half-line one-particle space.

Functions live on the nodes ``x_i = i*h`` for ``i = 0..M-1`` and the domain
is the truncated half-line ``[0, M*h)``.  The inner product carries the cell
weight ``h`` so that grid functions approximate square-integrable functions
on the half-line.  Shifts act by exact index translation, and the forward /
backward difference pair satisfies a summation-by-parts identity with no
quadrature error: the only surviving boundary terms are the values at the
origin and at the last node.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "GridSpec",
    "GridFunction",
    "inner_product",
    "norm",
    "shift_forward",
    "shift_adjoint",
    "shift_matrix",
    "diff_forward",
    "diff_backward_interior",
    "diff_forward_matrix",
    "diff_backward_matrix",
    "ibp_residual",
    "make_test_function",
    "trailing_zero_cells",
]


@dataclass(frozen=True)
class GridSpec:
    """Uniform grid with ``num_points`` nodes spaced ``h`` apart."""

    num_points: int
    spacing: float

    def __post_init__(self):
        if self.num_points < 4:
            raise ValueError("need at least 4 grid points")
        if not self.spacing > 0:
            raise ValueError("grid spacing must be positive")

    @property
    def x_max(self) -> float:
        return self.num_points * self.spacing

    @property
    def nodes(self) -> np.ndarray:
        return self.spacing * np.arange(self.num_points)


@dataclass(frozen=True)
class GridFunction:
    """Complex-valued function sampled on a :class:`GridSpec`.

    ``domain`` is an optional usage tag: ``"d"`` marks functions that may be
    nonzero at the origin, ``"d_star"`` marks functions required to vanish
    there.  The tag is advisory; operations that depend on the vanishing
    condition check the actual value.
    """

    spec: GridSpec
    values: np.ndarray
    domain: str | None = field(default=None, compare=False)

    def __post_init__(self):
        vals = np.asarray(self.values, dtype=complex)
        if vals.shape != (self.spec.num_points,):
            raise ValueError(
                f"expected {self.spec.num_points} values, got shape {vals.shape}"
            )
        if not np.all(np.isfinite(vals.view(float))):
            raise ValueError("grid function contains non-finite values")
        object.__setattr__(self, "values", vals)

    def with_values(self, values: np.ndarray) -> "GridFunction":
        return GridFunction(self.spec, values, self.domain)

    @property
    def at_origin(self) -> complex:
        return complex(self.values[0])

    def vanishes_at_origin(self, tol: float = 0.0) -> bool:
        return abs(self.values[0]) <= tol


def _check_same_spec(f: GridFunction, g: GridFunction) -> None:
    if f.spec != g.spec:
        raise ValueError("grid functions live on different grids")


def inner_product(f: GridFunction, g: GridFunction) -> complex:
    """Weighted inner product ``h * sum conj(f_i) g_i``, antilinear in ``f``."""
    _check_same_spec(f, g)
    return complex(f.spec.spacing * np.vdot(f.values, g.values))


def norm(f: GridFunction) -> float:
    return math.sqrt(abs(inner_product(f, f).real))


def shift_forward(f: GridFunction, m: int) -> GridFunction:
    """Right shift by ``m`` cells: ``out_i = f_{i-m}``, zero filled from the left."""
    if m < 0:
        raise ValueError("shift distance must be nonnegative")
    M = f.spec.num_points
    out = np.zeros(M, dtype=complex)
    if m < M:
        out[m:] = f.values[: M - m]
    return f.with_values(out)


def shift_adjoint(f: GridFunction, m: int) -> GridFunction:
    """Left shift by ``m`` cells: ``out_i = f_{i+m}``, zero filled from the right."""
    if m < 0:
        raise ValueError("shift distance must be nonnegative")
    M = f.spec.num_points
    out = np.zeros(M, dtype=complex)
    if m < M:
        out[: M - m] = f.values[m:]
    return f.with_values(out)


def shift_matrix(spec: GridSpec, m: int, adjoint: bool = False) -> np.ndarray:
    """Dense matrix of :func:`shift_forward` (or its adjoint) on ``spec``."""
    if m < 0:
        raise ValueError("shift distance must be nonnegative")
    M = spec.num_points
    S = np.zeros((M, M), dtype=complex)
    if m < M:
        idx = np.arange(M - m)
        S[idx + m, idx] = 1.0
    return S.conj().T if adjoint else S


def diff_forward(f: GridFunction) -> GridFunction:
    """Forward difference ``(f_{i+1} - f_i)/h``; last entry set to zero."""
    h = f.spec.spacing
    out = np.zeros_like(f.values)
    out[:-1] = (f.values[1:] - f.values[:-1]) / h
    return f.with_values(out)


def diff_backward_interior(g: GridFunction) -> GridFunction:
    """Backward difference ``(g_i - g_{i-1})/h``; first entry set to zero."""
    h = g.spec.spacing
    out = np.zeros_like(g.values)
    out[1:] = (g.values[1:] - g.values[:-1]) / h
    return g.with_values(out)


def diff_forward_matrix(spec: GridSpec) -> np.ndarray:
    M, h = spec.num_points, spec.spacing
    D = np.zeros((M, M), dtype=complex)
    idx = np.arange(M - 1)
    D[idx, idx] = -1.0 / h
    D[idx, idx + 1] = 1.0 / h
    return D


def diff_backward_matrix(spec: GridSpec) -> np.ndarray:
    M, h = spec.num_points, spec.spacing
    B = np.zeros((M, M), dtype=complex)
    idx = np.arange(1, M)
    B[idx, idx] = 1.0 / h
    B[idx, idx - 1] = -1.0 / h
    return B


def ibp_residual(f: GridFunction, g: GridFunction) -> complex:
    """Summation-by-parts defect; identically zero in exact arithmetic.

    ``<Df, g> + <f, Bg> + conj(f_0) g_0 - conj(f_{M-1}) g_{M-1} = 0``
    where ``D`` is the forward and ``B`` the backward-interior difference.
    """
    _check_same_spec(f, g)
    boundary = np.conj(f.values[0]) * g.values[0]
    edge = np.conj(f.values[-1]) * g.values[-1]
    return complex(
        inner_product(diff_forward(f), g)
        + inner_product(f, diff_backward_interior(g))
        + boundary
        - edge
    )


def trailing_zero_cells(spec: GridSpec) -> int:
    """Number of rightmost cells kept zero by all test functions."""
    return math.ceil(spec.num_points / 8)


def _mollifier(u: np.ndarray) -> np.ndarray:
    # smooth compactly supported bump: exp(-1/(1-u^2)) on |u| < 1
    out = np.zeros_like(u, dtype=float)
    inside = np.abs(u) < 1.0
    out[inside] = np.exp(-1.0 / (1.0 - u[inside] ** 2))
    return out


def make_test_function(
    spec: GridSpec,
    kind: str,
    center: float = 0.0,
    width: float | None = None,
    delta: float | None = None,
    slope: float = 1.0,
) -> GridFunction:
    """Construct a test function of the requested ``kind``.

    kinds:
      ``bump_D_d``     smooth bump; nonzero at the origin when ``center = 0``
      ``bump_D_dstar`` smooth bump vanishing at the origin (factor ``x``)
      ``ramp``         linear ramp ``slope * x``
      ``indicator``    characteristic function of ``[0, delta)``

    Every kind vanishes on the rightmost ``ceil(M/8)`` cells so the truncated
    right edge never contributes boundary terms.
    """
    M, h = spec.num_points, spec.spacing
    x = spec.nodes
    tail = trailing_zero_cells(spec)
    cut = M - tail

    if kind == "indicator":
        if delta is None or delta < 0:
            raise ValueError("indicator needs delta >= 0")
        n_on = int(math.floor(delta / h + 1e-12))
        if n_on > cut:
            raise ValueError("indicator support reaches the zeroed right edge")
        vals = np.zeros(M, dtype=complex)
        vals[:n_on] = 1.0
        return GridFunction(spec, vals, domain="d")

    if width is None:
        width = 0.25 * spec.x_max
    if width <= 0:
        raise ValueError("bump width must be positive")

    if kind == "bump_D_d":
        vals = _mollifier((x - center) / width).astype(complex)
        domain = "d"
    elif kind == "bump_D_dstar":
        vals = (x * _mollifier((x - center) / width)).astype(complex)
        vals[0] = 0.0
        domain = "d_star"
    elif kind == "ramp":
        vals = (slope * x).astype(complex)
        domain = "d"
    else:
        raise ValueError(f"unknown test function kind {kind!r}")

    vals[cut:] = 0.0
    return GridFunction(spec, vals, domain=domain)
