"""Seeded random test data for the verification suites.

Every generator takes an explicit :class:`numpy.random.Generator`, so a
fixed seed reproduces the entire suite input stream byte for byte.
"""

from __future__ import annotations

import numpy as np

from .grid import GridFunction, GridSpec, trailing_zero_cells
from .semigroup import MonomialObservable, RankOneState

__all__ = [
    "suite_rng",
    "random_grid_function",
    "random_rank_one",
    "random_monomial",
    "random_positive_operator",
    "random_hermitian",
    "random_contraction",
]

# fixed per-stream offsets so suites draw independent, reproducible data
_STREAM_KEYS = {
    "car_algebra": 1,
    "theorem1": 2,
    "measure": 3,
    "picard": 4,
    "theorem2": 5,
    "no_event": 6,
    "sweep": 7,
}


def suite_rng(seed: int, stream: str) -> np.random.Generator:
    key = _STREAM_KEYS.get(stream)
    if key is None:
        raise ValueError(f"unknown rng stream {stream!r}")
    return np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(key,)))


def random_grid_function(
    rng: np.random.Generator,
    spec: GridSpec,
    dstar: bool = False,
    keepout: int = 0,
    normalize: bool = True,
) -> GridFunction:
    """Random complex grid function vanishing on the trailing cells.

    ``dstar`` forces a zero at the origin; ``keepout`` zeroes that many extra
    cells before the trailing block (room for forward shifts).
    """
    M = spec.num_points
    vals = rng.standard_normal(M) + 1j * rng.standard_normal(M)
    cut = M - trailing_zero_cells(spec) - keepout
    if cut < 1:
        raise ValueError("keepout leaves no support")
    vals[cut:] = 0.0
    if dstar:
        vals[0] = 0.0
    f = GridFunction(spec, vals, domain="d_star" if dstar else "d")
    if normalize:
        node_norm = np.sqrt(spec.spacing * np.sum(np.abs(f.values) ** 2))
        if node_norm > 0:
            f = f.with_values(f.values / node_norm)
    return f


def random_rank_one(
    rng: np.random.Generator, spec: GridSpec, n: int, keepout: int = 0
) -> RankOneState:
    return RankOneState(
        [random_grid_function(rng, spec, keepout=keepout) for _ in range(n)],
        [random_grid_function(rng, spec, keepout=keepout) for _ in range(n)],
    )


def random_monomial(
    rng: np.random.Generator, spec: GridSpec, p: int, q: int, keepout: int = 0
) -> MonomialObservable:
    return MonomialObservable(
        [random_grid_function(rng, spec, dstar=True, keepout=keepout) for _ in range(p)],
        [random_grid_function(rng, spec, dstar=True, keepout=keepout) for _ in range(q)],
    )


def random_positive_operator(
    rng: np.random.Generator, dim: int, rank: int | None = None
) -> np.ndarray:
    """Random positive semidefinite operator with unit trace."""
    r = rank or dim
    a = rng.standard_normal((dim, r)) + 1j * rng.standard_normal((dim, r))
    rho = a @ a.conj().T
    return rho / np.trace(rho).real


def random_hermitian(rng: np.random.Generator, dim: int) -> np.ndarray:
    a = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    return 0.5 * (a + a.conj().T)


def random_contraction(rng: np.random.Generator, dim: int) -> np.ndarray:
    a = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    return a / (np.linalg.norm(a, 2) * (1.0 + rng.uniform(0.05, 0.5)))
