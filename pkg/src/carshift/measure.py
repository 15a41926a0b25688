"""Time-binned completely positive measure attached to the shift semigroup.

A bin ``[lo*h, hi*h)`` acts on a rank-one state through a left-endpoint
Riemann sum: at each node ``r`` inside the bin, every (ket slot, bra slot)
pair contributes its origin-shifted values ``f_j(r) conj(g_k(r))`` times the
Schrodinger-evolved remainder state, with alternating slot signs.  Because
the quadrature nodes are exactly the grid nodes, bins are literally disjoint
node sets: finite additivity and covariance under grid shifts hold with no
quadrature error.

The same bin also has a Kraus form: chop the bin into ``n`` chunks of width
``delta``, annihilate with the normalized chunk indicator after evolving to
the chunk start.  The chunk operators have pairwise orthogonal supports, so
the summed Kraus weight stays below one and the bin map never increases the
trace; at ``delta = h`` the Kraus sum reproduces the quadrature sum term by
term.  The unnormalized per-chunk weight operator is tracked separately: its
norm is bounded by the bin width.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .fock import (
    FockSpace,
    fock_shift_matrix,
    ladder_matrix,
    shift_fock_vector,
    wedge_vector,
)
from .grid import GridFunction, GridSpec
from .semigroup import RankOneState, boundary_perturbation

__all__ = [
    "TimeBin",
    "MeasureBin",
    "measure_apply",
    "measure_pairing",
    "kraus_bin",
    "kraus_weight_norm",
    "covariance_residual",
    "heisenberg_covariance_residual",
    "small_time_residual",
    "trace_norm",
]


@dataclass(frozen=True)
class TimeBin:
    """Half-open node interval ``[lo, hi)`` in grid-time units."""

    lo: int
    hi: int

    def __post_init__(self):
        if not 0 <= self.lo <= self.hi:
            raise ValueError("need 0 <= lo <= hi")

    @property
    def width(self) -> int:
        return self.hi - self.lo

    def shifted(self, m: int) -> "TimeBin":
        return TimeBin(self.lo + m, self.hi + m)


def _check_bin(space: FockSpace, tbin: TimeBin) -> None:
    if tbin.hi > space.num_modes:
        raise ValueError("time bin extends past the grid horizon")


def trace_norm(a: np.ndarray) -> float:
    return float(np.linalg.svd(a, compute_uv=False).sum())


def _slot_terms(state: RankOneState):
    """Nonvacuum slot data: (sign, f_values, g_values, ket wedge, bra wedge)."""
    fs, gs = state.kets, state.bras
    if not fs or not gs:
        return []
    terms = []
    for j, f in enumerate(fs):
        for k, g in enumerate(gs):
            terms.append((j, k, f.values, g.values))
    return terms


def measure_apply(space: FockSpace, tbin: TimeBin, state: RankOneState) -> np.ndarray:
    """Bin action on a rank-one state as a dense operator (left-endpoint sum)."""
    _check_bin(space, tbin)
    out = np.zeros((space.dim, space.dim), dtype=complex)
    fs, gs = state.kets, state.bras
    if not fs or not gs:
        return out
    h = fs[0].spec.spacing
    ket_wedges = [wedge_vector(space, fs[:j] + fs[j + 1 :]) for j in range(len(fs))]
    bra_wedges = [wedge_vector(space, gs[:k] + gs[k + 1 :]) for k in range(len(gs))]
    for r in range(tbin.lo, tbin.hi):
        for j, f in enumerate(fs):
            fval = f.values[r]
            if fval == 0:
                continue
            u = shift_fock_vector(space, r, ket_wedges[j], adjoint=True)
            for k, g in enumerate(gs):
                coef = (-1.0) ** (j + k) * h * fval * np.conj(g.values[r])
                if coef == 0:
                    continue
                v = shift_fock_vector(space, r, bra_wedges[k], adjoint=True)
                out += coef * np.outer(u, np.conj(v))
    return out


def measure_pairing(
    space: FockSpace,
    tbin: TimeBin,
    state: RankOneState,
    x,
) -> complex:
    """Trace pairing of the bin action with an observable.

    ``x`` is either a dense matrix or a callable applying the observable to a
    Fock vector; the pairing never materializes the bin action, so this also
    runs on particle-capped spaces.
    """
    _check_bin(space, tbin)
    fs, gs = state.kets, state.bras
    if not fs or not gs:
        return 0.0 + 0.0j
    apply_x = x if callable(x) else (lambda v: x @ v)
    h = fs[0].spec.spacing
    ket_wedges = [wedge_vector(space, fs[:j] + fs[j + 1 :]) for j in range(len(fs))]
    bra_wedges = [wedge_vector(space, gs[:k] + gs[k + 1 :]) for k in range(len(gs))]
    total = 0.0 + 0.0j
    for r in range(tbin.lo, tbin.hi):
        xu = [None] * len(fs)
        for j, f in enumerate(fs):
            if f.values[r] == 0:
                continue
            for k, g in enumerate(gs):
                coef = (-1.0) ** (j + k) * h * f.values[r] * np.conj(g.values[r])
                if coef == 0:
                    continue
                if xu[j] is None:
                    xu[j] = apply_x(
                        shift_fock_vector(space, r, ket_wedges[j], adjoint=True)
                    )
                v = shift_fock_vector(space, r, bra_wedges[k], adjoint=True)
                total += coef * np.vdot(v, xu[j])
    return complex(total)


@dataclass(frozen=True)
class MeasureBin:
    """A time bin together with an explicit (normalized) Kraus list."""

    tbin: TimeBin
    kraus: tuple
    meta: str

    def apply_operator(self, rho: np.ndarray) -> np.ndarray:
        out = np.zeros_like(rho)
        for w in self.kraus:
            out += w @ rho @ w.conj().T
        return out

    def apply_state(self, space: FockSpace, state: RankOneState) -> np.ndarray:
        return self.apply_operator(state.as_operator(space))


def _chunk_indicator(spec: GridSpec, cells: int) -> GridFunction:
    vals = np.zeros(spec.num_points, dtype=complex)
    vals[:cells] = 1.0
    return GridFunction(spec, vals, domain="d")


def kraus_bin(space: FockSpace, spec: GridSpec, tbin: TimeBin, n: int) -> MeasureBin:
    """Kraus chunk approximation of the bin with ``n`` equal chunks.

    Chunk ``j`` contributes ``delta**-0.5 a(chi_[0,delta)) S*_{lo + j delta}``
    with ``delta = width/n``; ``n`` must divide the bin width in grid cells.
    The normalization makes the chunk sum converge to the quadrature action
    at first order in ``1/n`` and reproduce it exactly at ``delta = h``.
    """
    _check_bin(space, tbin)
    if n < 1:
        raise ValueError("need at least one chunk")
    if tbin.width == 0:
        return MeasureBin(tbin, (), f"kraus_sum({n})")
    if tbin.width % n:
        raise ValueError("chunk count must divide the bin width")
    step = tbin.width // n
    delta = step * spec.spacing
    chi = _chunk_indicator(spec, step)
    a_chi = ladder_matrix(space, chi, "annihilate") / np.sqrt(delta)
    kraus = tuple(
        a_chi @ fock_shift_matrix(space, tbin.lo + j * step, adjoint=True)
        for j in range(n)
    )
    return MeasureBin(tbin, kraus, f"kraus_sum({n})")


def kraus_apply_state(
    space: FockSpace, spec: GridSpec, tbin: TimeBin, n: int, state: RankOneState
) -> np.ndarray:
    """Kraus chunk action on a rank-one state without dense chunk matrices.

    Same map as :func:`kraus_bin` followed by ``apply_state``, but each chunk
    operator is applied to the two wedge vectors directly, which keeps grid
    refinement studies affordable on particle-capped spaces.
    """
    from .fock import annihilate_function

    _check_bin(space, tbin)
    if tbin.width == 0 or n < 1:
        return np.zeros((space.dim, space.dim), dtype=complex)
    if tbin.width % n:
        raise ValueError("chunk count must divide the bin width")
    step = tbin.width // n
    delta = step * spec.spacing
    chi = _chunk_indicator(spec, step)
    kf = wedge_vector(space, state.kets)
    kg = wedge_vector(space, state.bras)
    out = np.zeros((space.dim, space.dim), dtype=complex)
    for j in range(n):
        r = tbin.lo + j * step
        u = annihilate_function(space, chi, shift_fock_vector(space, r, kf, adjoint=True))
        v = annihilate_function(space, chi, shift_fock_vector(space, r, kg, adjoint=True))
        out += np.outer(u, np.conj(v)) / delta
    return out


def kraus_weight_norm(space: FockSpace, spec: GridSpec, tbin: TimeBin, n: int) -> float:
    """Largest eigenvalue of the unnormalized chunk weight ``sum V_j* V_j``.

    Uses the raw chunk operators ``V_j = a(chi) S*``; each summand has norm
    ``delta`` and the total stays below the bin width.
    """
    _check_bin(space, tbin)
    if tbin.width == 0:
        return 0.0
    if tbin.width % n:
        raise ValueError("chunk count must divide the bin width")
    step = tbin.width // n
    delta = step * spec.spacing
    chi = _chunk_indicator(spec, step)
    a_chi = ladder_matrix(space, chi, "annihilate")
    q = np.zeros((space.dim, space.dim), dtype=complex)
    for j in range(n):
        v = a_chi @ fock_shift_matrix(space, tbin.lo + j * step, adjoint=True)
        q += v.conj().T @ v
    eigs = np.linalg.eigvalsh(0.5 * (q + q.conj().T))
    return float(eigs[-1])


def covariance_residual(
    space: FockSpace, r: int, tbin: TimeBin, state: RankOneState
) -> tuple[float, float]:
    """Trace-norm defect of shift covariance, with its scale.

    Compares the bin acting on the evolved state against the shifted bin
    acting on the original state; exact up to rounding because grid shifts
    map quadrature nodes onto each other bijectively.
    """
    if r < 0:
        raise ValueError("shift must be nonnegative")
    shifted_bin = tbin.shifted(r)
    _check_bin(space, shifted_bin)
    lhs = measure_apply(space, tbin, state.shifted_adjoint(r))
    rhs = measure_apply(space, shifted_bin, state)
    scale = trace_norm(lhs) + trace_norm(rhs)
    return trace_norm(lhs - rhs), scale


def heisenberg_covariance_residual(
    space: FockSpace, r: int, tbin: TimeBin, state: RankOneState, x: np.ndarray
) -> tuple[float, float]:
    """Covariance checked in the dual picture through trace pairings."""
    shifted_bin = tbin.shifted(r)
    _check_bin(space, shifted_bin)
    lhs = measure_pairing(space, tbin, state.shifted_adjoint(r), x)
    rhs = measure_pairing(space, shifted_bin, state, x)
    return abs(lhs - rhs), abs(lhs) + abs(rhs)


def small_time_residual(space: FockSpace, state: RankOneState, m: int) -> float:
    """Trace-norm distance of the time-averaged initial bin from the boundary map.

    Compares ``(1/t) M_*([0, t))`` against the boundary perturbation on the
    given state, ``t = m h``.  At ``m = 1`` the two agree exactly; the
    interesting regime is fixed ``m`` under simultaneous grid refinement.
    """
    if m < 1:
        raise ValueError("need at least one node in the bin")
    fns = state.functions()
    if not fns:
        return 0.0
    t = m * fns[0].spec.spacing
    avg = measure_apply(space, TimeBin(0, m), state) / t
    return trace_norm(avg - boundary_perturbation(space, state))
