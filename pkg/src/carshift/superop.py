"""Superoperator carriers, complete-positivity certificates, and the
perturbed-evolution integral equation.

Maps on operators are carried as ``D^2 x D^2`` matrices acting on
column-stacked operators.  The Choi matrix certifies complete positivity
(positive semidefinite iff the map is CP), ordering of maps is tested through
the Choi matrix of the difference, and the monotone iteration for the
integral equation

    perturbed_t = free_t + sum_bins  measure(bin) . iterate_{...}

is run in two variants differing in which time index feeds the iterate.
Superoperator work is kept to small mode counts; everything else goes
through scalar trace pairings.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .fock import FockSpace, fock_shift_matrix, mode_function, wedge_vector
from .grid import GridSpec
from .measure import TimeBin, measure_apply, measure_pairing
from .semigroup import (
    MonomialObservable,
    RankOneState,
    flow_apply,
    flow_of_shifts,
)

__all__ = [
    "vec",
    "unvec",
    "kraus_to_superop",
    "sandwich_superop",
    "superop_apply",
    "superop_to_choi",
    "choi_min_eig",
    "cp_dominates",
    "trace_dual",
    "shift_superop",
    "measure_superop",
    "measure_superop_heisenberg",
    "flow_superop",
    "PicardRun",
    "picard_run",
    "integral_equation_residual",
    "minimality_report",
]


def vec(x: np.ndarray) -> np.ndarray:
    """Column-stack a matrix into a vector."""
    return np.asarray(x).reshape(-1, order="F")


def unvec(v: np.ndarray) -> np.ndarray:
    d = int(round(np.sqrt(v.size)))
    return np.asarray(v).reshape((d, d), order="F")


def sandwich_superop(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Superoperator of ``x -> a x b``."""
    return np.kron(b.T, a)


def kraus_to_superop(kraus) -> np.ndarray:
    """Superoperator of ``rho -> sum_w w rho w†``."""
    ws = list(kraus)
    if not ws:
        raise ValueError("need at least one Kraus operator")
    return sum(sandwich_superop(w, w.conj().T) for w in ws)


def superop_apply(s: np.ndarray, x: np.ndarray) -> np.ndarray:
    return unvec(s @ vec(x))


def superop_to_choi(s: np.ndarray) -> np.ndarray:
    """Choi matrix ``sum_ij E_ij (x) S(E_ij)`` of a vec-basis superoperator."""
    d2 = s.shape[0]
    d = int(round(np.sqrt(d2)))
    t = s.reshape(d, d, d, d)  # axes (l, k, j, i): S[k + d l, i + d j]
    return t.transpose(3, 1, 2, 0).reshape(d2, d2)


def choi_min_eig(s: np.ndarray) -> float:
    """Smallest eigenvalue of the Hermitized Choi matrix of the map."""
    c = superop_to_choi(s)
    return float(np.linalg.eigvalsh(0.5 * (c + c.conj().T))[0])


def cp_dominates(a: np.ndarray, b: np.ndarray, tol: float = 1e-10):
    """Whether ``a - b`` is completely positive, with the witness eigenvalue."""
    if a.shape != b.shape:
        raise ValueError("superoperators must share a dimension")
    w = choi_min_eig(a - b)
    return w >= -tol, w


def _commutation_matrix(d: int) -> np.ndarray:
    k = np.zeros((d * d, d * d))
    for r in range(d):
        for c in range(d):
            k[r + d * c, c + d * r] = 1.0
    return k


def trace_dual(s: np.ndarray) -> np.ndarray:
    """Trace-pairing adjoint: ``Tr(T(rho) x) = Tr(rho T*(x))`` for all rho, x."""
    d = int(round(np.sqrt(s.shape[0])))
    k = _commutation_matrix(d)
    return k @ s.T @ k


def shift_superop(space: FockSpace, m: int) -> np.ndarray:
    """Heisenberg-side semigroup at grid time ``m`` as a superoperator."""
    s = fock_shift_matrix(space, m)
    return sandwich_superop(s, s.conj().T)


def _mode_state(spec: GridSpec, space: FockSpace, mask_i: int, mask_j: int) -> RankOneState:
    return RankOneState(
        [mode_function(spec, k) for k in space.modes_of(mask_i)],
        [mode_function(spec, k) for k in space.modes_of(mask_j)],
    )


def measure_superop(space: FockSpace, spec: GridSpec, tbin: TimeBin) -> np.ndarray:
    """Schrodinger-side bin map on matrix units, as a dense superoperator.

    Matrix units over the occupation basis are rank-one wedge pairs of mode
    functions, so the quadrature action extends to them linearly.
    """
    if not space.is_full:
        raise ValueError("superoperator carriers need the full basis")
    d = space.dim
    out = np.zeros((d * d, d * d), dtype=complex)
    for j_mask in range(d):
        for i_mask in range(d):
            state = _mode_state(spec, space, i_mask, j_mask)
            out[:, i_mask + d * j_mask] = vec(measure_apply(space, tbin, state))
    return out


def measure_superop_heisenberg(
    space: FockSpace, spec: GridSpec, tbin: TimeBin
) -> np.ndarray:
    return trace_dual(measure_superop(space, spec, tbin))


def _ordered_product_basis(space: FockSpace) -> np.ndarray:
    """Columns: vec of ``a†(modes S, ascending) a(modes T, ascending)``.

    Indexed by ``maskS + dim * maskT``; spans the full operator space.
    """
    d = space.dim
    cre = {}
    ann = {}
    from .fock import mode_matrix

    for k in range(space.num_modes):
        cre[k] = mode_matrix(space, k, "create")
        ann[k] = mode_matrix(space, k, "annihilate")
    cols = np.zeros((d * d, d * d), dtype=complex)
    eye = np.eye(d, dtype=complex)
    for mask_s in range(d):
        left = eye
        for k in space.modes_of(mask_s):
            left = left @ cre[k]
        for mask_t in range(d):
            op = left
            for k in space.modes_of(mask_t):
                op = op @ ann[k]
            cols[:, mask_s + d * mask_t] = vec(op)
    return cols


def flow_superop(space: FockSpace, m: int) -> np.ndarray:
    """Shift flow as a superoperator by linear extension on ordered products.

    The flow moves every mode index of an ordered creation/annihilation
    product up by ``m`` (dropping products that run off the grid) and fixes
    the identity; extending that assignment linearly over the product basis
    gives a well defined map on all operators that matches direct monomial
    assembly on compliantly supported arguments.
    """
    if not space.is_full:
        raise ValueError("superoperator carriers need the full basis")
    d = space.dim
    M = space.num_modes
    basis = _ordered_product_basis(space)
    image = np.zeros_like(basis)
    top = (1 << M) - (1 << (M - m)) if m else 0
    for mask_s in range(d):
        for mask_t in range(d):
            col = mask_s + d * mask_t
            if m == 0:
                image[:, col] = basis[:, col]
                continue
            if (mask_s & top) or (mask_t & top):
                continue  # a factor shifts off the grid; the image vanishes
            image[:, col] = basis[:, (mask_s << m) + d * (mask_t << m)]
    return image @ np.linalg.inv(basis)


@dataclass
class PicardRun:
    """Monotone iteration record for the integral equation."""

    variant: str
    times: list[int]
    iterates: list[np.ndarray]  # final iterate per time index
    monotone_eigs: list[list[float]] = field(default_factory=list)  # [step][time]
    unit_slacks: list[list[float]] = field(default_factory=list)

    @property
    def steps(self) -> int:
        return len(self.monotone_eigs)


def picard_run(
    space: FockSpace,
    spec: GridSpec,
    horizon: int,
    n_steps: int,
    variant: str = "convolution",
    measure_superops: list[np.ndarray] | None = None,
) -> PicardRun:
    """Iterate the perturbation equation from the free semigroup.

    ``variant="convolution"`` feeds the iterate at the convolved time
    ``t - s``; ``variant="paper_literal"`` feeds it at the bin time ``s``.
    Both start from the free semigroup and add the same bin maps, and both
    record a Choi eigenvalue certificate of step monotonicity plus the
    sub-unitality slack of ``iterate(identity)`` at every step.
    """
    if variant not in ("convolution", "paper_literal"):
        raise ValueError(f"unknown iteration variant {variant!r}")
    if horizon < 0 or horizon > space.num_modes:
        raise ValueError("horizon must fit the grid")
    d = space.dim
    times = list(range(horizon + 1))
    if measure_superops is None:
        measure_superops = [
            measure_superop_heisenberg(space, spec, TimeBin(s, s + 1))
            for s in range(horizon)
        ]
    if len(measure_superops) != horizon:
        raise ValueError("need one bin map per grid step of the horizon")
    free = [shift_superop(space, m) for m in times]
    current = [f.copy() for f in free]
    id_vec = vec(np.eye(d, dtype=complex))
    run = PicardRun(variant, times, current)
    for _ in range(n_steps):
        nxt = []
        for t in times:
            acc = free[t].copy()
            for s in range(t):
                src = current[s] if variant == "paper_literal" else current[t - s]
                acc = acc + measure_superops[s] @ src
            nxt.append(acc)
        eigs = []
        slacks = []
        for t in times:
            eigs.append(choi_min_eig(nxt[t] - current[t]))
            phi_id = unvec(nxt[t] @ id_vec)
            w = np.linalg.eigvalsh(0.5 * (phi_id + phi_id.conj().T))
            slacks.append(float(1.0 - w[-1]))
        run.monotone_eigs.append(eigs)
        run.unit_slacks.append(slacks)
        current = nxt
        run.iterates = current
    return run


def integral_equation_residual(
    space: FockSpace,
    m_t: int,
    state: RankOneState,
    mono: MonomialObservable,
    enforce_domains: bool = True,
) -> tuple[complex, float]:
    """Scalar-pairing defect of the perturbed-evolution integral equation.

    Evaluates ``Tr(rho flow_t(x)) - sum_bins Tr(bin(rho) flow_{t-s}(x))
    - Tr(rho free_t(x))`` over unit grid bins; first-order accurate in the
    spacing.  Returns ``(residual, scale)``.
    """
    if enforce_domains:
        from .semigroup import _require_compliant

        _require_compliant(state, mono)
    if m_t < 0 or m_t > space.num_modes:
        raise ValueError("time index outside the grid")
    kf = wedge_vector(space, state.kets)
    kg = wedge_vector(space, state.bras)

    term_flow = np.vdot(kg, flow_apply(space, m_t, mono, kf))

    term_bins = 0.0 + 0.0j
    for s in range(m_t):
        term_bins += measure_pairing(
            space,
            TimeBin(s, s + 1),
            state,
            lambda v, ms=m_t - s: flow_apply(space, ms, mono, v),
        )

    from .fock import shift_fock_vector

    s_kf = shift_fock_vector(space, m_t, kf, adjoint=True)
    s_kg = shift_fock_vector(space, m_t, kg, adjoint=True)
    term_free = np.vdot(s_kg, flow_apply(space, 0, mono, s_kf))

    residual = term_flow - term_bins - term_free
    scale = abs(term_flow) + abs(term_bins) + abs(term_free)
    return complex(residual), float(scale)


def minimality_report(
    space: FockSpace,
    spec: GridSpec,
    run: PicardRun,
    pairs: list[tuple[RankOneState, MonomialObservable]],
    tol: float = 1e-10,
) -> dict:
    """Compare the iteration limit against the shift flow.

    Reports, per time index: the largest pairing gap over the supplied test
    pairs, the Choi floor of (flow - limit) for the dominance check, and the
    per-step monotonicity record of the run itself.
    """
    gaps = []
    choi_floors = []
    for t in run.times:
        flow_s = flow_superop(space, t)
        diff = flow_s - run.iterates[t]
        choi_floors.append(choi_min_eig(diff))
        worst = 0.0
        for state, mono in pairs:
            x = flow_of_shifts(space, 0, mono)
            rho = state.as_operator(space)
            gap = abs(np.trace(rho @ superop_apply(diff, x)))
            worst = max(worst, gap)
        gaps.append(worst)
    monotone_ok = all(
        e >= -tol for step in run.monotone_eigs for e in step
    )
    unit_ok = all(s >= -tol for step in run.unit_slacks for s in step)
    return {
        "variant": run.variant,
        "pairing_gaps": gaps,
        "choi_floors": choi_floors,
        "monotone_ok": monotone_ok,
        "unital_bound_ok": unit_ok,
    }
