"""Shift semigroups on the Fock space and their perturbation at the origin.

Grid times are integer multiples of the spacing, so both the Heisenberg-side
semigroup (conjugation by the lifted shift) and its Schrodinger-side
counterpart are exact index maps and the semigroup laws hold with no error.

The generator acts on rank-one operators built from wedge vectors.  On the
ket side it applies the lifted forward difference, on the bra side the lifted
backward difference: the two are adjoint to each other only up to the value
at the origin, and that defect is exactly what the boundary perturbation
restores.  With this pairing the generator duality identity

    Tr((L + Delta)(|f><g|) x) = Tr(|f><g| Lflow(x))

holds to machine precision for compliant inputs, where ``Lflow`` applies the
negated backward difference across annihilator slots and the negated forward
difference across creator slots of the monomial observable ``x``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .fock import (
    FockSpace,
    apply_monomial,
    derivation_wedge_sum,
    fock_shift_matrix,
    ladder_matrix,
    shift_fock_vector,
    wedge_vector,
)
from .grid import (
    GridFunction,
    GridSpec,
    diff_backward_matrix,
    diff_forward_matrix,
    shift_adjoint,
    shift_forward,
)

__all__ = [
    "DomainError",
    "MonomialObservable",
    "RankOneState",
    "heisenberg_apply",
    "schrodinger_apply",
    "schrodinger_state",
    "flow_of_shifts",
    "flow_apply",
    "generator_action",
    "boundary_perturbation",
    "generator_duality_residual",
    "SCHEMES",
]


class DomainError(ValueError):
    """An operation refused inputs violating its domain hypotheses."""


@dataclass(frozen=True)
class MonomialObservable:
    """Observable ``a(h_1)..a(h_p) a†(e_1)..a†(e_q)``; empty lists give I."""

    annihilators: list[GridFunction] = field(default_factory=list)
    creators: list[GridFunction] = field(default_factory=list)

    def shifted(self, m: int) -> "MonomialObservable":
        return MonomialObservable(
            [shift_forward(h, m) for h in self.annihilators],
            [shift_forward(e, m) for e in self.creators],
        )

    def functions(self) -> list[GridFunction]:
        return list(self.annihilators) + list(self.creators)


@dataclass(frozen=True)
class RankOneState:
    """Rank-one operator ``|f_1^..^f_n><g_1^..^g_m|``; empty lists mean vacuum."""

    kets: list[GridFunction] = field(default_factory=list)
    bras: list[GridFunction] = field(default_factory=list)

    def functions(self) -> list[GridFunction]:
        return list(self.kets) + list(self.bras)

    def shifted_adjoint(self, m: int) -> "RankOneState":
        return RankOneState(
            [shift_adjoint(f, m) for f in self.kets],
            [shift_adjoint(g, m) for g in self.bras],
        )

    def as_operator(self, space: FockSpace) -> np.ndarray:
        kf = wedge_vector(space, self.kets)
        kg = wedge_vector(space, self.bras)
        return np.outer(kf, np.conj(kg))


def heisenberg_apply(space: FockSpace, m: int, x: np.ndarray) -> np.ndarray:
    """Heisenberg-side semigroup: conjugation ``S_m x S_m*`` by the lifted shift."""
    S = fock_shift_matrix(space, m)
    return S @ x @ S.conj().T


def schrodinger_apply(space: FockSpace, m: int, rho: np.ndarray) -> np.ndarray:
    """Schrodinger-side semigroup ``S_m* rho S_m``; trace non-increasing."""
    S = fock_shift_matrix(space, m)
    return S.conj().T @ rho @ S


def schrodinger_state(state: RankOneState, m: int) -> RankOneState:
    """Schrodinger evolution of a rank-one state, staying in rank-one form."""
    return state.shifted_adjoint(m)


def flow_of_shifts(space: FockSpace, m: int, mono: MonomialObservable) -> np.ndarray:
    """Dense matrix of the monomial with every argument shifted by ``m`` cells."""
    shifted = mono.shifted(m)
    out = np.eye(space.dim, dtype=complex)
    for e in shifted.creators:
        out = ladder_matrix(space, e, "create") @ out
    for h in reversed(shifted.annihilators):
        out = ladder_matrix(space, h, "annihilate") @ out
    return out


def flow_apply(
    space: FockSpace, m: int, mono: MonomialObservable, v: np.ndarray
) -> np.ndarray:
    """Apply the shifted monomial to a Fock vector without building the matrix."""
    shifted = mono.shifted(m)
    return apply_monomial(space, shifted.annihilators, shifted.creators, v)


# (ket difference, bra difference, annihilator-slot op, creator-slot op)
# given the forward matrix D and backward-interior matrix B of the grid.
SCHEMES = {
    "exact_pair": lambda D, B: (D, B, -B, -D),
    "naive_forward": lambda D, B: (D, D, -D, -D),
}


def _scheme_matrices(spec: GridSpec, scheme: str):
    try:
        pick = SCHEMES[scheme]
    except KeyError:
        raise ValueError(f"unknown difference scheme {scheme!r}") from None
    return pick(diff_forward_matrix(spec), diff_backward_matrix(spec))


def generator_action(
    space: FockSpace, state: RankOneState, scheme: str = "exact_pair"
) -> np.ndarray:
    """Generator of the Schrodinger semigroup on a rank-one state.

    Returns ``|A f><g| + |f><C g|`` where ``A`` acts slotwise on the ket
    wedge and ``C`` on the bra wedge.  The default scheme pairs the forward
    difference on the ket with the backward-interior difference on the bra,
    which is the unique pairing making the duality identity exact.
    """
    if not state.kets and not state.bras:
        return np.zeros((space.dim, space.dim), dtype=complex)
    spec = state.functions()[0].spec
    A_ket, C_bra, _, _ = _scheme_matrices(spec, scheme)
    kf = wedge_vector(space, state.kets)
    kg = wedge_vector(space, state.bras)
    dkf = derivation_wedge_sum(space, A_ket, state.kets)
    ckg = derivation_wedge_sum(space, C_bra, state.bras)
    return np.outer(dkf, np.conj(kg)) + np.outer(kf, np.conj(ckg))


def boundary_perturbation(space: FockSpace, state: RankOneState) -> np.ndarray:
    """Origin-value perturbation of the generator on a rank-one state.

    ``sum_{j,k} (-1)^{j+k} f_j(0) conj(g_k(0)) |f-without-j><g-without-k|``
    with 1-based slot signs; zero whenever either wedge list is empty.
    """
    out = np.zeros((space.dim, space.dim), dtype=complex)
    fs, gs = state.kets, state.bras
    if not fs or not gs:
        return out
    for j, f in enumerate(fs):
        fval = f.values[0]
        if fval == 0:
            continue
        kf = wedge_vector(space, fs[:j] + fs[j + 1 :])
        for k, g in enumerate(gs):
            coef = (-1.0) ** (j + k) * fval * np.conj(g.values[0])
            if coef == 0:
                continue
            kg = wedge_vector(space, gs[:k] + gs[k + 1 :])
            out += coef * np.outer(kf, np.conj(kg))
    return out


def _require_compliant(state: RankOneState, mono: MonomialObservable) -> None:
    if len(state.kets) != len(state.bras):
        raise DomainError("the duality identity is stated for equal wedge lengths")
    for w in mono.functions():
        if w.values[0] != 0:
            raise DomainError("monomial arguments must vanish at the origin")
    for w in state.functions() + mono.functions():
        if w.values[-1] != 0:
            raise DomainError("all functions must vanish on the last grid cell")


def generator_duality_residual(
    space: FockSpace,
    state: RankOneState,
    mono: MonomialObservable,
    scheme: str = "exact_pair",
    enforce_domains: bool = True,
) -> tuple[complex, float]:
    """Defect of the generator duality identity, with its magnitude scale.

    Computes ``Tr(L(rho) x) + Tr(Delta(rho) x) - Tr(rho Lflow(x))`` through
    vector pairings.  Returns ``(residual, scale)`` where ``scale`` adds up
    the magnitudes of the three contributions; with the exact difference
    pairing and compliant inputs the residual sits at the rounding floor.
    """
    if enforce_domains:
        _require_compliant(state, mono)
    fs, gs = state.kets, state.bras
    hs, es = mono.annihilators, mono.creators
    fns = state.functions() + mono.functions()
    if not fns:
        return 0.0 + 0.0j, 0.0
    spec = fns[0].spec
    A_ket, C_bra, E_ann, E_cre = _scheme_matrices(spec, scheme)

    kf = wedge_vector(space, fs)
    kg = wedge_vector(space, gs)
    x_kf = apply_monomial(space, hs, es, kf)

    # generator term: ket derivative against <g|, bra derivative against x f
    dkf = derivation_wedge_sum(space, A_ket, fs)
    ckg = derivation_wedge_sum(space, C_bra, gs)
    t_gen = np.vdot(kg, apply_monomial(space, hs, es, dkf)) + np.vdot(ckg, x_kf)

    # boundary perturbation term
    t_delta = 0.0 + 0.0j
    for j, f in enumerate(fs):
        fval = f.values[0]
        if fval == 0:
            continue
        kf_j = wedge_vector(space, fs[:j] + fs[j + 1 :])
        x_kf_j = apply_monomial(space, hs, es, kf_j)
        for k, g in enumerate(gs):
            coef = (-1.0) ** (j + k) * fval * np.conj(g.values[0])
            if coef == 0:
                continue
            kg_k = wedge_vector(space, gs[:k] + gs[k + 1 :])
            t_delta += coef * np.vdot(kg_k, x_kf_j)

    # observable-side generator: slotwise difference across the monomial
    t_flow = 0.0 + 0.0j
    for j, hh in enumerate(hs):
        slot = hh.with_values(E_ann @ hh.values)
        hs_j = hs[:j] + [slot] + hs[j + 1 :]
        t_flow += np.vdot(kg, apply_monomial(space, hs_j, es, kf))
    for k, e in enumerate(es):
        slot = e.with_values(E_cre @ e.values)
        es_k = es[:k] + [slot] + es[k + 1 :]
        t_flow += np.vdot(kg, apply_monomial(space, hs, es_k, kf))

    residual = t_gen + t_delta - t_flow
    scale = abs(t_gen) + abs(t_delta) + abs(t_flow)
    return complex(residual), float(scale)
