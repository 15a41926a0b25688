"""Truncated antisymmetric Fock space over the grid modes.

Basis states are occupation bitmasks: bit ``k`` set means mode ``k`` (the
``k``-th grid cell) is occupied, and the canonical ordered state lists its
modes in increasing order.  Fock vectors are dense complex arrays indexed by
the basis, Fock operators dense complex matrices; no wrapper classes.

A :class:`FockSpace` either carries the full ``2^M`` exterior algebra
(``particle_cap=None``, kept to ``M <= 12``) or restricts the basis to states
with at most ``particle_cap`` particles.  The capped variant exists for grid
refinement studies where ``M`` grows large while every quantity of interest
lives in a few low sectors; creation operators raise instead of silently
truncating if an amplitude would leave the capped basis, so capped results
are exact whenever they are defined.

Ladder signs follow the occupied-modes-below-``k`` parity rule; the
anticommutation relations are the ground truth the test suite checks them
against.  Mode coefficients of a grid function ``f`` are ``sqrt(h) * f_k`` so
the grid inner product and the mode-space inner product coincide.
"""

from __future__ import annotations

from itertools import combinations, permutations
from math import factorial

import numpy as np

from .grid import GridFunction, GridSpec, inner_product

__all__ = [
    "FockSpace",
    "ParticleCapExceeded",
    "mode_function",
    "mode_coefficients",
    "annihilate_mode",
    "create_mode",
    "mode_matrix",
    "annihilate_function",
    "create_function",
    "ladder_matrix",
    "apply_monomial",
    "wedge_vector",
    "gram_determinant",
    "antisymmetrize_oracle",
    "gamma_lift",
    "derivation_lift",
    "derivation_wedge_sum",
    "number_operator",
    "xi_star",
    "fock_shift_matrix",
    "shift_fock_vector",
]

_MAX_FULL_MODES = 12


class ParticleCapExceeded(RuntimeError):
    """A creation operator tried to leave the capped basis."""


def _popcount(masks: np.ndarray) -> np.ndarray:
    return np.bitwise_count(masks).astype(np.int64)


class FockSpace:
    """Occupation-bitmask basis over ``num_modes`` modes.

    With ``particle_cap=None`` the basis is all ``2^M`` masks in numerical
    order (so the basis index equals the mask).  With a cap it is every mask
    of at most ``particle_cap`` set bits, sorted.
    """

    def __init__(self, num_modes: int, particle_cap: int | None = None):
        if num_modes < 1:
            raise ValueError("need at least one mode")
        if particle_cap is None:
            if num_modes > _MAX_FULL_MODES:
                raise ValueError(
                    f"full exterior algebra limited to {_MAX_FULL_MODES} modes; "
                    "pass particle_cap for larger grids"
                )
            basis = np.arange(1 << num_modes, dtype=np.uint64)
        else:
            if not 0 <= particle_cap <= num_modes:
                raise ValueError("particle cap out of range")
            if num_modes > 64:
                raise ValueError("mode count limited to 64")
            masks = [0]
            for n in range(1, particle_cap + 1):
                masks.extend(
                    sum(1 << k for k in combo)
                    for combo in combinations(range(num_modes), n)
                )
            basis = np.array(sorted(masks), dtype=np.uint64)
        self.num_modes = num_modes
        self.particle_cap = particle_cap
        self.basis = basis
        self.dim = len(basis)
        self.popcounts = _popcount(basis)
        self._ann_maps: dict[int, tuple] = {}
        self._cre_maps: dict[int, tuple] = {}

    @property
    def is_full(self) -> bool:
        return self.particle_cap is None

    def index_of(self, masks: np.ndarray) -> np.ndarray:
        if self.is_full:
            return masks.astype(np.int64)
        idx = np.searchsorted(self.basis, masks)
        if np.any(self.basis[idx] != masks):
            raise KeyError("mask outside basis")
        return idx.astype(np.int64)

    def vacuum(self) -> np.ndarray:
        v = np.zeros(self.dim, dtype=complex)
        v[0] = 1.0
        return v

    def basis_state(self, modes) -> np.ndarray:
        mask = np.uint64(sum(1 << k for k in modes))
        v = np.zeros(self.dim, dtype=complex)
        v[self.index_of(np.array([mask], dtype=np.uint64))[0]] = 1.0
        return v

    def modes_of(self, mask: int) -> tuple[int, ...]:
        return tuple(k for k in range(self.num_modes) if (int(mask) >> k) & 1)

    def _check_mode(self, k: int) -> None:
        if not 0 <= k < self.num_modes:
            raise ValueError(f"mode index {k} out of range")

    def _sign_below(self, masks: np.ndarray, k: int) -> np.ndarray:
        below = masks & np.uint64((1 << k) - 1)
        return 1.0 - 2.0 * (_popcount(below) & 1)

    def ann_map(self, k: int):
        """(src, dst, sign) index arrays for the mode-``k`` annihilator."""
        self._check_mode(k)
        if k not in self._ann_maps:
            bit = np.uint64(1 << k)
            occupied = (self.basis & bit) != 0
            src = np.nonzero(occupied)[0]
            masks = self.basis[src]
            dst = self.index_of(masks ^ bit)
            sign = self._sign_below(masks, k)
            self._ann_maps[k] = (src, dst, sign)
        return self._ann_maps[k]

    def cre_map(self, k: int):
        """(src, dst, sign, overflow) index arrays for the mode-``k`` creator.

        ``overflow`` lists the basis indices whose image would exceed the
        particle cap; empty on full spaces.
        """
        self._check_mode(k)
        if k not in self._cre_maps:
            bit = np.uint64(1 << k)
            empty = (self.basis & bit) == 0
            if self.is_full:
                fits = empty
                overflow = np.empty(0, dtype=np.int64)
            else:
                fits = empty & (self.popcounts < self.particle_cap)
                overflow = np.nonzero(empty & ~fits)[0]
            src = np.nonzero(fits)[0]
            masks = self.basis[src]
            dst = self.index_of(masks | bit)
            sign = self._sign_below(masks, k)
            self._cre_maps[k] = (src, dst, sign, overflow)
        return self._cre_maps[k]


class _SpecMismatch(ValueError):
    pass


def _check_compatible(space: FockSpace, f: GridFunction) -> None:
    if f.spec.num_points != space.num_modes:
        raise _SpecMismatch("grid function does not match the mode count")


def mode_function(spec: GridSpec, k: int) -> GridFunction:
    """Grid function whose only mode coefficient is 1 at mode ``k``."""
    vals = np.zeros(spec.num_points, dtype=complex)
    vals[k] = 1.0 / np.sqrt(spec.spacing)
    return GridFunction(spec, vals)


def mode_coefficients(f: GridFunction) -> np.ndarray:
    return np.sqrt(f.spec.spacing) * f.values


def annihilate_mode(space: FockSpace, k: int, v: np.ndarray) -> np.ndarray:
    src, dst, sign = space.ann_map(k)
    out = np.zeros_like(v)
    out[dst] = sign * v[src]
    return out


def create_mode(space: FockSpace, k: int, v: np.ndarray) -> np.ndarray:
    src, dst, sign, overflow = space.cre_map(k)
    if overflow.size and np.any(v[overflow] != 0):
        raise ParticleCapExceeded(
            f"creation on mode {k} needs more than {space.particle_cap} particles"
        )
    out = np.zeros_like(v)
    out[dst] = sign * v[src]
    return out


def mode_matrix(space: FockSpace, k: int, kind: str) -> np.ndarray:
    out = np.zeros((space.dim, space.dim), dtype=complex)
    if kind == "annihilate":
        src, dst, sign = space.ann_map(k)
    elif kind == "create":
        src, dst, sign, overflow = space.cre_map(k)
        if overflow.size:
            raise ParticleCapExceeded("dense creators need headroom below the cap")
    else:
        raise ValueError(f"unknown ladder kind {kind!r}")
    out[dst, src] = sign
    return out


def annihilate_function(space: FockSpace, f: GridFunction, v: np.ndarray) -> np.ndarray:
    """Apply ``a(f) = sum_k conj(c_k) a_k`` to a Fock vector."""
    _check_compatible(space, f)
    coeff = np.conj(mode_coefficients(f))
    out = np.zeros_like(v)
    for k in np.nonzero(coeff)[0]:
        src, dst, sign = space.ann_map(int(k))
        out[dst] += coeff[k] * sign * v[src]
    return out


def create_function(space: FockSpace, f: GridFunction, v: np.ndarray) -> np.ndarray:
    """Apply ``a†(f) = sum_k c_k a_k†`` to a Fock vector."""
    _check_compatible(space, f)
    coeff = mode_coefficients(f)
    out = np.zeros_like(v)
    for k in np.nonzero(coeff)[0]:
        src, dst, sign, overflow = space.cre_map(int(k))
        if overflow.size and np.any(v[overflow] != 0):
            raise ParticleCapExceeded(
                f"particle cap {space.particle_cap} too small for this creation"
            )
        out[dst] += coeff[k] * sign * v[src]
    return out


def ladder_matrix(space: FockSpace, f: GridFunction, kind: str) -> np.ndarray:
    """Dense matrix of ``a(f)`` or ``a†(f)``."""
    _check_compatible(space, f)
    coeff = mode_coefficients(f)
    if kind == "annihilate":
        coeff = np.conj(coeff)
    elif kind != "create":
        raise ValueError(f"unknown ladder kind {kind!r}")
    out = np.zeros((space.dim, space.dim), dtype=complex)
    for k in np.nonzero(coeff)[0]:
        if kind == "annihilate":
            src, dst, sign = space.ann_map(int(k))
        else:
            src, dst, sign, overflow = space.cre_map(int(k))
            if overflow.size:
                raise ParticleCapExceeded(
                    "dense creators need headroom below the cap"
                )
        out[dst, src] += coeff[k] * sign
    return out


def apply_monomial(
    space: FockSpace,
    annihilators: list[GridFunction],
    creators: list[GridFunction],
    v: np.ndarray,
) -> np.ndarray:
    """Apply ``a(h_1)...a(h_p) a†(e_1)...a†(e_q)`` to a vector."""
    for e in reversed(creators):
        v = create_function(space, e, v)
    for hh in reversed(annihilators):
        v = annihilate_function(space, hh, v)
    return v


def wedge_vector(space: FockSpace, fs: list[GridFunction]) -> np.ndarray:
    """Fock vector ``a†(f_1)...a†(f_n) |0>``; vacuum for an empty list."""
    if len(fs) > space.num_modes:
        raise ValueError("more wedge factors than modes")
    v = space.vacuum()
    for f in reversed(fs):
        v = create_function(space, f, v)
    return v


def gram_determinant(fs: list[GridFunction], gs: list[GridFunction]) -> complex:
    """Determinant of the pairwise inner product matrix ``<f_j, g_k>``."""
    if len(fs) != len(gs):
        raise ValueError("need equally long function lists")
    n = len(fs)
    if n == 0:
        return 1.0 + 0.0j
    G = np.array([[inner_product(f, g) for g in gs] for f in fs])
    return complex(np.linalg.det(G))


def antisymmetrize_oracle(space: FockSpace, fs: list[GridFunction]) -> np.ndarray:
    """Brute-force antisymmetrizer, read back into the Fock basis.

    Builds ``(1/n!) sum_eps sign(eps) f_{eps(1)} x ... x f_{eps(n)}`` as a
    dense order-``n`` tensor of mode coefficients and reads the component at
    each strictly increasing index tuple.  Proportional to
    :func:`wedge_vector` with ratio ``1/n!``; the tests pin the ratio on the
    ``n = 1, 2`` cases instead of assuming it.
    """
    n = len(fs)
    if n > 5:
        raise ValueError("antisymmetrizer oracle limited to 5 factors")
    if n == 0:
        return space.vacuum()
    coeffs = [mode_coefficients(f) for f in fs]
    M = space.num_modes
    tensor = np.zeros((M,) * n, dtype=complex)
    for perm in permutations(range(n)):
        inversions = sum(
            1 for a in range(n) for b in range(a + 1, n) if perm[a] > perm[b]
        )
        term = coeffs[perm[0]]
        for j in range(1, n):
            term = np.multiply.outer(term, coeffs[perm[j]])
        tensor += (-1.0) ** inversions * term
    tensor /= float(factorial(n))
    out = np.zeros(space.dim, dtype=complex)
    sector = np.nonzero(space.popcounts == n)[0]
    for idx in sector:
        modes = space.modes_of(space.basis[idx])
        out[idx] = tensor[modes]
    return out


def gamma_lift(space: FockSpace, V: np.ndarray) -> np.ndarray:
    """Multiplicative lift: wedge factors transform by ``V``, vacuum is fixed.

    Realized sector by sector through minors of ``V``; full spaces only.
    """
    if not space.is_full:
        raise ValueError("multiplicative lift needs the full exterior algebra")
    M, dim = space.num_modes, space.dim
    V = np.asarray(V, dtype=complex)
    if V.shape != (M, M):
        raise ValueError("one-particle matrix has the wrong shape")
    out = np.zeros((dim, dim), dtype=complex)
    out[0, 0] = 1.0
    for n in range(1, M + 1):
        sector = np.nonzero(space.popcounts == n)[0]
        modes = np.array([space.modes_of(space.basis[i]) for i in sector])
        # batched minors V[rows, cols] over all sector index pairs
        sub = V[modes[:, None, :, None], modes[None, :, None, :]]
        out[np.ix_(sector, sector)] = np.linalg.det(sub)
    return out


def derivation_lift(space: FockSpace, A: np.ndarray) -> np.ndarray:
    """Additive (Leibniz) lift ``sum_{jk} A_{jk} a†_j a_k`` as a dense matrix."""
    if not space.is_full:
        raise ValueError("dense derivation lift needs the full exterior algebra")
    M = space.num_modes
    A = np.asarray(A, dtype=complex)
    if A.shape != (M, M):
        raise ValueError("one-particle matrix has the wrong shape")
    out = np.zeros((space.dim, space.dim), dtype=complex)
    for j in range(M):
        for k in range(M):
            if A[j, k] == 0:
                continue
            src_k, mid, sign_k = space.ann_map(k)
            if j == k:
                out[src_k, src_k] += A[j, k]
                continue
            bit_j = np.uint64(1 << j)
            keep = (space.basis[mid] & bit_j) == 0
            src = src_k[keep]
            mid_masks = space.basis[mid[keep]]
            dst = space.index_of(mid_masks | bit_j)
            sign = sign_k[keep] * space._sign_below(mid_masks, j)
            out[dst, src] += A[j, k] * sign
    return out


def derivation_wedge_sum(
    space: FockSpace, A: np.ndarray, fs: list[GridFunction]
) -> np.ndarray:
    """Leibniz action of the lift of ``A`` on a wedge, as a Fock vector.

    Returns ``sum_j f_1 ^ ... ^ (A f_j) ^ ... ^ f_n`` without materializing
    the dense lift, so it also works on capped spaces.
    """
    out = np.zeros(space.dim, dtype=complex)
    for j, f in enumerate(fs):
        slot = f.with_values(A @ f.values)
        out += wedge_vector(space, fs[:j] + [slot] + fs[j + 1 :])
    return out


def number_operator(space: FockSpace) -> np.ndarray:
    return np.diag(space.popcounts.astype(complex))


def xi_star(space: FockSpace, rho: np.ndarray) -> np.ndarray:
    """Mode-summed sandwich ``sum_k a_k rho a_k†`` (completely positive)."""
    out = np.zeros_like(rho)
    for k in range(space.num_modes):
        src, dst, sign = space.ann_map(k)
        out[np.ix_(dst, dst)] += (
            sign[:, None] * np.conj(sign)[None, :] * rho[np.ix_(src, src)]
        )
    return out


def _shift_map(space: FockSpace, m: int, adjoint: bool):
    """(src, dst) basis index arrays for the lifted grid shift by ``m`` cells."""
    if m < 0:
        raise ValueError("shift distance must be nonnegative")
    M = space.num_modes
    if m == 0:
        idx = np.arange(space.dim, dtype=np.int64)
        return idx, idx
    if m >= M:
        vac = np.array([0], dtype=np.int64)
        return vac, vac
    if adjoint:
        low = np.uint64((1 << m) - 1)
        keep = (space.basis & low) == 0
        src = np.nonzero(keep)[0]
        dst_masks = space.basis[src] >> np.uint64(m)
    else:
        high = np.uint64(((1 << m) - 1) << (M - m))
        keep = (space.basis & high) == 0
        src = np.nonzero(keep)[0]
        dst_masks = space.basis[src] << np.uint64(m)
    return src, space.index_of(dst_masks)


def fock_shift_matrix(space: FockSpace, m: int, adjoint: bool = False) -> np.ndarray:
    """Dense lifted shift: occupied modes translate by ``m``, signs stay +1."""
    src, dst = _shift_map(space, m, adjoint)
    out = np.zeros((space.dim, space.dim), dtype=complex)
    out[dst, src] = 1.0
    return out


def shift_fock_vector(
    space: FockSpace, m: int, v: np.ndarray, adjoint: bool = False
) -> np.ndarray:
    src, dst = _shift_map(space, m, adjoint)
    out = np.zeros_like(v)
    out[dst] = v[src]
    return out
