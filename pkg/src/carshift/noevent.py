"""No-event semigroups and their coupling perturbations in finite dimension.

A dissipative generator ``K`` (``K + K* <= 0``) drives the contraction
semigroup ``T_t = exp(tK)``; the state-side semigroup ``rho -> T rho T*``
sends pure states to multiples of pure states.  Coupling operators ``L_j``
with ``sum L_j* L_j <= -(K + K*)`` define the jump perturbation
``rho -> sum L_j rho L_j*``.  The associated excessive map solves the
Sylvester equation ``K* X + X K = -sum L_j* x L_j`` whenever that equation is
regular, and is otherwise computed by integrating the decaying orbit; the
time-binned measure is the difference of the excessive map along the
semigroup, and it matches the direct time integral of the perturbed orbit.

Everything here uses continuous time and dense matrices; there is no grid.
"""

from __future__ import annotations

import numpy as np
from scipy.integrate import quad_vec
from scipy.linalg import expm, solve_sylvester

__all__ = [
    "SingularSylvester",
    "dissipativity_slack",
    "admissibility_slack",
    "no_event_evolve",
    "heisenberg_evolve",
    "coupling_perturbation",
    "coupling_perturbation_map",
    "generator_apply",
    "excessive_map",
    "measure_from_excessive",
    "measure_time_integral",
    "apply_to_matrix_units",
]


class SingularSylvester(RuntimeError):
    """The Sylvester operator is not invertible; use the quadrature method."""


def _as_square(a: np.ndarray) -> np.ndarray:
    a = np.asarray(a, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError("expected a square matrix")
    return a


def dissipativity_slack(K: np.ndarray) -> float:
    """Largest eigenvalue of ``K + K*``; nonpositive for a dissipative ``K``."""
    K = _as_square(K)
    return float(np.linalg.eigvalsh(K + K.conj().T)[-1])


def admissibility_slack(K: np.ndarray, Ls) -> float:
    """Largest eigenvalue of ``sum L_j* L_j + K + K*``; nonpositive if admissible."""
    K = _as_square(K)
    acc = K + K.conj().T
    for L in Ls:
        L = _as_square(L)
        acc = acc + L.conj().T @ L
    return float(np.linalg.eigvalsh(acc)[-1])


def no_event_evolve(K: np.ndarray, t: float, rho: np.ndarray) -> np.ndarray:
    """State-side orbit ``exp(tK) rho exp(tK)*``."""
    if t < 0:
        raise ValueError("time must be nonnegative")
    T = expm(t * _as_square(K))
    return T @ rho @ T.conj().T


def heisenberg_evolve(K: np.ndarray, t: float, x: np.ndarray) -> np.ndarray:
    """Observable-side orbit ``exp(tK)* x exp(tK)``."""
    if t < 0:
        raise ValueError("time must be nonnegative")
    T = expm(t * _as_square(K))
    return T.conj().T @ x @ T


def coupling_perturbation(Ls, psi: np.ndarray, xi: np.ndarray) -> np.ndarray:
    """Rank-one perturbation ``sum_j |L_j psi><L_j xi|``."""
    psi = np.asarray(psi, dtype=complex)
    xi = np.asarray(xi, dtype=complex)
    d = psi.shape[0]
    out = np.zeros((d, d), dtype=complex)
    for L in Ls:
        L = _as_square(L)
        if L.shape[0] != d:
            raise ValueError("coupling dimension mismatch")
        out += np.outer(L @ psi, np.conj(L @ xi))
    return out


def coupling_perturbation_map(Ls, rho: np.ndarray) -> np.ndarray:
    out = np.zeros_like(np.asarray(rho, dtype=complex))
    for L in Ls:
        L = _as_square(L)
        out += L @ rho @ L.conj().T
    return out


def generator_apply(K: np.ndarray, rho: np.ndarray) -> np.ndarray:
    """State-side generator ``K rho + rho K*``."""
    K = _as_square(K)
    return K @ rho + rho @ K.conj().T


def _jump_observable(Ls, x: np.ndarray) -> np.ndarray:
    out = np.zeros_like(np.asarray(x, dtype=complex))
    for L in Ls:
        out += L.conj().T @ x @ L
    return out


def _sylvester_regular(K: np.ndarray, tol: float = 1e-9) -> bool:
    ev = np.linalg.eigvals(K)
    gaps = np.abs(np.conj(ev)[:, None] + ev[None, :])
    return bool(gaps.min() > tol)


def _decay_horizon(K: np.ndarray, C: np.ndarray, tol: float = 1e-14) -> float:
    horizon = 1.0
    for _ in range(40):
        T = expm(horizon * K)
        if np.max(np.abs(T.conj().T @ C @ T)) < tol:
            return horizon
        horizon *= 2.0
    raise RuntimeError(
        "orbit integrand does not decay; excessive map undefined for this data"
    )


def excessive_map(K: np.ndarray, Ls, x: np.ndarray, method: str = "lyapunov") -> np.ndarray:
    """Excessive map value ``integral_0^inf exp(tK)* (sum L* x L) exp(tK) dt``.

    ``method="lyapunov"`` solves ``K* X + X K = -sum L_j* x L_j`` and raises
    :class:`SingularSylvester` when the spectrum of ``K`` makes that equation
    singular (for instance when ``K`` has a kernel); ``method="quadrature"``
    integrates the orbit over an automatically chosen horizon and fails
    loudly if the integrand does not decay.
    """
    K = _as_square(K)
    C = _jump_observable(Ls, np.asarray(x, dtype=complex))
    if method == "lyapunov":
        if not _sylvester_regular(K):
            raise SingularSylvester(
                "spectrum of K makes the Sylvester equation singular; "
                "call with method='quadrature'"
            )
        return solve_sylvester(K.conj().T, K, -C)
    if method == "quadrature":
        if np.max(np.abs(C)) == 0:
            return np.zeros_like(C)
        horizon = _decay_horizon(K, C)
        val, _ = quad_vec(
            lambda t: expm(t * K).conj().T @ C @ expm(t * K),
            0.0,
            horizon,
            epsabs=1e-12,
            epsrel=1e-12,
        )
        return val
    raise ValueError(f"unknown method {method!r}")


def measure_from_excessive(K: np.ndarray, Ls, t: float, s: float, x: np.ndarray,
                           method: str = "lyapunov") -> np.ndarray:
    """Bin map ``Phi_t . Theta - Phi_s . Theta`` applied to ``x``."""
    if not 0 <= t <= s:
        raise ValueError("need 0 <= t <= s")
    theta_x = excessive_map(K, Ls, x, method=method)
    return heisenberg_evolve(K, t, theta_x) - heisenberg_evolve(K, s, theta_x)


def measure_time_integral(K: np.ndarray, Ls, t: float, s: float, x: np.ndarray) -> np.ndarray:
    """Observable-side bin map by direct quadrature of the perturbed orbit.

    ``integral_t^s exp(rK)* (sum L* x L) exp(rK) dr``; the independent
    cross-check for :func:`measure_from_excessive`.
    """
    if not 0 <= t <= s:
        raise ValueError("need 0 <= t <= s")
    K = _as_square(K)
    C = _jump_observable(Ls, np.asarray(x, dtype=complex))
    if s == t or np.max(np.abs(C)) == 0:
        return np.zeros_like(C)
    val, _ = quad_vec(
        lambda r: expm(r * K).conj().T @ C @ expm(r * K),
        t,
        s,
        epsabs=1e-12,
        epsrel=1e-12,
    )
    return val


def apply_to_matrix_units(apply_fn, d: int) -> np.ndarray:
    """Superoperator matrix of ``apply_fn`` over column-stacked matrix units."""
    out = np.zeros((d * d, d * d), dtype=complex)
    for j in range(d):
        for i in range(d):
            e = np.zeros((d, d), dtype=complex)
            e[i, j] = 1.0
            out[:, i + d * j] = apply_fn(e).reshape(-1, order="F")
    return out
