"""Numerical laboratory for covariant completely positive measure
perturbations of shift semigroups on the fermionic Fock space over a
discretized half-line.

Layers, bottom up:

- :mod:`carshift.grid` - the one-particle space: uniform grid, shifts, and a
  forward/backward difference pair whose summation-by-parts identity is
  exact.
- :mod:`carshift.fock` - the truncated antisymmetric Fock space: bitmask
  basis, ladder operators, wedge vectors, multiplicative and additive lifts.
- :mod:`carshift.semigroup` - the shift semigroups, the flow of shifts on
  monomials, the generator on rank-one states, and the boundary
  perturbation.
- :mod:`carshift.measure` - the time-binned completely positive measure:
  quadrature action, Kraus chunk form, covariance and small-time behavior.
- :mod:`carshift.superop` - superoperator carriers, Choi certificates, the
  monotone iteration for the perturbed-evolution integral equation.
- :mod:`carshift.noevent` - the finite-dimensional no-event semigroups with
  coupling perturbations and excessive maps.
- :mod:`carshift.harness` / :mod:`carshift.cli` - named verification suites,
  convergence sweeps, machine-readable reports.
"""

from .grid import GridFunction, GridSpec
from .fock import FockSpace
from .semigroup import MonomialObservable, RankOneState
from .measure import MeasureBin, TimeBin
from .harness_types import ExperimentConfig

__all__ = [
    "GridFunction",
    "GridSpec",
    "FockSpace",
    "MonomialObservable",
    "RankOneState",
    "MeasureBin",
    "TimeBin",
    "ExperimentConfig",
]

__version__ = "0.1.0"
