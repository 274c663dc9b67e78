"""Brute-force reference computations from explicit amplitude vectors.

Everything in this module is derived directly from state vectors: partial
traces, Hermitian spectra via cyclic Jacobi rotations, and entropies from
eigenvalue lists.  No analytic shortcut from elsewhere in the package is
used here, so results from this module serve as ground truth against the
closed forms.

Spectra of a block are computed, by default, on whichever side of the
bipartition is smaller: for a unit vector reshaped to a (block, environment)
matrix M, the nonzero eigenvalues of M M^dagger and M^dagger M coincide.
All reductions use fixed numpy contraction order, so repeated runs are
bit-identical.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from typing import List, Sequence, Tuple, Union

import numpy as np

from .errors import BranchPointCondition, ConvergenceError
from .errors import BudgetError
from .states import PureState, SiteBasis

#: Default cap on the dimension of any materialized density/Gram matrix.
DEFAULT_MATRIX_BUDGET = 4096

#: Eigenvalues in [-NEGATIVE_CLAMP, 0) are rounded to 0; anything below is an error.
NEGATIVE_CLAMP = 1e-12

#: Jacobi terminates once the off-diagonal Frobenius norm drops below this.
OFF_DIAGONAL_TARGET = 1e-13

DEFAULT_MAX_SWEEPS = 100

#: Relative tolerance for grouping nearly equal eigenvalues (reporting only).
MULTIPLICITY_RTOL = 1e-9


@dataclass(frozen=True)
class DensityMatrix:
    """Hermitian, trace-one matrix over a labelled block basis."""

    sites: Tuple[SiteBasis, ...]
    matrix: np.ndarray

    def __post_init__(self) -> None:
        dim = math.prod(s.dim for s in self.sites)
        if self.matrix.shape != (dim, dim):
            raise ValueError(f"matrix shape {self.matrix.shape} does not match block dimension {dim}")
        herm = float(np.linalg.norm(self.matrix - self.matrix.conj().T))
        if herm > 1e-12:
            raise ValueError(f"matrix is not Hermitian: deviation {herm:.3e}")
        tr = complex(np.trace(self.matrix))
        if abs(tr - 1.0) > 1e-12:
            raise ValueError(f"matrix trace {tr!r} deviates from 1 beyond 1e-12")
        self.matrix.flags.writeable = False

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]


@dataclass
class SpectrumReport:
    """Eigenvalues of a density matrix plus derived entropy data.

    eigenvalues are sorted descending with tiny negatives clamped to zero;
    multiplicities group nearly equal values for reporting only and are
    never used in computations.
    """

    eigenvalues: np.ndarray
    multiplicities: List[Tuple[float, int]]
    entropy: float
    renyi_entries: List[Tuple[complex, complex]] = field(default_factory=list)


def jacobi_eigvalsh(
    matrix: np.ndarray,
    off_target: float = OFF_DIAGONAL_TARGET,
    max_sweeps: int = DEFAULT_MAX_SWEEPS,
    hermitian_tol: float = 1e-12,
) -> np.ndarray:
    """Eigenvalues of a Hermitian matrix by cyclic Jacobi rotations, descending.

    Sweeps the strict upper triangle in fixed row order, annihilating each
    pivot with a complex plane rotation, until the off-diagonal Frobenius
    norm falls below `off_target`.  Raises ConvergenceError if the target is
    not met after `max_sweeps` sweeps, and ValueError for input that is not
    Hermitian within `hermitian_tol`.
    """
    a = np.asarray(matrix, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {a.shape}")
    herm = float(np.linalg.norm(a - a.conj().T))
    if herm > hermitian_tol:
        raise ValueError(f"matrix is not Hermitian within {hermitian_tol:g}: deviation {herm:.3e}")
    dim = a.shape[0]
    if dim == 1:
        return np.array([a[0, 0].real])

    w = (a + a.conj().T) / 2.0
    # pivots below this cannot collectively push the off-norm above target
    skip = off_target / (4.0 * dim)

    def off_norm() -> float:
        off = w.copy()
        np.fill_diagonal(off, 0.0)
        return float(np.linalg.norm(off))

    converged = off_norm() < off_target
    for _ in range(max_sweeps):
        if converged:
            break
        for p in range(dim - 1):
            for q in range(p + 1, dim):
                b = w[p, q]
                absb = abs(b)
                if absb <= skip:
                    continue
                # factor the pivot phase out, then rotate the real 2x2 core
                eip = b / absb
                tau = (w[q, q].real - w[p, p].real) / (2.0 * absb)
                if tau == 0.0:
                    t = 1.0
                else:
                    t = math.copysign(1.0, tau) / (abs(tau) + math.hypot(1.0, tau))
                c = 1.0 / math.sqrt(1.0 + t * t)
                s = t * c
                app = w[p, p].real
                aqq = w[q, q].real
                colp = w[:, p].copy()
                colq = w[:, q].copy()
                w[:, p] = c * eip * colp - s * colq
                w[:, q] = s * eip * colp + c * colq
                rowp = w[p, :].copy()
                rowq = w[q, :].copy()
                w[p, :] = c * np.conj(eip) * rowp - s * rowq
                w[q, :] = s * np.conj(eip) * rowp + c * rowq
                w[p, p] = app - t * absb
                w[q, q] = aqq + t * absb
                w[p, q] = 0.0
                w[q, p] = 0.0
        converged = off_norm() < off_target
    if not converged:
        raise ConvergenceError(
            f"off-diagonal norm {off_norm():.3e} above target {off_target:g} after {max_sweeps} sweeps"
        )
    return np.sort(np.diagonal(w).real)[::-1]


def spectrum_report(eigenvalues: Union[np.ndarray, Sequence[float]]) -> SpectrumReport:
    """Validate, clamp and sort density-matrix eigenvalues into a report.

    Values in [-1e-12, 0) are clamped to zero; anything more negative, or a
    sum away from one beyond 1e-10, signals a broken reduction and raises.
    """
    eigs = np.sort(np.asarray(eigenvalues, dtype=float))[::-1].copy()
    if eigs.size and eigs[-1] < -NEGATIVE_CLAMP:
        raise ValueError(f"eigenvalue {eigs[-1]!r} below -{NEGATIVE_CLAMP:g}; reduction is broken")
    eigs[eigs < 0.0] = 0.0
    total = float(eigs.sum())
    if abs(total - 1.0) > 1e-10:
        raise ValueError(f"eigenvalues sum to {total!r}, expected 1 within 1e-10")
    groups: List[List[float]] = []
    for v in eigs:
        if groups and abs(v - groups[-1][0]) <= MULTIPLICITY_RTOL * max(abs(groups[-1][0]), NEGATIVE_CLAMP):
            groups[-1].append(float(v))
        else:
            groups.append([float(v)])
    multiplicities = [(sum(g) / len(g), len(g)) for g in groups]
    return SpectrumReport(eigs, multiplicities, _entropy_from_eigenvalues(eigs))


def _entropy_from_eigenvalues(eigs: np.ndarray) -> float:
    pos = eigs[eigs > 0.0]
    return float(-(pos * np.log(pos)).sum())


def _block_environment(state: PureState, block: Sequence[int]) -> Tuple[np.ndarray, Tuple[SiteBasis, ...]]:
    """Reshape amplitudes to a (block, environment) matrix for a contiguous block."""
    positions = list(block)
    if not positions:
        raise ValueError("block must contain at least one site")
    if positions != list(range(positions[0], positions[-1] + 1)):
        raise ValueError(f"block positions {positions} are not a contiguous ascending range")
    if positions[0] < 0 or positions[-1] >= state.num_sites:
        raise ValueError(f"block positions {positions} outside chain of {state.num_sites} slots")
    env = [i for i in range(state.num_sites) if i not in positions]
    tensor = state.tensor().transpose(positions + env)
    d_block = math.prod(state.dims[i] for i in positions)
    return tensor.reshape(d_block, -1), tuple(state.sites[i] for i in positions)


def reduced_density(
    state: PureState,
    block: Sequence[int],
    matrix_budget: int = DEFAULT_MATRIX_BUDGET,
) -> DensityMatrix:
    """Partial trace of |state><state| onto a contiguous block of slots.

    `block` lists 0-based slot positions.  Tracing out nothing (the full
    chain) is allowed and returns the pure projector.
    """
    m, sites = _block_environment(state, block)
    if m.shape[0] > matrix_budget:
        raise BudgetError(f"block dimension {m.shape[0]} exceeds matrix budget {matrix_budget}")
    return DensityMatrix(sites, m @ m.conj().T)


def block_spectrum(
    state: PureState,
    block: Sequence[int],
    matrix_budget: int = DEFAULT_MATRIX_BUDGET,
    max_sweeps: int = DEFAULT_MAX_SWEEPS,
) -> SpectrumReport:
    """Spectrum of the block reduction, diagonalizing the smaller Gram side."""
    m, _ = _block_environment(state, block)
    d_block, d_env = m.shape
    if min(d_block, d_env) > matrix_budget:
        raise BudgetError(
            f"both sides ({d_block}, {d_env}) exceed matrix budget {matrix_budget}"
        )
    gram = m @ m.conj().T if d_block <= d_env else m.conj().T @ m
    return spectrum_report(jacobi_eigvalsh(gram, max_sweeps=max_sweeps))


def schmidt_spectrum(
    state: PureState,
    cut: int,
    matrix_budget: int = DEFAULT_MATRIX_BUDGET,
) -> SpectrumReport:
    """Spectrum across the bipartition (slots [0, cut) | slots [cut, end))."""
    if not 0 < cut < state.num_sites:
        raise ValueError(f"cut {cut} does not split a chain of {state.num_sites} slots")
    return block_spectrum(state, range(cut), matrix_budget=matrix_budget)


def hermitian_spectrum(
    dm: DensityMatrix,
    max_sweeps: int = DEFAULT_MAX_SWEEPS,
) -> SpectrumReport:
    """Full spectrum report of a density matrix via the Jacobi solver."""
    return spectrum_report(jacobi_eigvalsh(dm.matrix, max_sweeps=max_sweeps))


def von_neumann(report: SpectrumReport) -> float:
    """-sum(lambda log lambda) in nats, with 0 log 0 taken as 0."""
    total = float(report.eigenvalues.sum())
    if abs(total - 1.0) > 1e-10:
        raise ValueError(f"eigenvalues sum to {total!r}, expected 1 within 1e-10")
    return _entropy_from_eigenvalues(report.eigenvalues)


def renyi(report: SpectrumReport, alpha: Union[float, complex]) -> Union[float, complex]:
    """Renyi entropy log(sum lambda**alpha) / (1 - alpha), natural log.

    Real alpha must be positive and not 1; complex alpha must have positive
    real part.  Zero eigenvalues are excluded from the power sum.  For
    complex alpha a vanishing power sum (within 1e-14) raises
    BranchPointCondition: the entropy is undefined on a branch point.
    """
    if isinstance(alpha, complex) and alpha.imag == 0.0:
        alpha = alpha.real
    pos = report.eigenvalues[report.eigenvalues > 0.0]
    if isinstance(alpha, complex):
        if alpha.real <= 0.0:
            raise ValueError(f"complex order must have positive real part, got {alpha!r}")
        power_sum = complex(np.exp(alpha * np.log(pos)).sum())
        if abs(power_sum) < 1e-14:
            raise BranchPointCondition(f"power sum vanished at order {alpha!r}")
        return cmath.log(power_sum) / (1.0 - alpha)
    if alpha == 1.0:
        raise ValueError("order 1 is the von Neumann limit; use von_neumann")
    if alpha <= 0.0:
        raise ValueError(f"order must be positive, got {alpha!r}")
    power_sum = float((pos ** alpha).sum())
    return math.log(power_sum) / (1.0 - alpha)
