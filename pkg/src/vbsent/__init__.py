"""Exact SU(n) valence-bond-solid chain states and their block entanglement.

Builds open and periodic chain states exactly, evaluates the closed-form
block spectra, von Neumann and Renyi entropies (including complex orders and
their branch points), decomposes block reductions over boundary states, and
cross-checks every closed form against a brute-force partial-trace oracle.
"""

from .closed_form import (
    BranchPoint,
    OpenSpectrum,
    PeriodicSpectrum,
    branch_points,
    branch_residual,
    decay_factor,
    open_entropy,
    open_renyi,
    open_spectrum,
    periodic_entropy,
    periodic_renyi,
    periodic_spectrum,
    transfer_diagonalizer,
    transfer_matrix,
    transfer_spectrum,
)
from .edges import edge_basis, edge_gram, edge_state, projector_limit_residual, reconstruct_rho
from .errors import BranchPointCondition, BudgetError, ConvergenceError, DegenerateSpectrumError
from .oracle import (
    DensityMatrix,
    SpectrumReport,
    block_spectrum,
    hermitian_spectrum,
    jacobi_eigvalsh,
    reduced_density,
    renyi,
    schmidt_spectrum,
    spectrum_report,
    von_neumann,
)
from .states import (
    ChainSpec,
    PureState,
    SiteBasis,
    open_vbs_state,
    periodic_vbs_state,
    ring_norm_squared,
)
from .weyl import (
    BellIndex,
    PhasedIndex,
    bell_vector,
    compose,
    conjugate_embedding,
    pauli_x,
    pauli_z,
    phase_fold,
    swap_identity_residual,
    u_lm,
)

__version__ = "0.1.0"
