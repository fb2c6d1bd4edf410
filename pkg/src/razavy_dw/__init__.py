"""Exact dynamics of two coupled Razavy double wells: spectrum, orthogonality times,
speed-limit bounds and concurrence, each paired with an independent numerical check."""

__version__ = "0.1.0"

from .potential import (
    DomainError,
    PotentialParams,
    QuadratureError,
    SingleWellSolution,
    eigenfunction,
    overlap_gamma,
    potential,
    single_well_energies,
    solve_single_well,
)
from .coupled import CoupledSpectrum, coupled_eigensystem, energy_matrix
from .wavepacket import (
    BasisAmplitudes,
    Field,
    Grid,
    Wavepacket,
    basis_amplitudes,
    custom,
    grid_norm,
    grid_overlap,
    preset,
    psi_grid,
)
from .dynamics import (
    NoOrthogonalState,
    OrthogonalityResult,
    SpeedLimit,
    correlation,
    orthogonality_time,
    speed_limit,
)
from .entanglement import (
    ConcurrenceReport,
    closed_form_rms,
    concurrence,
    concurrence_average,
    concurrence_from_amplitudes,
    concurrence_initial,
)
from .oracle import FdSolverConfig, fd_eigenpairs, fd_overlap_gamma, numeric_4x4_eigen
