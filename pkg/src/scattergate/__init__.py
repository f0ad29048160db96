"""Entangling two-qubit gates from spin-independent 1D scattering.

Continuum S-matrix gates of the delta-interaction models, their
Gaussian-wavepacket error model, the exact two-particle Bose-Hubbard
realization with boundary-coupling-controlled transfer, and cold-atom
parameter design.
"""

__version__ = "0.1.0"

from .core import (
    BASIS_LABELS,
    NumericsError,
    SpinState,
    TwoQubitGate,
    apply_gate,
    basis_state,
    concurrence,
    identity_gate,
    swap_operator,
)
from .smatrix import (
    ScatteringContext,
    Statistics,
    build_gate,
    optimal_momentum,
    output_concurrence,
    scattering_phase,
)
from .wavepacket import (
    WavepacketSpec,
    analytic_concurrence,
    asymptotic_concurrence,
    numeric_concurrence,
    scaled_erfc,
)
from .lattice import (
    BoundaryOptimum,
    CollisionResult,
    JointAmplitudes,
    LatticeSpec,
    Sector,
    TransferResult,
    TwoParticleState,
    boundary_concurrence,
    boundary_initial_state,
    build_hamiltonian,
    collide_packets,
    evolve,
    extract_u_opt,
    joint_amplitudes,
    lattice_smatrix,
    momentum_distribution,
    optimize_boundary_coupling,
    transfer_result,
)
from .atomphys import (
    AtomParams,
    LatticeEnergies,
    LaunchSpec,
    coupling_from_3d,
    cic_corrected_momentum,
    design_lattice_depth,
    lattice_params,
    launch_spread,
    load_species_preset,
    rb87_params,
    recoil_energy,
    transverse_length,
)

__all__ = [name for name in dir() if not name.startswith("_")]
