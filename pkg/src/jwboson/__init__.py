"""Bosons on qubits via antisymmetrized fermions and the Jordan-Wigner map."""

from .encoding import (
    BosonOutcome,
    Particle,
    ParticleAssignment,
    QubitLayout,
    antisymmetrize_circuit_n2,
    antisymmetrized_state,
    decode_outcomes,
)
from .errors import CapacityError, ContractError, JWBosonError, SizeMismatchError, UnsupportedError
from .evolve import (
    BeamsplitterLayer,
    OpticalHamiltonian,
    decompose_mesh,
    evolve_exact,
    qubit_hamiltonian,
    single_particle_unitary,
)
from .hom import DipCurve, GivensParams, givens_gate, run_hom_dip, run_hom_ideal, sweep_dip
from .jw import LadderOperator, apply_ladder, hopping_terms, ladder_to_pauli_pair, number_term
from .oracle import ScatteringInstance, permanent, scatter_probability
from .pauli import PauliString, StateVector, apply_pauli, apply_pauli_rotation, commutes, pauli_mul

__version__ = "0.1.0"

__all__ = [
    "antisymmetrize_circuit_n2",
    "antisymmetrized_state",
    "apply_ladder",
    "apply_pauli",
    "apply_pauli_rotation",
    "BeamsplitterLayer",
    "BosonOutcome",
    "CapacityError",
    "commutes",
    "ContractError",
    "decode_outcomes",
    "decompose_mesh",
    "DipCurve",
    "evolve_exact",
    "givens_gate",
    "GivensParams",
    "hopping_terms",
    "JWBosonError",
    "ladder_to_pauli_pair",
    "LadderOperator",
    "number_term",
    "OpticalHamiltonian",
    "Particle",
    "ParticleAssignment",
    "pauli_mul",
    "PauliString",
    "permanent",
    "qubit_hamiltonian",
    "QubitLayout",
    "run_hom_dip",
    "run_hom_ideal",
    "scatter_probability",
    "ScatteringInstance",
    "single_particle_unitary",
    "SizeMismatchError",
    "StateVector",
    "sweep_dip",
    "UnsupportedError",
]
