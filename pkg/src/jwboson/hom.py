"""Hong-Ou-Mandel experiments: ideal bunching and the distinguishability dip."""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .encoding import (
    BosonOutcome,
    ParticleAssignment,
    QubitLayout,
    antisymmetrized_state,
    decode_outcomes,
    outcome_table,
)
from .errors import ContractError
from .evolve import OpticalHamiltonian, evolve_exact
from .pauli import StateVector

HOM_T = math.pi / 4
HOM_PHI = np.array([[0.0, 1.0], [1.0, 0.0]])
COINCIDENCE = (1, 1)


def hom_hamiltonian() -> OpticalHamiltonian:
    """The 50:50 beamsplitter: ``phi = X`` for ``t = pi/4``."""
    return OpticalHamiltonian(HOM_PHI, HOM_T)


@dataclass(frozen=True)
class GivensParams:
    theta: float
    phi: float = 0.0
    gamma: float = 0.0

    @property
    def zeta(self) -> complex:
        return cmath.exp(1j * self.gamma) * math.cos(self.theta / 2)

    @property
    def xi(self) -> complex:
        return -cmath.exp(1j * self.phi) * math.sin(self.theta / 2)

    def block(self) -> np.ndarray:
        """2x2 action on the ``{|01>, |10>}`` subspace."""
        c, s = math.cos(self.theta / 2), math.sin(self.theta / 2)
        return np.array(
            [
                [cmath.exp(1j * self.gamma) * c, -cmath.exp(1j * self.phi) * s],
                [cmath.exp(-1j * self.phi) * s, cmath.exp(-1j * self.gamma) * c],
            ]
        )


def givens_gate(state: StateVector, q_a: int, q_b: int, p: GivensParams) -> StateVector:
    """Excitation-preserving rotation on qubits ``(q_a, q_b)``.

    Identity on ``|00>`` and ``|11>``; on ``(|01>, |10>)`` (``q_a`` written
    first) it applies :meth:`GivensParams.block`.
    """
    n = state.n_qubits
    if q_a == q_b:
        raise ContractError("givens_gate needs two distinct qubits")
    for q in (q_a, q_b):
        if not 0 <= q < n:
            raise IndexError(f"qubit {q} outside register of {n}")
    bit_a, bit_b = 1 << (n - 1 - q_a), 1 << (n - 1 - q_b)
    idx = np.arange(len(state), dtype=np.int64)
    i01 = idx[((idx & bit_a) == 0) & ((idx & bit_b) != 0)]
    i10 = i01 ^ bit_a ^ bit_b
    m = p.block()
    amps = state.amplitudes.copy()
    v01, v10 = state.amplitudes[i01], state.amplitudes[i10]
    amps[i01] = m[0, 0] * v01 + m[0, 1] * v10
    amps[i10] = m[1, 0] * v01 + m[1, 1] * v10
    return StateVector(amps)


def ideal_layout() -> QubitLayout:
    return QubitLayout(n_modes=2, n_particles=2, n_internal=1)


def dip_layout() -> QubitLayout:
    return QubitLayout(n_modes=2, n_particles=2, n_internal=2)


def run_hom_ideal() -> tuple[StateVector, list[BosonOutcome]]:
    """Two identical photons, one per input port, through a 50:50 beamsplitter."""
    layout = ideal_layout()
    initial = antisymmetrized_state(layout, ParticleAssignment.from_modes([0, 1]))
    final = evolve_exact(initial, hom_hamiltonian(), layout)
    return final, decode_outcomes(final, layout)


def dip_initial_state(p: GivensParams) -> StateVector:
    """Photon 0 in mode 0 with internal state |0>, photon 1 in mode 1 with zeta|0> + xi|1>."""
    assignment = ParticleAssignment.from_modes([0, 1], [(1.0, 0.0), (p.zeta, p.xi)])
    return antisymmetrized_state(dip_layout(), assignment)


def run_hom_dip(p: GivensParams) -> tuple[StateVector, float]:
    layout = dip_layout()
    final = evolve_exact(dip_initial_state(p), hom_hamiltonian(), layout)
    coincidence = outcome_table(decode_outcomes(final, layout)).get(COINCIDENCE, 0.0)
    return final, coincidence


@dataclass
class DipCurve:
    points: list[tuple[float, float]]

    @property
    def thetas(self) -> np.ndarray:
        return np.array([t for t, _ in self.points])

    @property
    def coincidences(self) -> np.ndarray:
        return np.array([c for _, c in self.points])

    def to_csv(self) -> str:
        lines = ["theta,coincidence"]
        lines += [f"{t:.17g},{c:.18f}" for t, c in self.points]
        return "\n".join(lines) + "\n"


def sweep_dip(
    theta_min: float = -math.pi,
    theta_max: float = math.pi,
    step: float = math.pi / 100,
    phi: float = 0.0,
    gamma: float = 0.0,
) -> DipCurve:
    """Coincidence probability over a theta grid; the default grid has 201 points."""
    if not step > 0:
        raise ContractError(f"step must be positive, got {step}")
    if theta_max < theta_min:
        raise ContractError("theta_max must not be below theta_min")
    # index-based grid so the endpoints land exactly
    count = int(math.floor((theta_max - theta_min) / step + 1e-9)) + 1
    points = []
    for i in range(count):
        theta = theta_min + i * step
        if i == count - 1 and abs(theta - theta_max) < 1e-9 * step:
            theta = theta_max
        elif abs(theta) < 1e-9 * step:
            theta = 0.0
        _, coincidence = run_hom_dip(GivensParams(theta, phi, gamma))
        points.append((theta, coincidence))
    return DipCurve(points)


def sample_outcomes(
    outcomes: list[BosonOutcome], shots: int, rng: np.random.Generator
) -> dict[tuple[int, ...] | None, int]:
    """Multinomial shot counts drawn from exact outcome probabilities."""
    keys = [o.occupation for o in outcomes]
    probs = np.array([o.probability for o in outcomes])
    probs = probs / probs.sum()
    counts = rng.multinomial(shots, probs)
    return {k: int(c) for k, c in zip(keys, counts)}
