"""Qubit layout for effective bosons, state preparation and outcome decoding.

N bosons in M modes, each carrying an S-dimensional internal state, are
stored as antisymmetrized fermions on M*N*S qubits. Qubits are grouped
mode-major into bundles of N*S, then by antisymmetrization label mu, then by
internal state s. All indices are zero-based.
"""

from __future__ import annotations

import itertools
import math
from collections.abc import Sequence
from dataclasses import dataclass, field

import numpy as np

from .circuit import Gate
from .errors import CapacityError, ContractError, SizeMismatchError, UnsupportedError
from .jw import apply_ladder, create
from .pauli import StateVector


@dataclass(frozen=True)
class QubitLayout:
    n_modes: int
    n_particles: int
    n_internal: int = 1

    def __post_init__(self) -> None:
        for name in ("n_modes", "n_particles", "n_internal"):
            value = getattr(self, name)
            if not isinstance(value, (int, np.integer)) or value < 1:
                raise ContractError(f"{name} must be a positive integer, got {value!r}")

    @property
    def n_qubits(self) -> int:
        return self.n_modes * self.n_particles * self.n_internal

    @property
    def bundle_size(self) -> int:
        return self.n_particles * self.n_internal

    def qubit_index(self, mode: int, mu: int, s: int = 0) -> int:
        if not 0 <= mode < self.n_modes:
            raise IndexError(f"mode {mode} outside 0..{self.n_modes - 1}")
        if not 0 <= mu < self.n_particles:
            raise IndexError(f"label {mu} outside 0..{self.n_particles - 1}")
        if not 0 <= s < self.n_internal:
            raise IndexError(f"internal state {s} outside 0..{self.n_internal - 1}")
        return mode * self.bundle_size + mu * self.n_internal + s

    def qubit_label(self, qubit: int) -> tuple[int, int, int]:
        """Inverse of :meth:`qubit_index`: ``(mode, mu, s)``."""
        if not 0 <= qubit < self.n_qubits:
            raise IndexError(f"qubit {qubit} outside register of {self.n_qubits}")
        mode, rest = divmod(qubit, self.bundle_size)
        mu, s = divmod(rest, self.n_internal)
        return mode, mu, s

    def channels(self) -> list[tuple[int, int]]:
        """All ``(mu, s)`` pairs; each one is an independent fermion species."""
        return [(mu, s) for mu in range(self.n_particles) for s in range(self.n_internal)]

    def bundle_masks(self) -> list[int]:
        """Integer bit mask of each mode bundle (qubit 0 is the most significant bit)."""
        n = self.n_qubits
        masks = []
        for mode in range(self.n_modes):
            mask = 0
            for q in range(mode * self.bundle_size, (mode + 1) * self.bundle_size):
                mask |= 1 << (n - 1 - q)
            masks.append(mask)
        return masks


@dataclass(frozen=True)
class Particle:
    """One boson: its spatial mode and internal amplitude vector."""

    mode: int
    internal: tuple[complex, ...] = (1.0,)

    def __post_init__(self) -> None:
        object.__setattr__(self, "internal", tuple(complex(c) for c in self.internal))


@dataclass(frozen=True)
class BosonOutcome:
    """Probability of an occupation vector; ``occupation is None`` marks leakage."""

    occupation: tuple[int, ...] | None
    probability: float

    @property
    def is_leakage(self) -> bool:
        return self.occupation is None


@dataclass
class ParticleAssignment:
    particles: list[Particle] = field(default_factory=list)

    @classmethod
    def from_modes(cls, modes: Sequence[int], internal: Sequence[Sequence[complex]] | None = None):
        if internal is None:
            return cls([Particle(m) for m in modes])
        return cls([Particle(m, tuple(v)) for m, v in zip(modes, internal, strict=True)])

    def __len__(self) -> int:
        return len(self.particles)

    def validate(self, layout: QubitLayout, atol: float = 1e-12) -> None:
        if len(self.particles) != layout.n_particles:
            raise ContractError(
                f"layout expects {layout.n_particles} particles, got {len(self.particles)}"
            )
        for alpha, p in enumerate(self.particles):
            if not 0 <= p.mode < layout.n_modes:
                raise ContractError(f"particle {alpha}: mode {p.mode} outside 0..{layout.n_modes - 1}")
            if len(p.internal) != layout.n_internal:
                raise ContractError(
                    f"particle {alpha}: internal vector has length {len(p.internal)}, "
                    f"layout has {layout.n_internal} internal states"
                )
            norm = math.sqrt(sum(abs(c) ** 2 for c in p.internal))
            if abs(norm - 1.0) > atol:
                raise ContractError(f"particle {alpha}: internal vector norm {norm!r} is not 1")


def permutation_sign(perm: Sequence[int]) -> int:
    sign = 1
    seen = [False] * len(perm)
    for start in range(len(perm)):
        if seen[start]:
            continue
        length = 0
        j = start
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def antisymmetrized_state(layout: QubitLayout, assignment: ParticleAssignment) -> StateVector:
    """Effective N-boson state built from antisymmetrized fermions.

    For every permutation sigma of the labels, particle alpha is created in its
    mode with label ``sigma(alpha)``; the product is ordered ``alpha = 0`` on the
    left, so the last particle acts on the vacuum first. Internal superpositions
    are expanded linearly and all signs come from the JW ladder operators.
    The result is normalized, which supplies the bunching factor when several
    particles share a mode.
    """
    assignment.validate(layout)
    n = layout.n_qubits
    vacuum = StateVector.zeros(n)
    total = np.zeros(1 << n, dtype=complex)
    for perm in itertools.permutations(range(layout.n_particles)):
        vec = vacuum
        for alpha in reversed(range(layout.n_particles)):
            p = assignment.particles[alpha]
            acc = np.zeros_like(total)
            for s, c in enumerate(p.internal):
                if c == 0:
                    continue
                q = layout.qubit_index(p.mode, perm[alpha], s)
                acc += c * apply_ladder(vec, create(q, n)).amplitudes
            vec = StateVector(acc)
        total += permutation_sign(perm) * vec.amplitudes
    norm = np.linalg.norm(total)
    if norm < 1e-12:
        raise CapacityError("particles cancel out: no room for them in the requested modes")
    return StateVector(total / norm)


def antisymmetrize_circuit_n2(layout: QubitLayout, modes: tuple[int, int] = (0, 1)) -> list[Gate]:
    """Gates taking |0...0> to the two-boson state with one particle in each of ``modes``.

    Seven gates: a Hadamard makes the branch qubit, three CNOTs (two behind X
    flips) fan the branches out, and a Z fixes the relative minus sign.
    """
    if layout.n_particles != 2:
        raise UnsupportedError(f"explicit antisymmetrization only for N = 2, got N = {layout.n_particles}")
    if layout.n_internal != 1:
        raise UnsupportedError("explicit antisymmetrization only for S = 1")
    i1, i2 = modes
    if i1 == i2:
        raise UnsupportedError("circuit prepares particles in two distinct modes")
    a = layout.qubit_index(i1, 0)  # branch qubit, occupied in the + term
    b = layout.qubit_index(i1, 1)
    c = layout.qubit_index(i2, 0)
    d = layout.qubit_index(i2, 1)
    # target: (b+_{i1,0} b+_{i2,1} - b+_{i1,1} b+_{i2,0})|vac>/sqrt2, signs via JW
    sign_plus = _pair_sign(layout, a, d)
    sign_minus = -_pair_sign(layout, b, c)
    gates = [
        Gate("h", (a,)),
        Gate("cx", (a, d)),
        Gate("x", (b,)),
        Gate("cx", (a, b)),
        Gate("x", (c,)),
        Gate("cx", (a, c)),
    ]
    # amplitudes are now +1/sqrt2 on both branches; flip the one that needs it
    if sign_plus != sign_minus:
        gates.append(Gate("z", (b,) if sign_minus < 0 else (a,)))
    elif sign_plus < 0:
        gates.append(Gate("gphase", (), (math.pi,)))
    return gates


def _pair_sign(layout: QubitLayout, q_first: int, q_second: int) -> int:
    """Sign of ``b+_{q_first} b+_{q_second}|vac>`` on its basis state."""
    n = layout.n_qubits
    vec = apply_ladder(apply_ladder(StateVector.zeros(n), create(q_second, n)), create(q_first, n))
    return 1 if vec.amplitudes[np.flatnonzero(vec.amplitudes)[0]].real > 0 else -1


def decode_outcomes(state: StateVector, layout: QubitLayout, atol: float = 0.0) -> list[BosonOutcome]:
    """Per-mode excitation counts, summed over labels and internal states.

    Basis states whose total excitation differs from N are pooled into a
    single leakage entry (``occupation=None``), reported only when nonzero.
    """
    if state.n_qubits != layout.n_qubits:
        raise SizeMismatchError(f"state has {state.n_qubits} qubits, layout needs {layout.n_qubits}")
    probs = state.probabilities()
    idx = np.flatnonzero(probs > atol)
    counts = np.stack([np.bitwise_count(idx & m) for m in layout.bundle_masks()], axis=1)
    table: dict[tuple[int, ...], float] = {}
    leak = 0.0
    for row, p in zip(counts, probs[idx]):
        if row.sum() != layout.n_particles:
            leak += float(p)
            continue
        key = tuple(int(v) for v in row)
        table[key] = table.get(key, 0.0) + float(p)
    outcomes = [BosonOutcome(k, table[k]) for k in sorted(table, reverse=True)]
    if leak > 0.0:
        outcomes.append(BosonOutcome(None, leak))
    return outcomes


def outcome_table(outcomes: Sequence[BosonOutcome]) -> dict[tuple[int, ...], float]:
    """Occupation -> probability, leakage dropped."""
    return {o.occupation: o.probability for o in outcomes if o.occupation is not None}


def leakage(outcomes: Sequence[BosonOutcome]) -> float:
    return sum(o.probability for o in outcomes if o.occupation is None)
