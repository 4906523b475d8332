"""Jordan-Wigner images of fermionic ladder operators and bilinears.

Conventions: ``sigma+ = |1><0| = (X - iY)/2`` creates, ``sigma- = |0><1| =
(X + iY)/2`` annihilates, and every qubit before the target carries a Z.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ContractError, SizeMismatchError
from .pauli import PauliString, StateVector

CREATE = "create"
ANNIHILATE = "annihilate"


@dataclass(frozen=True)
class LadderOperator:
    qubit: int
    kind: str
    n_qubits: int

    def __post_init__(self) -> None:
        if self.kind not in (CREATE, ANNIHILATE):
            raise ContractError(f"kind must be 'create' or 'annihilate', got {self.kind!r}")
        if not 0 <= self.qubit < self.n_qubits:
            raise IndexError(f"qubit {self.qubit} outside register of {self.n_qubits}")

    def to_matrix(self) -> np.ndarray:
        """Dense ``Z...Z sigma(+/-) I...I``; oracle use only."""
        z = np.diag([1.0, -1.0]).astype(complex)
        sigma = np.zeros((2, 2), dtype=complex)
        if self.kind == CREATE:
            sigma[1, 0] = 1.0
        else:
            sigma[0, 1] = 1.0
        out = np.ones((1, 1), dtype=complex)
        for q in range(self.n_qubits):
            if q < self.qubit:
                out = np.kron(out, z)
            elif q == self.qubit:
                out = np.kron(out, sigma)
            else:
                out = np.kron(out, np.eye(2))
        return out


def create(qubit: int, n_qubits: int) -> LadderOperator:
    return LadderOperator(qubit, CREATE, n_qubits)


def annihilate(qubit: int, n_qubits: int) -> LadderOperator:
    return LadderOperator(qubit, ANNIHILATE, n_qubits)


def ladder_to_pauli_pair(op: LadderOperator) -> tuple[PauliString, PauliString]:
    """The X-part and Y-part whose sum is the ladder operator.

    ``create -> (+1/2 Z..ZX, -i/2 Z..ZY)`` and ``annihilate -> (+1/2 Z..ZX, +i/2 Z..ZY)``.
    """
    prefix = "Z" * op.qubit
    suffix = "I" * (op.n_qubits - op.qubit - 1)
    x_part = PauliString(prefix + "X" + suffix, 0, 0.5)
    y_power = 3 if op.kind == CREATE else 1
    y_part = PauliString(prefix + "Y" + suffix, y_power, 0.5)
    return x_part, y_part


def apply_ladder(state: StateVector, op: LadderOperator) -> StateVector:
    """Apply a JW ladder operator directly on the amplitudes.

    Creation on an occupied qubit (or annihilation on an empty one) gives 0;
    otherwise the bit flips and the amplitude picks up ``(-1)`` to the number
    of occupied qubits before the target.
    """
    if state.n_qubits != op.n_qubits:
        raise SizeMismatchError(f"qubit count mismatch: {state.n_qubits} vs {op.n_qubits}")
    n = op.n_qubits
    bit = 1 << (n - 1 - op.qubit)
    before = ((1 << n) - 1) ^ ((bit << 1) - 1)  # bits of qubits 0..qubit-1
    idx = np.arange(len(state), dtype=np.int64)
    occupied = (idx & bit) != 0
    source = ~occupied if op.kind == CREATE else occupied
    signs = 1 - 2 * (np.bitwise_count(idx & before) & 1).astype(np.int64)
    out = np.zeros_like(state.amplitudes)
    src = idx[source]
    out[src ^ bit] = signs[source] * state.amplitudes[src]
    return StateVector(out)


def _span(n_qubits: int, lo: int, hi: int, first: str, last: str) -> str:
    return "I" * lo + first + "Z" * (hi - lo - 1) + last + "I" * (n_qubits - hi - 1)


def hopping_terms(j: int, k: int, coeff: complex, n_qubits: int) -> list[PauliString]:
    """Pauli strings summing to ``coeff b+_j b_k + conj(coeff) b+_k b_j``.

    A real coefficient ``g`` gives ``(g/2)(X Z..Z X + Y Z..Z Y)``; the imaginary
    part ``h`` adds ``(h/2)(Y Z..Z X - X Z..Z Y)`` (letters listed from the
    lower qubit). Zero parts are omitted.
    """
    if j == k:
        raise ContractError("diagonal term: use number_term for j == k")
    for q in (j, k):
        if not 0 <= q < n_qubits:
            raise IndexError(f"qubit {q} outside register of {n_qubits}")
    coeff = complex(coeff)
    if j > k:
        j, k, coeff = k, j, coeff.conjugate()
    re, im = coeff.real, coeff.imag
    terms = []
    if re != 0.0:
        terms.append(PauliString(_span(n_qubits, j, k, "X", "X"), 0, re / 2))
        terms.append(PauliString(_span(n_qubits, j, k, "Y", "Y"), 0, re / 2))
    if im != 0.0:
        terms.append(PauliString(_span(n_qubits, j, k, "X", "Y"), 2, im / 2))
        terms.append(PauliString(_span(n_qubits, j, k, "Y", "X"), 0, im / 2))
    return terms


def number_term(j: int, n_qubits: int) -> list[PauliString]:
    """``{1/2 I, -1/2 Z_j}``, summing to the occupation number ``b+_j b_j``."""
    if not 0 <= j < n_qubits:
        raise IndexError(f"qubit {j} outside register of {n_qubits}")
    return [
        PauliString("I" * n_qubits, 0, 0.5),
        PauliString("I" * j + "Z" + "I" * (n_qubits - j - 1), 2, 0.5),
    ]
