"""Pauli strings and matrix-free statevector kernels.

Basis index convention: qubit 0 is the most significant bit, so the ket
``|q0 q1 ... q_{n-1}>`` read left to right is the binary index.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ContractError, SizeMismatchError

_LETTERS = "IXYZ"

# single-qubit products: (a, b) -> (letter, power of i)
_MUL_TABLE = {
    ("I", "I"): ("I", 0), ("I", "X"): ("X", 0), ("I", "Y"): ("Y", 0), ("I", "Z"): ("Z", 0),
    ("X", "I"): ("X", 0), ("X", "X"): ("I", 0), ("X", "Y"): ("Z", 1), ("X", "Z"): ("Y", 3),
    ("Y", "I"): ("Y", 0), ("Y", "X"): ("Z", 3), ("Y", "Y"): ("I", 0), ("Y", "Z"): ("X", 1),
    ("Z", "I"): ("Z", 0), ("Z", "X"): ("Y", 1), ("Z", "Y"): ("X", 3), ("Z", "Z"): ("I", 0),
}

_PHASES = (1 + 0j, 1j, -1 + 0j, -1j)


@dataclass(frozen=True)
class PauliString:
    """A Pauli string ``coefficient * i**phase_power * P_0 P_1 ... P_{n-1}``.

    The phase lives in the group {1, i, -1, -i} and is tracked as an integer
    power of ``i`` so that JW sign strings never accumulate rounding error.
    """

    letters: str
    phase_power: int = 0
    coefficient: float = 1.0

    def __post_init__(self) -> None:
        if not self.letters:
            raise ContractError("a Pauli string needs at least one qubit")
        bad = set(self.letters) - set(_LETTERS)
        if bad:
            raise ContractError(f"invalid Pauli letters {sorted(bad)} in {self.letters!r}")
        object.__setattr__(self, "phase_power", self.phase_power % 4)
        object.__setattr__(self, "coefficient", float(self.coefficient))

    @classmethod
    def from_phase(cls, letters: str, phase: complex, coefficient: float = 1.0) -> PauliString:
        """Build from an explicit unit phase in {1, -1, 1j, -1j}."""
        for power, value in enumerate(_PHASES):
            if phase == value:
                return cls(letters, power, coefficient)
        raise ContractError(f"phase must be one of +-1, +-i, got {phase!r}")

    @classmethod
    def single(cls, n_qubits: int, qubit: int, letter: str, coefficient: float = 1.0) -> PauliString:
        if not 0 <= qubit < n_qubits:
            raise IndexError(f"qubit {qubit} outside register of {n_qubits}")
        letters = ["I"] * n_qubits
        letters[qubit] = letter
        return cls("".join(letters), 0, coefficient)

    @property
    def n_qubits(self) -> int:
        return len(self.letters)

    @property
    def phase(self) -> complex:
        return _PHASES[self.phase_power]

    @property
    def weight(self) -> int:
        return sum(c != "I" for c in self.letters)

    def scaled(self, factor: float) -> PauliString:
        return PauliString(self.letters, self.phase_power, self.coefficient * factor)

    def unit(self) -> PauliString:
        """Same letters and phase with coefficient 1."""
        return PauliString(self.letters, self.phase_power, 1.0)

    def is_hermitian(self) -> bool:
        return self.phase_power in (0, 2)

    def __mul__(self, other: PauliString) -> PauliString:
        return pauli_mul(self, other)

    def __str__(self) -> str:
        # phase and coefficient folded into one signed number, 'i' suffix if imaginary
        value = self.coefficient * (-1 if self.phase_power in (2, 3) else 1)
        imag = "i" if self.phase_power in (1, 3) else ""
        return f"{value:+.12g}{imag} {self.letters}"

    @classmethod
    def parse(cls, text: str) -> PauliString:
        """Inverse of ``str()``, e.g. ``'+0.5 XZXI'`` or ``'-0.5i XY'``."""
        try:
            number, letters = text.split()
        except ValueError:
            raise ContractError(f"cannot parse Pauli string {text!r}") from None
        power = 0
        if number.endswith("i"):
            number, power = number[:-1], 1
        value = float(number)
        if value < 0:
            value, power = -value, power + 2
        return cls(letters, power, value)

    def to_matrix(self) -> np.ndarray:
        """Dense matrix, for oracles on small registers only."""
        single = {
            "I": np.eye(2, dtype=complex),
            "X": np.array([[0, 1], [1, 0]], dtype=complex),
            "Y": np.array([[0, -1j], [1j, 0]], dtype=complex),
            "Z": np.array([[1, 0], [0, -1]], dtype=complex),
        }
        out = np.ones((1, 1), dtype=complex)
        for c in self.letters:
            out = np.kron(out, single[c])
        return self.coefficient * self.phase * out


class StateVector:
    """Complex amplitudes over ``2**n_qubits`` computational basis states."""

    __slots__ = ("n_qubits", "amplitudes")

    def __init__(self, amplitudes, n_qubits: int | None = None):
        amps = np.array(amplitudes, dtype=complex).reshape(-1)
        size = amps.size
        n = size.bit_length() - 1
        if size == 0 or (1 << n) != size:
            raise SizeMismatchError(f"amplitude count {size} is not a power of two")
        if n_qubits is not None and n_qubits != n:
            raise SizeMismatchError(f"{size} amplitudes do not describe {n_qubits} qubits")
        self.n_qubits = n
        self.amplitudes = amps

    @classmethod
    def zeros(cls, n_qubits: int) -> StateVector:
        """The all-zero basis state |00...0>."""
        amps = np.zeros(1 << n_qubits, dtype=complex)
        amps[0] = 1.0
        return cls(amps)

    @classmethod
    def basis(cls, bits: str) -> StateVector:
        """Basis state from a ket label; commas and spaces are ignored."""
        bits = bits.replace(",", "").replace(" ", "")
        amps = np.zeros(1 << len(bits), dtype=complex)
        amps[int(bits, 2)] = 1.0
        return cls(amps)

    def copy(self) -> StateVector:
        return StateVector(self.amplitudes.copy())

    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    def probabilities(self) -> np.ndarray:
        return np.abs(self.amplitudes) ** 2

    def label(self, index: int) -> str:
        return format(index, f"0{self.n_qubits}b")

    def nonzero(self, atol: float = 1e-12) -> dict[str, complex]:
        """Map of ket label to amplitude for amplitudes above ``atol``."""
        idx = np.flatnonzero(np.abs(self.amplitudes) > atol)
        return {self.label(int(i)): complex(self.amplitudes[i]) for i in idx}

    def __len__(self) -> int:
        return self.amplitudes.size

    def __repr__(self) -> str:
        terms = " ".join(f"{a:+.4g}|{k}>" for k, a in self.nonzero(1e-9).items())
        return f"StateVector({self.n_qubits} qubits: {terms or '0'})"


def _check_sizes(a: int, b: int) -> None:
    if a != b:
        raise SizeMismatchError(f"qubit count mismatch: {a} vs {b}")


def pauli_mul(p: PauliString, q: PauliString) -> PauliString:
    """Operator product ``p @ q`` with exact phase tracking."""
    _check_sizes(p.n_qubits, q.n_qubits)
    power = p.phase_power + q.phase_power
    letters = []
    for a, b in zip(p.letters, q.letters):
        c, k = _MUL_TABLE[a, b]
        letters.append(c)
        power += k
    return PauliString("".join(letters), power, p.coefficient * q.coefficient)


def commutes(p: PauliString, q: PauliString) -> bool:
    """True iff ``pq == qp``: an even number of positions hold distinct non-identity letters."""
    _check_sizes(p.n_qubits, q.n_qubits)
    clashes = sum(a != b and a != "I" and b != "I" for a, b in zip(p.letters, q.letters))
    return clashes % 2 == 0


def _masks(p: PauliString) -> tuple[int, int, int]:
    """Bit masks (flip, sign, y-count) for the string; qubit 0 is the MSB."""
    n = p.n_qubits
    flip = sign = 0
    n_y = 0
    for q, c in enumerate(p.letters):
        bit = 1 << (n - 1 - q)
        if c in "XY":
            flip |= bit
        if c in "YZ":
            sign |= bit
        if c == "Y":
            n_y += 1
    return flip, sign, n_y


def _parity(indices: np.ndarray, mask: int) -> np.ndarray:
    return (np.bitwise_count(indices & mask) & 1).astype(np.int64)


def apply_pauli(state: StateVector, p: PauliString) -> StateVector:
    """Return ``p|state>`` using bit flips and sign flips only."""
    _check_sizes(state.n_qubits, p.n_qubits)
    flip, sign, n_y = _masks(p)
    idx = np.arange(len(state), dtype=np.int64)
    factor = p.coefficient * p.phase * (1j ** n_y)
    signs = 1 - 2 * _parity(idx, sign)
    out = np.empty_like(state.amplitudes)
    # Y|b> = i(-1)^b |1-b>, Z|b> = (-1)^b |b>, evaluated on the source index
    out[idx ^ flip] = factor * signs * state.amplitudes
    return StateVector(out)


def apply_pauli_rotation(state: StateVector, p: PauliString, angle: float) -> StateVector:
    """Return ``exp(i * angle * p)|state>`` exactly.

    ``p`` must be a Hermitian unit string (coefficient 1, phase +1 or -1).
    """
    _check_sizes(state.n_qubits, p.n_qubits)
    if p.coefficient != 1.0:
        raise ContractError(f"rotation generator must have coefficient 1, got {p.coefficient}")
    if not p.is_hermitian():
        raise ContractError("rotation generator must have phase +1 or -1")
    if angle == 0.0:
        return state.copy()
    rotated = apply_pauli(state, p).amplitudes
    return StateVector(math.cos(angle) * state.amplitudes + 1j * math.sin(angle) * rotated)


def pauli_sum_matrix(strings) -> np.ndarray:
    """Dense sum of Pauli strings; test/oracle helper for small registers."""
    strings = list(strings)
    if not strings:
        raise ContractError("empty Pauli sum")
    return sum(s.to_matrix() for s in strings)
