"""Minimal gate model and statevector execution for exported circuits."""

from __future__ import annotations

import cmath
import math
from collections.abc import Iterable
from dataclasses import dataclass

import numpy as np

from .errors import ContractError
from .pauli import StateVector

_SQRT_HALF = 1 / math.sqrt(2)

_FIXED = {
    "h": np.array([[_SQRT_HALF, _SQRT_HALF], [_SQRT_HALF, -_SQRT_HALF]], dtype=complex),
    "x": np.array([[0, 1], [1, 0]], dtype=complex),
    "y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "z": np.array([[1, 0], [0, -1]], dtype=complex),
    "s": np.array([[1, 0], [0, 1j]], dtype=complex),
    "sdg": np.array([[1, 0], [0, -1j]], dtype=complex),
}


@dataclass(frozen=True)
class Gate:
    """A named gate on explicit qubits; ``params`` are angles in radians.

    ``rz(l)`` is ``exp(-i l Z / 2)``; ``gphase(a)`` multiplies the state by
    ``exp(i a)`` and touches no qubit.
    """

    name: str
    qubits: tuple[int, ...]
    params: tuple[float, ...] = ()


def _single_matrix(gate: Gate) -> np.ndarray:
    if gate.name in _FIXED:
        return _FIXED[gate.name]
    if gate.name == "rz":
        (lam,) = gate.params
        return np.diag([cmath.exp(-0.5j * lam), cmath.exp(0.5j * lam)])
    raise ContractError(f"unknown gate {gate.name!r}")


def apply_gate(state: StateVector, gate: Gate) -> StateVector:
    n = state.n_qubits
    if any(not 0 <= q < n for q in gate.qubits):
        raise ContractError(f"gate {gate.name} on qubits {gate.qubits} outside register of {n}")
    if gate.name == "gphase":
        return StateVector(cmath.exp(1j * gate.params[0]) * state.amplitudes)
    if gate.name == "cx":
        control, target = gate.qubits
        if control == target:
            raise ContractError("cx needs distinct control and target")
        idx = np.arange(len(state), dtype=np.int64)
        cbit, tbit = 1 << (n - 1 - control), 1 << (n - 1 - target)
        perm = np.where(idx & cbit, idx ^ tbit, idx)
        return StateVector(state.amplitudes[perm])
    (q,) = gate.qubits
    amps = state.amplitudes.reshape(1 << q, 2, 1 << (n - q - 1))
    out = np.einsum("ab,ibj->iaj", _single_matrix(gate), amps)
    return StateVector(out.reshape(-1))


def run(gates: Iterable[Gate], state: StateVector) -> StateVector:
    for gate in gates:
        state = apply_gate(state, gate)
    return state
