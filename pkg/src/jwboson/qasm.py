"""Lowering of experiments to gate lists and OpenQASM 2.0 text."""

from __future__ import annotations

import os

import numpy as np

from .circuit import Gate
from .encoding import antisymmetrize_circuit_n2
from .errors import UnsupportedError
from .evolve import rotation_schedule
from .experiment import ExperimentSpec
from .pauli import PauliString


def lower_rotation(p: PauliString, angle: float) -> list[Gate]:
    """Gates for ``exp(i angle p)``, ``p`` a Hermitian unit string.

    Basis change (H for X, S-dagger then H for Y), a CNOT parity ladder onto
    the last support qubit, ``rz(-2 angle)``, then everything undone.
    An all-identity string becomes a global phase.
    """
    sign = 1.0 if p.phase_power == 0 else -1.0
    angle = sign * angle
    support = [q for q, c in enumerate(p.letters) if c != "I"]
    if not support:
        return [Gate("gphase", (), (angle,))]
    pre: list[Gate] = []
    post: list[Gate] = []
    for q in support:
        c = p.letters[q]
        if c == "X":
            pre.append(Gate("h", (q,)))
            post.append(Gate("h", (q,)))
        elif c == "Y":
            pre += [Gate("sdg", (q,)), Gate("h", (q,))]
            post += [Gate("h", (q,)), Gate("s", (q,))]
    ladder = [Gate("cx", (a, b)) for a, b in zip(support, support[1:])]
    return pre + ladder + [Gate("rz", (support[-1],), (-2.0 * angle,))] + ladder[::-1] + post


def preparation_gates(spec: ExperimentSpec) -> list[Gate]:
    """Gates preparing the experiment's initial state from |0...0>.

    Basis states need only X gates; two bosons in distinct modes without
    internal structure use the explicit antisymmetrization circuit.
    """
    state = spec.initial_state()
    nz = np.flatnonzero(np.abs(state.amplitudes) > 1e-12)
    if nz.size == 1:
        index = int(nz[0])
        gates = [Gate("x", (q,)) for q, bit in enumerate(state.label(index)) if bit == "1"]
        phase = float(np.angle(state.amplitudes[index]))
        if phase != 0.0:
            gates.append(Gate("gphase", (), (phase,)))
        return gates
    modes = [p.mode for p in spec.assignment.particles]
    if spec.layout.n_particles == 2 and spec.layout.n_internal == 1 and modes[0] != modes[1]:
        return antisymmetrize_circuit_n2(spec.layout, (modes[0], modes[1]))
    raise UnsupportedError(
        "initial state has no gate preparation here: need a basis state or two bosons in distinct modes"
    )


def experiment_circuit(spec: ExperimentSpec) -> list[Gate]:
    gates = preparation_gates(spec)
    for p, angle in rotation_schedule(spec.hamiltonian, spec.layout, spec.method):
        gates += lower_rotation(p, angle)
    return gates


def to_qasm(gates: list[Gate], n_qubits: int, measure: bool = True) -> str:
    lines = ["OPENQASM 2.0;", 'include "qelib1.inc";', f"qreg q[{n_qubits}];"]
    if measure:
        lines.append(f"creg c[{n_qubits}];")
    phase = 0.0
    for g in gates:
        if g.name == "gphase":
            phase += g.params[0]
            continue
        args = ",".join(f"q[{q}]" for q in g.qubits)
        params = "(" + ",".join(f"{v:.17g}" for v in g.params) + ")" if g.params else ""
        lines.append(f"{g.name}{params} {args};")
    if phase:
        lines.insert(3, f"// global phase {phase:.17g}")
    if measure:
        lines.append("measure q -> c;")
    return "\n".join(lines) + "\n"


def export_qasm(spec: ExperimentSpec, path: str | os.PathLike | None = None) -> str:
    """Write the experiment as OpenQASM 2.0 (if ``path`` is given) and return the text."""
    text = to_qasm(experiment_circuit(spec), spec.layout.n_qubits)
    if path is not None:
        with open(path, "w") as fh:
            fh.write(text)
    return text
