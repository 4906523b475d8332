"""Linear-optical evolution of encoded bosons as exact Pauli rotations.

Two mode-transfer conventions appear here:

* ``single_particle_unitary`` returns ``u`` with ``u[i, j]`` the amplitude for
  a boson entering mode ``i`` to leave in mode ``j`` (``u = exp(i t phi)^T``).
  This is the matrix the permanent oracle consumes.
* ``mode_propagator`` returns ``exp(i t phi)`` itself, which acts on
  single-particle amplitude column vectors and composes left-to-right with
  the circuit: ``Gamma(A @ B) = Gamma(A) Gamma(B)``.
"""

from __future__ import annotations

import cmath
import math
from collections.abc import Sequence
from dataclasses import dataclass

import numpy as np

from .encoding import QubitLayout
from .errors import ContractError, SizeMismatchError
from .jw import hopping_terms, number_term
from .pauli import PauliString, StateVector, apply_pauli_rotation, commutes

HERMITIAN_ATOL = 1e-12
UNITARY_ATOL = 1e-10


@dataclass(frozen=True)
class OpticalHamiltonian:
    """Mode-coupling matrix ``phi`` (Hermitian, M x M) and evolution time ``t``."""

    phi: np.ndarray
    t: float = 1.0

    def __post_init__(self) -> None:
        phi = np.atleast_2d(np.asarray(self.phi, dtype=complex))
        object.__setattr__(self, "phi", phi)
        object.__setattr__(self, "t", float(self.t))
        m = phi.shape[0]
        if phi.shape != (m, m):
            raise SizeMismatchError(f"phi must be square, got shape {phi.shape}")
        diff = np.abs(phi - phi.conj().T)
        if diff.max() > HERMITIAN_ATOL:
            j, k = np.unravel_index(int(np.argmax(diff)), diff.shape)
            raise ContractError(
                f"phi is not Hermitian: phi[{j}][{k}] = {phi[j, k]} but "
                f"conj(phi[{k}][{j}]) = {np.conj(phi[k, j])}"
            )

    @property
    def n_modes(self) -> int:
        return self.phi.shape[0]


def _expi_hermitian(h: np.ndarray, t: float) -> np.ndarray:
    w, v = np.linalg.eigh(h)
    return (v * np.exp(1j * t * w)) @ v.conj().T


def mode_propagator(h: OpticalHamiltonian) -> np.ndarray:
    """``exp(i t phi)``, acting on single-particle amplitude columns."""
    return _expi_hermitian(h.phi, h.t)


def single_particle_unitary(h: OpticalHamiltonian) -> np.ndarray:
    """Input-row / output-column transfer matrix ``u = exp(i t phi)^T``."""
    return mode_propagator(h).T


def is_unitary(u: np.ndarray, atol: float = UNITARY_ATOL) -> bool:
    u = np.asarray(u)
    return u.ndim == 2 and u.shape[0] == u.shape[1] and np.allclose(
        u @ u.conj().T, np.eye(u.shape[0]), atol=atol, rtol=0
    )


def qubit_hamiltonian(h: OpticalHamiltonian, layout: QubitLayout) -> list[PauliString]:
    """JW image of ``t * sum_{mu,s} sum_{j,k} phi[j,k] b+_{j mu s} b_{k mu s}``.

    Coefficients already include ``t``; zero couplings emit nothing.
    """
    if h.n_modes != layout.n_modes:
        raise SizeMismatchError(f"phi has {h.n_modes} modes, layout has {layout.n_modes}")
    n = layout.n_qubits
    strings: list[PauliString] = []
    for mu, s in layout.channels():
        for j in range(layout.n_modes):
            qj = layout.qubit_index(j, mu, s)
            diag = h.t * h.phi[j, j].real
            if diag != 0.0:
                strings.extend(p.scaled(diag) for p in number_term(qj, n))
            for k in range(j + 1, layout.n_modes):
                coeff = h.t * h.phi[j, k]
                if coeff != 0:
                    strings.extend(hopping_terms(qj, layout.qubit_index(k, mu, s), coeff, n))
    return strings


@dataclass(frozen=True)
class BeamsplitterLayer:
    """One factor of a mode-mesh decomposition.

    Two-mode layers act on ``modes = (j, k)`` with block
    ``diag(e^{i a_j}, e^{i a_k}) @ [[cos t, i sin t], [i sin t, cos t]] @ diag(e^{i phi}, 1)``
    where ``(a_j, a_k) = phases`` and ``t = theta``. Single-mode layers are a
    bare phase ``e^{i phases[0]}`` on ``modes[0]``.
    """

    modes: tuple[int, ...]
    theta: float = 0.0
    phi: float = 0.0
    phases: tuple[float, ...] = (0.0, 0.0)

    def block(self) -> np.ndarray:
        if len(self.modes) == 1:
            return np.array([[cmath.exp(1j * self.phases[0])]])
        c, s = math.cos(self.theta), math.sin(self.theta)
        mix = np.array([[c, 1j * s], [1j * s, c]])
        out_ph = np.diag(np.exp(1j * np.asarray(self.phases)))
        in_ph = np.diag([cmath.exp(1j * self.phi), 1.0])
        return out_ph @ mix @ in_ph

    def embed(self, n_modes: int) -> np.ndarray:
        full = np.eye(n_modes, dtype=complex)
        full[np.ix_(self.modes, self.modes)] = self.block()
        return full


def _layer_from_block(j: int, k: int, v: np.ndarray, atol: float = 1e-13) -> BeamsplitterLayer:
    c, s = abs(v[0, 0]), abs(v[0, 1])
    theta = math.atan2(s, c)
    if s <= atol:
        return BeamsplitterLayer((j, k), 0.0, cmath.phase(v[0, 0]), (0.0, cmath.phase(v[1, 1])))
    a_j = cmath.phase(v[0, 1]) - math.pi / 2
    if c <= atol:
        return BeamsplitterLayer((j, k), math.pi / 2, 0.0, (a_j, cmath.phase(v[1, 0]) - math.pi / 2))
    return BeamsplitterLayer((j, k), theta, cmath.phase(v[0, 0]) - a_j, (a_j, cmath.phase(v[1, 1])))


def decompose_mesh(u) -> list[BeamsplitterLayer]:
    """Factor a unitary into nearest-neighbour two-mode layers and phases.

    Layers are returned in application order: ``u == E[-1] @ ... @ E[0]``
    with ``E[i] = layers[i].embed(M)``. Givens rotations clear the lower
    triangle column by column; the leftover diagonal is folded into the last
    nulling block, and any phases outside it become single-mode layers.
    """
    u = np.asarray(u, dtype=complex)
    if not is_unitary(u):
        raise ContractError("decompose_mesh needs a unitary matrix")
    m = u.shape[0]
    if m == 1:
        return [BeamsplitterLayer((0,), phases=(cmath.phase(u[0, 0]),))]
    work = u.copy()
    nulling: list[tuple[int, np.ndarray]] = []  # (row, G) with G acting on rows (row-1, row)
    for col in range(m - 1):
        for row in range(m - 1, col, -1):
            a, b = work[row - 1, col], work[row, col]
            r = math.hypot(abs(a), abs(b))
            if abs(b) == 0.0 or r == 0.0:
                g = np.eye(2, dtype=complex)
            else:
                g = np.array([[a.conjugate(), b.conjugate()], [-b, a]]) / r
            work[[row - 1, row], :] = g @ work[[row - 1, row], :]
            nulling.append((row, g))
    # u = G_1^+ ... G_n^+ D with D = work diagonal; G_n acts on modes (m-2, m-1)
    diag = np.diag(work).copy()
    layers = [BeamsplitterLayer((mode,), phases=(cmath.phase(diag[mode]),)) for mode in range(m - 2)]
    for idx, (row, g) in enumerate(reversed(nulling)):
        block = g.conj().T
        if idx == 0:
            block = block @ np.diag(diag[m - 2 :])
        layers.append(_layer_from_block(row - 1, row, block))
    return layers


def reconstruct_mesh(layers: Sequence[BeamsplitterLayer], n_modes: int) -> np.ndarray:
    out = np.eye(n_modes, dtype=complex)
    for layer in layers:
        out = layer.embed(n_modes) @ out
    return out


def _phase_rotations(qubit: int, angle: float, n: int) -> list[tuple[PauliString, float]]:
    # exp(i a n_q) = exp(i a/2) exp(-i a/2 Z_q)
    if angle == 0.0:
        return []
    return [
        (PauliString("I" * n), angle / 2),
        (PauliString.single(n, qubit, "Z"), -angle / 2),
    ]


def _mesh_rotations(layers, layout: QubitLayout) -> list[tuple[PauliString, float]]:
    n = layout.n_qubits
    out: list[tuple[PauliString, float]] = []
    for layer in layers:
        for mu, s in layout.channels():
            qubits = [layout.qubit_index(mode, mu, s) for mode in layer.modes]
            if len(qubits) == 1:
                out += _phase_rotations(qubits[0], layer.phases[0], n)
                continue
            qj, qk = qubits
            out += _phase_rotations(qj, layer.phi, n)
            if layer.theta != 0.0:
                for p in hopping_terms(qj, qk, layer.theta, n):
                    out.append((p.unit(), p.coefficient))
            out += _phase_rotations(qj, layer.phases[0], n)
            out += _phase_rotations(qk, layer.phases[1], n)
    return out


def _generator_rotations(strings: Sequence[PauliString]) -> list[tuple[PauliString, float]]:
    out = []
    for p in strings:
        if not p.is_hermitian():
            raise ContractError(f"non-Hermitian Hamiltonian term {p}")
        sign = 1.0 if p.phase_power == 0 else -1.0
        out.append((PauliString(p.letters), sign * p.coefficient))
    return out


def all_commute(strings: Sequence[PauliString]) -> bool:
    return all(
        commutes(strings[a], strings[b])
        for a in range(len(strings))
        for b in range(a + 1, len(strings))
    )


def rotation_schedule(
    h: OpticalHamiltonian, layout: QubitLayout, method: str = "auto"
) -> list[tuple[PauliString, float]]:
    """Ordered ``(P, angle)`` pairs whose product of ``exp(i angle P)`` is the evolution.

    ``method``: ``"rotations"`` exponentiates the Hamiltonian strings one by
    one and requires them to commute; ``"mesh"`` goes through
    :func:`decompose_mesh`; ``"auto"`` picks rotations when they commute.
    """
    if method not in ("auto", "rotations", "mesh"):
        raise ContractError(f"unknown method {method!r}")
    if method != "mesh":
        strings = qubit_hamiltonian(h, layout)
        if all_commute(strings):
            return _generator_rotations(strings)
        if method == "rotations":
            raise ContractError("Hamiltonian strings do not commute; use method='mesh'")
    return _mesh_rotations(decompose_mesh(mode_propagator(h)), layout)


def evolve_exact(
    state: StateVector, h: OpticalHamiltonian, layout: QubitLayout, method: str = "auto"
) -> StateVector:
    """Apply ``exp(i t H_qubit)`` with no Trotter error."""
    if state.n_qubits != layout.n_qubits:
        raise SizeMismatchError(f"state has {state.n_qubits} qubits, layout needs {layout.n_qubits}")
    for p, angle in rotation_schedule(h, layout, method):
        state = apply_pauli_rotation(state, p, angle)
    return state
