"""Dense-matrix oracles shared by the tests.

Everything here is built from Kronecker products and ``scipy.linalg.expm``,
independently of the matrix-free kernels under test.
"""

import math
import re

import numpy as np
import pytest
from scipy import sparse
from scipy.linalg import expm
from scipy.sparse.linalg import expm_multiply

I2 = np.eye(2, dtype=complex)
X = np.array([[0, 1], [1, 0]], dtype=complex)
Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
Z = np.array([[1, 0], [0, -1]], dtype=complex)
PAULI = {"I": I2, "X": X, "Y": Y, "Z": Z}
SIGMA_PLUS = np.array([[0, 0], [1, 0]], dtype=complex)  # |1><0|
SIGMA_MINUS = SIGMA_PLUS.T.copy()


def kron_all(mats):
    out = np.ones((1, 1), dtype=complex)
    for m in mats:
        out = np.kron(out, m)
    return out


def dense_pauli(letters: str) -> np.ndarray:
    return kron_all(PAULI[c] for c in letters)


def dense_create(q: int, n: int) -> np.ndarray:
    return kron_all([Z] * q + [SIGMA_PLUS] + [I2] * (n - q - 1))


def dense_annihilate(q: int, n: int) -> np.ndarray:
    return kron_all([Z] * q + [SIGMA_MINUS] + [I2] * (n - q - 1))


def dense_qubit_hamiltonian(phi: np.ndarray, layout) -> np.ndarray:
    """sum over channels and mode pairs of phi[j,k] b+_j b_k, from dense ladders."""
    n = layout.n_qubits
    h = np.zeros((1 << n, 1 << n), dtype=complex)
    for mu, s in layout.channels():
        for j in range(layout.n_modes):
            for k in range(layout.n_modes):
                if phi[j, k] == 0:
                    continue
                qj, qk = layout.qubit_index(j, mu, s), layout.qubit_index(k, mu, s)
                h += phi[j, k] * dense_create(qj, n) @ dense_annihilate(qk, n)
    return h


def dense_evolution(phi: np.ndarray, t: float, layout) -> np.ndarray:
    return expm(1j * t * dense_qubit_hamiltonian(phi, layout))


def sparse_qubit_hamiltonian(phi: np.ndarray, layout) -> sparse.csr_matrix:
    """Sparse twin of :func:`dense_qubit_hamiltonian` for larger registers."""
    n = layout.n_qubits

    def ladder(q, local):
        out = sparse.identity(1, dtype=complex, format="csr")
        for m in [Z] * q + [local] + [I2] * (n - q - 1):
            out = sparse.kron(out, sparse.csr_matrix(m), format="csr")
        return out

    h = sparse.csr_matrix((1 << n, 1 << n), dtype=complex)
    for mu, s in layout.channels():
        for j in range(layout.n_modes):
            for k in range(layout.n_modes):
                if phi[j, k] != 0:
                    qj, qk = layout.qubit_index(j, mu, s), layout.qubit_index(k, mu, s)
                    h = h + phi[j, k] * ladder(qj, SIGMA_PLUS) @ ladder(qk, SIGMA_MINUS)
    return h


def evolve_vector(phi: np.ndarray, t: float, layout, v: np.ndarray) -> np.ndarray:
    """exp(i t H) v via Krylov action on the sparse Hamiltonian."""
    return expm_multiply(1j * t * sparse_qubit_hamiltonian(phi, layout), v)


def random_hermitian(m: int, rng: np.random.Generator) -> np.ndarray:
    a = rng.normal(size=(m, m)) + 1j * rng.normal(size=(m, m))
    return (a + a.conj().T) / 2


def random_unitary(m: int, rng: np.random.Generator) -> np.ndarray:
    return expm(1j * random_hermitian(m, rng))


def random_state(n: int, rng: np.random.Generator) -> np.ndarray:
    v = rng.normal(size=1 << n) + 1j * rng.normal(size=1 << n)
    return v / np.linalg.norm(v)


def equal_up_to_phase(a: np.ndarray, b: np.ndarray, atol: float) -> bool:
    k = int(np.argmax(np.abs(b)))
    if abs(b[k]) < atol:
        return np.allclose(a, b, atol=atol, rtol=0)
    phase = a[k] / b[k]
    if abs(abs(phase) - 1) > atol:
        return False
    return np.allclose(a, phase * b, atol=atol, rtol=0)


H = np.array([[1, 1], [1, -1]], dtype=complex) / math.sqrt(2)
S = np.diag([1, 1j])
ONE_QUBIT = {"h": H, "x": X, "y": Y, "z": Z, "s": S, "sdg": S.conj()}
LINE = re.compile(r"^(\w+)(?:\(([^)]*)\))?\s+(.*);$")


def simulate_qasm(text: str) -> tuple[np.ndarray, float]:
    """Independent reader for the emitted subset: returns (unitary, global phase)."""
    n, phase, u = None, 0.0, None
    for raw in text.splitlines():
        line = raw.strip()
        if m := re.match(r"// global phase (\S+)", line):
            phase = float(m.group(1))
            continue
        if not line or line.startswith(("OPENQASM", "include", "creg", "measure", "//")):
            continue
        if m := re.match(r"qreg q\[(\d+)\];", line):
            n = int(m.group(1))
            u = np.eye(1 << n, dtype=complex)
            continue
        name, params, args = LINE.match(line).groups()
        qs = [int(x) for x in re.findall(r"q\[(\d+)\]", args)]
        if name == "cx":
            c, t = qs
            proj0 = [I2] * n
            proj1 = [I2] * n
            proj0[c] = np.diag([1, 0])
            proj1[c] = np.diag([0, 1])
            proj1[t] = X
            g = kron_all(proj0) + kron_all(proj1)
        else:
            local = ONE_QUBIT.get(name)
            if name == "rz":
                lam = float(params)
                local = np.diag([np.exp(-0.5j * lam), np.exp(0.5j * lam)])
            ops = [I2] * n
            ops[qs[0]] = local
            g = kron_all(ops)
        u = g @ u
    return u, phase


@pytest.fixture
def rng():
    return np.random.default_rng(20240613)
