"""Matrix permanents and boson scattering probabilities.

This module is the independent reference the qubit simulator is checked
against; it never touches the qubit encoding.
"""

from __future__ import annotations

import itertools
import math
from collections.abc import Iterator, Sequence
from dataclasses import dataclass

import numpy as np

from .errors import ContractError, SizeMismatchError


def permanent(a) -> complex:
    """Permanent via Ryser's formula with Gray-code subset order, O(2^n n).

    Each step toggles one column in or out of the running row sums, so the
    inner update is a single vector add.
    """
    a = np.asarray(a, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise SizeMismatchError(f"permanent needs a square matrix, got shape {a.shape}")
    n = a.shape[0]
    if n == 0:
        return 1.0 + 0j
    row_sums = np.zeros(n, dtype=complex)
    total = 0j
    in_set = [False] * n
    for k in range(1, 1 << n):
        # column that flips between Gray codes k-1 and k
        j = (k & -k).bit_length() - 1
        if in_set[j]:
            row_sums -= a[:, j]
        else:
            row_sums += a[:, j]
        in_set[j] = not in_set[j]
        size = (k ^ (k >> 1)).bit_count()
        total += (-1) ** size * np.prod(row_sums)
    return complex((-1) ** n * total)


def permanent_naive(a) -> complex:
    """Sum over all permutations; O(n! n), for cross-checks on small matrices."""
    a = np.asarray(a, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise SizeMismatchError(f"permanent needs a square matrix, got shape {a.shape}")
    n = a.shape[0]
    rows = range(n)
    return complex(sum(np.prod(a[rows, list(p)]) for p in itertools.permutations(range(n))))


@dataclass(frozen=True)
class ScatteringInstance:
    """Input and output occupations through ``u``, where ``u[i, j]`` is the
    amplitude for a single boson entering mode ``i`` to leave in mode ``j``."""

    u: np.ndarray
    input_occupation: tuple[int, ...]
    output_occupation: tuple[int, ...]

    def __post_init__(self) -> None:
        u = np.asarray(self.u, dtype=complex)
        object.__setattr__(self, "u", u)
        object.__setattr__(self, "input_occupation", tuple(int(v) for v in self.input_occupation))
        object.__setattr__(self, "output_occupation", tuple(int(v) for v in self.output_occupation))
        m = u.shape[0]
        if u.shape != (m, m):
            raise SizeMismatchError(f"u must be square, got shape {u.shape}")
        for name, occ in (("input", self.input_occupation), ("output", self.output_occupation)):
            if len(occ) != m:
                raise SizeMismatchError(f"{name} occupation has {len(occ)} modes, u has {m}")
            if any(v < 0 for v in occ):
                raise ContractError(f"{name} occupation has negative entries: {occ}")
        if sum(self.input_occupation) != sum(self.output_occupation):
            raise ContractError(
                f"particle number mismatch: {sum(self.input_occupation)} in, "
                f"{sum(self.output_occupation)} out"
            )


def _expand(occupation: Sequence[int]) -> list[int]:
    return [mode for mode, count in enumerate(occupation) for _ in range(count)]


def scatter_probability(inst: ScatteringInstance) -> float:
    """``|perm(u_sub)|^2 / (prod in! prod out!)`` with rows repeated per input
    occupation and columns per output occupation."""
    rows = _expand(inst.input_occupation)
    cols = _expand(inst.output_occupation)
    sub = inst.u[np.ix_(rows, cols)]
    norm = math.prod(math.factorial(v) for v in inst.input_occupation)
    norm *= math.prod(math.factorial(v) for v in inst.output_occupation)
    return abs(permanent(sub)) ** 2 / norm


def compositions(n_modes: int, n_particles: int) -> Iterator[tuple[int, ...]]:
    """All occupation vectors of ``n_particles`` over ``n_modes``, lexicographically descending."""
    if n_modes == 1:
        yield (n_particles,)
        return
    for first in range(n_particles, -1, -1):
        for rest in compositions(n_modes - 1, n_particles - first):
            yield (first, *rest)


def output_distribution(u, input_occupation: Sequence[int]) -> dict[tuple[int, ...], float]:
    """Probability of every output occupation for a fixed input."""
    u = np.asarray(u, dtype=complex)
    n = sum(input_occupation)
    return {
        out: scatter_probability(ScatteringInstance(u, tuple(input_occupation), out))
        for out in compositions(u.shape[0], n)
    }


def _fock_amplitude(u: np.ndarray, inp: Sequence[int], out: Sequence[int]) -> complex:
    rows, cols = _expand(inp), _expand(out)
    norm = math.prod(math.factorial(v) for v in inp) * math.prod(math.factorial(v) for v in out)
    return permanent(u[np.ix_(rows, cols)]) / math.sqrt(norm)


def product_input_state(
    modes: Sequence[int], internal: Sequence[Sequence[complex]], n_modes: int
) -> dict[tuple[int, ...], complex]:
    """Normalized Fock expansion of ``prod_a (sum_s r_a[s] a+_{mode_a, s})|vac>``.

    Fock modes are the pairs ``(mode, s)`` flattened as ``mode * S + s``.
    """
    n_internal = len(internal[0])
    state: dict[tuple[int, ...], complex] = {}
    for choice in itertools.product(range(n_internal), repeat=len(modes)):
        amp = math.prod(complex(internal[a][s]) for a, s in enumerate(choice))
        if amp == 0:
            continue
        occ = [0] * (n_modes * n_internal)
        for mode, s in zip(modes, choice):
            occ[mode * n_internal + s] += 1
        key = tuple(occ)
        # a+ ... a+ |vac> = sqrt(prod n!) |n>
        state[key] = state.get(key, 0j) + amp * math.sqrt(math.prod(math.factorial(v) for v in occ))
    norm = math.sqrt(sum(abs(a) ** 2 for a in state.values()))
    if norm == 0:
        raise ContractError("input state vanishes")
    return {k: a / norm for k, a in state.items()}


def internal_state_distribution(
    u, modes: Sequence[int], internal: Sequence[Sequence[complex]]
) -> dict[tuple[int, ...], float]:
    """Spatial output distribution for bosons with internal states.

    Each internal state rides along untouched (``u`` tensored with identity);
    amplitudes over the ``(mode, s)`` Fock basis are permanents, and the
    probabilities are then summed over ``s``.
    """
    u = np.asarray(u, dtype=complex)
    m = u.shape[0]
    n_internal = len(internal[0])
    u_eff = np.kron(u, np.eye(n_internal))
    source = product_input_state(modes, internal, m)
    n = len(modes)
    result = {occ: 0.0 for occ in compositions(m, n)}
    for out in compositions(m * n_internal, n):
        amp = sum(c * _fock_amplitude(u_eff, inp, out) for inp, c in source.items())
        spatial = tuple(sum(out[i * n_internal : (i + 1) * n_internal]) for i in range(m))
        result[spatial] += abs(amp) ** 2
    return result
