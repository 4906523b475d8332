"""JSON experiment descriptions and their execution.

Schema (all indices zero-based)::

    {
      "layout": {"modes": 2, "particles": 2, "internal": 1},
      "particles": [{"mode": 0, "internal": [[1, 0]]}, {"mode": 1}],
      "hamiltonian": {"phi": [[[0, 0], [1, 0]], [[1, 0], [0, 0]]], "t": 0.7853981633974483},
      "outputs": ["outcomes", "amplitudes", "qasm"],
      "method": "auto"
    }

Complex numbers are ``[re, im]`` pairs; a bare number is read as real.
``internal`` defaults to ``[[1, 0]]`` when the layout has one internal state.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any

import numpy as np

from .encoding import (
    ParticleAssignment,
    Particle,
    QubitLayout,
    antisymmetrized_state,
    decode_outcomes,
    leakage,
    outcome_table,
)
from .errors import ContractError
from .evolve import OpticalHamiltonian, evolve_exact, single_particle_unitary
from .oracle import internal_state_distribution
from .pauli import StateVector

OUTPUT_KINDS = ("outcomes", "amplitudes", "qasm")


def _complex(value: Any, where: str) -> complex:
    if isinstance(value, (int, float)) and not isinstance(value, bool):
        return complex(value)
    if isinstance(value, (list, tuple)) and len(value) == 2 and all(
        isinstance(v, (int, float)) and not isinstance(v, bool) for v in value
    ):
        return complex(value[0], value[1])
    raise ContractError(f"{where}: expected a number or [re, im] pair, got {value!r}")


def _require(d: dict, key: str, where: str) -> Any:
    if not isinstance(d, dict) or key not in d:
        raise ContractError(f"{where}: missing required field {key!r}")
    return d[key]


@dataclass
class ExperimentSpec:
    layout: QubitLayout
    assignment: ParticleAssignment
    hamiltonian: OpticalHamiltonian
    outputs: tuple[str, ...] = ("outcomes",)
    method: str = "auto"
    qasm_path: str | None = None
    extra: dict = field(default_factory=dict)

    @classmethod
    def from_dict(cls, data: dict) -> ExperimentSpec:
        if not isinstance(data, dict):
            raise ContractError("experiment must be a JSON object")
        lay = _require(data, "layout", "experiment")
        try:
            layout = QubitLayout(
                int(_require(lay, "modes", "layout")),
                int(_require(lay, "particles", "layout")),
                int(lay.get("internal", 1)),
            )
        except (TypeError, ValueError) as exc:
            raise ContractError(f"layout: {exc}") from None

        particles = []
        for a, entry in enumerate(_require(data, "particles", "experiment")):
            where = f"particles[{a}]"
            raw = entry.get("internal", [[1, 0]] if layout.n_internal == 1 else None)
            if raw is None:
                raise ContractError(f"{where}: 'internal' is required when internal > 1")
            vec = tuple(_complex(v, f"{where}.internal[{s}]") for s, v in enumerate(raw))
            particles.append(Particle(int(_require(entry, "mode", where)), vec))
        assignment = ParticleAssignment(particles)
        assignment.validate(layout)

        ham = _require(data, "hamiltonian", "experiment")
        phi_raw = _require(ham, "phi", "hamiltonian")
        phi = np.array(
            [[_complex(v, f"hamiltonian.phi[{j}][{k}]") for k, v in enumerate(row)] for j, row in enumerate(phi_raw)]
        )
        hamiltonian = OpticalHamiltonian(phi, float(ham.get("t", 1.0)))
        if hamiltonian.n_modes != layout.n_modes:
            raise ContractError(f"hamiltonian has {hamiltonian.n_modes} modes, layout has {layout.n_modes}")

        outputs = tuple(data.get("outputs", ["outcomes"]))
        unknown = set(outputs) - set(OUTPUT_KINDS)
        if unknown:
            raise ContractError(f"unknown outputs {sorted(unknown)}; choose from {list(OUTPUT_KINDS)}")
        return cls(
            layout,
            assignment,
            hamiltonian,
            outputs,
            str(data.get("method", "auto")),
            data.get("qasm_path"),
        )

    @classmethod
    def from_json(cls, text: str) -> ExperimentSpec:
        """Parse JSON text; :class:`json.JSONDecodeError` propagates with line and column."""
        return cls.from_dict(json.loads(text))

    def initial_state(self) -> StateVector:
        return antisymmetrized_state(self.layout, self.assignment)


@dataclass
class ExperimentResult:
    final: StateVector
    outcomes: list
    oracle: dict[tuple[int, ...], float]

    @property
    def max_deviation(self) -> float:
        table = outcome_table(self.outcomes)
        keys = set(table) | set(self.oracle)
        dev = max(abs(table.get(k, 0.0) - self.oracle.get(k, 0.0)) for k in keys)
        return max(dev, leakage(self.outcomes))


def run_experiment(spec: ExperimentSpec) -> ExperimentResult:
    final = evolve_exact(spec.initial_state(), spec.hamiltonian, spec.layout, spec.method)
    outcomes = decode_outcomes(final, spec.layout)
    u = single_particle_unitary(spec.hamiltonian)
    modes = [p.mode for p in spec.assignment.particles]
    internal = [p.internal for p in spec.assignment.particles]
    oracle = internal_state_distribution(u, modes, internal)
    return ExperimentResult(final, outcomes, oracle)


def result_to_json(spec: ExperimentSpec, result: ExperimentResult) -> dict:
    table = outcome_table(result.outcomes)
    rows = [
        {"occupation": list(k), "probability": table.get(k, 0.0), "oracle": p}
        for k, p in result.oracle.items()
    ]
    out: dict[str, Any] = {
        "outcomes": rows,
        "leakage": leakage(result.outcomes),
        "max_deviation": result.max_deviation,
    }
    if "amplitudes" in spec.outputs:
        out["amplitudes"] = {k: [a.real, a.imag] for k, a in result.final.nonzero(1e-14).items()}
    return out
