import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import dense_evolution
from jwboson.encoding import ParticleAssignment, antisymmetrized_state, decode_outcomes, outcome_table
from jwboson.errors import ContractError
from jwboson.hom import (
    COINCIDENCE,
    GivensParams,
    dip_initial_state,
    dip_layout,
    givens_gate,
    hom_hamiltonian,
    run_hom_dip,
    run_hom_ideal,
    sample_outcomes,
    sweep_dip,
)
from jwboson.pauli import StateVector

R2 = 1 / math.sqrt(2)
angles = st.floats(-math.pi, math.pi, allow_nan=False)


class TestGivens:
    def test_zero_is_identity(self, rng):
        v = rng.normal(size=16) + 1j * rng.normal(size=16)
        out = givens_gate(StateVector(v), 1, 3, GivensParams(0.0))
        assert np.allclose(out.amplitudes, v)

    def test_pi_block(self):
        assert np.allclose(GivensParams(math.pi).block(), [[0, -1], [1, 0]], atol=1e-15)

    def test_pi_swaps_excitation(self):
        out = givens_gate(StateVector.basis("10"), 0, 1, GivensParams(math.pi))
        assert np.allclose(out.amplitudes, [0, -1, 0, 0], atol=1e-15)

    def test_pi_maps_01_to_10(self):
        out = givens_gate(StateVector.basis("01"), 0, 1, GivensParams(math.pi))
        assert np.allclose(out.amplitudes, [0, 0, 1, 0], atol=1e-15)

    def test_leaves_00_and_11(self):
        p = GivensParams(1.1, 0.4, -0.3)
        for bits in ("00", "11"):
            v = StateVector.basis(bits)
            assert np.allclose(givens_gate(v, 0, 1, p).amplitudes, v.amplitudes)

    def test_block_unitary(self):
        m = GivensParams(0.7, 1.3, -2.1).block()
        assert np.allclose(m.conj().T @ m, np.eye(2))

    def test_prepares_dip_input_from_identical_photons(self):
        # both photons in internal |0>, then rotate the internal pair of each mode-1 label
        lay = dip_layout()
        base = antisymmetrized_state(lay, ParticleAssignment.from_modes([0, 1], [(1, 0), (1, 0)]))
        for theta, phi in [(0.3, 0.0), (1.9, 0.8), (-2.5, -1.4)]:
            p = GivensParams(theta, phi)
            out = givens_gate(givens_gate(base, 4, 5, p), 6, 7, p)
            assert np.max(np.abs(out.amplitudes - dip_initial_state(p).amplitudes)) < 1e-14

    def test_rejects_same_qubit(self):
        with pytest.raises(ContractError):
            givens_gate(StateVector.basis("00"), 1, 1, GivensParams(0.2))


class TestIdeal:
    def test_final_state(self):
        final, _ = run_hom_ideal()
        expected = np.zeros(16, dtype=complex)
        expected[0b1100] = expected[0b0011] = 1j * R2
        assert np.max(np.abs(final.amplitudes - expected)) < 1e-10

    def test_outcomes(self):
        _, outcomes = run_hom_ideal()
        table = outcome_table(outcomes)
        assert table[(2, 0)] == pytest.approx(0.5, abs=1e-10)
        assert table[(0, 2)] == pytest.approx(0.5, abs=1e-10)
        assert table.get(COINCIDENCE, 0.0) < 1e-10


class TestDip:
    @pytest.mark.parametrize("theta, expected", [(0.0, 0.0), (math.pi / 2, 0.25), (math.pi, 0.5)])
    def test_landmarks(self, theta, expected):
        _, c = run_hom_dip(GivensParams(theta))
        assert c == pytest.approx(expected, abs=1e-10)

    @settings(max_examples=40, deadline=None)
    @given(angles, angles, angles)
    def test_closed_form_any_phases(self, theta, phi, gamma):
        _, c = run_hom_dip(GivensParams(theta, phi, gamma))
        assert c == pytest.approx(math.sin(theta / 2) ** 2 / 2, abs=1e-10)

    def test_final_state_matches_dense(self):
        p = GivensParams(1.3, 0.5, -0.2)
        final, _ = run_hom_dip(p)
        h = hom_hamiltonian()
        ref = dense_evolution(h.phi, h.t, dip_layout()) @ dip_initial_state(p).amplitudes
        assert np.max(np.abs(final.amplitudes - ref)) < 1e-12

    def test_final_state_shape(self):
        # the two-photons-same-label block keeps amplitude i*zeta/sqrt2, the mixed block xi/(2 sqrt2)
        p = GivensParams(0.9, 0.3)
        final, _ = run_hom_dip(p)
        amps = final.nonzero(atol=1e-12)
        assert amps["10100000"] == pytest.approx(1j * p.zeta * R2, abs=1e-12)
        assert amps["00001010"] == pytest.approx(1j * p.zeta * R2, abs=1e-12)
        assert abs(amps["10000001"]) == pytest.approx(abs(p.xi) / (2 * math.sqrt(2)), abs=1e-12)
        assert len(amps) == 10
        assert final.norm() == pytest.approx(1.0, abs=1e-12)


class TestSweep:
    def test_default_grid(self):
        curve = sweep_dip()
        assert len(curve.points) == 201
        assert curve.thetas[0] == -math.pi and curve.thetas[-1] == math.pi
        assert curve.thetas[100] == 0.0

    def test_curve_values(self):
        curve = sweep_dip()
        expected = np.sin(curve.thetas / 2) ** 2 / 2
        assert np.max(np.abs(curve.coincidences - expected)) < 1e-10
        assert curve.coincidences[100] == 0.0 or curve.coincidences[100] < 1e-15

    def test_phase_invariance(self):
        a = sweep_dip(step=math.pi / 10)
        b = sweep_dip(step=math.pi / 10, phi=0.7, gamma=-1.2)
        assert np.max(np.abs(a.coincidences - b.coincidences)) < 1e-10

    def test_symmetric_and_bounded(self):
        c = sweep_dip().coincidences
        assert np.max(np.abs(c - c[::-1])) < 1e-10
        assert c.min() >= 0.0 and c.max() <= 0.5 + 1e-10

    def test_norm_across_sweep(self):
        for theta in np.linspace(-math.pi, math.pi, 21):
            final, _ = run_hom_dip(GivensParams(theta, 0.4, 1.0))
            assert final.norm() == pytest.approx(1.0, abs=1e-12)

    def test_theta_zero_matches_ideal(self):
        final, _ = run_hom_dip(GivensParams(0.0))
        dip = outcome_table(decode_outcomes(final, dip_layout()))
        _, ideal = run_hom_ideal()
        ideal = outcome_table(ideal)
        for occ in [(2, 0), (1, 1), (0, 2)]:
            assert dip.get(occ, 0.0) == pytest.approx(ideal.get(occ, 0.0), abs=1e-10)

    def test_csv(self):
        text = sweep_dip(0.0, 1.0, 0.5).to_csv()
        lines = text.splitlines()
        assert lines[0] == "theta,coincidence"
        assert lines[1] == "0,0.000000000000000000"
        assert len(lines) == 4

    @pytest.mark.parametrize("step", [0.0, -0.1])
    def test_rejects_bad_step(self, step):
        with pytest.raises(ContractError):
            sweep_dip(step=step)

    def test_rejects_reversed_range(self):
        with pytest.raises(ContractError):
            sweep_dip(1.0, 0.0)


def test_sampler_counts(rng):
    _, outcomes = run_hom_ideal()
    counts = sample_outcomes(outcomes, 8192, rng)
    assert sum(counts.values()) == 8192
    assert counts.get(COINCIDENCE, 0) == 0
    assert abs(counts[(2, 0)] - 4096) < 3 * math.sqrt(8192 * 0.25)
