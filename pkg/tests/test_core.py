import numpy as np
import pytest

from scattergate import (
    SpinState,
    TwoQubitGate,
    apply_gate,
    basis_state,
    concurrence,
    identity_gate,
    swap_operator,
)
from scattergate.smatrix import ScatteringContext, Statistics, build_gate

RNG = np.random.default_rng(20240817)


def random_state():
    amp = RNG.normal(size=4) + 1j * RNG.normal(size=4)
    return SpinState(amp / np.linalg.norm(amp))


def random_single_qubit_unitary():
    m = RNG.normal(size=(2, 2)) + 1j * RNG.normal(size=(2, 2))
    q, r = np.linalg.qr(m)
    return q * (np.diag(r) / np.abs(np.diag(r)))


class TestSwap:
    def test_permutes_ud(self):
        out = apply_gate(swap_operator(), basis_state("ud"))
        np.testing.assert_allclose(out.amplitudes, basis_state("du").amplitudes)

    def test_fixes_symmetric(self):
        out = apply_gate(swap_operator(), basis_state("uu"))
        np.testing.assert_allclose(out.amplitudes, basis_state("uu").amplitudes)

    def test_involution(self):
        m = swap_operator().matrix
        np.testing.assert_array_equal(m @ m, np.eye(4))


class TestApplyGate:
    def test_identity(self):
        s = random_state()
        out = apply_gate(identity_gate(), s)
        np.testing.assert_array_equal(out.amplitudes, s.amplitudes)

    def test_swap_component_permutation(self):
        s = SpinState([0.0, 1.0 / np.sqrt(2), 1j / np.sqrt(2), 0.0])
        out = apply_gate(swap_operator(), s)
        np.testing.assert_allclose(
            out.amplitudes, [0.0, 1j / np.sqrt(2), 1.0 / np.sqrt(2), 0.0]
        )

    def test_optimal_boson_gate_on_ud(self):
        # At p_{A+B} = c the ud row is ((1-i)/2, -(1+i)/2): the maximally
        # entangled state e^{-i pi/4}/sqrt(2) (|ud> - i |du>).
        gate = build_gate(ScatteringContext(Statistics.BOSON, 1.0, 0.0, 1.0))
        out = apply_gate(gate, basis_state("ud"))
        expected = np.array([0.0, (1 - 1j) / 2, -(1 + 1j) / 2, 0.0])
        np.testing.assert_allclose(out.amplitudes, expected, atol=1e-15)
        bell = np.exp(-1j * np.pi / 4) / np.sqrt(2) * np.array([0, 1, -1j, 0])
        phase = out.amplitudes[1] / bell[1]
        np.testing.assert_allclose(out.amplitudes, phase * bell, atol=1e-15)

    def test_rejects_unnormalized(self):
        with pytest.raises(ValueError, match="not normalized"):
            apply_gate(identity_gate(), SpinState([1.0, 1.0, 0.0, 0.0]))

    def test_norm_preserved_by_random_unitaries(self):
        for _ in range(50):
            m = RNG.normal(size=(4, 4)) + 1j * RNG.normal(size=(4, 4))
            q, r = np.linalg.qr(m)
            gate = TwoQubitGate(q * (np.diag(r) / np.abs(np.diag(r))))
            out = apply_gate(gate, random_state())
            assert abs(out.norm - 1.0) < 1e-12


class TestConcurrence:
    def test_product_state(self):
        assert concurrence(basis_state("ud")) == 0.0

    def test_maximally_entangled(self):
        s = SpinState([0.0, 1.0 / np.sqrt(2), -1j / np.sqrt(2), 0.0])
        assert concurrence(s) == pytest.approx(1.0, abs=1e-12)

    def test_partial_entanglement_closed_form(self):
        s = SpinState([0.0, np.sqrt(0.8), np.sqrt(0.2), 0.0])
        assert concurrence(s) == pytest.approx(0.8, abs=1e-12)

    def test_global_phase_invariance(self):
        for _ in range(20):
            s = random_state()
            phase = np.exp(1j * RNG.uniform(0, 2 * np.pi))
            assert abs(concurrence(s) - concurrence(SpinState(phase * s.amplitudes))) < 1e-12

    def test_local_unitary_invariance(self):
        for _ in range(20):
            s = random_state()
            u = np.kron(random_single_qubit_unitary(), random_single_qubit_unitary())
            rotated = apply_gate(TwoQubitGate(u), s)
            assert abs(concurrence(rotated) - concurrence(s)) < 1e-10


class TestTypes:
    def test_gate_must_be_unitary(self):
        with pytest.raises(ValueError, match="unitary"):
            TwoQubitGate(np.ones((4, 4)))

    def test_state_shape_checked(self):
        with pytest.raises(ValueError, match="shape"):
            SpinState([1.0, 0.0])

    def test_amplitudes_read_only(self):
        s = basis_state("uu")
        with pytest.raises(ValueError):
            s.amplitudes[0] = 0.0
