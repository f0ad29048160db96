import numpy as np
import pytest

from scattergate import apply_gate, basis_state, concurrence
from scattergate.smatrix import (
    ScatteringContext,
    Statistics,
    build_gate,
    optimal_momentum,
    output_concurrence,
    scattering_phase,
)

RNG = np.random.default_rng(7)


def ctx(p_a, p_b, c, stats=Statistics.BOSON):
    return ScatteringContext(stats, p_a, p_b, c)


class TestScatteringPhase:
    def test_free_limit(self):
        assert scattering_phase(1.0, -1.0, 0.0) == 1.0

    def test_impenetrable_limit(self):
        # c -> infinity: a -1 factor on exchange.
        assert abs(scattering_phase(1.0, 0.0, 1e12) - (-1.0)) < 1e-10

    def test_matched_momentum(self):
        assert scattering_phase(1.0, 0.0, 1.0) == pytest.approx(-1j)

    def test_unit_modulus(self):
        for _ in range(100):
            p2, p1 = np.sort(RNG.uniform(-3, 3, size=2))[::-1]
            c = RNG.uniform(0, 5)
            assert abs(abs(scattering_phase(p2, p1, c)) - 1.0) < 1e-14

    def test_rejects_bad_ordering(self):
        with pytest.raises(ValueError, match="ordering"):
            scattering_phase(0.0, 1.0, 1.0)
        with pytest.raises(ValueError, match="ordering"):
            scattering_phase(1.0, 1.0, 1.0)

    def test_rejects_negative_c(self):
        with pytest.raises(ValueError, match="c must be"):
            scattering_phase(1.0, 0.0, -1.0)


class TestBuildGate:
    def test_free_bosons_identity(self):
        gate = build_gate(ctx(0.7, 0.3, 0.0))
        np.testing.assert_allclose(gate.matrix, np.eye(4), atol=1e-15)

    def test_hard_core_limits(self):
        p = 1.0
        swap = np.zeros((4, 4))
        swap[0, 0] = swap[3, 3] = swap[1, 2] = swap[2, 1] = 1.0
        fermion = build_gate(ctx(p, 0.0, 1e12 * p, Statistics.FERMION))
        np.testing.assert_allclose(fermion.matrix, swap, atol=1e-10)
        boson = build_gate(ctx(p, 0.0, 1e12 * p, Statistics.BOSON))
        np.testing.assert_allclose(boson.matrix, -swap, atol=1e-10)

    def test_optimal_boson_row(self):
        gate = build_gate(ctx(0.5, 0.5, 1.0))
        np.testing.assert_allclose(gate.matrix[1, 1], (1 - 1j) / 2, atol=1e-15)
        np.testing.assert_allclose(gate.matrix[1, 2], -(1 + 1j) / 2, atol=1e-15)

    def test_rejects_degenerate(self):
        with pytest.raises(ValueError, match="undefined"):
            build_gate(ctx(0.0, 0.0, 0.0))

    def test_rejects_negative_inputs(self):
        with pytest.raises(ValueError):
            ctx(1.0, 0.0, -1.0)
        with pytest.raises(ValueError):
            ctx(-1.0, 0.0, 1.0)

    def test_unitarity_random_grid(self):
        for _ in range(200):
            p_a, p_b = RNG.uniform(0, 4, size=2)
            c = RNG.uniform(0, 6)
            stats = Statistics.BOSON if RNG.random() < 0.5 else Statistics.FERMION
            g = build_gate(ctx(p_a, p_b, c, stats)).matrix
            np.testing.assert_allclose(g.conj().T @ g, np.eye(4), atol=1e-12)
            t, r = g[1, 1], g[2, 1]
            assert abs(abs(t) ** 2 + abs(r) ** 2 - 1.0) < 1e-12

    def test_depends_only_on_total_momentum(self):
        g1 = build_gate(ctx(3.0, 1.0, 1.7)).matrix
        g2 = build_gate(ctx(2.0, 2.0, 1.7)).matrix
        np.testing.assert_array_equal(g1, g2)

    def test_scale_invariance_exact_for_binary_scales(self):
        base = build_gate(ctx(1.3, 0.4, 0.9)).matrix
        for lam in (0.5, 2.0, 2.0**20, 2.0**-20):
            scaled = build_gate(ctx(lam * 1.3, lam * 0.4, lam * 0.9)).matrix
            np.testing.assert_array_equal(scaled, base)

    def test_scale_invariance_generic(self):
        base = build_gate(ctx(1.3, 0.4, 0.9)).matrix
        for lam in (3.0, 0.1, 7.3):
            scaled = build_gate(ctx(lam * 1.3, lam * 0.4, lam * 0.9)).matrix
            np.testing.assert_allclose(scaled, base, atol=1e-14)

    def test_boson_fermion_relation(self):
        # Equal parameters: exchange amplitude flips sign, uu/dd phase is the
        # spinless S factor for bosons and 1 for fermions.
        b = build_gate(ctx(1.1, 0.6, 0.8, Statistics.BOSON)).matrix
        f = build_gate(ctx(1.1, 0.6, 0.8, Statistics.FERMION)).matrix
        assert b[1, 2] == -f[1, 2]
        assert b[1, 1] == f[1, 1]
        assert f[0, 0] == 1.0
        np.testing.assert_allclose(b[0, 0], scattering_phase(1.7, 0.0, 0.8), atol=1e-15)


class TestOutputConcurrence:
    def test_optimal_point(self):
        assert output_concurrence(ctx(0.5, 0.5, 1.0)) == 1.0

    def test_free_limit(self):
        assert output_concurrence(ctx(1.0, 0.0, 0.0)) == 0.0

    def test_against_state_oracle(self):
        # Independent route: apply the explicit gate to |ud> and measure.
        for p, c in [(2.0, 1.0), (0.5, 1.0), (1.0, 3.0), (2.5, 0.4)]:
            context = ctx(p, 0.0, c)
            direct = concurrence(apply_gate(build_gate(context), basis_state("ud")))
            assert output_concurrence(context) == pytest.approx(direct, abs=1e-12)
        assert output_concurrence(ctx(2.0, 0.0, 1.0)) == pytest.approx(0.8, abs=1e-12)

    def test_momentum_interaction_symmetry(self):
        for p, c in [(0.3, 1.2), (2.0, 0.7)]:
            assert output_concurrence(ctx(p, 0.0, c)) == pytest.approx(
                output_concurrence(ctx(c, 0.0, p)), abs=1e-12
            )


class TestOptimalMomentum:
    def test_unit(self):
        assert optimal_momentum(1.0) == 1.0

    def test_physical_scale(self):
        assert optimal_momentum(1e6) == 1e6

    def test_is_argmax(self):
        c = 1.4
        best = output_concurrence(ctx(optimal_momentum(c), 0.0, c))
        for p in np.linspace(0.01, 5 * c, 400):
            assert output_concurrence(ctx(p, 0.0, c)) <= best + 1e-15
        for p in (c / 2, 2 * c):
            assert output_concurrence(ctx(p, 0.0, c)) < best

    def test_rejects_nonpositive(self):
        with pytest.raises(ValueError):
            optimal_momentum(0.0)
