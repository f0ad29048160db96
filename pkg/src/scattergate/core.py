"""Two-qubit spin-basis algebra: states, gates and the concurrence measure.

Basis order is fixed everywhere as (uu, ud, du, dd), with the first tensor
factor belonging to particle A (the right-mover) and the second to particle B.
"""

from dataclasses import dataclass

import numpy as np

#: Ordered two-qubit basis labels; 'u' = spin up, 'd' = spin down.
BASIS_LABELS = ("uu", "ud", "du", "dd")

_NORM_TOL = 1e-9
_UNITARY_TOL = 1e-12


class NumericsError(RuntimeError):
    """A numerical procedure failed: non-convergence, tolerance breach,
    or a result outside its mathematically guaranteed range."""


def _frozen_array(values, shape, name):
    arr = np.array(values, dtype=complex)
    if arr.shape != shape:
        raise ValueError(f"{name} must have shape {shape}, got {arr.shape}")
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True)
class SpinState:
    """Pure state of the two internal qubits, 4 amplitudes over BASIS_LABELS."""

    amplitudes: np.ndarray

    def __post_init__(self):
        object.__setattr__(
            self, "amplitudes", _frozen_array(self.amplitudes, (4,), "amplitudes")
        )

    @property
    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))


@dataclass(frozen=True)
class TwoQubitGate:
    """Unitary 4x4 gate on the two-qubit spin space.

    Unitarity is enforced at construction (G+G = 1 within 1e-12 elementwise).
    """

    matrix: np.ndarray

    def __post_init__(self):
        m = _frozen_array(self.matrix, (4, 4), "matrix")
        dev = np.abs(m.conj().T @ m - np.eye(4)).max()
        if dev > _UNITARY_TOL:
            raise ValueError(f"gate is not unitary: max |G+G - 1| = {dev:.3e}")
        object.__setattr__(self, "matrix", m)


def basis_state(label: str) -> SpinState:
    """Computational basis state for a label in BASIS_LABELS, e.g. 'ud'."""
    amp = np.zeros(4, dtype=complex)
    amp[BASIS_LABELS.index(label)] = 1.0
    return SpinState(amp)


def swap_operator() -> TwoQubitGate:
    """The permutation of the two internal states: (a, b, c, d) -> (a, c, b, d)."""
    m = np.zeros((4, 4), dtype=complex)
    m[0, 0] = m[3, 3] = 1.0
    m[1, 2] = m[2, 1] = 1.0
    return TwoQubitGate(m)


def identity_gate() -> TwoQubitGate:
    return TwoQubitGate(np.eye(4, dtype=complex))


def apply_gate(gate: TwoQubitGate, state: SpinState) -> SpinState:
    """Apply a gate to a normalized state.

    Raises ValueError if the input norm drifts from 1 by more than 1e-9.
    """
    drift = abs(state.norm - 1.0)
    if drift > _NORM_TOL:
        raise ValueError(f"state is not normalized: |norm - 1| = {drift:.3e}")
    return SpinState(gate.matrix @ state.amplitudes)


def concurrence(state: SpinState) -> float:
    """Concurrence of a normalized pure two-qubit state.

    For amplitudes (a, b, c, d) this is the determinant formula 2|ad - bc|,
    which for pure states coincides with Wootters' spin-flip construction.
    """
    drift = abs(state.norm - 1.0)
    if drift > _NORM_TOL:
        raise ValueError(f"state is not normalized: |norm - 1| = {drift:.3e}")
    a, b, c, d = state.amplitudes
    return min(float(2.0 * abs(a * d - b * c)), 1.0)
