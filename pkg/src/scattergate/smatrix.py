"""Analytic S-matrices of the 1D delta-interaction two-particle models.

Two identical particles with a spin-independent contact interaction of
strength c conserve their individual momenta in a 1D collision, so the
scattering operator acts on the internal (spin) space only.  For spinful
bosons it is S = ((p2-p1) - ic*P12)/(p2-p1 + ic) with P12 the SWAP of the
internal states; for spin-1/2 fermions the sign of the SWAP term flips
(Yang's S-matrix).  With qubit A the right-mover of momentum p_A and qubit
B the left-mover of momentum p_B, one has p2 = p_A, p1 = -p_B, and the
whole gate depends on the momenta only through p_A + p_B.
"""

import enum
from dataclasses import dataclass

import numpy as np

from .core import TwoQubitGate


class Statistics(enum.Enum):
    """Exchange statistics of the colliding pair."""

    BOSON = "boson"
    FERMION = "fermion"


@dataclass(frozen=True)
class ScatteringContext:
    """Parameters of a single two-particle collision.

    p_a, p_b are the momentum magnitudes of the right- and left-mover
    (any consistent wavenumber unit; only the ratio to c matters), c >= 0
    the contact-interaction strength in the same unit.
    """

    statistics: Statistics
    p_a: float
    p_b: float
    c: float

    def __post_init__(self):
        if self.p_a < 0 or self.p_b < 0:
            raise ValueError("momentum magnitudes p_a, p_b must be >= 0")
        if self.c < 0:
            raise ValueError("interaction strength c must be >= 0")

    @property
    def p_total(self) -> float:
        """p_{A+B} = p_A + p_B = p2 - p1, the relative momentum of the pair."""
        return self.p_a + self.p_b


def scattering_phase(p2: float, p1: float, c: float) -> complex:
    """Spinless scattering factor S(p2, p1) = (p2 - p1 - ic)/(p2 - p1 + ic).

    Unit modulus; the phase accumulated in the collision is -i log of it.
    Requires the incoming ordering p2 > p1 and c >= 0.
    """
    if p2 <= p1:
        raise ValueError(f"momentum ordering violated: need p2 > p1, got p2={p2}, p1={p1}")
    if c < 0:
        raise ValueError("interaction strength c must be >= 0")
    dp = p2 - p1
    return complex(dp, -c) / complex(dp, c)


def _gate_matrix(p_rel: float, c: float, statistics: Statistics) -> np.ndarray:
    """4x4 gate for relative momentum p_rel = p2 - p1 > 0 (or p_rel = 0, c > 0)."""
    denom = complex(p_rel, c)
    t = p_rel / denom            # transmission amplitude (spins kept)
    r_boson = complex(0, -c) / denom  # exchange amplitude; fermions get +ic
    if statistics is Statistics.BOSON:
        r = r_boson
        phase = complex(p_rel, -c) / denom
    else:
        r = -r_boson
        phase = 1.0 + 0.0j
    m = np.zeros((4, 4), dtype=complex)
    m[0, 0] = m[3, 3] = phase
    m[1, 1] = m[2, 2] = t
    m[1, 2] = m[2, 1] = r
    return m


def build_gate(ctx: ScatteringContext) -> TwoQubitGate:
    """The two-qubit gate induced by one collision.

    Diagonal phase e^{i phi} on uu/dd (phi_B from the spinless S-matrix,
    phi_F = 0), and a transmission/exchange block on the ud/du subspace
    with t = p/(p + ic), r = -+ ic/(p + ic) for bosons/fermions, p = p_A + p_B.
    """
    p = ctx.p_total
    if p == 0.0 and ctx.c == 0.0:
        raise ValueError("gate undefined for p_A + p_B = 0 with c = 0")
    return TwoQubitGate(_gate_matrix(p, ctx.c, ctx.statistics))


def output_concurrence(ctx: ScatteringContext) -> float:
    """Concurrence generated from the product input |ud>.

    Closed form 2 p c / (p^2 + c^2) with p = p_A + p_B; equals 1 at p = c.
    """
    p = ctx.p_total
    if p == 0.0 and ctx.c == 0.0:
        raise ValueError("gate undefined for p_A + p_B = 0 with c = 0")
    return 2.0 * p * ctx.c / (p * p + ctx.c * ctx.c)


def optimal_momentum(c: float) -> float:
    """Total momentum maximizing the output concurrence at fixed c: p_{A+B} = c."""
    if c <= 0:
        raise ValueError("interaction strength c must be > 0")
    return c
