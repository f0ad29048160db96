"""Physical-units parameter design for cold-atom realizations.

Maps measured 3D atomic data to the effective 1D contact strength c via
Olshanii's confinement formula, corrects the optimal collision momentum for
the confinement-induced momentum dependence of c, evaluates the standard
tight-binding U and J of an optical lattice, and estimates the launch
momentum spread.  All quantities are SI internally.
"""

import math
from dataclasses import dataclass

from .core import NumericsError

HBAR = 1.054571817e-34       # J s
PLANCK_H = 6.62607015e-34    # J s
RB87_MASS = 1.44316e-25      # kg

# |zeta(1/2)|, the constant of the confinement-induced-resonance denominator,
# and zeta(3/2) from the momentum correction of c.
CIR_CONSTANT = 1.4603
ZETA_3_2 = 2.612375

# 1D coupling strengths for Rb-87 hyperfine pairs, in J m.
RB87_G_UU = 1.14e-37
RB87_G_UD = 1.12e-37
RB87_G_DD = 1.09e-37

_PRESET_KEYS = ("mass_kg", "a3d_m", "g_uu_Jm", "g_ud_Jm", "g_dd_Jm")


@dataclass(frozen=True)
class AtomParams:
    """Atomic species and trap data.

    mass [kg], a3d [m] 3D scattering length, omega_perp/omega_z [rad/s]
    transverse/longitudinal trap frequencies, wavelength [m] lattice laser,
    g couplings [J m], v0_over_er dimensionless lattice depth.  Fields that a
    given calculation does not use may be omitted.
    """

    mass: float
    a3d: float = None
    omega_perp: float = None
    omega_z: float = None
    wavelength: float = None
    g_uu: float = None
    g_ud: float = None
    g_dd: float = None
    v0_over_er: float = None

    def __post_init__(self):
        for name in (
            "mass", "a3d", "omega_perp", "omega_z", "wavelength",
            "g_uu", "g_ud", "g_dd",
        ):
            value = getattr(self, name)
            if value is not None and value <= 0:
                raise ValueError(f"{name} must be > 0, got {value}")
        if self.omega_z is not None and self.omega_perp is not None:
            if self.omega_z >= self.omega_perp:
                raise ValueError("need omega_z < omega_perp for a 1D geometry")

    def _require(self, *names):
        for name in names:
            if getattr(self, name) is None:
                raise ValueError(f"AtomParams.{name} is required for this calculation")


@dataclass(frozen=True)
class LaunchSpec:
    """Launch geometry x_B = -x_A = x0 with position uncertainty dx0."""

    x0: float
    dx0: float

    def __post_init__(self):
        if self.x0 <= 0:
            raise ValueError("x0 must be > 0")
        if self.dx0 < 0:
            raise ValueError("dx0 must be >= 0")


@dataclass(frozen=True)
class LatticeEnergies:
    """Tight-binding parameters of the optical lattice, all in J."""

    u_uu: float
    u_ud: float
    u_dd: float
    j_hop: float
    e_recoil: float


def rb87_params(
    omega_perp: float = 1.0e5,
    a3d: float = 5.0e-9,
    wavelength: float = None,
    v0_over_er: float = None,
    omega_z: float = None,
) -> AtomParams:
    """Rb-87 preset with the hyperfine-pair 1D couplings.

    The default transverse confinement is omega_perp = 1e5 rad/s; pass
    2*pi*1e5 to read "100 kHz" as an ordinary frequency instead.
    """
    return AtomParams(
        mass=RB87_MASS,
        a3d=a3d,
        omega_perp=omega_perp,
        omega_z=omega_z,
        wavelength=wavelength,
        g_uu=RB87_G_UU,
        g_ud=RB87_G_UD,
        g_dd=RB87_G_DD,
        v0_over_er=v0_over_er,
    )


def load_species_preset(path) -> dict:
    """Read a flat key=value species file.

    Recognized keys: mass_kg, a3d_m, g_uu_Jm, g_ud_Jm, g_dd_Jm.  Lines
    starting with '#' and blank lines are ignored.
    """
    values = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            if "=" not in line:
                raise ValueError(f"{path}:{lineno}: expected key=value, got {line!r}")
            key, _, text = line.partition("=")
            key = key.strip()
            if key not in _PRESET_KEYS:
                raise ValueError(f"{path}:{lineno}: unknown key {key!r}")
            values[key] = float(text.strip())
    return values


def params_from_preset(preset: dict, **overrides) -> AtomParams:
    """Build AtomParams from a species-preset dict plus trap/lattice fields."""
    return AtomParams(
        mass=preset["mass_kg"],
        a3d=preset.get("a3d_m"),
        g_uu=preset.get("g_uu_Jm"),
        g_ud=preset.get("g_ud_Jm"),
        g_dd=preset.get("g_dd_Jm"),
        **overrides,
    )


def transverse_length(params: AtomParams) -> float:
    """Transverse oscillator length a_perp = sqrt(hbar/(m omega_perp))."""
    params._require("omega_perp")
    return math.sqrt(HBAR / (params.mass * params.omega_perp))


def coupling_from_3d(params: AtomParams) -> float:
    """Effective 1D interaction strength c [1/m] from the 3D scattering length.

    c = m g_1D / hbar^2 with g_1D = (2 hbar^2 a)/(m a_perp^2) divided by the
    confinement-induced-resonance denominator 1 - 1.4603 a/a_perp.  Raises
    NumericsError when the denominator drops below 0.1 (resonance proximity).
    """
    params._require("a3d", "omega_perp")
    a_perp = transverse_length(params)
    denominator = 1.0 - CIR_CONSTANT * params.a3d / a_perp
    if denominator < 0.1:
        raise NumericsError(
            f"too close to the confinement-induced resonance: "
            f"1 - {CIR_CONSTANT} a/a_perp = {denominator:.4f}"
        )
    return 2.0 * params.a3d / (a_perp * a_perp) / denominator


def cic_corrected_momentum(c: float, params: AtomParams) -> float:
    """Optimal total momentum with the momentum-dependent c correction.

    Solves the fixed point p = c - zeta(3/2) (m omega_perp / hbar)^{-3/2}
    (c p / 4)^2 by damped iteration from p = c; outside the perturbative
    regime (correction at p = c exceeding c/2) a ValueError is raised.
    """
    params._require("omega_perp")
    if c <= 0:
        raise ValueError("c must be > 0")
    prefactor = ZETA_3_2 * (params.mass * params.omega_perp / HBAR) ** (-1.5)

    def correction(p):
        return prefactor * (c * p / 4.0) ** 2

    if correction(c) >= 0.5 * c:
        raise ValueError(
            "momentum correction is not perturbative at p = c; "
            "the fixed-point expansion does not apply"
        )
    p = c
    for _ in range(200):
        p_next = 0.5 * (p + (c - correction(p)))
        if abs(p_next - p) / p_next < 1e-10:
            return p_next
        p = p_next
    raise NumericsError("momentum fixed point did not converge")


def recoil_energy(params: AtomParams) -> float:
    """E_R = hbar^2 (2 pi / lambda)^2 / (2 m)."""
    params._require("wavelength")
    k_laser = 2.0 * math.pi / params.wavelength
    return (HBAR * k_laser) ** 2 / (2.0 * params.mass)


def lattice_params(params: AtomParams, v0_over_er: float = None) -> LatticeEnergies:
    """Tight-binding U^{ss'} and J for lattice depth V0/E_R.

    U^{ss'} = sqrt(2 pi) (g_{ss'}/lambda) (V0/E_R)^{1/4} and
    J = (4/sqrt(pi)) E_R (V0/E_R)^{3/4} exp(-2 sqrt(V0/E_R)); the closed
    forms are trustworthy in the tight-binding regime V0/E_R > 1.
    """
    params._require("wavelength", "g_uu", "g_ud", "g_dd")
    x = v0_over_er if v0_over_er is not None else params.v0_over_er
    if x is None or x <= 0:
        raise ValueError("lattice depth V0/E_R must be > 0")
    e_r = recoil_energy(params)
    depth_factor = math.sqrt(2.0 * math.pi) * x**0.25 / params.wavelength
    j_hop = (4.0 / math.sqrt(math.pi)) * e_r * x**0.75 * math.exp(-2.0 * math.sqrt(x))
    return LatticeEnergies(
        u_uu=depth_factor * params.g_uu,
        u_ud=depth_factor * params.g_ud,
        u_dd=depth_factor * params.g_dd,
        j_hop=j_hop,
        e_recoil=e_r,
    )


def design_lattice_depth(params: AtomParams, bracket=(1.0, 20.0)):
    """Depth satisfying the maximal-entanglement condition U^{ud}/(2J) = 1.

    U grows as V0^{1/4} while J decays exponentially, so U/(2J) is monotone
    on the bracket; the root is found by bisection to 1e-12 in V0/E_R.
    Returns (v0_over_er, j_hop).  Raises ValueError when the bracket does
    not contain a root.
    """
    params._require("wavelength", "g_ud")

    def imbalance(x):
        en = lattice_params(params, x)
        return en.u_ud / (2.0 * en.j_hop) - 1.0

    lo, hi = bracket
    f_lo, f_hi = imbalance(lo), imbalance(hi)
    if f_lo * f_hi > 0:
        raise ValueError(
            f"no U/(2J) = 1 root in V0/E_R bracket {bracket}: "
            f"imbalance {f_lo:.3e} .. {f_hi:.3e}"
        )
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        f_mid = imbalance(mid)
        if f_lo * f_mid <= 0:
            hi = mid
        else:
            lo, f_lo = mid, f_mid
        if hi - lo < 1e-12:
            break
    root = 0.5 * (lo + hi)
    return root, lattice_params(params, root).j_hop


def launch_spread(launch: LaunchSpec) -> float:
    """Relative momentum spread eta ~ dx0/x0 of the launch geometry."""
    return launch.dx0 / launch.x0
