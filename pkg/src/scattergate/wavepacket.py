"""Gaussian-wavepacket error model for the scattering gate.

A packet pair whose total momentum p_{A+B} is Gaussian-distributed with mean
c(1 + delta) and standard deviation eta*c no longer produces a pure spin
state: tracing out the momentum leaves a mixture over gates.  Its concurrence
has the closed form

    C = 2 Re[z] Im[f(z)],   z = (1 - i(1 + delta)) / (sqrt(2) eta),

with f(z) = sqrt(pi) e^{z^2} erfc(z) the scaled complementary error function.
The width convention (standard deviation eta*c, not variance) is fixed by
cross-validation against the direct quadrature in `numeric_concurrence`; see
README.  Everything here is dimensionless in units of c.
"""

import math
from dataclasses import dataclass

import numpy as np
from scipy.integrate import quad

from .core import NumericsError

SQRT_PI = math.sqrt(math.pi)

# Branch radii for scaled_erfc.  The Maclaurin series loses ~e^{|z|^2} in
# cancellation, keeping 1e-10 relative accuracy only up to |z| ~ 3; the
# Laplace continued fraction is reliable at that accuracy from |z| ~ 6 down
# to the imaginary axis.  The annulus between is covered by a Weideman
# rational approximation of the Faddeeva function, good to ~1e-15 there.
_SERIES_RADIUS = 3.0
_CF_RADIUS = 6.5

_ETA_ANALYTIC_LIMIT = 1e-8
_RANGE_SLACK = 1e-9


@dataclass(frozen=True)
class WavepacketSpec:
    """Relative-momentum Gaussian: mean c(1 + delta), standard deviation eta*c."""

    delta: float
    eta: float
    c: float = 1.0

    def __post_init__(self):
        if self.eta <= 0:
            raise ValueError("relative width eta must be > 0")
        if self.c <= 0:
            raise ValueError("interaction strength c must be > 0")

    @property
    def z(self) -> complex:
        return complex(1.0, -(1.0 + self.delta)) / (math.sqrt(2.0) * self.eta)


def _scaled_erfc_series(z: complex) -> complex:
    # f(z) = sqrt(pi) e^{z^2} - z * sum_m b_m,  b_0 = 2, b_{m+1} = b_m z^2/(m + 3/2).
    z2 = z * z
    b = 2.0 + 0.0j
    s = b
    for m in range(400):
        b *= z2 / (m + 1.5)
        s += b
        if abs(b) <= 1e-17 * abs(s):
            break
    else:
        raise NumericsError(f"scaled_erfc series did not converge at z = {z}")
    return SQRT_PI * np.exp(z2) - z * s


def _weideman_coefficients(n_terms: int = 40):
    # Polynomial coefficients of Weideman's rational approximation of the
    # Faddeeva function w(zeta), computed once from a real FFT.
    m = 2 * n_terms
    length = math.sqrt(n_terms / math.sqrt(2.0))
    theta = (math.pi / m) * np.arange(-m + 1, m)
    t = length * np.tan(0.5 * theta)
    fn = np.empty(2 * m)
    fn[0] = 0.0
    fn[1:] = np.exp(-t * t) * (length * length + t * t)
    coefs = np.fft.fft(np.fft.fftshift(fn)).real / (2 * m)
    return length, np.flipud(coefs[1 : n_terms + 1])


_WEIDEMAN_L, _WEIDEMAN_COEFS = _weideman_coefficients()


def _scaled_erfc_weideman(z: complex) -> complex:
    # f(z) = sqrt(pi) w(iz); valid for Im(iz) = Re(z) >= 0.
    iz = -z  # i * (i z)
    L = _WEIDEMAN_L
    big_z = (L + iz) / (L - iz)
    p = np.polyval(_WEIDEMAN_COEFS, big_z)
    w = 2.0 * p / (L - iz) ** 2 + (1.0 / SQRT_PI) / (L - iz)
    return SQRT_PI * w


def _scaled_erfc_cf(z: complex) -> complex:
    # Laplace continued fraction f(z) = 1/(z + (1/2)/(z + 1/(z + (3/2)/(...)))),
    # evaluated by the modified Lentz algorithm.
    tiny = 1e-300
    f = tiny
    c_lentz = f
    d_lentz = 0.0
    a = 1.0
    for n in range(1, 200):
        d_lentz = z + a * d_lentz
        if d_lentz == 0:
            d_lentz = tiny
        c_lentz = z + a / c_lentz
        if c_lentz == 0:
            c_lentz = tiny
        d_lentz = 1.0 / d_lentz
        delta = c_lentz * d_lentz
        f *= delta
        if abs(delta - 1.0) < 5e-16:
            return f
        a = 0.5 * n
    raise NumericsError(f"scaled_erfc continued fraction did not converge at z = {z}")


def scaled_erfc(z: complex) -> complex:
    """f(z) = sqrt(pi) e^{z^2} erfc(z) for Re[z] >= 0.

    Relative accuracy <= 1e-10 over the whole closed right half plane:
    Maclaurin series for |z| <= 3, Weideman rational approximation for the
    middle annulus, Laplace continued fraction for |z| >= 6.5.
    """
    z = complex(z)
    if z.real < 0:
        raise ValueError(f"scaled_erfc requires Re[z] >= 0, got z = {z}")
    r = abs(z)
    if r <= _SERIES_RADIUS:
        return _scaled_erfc_series(z)
    if r < _CF_RADIUS:
        return _scaled_erfc_weideman(z)
    return _scaled_erfc_cf(z)


def _checked_range(value: float, what: str) -> float:
    if value < -_RANGE_SLACK or value > 1.0 + _RANGE_SLACK:
        raise NumericsError(f"{what} left [0, 1]: {value!r}")
    return min(max(value, 0.0), 1.0)


def analytic_concurrence(spec: WavepacketSpec) -> float:
    """Concurrence of the momentum-averaged gate output, C = 2 Re[z] Im[f(z)].

    For eta <= 1e-8 the zero-width limit 2(1+delta)/(1+(1+delta)^2) is
    returned instead, which is the sharp-momentum gate concurrence at
    p_{A+B} = c(1 + delta).
    """
    if spec.eta <= _ETA_ANALYTIC_LIMIT:
        m = 1.0 + spec.delta
        return _checked_range(2.0 * m / (1.0 + m * m), "zero-width concurrence")
    z = spec.z
    value = 2.0 * z.real * scaled_erfc(z).imag
    return _checked_range(value, "analytic concurrence")


def asymptotic_concurrence(spec: WavepacketSpec) -> float:
    """Concurrence with f(z) replaced by its expansion (1 - z^{-2}/2)/z.

    Only accepted for |z| >= 3, where the two-term expansion is reliable.
    """
    z = spec.z
    if abs(z) < 3.0:
        raise ValueError(f"asymptotic expansion needs |z| >= 3, got |z| = {abs(z):.3f}")
    f_approx = (1.0 - 0.5 / (z * z)) / z
    return 2.0 * z.real * f_approx.imag


def _bosonic_amplitudes(p: np.ndarray, c: float):
    denom = p + 1j * c
    t = p / denom
    r = -1j * c / denom
    return t, r


def numeric_concurrence(mean: float, width: float, c: float) -> float:
    """Quadrature oracle: concurrence of the spin state traced over momentum.

    Integrates 2 |int w(p) t(p) conj(r(p)) dp| over the full real momentum
    line, with w the Gaussian probability density of the total momentum
    (given mean and standard deviation) and t, r the bosonic transmission
    and exchange amplitudes.  Independent of the f(z) code path.
    """
    if width <= 0:
        raise ValueError("width must be > 0")
    if c <= 0:
        raise ValueError("interaction strength c must be > 0")

    def integrand(u, part):
        p = mean + width * u
        t, r = _bosonic_amplitudes(p, c)
        val = t * np.conj(r) * math.exp(-0.5 * u * u) / math.sqrt(2.0 * math.pi)
        return val.real if part == 0 else val.imag

    # Standardized variable; beyond |u| = 40 the Gaussian weight is < e^{-800},
    # so this covers the whole real momentum line including p < 0.
    re, err_re = quad(
        integrand, -40.0, 40.0, args=(0,), epsabs=1e-12, epsrel=1e-11, limit=500
    )
    im, err_im = quad(
        integrand, -40.0, 40.0, args=(1,), epsabs=1e-12, epsrel=1e-11, limit=500
    )
    if err_re > 1e-9 or err_im > 1e-9:
        raise NumericsError(
            f"quadrature did not converge for mean={mean}, width={width}, c={c}: "
            f"error estimates ({err_re:.2e}, {err_im:.2e})"
        )
    return _checked_range(2.0 * abs(complex(re, im)), "numeric concurrence")
