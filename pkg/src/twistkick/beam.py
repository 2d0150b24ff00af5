"""Twisted-photon model: quantum numbers, cone geometry, superkick momentum,
and the Bessel-Gauss transverse profile.

A twisted photon of total angular-momentum projection m_gamma and (paraxial)
helicity Lambda carries orbital index l_gamma = m_gamma - Lambda.  Its
Fourier components all propagate at the pitch angle theta_k to the beam
axis, giving a transverse wavenumber kappa = (E/hbar c) sin(theta_k) and a
position-space amplitude J_{l_gamma}(kappa rho) exp(-rho^2/w0^2) once a
Gaussian envelope of scale w0 is imposed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.integrate import quad

from .errors import ConfigurationError, DomainError, QuadratureError
from .special_functions import bessel_first_max, bessel_j, bessel_j_array
from .units import HBARC_EV_NM, energy_to_wavelength

#: Pitch angle used by figure sweeps when none is specified.  The value is a
#: documented modeling default, not a measured quantity; every consumer
#: accepts an override.
DEFAULT_PITCH_ANGLE = 0.1


@dataclass(frozen=True)
class TwistedPhotonBeam:
    """Photon quantum numbers and cone geometry.

    energy in eV, pitch_angle in radians, envelope_w0 in nm (optional, only
    needed for the Bessel-Gauss profile operations).
    """

    m_gamma: int
    lambda_spin: int
    energy: float
    pitch_angle: float
    envelope_w0: float | None = None

    def __post_init__(self):
        if self.lambda_spin not in (-1, 1):
            raise DomainError(f"lambda_spin must be +1 or -1, got {self.lambda_spin}")
        if not isinstance(self.m_gamma, (int, np.integer)):
            raise DomainError(f"m_gamma must be an integer, got {self.m_gamma!r}")
        if not self.energy > 0.0:
            raise DomainError(f"energy must be positive, got {self.energy}")
        if not 0.0 <= self.pitch_angle < 0.5 * math.pi:
            raise DomainError(
                f"pitch angle must lie in [0, pi/2), got {self.pitch_angle}"
            )
        if self.envelope_w0 is not None and not self.envelope_w0 > 0.0:
            raise DomainError(f"envelope_w0 must be positive, got {self.envelope_w0}")

    @property
    def l_gamma(self) -> int:
        """Orbital index l_gamma = m_gamma - Lambda."""
        return int(self.m_gamma) - int(self.lambda_spin)

    @property
    def wavelength(self) -> float:
        """Wavelength in nm."""
        return energy_to_wavelength(self.energy)


def transverse_wavenumber(beam: TwistedPhotonBeam) -> float:
    """kappa = (E / hbar c) sin(theta_k) in nm^-1; 0 in the plane-wave limit."""
    return beam.energy / HBARC_EV_NM * math.sin(beam.pitch_angle)


def longitudinal_momentum(beam: TwistedPhotonBeam, paraxial: bool = True) -> float:
    """Longitudinal momentum p_z (as p_z*c in eV).

    With ``paraxial=True`` (the form every sub-relativistic module uses)
    p_z = E/c exactly; otherwise p_z = (E/c) cos(theta_k).
    """
    if paraxial:
        return beam.energy
    return beam.energy * math.cos(beam.pitch_angle)


def superkick(delta_l: int, b: float) -> float:
    """Transverse recoil momentum p_T = delta_l * hbar / b (as p_T*c in eV).

    ``delta_l`` is the angular momentum (units hbar) delivered to the
    absorber's center of mass; ``b`` its distance from the vortex line in nm.
    The vortex line itself (b = 0) is a hard domain error: the formula
    diverges there and the physical cutoff is the target's own extent, which
    callers must model explicitly.
    """
    if delta_l < 0:
        raise DomainError(f"delta_l must be non-negative, got {delta_l}")
    if not b > 0.0:
        raise DomainError(
            f"impact parameter must be positive, got {b}", code="B_SINGULARITY"
        )
    return delta_l * HBARC_EV_NM / b


def equal_kick_radius(beam: TwistedPhotonBeam) -> float:
    """Impact parameter (nm) where the superkick equals the longitudinal kick.

    b = lambda (m_gamma - Lambda) / (2 pi).  When m_gamma equals Lambda the
    transverse kick vanishes identically and no finite radius exists.
    """
    delta_l = beam.l_gamma
    if delta_l == 0:
        raise DomainError(
            "m_gamma = lambda_spin carries no orbital angular momentum; "
            "the recoil momenta are never equal at finite b",
            code="NO_FINITE_RADIUS",
        )
    return beam.wavelength * delta_l / (2.0 * math.pi)


def _require_w0(beam: TwistedPhotonBeam) -> float:
    if beam.envelope_w0 is None:
        raise ConfigurationError("beam has no envelope_w0; required for profile operations")
    return beam.envelope_w0


def bessel_gauss_amplitude(beam: TwistedPhotonBeam, rho) -> float | np.ndarray:
    """Unnormalized transverse amplitude J_{l_gamma}(kappa rho) exp(-rho^2/w0^2).

    Accepts a scalar or array ``rho`` (nm, >= 0).  See
    :func:`bessel_gauss_norm` for the normalization constant.
    """
    w0 = _require_w0(beam)
    kappa = transverse_wavenumber(beam)
    if np.isscalar(rho):
        if rho < 0.0:
            raise DomainError(f"rho must be non-negative, got {rho}")
        return bessel_j(beam.l_gamma, kappa * rho) * math.exp(-(rho / w0) ** 2)
    rho = np.asarray(rho, dtype=float)
    if np.any(rho < 0.0):
        raise DomainError("rho must be non-negative")
    return bessel_j_array(beam.l_gamma, kappa * rho) * np.exp(-((rho / w0) ** 2))


def bessel_gauss_norm(beam: TwistedPhotonBeam) -> float:
    """Constant A with integral |A psi|^2 2 pi rho d rho = 1 (rel. err <= 1e-8)."""
    w0 = _require_w0(beam)
    upper = 8.0 * w0  # envelope exp(-2 rho^2/w0^2) < 1e-55 beyond

    def integrand(rho):
        amp = bessel_gauss_amplitude(beam, rho)
        return amp * amp * 2.0 * math.pi * rho

    value, err = quad(integrand, 0.0, upper, epsabs=0.0, epsrel=1e-10, limit=400)
    if value <= 0.0 or not math.isfinite(value):
        raise QuadratureError(f"profile is not normalizable (integral {value})")
    if err > 1e-8 * value:
        raise QuadratureError(
            f"normalization quadrature did not reach 1e-8 relative (err {err:g})"
        )
    return 1.0 / math.sqrt(value)


def profile_peak_radius(beam: TwistedPhotonBeam) -> float:
    """Radius (nm) of the global maximum of |bessel_gauss_amplitude|.

    Searches rho in (0, 10 w0] with a dense scan refined by golden-section
    to 1e-6 relative.  Requires |l_gamma| >= 1 (for l_gamma = 0 the profile
    peaks trivially at the axis) and a nonvanishing transverse wavenumber.
    """
    w0 = _require_w0(beam)
    if abs(beam.l_gamma) < 1:
        raise DomainError(
            "profile peak is at rho = 0 for l_gamma = 0; no interior peak",
            code="NO_PEAK",
        )
    grid = np.linspace(1e-6 * w0, 10.0 * w0, 4000)
    vals = np.abs(bessel_gauss_amplitude(beam, grid))
    i = int(np.argmax(vals))
    if vals[i] <= 0.0:
        raise DomainError("profile vanishes identically; no peak", code="NO_PEAK")
    a = float(grid[max(i - 1, 0)])
    b = float(grid[min(i + 1, len(grid) - 1)])

    def f(rho: float) -> float:
        return abs(bessel_gauss_amplitude(beam, rho))

    invphi = (math.sqrt(5.0) - 1.0) / 2.0
    c = b - invphi * (b - a)
    d = a + invphi * (b - a)
    fc, fd = f(c), f(d)
    while b - a > 1e-7 * max(a, 1e-300):
        if fc > fd:
            b, d, fd = d, c, fc
            c = b - invphi * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + invphi * (b - a)
            fd = f(d)
    return 0.5 * (a + b)


def first_bessel_peak_argument(l_gamma: int) -> float:
    """Argument of the first maximum of |J_{l_gamma}| (0 for l_gamma = 0)."""
    return bessel_first_max(l_gamma)[0]
