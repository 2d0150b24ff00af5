"""Threshold kinematics of electron-positron pair creation by a twisted
very-high-energy photon on a background photon (head-on collision).

A Bessel-beam photon of energy w1 at pitch angle theta_k carries longitudinal
momentum w1 cos(theta_k); a pair produced a distance b from the vortex line
additionally receives the superkick p_T = l_gamma hbar / b.  The invariant
mass condition at threshold (pair at rest in its c.m. frame) becomes

    w1^2 sin^2(theta_k) + 4 w1 w2 = 4 m_e^2 + p_T^2,

a quadratic in w1 solved here in a cancellation-free form; theta_k = 0
degenerates smoothly to the linear small-angle relation

    w1 = m_e^2/w2 + p_T^2/(4 w2).

The pitch-angle term lowers the threshold (less longitudinal momentum to
balance), the superkick raises it; the crossover sits at an almost invariant
product b*theta_k.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import brentq

from .beam import TwistedPhotonBeam, first_bessel_peak_argument, profile_peak_radius
from .errors import DomainError, SolverError
from .recoil_kinematics import ThresholdSolution
from .units import ELECTRON_MASS_EV, HBARC_EV_NM


@dataclass(frozen=True)
class PairThresholdQuery:
    """Inputs for one threshold evaluation: background photon energy (eV),
    pitch angle (rad), impact parameter (nm), orbital index l_gamma."""

    omega2: float
    pitch_angle: float
    impact_parameter: float = 0.0
    l_gamma: int = 0

    def __post_init__(self):
        if not self.omega2 > 0.0:
            raise DomainError(f"omega2 must be positive, got {self.omega2}")
        if not 0.0 <= self.pitch_angle < 0.5 * math.pi:
            raise DomainError(f"pitch angle must lie in [0, pi/2), got {self.pitch_angle}")
        if self.l_gamma < 0:
            raise DomainError(f"l_gamma must be non-negative, got {self.l_gamma}")
        if self.l_gamma > 0 and not self.impact_parameter > 0.0:
            raise DomainError(
                "l_gamma > 0 requires a positive impact parameter",
                code="B_SINGULARITY",
            )


def plane_wave_threshold(omega2: float) -> float:
    """Minimum VHE photon energy m_e^2/omega2 for untwisted head-on photons."""
    if not omega2 > 0.0:
        raise DomainError(f"omega2 must be positive, got {omega2}")
    return ELECTRON_MASS_EV * ELECTRON_MASS_EV / omega2


def small_angle_threshold(omega2: float, p_t: float) -> float:
    """Threshold in the very-small-pitch-angle limit: m_e^2/w2 + p_T^2/(4 w2)."""
    if not omega2 > 0.0:
        raise DomainError(f"omega2 must be positive, got {omega2}")
    if p_t < 0.0:
        raise DomainError(f"p_T must be non-negative, got {p_t}")
    return (ELECTRON_MASS_EV * ELECTRON_MASS_EV + 0.25 * p_t * p_t) / omega2


def pair_threshold(query: PairThresholdQuery) -> ThresholdSolution:
    """Threshold energy for the twisted photon, from the full quadratic.

    Returns the solved w1 with its momentum budget; ``recoil_energy`` holds
    the shift w1 - m_e^2/w2 relative to the plane-wave threshold (negative
    when the pitch angle wins over the superkick).
    """
    if query.l_gamma > 0:
        p_t = query.l_gamma * HBARC_EV_NM / query.impact_parameter
    else:
        p_t = 0.0
    sin_t = math.sin(query.pitch_angle)
    rhs = 4.0 * ELECTRON_MASS_EV * ELECTRON_MASS_EV + p_t * p_t
    # positive root of sin^2 w1^2 + 4 w2 w1 - rhs = 0, rationalized so the
    # sin -> 0 limit reduces exactly to the small-angle form
    disc = 4.0 * query.omega2 * query.omega2 + sin_t * sin_t * rhs
    omega1 = rhs / (2.0 * query.omega2 + math.sqrt(disc))
    if not (omega1 > 0.0 and math.isfinite(omega1)):
        raise SolverError(f"no positive threshold root (got {omega1})")
    return ThresholdSolution(
        photon_energy=omega1,
        p_z=omega1 * math.cos(query.pitch_angle),
        p_T=p_t,
        recoil_energy=omega1 - plane_wave_threshold(query.omega2),
    )


@dataclass(frozen=True)
class CrossoverResult:
    """b*theta_k (nm*rad) where the twisted threshold crosses the plane-wave
    one, and the relative spread of that product across a decade of theta_k."""

    product: float
    relative_variation: float
    pitch_angles: tuple[float, ...]


def crossover_product(
    omega2: float,
    l_gamma: int,
    pitch_angles: tuple[float, ...] = (1e-6, 1.7783e-6, 3.1623e-6, 5.6234e-6, 1e-5),
) -> CrossoverResult:
    """Solve for the product b*theta_k at which twisted and plane-wave
    thresholds coincide, by 1-D root bracketing in the product variable.

    The root is solved independently at each pitch angle of the supplied
    decade; the returned product is their mean and ``relative_variation``
    the (max-min)/mean spread, quantifying how invariant the product is.
    """
    if l_gamma < 1:
        raise DomainError(f"l_gamma must be >= 1 for a crossover, got {l_gamma}")
    reference = plane_wave_threshold(omega2)
    guess = l_gamma * HBARC_EV_NM * omega2 / (ELECTRON_MASS_EV * ELECTRON_MASS_EV)

    products = []
    for theta in pitch_angles:
        def excess(product: float) -> float:
            q = PairThresholdQuery(
                omega2=omega2,
                pitch_angle=theta,
                impact_parameter=product / theta,
                l_gamma=l_gamma,
            )
            return pair_threshold(q).photon_energy - reference

        lo, hi = guess * 1e-3, guess * 1e3
        if excess(lo) * excess(hi) > 0.0:
            raise SolverError(
                f"crossover bracketing failed at theta_k={theta}", code="BRACKET"
            )
        products.append(brentq(excess, lo, hi, xtol=1e-30, rtol=1e-14))

    mean = math.fsum(products) / len(products)
    variation = (max(products) - min(products)) / mean
    return CrossoverResult(
        product=mean,
        relative_variation=variation,
        pitch_angles=tuple(pitch_angles),
    )


@dataclass(frozen=True)
class BeamFitResult:
    """Beam parameters realizing a requested threshold increase: the required
    superkick, the impact parameter delivering it, and a (pitch angle,
    envelope) pair whose transverse profile peaks there."""

    threshold_factor: float
    p_T: float
    impact_parameter: float
    pitch_angle: float
    envelope_w0: float
    photon_energy: float
    peak_radius: float


def fit_beam_for_threshold_factor(
    factor: float,
    omega2: float,
    l_gamma: int = 1,
    w0_over_b: float = 2.0,
) -> BeamFitResult:
    """Find beam parameters that raise the pair threshold by ``factor``.

    From the small-angle relation, p_T = 2 m_e sqrt(factor - 1) and the
    superkick locates the production radius at b = l_gamma hbar / p_T
    (unbounded as factor -> 1+).  The envelope is set to w0 = w0_over_b * b
    (documented modeling default) and the pitch angle solved by bracketed
    root finding so the Bessel-Gauss profile peaks at b.
    """
    if not factor > 1.0:
        raise DomainError(f"threshold factor must exceed 1, got {factor}")
    if l_gamma < 1:
        raise DomainError(f"l_gamma must be >= 1, got {l_gamma}")
    p_t = 2.0 * ELECTRON_MASS_EV * math.sqrt(factor - 1.0)
    b = l_gamma * HBARC_EV_NM / p_t
    w0 = w0_over_b * b
    omega1 = factor * plane_wave_threshold(omega2)

    def peak_minus_b(theta: float) -> float:
        trial = TwistedPhotonBeam(
            m_gamma=l_gamma + 1, lambda_spin=1, energy=omega1,
            pitch_angle=theta, envelope_w0=w0,
        )
        return profile_peak_radius(trial) - b

    # with w0 = 2b the kappa -> 0 peak w0*sqrt(l/2) >= b*sqrt(2) lies above b;
    # push theta_hi until the Bessel factor alone pins the peak below b
    x_peak = first_bessel_peak_argument(l_gamma)
    theta_hi = min(1.0, 10.0 * x_peak * HBARC_EV_NM / (b * omega1))
    theta_lo = 1e-3 * x_peak * HBARC_EV_NM / (b * omega1)
    if peak_minus_b(theta_lo) <= 0.0 or peak_minus_b(theta_hi) >= 0.0:
        raise SolverError("pitch-angle bracketing failed for the profile fit", code="FIT")
    theta = brentq(peak_minus_b, theta_lo, theta_hi, rtol=1e-12)

    fitted = TwistedPhotonBeam(
        m_gamma=l_gamma + 1, lambda_spin=1, energy=omega1,
        pitch_angle=theta, envelope_w0=w0,
    )
    return BeamFitResult(
        threshold_factor=factor,
        p_T=p_t,
        impact_parameter=b,
        pitch_angle=theta,
        envelope_w0=w0,
        photon_energy=omega1,
        peak_radius=profile_peak_radius(fitted),
    )


def threshold_curve_vs_b(
    omega2: float, pitch_angle: float, l_gamma: int, b_values: np.ndarray
) -> np.ndarray:
    """Threshold energies over an array of impact parameters (nm)."""
    out = np.empty(len(b_values))
    for i, b in enumerate(b_values):
        q = PairThresholdQuery(
            omega2=omega2, pitch_angle=pitch_angle,
            impact_parameter=float(b), l_gamma=l_gamma,
        )
        out[i] = pair_threshold(q).photon_energy
    return out
