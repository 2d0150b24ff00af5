"""Energy bookkeeping with recoil: absorption-energy shifts, deuteron
photodisintegration thresholds per multipole channel, and the beam-focus
fraction estimator.

Energy conservation with target recoil reads

    hbar w = hbar w0 + (p_z^2 + p_T^2) / (2M),

with the paraxial p_z = hbar w / c and the superkick p_T = dl * hbar / b.
That makes the absorbed energy a quadratic in w, solved here in the
cancellation-free closed form (no iteration tolerances in the goldens).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from scipy.integrate import quad

from . import units
from .beam import TwistedPhotonBeam, bessel_gauss_amplitude, longitudinal_momentum, superkick
from .errors import DomainError, QuadratureError, SolverError
from .units import DEUTERON_BINDING_EV, DEUTERON_MASS_EV, nonrel_recoil_energy


@dataclass(frozen=True)
class TargetParticle:
    """Absorber: rest energy (eV), distance from the vortex line (nm), and an
    optional per-axis Gaussian rms spread (nm)."""

    mass: float
    impact_parameter: float = 0.0
    spread_rms: float | None = None

    def __post_init__(self):
        if not self.mass > 0.0:
            raise DomainError(f"mass must be positive, got {self.mass}")
        if self.impact_parameter < 0.0:
            raise DomainError(
                f"impact parameter must be non-negative, got {self.impact_parameter}"
            )
        if self.spread_rms is not None and not self.spread_rms > 0.0:
            raise DomainError(f"spread_rms must be positive, got {self.spread_rms}")


@dataclass(frozen=True)
class ThresholdSolution:
    """Solved photon energy plus the momentum budget that produced it.

    All in eV (momenta as p*c).  ``recoil_energy`` is the kinetic energy
    taken by the final state's motion; for the nonrelativistic solver it
    satisfies photon_energy = omega0 + recoil_energy to machine precision.
    """

    photon_energy: float
    p_z: float
    p_T: float
    recoil_energy: float


def absorption_energy(
    omega0: float, target: TargetParticle, delta_l_cm: int
) -> ThresholdSolution:
    """Photon energy absorbed by a recoiling target with excitation energy omega0.

    Solves hbar w = omega0 + [(hbar w/c)^2 + (dl hbar / b)^2] / (2M) exactly
    (physical root of the quadratic).  delta_l_cm > 0 requires a positive
    impact parameter.
    """
    if not omega0 > 0.0:
        raise DomainError(f"omega0 must be positive, got {omega0}")
    if delta_l_cm < 0:
        raise DomainError(f"delta_l_cm must be non-negative, got {delta_l_cm}")
    if delta_l_cm > 0:
        p_t = superkick(delta_l_cm, target.impact_parameter)
    else:
        p_t = 0.0
    e_t = nonrel_recoil_energy(p_t, target.mass)

    # w = M - sqrt(M^2 - 2M(omega0 + E_T)) rationalized to avoid the
    # catastrophic cancellation of the textbook form when omega0 << M
    if math.isinf(target.mass):
        omega = omega0 + e_t
    else:
        rad = 1.0 - 2.0 * (omega0 + e_t) / target.mass
        if rad < 0.0:
            raise SolverError(
                f"no physical root: target mass {target.mass} below 2*(omega0 + E_T)"
            )
        omega = 2.0 * (omega0 + e_t) / (1.0 + math.sqrt(rad))
    return ThresholdSolution(
        photon_energy=omega,
        p_z=omega,
        p_T=p_t,
        recoil_energy=omega - omega0,
    )


def transverse_recoil_energy(target: TargetParticle, delta_l_cm: int) -> float:
    """Superkick recoil energy (dl hbar / b)^2 / (2M) in eV."""
    p_t = superkick(delta_l_cm, target.impact_parameter)
    return nonrel_recoil_energy(p_t, target.mass)


def deuteron_threshold(
    beam: TwistedPhotonBeam, internal_am_absorbed: int, b: float
) -> ThresholdSolution:
    """Photodisintegration threshold for a deuteron at impact parameter b (nm).

    The internal degrees of freedom absorb ``internal_am_absorbed`` units of
    the photon's total AM (J of the multipole transition actually driven);
    the remainder dl_cm = m_gamma - internal goes to the center of mass.
    With dl_cm = 0 the threshold is the plane-wave one at any position.
    """
    delta_l_cm = int(beam.m_gamma) - int(internal_am_absorbed)
    if delta_l_cm < 0:
        raise DomainError(
            f"internal AM {internal_am_absorbed} exceeds the photon's m_gamma={beam.m_gamma}"
        )
    target = TargetParticle(mass=DEUTERON_MASS_EV, impact_parameter=b)
    return absorption_energy(DEUTERON_BINDING_EV, target, delta_l_cm)


def ratio_cut_radius(beam: TwistedPhotonBeam, delta_l_cm: int, ratio_cut: float) -> float:
    """Impact parameter below which p_T/p_z exceeds ``ratio_cut``.

    b* = dl hbar / (ratio_cut * p_z) with the paraxial p_z."""
    if not ratio_cut > 0.0:
        raise DomainError(f"ratio_cut must be positive, got {ratio_cut}")
    if delta_l_cm <= 0:
        raise DomainError(f"delta_l_cm must be positive, got {delta_l_cm}")
    p_z = longitudinal_momentum(beam, paraxial=True)
    return delta_l_cm * units.HBARC_EV_NM / (ratio_cut * p_z)


def focus_fraction(beam: TwistedPhotonBeam, delta_l_cm: int, ratio_cut: float) -> float:
    """Fraction of absorptions with transverse/longitudinal recoil above the cut.

    Model: the absorption probability density follows the Bessel-Gauss
    intensity, dP ~ |psi(rho)|^2 2 pi rho d rho; the returned value is the
    probability that the absorption happens inside the critical radius
    b* = dl hbar / (ratio_cut p_z).  Both integrals use adaptive quadrature
    to 1e-8 relative.
    """
    b_star = ratio_cut_radius(beam, delta_l_cm, ratio_cut)
    w0 = beam.envelope_w0
    if w0 is None:
        raise DomainError("beam needs envelope_w0 for the focus-fraction estimate")

    def density(rho: float) -> float:
        amp = bessel_gauss_amplitude(beam, rho)
        return amp * amp * rho

    upper = 8.0 * w0
    total, err_t = quad(density, 0.0, upper, epsabs=0.0, epsrel=1e-10, limit=400)
    if total <= 0.0 or not math.isfinite(total):
        raise QuadratureError(f"absorption profile not normalizable (integral {total})")
    if err_t > 1e-8 * total:
        raise QuadratureError(f"profile normalization stalled at error {err_t:g}")
    if b_star >= upper:
        return 1.0
    inner, err_i = quad(
        density, 0.0, b_star, epsabs=1e-10 * total, epsrel=1e-10, limit=400
    )
    return inner / total
