"""Photoexcitation of a localized target at impact parameter b.

Amplitude model: a Bessel beam is a conical superposition of plane waves at
the pitch angle, so the amplitude for changing the target's magnetic quantum
number by dm = m_f - m_i in a multipole-J transition factorizes as

    A(m_f) ~ J_{m_gamma - dm}(kappa b) * d^J_{dm, Lambda}(theta_k),

times an azimuthal phase exp(i (m_gamma - dm) phi_b) that never enters the
probabilities and is carried here as the integer winding number.  The
reduced matrix element is a common factor across the sublevels of one
channel and is set to 1.

The final-sublevel band is the full inclusive range m_i - J ... m_i + J.
Probabilities and their means reproduce the angular-momentum bookkeeping:
whatever the internal excitation does not absorb goes to the center of
mass, whose recoil is the superkick.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .beam import TwistedPhotonBeam, transverse_wavenumber
from .errors import DomainError, UndefinedDistributionError
from .special_functions import bessel_first_max, bessel_j, wigner_small_d


@dataclass(frozen=True)
class TransitionChannel:
    """Target transition descriptor.

    multipole_J: angular momentum absorbed internally (1 = dipole E1,
    2 = quadrupole E2, 3 = octupole E3).  The photon carries integer
    multipolarity, so the value must be a positive integer; m_initial may be
    half-integer (e.g. -1/2 for an S_1/2 ground state).
    """

    multipole_J: float
    m_initial: float = 0.0
    label: str = ""

    def __post_init__(self):
        j = float(self.multipole_J)
        if not j >= 1.0:
            raise DomainError(f"multipole_J must be >= 1, got {self.multipole_J}")
        if abs(j - round(j)) > 1e-9:
            raise DomainError(
                f"multipole_J must be an integer (photon multipolarity), got {self.multipole_J}"
            )
        two_mi = round(2.0 * float(self.m_initial))
        if abs(2.0 * float(self.m_initial) - two_mi) > 1e-9:
            raise DomainError(
                f"m_initial must be integer or half-integer, got {self.m_initial}"
            )

    @property
    def j_int(self) -> int:
        return int(round(float(self.multipole_J)))

    def final_sublevels(self) -> list[float]:
        """m_f values m_i - J ... m_i + J (inclusive, integer steps)."""
        mi = float(self.m_initial)
        return [mi + dm for dm in range(-self.j_int, self.j_int + 1)]


@dataclass(frozen=True)
class SublevelDistribution:
    """Relative amplitudes and probabilities over final sublevels m_f.

    ``amplitudes`` holds the real factor J_{m_gamma-dm}(kappa b) * d-element;
    ``winding`` the integer azimuthal phase winding m_gamma - dm of the
    omitted factor exp(i nu phi_b); ``weights`` is empty until the
    distribution is normalized by :func:`excitation_probabilities`.
    """

    amplitudes: dict[float, float]
    winding: dict[float, int]
    weights: dict[float, float] = field(default_factory=dict)


def transition_amplitudes(
    beam: TwistedPhotonBeam, channel: TransitionChannel, b: float
) -> SublevelDistribution:
    """Relative sublevel amplitudes at impact parameter b (nm, >= 0)."""
    if b < 0.0:
        raise DomainError(f"impact parameter must be non-negative, got {b}")
    kappa = transverse_wavenumber(beam)
    x = kappa * b
    j = channel.j_int
    mi = float(channel.m_initial)
    amps: dict[float, float] = {}
    winding: dict[float, int] = {}
    for dm in range(-j, j + 1):
        m_f = mi + dm
        nu = beam.m_gamma - dm
        d = wigner_small_d(float(j), float(dm), float(beam.lambda_spin), beam.pitch_angle)
        amps[m_f] = bessel_j(nu, x) * d
        winding[m_f] = nu
    return SublevelDistribution(amplitudes=amps, winding=winding)


def excitation_probabilities(
    beam: TwistedPhotonBeam, channel: TransitionChannel, b: float
) -> SublevelDistribution:
    """Normalized probabilities w(m_f) = |A(m_f)|^2 / sum |A|^2.

    Raises UndefinedDistributionError when every amplitude vanishes (the
    physical answer is "no absorption"; downstream means are undefined).
    """
    dist = transition_amplitudes(beam, channel, b)
    j = channel.j_int
    mi = float(channel.m_initial)
    # sum in +-dm pairs so a global sign mirror of the quantum numbers
    # produces bit-identical normalization
    sq = {m_f: a * a for m_f, a in dist.amplitudes.items()}
    total = sq[mi]
    for dm in range(1, j + 1):
        total += sq[mi + dm] + sq[mi - dm]
    if total == 0.0:
        raise UndefinedDistributionError(
            f"all sublevel amplitudes vanish at b={b}; no absorption"
        )
    weights = {m_f: v / total for m_f, v in sq.items()}
    return SublevelDistribution(
        amplitudes=dist.amplitudes, winding=dist.winding, weights=weights
    )


def mean_internal_am(
    beam: TwistedPhotonBeam, channel: TransitionChannel, b: float
) -> float:
    """Mean angular momentum (units hbar) absorbed by internal excitation.

    Probability-weighted mean of m_f - m_i over the sublevel distribution.
    """
    dist = excitation_probabilities(beam, channel, b)
    j = channel.j_int
    mi = float(channel.m_initial)
    total = 0.0
    for dm in range(1, j + 1):
        total += dm * (dist.weights[mi + dm] - dist.weights[mi - dm])
    return total


def mean_cm_am(beam: TwistedPhotonBeam, channel: TransitionChannel, b: float) -> float:
    """Mean angular momentum passed to the center of mass: m_gamma minus the
    internal mean (exact complement)."""
    return beam.m_gamma - mean_internal_am(beam, channel, b)


def recoil_ratio(beam: TwistedPhotonBeam, channel: TransitionChannel, b: float) -> float:
    """Transverse-to-longitudinal recoil ratio p_T/p_z at impact parameter b.

    p_T/p_z = <l_z>_cm * lambda / (2 pi b), with the paraxial p_z = E/c.
    """
    if not b > 0.0:
        raise DomainError(
            f"impact parameter must be positive, got {b}", code="B_SINGULARITY"
        )
    lz_cm = mean_cm_am(beam, channel, b)
    return lz_cm * beam.wavelength / (2.0 * math.pi * b)


def sublevel_profile(
    beam: TwistedPhotonBeam, channel: TransitionChannel, m_f: float, b: float
) -> float:
    """Excitation profile of one sublevel vs b, normalized to its peak.

    Returns |J_nu(kappa b)|^2 / max_x |J_nu(x)|^2 with nu = m_gamma - dm; the
    Wigner-d factor and any Rabi-time normalization are b-independent and
    drop out.  For nu = 0 the maximum sits at b = 0, otherwise at the first
    Bessel maximum.
    """
    dm = float(m_f) - float(channel.m_initial)
    dm_int = round(dm)
    if abs(dm - dm_int) > 1e-9 or abs(dm_int) > channel.j_int:
        raise DomainError(
            f"m_f={m_f} is not reachable from m_i={channel.m_initial} "
            f"with multipole J={channel.multipole_J}"
        )
    nu = beam.m_gamma - int(dm_int)
    d = wigner_small_d(
        float(channel.j_int), float(dm_int), float(beam.lambda_spin), beam.pitch_angle
    )
    if d == 0.0:
        return 0.0
    x = transverse_wavenumber(beam) * b
    peak = bessel_first_max(nu)[1]
    val = bessel_j(nu, x) / peak
    return val * val
