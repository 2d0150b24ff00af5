import math
from fractions import Fraction

import numpy as np
import pytest

from twistkick.errors import DomainError
from twistkick.pair_production import (
    PairThresholdQuery,
    crossover_product,
    fit_beam_for_threshold_factor,
    pair_threshold,
    plane_wave_threshold,
    small_angle_threshold,
)
from twistkick.units import ELECTRON_MASS_EV, FM, GEV, HBARC_EV_NM, MEV, PM


def test_plane_wave_threshold_green_light():
    # 2.5 eV background: 104.4 GeV, the "about 100 GeV" scale
    value = plane_wave_threshold(2.5)
    assert value == pytest.approx(104.44 * GEV, rel=1e-3)
    assert abs(value - 100.0 * GEV) / value < 0.05


def test_plane_wave_threshold_scaling():
    assert plane_wave_threshold(5.0) == pytest.approx(
        0.5 * plane_wave_threshold(2.5), rel=1e-12
    )


def test_plane_wave_threshold_symmetric_point():
    assert plane_wave_threshold(ELECTRON_MASS_EV) == pytest.approx(
        ELECTRON_MASS_EV, rel=1e-15
    )


def quadratic_oracle(omega2, theta, p_t):
    """Independent root via the numpy companion-matrix solver."""
    roots = np.roots([
        math.sin(theta) ** 2, 4.0 * omega2,
        -(4.0 * ELECTRON_MASS_EV**2 + p_t**2),
    ])
    positive = [float(r.real) for r in roots if abs(r.imag) < 1e-6 and r.real > 0]
    return min(positive)


def test_pair_threshold_fig8_point():
    query = PairThresholdQuery(
        omega2=2.5, pitch_angle=5e-6, impact_parameter=200.0 * FM, l_gamma=1
    )
    solution = pair_threshold(query)
    assert solution.p_T == pytest.approx(0.9866 * MEV, rel=1e-3)
    oracle = quadratic_oracle(2.5, 5e-6, solution.p_T)
    assert solution.photon_energy == pytest.approx(oracle, rel=1e-9)
    assert solution.photon_energy == pytest.approx(147.0 * GEV, rel=0.01)
    assert solution.p_z == pytest.approx(solution.photon_energy * math.cos(5e-6), rel=1e-15)


def test_pair_threshold_degenerate_plane_wave_limit():
    query = PairThresholdQuery(omega2=2.5, pitch_angle=0.0)
    solution = pair_threshold(query)
    assert solution.photon_energy == pytest.approx(plane_wave_threshold(2.5), rel=1e-9)
    assert solution.recoil_energy == 0.0


def test_pair_threshold_equality_residual():
    rng = np.random.default_rng(61)
    for _ in range(300):
        query = PairThresholdQuery(
            omega2=float(10.0 ** rng.uniform(-1, 1)),
            pitch_angle=float(10.0 ** rng.uniform(-8, -3)),
            impact_parameter=float(10.0 ** rng.uniform(-6, -3)),
            l_gamma=int(rng.integers(1, 4)),
        )
        sol = pair_threshold(query)
        w1 = sol.photon_energy
        lhs = w1**2 * math.sin(query.pitch_angle) ** 2 + 4.0 * w1 * query.omega2
        rhs = 4.0 * ELECTRON_MASS_EV**2 + sol.p_T**2
        assert abs(lhs - rhs) <= 1e-10 * rhs


def test_pair_threshold_monotonicity():
    thresholds_b = [
        pair_threshold(PairThresholdQuery(2.5, 5e-6, b * FM, 1)).photon_energy
        for b in np.geomspace(20.0, 2000.0, 30)
    ]
    assert all(a > b for a, b in zip(thresholds_b, thresholds_b[1:]))
    thresholds_t = [
        pair_threshold(PairThresholdQuery(2.5, t * 1e-6, 200.0 * FM, 1)).photon_energy
        for t in np.geomspace(0.5, 50.0, 30)
    ]
    assert all(a > b for a, b in zip(thresholds_t, thresholds_t[1:]))


def test_small_angle_agreement_bound():
    # full quadratic vs small-angle form: relative difference bounded by
    # theta^2 * w1 / (4 w2) for theta <= 1e-5
    for theta in (1e-7, 1e-6, 5e-6, 1e-5):
        for b_fm in (50.0, 200.0, 1000.0):
            query = PairThresholdQuery(2.5, theta, b_fm * FM, 1)
            full = pair_threshold(query).photon_energy
            small = small_angle_threshold(2.5, query.l_gamma * HBARC_EV_NM / query.impact_parameter)
            bound = theta**2 * small / (4.0 * 2.5)
            assert abs(full - small) / small <= bound * (1.0 + 1e-9)


def test_small_angle_tenfold_exact():
    # p_T = 6 m_e gives exactly 10x the plane-wave threshold; the identity is
    # exact in rational arithmetic and holds to a few ulp in floats
    m = Fraction(510998950000, 10**6)
    w2 = Fraction(5, 2)
    assert (m**2 / w2 + (6 * m) ** 2 / (4 * w2)) == 10 * m**2 / w2
    value = small_angle_threshold(2.5, 6.0 * ELECTRON_MASS_EV)
    assert value == pytest.approx(10.0 * plane_wave_threshold(2.5), rel=1e-14)


def test_small_angle_reduces_to_plane_wave():
    assert small_angle_threshold(2.5, 0.0) == plane_wave_threshold(2.5)


def test_small_angle_two_me():
    assert small_angle_threshold(2.5, 2.0 * ELECTRON_MASS_EV) == pytest.approx(
        2.0 * plane_wave_threshold(2.5), rel=1e-12
    )


def test_crossover_quotable_and_analytic():
    result = crossover_product(2.5, 1)
    product_pm_urad = result.product / (PM * 1e-6)
    assert abs(product_pm_urad - 2.0) / 2.0 < 0.15
    analytic = HBARC_EV_NM * 2.5 / ELECTRON_MASS_EV**2
    assert result.product == pytest.approx(analytic, rel=0.02)
    assert result.relative_variation < 1e-9


def test_crossover_linear_in_l_gamma():
    one = crossover_product(2.5, 1).product
    two = crossover_product(2.5, 2).product
    assert two == pytest.approx(2.0 * one, rel=0.02)


def test_crossover_requires_orbital_am():
    with pytest.raises(DomainError):
        crossover_product(2.5, 0)


def test_fit_tenfold():
    fit = fit_beam_for_threshold_factor(10.0, 2.5)
    assert fit.p_T == pytest.approx(6.0 * ELECTRON_MASS_EV, rel=1e-15)
    oracle_b = HBARC_EV_NM / (6.0 * ELECTRON_MASS_EV)
    assert fit.impact_parameter == pytest.approx(oracle_b, rel=0.01)
    assert fit.impact_parameter == pytest.approx(64.4 * FM, rel=0.01)
    # the suggested (theta_k, w0) must actually peak the profile at b
    assert fit.peak_radius == pytest.approx(fit.impact_parameter, rel=1e-4)
    assert fit.photon_energy == pytest.approx(10.0 * plane_wave_threshold(2.5), rel=1e-12)


def test_fit_factor_to_one_unbounded():
    fit = fit_beam_for_threshold_factor(1.0 + 1e-10, 2.5)
    assert fit.p_T == pytest.approx(2.0 * ELECTRON_MASS_EV * 1e-5, rel=1e-6)
    assert fit.impact_parameter > 1e5 * fit_beam_for_threshold_factor(10.0, 2.5).impact_parameter
    with pytest.raises(DomainError):
        fit_beam_for_threshold_factor(1.0, 2.5)


def test_query_validation():
    with pytest.raises(DomainError):
        PairThresholdQuery(omega2=0.0, pitch_angle=0.0)
    with pytest.raises(DomainError) as err:
        PairThresholdQuery(omega2=2.5, pitch_angle=1e-6, l_gamma=1)
    assert err.value.code == "B_SINGULARITY"
