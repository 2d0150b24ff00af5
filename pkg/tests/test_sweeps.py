import numpy as np
import pytest

from twistkick.errors import DomainError
from twistkick.sweeps import FIGURE_IDS, GridSpec, SweepSpec, run_sweep
from twistkick.units import FM, PM

_LZ_COLUMNS = ["b [lambda]", "lz_cm(m_gamma=1) [hbar]", "lz_cm(m_gamma=2) [hbar]",
               "lz_cm(m_gamma=3) [hbar]"]
_RATIO_COLUMNS = ["b [lambda]", "pT_over_pz(m_gamma=1) [1]", "pT_over_pz(m_gamma=2) [1]",
                  "pT_over_pz(m_gamma=3) [1]"]

EXPECTED_SCHEMAS = {
    "fig2a": _LZ_COLUMNS, "fig2b": _LZ_COLUMNS, "fig2c": _LZ_COLUMNS,
    "fig3a": _LZ_COLUMNS, "fig3b": _LZ_COLUMNS, "fig3c": _LZ_COLUMNS,
    "fig4a": _RATIO_COLUMNS, "fig4b": _RATIO_COLUMNS, "fig4c": _RATIO_COLUMNS,
    "fig5a": _RATIO_COLUMNS, "fig5b": _RATIO_COLUMNS, "fig5c": _RATIO_COLUMNS,
    "fig6": ["b [nm]", "E_long [neV]", "E_T(m_gamma=2) [neV]",
             "E_T(m_gamma=3) [neV]", "E_T(m_gamma=4) [neV]"],
    "fig7": ["b [nm]", "excitation [1]", "jump_point [1]", "jump_extended [1]",
             "combined_point [1]", "combined_extended [1]"],
    "fig8a": ["b [fm]", "threshold [GeV]", "plane_wave [GeV]"],
    "fig8b": ["theta_k [urad]", "threshold [GeV]", "plane_wave [GeV]"],
    "deuteron_table": ["m_gamma [hbar]", "internal_am [hbar]", "b [fm]",
                       "threshold [MeV]", "recoil [keV]", "transverse_recoil [keV]"],
    "pair_table": ["omega2 [eV]", "l_gamma [1]", "factor [1]", "p_T [MeV]",
                   "b [fm]", "w0 [fm]", "theta_k [urad]", "peak_radius [fm]",
                   "plane_wave [GeV]", "threshold [GeV]", "crossover [pm*urad]"],
}


def header(result):
    return [f"{name} [{unit}]" for name, unit in result.columns]


def test_figure_registry_complete():
    expected = {
        "fig2a", "fig2b", "fig2c", "fig3a", "fig3b", "fig3c",
        "fig4a", "fig4b", "fig4c", "fig5a", "fig5b", "fig5c",
        "fig6", "fig7", "fig8a", "fig8b", "deuteron_table", "pair_table",
    }
    assert set(FIGURE_IDS) == expected


@pytest.mark.parametrize("figure_id", sorted(EXPECTED_SCHEMAS))
def test_frozen_schemas(figure_id):
    # coarse grids where full evaluation is expensive; the schema is fixed
    if figure_id == "fig7":
        spec = SweepSpec(figure_id, grid=GridSpec(20.0, 100.0, 2))
    elif figure_id.startswith(("fig2", "fig3", "fig4", "fig5")):
        spec = SweepSpec(figure_id, grid=GridSpec(0.1, 1.0, 4))
    else:
        spec = SweepSpec(figure_id)
    result = run_sweep(spec)
    assert header(result) == EXPECTED_SCHEMAS[figure_id]
    assert set(EXPECTED_SCHEMAS) == set(FIGURE_IDS)


def test_fig6_values():
    result = run_sweep(SweepSpec("fig6"))
    rows = np.array(result.rows)
    assert result.metadata["dropped_rows"] == 0
    assert len(rows) == 200
    # constant longitudinal recoil column at 0.13 neV (5%)
    assert np.all(rows[:, 1] == rows[0, 1])
    assert rows[0, 1] == pytest.approx(0.13, rel=0.05)
    # quadratic delta_l scaling and 1/b^2 law
    assert rows[:, 3] / rows[:, 2] == pytest.approx(4.0, rel=1e-9)
    assert rows[:, 4] / rows[:, 2] == pytest.approx(9.0, rel=1e-9)
    b, e_t = rows[:, 0], rows[:, 2]
    assert e_t * b**2 == pytest.approx(e_t[0] * b[0] ** 2, rel=1e-9)


def test_fig8a_crossing_location():
    result = run_sweep(SweepSpec("fig8a"))
    rows = np.array(result.rows)
    excess = rows[:, 1] - rows[:, 2]
    signs = np.sign(excess)
    flips = np.nonzero(signs[:-1] != signs[1:])[0]
    assert len(flips) == 1
    b_lo, b_hi = rows[flips[0], 0], rows[flips[0] + 1, 0]
    # crossover product / theta_k = 1.889 pm urad / 5 urad = 377.8 fm
    expected = 1.8892 * PM * 1e-6 / 5e-6 / FM
    assert b_lo < expected < b_hi
    assert b_hi - b_lo < 0.05 * expected


def test_fig2a_limits():
    result = run_sweep(SweepSpec("fig2a"))
    rows = np.array(result.rows)
    assert len(rows) == 600
    # small b: c.m. share approaches m_gamma - 1 for S->P (one unit absorbed)
    assert rows[0, 1] == pytest.approx(0.0, abs=1e-3)   # m_gamma = 1
    assert rows[0, 2] == pytest.approx(1.0, abs=1e-2)   # m_gamma = 2
    assert rows[0, 3] == pytest.approx(2.0, abs=1e-2)   # m_gamma = 3


def test_fig2b_vortex_center_limit():
    # S->D: for m_gamma <= 2 everything goes internal as b -> 0
    result = run_sweep(SweepSpec("fig2b"))
    rows = np.array(result.rows)
    assert rows[0, 1] == pytest.approx(0.0, abs=1e-3)
    assert rows[0, 2] == pytest.approx(0.0, abs=1e-3)
    assert rows[0, 3] == pytest.approx(1.0, abs=1e-2)


def test_fig3_uses_negative_helicity():
    from twistkick.beam import TwistedPhotonBeam
    from twistkick.transitions import TransitionChannel, mean_cm_am
    from twistkick.units import wavelength_to_energy

    result = run_sweep(SweepSpec("fig3a", grid=GridSpec(0.2, 1.0, 3)))
    rows = np.array(result.rows)
    beam = TwistedPhotonBeam(2, -1, wavelength_to_energy(397.0), 0.1)
    expected = mean_cm_am(beam, TransitionChannel(1), rows[1, 0] * 397.0)
    assert rows[1, 2] == expected


def test_fig4a_equal_kick_crossing():
    result = run_sweep(SweepSpec("fig4a", overrides={"theta_k": 0.01}))
    rows = np.array(result.rows)
    b, ratio2 = rows[:, 0], rows[:, 2]
    # m_gamma=2 ratio crosses 1 at b = lambda/(2 pi) = 0.1592 lambda
    i = int(np.argmin(np.abs(b - 1.0 / (2.0 * np.pi))))
    assert ratio2[i] == pytest.approx(1.0, abs=0.02)


def test_fig7_with_coarse_grid():
    result = run_sweep(SweepSpec("fig7", grid=GridSpec(10.0, 3000.0, 12)))
    rows = np.array(result.rows)
    assert len(rows) == 12
    assert np.all((rows[:, 1:] >= 0.0) & (rows[:, 1:] <= 1.0))
    # the combined extended curve has an interior maximum
    combined = rows[:, 5]
    assert combined.max() > combined[0]
    assert combined.max() > combined[-1]


def test_error_rows_dropped_and_counted():
    # a grid reaching b = 0 hits the vortex-line singularity of the point
    # model; the row is dropped, not interpolated
    result = run_sweep(SweepSpec("fig7", grid=GridSpec(0.0, 100.0, 3)))
    assert result.metadata["dropped_rows"] == 1
    assert len(result.rows) == 2


def test_degenerate_grid():
    result = run_sweep(SweepSpec("fig8a", grid=GridSpec(20.0, 2000.0, 2, "log")))
    assert len(result.rows) == 2
    assert header(result) == EXPECTED_SCHEMAS["fig8a"]


def test_deuteron_table_values():
    rows = np.array(run_sweep(SweepSpec("deuteron_table")).rows)
    by_case = {(int(r[0]), int(r[1]), round(r[2], 3)): r for r in rows}
    base = by_case[(2, 2, 88.968)]
    dipole = by_case[(2, 1, 88.968)]
    assert base[4] == pytest.approx(1.3, rel=0.03)      # keV
    assert dipole[4] == pytest.approx(2.6, rel=0.03)
    assert by_case[(3, 2, 88.968)][4] == dipole[4]


def test_pair_table_values():
    rows = np.array(run_sweep(SweepSpec("pair_table")).rows)
    first = rows[0]
    assert first[3] == pytest.approx(6.0 * 0.51099895, rel=1e-9)   # p_T MeV
    assert first[4] == pytest.approx(64.36, rel=0.01)              # b fm
    assert first[10] == pytest.approx(1.889, rel=0.01)             # crossover


def test_determinism_bit_identical():
    for figure_id in ("fig2a", "fig6", "fig8a", "deuteron_table"):
        a = run_sweep(SweepSpec(figure_id))
        b = run_sweep(SweepSpec(figure_id))
        assert a.rows == b.rows
        assert a.metadata == b.metadata


def test_unknown_figure_and_override():
    with pytest.raises(DomainError) as err:
        run_sweep(SweepSpec("fig99"))
    assert err.value.code == "UNKNOWN_FIGURE"
    with pytest.raises(DomainError) as err:
        run_sweep(SweepSpec("fig6", overrides={"nonsense": 1.0}))
    assert err.value.code == "UNKNOWN_PARAMETER"
    with pytest.raises(DomainError):
        run_sweep(SweepSpec("deuteron_table", grid=GridSpec(0.0, 1.0, 5)))


def test_grid_validation():
    with pytest.raises(DomainError):
        GridSpec(0.0, 1.0, 1)
    with pytest.raises(DomainError):
        GridSpec(1.0, 1.0, 5)
    with pytest.raises(DomainError):
        GridSpec(0.0, 1.0, 5, "log")
    with pytest.raises(DomainError):
        GridSpec(0.0, 1.0, 5, "cubic")


def test_loglin_grid_structure():
    values = GridSpec(1e-3, 1.5, 600, "loglin").values()
    assert len(values) == 600
    assert values[0] == 1e-3
    assert values[-1] == 1.5
    assert np.all(np.diff(values) > 0)
    # linear spacing in the upper section
    upper = values[-300:]
    assert np.allclose(np.diff(upper), upper[1] - upper[0])


def test_worker_env_var_does_not_change_results(monkeypatch):
    serial = run_sweep(SweepSpec("fig8a", grid=GridSpec(20.0, 2000.0, 25, "log")))
    monkeypatch.setenv("TWISTKICK_MAX_WORKERS", "4")
    parallel = run_sweep(SweepSpec("fig8a", grid=GridSpec(20.0, 2000.0, 25, "log")))
    assert serial.rows == parallel.rows
