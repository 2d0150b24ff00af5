"""Figure-reproduction engine: canned parameter sweeps composing the physics
modules into deterministic data tables with stable column schemas.

Every figure id carries documented default parameters (pitch angle, trap
frequency, wavelength, ...) for the quantities its source plot leaves
unstated; all of them are overridable.  Rows whose evaluation hits a
physical singularity (e.g. the vortex line b = 0) are dropped and counted in
the metadata, never silently interpolated.
"""

from __future__ import annotations

import math
import os
from collections.abc import Mapping
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from . import __version__
from .beam import DEFAULT_PITCH_ANGLE, TwistedPhotonBeam, superkick
from .errors import DomainError, TwistkickError
from .pair_production import PairThresholdQuery, crossover_product, pair_threshold, \
    fit_beam_for_threshold_factor, plane_wave_threshold
from .recoil_kinematics import TargetParticle, deuteron_threshold, \
    transverse_recoil_energy
from .transitions import TransitionChannel, mean_cm_am, recoil_ratio, sublevel_profile
from .trap import TrapModel, jump_probability_extended, jump_probability_point
from .units import CA40_ION_MASS_EV, DEUTERON_MASS_EV, FM, GEV, KEV, MEV, NEV, \
    constants_sha256, nonrel_recoil_energy, wavelength_to_energy

#: Environment variable capping the worker threads used for row evaluation.
#: Unset or "1" evaluates serially; results are identical either way.
MAX_WORKERS_ENV = "TWISTKICK_MAX_WORKERS"


@dataclass(frozen=True)
class GridSpec:
    """1-D sweep axis: [start, stop] with ``count`` points, spaced linearly
    ("lin"), geometrically ("log"), or geometrically up to
    min(100*start, stop/2) and linearly beyond ("loglin", resolving both the
    a -> 0 limit and structure at O(stop))."""

    start: float
    stop: float
    count: int
    scale: str = "lin"

    def __post_init__(self):
        if not 2 <= self.count <= 10**6:
            raise DomainError(f"grid count must lie in [2, 1e6], got {self.count}")
        if not self.stop > self.start:
            raise DomainError(f"grid needs stop > start, got [{self.start}, {self.stop}]")
        if self.scale not in ("lin", "log", "loglin"):
            raise DomainError(f"grid scale must be lin/log/loglin, got {self.scale!r}")
        if self.scale in ("log", "loglin") and not self.start > 0.0:
            raise DomainError("log-spaced grids need start > 0")

    def values(self) -> np.ndarray:
        if self.scale == "lin":
            return np.linspace(self.start, self.stop, self.count)
        if self.scale == "log":
            return np.geomspace(self.start, self.stop, self.count)
        split = min(100.0 * self.start, 0.5 * self.stop)
        n_log = self.count // 2
        n_lin = self.count - n_log
        return np.concatenate([
            np.geomspace(self.start, split, n_log, endpoint=False),
            np.linspace(split, self.stop, n_lin),
        ])


@dataclass(frozen=True)
class SweepSpec:
    """A figure id plus optional parameter overrides and grid replacement."""

    figure_id: str
    overrides: Mapping[str, object] = field(default_factory=dict)
    grid: GridSpec | None = None


@dataclass
class SweepResult:
    columns: list[tuple[str, str]]  # (name, unit)
    rows: list[list[float]]
    metadata: dict


class _Figure:
    def __init__(self, columns, defaults, grid, builder, description):
        self.columns = columns
        self.defaults = defaults
        self.grid = grid
        self.builder = builder
        self.description = description


# the m_gamma series of each panel is part of the figure identity (it is
# baked into the frozen column names), so it is a builder argument rather
# than an overridable parameter
_M_GAMMA_SERIES = (1, 2, 3)


def _am_transfer_builder(j: int, lambda_spin: int):
    def build(params):
        wavelength = params["lambda_nm"]
        energy = wavelength_to_energy(wavelength)
        channel = TransitionChannel(float(j))
        beams = [
            TwistedPhotonBeam(m, lambda_spin, energy, params["theta_k"])
            for m in _M_GAMMA_SERIES
        ]
        def row(x):
            b = x * wavelength
            return [x] + [mean_cm_am(beam, channel, b) for beam in beams]
        return row
    return build


def _recoil_ratio_builder(j: int, lambda_spin: int):
    def build(params):
        wavelength = params["lambda_nm"]
        energy = wavelength_to_energy(wavelength)
        channel = TransitionChannel(float(j))
        beams = [
            TwistedPhotonBeam(m, lambda_spin, energy, params["theta_k"])
            for m in _M_GAMMA_SERIES
        ]
        def row(x):
            b = x * wavelength
            return [x] + [recoil_ratio(beam, channel, b) for beam in beams]
        return row
    return build


def _fig6_build(params):
    energy = wavelength_to_energy(params["lambda_nm"])
    e_long = nonrel_recoil_energy(energy, CA40_ION_MASS_EV)
    def row(b):
        target = TargetParticle(CA40_ION_MASS_EV, b)
        return [b, e_long / NEV] + [
            transverse_recoil_energy(target, m - 1) / NEV for m in (2, 3, 4)
        ]
    return row


def _fig7_build(params):
    energy = wavelength_to_energy(params["lambda_nm"])
    beam = TwistedPhotonBeam(
        params["m_gamma"], params["lambda_spin"], energy, params["theta_k"]
    )
    channel = TransitionChannel(2.0, params["m_initial"])
    trap = TrapModel(params["trap_mhz"] * 1e6, params["trap_mhz"] * 1e6, CA40_ION_MASS_EV)
    nu = params["m_gamma"] - round(params["m_final"] - params["m_initial"])
    sigma = params["sigma_nm"]
    def row(b):
        excitation = sublevel_profile(beam, channel, params["m_final"], b)
        p_point = jump_probability_point(superkick(abs(nu), b), trap)
        p_ext = jump_probability_extended(beam, nu, b, trap, sigma)
        return [b, excitation, p_point, p_ext,
                excitation * p_point, excitation * p_ext]
    return row


def _fig8a_build(params):
    reference = plane_wave_threshold(params["omega2_ev"])
    theta = params["pitch_urad"] * 1e-6
    def row(b_fm):
        q = PairThresholdQuery(
            omega2=params["omega2_ev"], pitch_angle=theta,
            impact_parameter=b_fm * FM, l_gamma=params["l_gamma"],
        )
        return [b_fm, pair_threshold(q).photon_energy / GEV, reference / GEV]
    return row


def _fig8b_build(params):
    reference = plane_wave_threshold(params["omega2_ev"])
    b = params["b_fm"] * FM
    def row(theta_urad):
        q = PairThresholdQuery(
            omega2=params["omega2_ev"], pitch_angle=theta_urad * 1e-6,
            impact_parameter=b, l_gamma=params["l_gamma"],
        )
        return [theta_urad, pair_threshold(q).photon_energy / GEV, reference / GEV]
    return row


_DEUTERON_CASES = (
    # (m_gamma, internal_am, b_fm): dipole/quadrupole channels near threshold
    (1, 1, 88.96761318836948),
    (2, 1, 88.96761318836948),
    (2, 2, 88.96761318836948),
    (3, 2, 88.96761318836948),
    (2, 1, 44.48380659418474),
)


def _deuteron_table_build(params):
    energy = wavelength_to_energy(params["lambda_fm"] * FM)
    def row(case):
        m_gamma, internal, b_fm = case
        beam = TwistedPhotonBeam(m_gamma, 1, energy, params["theta_k"])
        sol = deuteron_threshold(beam, internal, b_fm * FM)
        return [
            float(m_gamma), float(internal), b_fm,
            sol.photon_energy / MEV,
            sol.recoil_energy / KEV,
            nonrel_recoil_energy(sol.p_T, DEUTERON_MASS_EV) / KEV,
        ]
    return row


_PAIR_CASES = ((1, 10.0), (2, 10.0))


def _pair_table_build(params):
    omega2 = params["omega2_ev"]
    def row(case):
        l_gamma, factor = case
        fit = fit_beam_for_threshold_factor(factor, omega2, l_gamma)
        cross = crossover_product(omega2, l_gamma)
        return [
            omega2, float(l_gamma), factor,
            fit.p_T / MEV,
            fit.impact_parameter / FM,
            fit.envelope_w0 / FM,
            fit.pitch_angle * 1e6,
            fit.peak_radius / FM,
            plane_wave_threshold(omega2) / GEV,
            fit.photon_energy / GEV,
            cross.product / (1e-3 * 1e-6),  # nm*rad -> pm*urad
        ]
    return row


def _lz_columns():
    return [("b", "lambda")] + [(f"lz_cm(m_gamma={m})", "hbar") for m in _M_GAMMA_SERIES]


def _ratio_columns():
    return [("b", "lambda")] + [(f"pT_over_pz(m_gamma={m})", "1") for m in _M_GAMMA_SERIES]


_AM_DEFAULTS = {
    "theta_k": DEFAULT_PITCH_ANGLE,
    "lambda_nm": 397.0,
}

_REGISTRY: dict[str, _Figure] = {}


def _register(figure_id, columns, defaults, grid, builder, description):
    _REGISTRY[figure_id] = _Figure(columns, defaults, grid, builder, description)


for _letter, _j in (("a", 1), ("b", 2), ("c", 3)):
    _register(
        f"fig2{_letter}", _lz_columns(), dict(_AM_DEFAULTS),
        GridSpec(1e-3, 1.5, 600, "loglin"), _am_transfer_builder(_j, 1),
        f"c.m. angular momentum vs b/lambda, multipole J={_j}, helicity +1",
    )
    _register(
        f"fig3{_letter}", _lz_columns(), dict(_AM_DEFAULTS),
        GridSpec(1e-3, 1.5, 600, "loglin"), _am_transfer_builder(_j, -1),
        f"c.m. angular momentum vs b/lambda, multipole J={_j}, helicity -1",
    )
    _register(
        f"fig4{_letter}", _ratio_columns(), dict(_AM_DEFAULTS),
        GridSpec(1e-3, 1.5, 600, "loglin"), _recoil_ratio_builder(_j, 1),
        f"recoil ratio p_T/p_z vs b/lambda, multipole J={_j}, helicity +1",
    )
    _register(
        f"fig5{_letter}", _ratio_columns(), dict(_AM_DEFAULTS),
        GridSpec(1e-3, 1.5, 600, "loglin"), _recoil_ratio_builder(_j, -1),
        f"recoil ratio p_T/p_z vs b/lambda, multipole J={_j}, helicity -1",
    )

_register(
    "fig6",
    [("b", "nm"), ("E_long", "neV"), ("E_T(m_gamma=2)", "neV"),
     ("E_T(m_gamma=3)", "neV"), ("E_T(m_gamma=4)", "neV")],
    {"lambda_nm": 397.0},
    GridSpec(1.0, 100.0, 200, "log"), _fig6_build,
    "trapped-ion recoil energies vs impact parameter (40Ca+, 397 nm)",
)
_register(
    "fig7",
    [("b", "nm"), ("excitation", "1"), ("jump_point", "1"),
     ("jump_extended", "1"), ("combined_point", "1"), ("combined_extended", "1")],
    {"lambda_nm": 729.0, "theta_k": DEFAULT_PITCH_ANGLE, "m_gamma": -2,
     "lambda_spin": -1, "m_initial": -0.5, "m_final": -1.5,
     "sigma_nm": 10.0, "trap_mhz": 1.5},
    GridSpec(10.0, 3000.0, 120, "lin"), _fig7_build,
    "sublevel excitation profile and trap-jump probabilities vs b",
)
_register(
    "fig8a",
    [("b", "fm"), ("threshold", "GeV"), ("plane_wave", "GeV")],
    {"omega2_ev": 2.5, "l_gamma": 1, "pitch_urad": 5.0},
    GridSpec(20.0, 2000.0, 200, "log"), _fig8a_build,
    "pair-production threshold vs impact parameter at fixed pitch angle",
)
_register(
    "fig8b",
    [("theta_k", "urad"), ("threshold", "GeV"), ("plane_wave", "GeV")],
    {"omega2_ev": 2.5, "l_gamma": 1, "b_fm": 200.0},
    GridSpec(0.5, 50.0, 200, "log"), _fig8b_build,
    "pair-production threshold vs pitch angle at fixed impact parameter",
)
_register(
    "deuteron_table",
    [("m_gamma", "hbar"), ("internal_am", "hbar"), ("b", "fm"),
     ("threshold", "MeV"), ("recoil", "keV"), ("transverse_recoil", "keV")],
    {"lambda_fm": 559.0, "theta_k": DEFAULT_PITCH_ANGLE},
    None, _deuteron_table_build,
    "deuteron photodisintegration thresholds per multipole channel",
)
_register(
    "pair_table",
    [("omega2", "eV"), ("l_gamma", "1"), ("factor", "1"), ("p_T", "MeV"),
     ("b", "fm"), ("w0", "fm"), ("theta_k", "urad"), ("peak_radius", "fm"),
     ("plane_wave", "GeV"), ("threshold", "GeV"), ("crossover", "pm*urad")],
    {"omega2_ev": 2.5},
    None, _pair_table_build,
    "beam parameters for ten-fold pair-threshold increase and crossover products",
)

FIGURE_IDS = tuple(sorted(_REGISTRY))


def figure_description(figure_id: str) -> str:
    figure = _REGISTRY.get(figure_id)
    if figure is None:
        raise DomainError(f"unknown figure id {figure_id!r}", code="UNKNOWN_FIGURE")
    return figure.description


def _worker_count() -> int:
    raw = os.environ.get(MAX_WORKERS_ENV, "1")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def run_sweep(spec: SweepSpec) -> SweepResult:
    """Evaluate the requested figure; identical specs give identical results."""
    figure = _REGISTRY.get(spec.figure_id)
    if figure is None:
        raise DomainError(f"unknown figure id {spec.figure_id!r}", code="UNKNOWN_FIGURE")

    params = dict(figure.defaults)
    for key, value in spec.overrides.items():
        if key not in params:
            raise DomainError(
                f"figure {spec.figure_id!r} has no parameter {key!r} "
                f"(available: {', '.join(sorted(params)) or 'none'})",
                code="UNKNOWN_PARAMETER",
            )
        params[key] = value

    if figure.grid is None:
        if spec.grid is not None:
            raise DomainError(
                f"figure {spec.figure_id!r} is a fixed table and accepts no grid",
                code="UNKNOWN_PARAMETER",
            )
        points = _DEUTERON_CASES if spec.figure_id == "deuteron_table" else _PAIR_CASES
        grid_meta = None
    else:
        grid = spec.grid or figure.grid
        points = grid.values()
        grid_meta = {
            "start": grid.start, "stop": grid.stop,
            "count": grid.count, "scale": grid.scale,
        }

    row_fn = figure.builder(params)

    def evaluate(point):
        try:
            row = row_fn(point)
        except TwistkickError:
            return None
        if any(not math.isfinite(v) for v in row):
            return None
        return [float(v) for v in row]

    workers = _worker_count()
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            raw_rows = list(pool.map(evaluate, list(points)))
    else:
        raw_rows = [evaluate(p) for p in points]

    rows = [r for r in raw_rows if r is not None]
    dropped = len(raw_rows) - len(rows)

    metadata = {
        "figure": spec.figure_id,
        "description": figure.description,
        "parameters": {k: _meta_value(v) for k, v in params.items()},
        "grid": grid_meta,
        "rows": len(rows),
        "dropped_rows": dropped,
        "library_version": __version__,
        "constants_sha256": constants_sha256(),
    }
    return SweepResult(columns=list(figure.columns), rows=rows, metadata=metadata)


def _meta_value(value):
    if isinstance(value, tuple):
        return list(value)
    return value
