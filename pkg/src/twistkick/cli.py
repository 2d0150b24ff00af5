"""Command-line front end: one subcommand per physics question, emitting CSV
(default) or JSON to stdout or a file.

Conventions: every physical flag carries its unit in the flag name
(--b-nm, --omega2-ev, --pitch-urad, ...); stdout carries only data and all
diagnostics go to stderr with a machine-readable code.  Exit codes: 0 on
success, 1 on usage errors, 2 on numerical/physical errors.  CSV output uses
a ``name [unit]`` header row, 12-significant-digit scientific notation, '.'
decimal separator and LF line endings; the JSON form carries numerically
identical values.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from . import __version__
from .beam import DEFAULT_PITCH_ANGLE, TwistedPhotonBeam, superkick
from .errors import TwistkickError
from .pair_production import PairThresholdQuery, crossover_product, \
    fit_beam_for_threshold_factor, pair_threshold, plane_wave_threshold
from .recoil_kinematics import TargetParticle, absorption_energy, \
    deuteron_threshold, focus_fraction, ratio_cut_radius, transverse_recoil_energy
from .sweeps import FIGURE_IDS, GridSpec, SweepResult, SweepSpec, run_sweep
from .transitions import TransitionChannel, mean_internal_am, recoil_ratio
from .trap import TrapModel, jump_probability_extended, jump_probability_point, \
    sideband_spectrum
from .units import CA40_ION_MASS_EV, DEUTERON_BINDING_EV, FM, GEV, HBARC_EV_NM, KEV, \
    MEV, NEV, PM, nonrel_recoil_energy, wavelength_to_energy

_CA40_MEV = CA40_ION_MASS_EV / MEV


def _format_value(x: float) -> str:
    return f"{x:.11e}"


def result_to_csv(result: SweepResult) -> str:
    lines = [",".join(f"{name} [{unit}]" for name, unit in result.columns)]
    for row in result.rows:
        lines.append(",".join(_format_value(v) for v in row))
    return "\n".join(lines) + "\n"


def result_to_json(result: SweepResult) -> str:
    payload = {
        "metadata": result.metadata,
        "columns": [{"name": name, "unit": unit} for name, unit in result.columns],
        # round-trip through the CSV formatting so both outputs carry the
        # same 12-significant-digit values
        "rows": [[float(_format_value(v)) for v in row] for row in result.rows],
    }
    return json.dumps(payload, indent=2) + "\n"


class _Parser(argparse.ArgumentParser):
    """argparse with usage failures mapped to exit code 1."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error [USAGE]: {message}\n")


def _emit(result: SweepResult, args) -> None:
    text = result_to_json(result) if args.format == "json" else result_to_csv(result)
    if args.output:
        with open(args.output, "w", encoding="ascii", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _scalar_result(command: str, parameters: dict, columns, row) -> SweepResult:
    return SweepResult(
        columns=list(columns),
        rows=[[float(v) for v in row]],
        metadata={
            "command": command,
            "parameters": parameters,
            "library_version": __version__,
        },
    )


# --- subcommand handlers ------------------------------------------------------

def _cmd_am_transfer(args) -> SweepResult:
    energy = wavelength_to_energy(args.lambda_nm)
    beam = TwistedPhotonBeam(args.m_gamma, args.lambda_spin, energy, args.pitch_rad)
    channel = TransitionChannel(float(args.multipole_j))
    xs = np.linspace(args.b_min_lambda, args.b_max_lambda, args.count)
    rows = []
    for x in xs:
        b = float(x) * args.lambda_nm
        internal = mean_internal_am(beam, channel, b)
        rows.append([float(x), internal, beam.m_gamma - internal])
    return SweepResult(
        columns=[("b", "lambda"), ("lz_internal", "hbar"), ("lz_cm", "hbar")],
        rows=rows,
        metadata={
            "command": "am-transfer",
            "parameters": {
                "multipole_j": args.multipole_j, "m_gamma": args.m_gamma,
                "lambda_spin": args.lambda_spin, "pitch_rad": args.pitch_rad,
                "lambda_nm": args.lambda_nm,
            },
            "library_version": __version__,
        },
    )


def _cmd_recoil_ratio(args) -> SweepResult:
    energy = wavelength_to_energy(args.lambda_nm)
    beam = TwistedPhotonBeam(args.m_gamma, args.lambda_spin, energy, args.pitch_rad)
    channel = TransitionChannel(float(args.multipole_j))
    xs = np.linspace(args.b_min_lambda, args.b_max_lambda, args.count)
    rows = [
        [float(x), recoil_ratio(beam, channel, float(x) * args.lambda_nm)]
        for x in xs
    ]
    return SweepResult(
        columns=[("b", "lambda"), ("pT_over_pz", "1")],
        rows=rows,
        metadata={
            "command": "recoil-ratio",
            "parameters": {
                "multipole_j": args.multipole_j, "m_gamma": args.m_gamma,
                "lambda_spin": args.lambda_spin, "pitch_rad": args.pitch_rad,
                "lambda_nm": args.lambda_nm,
            },
            "library_version": __version__,
        },
    )


def _cmd_ion_recoil(args) -> SweepResult:
    energy = wavelength_to_energy(args.lambda_nm)
    delta_l = args.m_gamma - args.lambda_spin
    target = TargetParticle(args.mass_mev * MEV, args.b_nm)
    e_long = nonrel_recoil_energy(energy, target.mass)
    e_t = transverse_recoil_energy(target, delta_l) if delta_l > 0 else 0.0
    solution = absorption_energy(energy, target, max(delta_l, 0))
    return _scalar_result(
        "ion-recoil",
        {"lambda_nm": args.lambda_nm, "m_gamma": args.m_gamma,
         "lambda_spin": args.lambda_spin, "b_nm": args.b_nm,
         "mass_mev": args.mass_mev},
        [("b", "nm"), ("delta_l", "hbar"), ("E_long", "neV"),
         ("E_T", "neV"), ("shift_total", "neV")],
        [args.b_nm, delta_l, e_long / NEV, e_t / NEV,
         solution.recoil_energy / NEV],
    )


def _cmd_trap_jump(args) -> SweepResult:
    energy = wavelength_to_energy(args.lambda_nm)
    beam = TwistedPhotonBeam(args.m_gamma, args.lambda_spin, energy, args.pitch_rad)
    trap = TrapModel(args.trap_mhz * 1e6, args.trap_mhz * 1e6, args.mass_mev * MEV)
    p_t = superkick(abs(args.nu), args.b_nm)
    p_point = jump_probability_point(p_t, trap)
    p_ext = jump_probability_extended(beam, args.nu, args.b_nm, trap, args.sigma_nm)
    return _scalar_result(
        "trap-jump",
        {"nu": args.nu, "b_nm": args.b_nm, "sigma_nm": args.sigma_nm,
         "trap_mhz": args.trap_mhz, "lambda_nm": args.lambda_nm,
         "pitch_rad": args.pitch_rad, "mass_mev": args.mass_mev,
         "m_gamma": args.m_gamma, "lambda_spin": args.lambda_spin},
        [("b", "nm"), ("p_T", "eV/c"), ("jump_point", "1"), ("jump_extended", "1")],
        [args.b_nm, p_t, p_point, p_ext],
    )


def _cmd_sidebands(args) -> SweepResult:
    energy = wavelength_to_energy(args.lambda_nm)
    beam = TwistedPhotonBeam(args.m_gamma, args.lambda_spin, energy, args.pitch_rad)
    trap = TrapModel(args.trap_mhz * 1e6, args.trap_mhz * 1e6, args.mass_mev * MEV)
    spectrum = sideband_spectrum(
        beam, args.nu, args.b_nm, trap, args.sigma_nm, args.n_max
    )
    rows = [
        [float(n), spectrum.weights[n], n * spectrum.quantum_energy / NEV]
        for n in sorted(spectrum.weights)
    ]
    return SweepResult(
        columns=[("n", "1"), ("weight", "1"), ("energy_shift", "neV")],
        rows=rows,
        metadata={
            "command": "sidebands",
            "parameters": {
                "nu": args.nu, "b_nm": args.b_nm, "sigma_nm": args.sigma_nm,
                "trap_mhz": args.trap_mhz, "lambda_nm": args.lambda_nm,
                "pitch_rad": args.pitch_rad, "mass_mev": args.mass_mev,
                "m_gamma": args.m_gamma, "lambda_spin": args.lambda_spin,
                "n_max": args.n_max,
            },
            "carrier_weight": spectrum.carrier_weight,
            "truncation_residual": spectrum.truncation_residual,
            "library_version": __version__,
        },
    )


def _cmd_deuteron_threshold(args) -> SweepResult:
    energy = wavelength_to_energy(args.lambda_fm * FM)
    beam = TwistedPhotonBeam(args.m_gamma, 1, energy, args.pitch_rad)
    solution = deuteron_threshold(beam, args.internal_am, args.b_fm * FM)
    return _scalar_result(
        "deuteron-threshold",
        {"m_gamma": args.m_gamma, "internal_am": args.internal_am,
         "b_fm": args.b_fm, "lambda_fm": args.lambda_fm},
        [("m_gamma", "hbar"), ("internal_am", "hbar"), ("b", "fm"),
         ("threshold", "MeV"), ("recoil", "keV"), ("p_T", "MeV/c")],
        [args.m_gamma, args.internal_am, args.b_fm,
         solution.photon_energy / MEV, solution.recoil_energy / KEV,
         solution.p_T / MEV],
    )


def _cmd_focus_fraction(args) -> SweepResult:
    beam = TwistedPhotonBeam(
        args.delta_l + 1, 1, args.energy_mev * MEV, args.pitch_rad,
        envelope_w0=args.w0_pm * PM,
    )
    fraction = focus_fraction(beam, args.delta_l, args.ratio_cut)
    b_star = ratio_cut_radius(beam, args.delta_l, args.ratio_cut)
    return _scalar_result(
        "focus-fraction",
        {"w0_pm": args.w0_pm, "ratio_cut": args.ratio_cut,
         "delta_l": args.delta_l, "energy_mev": args.energy_mev,
         "pitch_rad": args.pitch_rad},
        [("w0", "pm"), ("ratio_cut", "1"), ("b_star", "fm"), ("fraction", "1")],
        [args.w0_pm, args.ratio_cut, b_star / FM, fraction],
    )


def _cmd_pair_threshold(args) -> SweepResult:
    if args.pt_mev is not None:
        # express the requested kick as the impact parameter delivering it
        p_t = args.pt_mev * MEV
        query = PairThresholdQuery(
            omega2=args.omega2_ev, pitch_angle=args.pitch_urad * 1e-6,
            impact_parameter=0.0 if p_t == 0.0 else args.l_gamma * HBARC_EV_NM / p_t,
            l_gamma=0 if p_t == 0.0 else args.l_gamma,
        )
    else:
        query = PairThresholdQuery(
            omega2=args.omega2_ev, pitch_angle=args.pitch_urad * 1e-6,
            impact_parameter=args.b_fm * FM, l_gamma=args.l_gamma,
        )
    solution = pair_threshold(query)
    return _scalar_result(
        "pair-threshold",
        {"omega2_ev": args.omega2_ev, "pitch_urad": args.pitch_urad,
         "l_gamma": args.l_gamma, "pt_mev": args.pt_mev, "b_fm": args.b_fm},
        [("omega2", "eV"), ("theta_k", "urad"), ("p_T", "MeV/c"),
         ("threshold", "GeV"), ("plane_wave", "GeV"), ("shift", "GeV")],
        [args.omega2_ev, args.pitch_urad, solution.p_T / MEV,
         solution.photon_energy / GEV,
         plane_wave_threshold(args.omega2_ev) / GEV,
         solution.recoil_energy / GEV],
    )


def _cmd_crossover(args) -> SweepResult:
    result = crossover_product(args.omega2_ev, args.l_gamma)
    return _scalar_result(
        "crossover",
        {"omega2_ev": args.omega2_ev, "l_gamma": args.l_gamma},
        [("omega2", "eV"), ("l_gamma", "1"), ("product", "pm*urad"),
         ("variation", "1")],
        [args.omega2_ev, args.l_gamma, result.product / (PM * 1e-6),
         result.relative_variation],
    )


def _cmd_beam_fit(args) -> SweepResult:
    fit = fit_beam_for_threshold_factor(
        args.factor, args.omega2_ev, args.l_gamma, args.w0_over_b
    )
    return _scalar_result(
        "beam-fit",
        {"factor": args.factor, "omega2_ev": args.omega2_ev,
         "l_gamma": args.l_gamma, "w0_over_b": args.w0_over_b},
        [("factor", "1"), ("p_T", "MeV/c"), ("b", "fm"), ("theta_k", "urad"),
         ("w0", "fm"), ("peak_radius", "fm"), ("threshold", "GeV")],
        [args.factor, fit.p_T / MEV, fit.impact_parameter / FM,
         fit.pitch_angle * 1e6, fit.envelope_w0 / FM, fit.peak_radius / FM,
         fit.photon_energy / GEV],
    )


def _parse_override(text: str):
    if "=" not in text:
        raise argparse.ArgumentTypeError(f"override must be KEY=VALUE, got {text!r}")
    key, raw = text.split("=", 1)
    try:
        value: object = int(raw)
    except ValueError:
        try:
            value = float(raw)
        except ValueError:
            value = raw
    return key, value


class _UsageError(TwistkickError):
    default_code = "USAGE"


def _cmd_reproduce(args) -> SweepResult:
    overrides = dict(args.set or [])
    grid = None
    if args.grid_count is not None:
        if args.grid_start is None or args.grid_stop is None:
            raise _UsageError("--grid-count requires --grid-start and --grid-stop")
        grid = GridSpec(args.grid_start, args.grid_stop, args.grid_count,
                        args.grid_scale)
    return run_sweep(SweepSpec(args.figure, overrides=overrides, grid=grid))


# --- parser -------------------------------------------------------------------

def _add_output_flags(parser):
    parser.add_argument("--format", choices=("csv", "json"), default="csv",
                        help="output format (default: csv)")
    parser.add_argument("--output", default=None, metavar="PATH",
                        help="write to PATH instead of stdout")


def _add_beam_flags(parser, lambda_default, m_default, spin_default):
    parser.add_argument("--lambda-nm", type=float, default=lambda_default,
                        help=f"photon wavelength [nm] (default: {lambda_default})")
    parser.add_argument("--m-gamma", type=int, default=m_default,
                        help=f"total AM projection m_gamma [hbar] (default: {m_default})")
    parser.add_argument("--lambda-spin", type=int, choices=(-1, 1), default=spin_default,
                        help=f"paraxial helicity [1] (default: {spin_default})")
    parser.add_argument("--pitch-rad", type=float, default=DEFAULT_PITCH_ANGLE,
                        help=f"pitch angle [rad] (default: {DEFAULT_PITCH_ANGLE})")


def _add_trap_flags(parser):
    parser.add_argument("--nu", type=int, default=1,
                        help="AM units transferred to the c.m. [hbar] (default: 1)")
    parser.add_argument("--b-nm", type=float, required=True,
                        help="impact parameter [nm] (required)")
    parser.add_argument("--sigma-nm", type=float, default=10.0,
                        help="wavepacket rms spread per axis [nm] (default: 10)")
    parser.add_argument("--trap-mhz", type=float, default=1.5,
                        help="trap frequency [MHz] (default: 1.5)")
    parser.add_argument("--mass-mev", type=float, default=_CA40_MEV,
                        help=f"ion rest energy [MeV] (default: {_CA40_MEV:.4f}, 40Ca+)")


def build_parser() -> _Parser:
    parser = _Parser(
        prog="twistkick",
        description="Recoil kinematics of twisted-photon absorption: "
                    "AM partitioning, superkick recoil, threshold shifts.",
    )
    parser.add_argument("--version", action="version", version=f"twistkick {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    p = sub.add_parser("am-transfer",
                       help="mean internal/c.m. angular momentum vs impact parameter")
    p.add_argument("--multipole-j", type=int, default=1, choices=(1, 2, 3),
                   help="multipole order J [1] (default: 1)")
    _add_beam_flags(p, 397.0, 2, 1)
    p.add_argument("--b-min-lambda", type=float, default=1e-3,
                   help="sweep start [lambda] (default: 0.001)")
    p.add_argument("--b-max-lambda", type=float, default=1.5,
                   help="sweep stop [lambda] (default: 1.5)")
    p.add_argument("--count", type=int, default=300,
                   help="number of points [1] (default: 300)")
    _add_output_flags(p)
    p.set_defaults(handler=_cmd_am_transfer)

    p = sub.add_parser("recoil-ratio",
                       help="transverse/longitudinal recoil ratio vs impact parameter")
    p.add_argument("--multipole-j", type=int, default=1, choices=(1, 2, 3),
                   help="multipole order J [1] (default: 1)")
    _add_beam_flags(p, 397.0, 2, 1)
    p.add_argument("--b-min-lambda", type=float, default=1e-3,
                   help="sweep start [lambda] (default: 0.001)")
    p.add_argument("--b-max-lambda", type=float, default=1.5,
                   help="sweep stop [lambda] (default: 1.5)")
    p.add_argument("--count", type=int, default=300,
                   help="number of points [1] (default: 300)")
    _add_output_flags(p)
    p.set_defaults(handler=_cmd_recoil_ratio)

    p = sub.add_parser("ion-recoil",
                       help="longitudinal and superkick recoil energies for a trapped ion")
    _add_beam_flags(p, 397.0, 2, 1)
    p.add_argument("--b-nm", type=float, required=True,
                   help="impact parameter [nm] (required)")
    p.add_argument("--mass-mev", type=float, default=_CA40_MEV,
                   help=f"ion rest energy [MeV] (default: {_CA40_MEV:.4f}, 40Ca+)")
    _add_output_flags(p)
    p.set_defaults(handler=_cmd_ion_recoil)

    p = sub.add_parser("trap-jump",
                       help="trap excitation probability: point-impulse vs extended packet")
    _add_beam_flags(p, 729.0, -2, -1)
    _add_trap_flags(p)
    _add_output_flags(p)
    p.set_defaults(handler=_cmd_trap_jump)

    p = sub.add_parser("sidebands",
                       help="transverse sideband spectrum from the motional ground state")
    _add_beam_flags(p, 729.0, -2, -1)
    _add_trap_flags(p)
    p.add_argument("--n-max", type=int, default=8,
                   help="highest trap level retained [1] (default: 8)")
    _add_output_flags(p)
    p.set_defaults(handler=_cmd_sidebands)

    p = sub.add_parser("deuteron-threshold",
                       help="photodisintegration threshold for a deuteron off the vortex axis")
    p.add_argument("--m-gamma", type=int, default=2,
                   help="photon total AM [hbar] (default: 2)")
    p.add_argument("--internal-am", type=int, default=1,
                   help="AM absorbed internally (multipole J) [hbar] (default: 1)")
    p.add_argument("--b-fm", type=float, required=True,
                   help="impact parameter [fm] (required)")
    p.add_argument("--lambda-fm", type=float, default=559.0,
                   help="photon wavelength [fm] (default: 559)")
    p.add_argument("--pitch-rad", type=float, default=DEFAULT_PITCH_ANGLE,
                   help=f"pitch angle [rad] (default: {DEFAULT_PITCH_ANGLE})")
    _add_output_flags(p)
    p.set_defaults(handler=_cmd_deuteron_threshold)

    p = sub.add_parser("focus-fraction",
                       help="fraction of absorptions with recoil ratio above a cut")
    p.add_argument("--w0-pm", type=float, required=True,
                   help="Bessel-Gauss envelope scale [pm] (required)")
    p.add_argument("--ratio-cut", type=float, default=0.1,
                   help="p_T/p_z cut [1] (default: 0.1)")
    p.add_argument("--delta-l", type=int, default=1,
                   help="AM to the c.m. [hbar] (default: 1)")
    p.add_argument("--energy-mev", type=float, default=DEUTERON_BINDING_EV / MEV,
                   help="photon energy [MeV] (default: deuteron binding 2.22452)")
    p.add_argument("--pitch-rad", type=float, default=DEFAULT_PITCH_ANGLE,
                   help=f"pitch angle [rad] (default: {DEFAULT_PITCH_ANGLE})")
    _add_output_flags(p)
    p.set_defaults(handler=_cmd_focus_fraction)

    p = sub.add_parser("pair-threshold",
                       help="gamma-gamma pair-production threshold for a twisted photon")
    p.add_argument("--omega2-ev", type=float, default=2.5,
                   help="background photon energy [eV] (default: 2.5)")
    p.add_argument("--pitch-urad", type=float, required=True,
                   help="pitch angle [urad] (required)")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--pt-mev", type=float, default=None,
                       help="transverse kick [MeV/c] (alternative to --b-fm)")
    group.add_argument("--b-fm", type=float, default=None,
                       help="impact parameter [fm] (alternative to --pt-mev)")
    p.add_argument("--l-gamma", type=int, default=1,
                   help="orbital index l_gamma [1] (default: 1)")
    _add_output_flags(p)
    p.set_defaults(handler=_cmd_pair_threshold)

    p = sub.add_parser("crossover",
                       help="b*theta_k product where twisted and plane-wave thresholds meet")
    p.add_argument("--omega2-ev", type=float, default=2.5,
                   help="background photon energy [eV] (default: 2.5)")
    p.add_argument("--l-gamma", type=int, default=1,
                   help="orbital index l_gamma [1] (default: 1)")
    _add_output_flags(p)
    p.set_defaults(handler=_cmd_crossover)

    p = sub.add_parser("beam-fit",
                       help="beam parameters realizing a requested threshold increase")
    p.add_argument("--factor", type=float, default=10.0,
                   help="threshold multiplication factor [1] (default: 10)")
    p.add_argument("--omega2-ev", type=float, default=2.5,
                   help="background photon energy [eV] (default: 2.5)")
    p.add_argument("--l-gamma", type=int, default=1,
                   help="orbital index l_gamma [1] (default: 1)")
    p.add_argument("--w0-over-b", type=float, default=2.0,
                   help="envelope scale over target radius [1] (default: 2)")
    _add_output_flags(p)
    p.set_defaults(handler=_cmd_beam_fit)

    p = sub.add_parser("reproduce", help="emit the data table behind a canned figure")
    p.add_argument("--figure", required=True, choices=FIGURE_IDS,
                   help="figure id")
    p.add_argument("--set", action="append", type=_parse_override, metavar="KEY=VALUE",
                   help="override a figure parameter (repeatable)")
    p.add_argument("--grid-start", type=float, default=None,
                   help="replacement grid start [figure x-unit]")
    p.add_argument("--grid-stop", type=float, default=None,
                   help="replacement grid stop [figure x-unit]")
    p.add_argument("--grid-count", type=int, default=None,
                   help="replacement grid point count [1]")
    p.add_argument("--grid-scale", choices=("lin", "log", "loglin"), default="lin",
                   help="replacement grid spacing (default: lin)")
    _add_output_flags(p)
    p.set_defaults(handler=_cmd_reproduce)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        result = args.handler(args)
        _emit(result, args)
    except TwistkickError as exc:
        print(f"twistkick: error [{exc.code}]: {exc}", file=sys.stderr)
        return 1 if exc.code == "USAGE" else 2
    except BrokenPipeError:
        return 0
    return 0


if __name__ == "__main__":
    sys.exit(main())
