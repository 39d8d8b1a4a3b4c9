"""Command-line front end: ``ringshift <command> [options]``.

Parameters come from, in increasing priority, a ``--preset``, the
``[common]`` and ``[<command>]`` sections of an INI ``--config`` file, and
command-line flags. Results are written as CSV or JSON tables.

Exit codes: 0 success, 2 invalid configuration, 3 numerical failure,
4 cavity resonance.
"""

from __future__ import annotations

import argparse
import configparser
import math
import os
import sys

import numpy as np

from . import __version__
from .cavity import CavityModeSpec, ResonanceError, cavity_shift
from .presets import PRESETS
from .radial import (
    DisplacedParabola,
    NumericalError,
    RadialGrid,
    TabulatedPotential,
    default_grid,
    harmonic_reference,
    mean_radius,
    solve_radial,
)
from .ring1d import flux_scan, lamb_shift_1d
from .shift2d import (
    BasisTruncation,
    bethe_log_shift,
    laplacian_expectation,
    parabolic_prefactor,
    solve_channels,
    total_shift_2d,
)
from .table import Column, ScanTable, write_atomic
from .units import Ring1DSpec, default_constants

EXIT_OK, EXIT_CONFIG, EXIT_NUMERICAL, EXIT_RESONANCE = 0, 2, 3, 4


class ConfigError(ValueError):
    pass


def _int_list(text):
    if isinstance(text, (list, tuple)):
        return [int(v) for v in text]
    return [int(v) for v in str(text).replace(";", ",").split(",") if v.strip()]


# key -> (parser, human name, help)
PARAMS = {
    "radius_nm": (float, "radius", "ring radius R in nm"),
    "flux": (float, "flux", "flux quanta f = Phi/Phi0"),
    "kmax_ev": (float, "k_max", "photon cut-off k_max in eV"),
    "mass_ratio": (float, "mass_ratio", "effective mass m*/m_e"),
    "m": (int, "m", "azimuthal quantum number"),
    "n": (int, "n", "radial quantum number (0-based)"),
    "m_values": (_int_list, "m_values", "comma-separated azimuthal numbers"),
    "f_min": (float, "f_min", "first flux value of the scan"),
    "f_max": (float, "f_max", "last flux value of the scan"),
    "f_step": (float, "f_step", "flux step of the scan"),
    "omega_ev": (float, "omega", "cavity mode energy in eV"),
    "omega_min_ev": (float, "omega_min", "first mode energy of a sweep (eV)"),
    "omega_max_ev": (float, "omega_max", "last mode energy of a sweep (eV)"),
    "omega_steps": (int, "omega_steps", "number of sweep points"),
    "amplitude": (float, "amplitude", "mode amplitude A0 in natural units (eV)"),
    "photons": (int, "photons", "cavity photon number N"),
    "v0_ev_nm2": (float, "v0", "parabola stiffness V0 in eV/nm^2"),
    "potential_file": (str, "potential_file", "CSV of rho_nm,V_eV samples"),
    "n_states": (int, "n_states", "number of radial states to report"),
    "nmax": (int, "n_max", "highest radial number in virtual-state sums"),
    "grid_points": (int, "grid_points", "radial grid size"),
    "rho_min_nm": (float, "rho_min", "inner grid edge in nm"),
    "rho_max_nm": (float, "rho_max", "outer grid edge in nm"),
    "epsilon_bar_ev": (float, "epsilon_bar", "effective energy eps_bar in eV"),
    "log_factor": (float, "log_factor", "ln(k_max/eps_bar), overrides k_max/eps_bar"),
    "dump_dir": (str, "dump_dir", "directory for wavefunction CSV dumps"),
    "transitions": (str, "transitions", "CSV path for the transition list"),
}

_RADIAL = ("radius_nm", "v0_ev_nm2", "potential_file", "mass_ratio", "m",
           "grid_points", "rho_min_nm", "rho_max_nm")

COMMANDS = {
    "shift1d": {
        "keys": ("radius_nm", "flux", "kmax_ev", "mass_ratio", "m"),
        "defaults": {"flux": 0.0, "mass_ratio": 1.0, "m": 0},
        "help": "Lamb shift of one 1D ring level",
    },
    "scan-flux": {
        "keys": ("radius_nm", "kmax_ev", "mass_ratio", "m_values", "f_min", "f_max",
                 "f_step"),
        "defaults": {"mass_ratio": 1.0, "m_values": [0, 1, 2, 3], "f_min": -1.0,
                     "f_max": 4.0, "f_step": 0.01},
        "help": "1D shifts over a flux grid (Aharonov-Bohm oscillations)",
    },
    "cavity": {
        "keys": ("radius_nm", "flux", "mass_ratio", "m", "omega_ev", "omega_min_ev",
                 "omega_max_ev", "omega_steps", "amplitude", "photons"),
        "defaults": {"flux": 0.0, "mass_ratio": 1.0, "m": 0, "photons": 0},
        "help": "shift from a single cavity mode",
    },
    "solve-radial": {
        "keys": _RADIAL + ("n_states", "dump_dir"),
        "defaults": {"mass_ratio": 1.0, "m": 0, "n_states": 5, "grid_points": 2000},
        "help": "radial eigenstates of a 2D ring",
    },
    "shift2d": {
        "keys": _RADIAL + ("n", "flux", "kmax_ev", "nmax", "epsilon_bar_ev",
                           "transitions"),
        "defaults": {"mass_ratio": 1.0, "m": 0, "n": 0, "flux": 0.0, "nmax": 20,
                     "grid_points": 2000},
        "help": "diagonal + non-diagonal 2D Lamb shift",
    },
    "bethe-log": {
        "keys": _RADIAL + ("n", "kmax_ev", "epsilon_bar_ev", "log_factor"),
        "defaults": {"mass_ratio": 1.0, "m": 0, "n": 0, "grid_points": 4000},
        "help": "effective-logarithm estimate (quadrature and closed form)",
    },
    "presets": {
        "keys": (),
        "defaults": {},
        "help": "list built-in parameter presets",
    },
}


def _flag(key):
    return "--" + key.replace("_", "-")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ringshift",
        description="Radiative (Lamb) shifts of electron levels in quantum rings.",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)
    for name, info in COMMANDS.items():
        p = sub.add_parser(name, help=info["help"])
        p.add_argument("--config", help="INI file with [common] / [%s] sections" % name)
        p.add_argument("--output", help="output path (default: stdout)")
        p.add_argument("--format", choices=("csv", "json"), default="csv")
        p.add_argument("--preset", choices=sorted(PRESETS))
        for key in info["keys"]:
            _, _, text = PARAMS[key]
            # parsing happens in resolve_config so files and flags share it
            p.add_argument(_flag(key), dest=key, default=None, help=text)
    return parser


def _parse(key, raw, origin):
    parse, human, _ = PARAMS[key]
    try:
        return parse(raw)
    except (TypeError, ValueError):
        raise ConfigError(f"{origin}: invalid value {raw!r} for {human} ({key})") from None


def resolve_config(command: str, args: argparse.Namespace) -> dict:
    """Merge preset, config file and flags for ``command``."""
    info = COMMANDS[command]
    keys = set(info["keys"])
    config = dict(info["defaults"])

    preset = getattr(args, "preset", None)
    if preset:
        config.update({k: v for k, v in PRESETS[preset].items() if k in keys})

    path = getattr(args, "config", None)
    if path:
        parser = configparser.ConfigParser()
        try:
            with open(path) as fh:
                parser.read_file(fh)
        except OSError as exc:
            raise ConfigError(f"cannot read config {path}: {exc}") from None
        except configparser.Error as exc:
            raise ConfigError(f"malformed config {path}: {exc}") from None
        for section in parser.sections():
            if section not in ("common", command) and section not in COMMANDS:
                raise ConfigError(f"{path}: unknown section [{section}]")
        for section in ("common", command):
            if not parser.has_section(section):
                continue
            for key, raw in parser.items(section):
                if key not in PARAMS:
                    raise ConfigError(f"{path}: unknown key {key!r} in [{section}]")
                if key not in keys:
                    if section == command:
                        raise ConfigError(
                            f"{path}: key {key!r} is not used by {command}"
                        )
                    continue
                config[key] = _parse(key, raw, f"{path} [{section}]")

    for key in keys:
        raw = getattr(args, key, None)
        if raw is not None:
            config[key] = _parse(key, raw, _flag(key))
    return config


def _require(config, *keys):
    for key in keys:
        if config.get(key) is None:
            human = PARAMS[key][1]
            raise ConfigError(
                f"missing required parameter {human!r} (config key {key}, flag {_flag(key)})"
            )


def _ring(config, constants):
    _require(config, "radius_nm")
    try:
        return Ring1DSpec(config["radius_nm"], config.get("flux", 0.0),
                          config.get("mass_ratio", 1.0), constants)
    except ValueError as exc:
        raise ConfigError(str(exc)) from None


def cmd_shift1d(config, constants) -> ScanTable:
    _require(config, "radius_nm", "kmax_ev")
    spec = _ring(config, constants)
    m = config["m"]
    try:
        res = lamb_shift_1d(spec, m, config["kmax_ev"])
    except ValueError as exc:
        raise ConfigError(str(exc)) from None
    rep = res.window_report
    table = ScanTable([
        Column("m", "1"), Column("f", "1"), Column("epsilon0", "eV"), Column("chi", "eV"),
        Column("k_max", "eV"), Column("shift", "eV"), Column("shift_over_chi", "chi"),
        Column("term_to_m_minus_1", "eV"), Column("term_to_m_plus_1", "eV"),
        Column("window_status"), Column("kmax_over_epsilon0", "1"),
        Column("sqrt_mc2_eps0_over_kmax", "1"),
    ])
    table.append((m, float(spec.flux), spec.epsilon0, spec.chi, float(config["kmax_ev"]),
                  res.total, res.in_chi_units, res.term("to_m_minus_1"),
                  res.term("to_m_plus_1"), rep.status.value, rep.lower_ratio,
                  rep.upper_ratio))
    return table


def cmd_scan_flux(config, constants) -> ScanTable:
    _require(config, "radius_nm", "kmax_ev")
    spec = _ring(config, constants)
    f_min, f_max, step = config["f_min"], config["f_max"], config["f_step"]
    if not step > 0 or f_max < f_min:
        raise ConfigError("flux grid needs f_step > 0 and f_max >= f_min")
    count = int(math.floor((f_max - f_min) / step + 1e-9)) + 1
    grid = f_min + step * np.arange(count)
    try:
        return flux_scan(spec, config["m_values"], grid, config["kmax_ev"])
    except ValueError as exc:
        raise ConfigError(str(exc)) from None


def cmd_cavity(config, constants) -> ScanTable:
    _require(config, "radius_nm", "amplitude")
    spec = _ring(config, constants)
    sweep = config.get("omega_min_ev") is not None or config.get("omega_max_ev") is not None
    if sweep:
        _require(config, "omega_min_ev", "omega_max_ev", "omega_steps")
        if config["omega_steps"] < 1:
            raise ConfigError("omega_steps must be >= 1")
        omegas = np.linspace(config["omega_min_ev"], config["omega_max_ev"],
                             config["omega_steps"])
    else:
        _require(config, "omega_ev")
        omegas = [config["omega_ev"]]

    table = ScanTable([
        Column("m", "1"), Column("f", "1"), Column("omega", "eV"),
        Column("amplitude", "eV"), Column("photons", "1"), Column("shift", "eV"),
        Column("emission_plus", "eV"), Column("emission_minus", "eV"),
        Column("absorption_plus", "eV"), Column("absorption_minus", "eV"),
        Column("resonance"),
    ])
    m = config["m"]
    for omega in omegas:
        try:
            mode = CavityModeSpec(float(omega), config["amplitude"], config["photons"])
        except ValueError as exc:
            raise ConfigError(str(exc)) from None
        try:
            res = cavity_shift(spec, mode, m)
        except ResonanceError as exc:
            if not sweep:
                raise
            nan = float("nan")
            table.append((m, float(spec.flux), float(omega), mode.amplitude,
                          mode.photon_number, nan, nan, nan, nan, nan, exc.label))
            continue
        terms = dict(res.per_term)
        table.append((m, float(spec.flux), float(omega), mode.amplitude,
                      mode.photon_number, res.total, terms["emission_plus"],
                      terms["emission_minus"], terms.get("absorption_plus", 0.0),
                      terms.get("absorption_minus", 0.0), "none"))
    return table


def _potential(config):
    if config.get("potential_file"):
        try:
            samples = np.loadtxt(config["potential_file"], delimiter=",", comments="#",
                                 ndmin=2, skiprows=_header_rows(config["potential_file"]))
            return TabulatedPotential(samples[:, 0], samples[:, 1])
        except (OSError, ValueError, IndexError) as exc:
            raise ConfigError(f"potential_file: {exc}") from None
    _require(config, "v0_ev_nm2", "radius_nm")
    try:
        return DisplacedParabola(config["v0_ev_nm2"], config["radius_nm"])
    except ValueError as exc:
        raise ConfigError(str(exc)) from None


def _header_rows(path):
    with open(path) as fh:
        first = fh.readline()
    try:
        [float(v) for v in first.split(",")]
        return 0
    except ValueError:
        return 1


def _grid(config, potential, constants):
    lo, hi = config.get("rho_min_nm"), config.get("rho_max_nm")
    try:
        if lo is not None or hi is not None:
            _require(config, "rho_min_nm", "rho_max_nm")
            return RadialGrid(lo, hi, config["grid_points"])
        return default_grid(potential, config["grid_points"], config["mass_ratio"],
                            constants)
    except ValueError as exc:
        raise ConfigError(str(exc)) from None


def cmd_solve_radial(config, constants) -> ScanTable:
    potential = _potential(config)
    grid = _grid(config, potential, constants)
    m, mass = config["m"], config["mass_ratio"]
    try:
        pairs = solve_radial(potential, grid, m, config["n_states"], mass, constants)
    except NumericalError:
        raise
    except ValueError as exc:
        raise ConfigError(str(exc)) from None
    ref = None
    if isinstance(potential, DisplacedParabola):
        ref = harmonic_reference(potential.v0, potential.radius, mass, constants)
    table = ScanTable([
        Column("n", "1"), Column("n_one_based", "1"), Column("m", "1"),
        Column("energy", "eV"), Column("mean_radius", "nm"), Column("norm", "1"),
        Column("harmonic_zero_point", "eV"),
    ])
    for p in pairs:
        table.append((p.n, p.n + 1, p.m, p.energy, mean_radius(p), p.norm(),
                      ref.epsilon_radial if ref else float("nan")))

    dump_dir = config.get("dump_dir")
    if dump_dir:
        os.makedirs(dump_dir, exist_ok=True)
        for p in pairs:
            dump = ScanTable([Column("rho_nm", "nm"), Column("R_value", "nm^-1")],
                             [(float(r), float(v)) for r, v in zip(p.rho, p.values)])
            write_atomic(os.path.join(dump_dir, f"radial_n{p.n}_m{p.m}.csv"),
                         dump.to_csv())
    return table


def cmd_shift2d(config, constants) -> ScanTable:
    _require(config, "kmax_ev")
    potential = _potential(config)
    grid = _grid(config, potential, constants)
    n, m, mass = config["n"], config["m"], config["mass_ratio"]
    try:
        trunc = BasisTruncation(config["nmax"], config.get("epsilon_bar_ev"))
        if n > trunc.n_max:
            raise ValueError(f"n={n} exceeds n_max={trunc.n_max}")
        channels = solve_channels(potential, grid, m, trunc.n_max, mass, constants)
        res = total_shift_2d(channels, (n, m), config["kmax_ev"], trunc,
                             config["flux"], mass, constants)
    except NumericalError:
        raise
    except ValueError as exc:
        raise ConfigError(str(exc)) from None

    table = ScanTable([Column("component"), Column("value", "eV")],
                      meta={k: v for k, v in res.meta.items()})
    for label, value in (("diagonal", res.diagonal), ("nondiagonal", res.nondiagonal),
                         ("total", res.total),
                         ("nondiagonal_unpooled", res.nondiagonal_unpooled),
                         ("effective_energy", res.effective_energy_used)):
        table.append((label, float(value)))

    if config.get("transitions"):
        tr = ScanTable([
            Column("n_final", "1"), Column("m_final", "1"), Column("delta_e", "eV"),
            Column("matrix_element", "nm"), Column("contribution", "eV"),
            Column("unpooled_contribution", "eV"),
        ])
        for t in res.transitions:
            tr.append((t.n, t.m, t.delta_e, t.matrix_element, t.contribution,
                       t.unpooled_contribution))
        write_atomic(config["transitions"], tr.to_csv())
    return table


def cmd_bethe_log(config, constants) -> ScanTable:
    _require(config, "v0_ev_nm2")
    mass = config["mass_ratio"]
    if config.get("log_factor") is not None:
        log = config["log_factor"]
    else:
        _require(config, "kmax_ev", "epsilon_bar_ev")
        if not (config["kmax_ev"] > 0 and config["epsilon_bar_ev"] > 0):
            raise ConfigError("k_max and epsilon_bar must be positive")
        log = math.log(config["kmax_ev"] / config["epsilon_bar_ev"])
    v0 = config["v0_ev_nm2"]
    try:
        prefactor = parabolic_prefactor(v0, mass, constants)
    except ValueError as exc:
        raise ConfigError(str(exc)) from None
    closed = prefactor * log

    lap = quad = float("nan")
    if v0 == 0:
        lap, quad = 0.0, 0.0
    elif config.get("radius_nm") is not None:
        potential = _potential(config)
        grid = _grid(config, potential, constants)
        try:
            pair = solve_radial(potential, grid, config["m"], config["n"] + 1, mass,
                                constants)[config["n"]]
        except NumericalError:
            raise
        except ValueError as exc:
            raise ConfigError(str(exc)) from None
        lap = laplacian_expectation(pair, potential)
        quad = bethe_log_shift(pair, potential, mass_ratio=mass, constants=constants,
                               log_factor=log)
    ratio = closed / quad if quad else float("nan")

    table = ScanTable([
        Column("v0", "eV/nm^2"), Column("log_factor", "1"), Column("prefactor", "eV"),
        Column("closed_form_shift", "eV"), Column("laplacian_expectation", "eV/nm^2"),
        Column("quadrature_shift", "eV"), Column("closed_over_quadrature", "1"),
    ])
    table.append((float(v0), float(log), prefactor, closed, lap, quad, ratio))
    return table


def cmd_presets(config, constants) -> ScanTable:
    table = ScanTable([Column("preset"), Column("key"), Column("value")])
    for name in sorted(PRESETS):
        for key, value in PRESETS[name].items():
            table.append((name, key, value))
    return table


HANDLERS = {
    "shift1d": cmd_shift1d,
    "scan-flux": cmd_scan_flux,
    "cavity": cmd_cavity,
    "solve-radial": cmd_solve_radial,
    "shift2d": cmd_shift2d,
    "bethe-log": cmd_bethe_log,
    "presets": cmd_presets,
}


def run(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        constants = default_constants()
        config = resolve_config(args.command, args)
        table = HANDLERS[args.command](config, constants)
    except ConfigError as exc:
        print(f"ringshift: error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except ResonanceError as exc:
        print(f"ringshift: resonance: {exc}", file=sys.stderr)
        return EXIT_RESONANCE
    except (NumericalError, ArithmeticError) as exc:
        print(f"ringshift: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except (OSError, ValueError) as exc:
        print(f"ringshift: error: {exc}", file=sys.stderr)
        return EXIT_CONFIG

    text = table.dumps(args.format)
    if args.output:
        write_atomic(args.output, text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def main():
    try:
        code = run()
        sys.stdout.flush()
    except BrokenPipeError:
        # reader went away (e.g. piped into head); silence the flush at exit
        os.dup2(os.open(os.devnull, os.O_WRONLY), sys.stdout.fileno())
        code = EXIT_OK
    sys.exit(code)


if __name__ == "__main__":
    main()
