"""Command-line front end.

Every subcommand accepts the beam flags plus ``--beam-config FILE``, a flat
JSON object with the same keys as the long flags (dashes replaced by
underscores).  Values may be unit-suffixed strings (``"729nm"``,
``"10lambda"``); bare numbers are SI.  Flags override the file.  A JSON
result written by this tool can be passed back as ``--beam-config``: its
``config`` block is used.

Exit codes: 0 success, 1 usage or configuration error, 2 numeric-domain
error (for example a Belinfante superkick requested exactly at a pole).
No command uses randomness; there is deliberately no seed variable.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .beams import Amplitude, BeamSpec, normalize_amplitude
from .densities import QUANTITY_UNITS, Quantity, TensorChoice, profile
from .errors import DomainError, PoleError, TwistkickError, UnsupportedConfigurationError
from .mechanics import (
    CA40_ION_MASS,
    CA_4P32_LIFETIME,
    KEROSENE_VISCOSITY,
    CylinderSpec,
    ParticleSpec,
    RotorSpec,
    ScenarioResult,
    cylinder_angular_acceleration,
    cylinder_moment_of_inertia,
    cylinder_terminal_frequency,
    cylinder_torque,
    longitudinal_force,
    revolution_frequency,
    rotor_angular_acceleration,
    tractor_regions,
)
from .units import AREA, LENGTH, MASS, PLAIN, POWER, TIME, UnitError, parse_quantity

PROFILE_HEADER = ["rho_m", "value_canonical", "value_belinfante", "units"]

PAPER_DEFAULTS = {
    "wavelength": "729nm",
    "theta": 0.1,
    "mgamma": 2,
    "helicity": 1,
    "sigma": None,
    "w0": "10lambda",
    "power": "4mW",
    "a0": None,
}

# Paper values and the +-10% band used by ``paper-table``.
PAPER_TARGETS = {
    ("alpha", TensorChoice.CANONICAL): 5.5e6,
    ("alpha", TensorChoice.BELINFANTE): 2.3e6,
    ("f", TensorChoice.CANONICAL): 0.55,
    ("f", TensorChoice.BELINFANTE): 0.23,
}
PAPER_TOLERANCE = 0.10


class ConfigError(TwistkickError, ValueError):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def fmt(value: float) -> str:
    """17 significant digits, scientific notation; round-trips exactly."""
    return f"{value:.16e}"


# ---------------------------------------------------------------- parsing

def _beam_parent() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    g = p.add_argument_group("beam")
    g.add_argument("--beam-config", metavar="FILE", help="flat JSON config (or a previous JSON result)")
    g.add_argument("--wavelength", help="e.g. 729nm (default 729nm)")
    g.add_argument("--theta", help="pitch angle in rad (default 0.1)")
    g.add_argument("--mgamma", help="total angular momentum per photon (default 2)")
    g.add_argument("--helicity", "--Lambda", dest="helicity", help="+1 or -1 (default 1)")
    g.add_argument("--sigma", help="paraxial spin projection sigma_z (default: helicity)")
    g.add_argument("--w0", help="Gaussian envelope width, e.g. 10lambda, or 'none' (default 10lambda)")
    g.add_argument("--power", help="beam power, e.g. 4mW (default 4mW)")
    g.add_argument("--a0", help="explicit vector-potential amplitude in V*s/m (skips power normalisation)")
    o = p.add_argument_group("output")
    o.add_argument("--out", metavar="FILE", help="write to FILE instead of stdout")
    o.add_argument("--format", choices=["csv", "json"])
    o.add_argument("--choice", choices=["canonical", "belinfante", "both"])
    return p


def _grid_parent() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    g = p.add_argument_group("radial grid")
    g.add_argument("--rho-min", help="default 0 (or a small positive radius where rho>0 is required)")
    g.add_argument("--rho-max", help="default 4*w0, or 20um for a pure Bessel beam")
    g.add_argument("--n-points", help="default 2000")
    return p


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="twistkick", description="Canonical vs Belinfante densities and forces of twisted light.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    beam, grid = _beam_parent(), _grid_parent()

    p = sub.add_parser("profile", parents=[beam, grid], help="radial density profile")
    p.add_argument("--quantity", choices=[q.value for q in Quantity])
    p.add_argument("--slowly-varying-envelope", action="store_const", const=True, default=None,
                   help="do not differentiate the Gaussian in the Belinfante J_z term")

    p = sub.add_parser("paper-table", parents=[beam], help="cylinder numbers compared with the published values")
    _cylinder_args(p)

    p = sub.add_parser("cylinder", parents=[beam], help="hollow-cylinder torque, acceleration and terminal rotation")
    _cylinder_args(p)

    p = sub.add_parser("rotor", parents=[beam, grid], help="two-ion rotor angular acceleration")
    p.add_argument("--radius", help="single arm radius (default 1um); ignored when --rho-max is given")
    p.add_argument("--lifetime", help="excited-state lifetime (default 6.924ns)")
    p.add_argument("--ion-mass", help="ion mass, e.g. 39.9625909u (default 40Ca+)")

    p = sub.add_parser("offaxis", parents=[beam, grid], help="revolution rate of an off-axis particle")
    p.add_argument("--calibration", help="rad/s per kg/(m^2*s)")
    p.add_argument("--drag-coefficient", help="linear drag coefficient in N*s/m")
    p.add_argument("--cross-section", help="particle cross section (default 1um2)")

    p = sub.add_parser("pressure", parents=[beam, grid], help="longitudinal radiation force on an absorbing particle")
    p.add_argument("--cross-section", help="particle cross section (default 1um2)")

    p = sub.add_parser("tractor", parents=[beam], help="radii where the longitudinal force is negative")
    p.add_argument("--rho-max", help="scan limit (default 20um)")
    p.add_argument("--n-scan", help="scan points, at least 1000 (default 4000)")
    p.add_argument("--cross-section", help="particle cross section (default 1um2)")
    return parser


def _cylinder_args(p):
    g = p.add_argument_group("cylinder")
    g.add_argument("--radius", help="mean radius (default 2um)")
    g.add_argument("--thickness", help="wall thickness (default 0.5um)")
    g.add_argument("--length", help="cylinder length (default 2um)")
    g.add_argument("--density", help="mass density in kg/m^3 (default 2000)")
    g.add_argument("--viscosity", help="fluid viscosity in N*s/m^2 (default 1.64e-3, kerosine)")
    g.add_argument("--annular", action="store_const", const=True, default=None,
                   help="integrate the density across the wall instead of the thin-wall form")
    g.add_argument("--full-envelope-derivative", action="store_const", const=True, default=None,
                   help="differentiate the Gaussian envelope in the Belinfante J_z term")


_NON_CONFIG = {"command", "beam_config", "out", "format"}


def _load_config_file(path: str, allowed: set[str]) -> dict:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{path}: line {exc.lineno}, column {exc.colno}: {exc.msg}") from exc
    if isinstance(data, dict) and isinstance(data.get("config"), dict):
        data = data["config"]
    if not isinstance(data, dict):
        raise ConfigError(f"{path}: top level must be a JSON object")
    unknown = sorted(set(data) - allowed)
    if unknown:
        raise ConfigError(f"{path}: unknown key(s) for this command: {', '.join(unknown)}")
    return data


def _merged(args: argparse.Namespace) -> dict:
    cli = {k: v for k, v in vars(args).items() if k not in _NON_CONFIG}
    raw = {}
    if args.beam_config:
        raw.update(_load_config_file(args.beam_config, set(cli)))
    raw.update({k: v for k, v in cli.items() if v is not None})
    return raw


def _get(raw: dict, key: str, default=None):
    value = raw.get(key)
    return default if value is None else value


def _num(raw, key, units, default=None, wavelength=None) -> float | None:
    value = _get(raw, key, default)
    if value is None:
        return None
    try:
        return parse_quantity(value, units, wavelength=wavelength, what=key)
    except UnitError as exc:
        raise ConfigError(f"field '{key}': {exc}") from exc


def _int(raw, key, default) -> int:
    value = _num(raw, key, PLAIN, default)
    if value is None or value != int(value):
        raise ConfigError(f"field '{key}' must be an integer, got {_get(raw, key, default)!r}")
    return int(value)


def _resolve_beam(raw: dict) -> tuple[BeamSpec, dict]:
    wavelength = _num(raw, "wavelength", LENGTH, PAPER_DEFAULTS["wavelength"])
    w0_raw = _get(raw, "w0", PAPER_DEFAULTS["w0"])
    w0 = None if str(w0_raw).lower() == "none" else _num({"w0": w0_raw}, "w0", LENGTH, wavelength=wavelength)
    sigma = _num(raw, "sigma", PLAIN)
    try:
        spec = BeamSpec(
            wavelength=wavelength,
            pitch_angle=_num(raw, "theta", PLAIN, PAPER_DEFAULTS["theta"]),
            total_am=_int(raw, "mgamma", PAPER_DEFAULTS["mgamma"]),
            helicity=_int(raw, "helicity", PAPER_DEFAULTS["helicity"]),
            envelope_width=w0,
            power=_num(raw, "power", POWER, PAPER_DEFAULTS["power"]),
            spin=sigma,
        )
    except DomainError as exc:
        raise ConfigError(f"invalid beam: {exc}") from exc
    resolved = {
        "wavelength": spec.wavelength,
        "theta": spec.pitch_angle,
        "mgamma": spec.total_am,
        "helicity": spec.helicity,
        "sigma": spec.spin,
        "w0": "none" if w0 is None else w0,
        "power": spec.power,
    }
    return spec, resolved


def _resolve_amplitude(raw: dict, spec: BeamSpec, resolved: dict) -> Amplitude:
    a0 = _num(raw, "a0", PLAIN)
    if a0 is not None:
        try:
            amp = Amplitude(a0)
        except DomainError as exc:
            raise ConfigError(f"field 'a0': {exc}") from exc
        resolved["a0"] = a0
        return amp
    if spec.envelope_width is None:
        raise ConfigError("a pure Bessel beam (w0 = none) needs an explicit --a0")
    return normalize_amplitude(spec)


def _choices(raw: dict, default: str = "both") -> list[TensorChoice]:
    choice = _get(raw, "choice", default)
    if choice == "both":
        return [TensorChoice.CANONICAL, TensorChoice.BELINFANTE]
    try:
        return [TensorChoice(choice)]
    except ValueError as exc:
        raise ConfigError(f"field 'choice': unknown value {choice!r}") from exc


def _grid(raw: dict, spec: BeamSpec, resolved: dict, positive: bool = False) -> np.ndarray:
    default_max = 4 * spec.envelope_width if spec.envelope_width else 20e-6
    rho_min = _num(raw, "rho_min", LENGTH, 0.0, spec.wavelength)
    rho_max = _num(raw, "rho_max", LENGTH, default_max, spec.wavelength)
    n_points = _int(raw, "n_points", 2000)
    if n_points < 2:
        raise ConfigError(f"field 'n_points': need at least 2 grid points, got {n_points}")
    if not 0 <= rho_min < rho_max:
        raise ConfigError(f"fields 'rho_min'/'rho_max': need 0 <= rho_min < rho_max, got {rho_min}, {rho_max}")
    grid = np.linspace(rho_min, rho_max, n_points)
    if positive and grid[0] == 0.0:
        # quantities with a 1/rho factor start one step off the axis
        grid = np.linspace(rho_min, rho_max, n_points + 1)[1:]
    resolved.update(rho_min=rho_min, rho_max=rho_max, n_points=n_points)
    return grid


# ---------------------------------------------------------------- output

def _emit(args, command: str, resolved: dict, header: list[str], rows: list[list], extra: dict | None = None,
          empty_message: str | None = None):
    fmt_name = args.format or "csv"
    if fmt_name == "json":
        payload = {"command": command, "config": resolved, "columns": header, "rows": rows}
        if extra:
            payload.update(extra)
        text = json.dumps(payload, indent=2, allow_nan=False) + "\n"
    else:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow([fmt(v) if isinstance(v, float) else ("" if v is None else v) for v in row])
        if not rows and empty_message:
            buf.write(empty_message + "\n")
        text = buf.getvalue()
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)


def _finite(value: float):
    return value if math.isfinite(value) else None


# ---------------------------------------------------------------- commands

def cmd_profile(args, raw):
    spec, resolved = _resolve_beam(raw)
    quantity = Quantity(_get(raw, "quantity", "jz"))
    slowly = bool(_get(raw, "slowly_varying_envelope", False))
    if quantity in (Quantity.PZ, Quantity.PPHI, Quantity.SZ, Quantity.PHOTON_NUMBER) and not spec.is_circular:
        raise ConfigError(f"quantity '{quantity.value}' requires sigma = helicity")
    amp = _resolve_amplitude(raw, spec, resolved)
    grid = _grid(raw, spec, resolved)
    choices = _choices(raw)
    resolved.update(quantity=quantity.value, choice=_get(raw, "choice", "both"), slowly_varying_envelope=slowly)
    columns = {}
    for choice in choices:
        prof = profile(spec, amp, quantity, choice, grid[0], grid[-1], len(grid), slowly_varying_envelope=slowly)
        columns[choice] = prof.values
    units = QUANTITY_UNITS[quantity]
    rows = []
    for i, r in enumerate(grid):
        can = columns.get(TensorChoice.CANONICAL)
        bel = columns.get(TensorChoice.BELINFANTE)
        rows.append([
            float(r),
            None if can is None else float(can[i]),
            None if bel is None else float(bel[i]),
            units,
        ])
    extra = {
        "metadata": {
            "envelope_applied": spec.envelope_width is not None and quantity is not Quantity.PZ,
            "amplitude_a0": amp.a0,
        }
    }
    _emit(args, "profile", resolved, PROFILE_HEADER, rows, extra)


def _cylinder_setup(raw, spec):
    wl = spec.wavelength
    try:
        cyl = CylinderSpec(
            mean_radius=_num(raw, "radius", LENGTH, "2um", wl),
            wall_thickness=_num(raw, "thickness", LENGTH, "0.5um", wl),
            length=_num(raw, "length", LENGTH, "2um", wl),
            mass_density=_num(raw, "density", PLAIN, 2000.0),
        )
    except DomainError as exc:
        raise ConfigError(f"invalid cylinder: {exc}") from exc
    viscosity = _num(raw, "viscosity", PLAIN, KEROSENE_VISCOSITY)
    if not viscosity > 0:
        raise ConfigError("field 'viscosity' must be positive")
    opts = {
        "annular": bool(_get(raw, "annular", False)),
        "slowly_varying_envelope": not bool(_get(raw, "full_envelope_derivative", False)),
    }
    cyl_cfg = {
        "radius": cyl.mean_radius,
        "thickness": cyl.wall_thickness,
        "length": cyl.length,
        "density": cyl.mass_density,
        "viscosity": viscosity,
        "annular": opts["annular"],
        "full_envelope_derivative": not opts["slowly_varying_envelope"],
    }
    return cyl, viscosity, opts, cyl_cfg


def cmd_paper_table(args, raw):
    spec, resolved = _resolve_beam(raw)
    amp = _resolve_amplitude(raw, spec, resolved)
    cyl, viscosity, opts, cyl_cfg = _cylinder_setup(raw, spec)
    resolved.update(cyl_cfg)
    resolved["choice"] = _get(raw, "choice", "both")
    rows = []
    for choice in _choices(raw):
        alpha = cylinder_angular_acceleration(spec, amp, cyl, choice, **opts)
        freq = cylinder_terminal_frequency(spec, amp, cyl, viscosity, choice, **opts)
        for name, value, units in (("alpha", alpha, "rad/s^2"), ("f", freq, "Hz")):
            target = PAPER_TARGETS[(name, choice)]
            rel = value / target - 1.0
            status = "PASS" if abs(rel) <= PAPER_TOLERANCE else "FAIL"
            rows.append([name, choice.value, float(value), units, target, float(rel), status])
    header = ["quantity", "choice", "value", "units", "paper_value", "rel_error", "status"]
    _emit(args, "paper-table", resolved, header, rows)


def cmd_cylinder(args, raw):
    spec, resolved = _resolve_beam(raw)
    amp = _resolve_amplitude(raw, spec, resolved)
    cyl, viscosity, opts, cyl_cfg = _cylinder_setup(raw, spec)
    resolved.update(cyl_cfg)
    resolved["choice"] = _get(raw, "choice", "both")
    results = [ScenarioResult("moment_of_inertia", cylinder_moment_of_inertia(cyl), "kg*m^2")]
    for choice in _choices(raw):
        results += [
            ScenarioResult("torque", cylinder_torque(spec, amp, cyl, choice, **opts), "N*m", choice),
            ScenarioResult("angular_acceleration", cylinder_angular_acceleration(spec, amp, cyl, choice, **opts),
                           "rad/s^2", choice),
            ScenarioResult("terminal_frequency",
                           cylinder_terminal_frequency(spec, amp, cyl, viscosity, choice, **opts), "Hz", choice),
        ]
    _emit_results(args, "cylinder", resolved, results)


def _emit_results(args, command, resolved, results):
    header = ["name", "choice", "value", "units"]
    rows = [[r.name, r.tensor_choice.value if r.tensor_choice else "", float(r.value), r.units] for r in results]
    _emit(args, command, resolved, header, rows)


def cmd_rotor(args, raw):
    spec, resolved = _resolve_beam(raw)
    lifetime = _num(raw, "lifetime", TIME, CA_4P32_LIFETIME)
    ion_mass = _num(raw, "ion_mass", MASS, CA40_ION_MASS)
    resolved.update(lifetime=lifetime, ion_mass=ion_mass, choice=_get(raw, "choice", "both"))
    choices = _choices(raw)
    if _get(raw, "rho_max") is None:
        radius = _num(raw, "radius", LENGTH, "1um", spec.wavelength)
        try:
            rotor = RotorSpec(arm_radius=radius, ion_mass=ion_mass, excited_lifetime=lifetime)
        except DomainError as exc:
            raise ConfigError(f"invalid rotor: {exc}") from exc
        resolved["radius"] = radius
        results = [ScenarioResult("angular_acceleration", rotor_angular_acceleration(spec, rotor, c), "rad/s^2", c)
                   for c in choices]
        _emit_results(args, "rotor", resolved, results)
        return
    if not (ion_mass > 0 and lifetime > 0):
        raise ConfigError("ion mass and lifetime must be positive")
    grid = _grid(raw, spec, resolved, positive=True)
    rows = []
    for r in grid:
        row = [float(r)]
        for choice in (TensorChoice.CANONICAL, TensorChoice.BELINFANTE):
            if choice not in choices:
                row.append(None)
                continue
            try:
                rotor = RotorSpec(arm_radius=float(r), ion_mass=ion_mass, excited_lifetime=lifetime)
                row.append(float(rotor_angular_acceleration(spec, rotor, choice)))
            except PoleError:
                row.append(None)  # gap at a pole of the Belinfante ratio
        row.append("rad/s^2")
        rows.append(row)
    _emit(args, "rotor", resolved, PROFILE_HEADER, rows)


def _particle(raw, spec, resolved, drag=False):
    cross = _num(raw, "cross_section", AREA, "1um2")
    drag_coefficient = _num(raw, "drag_coefficient", PLAIN) if drag else None
    try:
        particle = ParticleSpec(cross_section=cross, drag_coefficient=drag_coefficient)
    except DomainError as exc:
        raise ConfigError(f"invalid particle: {exc}") from exc
    resolved["cross_section"] = cross
    if drag_coefficient is not None:
        resolved["drag_coefficient"] = drag_coefficient
    return particle


def cmd_offaxis(args, raw):
    spec, resolved = _resolve_beam(raw)
    amp = _resolve_amplitude(raw, spec, resolved)
    particle = _particle(raw, spec, resolved, drag=True)
    calibration = _num(raw, "calibration", PLAIN)
    if calibration is None and particle.drag_coefficient is None:
        raise ConfigError("offaxis needs --calibration or --drag-coefficient")
    if calibration is not None:
        if not calibration > 0:
            raise ConfigError("field 'calibration' must be positive")
        resolved["calibration"] = calibration
    grid = _grid(raw, spec, resolved, positive=True)
    resolved["choice"] = _get(raw, "choice", "both")
    choices = _choices(raw)
    columns = {c: revolution_frequency(spec, amp, particle, grid, c, calibration=calibration) for c in choices}
    rows = [[float(r)]
            + [float(columns[c][i]) if c in columns else None for c in (TensorChoice.CANONICAL, TensorChoice.BELINFANTE)]
            + ["rad/s"] for i, r in enumerate(grid)]
    _emit(args, "offaxis", resolved, PROFILE_HEADER, rows)


def cmd_pressure(args, raw):
    spec, resolved = _resolve_beam(raw)
    if not spec.is_circular:
        raise ConfigError("radiation pressure of the exact beam requires sigma = helicity")
    amp = _resolve_amplitude(raw, spec, resolved)
    particle = _particle(raw, spec, resolved)
    grid = _grid(raw, spec, resolved)
    resolved["choice"] = _get(raw, "choice", "both")
    choices = _choices(raw)
    columns = {c: longitudinal_force(spec, amp, particle, grid, c) for c in choices}
    rows = [[float(r)]
            + [float(columns[c][i]) if c in columns else None for c in (TensorChoice.CANONICAL, TensorChoice.BELINFANTE)]
            + ["N"] for i, r in enumerate(grid)]
    _emit(args, "pressure", resolved, PROFILE_HEADER, rows, {"metadata": {"envelope_applied": False, "amplitude_a0": amp.a0}})


def cmd_tractor(args, raw):
    spec, resolved = _resolve_beam(raw)
    if not spec.is_circular:
        raise ConfigError("radiation pressure of the exact beam requires sigma = helicity")
    rho_max = _num(raw, "rho_max", LENGTH, "20um", spec.wavelength)
    if not rho_max > 0:
        raise ConfigError(f"field 'rho_max' must be positive, got {rho_max}")
    n_scan = _int(raw, "n_scan", 4000)
    if n_scan < 1000:
        raise ConfigError(f"field 'n_scan' must be at least 1000, got {n_scan}")
    amp = _resolve_amplitude(raw, spec, resolved)
    particle = _particle(raw, spec, resolved)
    resolved.update(rho_max=rho_max, n_scan=n_scan, choice=_get(raw, "choice", "belinfante"))
    rows = []
    for choice in _choices(raw, default="belinfante"):
        for lo, hi in tractor_regions(spec, amp, rho_max, n_scan, choice=choice):
            mid = 0.5 * (lo + hi)
            rows.append([choice.value, lo, hi, mid, float(longitudinal_force(spec, amp, particle, mid, choice))])
    header = ["choice", "rho_lo_m", "rho_hi_m", "rho_mid_m", "force_mid_N"]
    _emit(args, "tractor", resolved, header, rows, empty_message="no negative-force regions")


COMMANDS = {
    "profile": cmd_profile,
    "paper-table": cmd_paper_table,
    "cylinder": cmd_cylinder,
    "rotor": cmd_rotor,
    "offaxis": cmd_offaxis,
    "pressure": cmd_pressure,
    "tractor": cmd_tractor,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        raw = _merged(args)
        COMMANDS[args.command](args, raw)
    except (ConfigError, UnitError, UnsupportedConfigurationError) as exc:
        print(f"twistkick {args.command}: error: {exc}", file=sys.stderr)
        return 1
    except DomainError as exc:
        print(f"twistkick {args.command}: numeric domain error: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
