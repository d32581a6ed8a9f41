"""Command-line front end: scenario files, sweeps, CSV emission.

Subcommands
-----------
greens        reflector Green-tensor traces along the sweep grid
cp-potential  single-atom potential decomposition along the grid
plate-force   slab force decomposition along the grid
fig3          built-in canonical slab experiment with self-checks

Scenario files are JSON (schema below, versioned via "schema_version").
Output is CSV with RFC-4180-style quoting; every file starts with a
comment block ('#' lines) recording the scenario hash, unit system,
tolerances and, for force output, the closed-form trace constant, so
each artifact carries its own provenance.  Identical scenario files
produce byte-identical output.

Exit codes: 0 ok, 2 configuration error, 3 numerical failure or failed
built-in assertion.

Scenario schema (all frequencies rad/s, lengths m, densities 1/m^3)::

    {
      "schema_version": 1,
      "atom": { ...inline atom model... } | {"file": "atom.json"},
      "reflector": {
        "model": "perfect-electric-mirror" | "perfect-magnetic-mirror"
                 | "drude-lorentz",
        "epsilon_oscillators": [
          {"strength": 1.0, "resonance_rad_s": 1e16,
           "damping_rad_s": 1e14, "sign": "absorbing" | "amplifying"},
          ...],
        "mu_oscillators": [ ... ]
      },
      "sweep": {"z_min_m": 1e-8, "z_max_m": 1e-6, "points": 50,
                "spacing": "linear" | "log"},
      "slab": {"thickness_m": 1e-7, "number_density_m3": 1e20},
      "units": "si" | "reduced",
      "tolerances": {"relative": 1e-9, "sommerfeld_relative": 1e-7,
                     "max_evaluations": 100000}
    }

The atom model schema is the one documented at
:func:`planarcp.materials.atom_model_from_dict`.

Reduced units (selected with "units": "reduced" or --units reduced) use
the atom's first transition, w0 = |omega_nk|, d0^2 = dipole_sq:

    length     zt = 2 w0 z / c
    potential  U0 = mu0 w0^2 d0^2 / (24 pi)
    force      F0 = mu0 eta w0^3 d0^2 / (12 pi c)
    force/d    F0 * 2 w0 / c
    trace_e    c / w0          trace_m    (c / w0)^3

so that the reduced force is -dU~/dz~ of the reduced potential.
"""

from __future__ import annotations

import argparse
import csv
import hashlib
import io
import json
import os
import sys
from dataclasses import dataclass

import numpy as np
from scipy.constants import c as C_LIGHT
from scipy.constants import mu_0

from .forces import (
    PLATE_FORCE_TRACE_CONSTANT,
    SlabScenario,
    force_decomposition,
    mirror_force_bracket,
)
from .greens import PlanarGeometry, halfspace_green_traces
from .materials import (
    LorentzOscillator,
    MaterialResponse,
    atom_model_from_dict,
    load_atom_model,
)
from .potentials import total_potential
from .quadrature import QuadratureConvergenceError

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_NUMERICAL = 3

SCHEMA_VERSION = 1

_DEFAULT_TOLERANCES = {
    "relative": 1e-9,
    "sommerfeld_relative": 1e-7,
    "max_evaluations": 100_000,
}


class ScenarioError(ValueError):
    """Scenario file is missing, malformed, or inconsistent."""


@dataclass(frozen=True)
class Scenario:
    """Validated scenario: everything a subcommand needs."""

    atom: AtomModel
    reflector: MaterialResponse
    sweep: tuple[float, ...]
    slab_thickness: float | None
    slab_density: float | None
    units: str
    tolerances: dict
    digest: str


def _require(cfg, key, context):
    try:
        return cfg[key]
    except (KeyError, TypeError):
        raise ScenarioError(f"{context}: missing required key {key!r}")


def _parse_oscillators(entries, context):
    out = []
    for i, e in enumerate(entries):
        sign = e.get("sign", "absorbing")
        if sign not in ("absorbing", "amplifying"):
            raise ScenarioError(
                f"{context}[{i}]: sign must be 'absorbing' or 'amplifying'"
            )
        try:
            out.append(LorentzOscillator(
                strength=float(_require(e, "strength", f"{context}[{i}]")),
                resonance=float(
                    _require(e, "resonance_rad_s", f"{context}[{i}]")),
                damping=float(
                    _require(e, "damping_rad_s", f"{context}[{i}]")),
                amplifying=(sign == "amplifying"),
            ))
        except ValueError as exc:
            raise ScenarioError(f"{context}[{i}]: {exc}") from exc
    return tuple(out)


def _parse_reflector(cfg):
    model = _require(cfg, "model", "reflector")
    try:
        return MaterialResponse(
            model=model,
            eps_oscillators=_parse_oscillators(
                cfg.get("epsilon_oscillators", ()),
                "reflector.epsilon_oscillators"),
            mu_oscillators=_parse_oscillators(
                cfg.get("mu_oscillators", ()),
                "reflector.mu_oscillators"),
        )
    except ValueError as exc:
        raise ScenarioError(f"reflector: {exc}") from exc


def _parse_sweep(cfg):
    z_min = float(_require(cfg, "z_min_m", "sweep"))
    z_max = float(_require(cfg, "z_max_m", "sweep"))
    points = int(_require(cfg, "points", "sweep"))
    spacing = cfg.get("spacing", "linear")
    if not (0.0 < z_min < z_max):
        raise ScenarioError(
            f"sweep: need 0 < z_min < z_max, got {z_min}, {z_max}")
    if points < 2:
        raise ScenarioError(f"sweep: points must be >= 2, got {points}")
    if spacing == "linear":
        grid = np.linspace(z_min, z_max, points)
    elif spacing == "log":
        grid = np.geomspace(z_min, z_max, points)
    else:
        raise ScenarioError(
            f"sweep: spacing must be 'linear' or 'log', got {spacing!r}")
    return tuple(float(z) for z in grid)


def load_scenario(path, tol_override=None, units_override=None):
    """Load and validate a scenario file."""
    try:
        with open(path, "r", encoding="utf-8") as fh:
            raw = fh.read()
        cfg = json.loads(raw)
    except OSError as exc:
        raise ScenarioError(f"cannot read scenario file: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ScenarioError(f"scenario is not valid JSON: {exc}") from exc

    version = cfg.get("schema_version")
    if version != SCHEMA_VERSION:
        raise ScenarioError(
            f"unsupported schema_version {version!r}; this build reads "
            f"version {SCHEMA_VERSION}")

    atom_cfg = _require(cfg, "atom", "scenario")
    try:
        if isinstance(atom_cfg, dict) and "file" in atom_cfg:
            base = os.path.dirname(os.path.abspath(path))
            atom = load_atom_model(os.path.join(base, atom_cfg["file"]))
        else:
            atom = atom_model_from_dict(atom_cfg)
    except (OSError, ValueError) as exc:
        raise ScenarioError(f"atom: {exc}") from exc

    reflector = _parse_reflector(_require(cfg, "reflector", "scenario"))
    sweep = _parse_sweep(_require(cfg, "sweep", "scenario"))

    slab_thickness = slab_density = None
    if "slab" in cfg:
        slab_thickness = float(_require(cfg["slab"], "thickness_m", "slab"))
        slab_density = float(
            _require(cfg["slab"], "number_density_m3", "slab"))
        if slab_thickness <= 0.0 or slab_density <= 0.0:
            raise ScenarioError("slab: thickness and density must be > 0")

    units = units_override or cfg.get("units", "si")
    if units not in ("si", "reduced"):
        raise ScenarioError(f"units must be 'si' or 'reduced', got {units!r}")

    tolerances = dict(_DEFAULT_TOLERANCES)
    tolerances.update(cfg.get("tolerances", {}))
    if tol_override is not None:
        tolerances["relative"] = float(tol_override)

    digest = hashlib.sha256(
        json.dumps(cfg, sort_keys=True, separators=(",", ":")).encode()
    ).hexdigest()[:16]

    return Scenario(atom=atom, reflector=reflector, sweep=sweep,
                    slab_thickness=slab_thickness,
                    slab_density=slab_density, units=units,
                    tolerances=tolerances, digest=digest)


# --------------------------------------------------------------------------
# unit handling


@dataclass(frozen=True)
class _Units:
    """Conversion factors from SI to the output unit system."""

    name: str
    length: float      # multiply z [m] by this
    potential: float   # multiply U [J]
    force: float       # multiply f [N/m^2]
    per_thickness: float
    trace_e: float
    trace_m: float


def _make_units(scenario):
    if scenario.units == "si":
        return _Units("si", 1.0, 1.0, 1.0, 1.0, 1.0, 1.0)
    t = scenario.atom.transitions[0]
    w0 = abs(t.omega_nk)
    d0sq = t.dipole_sq
    if d0sq == 0.0:
        raise ScenarioError(
            "reduced units need a nonzero dipole_sq on the atom's first "
            "transition")
    u0 = mu_0 * w0**2 * d0sq / (24.0 * np.pi)
    if scenario.slab_density is not None:
        f0 = mu_0 * scenario.slab_density * w0**3 * d0sq \
            / (12.0 * np.pi * C_LIGHT)
    else:
        f0 = float("nan")  # force columns unavailable without a slab
    return _Units(
        name="reduced",
        length=2.0 * w0 / C_LIGHT,
        potential=1.0 / u0,
        force=1.0 / f0,
        per_thickness=C_LIGHT / (2.0 * w0 * f0),
        trace_e=C_LIGHT / w0,
        trace_m=(C_LIGHT / w0) ** 3,
    )


# --------------------------------------------------------------------------
# CSV emission


def _write_csv(out_path, comments, header, rows):
    buf = io.StringIO()
    for line in comments:
        buf.write(f"# {line}\n")
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([repr(float(x)) for x in row])
    text = buf.getvalue()
    if out_path is None:
        sys.stdout.write(text)
    else:
        with open(out_path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)


def _provenance(scenario, command):
    tol = scenario.tolerances
    return [
        f"planarcp {command}",
        f"schema_version = {SCHEMA_VERSION}",
        f"scenario_sha256 = {scenario.digest}",
        f"units = {scenario.units}",
        f"relative_tolerance = {tol['relative']!r}",
        f"sommerfeld_relative_tolerance = {tol['sommerfeld_relative']!r}",
        f"max_evaluations = {tol['max_evaluations']}",
    ]


# --------------------------------------------------------------------------
# subcommands


def cmd_greens(scenario, out_path):
    """Traces at the reference real frequency and on the imaginary axis."""
    units = _make_units(scenario)
    w0 = abs(scenario.atom.transitions[0].omega_nk)
    tol = scenario.tolerances
    rows = []
    for z in scenario.sweep:
        geo = PlanarGeometry(scenario.reflector, z)
        tr_w = halfspace_green_traces(
            geo, w0, rel_tol=tol["sommerfeld_relative"],
            max_evaluations=tol["max_evaluations"])
        tr_ix = halfspace_green_traces(
            geo, 1j * w0, rel_tol=tol["sommerfeld_relative"],
            max_evaluations=tol["max_evaluations"])
        rows.append([
            z * units.length,
            2.0 * w0 * z / C_LIGHT,
            np.real(tr_w.trace_e) * units.trace_e,
            np.imag(tr_w.trace_e) * units.trace_e,
            np.real(tr_ix.trace_e) * units.trace_e,
            np.real(tr_ix.trace_m) * units.trace_m,
            (tr_w.abs_error + tr_ix.abs_error) * units.trace_e,
        ])
    comments = _provenance(scenario, "greens") + [
        f"reference_frequency_rad_s = {w0!r}",
        "imaginary-axis columns evaluated at xi = reference frequency",
    ]
    header = ["z", "z_tilde", "re_trace_e", "im_trace_e",
              "trace_e_imag_axis", "trace_m_imag_axis", "error_estimate"]
    _write_csv(out_path, comments, header, rows)


def cmd_cp_potential(scenario, out_path):
    """Single-atom potential decomposition along the sweep."""
    units = _make_units(scenario)
    tol = scenario.tolerances
    rows = []
    for z in scenario.sweep:
        geo = PlanarGeometry(scenario.reflector, z)
        res = total_potential(scenario.atom, geo,
                              rel_tol=tol["relative"],
                              max_evaluations=tol["max_evaluations"])
        rows.append([
            z * units.length,
            res.u_nonresonant * units.potential,
            res.u_resonant * units.potential,
            res.u_total * units.potential,
            res.quadrature_error * units.potential,
        ])
    header = ["z", "u_nonresonant", "u_resonant", "u_total",
              "quadrature_error"]
    _write_csv(out_path, _provenance(scenario, "cp-potential"),
               header, rows)


def cmd_plate_force(scenario, out_path):
    """Slab force decomposition along the sweep grid."""
    if scenario.slab_thickness is None:
        raise ScenarioError("plate-force needs a 'slab' section")
    units = _make_units(scenario)
    tol = scenario.tolerances
    base = SlabScenario(
        z=scenario.sweep[0], d=scenario.slab_thickness,
        eta=scenario.slab_density, atom=scenario.atom,
        geometry=PlanarGeometry(scenario.reflector, scenario.sweep[0]))
    results = force_decomposition(base, scenario.sweep,
                                  rel_tol=tol["relative"],
                                  max_evaluations=tol["max_evaluations"])
    rows = []
    for z, r in zip(scenario.sweep, results):
        rows.append([
            z * units.length,
            r.f_resonant * units.force,
            r.f_nonresonant * units.force,
            r.f_total * units.force,
            r.per_thickness * units.per_thickness,
            r.quadrature_error * units.force,
        ])
    comments = _provenance(scenario, "plate-force") + [
        f"closed_form_constant = {PLATE_FORCE_TRACE_CONSTANT!r}",
        f"slab_thickness_m = {scenario.slab_thickness!r}",
        f"slab_density_m3 = {scenario.slab_density!r}",
    ]
    header = ["z", "f_resonant", "f_nonresonant", "f_total",
              "per_thickness", "quadrature_error"]
    _write_csv(out_path, comments, header, rows)


# --------------------------------------------------------------------------
# canonical slab experiment

_FIG3_OMEGA = 2.5e15       # rad/s
_FIG3_DIPOLE_SQ = 7.1882e-59  # C^2 m^2, of order (e a_0)^2
_FIG3_DENSITY = 1e20       # 1/m^3
_FIG3_THICKNESS_FACTORS = (0.1, 1.0, 5.0)  # d in units of c / w0
_FIG3_ZT_MIN, _FIG3_ZT_MAX, _FIG3_ZT_STEP = 0.05, 30.0, 0.025


def _fig3_curves():
    """Reduced per-thickness resonant force curves and the single-atom
    force-density curve on the canonical grid.

    In reduced units the slab curve is 2 [W(zt + dt) - W(zt)] / dt with
    W(zt) = bracket(zt)/zt^3, dt = 2 w0 d / c, and the single-atom curve
    is its dt -> 0 limit 2 W'(zt).
    """
    n = int(round((_FIG3_ZT_MAX - _FIG3_ZT_MIN) / _FIG3_ZT_STEP)) + 1
    zt = _FIG3_ZT_MIN + _FIG3_ZT_STEP * np.arange(n)

    def w_of(x):
        return mirror_force_bracket(x) / x**3

    curves = {}
    for fac in _FIG3_THICKNESS_FACTORS:
        dt = 2.0 * fac
        curves[fac] = 2.0 * (w_of(zt + dt) - w_of(zt)) / dt
    single = 2.0 * ((3.0 * zt**2 - 6.0) * np.cos(zt)
                    + (zt**3 - 6.0 * zt) * np.sin(zt)) / zt**4
    return zt, curves, single


def _sign_change_positions(zt, values, lo, hi):
    mask = (zt >= lo) & (zt <= hi)
    z = zt[mask]
    v = values[mask]
    pos = []
    for i in range(len(v) - 1):
        if v[i] == 0.0:
            pos.append(z[i])
        elif v[i] * v[i + 1] < 0.0:
            # linear interpolation of the crossing
            frac = v[i] / (v[i] - v[i + 1])
            pos.append(z[i] + frac * (z[i + 1] - z[i]))
    return pos


def fig3_summary():
    """Run the canonical-experiment checks; returns (lines, all_ok)."""
    zt, curves, _ = _fig3_curves()
    lines = []
    ok = True

    short = zt < 0.5
    for fac in _FIG3_THICKNESS_FACTORS:
        attracted = bool(np.all(curves[fac][short] < 0.0))
        ok &= attracted
        lines.append(
            f"short-range attraction (zt < 0.5), d = {fac} c/w0: "
            f"{'PASS' if attracted else 'FAIL'}")

    for fac in _FIG3_THICKNESS_FACTORS:
        pos = _sign_change_positions(zt, curves[fac], 5.0, 30.0)
        enough = len(pos) >= 6
        ok &= enough
        lines.append(
            f"sign changes on zt in [5, 30], d = {fac} c/w0: {len(pos)} "
            f"{'PASS' if enough else 'FAIL (need >= 6)'}")
        if len(pos) >= 2:
            spacing = pos[-1] - pos[-2]
            within = abs(spacing / np.pi - 1.0) <= 0.05
            ok &= within
            lines.append(
                f"asymptotic zero spacing, d = {fac} c/w0: "
                f"{spacing:.4f} vs pi "
                f"{'PASS' if within else 'FAIL (need pi +- 5%)'}")

    window = zt >= _FIG3_ZT_MAX - 2.0 * np.pi
    amps = [float(np.max(np.abs(curves[fac][window])))
            for fac in _FIG3_THICKNESS_FACTORS]
    decreasing = all(a > b for a, b in zip(amps, amps[1:]))
    ok &= decreasing
    lines.append(
        "oscillation amplitude decreases with thickness: "
        + " > ".join(f"{a:.4g}" for a in amps)
        + f" {'PASS' if decreasing else 'FAIL'}")
    return lines, ok


def cmd_fig3(out_path):
    """Emit the canonical slab curves and check their shape properties."""
    zt, curves, single = _fig3_curves()
    rows = []
    for i in range(len(zt)):
        rows.append([zt[i]]
                    + [curves[fac][i] for fac in _FIG3_THICKNESS_FACTORS]
                    + [single[i]])
    comments = [
        "planarcp fig3",
        f"schema_version = {SCHEMA_VERSION}",
        "canonical scenario: excited two-level purely electric gas, "
        "perfect electric mirror",
        f"omega_rad_s = {_FIG3_OMEGA!r}",
        f"dipole_sq_C2m2 = {_FIG3_DIPOLE_SQ!r}",
        f"number_density_m3 = {_FIG3_DENSITY!r}",
        f"closed_form_constant = {PLATE_FORCE_TRACE_CONSTANT!r}",
        "units: reduced; per-thickness resonant force in "
        "mu0 eta w0^4 d0^2 / (6 pi c^2), lengths in c / (2 w0)",
        "columns d in units of c / w0",
    ]
    header = (["z_tilde"]
              + [f"per_thickness_d_{fac}" for fac in _FIG3_THICKNESS_FACTORS]
              + ["single_atom"])
    _write_csv(out_path, comments, header, rows)
    lines, ok = fig3_summary()
    for line in lines:
        print(line)
    print(f"fig3 summary: {'PASS' if ok else 'FAIL'}")
    return EXIT_OK if ok else EXIT_NUMERICAL


# --------------------------------------------------------------------------
# entry point


def _build_parser():
    parser = argparse.ArgumentParser(
        prog="planarcp",
        description="Casimir-Polder potentials near planar reflectors and "
                    "Casimir forces on dilute slabs",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name, needs_scenario in (("greens", True), ("cp-potential", True),
                                 ("plate-force", True), ("fig3", False)):
        p = sub.add_parser(name)
        if needs_scenario:
            p.add_argument("--scenario", required=True,
                           help="path to the scenario JSON file")
            p.add_argument("--tol", type=float, default=None,
                           help="override the relative tolerance")
            p.add_argument("--units", choices=("si", "reduced"),
                           default=None, help="override the unit system")
        p.add_argument("--out", default=None,
                       help="output CSV path (default: stdout)")
    return parser


def main(argv=None):
    args = _build_parser().parse_args(argv)
    try:
        if args.command == "fig3":
            return cmd_fig3(args.out)
        scenario = load_scenario(args.scenario, tol_override=args.tol,
                                 units_override=args.units)
        if args.command == "greens":
            cmd_greens(scenario, args.out)
        elif args.command == "cp-potential":
            cmd_cp_potential(scenario, args.out)
        elif args.command == "plate-force":
            cmd_plate_force(scenario, args.out)
        return EXIT_OK
    except (ScenarioError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except QuadratureConvergenceError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL


if __name__ == "__main__":
    sys.exit(main())
