"""Batch command-line front end.

Every subcommand reads a flat JSON config (``--config``), lets any key be
overridden by a flag of the same name, validates, runs, and writes tables.

Exit codes: 0 success, 1 verification failure, 2 usage or configuration error.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from pathlib import Path
from typing import Any, Callable

import numpy as np

from . import __version__
from . import checks as chk
from . import field_verify as fv
from . import moment as mm
from . import ring_geometry as rg
from . import spin_dynamics as sd
from . import vortex_core as vc
from .export import Table, dumps, write_outputs

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class ConfigError(ValueError):
    pass


def _bool(v) -> bool:
    if isinstance(v, bool):
        return v
    s = str(v).strip().lower()
    if s in ("1", "true", "yes", "on"):
        return True
    if s in ("0", "false", "no", "off"):
        return False
    raise ValueError(f"not a boolean: {v!r}")


def _int(v) -> int:
    if isinstance(v, bool):
        raise ValueError("expected an integer")
    if isinstance(v, float):
        if not v.is_integer():
            raise ValueError(f"not an integer: {v!r}")
        return int(v)
    return int(str(v))


def _float(v) -> float:
    if isinstance(v, bool):
        raise ValueError("expected a number")
    x = float(v)
    if not math.isfinite(x):
        raise ValueError(f"not a finite number: {v!r}")
    return x


def _optional(conv):
    def inner(v):
        if v is None or (isinstance(v, str) and v.lower() in ("", "none", "null")):
            return None
        return conv(v)

    inner.__name__ = f"optional_{conv.__name__}"
    return inner


def _choice(*options):
    def inner(v):
        if v not in options:
            raise ValueError(f"expected one of {options}, got {v!r}")
        return v

    inner.__name__ = "choice"
    return inner


VORTEX_KEYS = {
    "gamma": (_float, 1.0),
    "nu": (_float, 1.0),
    "omega_cap": (_float, 2 * math.pi),
    "n_offset": (_float, 16.0),
}

RING_KEYS = {
    "a0": (_float, 1.0),
    "b1": (_float, 0.0),
    "omega0": (_float, 1.0),
    "omega1": (_float, 1.0),
    "phi0": (_float, 0.0),
    "phi1": (_float, 0.0),
}

PARAMS: dict[str, dict[str, tuple[Callable, Any]]] = {
    "field": {
        **VORTEX_KEYS,
        "r_min": (_float, 0.0),
        "r_max": (_float, 8.0),
        "r_points": (_int, 161),
        "t_min": (_float, 0.0),
        "t_max": (_float, 3.0),
        "t_points": (_int, 61),
        "kind": (_choice("both", "vorticity", "speed"), "both"),
    },
    "evolve": {
        **VORTEX_KEYS,
        "t0": (_float, 0.0),
        "t1": (_float, 0.37),
        "r_max": (_float, 40.0),
        "modes": (_int, 256),
        "nodes": (_int, 2048),
        "points": (_int, 4001),
    },
    "ring": {
        **RING_KEYS,
        "a0": (_float, 2.0),
        "b1": (_float, 3.0),
        "omega0": (_float, 12.0),
        "count": (_int, 2000),
    },
    "intersections": {
        **RING_KEYS,
        "a0": (_float, 4.0),
        "omega1": (_float, 1.0 / 3.0),
        **{f"other_{k}": (_optional(_float), None) for k in RING_KEYS},
        "tol": (_optional(_float), None),
        "samples": (_int, rg.DEFAULT_SAMPLES),
        "exclude_axis": (_bool, True),
    },
    "spin": {
        "drive": (_choice("constant", "closed_form"), "constant"),
        "theta_x": (_float, 0.0),
        "theta_y": (_float, 0.0),
        "theta_z": (_float, 1.0),
        "omega": (_float, 1.0),
        "hbar": (_float, 1.0),
        "t0": (_float, 0.0),
        "t1": (_optional(_float), None),
        "steps": (_int, 1000),
        "psi_up_re": (_float, 1.0),
        "psi_up_im": (_float, 0.0),
        "psi_down_re": (_float, 0.0),
        "psi_down_im": (_float, 0.0),
    },
    "moment": {
        "preset": (_choice("quoted", "standard_tables"), "quoted"),
        "max_factorial_arg": (_int, mm.MAX_FACTORIAL_ARG),
        "alpha": (_optional(_float), None),
        "mu_b": (_optional(_float), None),
    },
    "verify": {
        "inject_fault": (_optional(_choice(*chk.FAULTS)), None),
    },
}

HELP = {
    "field": "vorticity and speed on an (r, t) grid, plus the core-radius trace",
    "evolve": "spectral evolution of the vorticity profile against the closed form",
    "ring": "sample a helicoidal ring / vortex-ball loop",
    "intersections": "self- or pair-intersections of closed loops",
    "spin": "spinor evolution under a constant or closed-form drive",
    "moment": "continued-fraction magnetic moment with its term ledger",
    "verify": "run every invariant check and report pass/fail as JSON",
}


def resolve_config(command: str, config_path: str | None, overrides: dict) -> dict:
    spec = PARAMS[command]
    raw: dict[str, Any] = {}
    if config_path is not None:
        try:
            loaded = json.loads(Path(config_path).read_text())
        except (OSError, json.JSONDecodeError) as exc:
            raise ConfigError(f"cannot read config {config_path}: {exc}") from exc
        if not isinstance(loaded, dict):
            raise ConfigError("config must be a flat JSON object")
        unknown = sorted(set(loaded) - set(spec))
        if unknown:
            raise ConfigError(f"unknown config keys for {command}: {', '.join(unknown)}")
        raw.update(loaded)
    raw.update(overrides)
    cfg = {}
    for key, (conv, default) in spec.items():
        value = raw.get(key, default)
        try:
            cfg[key] = conv(value)
        except (TypeError, ValueError) as exc:
            raise ConfigError(f"invalid value for {key}: {exc}") from exc
    return cfg


def _meta(command: str, cfg: dict, seed: int | None) -> dict:
    return {
        "tool": "vortexball",
        "version": __version__,
        "command": command,
        "seed": seed,
        "params": cfg,
    }


def _vortex(cfg) -> vc.VortexParams:
    return vc.VortexParams(cfg["gamma"], cfg["nu"], cfg["omega_cap"], cfg["n_offset"])


def _grid(lo, hi, n, name) -> np.ndarray:
    if n < 1:
        raise ConfigError(f"{name}_points must be at least 1")
    if n > 1 and hi <= lo:
        raise ConfigError(f"{name}_max must exceed {name}_min")
    return np.linspace(lo, hi, n)


def cmd_field(cfg):
    p = _vortex(cfg)
    if cfg["r_min"] < 0:
        raise ConfigError("r_min must be nonnegative")
    radii = _grid(cfg["r_min"], cfg["r_max"], cfg["r_points"], "r")
    times = _grid(cfg["t_min"], cfg["t_max"], cfg["t_points"], "t")
    kinds = ["vorticity", "speed"] if cfg["kind"] == "both" else [cfg["kind"]]
    tables = []
    for kind in kinds:
        table = Table(kind, ["r", "t", "value"])
        for t in times:
            prof = vc.sample_radial_field(kind, radii, t, p)
            for r, v in zip(prof.radii, prof.values):
                table.add(float(r), float(t), float(v))
        tables.append(table)
    if "speed" in kinds:
        core = Table("core", ["t", "core_radius", "grid_argmax_radius"])
        for t in times:
            prof = vc.sample_radial_field("speed", radii, t, p)
            core.add(float(t), float(vc.core_radius_at(t, p)), float(radii[np.argmax(prof.values)]))
        tables.append(core)
    summary = {"wall_constant": vc.WALL_CONSTANT, "sigma_sq": p.sigma_sq}
    return tables, summary


def cmd_evolve(cfg):
    p = _vortex(cfg)
    spec = fv.TransformEvolverSpec(r_max=cfg["r_max"], modes=cfg["modes"], nodes=cfg["nodes"])
    if cfg["points"] < 2:
        raise ConfigError("points must be at least 2")
    radii = np.linspace(0.0, spec.r_max, cfg["points"])
    init = vc.sample_radial_field("vorticity", radii, cfg["t0"], p)
    out = fv.spectral_evolve(init, p, cfg["t1"], spec)
    exact = vc.sample_radial_field("vorticity", radii, cfg["t1"], p)
    err = fv.compare_profiles(out, exact)
    table = Table("evolve", ["r", "spectral", "exact", "error"])
    for r, a, b in zip(radii, out.values, exact.values):
        table.add(float(r), float(a), float(b), float(a - b))
    summary = {
        "t0": cfg["t0"],
        "t1": cfg["t1"],
        "sup_error": err.sup,
        "l2_error": err.l2,
        "rel_peak_error": err.rel_peak,
        "circulation_initial": fv.profile_circulation(init),
        "circulation_final": fv.profile_circulation(out),
    }
    return [table], summary


def _ring(cfg, prefix="") -> rg.RingParams:
    vals = {}
    for k in RING_KEYS:
        v = cfg.get(prefix + k)
        vals[k] = cfg[k] if v is None else v
    return rg.RingParams(**vals)


def cmd_ring(cfg):
    p = _ring(cfg)
    samples = rg.sample_loop(p, cfg["count"])
    table = Table("ring", ["t", "x", "y", "z"])
    for t, pt in zip(samples.times, samples.points):
        table.add(float(t), *map(float, pt))
    cls = rg.classify_loop(p)
    summary = {
        "loop_class": cls.tag,
        "n": cls.n,
        "ratio": None if cls.ratio is None else str(cls.ratio),
        "period": rg.loop_period(p),
        "closed": samples.closed,
    }
    return [table], summary


def cmd_intersections(cfg):
    pa = _ring(cfg)
    pair = any(cfg[f"other_{k}"] is not None for k in RING_KEYS)
    kwargs = dict(tol=cfg["tol"], samples=cfg["samples"], exclude_axis=cfg["exclude_axis"])
    if pair:
        pb = _ring(cfg, "other_")
        pts = rg.find_pair_intersections(pa, pb, **kwargs)
        table = Table("intersections", ["t1", "t2", "x", "y", "z", "gap", "vstar_x", "vstar_y", "vstar_z"])
        for ip in pts:
            v = rg.summary_velocity(pa, pb, ip).v_star
            table.add(ip.t1, ip.t2, *map(float, ip.point), ip.gap, *map(float, v))
    else:
        pts = rg.find_self_intersections(pa, **kwargs)
        table = Table("intersections", ["t1", "t2", "x", "y", "z", "gap"])
        for ip in pts:
            table.add(ip.t1, ip.t2, *map(float, ip.point), ip.gap)
    return [table], {"count": len(pts), "mode": "pair" if pair else "self"}


def cmd_spin(cfg):
    hbar = cfg["hbar"]
    if hbar <= 0:
        raise ConfigError("hbar must be positive")
    try:
        psi0 = sd.Spinor(
            complex(cfg["psi_up_re"], cfg["psi_up_im"]),
            complex(cfg["psi_down_re"], cfg["psi_down_im"]),
        )
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc
    tables = []
    if cfg["drive"] == "constant":
        drive = sd.DriveField(cfg["theta_x"], cfg["theta_y"], cfg["theta_z"])
        default_span = sd.bloch_rotation_time(drive, 4 * math.pi, hbar) if drive.magnitude else 1.0
    else:
        drive = sd.closed_form_drive(cfg["omega"], hbar)
        if cfg["omega"] == 0:
            raise ConfigError("omega must be nonzero for the closed-form drive")
        default_span = 4 * math.pi / abs(cfg["omega"])
    t0 = cfg["t0"]
    t1 = t0 + default_span if cfg["t1"] is None else cfg["t1"]
    trace = sd.evolve_spinor(psi0, drive, (t0, t1), cfg["steps"], hbar)
    table = Table("trace", ["t", "up_re", "up_im", "down_re", "down_im", "norm"])
    for t, s, n in zip(trace.times, trace.spinors, trace.norms):
        table.add(float(t), s[0].real, s[0].imag, s[1].real, s[1].imag, float(n))
    tables.append(table)
    summary = {"max_norm_deviation": float(np.max(np.abs(trace.norms - 1)))}
    if cfg["drive"] == "closed_form":
        cmp = sd.compare_omega(cfg["omega"], np.linspace(t0, t1, 65))
        comp = Table(
            "omega_comparison",
            ["t", "ring_x", "ring_y", "ring_z", "closed_x", "closed_y", "closed_z", "dev_x", "dev_y", "dev_z"],
        )
        for t, a, b, d in zip(cmp.times, cmp.from_ring, cmp.closed_form, cmp.deviation):
            comp.add(float(t), *map(float, a), *map(float, b), *map(float, d))
        tables.append(comp)
        summary["omega_max_deviation"] = [float(v) for v in cmp.max_deviation]
    return tables, summary


def cmd_moment(cfg):
    c = mm.PhysConstants.preset(cfg["preset"])
    if cfg["alpha"] is not None or cfg["mu_b"] is not None:
        c = mm.PhysConstants(
            c.mu_b if cfg["mu_b"] is None else cfg["mu_b"],
            c.alpha if cfg["alpha"] is None else cfg["alpha"],
            "custom",
        )
    res = mm.continued_fraction_mu(mm.FractionSpec(cfg["max_factorial_arg"]), c)
    terms = Table("terms", ["factorial_arg", "sign", "term", "denominator"])
    for t in res.terms:
        terms.add(t.factorial_arg, t.sign, t.term, t.denominator)
    growth = Table("growth", ["n", "term", "below_unity"])
    for n in range(1, mm.TERM_GROWTH_MAX_N + 1):
        g = mm.term_growth(n, c)
        growth.add(n, g, g < 1)
    try:
        limit = mm.limiting_index(c)
    except ValueError:
        limit = None
    summary = {
        "provenance": c.provenance,
        "mu_b": c.mu_b,
        "alpha": c.alpha,
        "alpha_over_2pi": mm.alpha_over_2pi(c),
        "continued_fraction": res.value,
        "schwinger": mm.schwinger_mu(c),
        "sommerfield": mm.sommerfield_mu(c),
        "limiting_index": limit,
    }
    return [terms, growth], summary


COMMANDS = {
    "field": cmd_field,
    "evolve": cmd_evolve,
    "ring": cmd_ring,
    "intersections": cmd_intersections,
    "spin": cmd_spin,
    "moment": cmd_moment,
}


def cmd_verify(cfg, seed, out, stream) -> int:
    results = chk.run_all(cfg["inject_fault"])
    passed = all(c.passed for c in results)
    report = {
        "meta": _meta("verify", cfg, seed),
        "data": {
            "passed": passed,
            "checks": [
                {"name": c.name, "status": c.status, "measured": c.measured, "bound": c.bound}
                for c in results
            ],
        },
    }
    text = dumps(report)
    stream.write(text)
    if out is not None:
        path = Path(out)
        path.mkdir(parents=True, exist_ok=True)
        (path / "verify.json").write_text(text, newline="\n")
    return EXIT_OK if passed else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="vortexball", description="Oscillating vortices, vortex balls, spinor drive and the moment fraction."
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, spec in PARAMS.items():
        sp = sub.add_parser(name, help=HELP[name], description=HELP[name])
        sp.add_argument("--config", help="flat JSON config; flags override its keys")
        sp.add_argument("--out", help="output directory (stdout when omitted)")
        sp.add_argument("--format", choices=("csv", "json"), default="csv")
        sp.add_argument("--seed", type=int, default=None, help="reserved; no stochastic paths")
        for key in spec:
            flags = [f"--{key}"]
            if "_" in key:
                flags.append(f"--{key.replace('_', '-')}")
            sp.add_argument(*flags, dest=key, default=argparse.SUPPRESS, metavar="VALUE")
    return parser


def main(argv: list[str] | None = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else EXIT_OK
    ns = vars(args)
    command = ns.pop("command")
    config_path = ns.pop("config")
    out = ns.pop("out")
    fmt = ns.pop("format")
    seed = ns.pop("seed")
    try:
        cfg = resolve_config(command, config_path, ns)
        if command == "verify":
            return cmd_verify(cfg, seed, out, stdout)
        tables, summary = COMMANDS[command](cfg)
        write_outputs(out, fmt, command, _meta(command, cfg, seed), tables, summary, stream=stdout)
    except (ValueError, ArithmeticError, OSError) as exc:
        msg = " ".join(str(exc).split())
        stderr.write(f"vortexball {command}: error: {msg}\n")
        return EXIT_USAGE
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
