"""Command-line front end: point evaluations, grid sweeps, preset listing,
and matrix dumps, with CSV/JSON outputs suitable for external plotting."""

from __future__ import annotations

import argparse
import json
import math
import sys
from dataclasses import fields
from pathlib import Path

import numpy as np

from . import __version__, dynamics, gaussian, model, sweep
from .errors import ParameterError, SimulationError

#: rad/s keys that also accept a "<key>_over_omega_m" ratio form
_RATIO_KEYS = (
    "omega_w", "gamma_m", "kappa_c", "kappa_w", "kappa_a", "g",
    "delta_a1", "delta_a2", "delta_c", "delta_w",
)

_ALL_FIELDS = tuple(f.name for f in fields(model.SystemParameters))


def parse_config(path) -> model.SystemParameters:
    """Read and validate a strict-JSON parameter file.

    Every SystemParameters field must be present, either directly in rad/s (SI
    otherwise) or, for rate-like keys, as "<key>_over_omega_m". Exactly one
    form per key; unknown keys are a hard error so typos in physics parameters
    cannot pass silently.
    """
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ParameterError(f"cannot read parameter file {path}: {exc}") from exc
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParameterError(
            f"parameter file {path} is not valid JSON "
            f"(line {exc.lineno}, column {exc.colno}: {exc.msg})") from exc
    if not isinstance(raw, dict):
        raise ParameterError(f"parameter file {path} must hold a JSON object")

    allowed = set(_ALL_FIELDS) | {f"{k}_over_omega_m" for k in _RATIO_KEYS}
    unknown = sorted(set(raw) - allowed)
    if unknown:
        raise ParameterError(
            f"unknown parameter key(s): {', '.join(unknown)}")
    for key, value in raw.items():
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            raise ParameterError(f"{key} must be a number, got {value!r}")

    if "omega_m" not in raw:
        raise ParameterError("missing required key omega_m")
    omega_m = float(raw["omega_m"])

    kw: dict[str, float] = {}
    for name in _ALL_FIELDS:
        ratio_name = f"{name}_over_omega_m"
        has_plain = name in raw
        has_ratio = name in _RATIO_KEYS and ratio_name in raw
        if has_plain and has_ratio:
            raise ParameterError(
                f"{name} given in both absolute and _over_omega_m form; "
                "use exactly one")
        if has_plain:
            kw[name] = float(raw[name])
        elif has_ratio:
            kw[name] = float(raw[ratio_name]) * omega_m
        else:
            raise ParameterError(f"missing required key {name}")
    return model.SystemParameters(**kw)


def params_to_config(params: model.SystemParameters) -> dict[str, float]:
    """Parameter echo in the exact shape parse_config accepts."""
    return {name: getattr(params, name) for name in _ALL_FIELDS}


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # route argparse's usage failures through our exit-code policy (1, not 2)
    def error(self, message):
        raise _UsageError(message)


def _build_parser() -> _Parser:
    parser = _Parser(
        prog="oemsim",
        description="Steady-state entanglement of an atom-assisted "
                    "opto-electro-mechanical system.")
    parser.add_argument("--version", action="version", version=f"oemsim {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_source(p):
        src = p.add_mutually_exclusive_group(required=True)
        src.add_argument("--preset", help="named scenario (see 'oemsim presets')")
        src.add_argument("--params", help="JSON parameter file")

    p_point = sub.add_parser("point", parents=[], help="evaluate one parameter point")
    add_source(p_point)
    p_point.add_argument("--x", type=float, default=None,
                         help="swept-axis value (preset axis units, or units of "
                              "omega_m with --params); default: the base detuning")
    p_point.add_argument("--pairs", default=None,
                         help="comma list of mode pairs (default: all five)")
    p_point.add_argument("--baseline", action="store_true",
                         help="also report the atom-free 6-mode values")
    p_point.add_argument("--out", default=None, help="write JSON here instead of stdout")

    p_sweep = sub.add_parser("sweep", help="run a 1-D grid sweep and write CSV")
    add_source(p_sweep)
    p_sweep.add_argument("--out", required=True, help="output CSV path")
    p_sweep.add_argument("--pairs", default=None,
                         help="comma list of mode pairs (default: preset pairs, "
                              "or the three bosonic pairs with --params)")
    p_sweep.add_argument("--baseline", action="store_true",
                         help="force the atom-free comparison on")
    p_sweep.add_argument("--jobs", type=int, default=1, help="parallel evaluations")
    p_sweep.add_argument("--grid", nargs=3, type=float, default=None,
                         metavar=("START", "STOP", "COUNT"),
                         help="override the grid (axis units)")
    p_sweep.add_argument("--axis", default=None,
                         choices=[sweep.AXIS_OMEGA_M, sweep.AXIS_KAPPA_C],
                         help="axis normalization for --params sweeps")

    sub.add_parser("presets", help="list available scenario presets")

    p_dump = sub.add_parser("dump-matrices",
                            help="write drift, diffusion, covariance CSVs for one point")
    add_source(p_dump)
    p_dump.add_argument("--x", type=float, default=None)
    p_dump.add_argument("--out", required=True, help="output directory")
    return parser


def _parse_pairs(arg: str | None, default: tuple[str, ...]) -> tuple[str, ...]:
    if arg is None:
        return default
    try:
        tags = tuple(gaussian.normalize_pair_tag(t) for t in arg.split(",") if t.strip())
    except KeyError as exc:
        raise _UsageError(str(exc.args[0])) from exc
    if not tags:
        raise _UsageError("--pairs must name at least one mode pair")
    return tags


def _point_params(args) -> tuple[model.SystemParameters, float]:
    """Resolve (params, x) for point/dump modes."""
    if args.preset:
        spec = sweep.preset(args.preset)
        x = args.x if args.x is not None else spec.base.delta_c / spec.axis_scale
        return spec.base.replace(delta_c=x * spec.axis_scale), x
    params = parse_config(args.params)
    if args.x is not None:
        params = params.replace(delta_c=args.x * params.omega_m)
        return params, args.x
    return params, params.delta_c / params.omega_m


def _cmd_point(args) -> int:
    params, x = _point_params(args)
    pairs = _parse_pairs(args.pairs, tuple(gaussian.BIPARTITE_PAIRS))
    rec = sweep.evaluate_point(params, pairs, baseline=args.baseline)
    payload = {
        "x": x,
        "delta_c": params.delta_c,
        "stable": rec.stable,
        "max_real_part": rec.max_real_part,
        "e_n": {tag: rec.e_n.get(tag) for tag in pairs},
        "error": rec.error,
    }
    if args.baseline:
        payload["baseline_e_n"] = {
            tag: rec.baseline_e_n.get(tag)
            for tag in pairs if tag in gaussian.BOSONIC_PAIRS}
    text = json.dumps(payload, indent=2, sort_keys=True)
    if args.out:
        Path(args.out).write_text(text + "\n")
    else:
        print(text)
    return 2 if rec.error is not None else 0


def _sweep_spec(args) -> sweep.SweepSpec:
    if args.preset:
        spec = sweep.preset(args.preset)
        changes = {}
        if args.pairs is not None:
            changes["pairs"] = _parse_pairs(args.pairs, spec.pairs)
        if args.baseline:
            changes["baseline"] = True
        if args.grid is not None:
            start, stop, count = args.grid
            changes.update(start=start, stop=stop, count=int(count))
        if args.axis is not None and args.axis != spec.axis:
            scale = (spec.base.kappa_c if args.axis == sweep.AXIS_KAPPA_C
                     else spec.base.omega_m)
            changes.update(axis=args.axis, axis_scale=scale)
        if changes:
            spec = _replace_spec(spec, **changes)
        return spec
    params = parse_config(args.params)
    axis = args.axis or sweep.AXIS_OMEGA_M
    scale = params.kappa_c if axis == sweep.AXIS_KAPPA_C else params.omega_m
    start, stop, count = args.grid if args.grid is not None else (-2.0, 2.0, 401)
    return sweep.SweepSpec(
        name="custom",
        base=params,
        varied="delta_c", start=start, stop=stop, count=int(count),
        axis=axis, axis_scale=scale,
        pairs=_parse_pairs(args.pairs, gaussian.BOSONIC_PAIRS),
        baseline=args.baseline,
    )


def _replace_spec(spec: sweep.SweepSpec, **changes) -> sweep.SweepSpec:
    kw = {f.name: getattr(spec, f.name) for f in fields(sweep.SweepSpec)}
    kw.update(changes)
    return sweep.SweepSpec(**kw)


def _cmd_sweep(args) -> int:
    spec = _sweep_spec(args)
    result = sweep.run_sweep(spec, jobs=args.jobs)
    sweep.write_csv(result, args.out)
    meta = {
        "tool": {"name": "oemsim", "version": __version__},
        "name": spec.name,
        "varied": spec.varied,
        "axis": {"label": spec.axis, "scale_rad_per_s": spec.axis_scale,
                 "start": spec.start, "stop": spec.stop, "count": spec.count},
        "pairs": list(spec.pairs),
        "baseline": spec.baseline,
        "notes": list(spec.notes),
        "params": params_to_config(spec.base),
        "counts": {"points": len(result.records),
                   "stable": result.stable_count(),
                   "errors": result.error_count()},
    }
    Path(f"{args.out}.meta.json").write_text(
        json.dumps(meta, indent=2, sort_keys=True) + "\n")
    if result.error_count() == len(result.records):
        print("error: every grid point failed", file=sys.stderr)
        return 2
    if result.stable_count() == 0:
        print("error: no stable grid point in the sweep", file=sys.stderr)
        return 2
    return 0


def _cmd_presets() -> int:
    for name in sweep.PRESET_NAMES:
        spec = sweep.preset(name)
        print(f"{name:6s} axis={spec.axis} range=[{spec.start:g}, {spec.stop:g}] "
              f"points={spec.count} pairs={','.join(spec.pairs)} "
              f"baseline={'on' if spec.baseline else 'off'}")
        print(f"       {sweep.PRESET_SUMMARIES[name]}")
        for note in spec.notes:
            print(f"       note: {note}")
    return 0


def _write_matrix(path: Path, mat: np.ndarray) -> None:
    lines = [",".join(format(x, ".17g") for x in row) for row in np.asarray(mat)]
    path.write_text("\n".join(lines) + "\n")


def _cmd_dump(args) -> int:
    params, _ = _point_params(args)
    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    ss = model.solve_steady_state(params)
    a = dynamics.build_drift(params, ss)
    d = dynamics.build_diffusion(params)
    _write_matrix(out_dir / "drift.csv", a)
    _write_matrix(out_dir / "diffusion.csv", d)
    report = dynamics.is_stable(a)
    if not report.stable:
        print(f"error: point is unstable (spectral abscissa "
              f"{report.max_real_part:.3e} in units of omega_m); "
              "no covariance written", file=sys.stderr)
        return 2
    _write_matrix(out_dir / "covariance.csv", dynamics.solve_lyapunov(a, d))
    return 0


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command == "point":
            return _cmd_point(args)
        if args.command == "sweep":
            return _cmd_sweep(args)
        if args.command == "presets":
            return _cmd_presets()
        if args.command == "dump-matrices":
            return _cmd_dump(args)
        raise _UsageError(f"unknown command {args.command!r}")
    except _UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 1
    except ParameterError as exc:
        print(f"parameter error: {exc}", file=sys.stderr)
        return 1
    except SimulationError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return 2
    except SystemExit as exc:  # argparse --help / --version
        code = exc.code
        return int(code) if isinstance(code, int) else 0


def entry() -> None:
    sys.exit(main())
