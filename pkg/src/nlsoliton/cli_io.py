"""External interfaces: run configs, binary field frames, CSV outputs, and
the `nlsim` command line.

Config files are INI documents.  Which pipeline a config drives is either
forced by the subcommand (groundstate / evolve / newton / error-sweep) or
inferred from the sections present.  Field snapshots are written as NLSF
frames: a fixed little-endian header followed by the raw complex payload.
"""
from __future__ import annotations

import configparser
import dataclasses
import io
import json
import os
import struct
import sys
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .spectral_grid import GridSpec, SpectralField, NumericsError, make_grid
from .classical_mechanics import (Potential, harmonic_potential, harmonic_analytic,
                                  lissajous_period, solve_newton,
                                  write_trajectory_csv)
from .ground_state import (FlowConfig, PhysicalParams, solve_ground_state)
from .nls_propagator import (Bump, PropagatorConfig, initial_datum, propagate)
from .analysis import DiagnosticsRecorder, DiagnosticsSeries

FRAME_MAGIC = b"NLSF"
FRAME_VERSION = 1


class ConfigError(ValueError):
    """Invalid configuration text, overrides, or argument list."""


class FrameFormatError(OSError):
    """Malformed or truncated NLSF frame file."""


@dataclass
class BumpSpec:
    """Bump parameters as configured, before a profile is attached."""

    mass: float
    center: np.ndarray
    velocity: np.ndarray


@dataclass
class RunConfig:
    """Validated contents of one config file, ready to drive a pipeline."""

    mode: str
    params: PhysicalParams
    grid: Optional[GridSpec]
    potential: Optional[Potential]
    bumps: list
    flow: FlowConfig
    propagator: Optional[PropagatorConfig]
    sweep_epsilons: Optional[tuple]
    output_dir: str


@dataclass
class FrameFile:
    """One decoded NLSF frame."""

    field: SpectralField
    t: float
    params: PhysicalParams


_KNOWN_KEYS = {
    "params": {"epsilon", "p", "mass", "dims", "sweep_epsilons"},
    "grid": {"half_widths", "points"},
    "potential": {"kind", "omegas"},
    "bump": {"mass", "center", "velocity"},
    "flow": {"energy_tol", "step_tol", "k_init", "k_max", "max_steps",
             "renormalize", "residual_tol"},
    "propagator": {"step_k", "t_final", "frame_stride"},
    "output": {"dir"},
}

_MODE_SECTIONS = {
    "groundstate": ("params", "grid"),
    "evolve": ("params", "grid", "potential", "bump.1", "propagator"),
    "newton": ("params", "potential", "bump.1", "propagator"),
    "error-sweep": ("params", "grid", "potential", "bump.1", "propagator"),
}


def _read_sections(text: str) -> dict:
    parser = configparser.ConfigParser(interpolation=None)
    try:
        parser.read_string(text)
    except configparser.Error as exc:
        raise ConfigError(f"malformed config: {exc}") from exc
    return {name: dict(parser.items(name)) for name in parser.sections()}


def _float_list(raw: str, what: str) -> list:
    try:
        return [float(tok) for tok in raw.split(",") if tok.strip() != ""]
    except ValueError as exc:
        raise ConfigError(f"{what} must be a comma-separated list of numbers, "
                          f"got {raw!r}") from exc


def _broadcast(vals: list, dims: int, what: str) -> list:
    if len(vals) == 1:
        return vals * dims
    if len(vals) != dims:
        raise ConfigError(f"{what} needs 1 or {dims} values, got {len(vals)}")
    return vals


def _get_float(sec: dict, key: str, section: str, default=None) -> float:
    if key not in sec:
        if default is None:
            raise ConfigError(f"missing key '{key}' in [{section}]")
        return default
    try:
        return float(sec[key])
    except ValueError as exc:
        raise ConfigError(f"key '{key}' in [{section}] must be a number, "
                          f"got {sec[key]!r}") from exc


def _get_bool(sec: dict, key: str, section: str, default: bool) -> bool:
    if key not in sec:
        return default
    raw = sec[key].strip().lower()
    if raw in ("true", "yes", "on", "1"):
        return True
    if raw in ("false", "no", "off", "0"):
        return False
    raise ConfigError(f"key '{key}' in [{section}] must be a boolean, got {sec[key]!r}")


def _check_keys(sections: dict):
    for name, sec in sections.items():
        base = "bump" if name.startswith("bump.") else name
        if base not in _KNOWN_KEYS:
            raise ConfigError(f"unknown section [{name}]")
        if name.startswith("bump."):
            suffix = name[len("bump."):]
            if suffix not in ("1", "2"):
                raise ConfigError(f"unknown section [{name}]; bumps are "
                                  "[bump.1] and [bump.2]")
        for key in sec:
            if key not in _KNOWN_KEYS[base]:
                raise ConfigError(f"unknown key '{key}' in [{name}]")


def _infer_mode(sections: dict) -> str:
    if "sweep_epsilons" in sections.get("params", {}):
        return "error-sweep"
    if "grid" not in sections and "potential" in sections:
        return "newton"
    if "propagator" in sections:
        return "evolve"
    return "groundstate"


def _build(sections: dict, mode: Optional[str]) -> RunConfig:
    _check_keys(sections)
    if mode is None:
        mode = _infer_mode(sections)
    if mode not in _MODE_SECTIONS:
        raise ConfigError(f"unknown mode {mode!r}")
    missing = [s for s in _MODE_SECTIONS[mode] if s not in sections]
    if missing:
        raise ConfigError("missing required sections: "
                          + ", ".join(f"[{s}]" for s in missing))

    psec = sections["params"]
    dims_raw = psec.get("dims")
    if dims_raw is None:
        raise ConfigError("missing key 'dims' in [params]")
    try:
        dims = int(dims_raw)
    except ValueError as exc:
        raise ConfigError(f"key 'dims' in [params] must be an integer, "
                          f"got {dims_raw!r}") from exc
    try:
        params = PhysicalParams(
            epsilon=_get_float(psec, "epsilon", "params"),
            p=_get_float(psec, "p", "params"),
            mass=_get_float(psec, "mass", "params", default=1.0),
            dims=dims)
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc

    sweep = None
    if "sweep_epsilons" in psec:
        sweep = tuple(_float_list(psec["sweep_epsilons"], "sweep_epsilons"))
        if not sweep or any(e <= 0 for e in sweep):
            raise ConfigError("sweep_epsilons must list positive values")

    grid = None
    if "grid" in sections:
        gsec = sections["grid"]
        if "half_widths" not in gsec or "points" not in gsec:
            raise ConfigError("[grid] needs both 'half_widths' and 'points'")
        widths = _broadcast(_float_list(gsec["half_widths"], "half_widths"),
                            dims, "half_widths")
        pts_raw = _broadcast(_float_list(gsec["points"], "points"), dims, "points")
        pts = []
        for v in pts_raw:
            if v != int(v):
                raise ConfigError(f"points must be integers, got {v}")
            pts.append(int(v))
        try:
            grid = make_grid(dims, widths, pts)
        except ValueError as exc:
            raise ConfigError(str(exc)) from exc

    potential = None
    if "potential" in sections:
        vsec = sections["potential"]
        kind = vsec.get("kind", "harmonic")
        if kind != "harmonic":
            raise ConfigError(f"config files support kind=harmonic only, "
                              f"got {kind!r}")
        if "omegas" not in vsec:
            raise ConfigError("missing key 'omegas' in [potential]")
        omegas = _broadcast(_float_list(vsec["omegas"], "omegas"), dims, "omegas")
        try:
            potential = harmonic_potential(omegas)
        except ValueError as exc:
            raise ConfigError(str(exc)) from exc

    bumps = []
    for name in ("bump.1", "bump.2"):
        if name not in sections:
            continue
        if name == "bump.2" and "bump.1" not in sections:
            raise ConfigError("[bump.2] given without [bump.1]")
        bsec = sections[name]
        if "center" not in bsec:
            raise ConfigError(f"missing key 'center' in [{name}]")
        center = _broadcast(_float_list(bsec["center"], "center"), dims, "center")
        vel = [0.0] * dims
        if "velocity" in bsec:
            vel = _broadcast(_float_list(bsec["velocity"], "velocity"),
                             dims, "velocity")
        mass = _get_float(bsec, "mass", name, default=params.mass)
        if mass <= 0:
            raise ConfigError(f"mass in [{name}] must be positive")
        bumps.append(BumpSpec(mass=mass, center=np.array(center),
                              velocity=np.array(vel)))

    flow_kwargs = {}
    if "flow" in sections:
        fsec = sections["flow"]
        for key in ("energy_tol", "step_tol", "k_init", "k_max", "residual_tol"):
            if key in fsec:
                flow_kwargs[key] = _get_float(fsec, key, "flow")
        if "max_steps" in fsec:
            flow_kwargs["max_steps"] = int(_get_float(fsec, "max_steps", "flow"))
        flow_kwargs["renormalize"] = _get_bool(fsec, "renormalize", "flow", True)
    try:
        flow = FlowConfig(**flow_kwargs)
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc

    prop = None
    if "propagator" in sections:
        csec = sections["propagator"]
        stride = 1
        if "frame_stride" in csec:
            stride = int(_get_float(csec, "frame_stride", "propagator"))
        try:
            prop = PropagatorConfig(
                step_k=_get_float(csec, "step_k", "propagator"),
                t_final=_get_float(csec, "t_final", "propagator"),
                frame_stride=stride)
        except ValueError as exc:
            raise ConfigError(str(exc)) from exc

    out_dir = sections.get("output", {}).get("dir", "nls-out")
    return RunConfig(mode=mode, params=params, grid=grid, potential=potential,
                     bumps=bumps, flow=flow, propagator=prop,
                     sweep_epsilons=sweep, output_dir=out_dir)


def parse_config(text: str, mode: Optional[str] = None) -> RunConfig:
    """Parse and validate INI config text into a RunConfig.

    mode forces a pipeline; otherwise it is inferred: sweep_epsilons means
    error-sweep, a potential without a grid means newton, a [propagator]
    section means evolve, anything else is a ground-state computation.
    """
    return _build(_read_sections(text), mode)


def apply_overrides(sections: dict, overrides: Sequence[str]) -> dict:
    """Apply --section.key=value override tokens onto raw section dicts."""
    out = {name: dict(sec) for name, sec in sections.items()}
    for tok in overrides:
        if not tok.startswith("--") or "=" not in tok:
            raise ConfigError(f"bad override {tok!r}; expected "
                              "--section.key=value")
        path, value = tok[2:].split("=", 1)
        if "." not in path:
            raise ConfigError(f"bad override {tok!r}; expected "
                              "--section.key=value")
        section, key = path.rsplit(".", 1)
        out.setdefault(section, {})[key] = value
    return out


# ---------------------------------------------------------------------------
# NLSF frames

def write_frame(path, field: SpectralField, t: float, params: PhysicalParams):
    """Write one field snapshot as an NLSF frame.

    Layout (little endian): magic "NLSF", u32 version, u32 dims, u32 point
    count per axis, f64 half width per axis, f64 epsilon, p, mass, t, then
    the row-major complex payload as interleaved (re, im) f64 pairs.
    """
    if field.space != "real":
        raise ValueError("frames store real-space fields")
    grid = field.grid
    head = io.BytesIO()
    head.write(FRAME_MAGIC)
    head.write(struct.pack("<II", FRAME_VERSION, grid.dims))
    head.write(struct.pack(f"<{grid.dims}I", *grid.points))
    head.write(struct.pack(f"<{grid.dims}d", *grid.half_widths))
    head.write(struct.pack("<4d", params.epsilon, params.p, params.mass, t))
    payload = np.ascontiguousarray(field.values, dtype=np.complex128)
    if sys.byteorder != "little":
        payload = payload.byteswap()
    with open(path, "wb") as fh:
        fh.write(head.getvalue())
        fh.write(payload.tobytes())


def read_frame(path) -> FrameFile:
    """Read an NLSF frame back into a field plus its metadata."""
    with open(path, "rb") as fh:
        data = fh.read()
    if len(data) < 12 or data[:4] != FRAME_MAGIC:
        raise FrameFormatError(f"{path}: not an NLSF frame")
    version, dims = struct.unpack_from("<II", data, 4)
    if version != FRAME_VERSION:
        raise FrameFormatError(f"{path}: unsupported frame version {version}")
    off = 12
    need = off + 4 * dims + 8 * dims + 32
    if len(data) < need:
        raise FrameFormatError(f"{path}: truncated header")
    points = struct.unpack_from(f"<{dims}I", data, off)
    off += 4 * dims
    widths = struct.unpack_from(f"<{dims}d", data, off)
    off += 8 * dims
    eps, p, mass, t = struct.unpack_from("<4d", data, off)
    off += 32
    count = int(np.prod(points))
    expected = 16 * count
    got = len(data) - off
    if got != expected:
        raise FrameFormatError(f"{path}: payload length mismatch: expected "
                               f"{expected} bytes, got {got}")
    values = np.frombuffer(data, dtype="<c16", count=count, offset=off)
    values = values.astype(np.complex128).reshape(points)
    try:
        grid = make_grid(dims, widths, points)
        params = PhysicalParams(epsilon=eps, p=p, mass=mass, dims=dims)
    except ValueError as exc:
        raise FrameFormatError(f"{path}: invalid metadata: {exc}") from exc
    field = SpectralField(grid=grid, values=values, space="real")
    return FrameFile(field=field, t=t, params=params)


# ---------------------------------------------------------------------------
# CSV outputs

def write_diagnostics(series: DiagnosticsSeries, path):
    """Diagnostics CSV: t,mass,energy_full,h_eps_error,com_*,newton_*."""
    n = series.params.dims
    cols = ["t", "mass", "energy_full", "h_eps_error"]
    cols += [f"com_{d+1}" for d in range(n)]
    cols += [f"newton_{d+1}" for d in range(n)]
    with open(path, "w", newline="") as fh:
        fh.write(",".join(cols) + "\n")
        for i in range(len(series)):
            row = [series.times[i], series.mass[i], series.energy_full[i],
                   series.h_eps_error[i]]
            row += list(series.com[i]) + list(series.newton_x[i])
            fh.write(",".join(f"{v:.17g}" for v in row) + "\n")


def write_sweep_summary(rows, path):
    """Sweep CSV: epsilon,max_h_eps_error,max_error_over_eps."""
    with open(path, "w", newline="") as fh:
        fh.write("epsilon,max_h_eps_error,max_error_over_eps\n")
        for eps, max_err, ratio in rows:
            fh.write(f"{eps:.17g},{max_err:.17g},{ratio:.17g}\n")


# ---------------------------------------------------------------------------
# Pipelines

def _solve_profiles(cfg: RunConfig, grid: GridSpec, params: PhysicalParams):
    """Ground-state profiles per bump, solved once per distinct mass."""
    cache = {}
    out = []
    for spec in cfg.bumps:
        if spec.mass not in cache:
            bparams = dataclasses.replace(params, mass=spec.mass)
            cache[spec.mass] = solve_ground_state(grid, bparams, cfg.flow)
        out.append(cache[spec.mass])
    return out


def _newton_reference(cfg: RunConfig, spec: BumpSpec, t_final: float,
                      step_k: float):
    """Classical position at time t for one bump, as a callable of t."""
    if cfg.potential.kind == "harmonic":
        omega = cfg.potential.omega

        def reference(t):
            pos, _vel = harmonic_analytic(spec.center, spec.velocity, omega, t)
            return pos
        return reference
    traj = solve_newton(spec.center, spec.velocity, cfg.potential,
                        t_final, min(step_k, 1e-3))

    def reference(t):
        pos, _vel = traj.sample(t)
        return pos
    return reference


def run_groundstate(cfg: RunConfig, out_dir) -> int:
    result = solve_ground_state(cfg.grid, cfg.params, cfg.flow)
    write_frame(os.path.join(out_dir, "profile.nlsf"), result.profile,
                result.steady_time, cfg.params)
    meta = {
        "lambda_inf": result.lambda_inf,
        "lambda_hat": result.lambda_hat,
        "energy": result.energy,
        "residual": result.residual,
        "steady_time": result.steady_time,
        "steps": result.steps,
    }
    with open(os.path.join(out_dir, "groundstate.json"), "w") as fh:
        json.dump(meta, fh, indent=2)
        fh.write("\n")
    print(f"groundstate: lambda_inf={result.lambda_inf:.6f} "
          f"residual={result.residual:.3e} steps={result.steps}")
    return 0


def run_newton(cfg: RunConfig, out_dir) -> int:
    prop = cfg.propagator
    for i, spec in enumerate(cfg.bumps, start=1):
        traj = solve_newton(spec.center, spec.velocity, cfg.potential,
                            prop.t_final, prop.step_k)
        write_trajectory_csv(traj, os.path.join(out_dir, f"trajectory_{i}.csv"))
    if cfg.potential.kind == "harmonic":
        period = lissajous_period(cfg.potential.omega)
        text = "none" if period is None else f"{period:.12g}"
        print(f"newton: {len(cfg.bumps)} trajectories, closure period {text}")
    else:
        print(f"newton: {len(cfg.bumps)} trajectories")
    return 0


def _evolve_once(cfg: RunConfig, params: PhysicalParams, out_dir,
                 write_frames: bool, diag_name: str):
    profiles = _solve_profiles(cfg, cfg.grid, params)
    bumps = [Bump(mass=s.mass, center=s.center, velocity=s.velocity,
                  profile=r) for s, r in zip(cfg.bumps, profiles)]
    field0 = initial_datum(cfg.grid, params, bumps)
    single = len(bumps) == 1
    recorder = DiagnosticsRecorder(
        cfg.potential, params,
        profile=profiles[0] if single else None,
        reference=_newton_reference(cfg, cfg.bumps[0], cfg.propagator.t_final,
                                    cfg.propagator.step_k),
        record_error=single)
    observers = [recorder]
    if write_frames:
        frames_dir = os.path.join(out_dir, "frames")
        os.makedirs(frames_dir, exist_ok=True)

        def frame_writer(step, t, field):
            write_frame(os.path.join(frames_dir, f"frame_{step:06d}.nlsf"),
                        field, t, params)
        observers.append(frame_writer)
    final = propagate(field0, cfg.potential, params, cfg.propagator, observers)
    write_diagnostics(recorder.series, os.path.join(out_dir, diag_name))
    return final, recorder.series


def run_evolve(cfg: RunConfig, out_dir) -> int:
    _final, series = _evolve_once(cfg, cfg.params, out_dir,
                                  write_frames=True, diag_name="diagnostics.csv")
    errs = np.asarray(series.h_eps_error)
    finite = errs[np.isfinite(errs)]
    tail = f" max_h_eps_error={finite.max():.6g}" if finite.size else ""
    print(f"evolve: {len(series)} frames to t={series.times[-1]:.6g}{tail}")
    return 0


def run_sweep(cfg: RunConfig, out_dir) -> int:
    rows = []
    for eps in cfg.sweep_epsilons:
        params = dataclasses.replace(cfg.params, epsilon=eps)
        diag = f"diagnostics_eps_{eps:g}.csv"
        _final, series = _evolve_once(cfg, params, out_dir,
                                      write_frames=False, diag_name=diag)
        errs = np.asarray(series.h_eps_error)
        finite = errs[np.isfinite(errs)]
        max_err = float(finite.max()) if finite.size else float("nan")
        rows.append((eps, max_err, max_err / eps))
        print(f"sweep eps={eps:g}: max_h_eps_error={max_err:.6g} "
              f"ratio={max_err / eps:.6g}")
    write_sweep_summary(rows, os.path.join(out_dir, "sweep_summary.csv"))
    return 0


_USAGE = """\
usage: nlsim [groundstate|evolve|newton|error-sweep] CONFIG [--section.key=value ...]

Runs the pipeline named by the subcommand (or inferred from the config)
and writes results under the configured output directory.
"""

_RUNNERS = {
    "groundstate": run_groundstate,
    "evolve": run_evolve,
    "newton": run_newton,
    "error-sweep": run_sweep,
}


def main(argv: Sequence[str]) -> int:
    """Entry point; returns the process exit code.

    Exit codes: 0 success, 2 configuration or usage errors, 3 numerical
    failures, 4 I/O failures.
    """
    try:
        args = list(argv)
        if args and args[0] in ("-h", "--help"):
            print(_USAGE, end="")
            return 0
        mode = None
        if args and args[0] in _RUNNERS:
            mode = args.pop(0)
        overrides = [a for a in args if a.startswith("--")]
        positional = [a for a in args if not a.startswith("--")]
        if len(positional) != 1:
            sys.stderr.write(_USAGE)
            return 2
        with open(positional[0], "r") as fh:
            text = fh.read()
        sections = apply_overrides(_read_sections(text), overrides)
        cfg = _build(sections, mode)
        out_dir = cfg.output_dir
        os.makedirs(out_dir, exist_ok=True)
        return _RUNNERS[cfg.mode](cfg, out_dir)
    except ConfigError as exc:
        sys.stderr.write(f"config error: {exc}\n")
        return 2
    except (NumericsError, FloatingPointError) as exc:
        sys.stderr.write(f"numerical failure: {exc}\n")
        return 3
    except OSError as exc:
        sys.stderr.write(f"i/o error: {exc}\n")
        return 4


def console_entry():
    sys.exit(main(sys.argv[1:]))
