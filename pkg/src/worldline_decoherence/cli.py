"""Command-line front end.

Subcommands ``rates``, ``spectrum``, ``dispersion``, ``evolve`` and ``sweep``.
Exit codes: 0 success, 2 invalid input, 3 an integral or evolution did not
converge.  Everything is in internal units (hbar = c = eps0 = kB = 1,
frequencies in units of omega_q) unless ``--si`` is given, in which case the
particle constants, the trajectory flags and all outputs are SI.

Default particle parameters are e = m = omega_q = M = 1 (internal), which
gives a damping beta*omega_q = 1/(8 pi).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
import tempfile
import warnings
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from datetime import datetime, timezone
from pathlib import Path
from typing import Optional

import numpy as np

from . import __version__
from .dispersion import c1_td, c2_du, c2_td
from .errors import ConvergenceError, NotFinite, ValidationError
from .model import ModelParams, from_internal, params_from_mapping, read_config, to_internal, unit_value
from .qbm import Grid1D, QbmCoefficients, build_superposition, evolve
from .quadrature import QuadConfig
from .rates import gamma_from_fdt, lambda_du, lambda_td, lambda_thermal, momentum_diffusion, td_kernel
from .response import alpha0, eta, s_weight
from .spectra import WightmanSpectrum
from .worldlines import Kind, Worldline

EXIT_OK, EXIT_VALIDATION, EXIT_CONVERGENCE = 0, 2, 3


# -- units -------------------------------------------------------------------


@dataclass(frozen=True)
class Units:
    """Conversion between the user's unit system and internal units."""

    si: bool
    omega_q: float = 1.0  # SI frequency scale, used only when si

    @property
    def suffix(self) -> str:
        return "_si" if self.si else "_internal"

    @property
    def name(self) -> str:
        return "si" if self.si else "internal"

    def inward(self, value: float, kind: str) -> float:
        return to_internal(value, kind, self.omega_q) if self.si else value

    def out(self, value: float, kind: str) -> float:
        return from_internal(value, kind, self.omega_q) if self.si else value

    def out_ratio(self, value: float, num: str, den: str, power: int = 1) -> float:
        # value in units of num / den**power
        if not self.si:
            return value
        return value * unit_value(num, self.omega_q) / unit_value(den, self.omega_q) ** power


@dataclass
class RunManifest:
    command: str
    parameters: dict
    unit_system: str
    outputs: list = field(default_factory=list)
    tool_version: str = __version__
    quad: dict = field(default_factory=dict)

    def write(self, path: Path):
        doc = {
            "command": self.command,
            "parameters": self.parameters,
            "unit_system": self.unit_system,
            "outputs": self.outputs,
            "tool_version": self.tool_version,
            "quad": self.quad,
            "timestamp": datetime.now(timezone.utc).isoformat(timespec="seconds"),
        }
        path.write_text(dumps(doc) + "\n", encoding="utf-8")


# -- output helpers -----------------------------------------------------------


def _check_finite(obj, where="output"):
    if isinstance(obj, float) and not math.isfinite(obj):
        raise NotFinite(f"non-finite value in {where}")
    if isinstance(obj, dict):
        for k, v in obj.items():
            _check_finite(v, f"{where}.{k}")
    elif isinstance(obj, (list, tuple)):
        for v in obj:
            _check_finite(v, where)


def dumps(obj) -> str:
    _check_finite(obj)
    return json.dumps(obj, indent=2, allow_nan=False)


def fmt(x) -> str:
    """Shortest round-trip representation, independent of locale."""
    x = float(x)
    if not math.isfinite(x):
        raise NotFinite("non-finite value in CSV output")
    return repr(x)


def csv_text(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([fmt(v) for v in row])
    return buf.getvalue()


class Outputs:
    """Atomic file writer that removes everything it wrote if the run fails."""

    def __init__(self):
        self.paths: list[Path] = []

    def write(self, path: Path, text: str):
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".part")
        try:
            with os.fdopen(fd, "w", encoding="utf-8", newline="") as fh:
                fh.write(text)
            os.replace(tmp, path)
        except BaseException:
            Path(tmp).unlink(missing_ok=True)
            raise
        self.paths.append(path)

    def rollback(self):
        for p in self.paths:
            p.unlink(missing_ok=True)
        self.paths.clear()


def manifest_path(out: Path) -> Path:
    return out.with_name(out.name + ".manifest.json") if out.suffix else out / "manifest.json"


# -- argument plumbing ------------------------------------------------------


def _params_and_units(args) -> tuple[ModelParams, Units]:
    values = dict(read_config(args.config)) if args.config else {}
    for key, flag in (("e", "charge"), ("m", "osc_mass"), ("omega_q", "omega_q"), ("M", "mass")):
        v = getattr(args, flag, None)
        if v is not None:
            values[key] = v
    if args.si:
        values["unit_system"] = "si"
    si = values.get("unit_system", "internal") == "si"
    if si:
        missing = [k for k in ("e", "m", "omega_q", "M") if k not in values]
        if missing:
            raise ValidationError(f"--si needs explicit particle constants; missing {', '.join(missing)}")
    p = params_from_mapping(values)
    return p, Units(si, values["omega_q"] if si else 1.0)


def _worldline(args, units: Units) -> Worldline:
    kind = args.trajectory
    try:
        if kind == "inertial":
            return Worldline.inertial()
        if kind == "hyperbolic":
            if args.accel is None:
                raise ValidationError("required for hyperbolic motion")
            return Worldline.hyperbolic(units.inward(args.accel, "acceleration"))
        if args.radius is None or args.omega is None:
            raise ValidationError("circular motion needs --radius and --omega")
        return Worldline.circular(units.inward(args.radius, "length"), units.inward(args.omega, "frequency"))
    except ValidationError as exc:
        flag = "--accel" if kind == "hyperbolic" else "--radius/--omega"
        raise type(exc)(f"{flag}: {exc}") from None


def _quad(args, **over) -> QuadConfig:
    kw = {}
    if getattr(args, "rel_tol", None) is not None:
        kw["rel_tol"] = args.rel_tol
    if getattr(args, "uv_cutoff", None) is not None:
        kw["uv_cutoff"] = args.uv_cutoff
    kw["cutoff_doubling_check"] = bool(getattr(args, "check_cutoff", False))
    kw.update(over)
    return QuadConfig(**kw)


def _parameters(args) -> dict:
    out = {}
    for k, v in sorted(vars(args).items()):
        if k == "func":
            continue
        out[k] = v
    return out


# -- commands ---------------------------------------------------------------


def rates_record(w: Worldline, p: ModelParams, cfg: QuadConfig, units: Units, temperature=None) -> dict:
    du = lambda_du(w, p, cfg)
    kern = td_kernel(w, p, cfg)
    td = lambda_td(w, p, cfg)
    rec = {"trajectory": w.kind.value}
    rec["lambda_du"] = units.out(du.value, "decoherence_rate")
    rec["lambda_td_kernel"] = units.out_ratio(kern.value, "decoherence_rate", "acceleration", 2)
    rec["lambda_td"] = units.out(td.value, "decoherence_rate")
    rec["momentum_diffusion"] = units.out(momentum_diffusion(du).value, "momentum_diffusion")
    if temperature is not None:
        th = lambda_thermal(units.inward(temperature, "temperature"), p, cfg)
        rec["lambda_thermal"] = units.out(th.value, "decoherence_rate")
    if w.kind is Kind.HYPERBOLIC:
        rec["t_du"] = units.out(du.temperature, "temperature")
        rec["gamma"] = units.out(gamma_from_fdt(du).value, "rate")
    elif w.kind is Kind.CIRCULAR:
        rec["t_eff_note"] = "frequency dependent; see the T_eff column of the spectrum command"
    else:
        rec["t_du"] = 0.0
        rec["t_eff_note"] = "vacuum: no thermal response, Gamma undefined"
    rec["quad"] = {
        "error_estimate": units.out(du.quad.error_estimate, "decoherence_rate"),
        "cutoff_drift": du.quad.cutoff_drift,
        "evaluations": du.quad.evaluations,
        "td_error_estimate": units.out(td.quad.error_estimate, "decoherence_rate"),
        "td_cutoff_drift": td.quad.cutoff_drift,
    }
    return rec


def cmd_rates(args, outputs: Outputs) -> int:
    p, units = _params_and_units(args)
    w = _worldline(args, units)
    rec = rates_record(w, p, _quad(args), units, args.temperature)
    rec = {"unit_system": units.name, **rec}
    text = dumps(rec) + "\n"
    sys.stdout.write(text)
    if args.output:
        out = Path(args.output)
        outputs.write(out, text)
        _manifest(args, units, outputs, out, rec["quad"])
    return EXIT_OK


def cmd_spectrum(args, outputs: Outputs) -> int:
    p, units = _params_and_units(args)
    w = _worldline(args, units)
    if not 0 < args.omega_min < args.omega_max:
        raise ValidationError("--omega-min/--omega-max: need 0 < omega_min < omega_max")
    if args.points < 1:
        raise ValidationError("--points must be >= 1")
    lo, hi = units.inward(args.omega_min, "frequency"), units.inward(args.omega_max, "frequency")
    if args.points == 1:
        omega = np.array([lo])
    elif args.spacing == "log":
        omega = np.geomspace(lo, hi, args.points)
    else:
        omega = np.linspace(lo, hi, args.points)
    spec = WightmanSpectrum(w)
    dp, dm = spec.pair(omega)
    ratio = spec.ratio(omega)
    t_eff = spec.effective_temperature(omega)
    s = units.suffix
    header = [f"omega{s}", f"d_plus{s}", f"d_minus{s}", f"ratio{s}", f"T_eff{s}"]
    cols = [
        units.out(1.0, "frequency") * omega,
        units.out(1.0, "spectral_density") * dp,
        units.out(1.0, "spectral_density") * dm,
        ratio,
        units.out(1.0, "temperature") * t_eff,
    ]
    if args.response:
        a0, et = alpha0(omega, p), eta(omega, p)
        pol = units.out(1.0, "polarizability")
        header += [f"re_alpha0{s}", f"im_alpha0{s}", f"re_eta{s}", f"im_eta{s}", f"s_weight{s}"]
        cols += [pol * a0.real, pol * a0.imag, et.real, et.imag, pol * s_weight(omega, p)]
    text = csv_text(header, zip(*cols))
    if args.output:
        out = Path(args.output)
        outputs.write(out, text)
        _manifest(args, units, outputs, out, {})
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_dispersion(args, outputs: Outputs) -> int:
    p, units = _params_and_units(args)
    w = _worldline(args, units)
    mode = "thermal_only" if args.mode == "thermal-only" else "full_with_cutoff"
    terms = [t.strip() for t in args.terms.split(",") if t.strip()]
    unknown = sorted(set(terms) - {"c1", "c2_du", "c2_td"})
    if unknown:
        raise ValidationError(f"--terms: unknown term(s) {', '.join(unknown)}")
    rec = {"unit_system": units.name, "trajectory": w.kind.value}
    if "c1" in terms:
        r = c1_td(w, p, _quad(args), mode=mode)
        rec["c1_td"] = _dispersion_dict(r, units, "force")
    c2_cfg = _quad(args, uv_cutoff=args.uv_cutoff if args.uv_cutoff is not None else 50.0)
    if "c2_du" in terms:
        r = c2_du(w, p, c2_cfg, vacuum_subtract=args.vacuum_subtract)
        rec["c2_du"] = _dispersion_dict(r, units, "stiffness")
    if "c2_td" in terms:
        r = c2_td(w, p, c2_cfg, vacuum_subtract=args.vacuum_subtract)
        rec["c2_td"] = _dispersion_dict(r, units, "stiffness")
    text = dumps(rec) + "\n"
    sys.stdout.write(text)
    if args.output:
        out = Path(args.output)
        outputs.write(out, text)
        _manifest(args, units, outputs, out, {k: v["cutoff_drift"] for k, v in rec.items() if isinstance(v, dict)})
    return EXIT_OK


def _dispersion_dict(r, units: Units, kind: str) -> dict:
    d = r.as_dict()
    d["value"] = units.out(r.value, kind)
    d["error_estimate"] = units.out(r.error_estimate, kind)
    d["uv_cutoff_used"] = units.out(r.uv_cutoff_used, "frequency")
    if d["cutoff_drift"] is not None and not math.isfinite(d["cutoff_drift"]):
        d["cutoff_drift"] = None
    return d


def cmd_evolve(args, outputs: Outputs) -> int:
    p, units = _params_and_units(args)
    u = units
    grid = Grid1D(args.grid_points, u.inward(args.x_max, "length"))
    sep = u.inward(args.separation, "length")
    state = build_superposition(u.inward(args.x0, "length"), sep, u.inward(args.sigma, "length"), grid)
    k = QbmCoefficients(
        lambda_=u.inward(args.lam, "decoherence_rate"),
        gamma=u.inward(args.gamma, "rate"),
        c1=u.inward(args.c1, "force"),
        c2=u.inward(args.c2, "stiffness"),
        M=p.M,
        a=u.inward(args.accel_term, "acceleration"),
        include_kinetic=args.kinetic,
    )
    _, series = evolve(
        state, k, u.inward(args.dt, "time"), args.steps,
        snapshot_every=args.snapshot_every, keep_matrices=args.snapshots,
    )
    s = u.suffix
    t, tr, cn = series.as_arrays()
    # coherence norm carries the dimension of 1/length * length^2 = length
    text = csv_text([f"t{s}", f"trace{s}", f"coherence_norm{s}"],
                    zip(u.out(1.0, "time") * t, tr, u.out(1.0, "length") * cn))
    outdir = Path(args.output_dir)
    outputs.write(outdir / "timeseries.csv", text)
    if args.snapshots:
        x = u.out(1.0, "length") * grid.x
        for i, (ti, m) in enumerate(zip(t, series.snapshots)):
            rows = ([xa, xb, u.out(1.0, "length") ** -1 * m[a, b]]
                    for a, xa in enumerate(x) for b, xb in enumerate(x))
            outputs.write(outdir / f"snapshot_{i:05d}.csv", csv_text([f"x{s}", f"x_prime{s}", f"abs_rho{s}"], rows))
    _manifest(args, units, outputs, outdir, {})
    return EXIT_OK


SWEEP_FLAGS = {"accel": "hyperbolic", "radius": "circular", "omega": "circular"}


def _sweep_point(job):
    args_dict, value = job
    args = argparse.Namespace(**args_dict)
    setattr(args, args.param, value)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        p, units = _params_and_units(args)
        w = _worldline(args, units)
        rec = rates_record(w, p, _quad(args), units)
    return [value, rec["lambda_du"], rec["lambda_td_kernel"], rec["lambda_td"], rec["momentum_diffusion"],
            rec["quad"]["error_estimate"]]


def cmd_sweep(args, outputs: Outputs) -> int:
    if SWEEP_FLAGS[args.param] != args.trajectory:
        raise ValidationError(f"--param {args.param} needs --trajectory {SWEEP_FLAGS[args.param]}")
    if args.points < 1:
        raise ValidationError("--points must be >= 1")
    if args.spacing == "log":
        if not (getattr(args, "from") > 0 and args.to > 0):
            raise ValidationError("--from/--to must be positive for log spacing")
        values = np.geomspace(getattr(args, "from"), args.to, args.points)
    else:
        values = np.linspace(getattr(args, "from"), args.to, args.points)
    _, units = _params_and_units(args)  # validate once up front
    base = {k: v for k, v in vars(args).items() if k != "func"}
    jobs = [(base, float(v)) for v in values]
    if args.jobs > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            rows = list(pool.map(_sweep_point, jobs))
    else:
        rows = [_sweep_point(j) for j in jobs]
    s = units.suffix
    header = [f"{args.param}{s}", f"lambda_du{s}", f"lambda_td_kernel{s}", f"lambda_td{s}",
              f"momentum_diffusion{s}", f"lambda_du_error{s}"]
    text = csv_text(header, rows)
    if args.output:
        out = Path(args.output)
        outputs.write(out, text)
        _manifest(args, units, outputs, out, {"max_error_estimate": max(r[-1] for r in rows)})
    else:
        sys.stdout.write(text)
    return EXIT_OK


def _manifest(args, units: Units, outputs: Outputs, out: Path, quad: dict):
    m = RunManifest(args.command, _parameters(args), units.name, [str(p) for p in outputs.paths], quad=quad)
    path = manifest_path(out)
    m.outputs.append(str(path))
    text_holder = Path(path)
    outputs.paths.append(text_holder)  # removed too if anything later fails
    m.write(text_holder)


# -- parser -------------------------------------------------------------------


def _common(sp, trajectory=True, quad=True):
    g = sp.add_argument_group("parameters")
    g.add_argument("--config", help="key=value file with e, m, omega_q, M, unit_system")
    g.add_argument("--si", action="store_true", help="inputs and outputs in SI units")
    g.add_argument("--charge", type=float, help="oscillator charge e (default 1)")
    g.add_argument("--osc-mass", type=float, help="oscillator mass m (default 1)")
    g.add_argument("--omega-q", type=float, help="oscillator frequency (default 1)")
    g.add_argument("--mass", type=float, help="center-of-mass M (default 1)")
    if trajectory:
        t = sp.add_argument_group("trajectory")
        t.add_argument("--trajectory", choices=["inertial", "hyperbolic", "circular"], default="inertial")
        t.add_argument("--accel", type=float, help="proper acceleration (hyperbolic)")
        t.add_argument("--radius", type=float, help="orbit radius (circular)")
        t.add_argument("--omega", type=float, help="orbital angular frequency (circular)")
    if quad:
        q = sp.add_argument_group("quadrature")
        q.add_argument("--rel-tol", type=float, help="relative tolerance (default 1e-9)")
        q.add_argument("--uv-cutoff", type=float, help="upper frequency limit")
        q.add_argument("--check-cutoff", action="store_true", help="report drift when the cutoff is doubled")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="worldline-decoherence", description=__doc__.split("\n\n")[0])
    ap.add_argument("--version", action="version", version=__version__)
    sub = ap.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("rates", help="decoherence, dissipation and momentum diffusion (JSON)")
    _common(sp)
    sp.add_argument("--temperature", type=float, help="also report the thermal rate at this temperature")
    sp.add_argument("--output", help="also write the JSON here, with a manifest")
    sp.set_defaults(func=cmd_rates)

    sp = sub.add_parser("spectrum", help="D+, D-, their ratio and T_eff on a frequency grid (CSV)")
    _common(sp, quad=False)
    sp.add_argument("--omega-min", type=float, default=0.01)
    sp.add_argument("--omega-max", type=float, default=10.0)
    sp.add_argument("--points", type=int, default=50)
    sp.add_argument("--spacing", choices=["log", "linear"], default="log")
    sp.add_argument("--response", action="store_true", help="add alpha0, eta and S columns")
    sp.add_argument("--output")
    sp.set_defaults(func=cmd_spectrum)

    sp = sub.add_parser("dispersion", help="C1_TD, C2_DU, C2_TD with cutoff diagnostics (JSON)")
    _common(sp)
    sp.add_argument("--mode", choices=["thermal-only", "full"], default="thermal-only", help="C1 vacuum handling")
    sp.add_argument("--vacuum-subtract", action="store_true", help="subtract the inertial integrand from C2")
    sp.add_argument("--terms", default="c1,c2_du,c2_td", help="comma list of c1, c2_du, c2_td")
    sp.add_argument("--output")
    sp.set_defaults(func=cmd_dispersion)

    sp = sub.add_parser("evolve", help="density-matrix evolution of a spatial superposition (CSV)")
    _common(sp, trajectory=False, quad=False)
    sp.add_argument("--grid-points", type=int, default=256)
    sp.add_argument("--x-max", type=float, default=1.2)
    sp.add_argument("--x0", type=float, default=0.0)
    sp.add_argument("--separation", type=float, default=1.0)
    sp.add_argument("--sigma", type=float, default=0.1)
    sp.add_argument("--dt", type=float, default=0.01)
    sp.add_argument("--steps", type=int, default=100)
    sp.add_argument("--snapshot-every", type=int, default=10)
    sp.add_argument("--snapshots", action="store_true", help="also write |rho| matrices")
    sp.add_argument("--lambda", dest="lam", type=float, default=0.0, help="decoherence coefficient")
    sp.add_argument("--gamma", type=float, default=0.0, help="dissipation coefficient")
    sp.add_argument("--c1", type=float, default=0.0, help="linear potential coefficient")
    sp.add_argument("--c2", type=float, default=0.0, help="quadratic potential coefficient")
    sp.add_argument("--accel-term", type=float, default=0.0, help="acceleration in the M a x term")
    sp.add_argument("--kinetic", action="store_true", help="include free evolution and M a x")
    sp.add_argument("--output-dir", default="evolve_out")
    sp.set_defaults(func=cmd_evolve)

    sp = sub.add_parser("sweep", help="rates over a range of one trajectory parameter (CSV)")
    _common(sp)
    sp.add_argument("--param", choices=sorted(SWEEP_FLAGS), required=True)
    sp.add_argument("--from", type=float, required=True)
    sp.add_argument("--to", type=float, required=True)
    sp.add_argument("--points", type=int, default=10)
    sp.add_argument("--spacing", choices=["linear", "log"], default="linear")
    sp.add_argument("--jobs", type=int, default=1)
    sp.add_argument("--output")
    sp.set_defaults(func=cmd_sweep)
    return ap


def main(argv: Optional[list] = None) -> int:
    args = build_parser().parse_args(argv)
    outputs = Outputs()
    try:
        return args.func(args, outputs)
    except ValidationError as exc:
        outputs.rollback()
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except ConvergenceError as exc:
        outputs.rollback()
        print(f"did not converge: {exc}", file=sys.stderr)
        return EXIT_CONVERGENCE
    except BaseException:
        outputs.rollback()
        raise


if __name__ == "__main__":
    sys.exit(main())
