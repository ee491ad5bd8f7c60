"""Command-line front end: reproducible CSV + manifest exports.

Every subcommand writes RFC-4180-style CSV files (header row, UTF-8, LF line
endings, 17 significant digits for floats) plus a manifest.json recording the
input parameters, tool version, creation time, and a sha256 checksum of each
output, so a result directory is self-describing and re-runnable.

Exit codes: 0 success, 1 I/O failure, 2 usage or validation error,
3 structural impossibility (e.g. a dark-pair search with two coupling points).
Frequencies on the command line are given in cycles, i.e. as omega_tau/2pi and
gamma_tau/2pi, matching the usual parameter-plane axes.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import math
import os
import sys
from datetime import datetime, timezone

import numpy as np

from . import __version__
from .core import TWO_PI, GiantAtomParams, StructuralImpossibilityError
from . import continuum as continuum_mod
from . import darkstates, dde, field, spectral

EXIT_OK = 0
EXIT_IO = 1
EXIT_USAGE = 2
EXIT_STRUCTURAL = 3


def _fmt(value) -> str:
    if isinstance(value, (bool, np.bool_)):
        return "true" if value else "false"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    return format(float(value), ".17g")


def _write_csv(path: str, header: list[str], rows) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(",".join(header) + "\n")
        for row in rows:
            fh.write(",".join(_fmt(v) for v in row) + "\n")


def _sha256(path: str) -> str:
    digest = hashlib.sha256()
    with open(path, "rb") as fh:
        for block in iter(lambda: fh.read(1 << 20), b""):
            digest.update(block)
    return digest.hexdigest()


def _write_manifest(out_dir: str, command: str, params: dict, outputs: list[str],
                    derived: dict | None = None) -> None:
    manifest = {
        "params": {"command": command, **params},
        "version": __version__,
        "created_at": datetime.now(timezone.utc).isoformat(),
        "outputs": [{"path": name, "sha256": _sha256(os.path.join(out_dir, name))}
                    for name in outputs],
    }
    if derived:
        manifest["derived"] = derived
    with open(os.path.join(out_dir, "manifest.json"), "w", encoding="utf-8") as fh:
        json.dump(manifest, fh, indent=2, sort_keys=True)
        fh.write("\n")


def _resolve_threads(args) -> int:
    threads = getattr(args, "threads", None)
    if threads is None:
        threads = int(os.environ.get("GIANT_ATOM_THREADS", "1") or "1")
    if threads < 1:
        raise ValueError(f"threads must be >= 1, got {threads}")
    return threads


def _params_from_args(args) -> GiantAtomParams:
    return GiantAtomParams(n_legs=args.n_legs,
                           gamma_tau=TWO_PI * args.gamma_tau_2pi,
                           omega_tau=TWO_PI * args.omega_tau_2pi)


def _cmd_simulate(args) -> int:
    params = _params_from_args(args)
    threads = _resolve_threads(args)
    trace = dde.integrate_beta(params, args.t_max, steps_per_tau=args.steps_per_tau)
    os.makedirs(args.out_dir, exist_ok=True)

    stride = max(1, args.stride)
    times = trace.sample_times[::stride]
    samples = trace.samples[::stride]
    _write_csv(os.path.join(args.out_dir, "beta.csv"),
               ["t", "re_beta", "im_beta", "prob"],
               ((t, b.real, b.imag, abs(b) ** 2) for t, b in zip(times, samples)))
    outputs = ["beta.csv"]

    if args.pxt:
        x_min = args.pxt_x_min if args.pxt_x_min is not None else -10.0
        x_max = args.pxt_x_max if args.pxt_x_max is not None else (params.n_legs - 1) + 10.0
        snap_times = np.linspace(0.0, trace.t_max, args.pxt_t_count)
        grid = field.GridSpec(x_min=x_min, x_max=x_max, dx=args.pxt_dx,
                              times=tuple(float(t) for t in snap_times))
        frames = field.intensity_map(params, trace, grid, threads=threads)
        def pxt_rows():
            for frame in frames:
                for x, p in zip(frame.xs, frame.values):
                    yield (frame.t, x, p)
        _write_csv(os.path.join(args.out_dir, "pxt.csv"), ["t", "x", "p"], pxt_rows())
        outputs.append("pxt.csv")

    _write_manifest(args.out_dir, "simulate", _public_args(args), outputs)
    final = abs(trace.samples[-1]) ** 2
    print(f"simulate: wrote {', '.join(outputs)} to {args.out_dir} "
          f"(final |beta|^2 = {final:.6g})")
    return EXIT_OK


def _cmd_poles(args) -> int:
    params = _params_from_args(args)
    threads = _resolve_threads(args)
    im_center = (TWO_PI * args.im_center_2pi if args.im_center_2pi is not None
                 else -params.omega_tau)
    poles = spectral.find_poles(params, re_min=args.re_min, im_center=im_center,
                                im_halfwidth=TWO_PI * args.im_halfwidth_2pi,
                                threads=threads)
    os.makedirs(args.out_dir, exist_ok=True)
    _write_csv(os.path.join(args.out_dir, "poles.csv"),
               ["re_s", "im_s", "re_weight", "im_weight"],
               ((s.real, s.imag, w.real, w.imag)
                for s, w in zip(poles.s, poles.weights)))
    _write_manifest(args.out_dir, "poles", _public_args(args), ["poles.csv"],
                    derived={"winding_number": poles.winding,
                             "n_poles": len(poles)})
    print(f"poles: found {len(poles)} poles (winding {poles.winding}), "
          f"wrote poles.csv to {args.out_dir}")
    return EXIT_OK


def _cmd_dark_search(args) -> int:
    pairs = darkstates.find_pairs(args.n_legs, p_max=args.p_max, q_max=args.q_max)
    os.makedirs(args.out_dir, exist_ok=True)
    _write_csv(os.path.join(args.out_dir, "pairs.csv"),
               ["n1", "n2", "p", "q", "n", "omega_tau_2pi", "gamma_tau_2pi",
                "beat", "osc_amplitude", "rwa_ok"],
               ((pr.n1, pr.n2, pr.p, pr.q, pr.n, pr.omega_tau / TWO_PI,
                 pr.gamma_tau / TWO_PI, pr.beat, pr.osc_amplitude, pr.rwa_ok)
                for pr in pairs))
    _write_manifest(args.out_dir, "dark-search", _public_args(args), ["pairs.csv"],
                    derived={"n_pairs": len(pairs)})
    print(f"dark-search: {len(pairs)} coexisting pairs, wrote pairs.csv to {args.out_dir}")
    return EXIT_OK


def _cmd_scan(args) -> int:
    scan = darkstates.scan_lattice(args.n_legs,
                                   omega_tau_max=TWO_PI * args.omega_tau_2pi_max,
                                   gamma_tau_max=TWO_PI * args.gamma_tau_2pi_max,
                                   line_samples=args.line_samples)
    os.makedirs(args.out_dir, exist_ok=True)
    _write_csv(os.path.join(args.out_dir, "dots.csv"),
               ["omega_tau_2pi", "gamma_tau_2pi", "n1", "n2", "osc_amplitude", "rwa_ok"],
               ((pr.omega_tau / TWO_PI, pr.gamma_tau / TWO_PI, pr.n1, pr.n2,
                 pr.osc_amplitude, pr.rwa_ok) for pr in scan.dots))
    def line_rows():
        for line in scan.lines:
            for g, w in zip(line.gamma_tau, line.omega_tau):
                yield (line.n, w / TWO_PI, g / TWO_PI)
    _write_csv(os.path.join(args.out_dir, "lines.csv"),
               ["n", "omega_tau_2pi", "gamma_tau_2pi"], line_rows())
    _write_manifest(args.out_dir, "scan", _public_args(args), ["dots.csv", "lines.csv"],
                    derived={"n_dots": len(scan.dots), "n_lines": len(scan.lines)})
    print(f"scan: {len(scan.dots)} pair dots and {len(scan.lines)} condition lines, "
          f"wrote dots.csv and lines.csv to {args.out_dir}")
    return EXIT_OK


def _cmd_field(args) -> int:
    gamma_tau = TWO_PI * args.gamma_tau_2pi
    omega_tau = darkstates.dark_condition_omega_tau(args.n_legs, args.dark_n, gamma_tau)
    if omega_tau <= 0:
        raise ValueError(
            f"dark index {args.dark_n} forces omega_tau = {omega_tau:g} <= 0 at "
            f"this gamma_tau; no physical dark point exists"
        )
    params = GiantAtomParams(n_legs=args.n_legs, gamma_tau=gamma_tau, omega_tau=omega_tau)
    record = field.dark_state_record(params, args.dark_n)
    xs = np.arange(0.0, (args.n_legs - 1) + 0.5 * args.x_step, args.x_step)
    profile = field.bound_profile(params, args.dark_n, xs)
    os.makedirs(args.out_dir, exist_ok=True)
    _write_csv(os.path.join(args.out_dir, "profile.csv"), ["x", "p"],
               zip(xs, profile))
    _write_manifest(args.out_dir, "field", _public_args(args), ["profile.csv"],
                    derived={"omega_tau_2pi": omega_tau / TWO_PI,
                             "amplitude": record.amplitude,
                             "intensity": record.intensity,
                             "rwa_ok": bool(record.rwa_ok)})
    print(f"field: dark index {args.dark_n} at omega_tau/2pi = {omega_tau / TWO_PI:.6g}, "
          f"I(n) = {record.intensity:.6g}, wrote profile.csv to {args.out_dir}")
    return EXIT_OK


def _cmd_continuum(args) -> int:
    gamma_T = args.gamma_t if args.gamma_t is not None else (TWO_PI * args.n) ** 2
    omega_T = (args.omega_t if args.omega_t is not None
               else TWO_PI * args.n - gamma_T / (TWO_PI * args.n))
    xs = np.arange(0.0, args.length + 0.5 * args.x_step, args.x_step)
    profile = continuum_mod.continuum_profile(gamma_T, args.n, args.length, xs)
    os.makedirs(args.out_dir, exist_ok=True)
    _write_csv(os.path.join(args.out_dir, "profile.csv"), ["x", "p"],
               zip(xs, profile))
    _write_manifest(args.out_dir, "continuum", _public_args(args), ["profile.csv"],
                    derived={"gamma_T": gamma_T, "omega_T": omega_T,
                             "total_intensity":
                                 continuum_mod.continuum_total_intensity(gamma_T, args.n)})
    print(f"continuum: n = {args.n}, Gamma*T = {gamma_T:.6g}, wrote profile.csv "
          f"to {args.out_dir}")
    return EXIT_OK


def _public_args(args) -> dict:
    skip = {"func"}
    out = {}
    for key, value in sorted(vars(args).items()):
        if key in skip:
            continue
        if isinstance(value, float) and not math.isfinite(value):
            value = str(value)
        out[key] = value
    return out


def _add_system_flags(sub, *, omega: bool = True) -> None:
    sub.add_argument("--n-legs", type=int, required=True,
                     help="number of coupling points N (>= 2)")
    sub.add_argument("--gamma-tau-2pi", type=float, required=True,
                     help="per-point relaxation, gamma*tau / 2pi")
    if omega:
        sub.add_argument("--omega-tau-2pi", type=float, required=True,
                         help="transition frequency, omega*tau / 2pi")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="giant-atom",
        description="Simulate a multi-point emitter in a 1D waveguide and export "
                    "reproducible CSV data files.")
    parser.add_argument("--version", action="version", version=__version__)
    subs = parser.add_subparsers(dest="command", required=True)

    sim = subs.add_parser("simulate", help="integrate the delayed amplitude equation")
    _add_system_flags(sim)
    sim.add_argument("--t-max", type=float, required=True, help="final time in units of tau")
    sim.add_argument("--steps-per-tau", type=int, default=dde.DEFAULT_STEPS_PER_TAU)
    sim.add_argument("--stride", type=int, default=1,
                     help="write every k-th stored sample to beta.csv")
    sim.add_argument("--pxt", action="store_true",
                     help="also write the field-intensity heatmap pxt.csv")
    sim.add_argument("--pxt-x-min", type=float, default=None)
    sim.add_argument("--pxt-x-max", type=float, default=None)
    sim.add_argument("--pxt-dx", type=float, default=0.05)
    sim.add_argument("--pxt-t-count", type=int, default=201)
    sim.add_argument("--threads", type=int, default=None)
    sim.add_argument("--out-dir", required=True)
    sim.set_defaults(func=_cmd_simulate)

    pol = subs.add_parser("poles", help="locate complex mode frequencies")
    _add_system_flags(pol)
    pol.add_argument("--re-min", type=float, default=spectral.DEFAULT_RE_MIN,
                     help="left edge of the search rectangle (1/tau units, < 0)")
    pol.add_argument("--im-center-2pi", type=float, default=None,
                     help="imaginary-axis centre / 2pi (default: -omega_tau/2pi)")
    pol.add_argument("--im-halfwidth-2pi", type=float, default=2.0)
    pol.add_argument("--threads", type=int, default=None)
    pol.add_argument("--out-dir", required=True)
    pol.set_defaults(func=_cmd_poles)

    dark = subs.add_parser("dark-search", help="enumerate coexisting dark pairs")
    dark.add_argument("--n-legs", type=int, required=True)
    dark.add_argument("--p-max", type=int, default=12)
    dark.add_argument("--q-max", type=int, default=12)
    dark.add_argument("--out-dir", required=True)
    dark.set_defaults(func=_cmd_dark_search)

    scan = subs.add_parser("scan", help="scan the parameter window for pair dots "
                                        "and single-dark-state lines")
    scan.add_argument("--n-legs", type=int, required=True)
    scan.add_argument("--omega-tau-2pi-max", type=float, required=True)
    scan.add_argument("--gamma-tau-2pi-max", type=float, required=True)
    scan.add_argument("--line-samples", type=int, default=201)
    scan.add_argument("--out-dir", required=True)
    scan.set_defaults(func=_cmd_scan)

    fld = subs.add_parser("field", help="trapped-field profile of a dark state")
    fld.add_argument("--n-legs", type=int, required=True)
    fld.add_argument("--gamma-tau-2pi", type=float, required=True)
    fld.add_argument("--dark-n", type=int, required=True)
    fld.add_argument("--x-step", type=float, default=field.DEFAULT_DX)
    fld.add_argument("--out-dir", required=True)
    fld.set_defaults(func=_cmd_field)

    cont = subs.add_parser("continuum", help="continuum-limit trapped profile")
    cont.add_argument("--n", type=int, required=True)
    cont.add_argument("--gamma-t", type=float, default=None,
                      help="Gamma*T (default: the comb-pair limit (2 n pi)^2)")
    cont.add_argument("--omega-t", type=float, default=None,
                      help="Omega*T (default: from the continuum dark condition)")
    cont.add_argument("--length", type=float, default=1.0)
    cont.add_argument("--x-step", type=float, default=field.DEFAULT_DX)
    cont.add_argument("--out-dir", required=True)
    cont.set_defaults(func=_cmd_continuum)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    try:
        return args.func(args)
    except StructuralImpossibilityError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_STRUCTURAL
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO


def run() -> None:
    raise SystemExit(main())
