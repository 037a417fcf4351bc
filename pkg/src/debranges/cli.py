"""Command-line interface.

Subcommands:

* ``nodes``        solve a phase-spaced sampling window, emit CSV
* ``kernel``       tabulate a reproducing-kernel section on a real grid
* ``reconstruct``  rebuild a function from node samples, emit CSV
* ``bounds``       estimate frame bounds over a node window, emit JSON
* ``multiplex``    encode/decode two signals through one node stream, emit JSON
* ``verify``       run the built-in invariant suite

Generators are named either by preset (``pw``, ``pw2``, ``poly``) or by a path
to a JSON file with keys ``exp_coefficient``, ``roots``, ``leading_scale``.
Kernel combinations are JSON files ``{"centers": [[re, im], ...],
"coefficients": [[re, im], ...]}`` interpreted in the space of the relevant
generator.  Sample streams are CSV with columns ``n, lambda, re, im``;
multiplexed streams use ``n, lambda, m_re, m_im``.

Numeric tolerances are exposed as ``--tol-<name> VALUE`` flags; each
subcommand documents the names it honors.  Exit code 0 means success, 1 means
bad input, 2 means a numerical failure (unreachable phase targets, solver or
conditioning trouble, failed verification).

All output is deterministic: the same arguments and seed produce
byte-identical files.
"""

import argparse
import csv
import dataclasses
import io
import json
import math
import os
import sys

import numpy as np

from . import frames, multiplex as mux
from .errors import (
    IllConditionedError,
    PhaseRangeError,
    SolverConvergenceError,
)
from .hb import load_hb
from .kernel import KernelCombination, gram, kernel
from .nodes import solve_nodes
from .presets import PRESETS, preset_hb
from .verify import run_checks

__all__ = ["RunConfig", "main"]

_DEFAULT_PROBES = "-2.613,-1.507,-0.401,0.705,1.811,2.917"

_KNOWN_TOLS = {
    "nodes": {"node-residual"},
    "kernel": set(),
    "reconstruct": {"node-residual", "lambda-match"},
    "bounds": {"node-residual"},
    "multiplex": {"node-residual"},
    "verify": {"node-residual", "quad-rel"},
}


class CLIError(ValueError):
    """Malformed invocation or input file; maps to exit code 1."""


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise CLIError(message)


@dataclasses.dataclass(frozen=True)
class RunConfig:
    """Shared, validated invocation state handed to every subcommand."""

    command: str
    hb_specs: tuple
    alpha: float
    window: "tuple | None"
    grid: "tuple | None"
    tolerances: dict
    seed: "int | None"
    output_path: "str | None"


def _fmt(x):
    # repr of a Python float is the shortest round-trip form, so output is
    # byte-stable across runs and platforms
    return repr(float(x))


def _split_tolerances(argv):
    rest, tols = [], {}
    i = 0
    while i < len(argv):
        arg = argv[i]
        if arg.startswith("--tol-"):
            if "=" in arg:
                name, _, raw = arg[len("--tol-"):].partition("=")
            else:
                name = arg[len("--tol-"):]
                i += 1
                if i >= len(argv):
                    raise CLIError(f"--tol-{name} needs a value")
                raw = argv[i]
            if not name:
                raise CLIError("--tol- flag is missing a name")
            try:
                tols[name] = float(raw)
            except ValueError:
                raise CLIError(f"--tol-{name}: {raw!r} is not a number") from None
        else:
            rest.append(arg)
        i += 1
    return rest, tols


def _parse_grid(text):
    parts = text.split(":")
    if len(parts) != 3:
        raise CLIError(f"grid must be LO:HI:STEP, got {text!r}")
    try:
        lo, hi, step = (float(p) for p in parts)
    except ValueError:
        raise CLIError(f"grid {text!r} has a non-numeric part") from None
    if not (math.isfinite(lo) and math.isfinite(hi) and math.isfinite(step)):
        raise CLIError(f"grid {text!r} must be finite")
    if step <= 0 or hi < lo:
        raise CLIError(f"grid {text!r} needs STEP > 0 and HI >= LO")
    count = int(math.floor((hi - lo) / step + 1e-9)) + 1
    return lo, hi, step, lo + step * np.arange(count)


def _load_generator(spec):
    if spec in PRESETS:
        return preset_hb(spec)
    if os.path.exists(spec):
        return load_hb(spec)
    raise CLIError(
        f"{spec!r} is neither a preset ({', '.join(sorted(PRESETS))}) nor a file"
    )


def _load_combination(path, generator):
    try:
        with open(path) as fh:
            data = json.load(fh)
    except OSError as exc:
        raise CLIError(f"{path}: {exc.strerror or exc}") from None
    except json.JSONDecodeError as exc:
        raise CLIError(f"{path}: invalid JSON ({exc})") from None
    if not isinstance(data, dict):
        raise CLIError(f"{path}: expected a JSON object")
    out = {}
    for key in ("centers", "coefficients"):
        items = data.get(key)
        if not isinstance(items, list) or not items:
            raise CLIError(f"{path}: {key!r} must be a non-empty list")
        vals = []
        for k, item in enumerate(items):
            if (
                not isinstance(item, (list, tuple))
                or len(item) != 2
                or not all(isinstance(v, (int, float)) for v in item)
            ):
                raise CLIError(f"{path}: {key}[{k}] must be a [re, im] pair")
            vals.append(complex(item[0], item[1]))
        out[key] = tuple(vals)
    if len(out["centers"]) != len(out["coefficients"]):
        raise CLIError(f"{path}: centers and coefficients differ in length")
    return KernelCombination(generator, out["centers"], out["coefficients"])


def _read_samples(path, node_set, lam_tol):
    try:
        with open(path, newline="") as fh:
            rows = list(csv.DictReader(fh))
    except OSError as exc:
        raise CLIError(f"{path}: {exc.strerror or exc}") from None
    if not rows:
        raise CLIError(f"{path}: no sample rows")
    missing = {"n", "re", "im"} - set(rows[0])
    if missing:
        raise CLIError(f"{path}: missing columns {sorted(missing)}")
    try:
        ns = [int(r["n"]) for r in rows]
        vals = np.array(
            [complex(float(r["re"]), float(r["im"])) for r in rows]
        )
    except (TypeError, ValueError) as exc:
        raise CLIError(f"{path}: non-numeric cell ({exc})") from None
    expected = list(range(node_set.index_lo, node_set.index_hi + 1))
    if ns != expected:
        raise CLIError(
            f"{path}: sample indices do not match the window "
            f"[{node_set.index_lo}, {node_set.index_hi}]"
        )
    if "lambda" in rows[0]:
        lam = np.array([float(r["lambda"]) for r in rows])
        dev = float(np.max(np.abs(lam - node_set.nodes)))
        if dev > lam_tol:
            raise CLIError(
                f"{path}: lambda column deviates from solved nodes by {dev:.3e} "
                f"(> {lam_tol:.1e}); wrong window or generator?"
            )
    return vals


def _csv_text(header, rows):
    buf = io.StringIO()
    buf.write(",".join(header) + "\n")
    for row in rows:
        buf.write(",".join(row) + "\n")
    return buf.getvalue()


def _json_text(obj):
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def _write_output(path, text):
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w") as fh:
            fh.write(text)


def _solve_window(config, generator):
    lo, hi = config.window
    tol = config.tolerances.get("node-residual", 1e-10)
    return solve_nodes(generator, config.alpha, lo, hi, residual_tol=tol)


def _cmd_nodes(config, args):
    gen = _load_generator(args.hb)
    if args.hb2:
        gen = gen.product(_load_generator(args.hb2))
    node_set = _solve_window(config, gen)
    header = ["n", "lambda", "residual"]
    signal = None
    if args.signal:
        signal = _load_combination(args.signal, gen)
        header += ["re", "im"]
    rows = []
    values = signal(node_set.nodes.astype(complex)) if signal else None
    for k, n in enumerate(node_set.indices):
        row = [str(int(n)), _fmt(node_set.nodes[k]), _fmt(node_set.residuals[k])]
        if values is not None:
            row += [_fmt(values[k].real), _fmt(values[k].imag)]
        rows.append(row)
    _write_output(config.output_path, _csv_text(header, rows))
    return 0


def _parse_center(text):
    parts = text.split(",")
    try:
        if len(parts) == 1:
            return complex(float(parts[0]), 0.0)
        if len(parts) == 2:
            return complex(float(parts[0]), float(parts[1]))
    except ValueError:
        pass
    raise CLIError(f"center must be RE or RE,IM, got {text!r}")


def _cmd_kernel(config, args):
    gen = _load_generator(args.hb)
    w = _parse_center(args.center)
    xs = config.grid[3]
    vals = kernel(gen, w, xs.astype(complex))
    rows = [
        [_fmt(x), _fmt(v.real), _fmt(v.imag)] for x, v in zip(xs, vals)
    ]
    _write_output(config.output_path, _csv_text(["x", "re", "im"], rows))
    return 0


def _cmd_reconstruct(config, args):
    e = _load_generator(args.hb)
    lam_tol = config.tolerances.get("lambda-match", 1e-8)
    zs = config.grid[3]
    if args.hb2:
        f = _load_generator(args.hb2)
        lo, hi = config.window
        tol = config.tolerances.get("node-residual", 1e-10)
        system = frames.build_frame_system(
            e, f, config.alpha, lo, hi, residual_tol=tol
        )
        samples = _read_samples(args.samples, system.nodes, lam_tol)
        rec = frames.reconstruct_in_E(system, samples, zs.astype(complex))
    else:
        node_set = _solve_window(config, e)
        samples = _read_samples(args.samples, node_set, lam_tol)
        rec = frames.reconstruct_onb(e, node_set, samples, zs.astype(complex))
    header = ["z", "re", "im"]
    ref = None
    if args.reference:
        ref = _load_combination(args.reference, e)(zs.astype(complex))
        header += ["ref_re", "ref_im", "abs_err"]
    rows = []
    for k, z in enumerate(zs):
        row = [_fmt(z), _fmt(rec[k].real), _fmt(rec[k].imag)]
        if ref is not None:
            row += [
                _fmt(ref[k].real),
                _fmt(ref[k].imag),
                _fmt(abs(rec[k] - ref[k])),
            ]
        rows.append(row)
    _write_output(config.output_path, _csv_text(header, rows))
    return 0


def _cmd_bounds(config, args):
    e = _load_generator(args.hb)
    gen = e.product(_load_generator(args.hb2)) if args.hb2 else e
    node_set = _solve_window(config, gen)
    try:
        probes = np.array([float(p) for p in args.probes.split(",")])
    except ValueError:
        raise CLIError(f"--probes {args.probes!r} has a non-numeric entry") from None
    a_est, b_est = frames.frame_bounds(e, node_set, args.normalize, probes)
    g_probe = gram(e, probes)
    min_eig = float(np.linalg.eigvalsh(0.5 * (g_probe + g_probe.conj().T))[0])
    report = {
        "A_est": a_est,
        "B_est": b_est,
        "command": "bounds",
        "min_gram_eig": min_eig,
        "normalize": bool(args.normalize),
        "probes": [float(p) for p in probes],
        "window": [config.window[0], config.window[1]],
    }
    _write_output(config.output_path, _json_text(report))
    return 0


def _cmd_multiplex(config, args):
    e = _load_generator(args.hb)
    f = _load_generator(args.hb2)
    lo, hi = config.window
    tol = config.tolerances.get("node-residual", 1e-10)
    system = frames.build_frame_system(e, f, config.alpha, lo, hi, residual_tol=tol)
    comb_f = _load_combination(args.f, e)
    comb_g = _load_combination(args.g, f)
    lam = system.lambdas.astype(complex)
    stream = mux.encode(system, comb_f(lam), comb_g(lam))
    if args.stream_out:
        rows = [
            [
                str(int(n)),
                _fmt(system.lambdas[k]),
                _fmt(stream.values[k].real),
                _fmt(stream.values[k].imag),
            ]
            for k, n in enumerate(system.nodes.indices)
        ]
        _write_output(
            args.stream_out, _csv_text(["n", "lambda", "m_re", "m_im"], rows)
        )
    zs = config.grid[3].astype(complex)
    ref_f = comb_f(zs)
    ref_g = comb_g(zs)
    trials = []
    for t in range(args.trials):
        seed_t = config.seed + t
        noisy = mux.simulate_channel(stream, args.sigma, args.drop, seed_t)
        err_f = float(np.max(np.abs(mux.decode_f(noisy, zs) - ref_f)))
        err_g = float(np.max(np.abs(mux.decode_g(noisy, zs) - ref_g)))
        trials.append({"err_f": err_f, "err_g": err_g, "seed": seed_t})
    report = {
        "command": "multiplex",
        "drop": args.drop,
        "grid": [config.grid[0], config.grid[1], config.grid[2]],
        "seed": config.seed,
        "sigma": args.sigma,
        "trials": trials,
        "window": [lo, hi],
    }
    _write_output(config.output_path, _json_text(report))
    return 0


def _cmd_verify(config, args):
    pairs = ["pw", "poly"] if args.pair == "all" else [args.pair]
    checks = []
    failed = 0
    for pair in pairs:
        results = run_checks(
            pair,
            fast=args.fast,
            node_residual_tol=config.tolerances.get("node-residual", 1e-10),
            quad_rel_tol=config.tolerances.get("quad-rel", 1e-8),
        )
        for r in results:
            status = "PASS" if r.passed else "FAIL"
            print(f"[{status}] {pair}:{r.name}  {r.detail}")
            checks.append(
                {"detail": r.detail, "name": r.name, "pair": pair, "passed": r.passed}
            )
            failed += 0 if r.passed else 1
    print(f"{len(checks) - failed}/{len(checks)} checks passed")
    if args.out and args.out != "-":
        _write_output(
            args.out,
            _json_text({"checks": checks, "failed": failed, "passed": len(checks) - failed}),
        )
    return 0 if failed == 0 else 2


_DISPATCH = {
    "nodes": _cmd_nodes,
    "kernel": _cmd_kernel,
    "reconstruct": _cmd_reconstruct,
    "bounds": _cmd_bounds,
    "multiplex": _cmd_multiplex,
    "verify": _cmd_verify,
}


def _build_parser():
    parser = _Parser(
        prog="debranges",
        description="Sampling, reconstruction and multiplexing in de Branges spaces.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    hb = _Parser(add_help=False)
    hb.add_argument("--hb", required=True, help="generator: preset name or JSON path")
    hb2_opt = _Parser(add_help=False)
    hb2_opt.add_argument("--hb2", help="second generator for a pair (optional)")
    hb2_req = _Parser(add_help=False)
    hb2_req.add_argument("--hb2", required=True, help="second generator for the pair")
    window = _Parser(add_help=False)
    window.add_argument("--alpha", type=float, default=0.0, help="phase offset in [0, pi)")
    window.add_argument("--n-lo", type=int, required=True, help="first node index")
    window.add_argument("--n-hi", type=int, required=True, help="last node index")
    grid = _Parser(add_help=False)
    grid.add_argument("--grid", required=True, help="real grid LO:HI:STEP")
    out = _Parser(add_help=False)
    out.add_argument("--out", default="-", help="output path, - for stdout")

    p = sub.add_parser(
        "nodes", parents=[hb, hb2_opt, window, out],
        help="solve a node window, write CSV n,lambda,residual[,re,im]",
    )
    p.add_argument("--signal", help="combination JSON to sample at the nodes")

    p = sub.add_parser(
        "kernel", parents=[hb, grid, out],
        help="tabulate K(center, x) on a grid, write CSV x,re,im",
    )
    p.add_argument("--center", required=True, help="kernel center RE or RE,IM")

    p = sub.add_parser(
        "reconstruct", parents=[hb, hb2_opt, window, grid, out],
        help="rebuild a function from node samples, write CSV z,re,im",
    )
    p.add_argument("--samples", required=True, help="sample CSV with columns n,re,im")
    p.add_argument("--reference", help="combination JSON to compare against")

    p = sub.add_parser(
        "bounds", parents=[hb, hb2_opt, window, out],
        help="estimate frame bounds over the window, write JSON",
    )
    p.add_argument("--normalize", action="store_true", help="weight nodes by 1/K(l,l)")
    p.add_argument("--probes", default=_DEFAULT_PROBES, help="comma-separated probe points")

    p = sub.add_parser(
        "multiplex", parents=[hb, hb2_req, window, grid, out],
        help="encode two signals on one node stream, decode, write JSON report",
    )
    p.add_argument("--f", required=True, help="combination JSON in the first space")
    p.add_argument("--g", required=True, help="combination JSON in the second space")
    p.add_argument("--sigma", type=float, default=0.0, help="additive noise level")
    p.add_argument("--drop", type=float, default=0.0, help="sample drop probability")
    p.add_argument("--seed", type=int, default=0, help="channel RNG seed")
    p.add_argument("--trials", type=int, default=1, help="number of channel draws")
    p.add_argument("--stream-out", help="also write the clean stream CSV here")

    p = sub.add_parser(
        "verify", parents=[out],
        help="run the built-in invariant suite (exit 2 on any failure)",
    )
    p.add_argument("--pair", choices=["pw", "poly", "all"], default="all")
    p.add_argument("--fast", action="store_true", help="smaller windows, quicker run")

    return parser


def _config_from_args(args, tols):
    unknown = set(tols) - _KNOWN_TOLS[args.command]
    if unknown:
        allowed = sorted(_KNOWN_TOLS[args.command])
        raise CLIError(
            f"unknown tolerance {sorted(unknown)} for {args.command!r}; "
            f"allowed: {allowed or 'none'}"
        )
    hb_specs = tuple(
        s for s in (getattr(args, "hb", None), getattr(args, "hb2", None)) if s
    )
    window = None
    if hasattr(args, "n_lo"):
        if args.n_lo > args.n_hi:
            raise CLIError(f"--n-lo {args.n_lo} exceeds --n-hi {args.n_hi}")
        window = (args.n_lo, args.n_hi)
    grid = _parse_grid(args.grid) if getattr(args, "grid", None) else None
    return RunConfig(
        command=args.command,
        hb_specs=hb_specs,
        alpha=getattr(args, "alpha", 0.0),
        window=window,
        grid=grid,
        tolerances=dict(tols),
        seed=getattr(args, "seed", None),
        output_path=getattr(args, "out", None),
    )


# flags whose values may start with '-' (grids, centers, probe lists);
# joined with '=' so argparse does not mistake the value for an option
_DASH_VALUED = {"--grid", "--center", "--probes"}


def _join_dash_values(argv):
    out, i = [], 0
    while i < len(argv):
        if argv[i] in _DASH_VALUED and i + 1 < len(argv):
            out.append(argv[i] + "=" + argv[i + 1])
            i += 2
        else:
            out.append(argv[i])
            i += 1
    return out


def main(argv=None):
    if argv is None:
        argv = sys.argv[1:]
    try:
        rest, tols = _split_tolerances(_join_dash_values(list(argv)))
        args = _build_parser().parse_args(rest)
        config = _config_from_args(args, tols)
        return _DISPATCH[args.command](config, args)
    except (PhaseRangeError, SolverConvergenceError, IllConditionedError) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return 2
    except (CLIError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
