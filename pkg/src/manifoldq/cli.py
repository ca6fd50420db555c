"""Command-line entry point.

Subcommands are thin adapters over the library: synth, ph, id, metrics,
track. Data goes to files or stdout, logs go to stderr. Exit codes: 0 on
success, 1 on usage errors, 2 on data or computation errors.
"""

from __future__ import annotations

import argparse
import glob
import json
import sys
from pathlib import Path

from . import __version__
from .diagram_metrics import summarize
from .errors import MqError, ParameterError
from .geometry import (
    load_pointcloud,
    pairwise_distances,
    save_pointcloud,
    sniff_format,
    subsample,
)
from .intrinsic_dim import estimate_id_2nn, estimate_id_boxcount
from .persistence import compute_persistence, read_diagrams_csv, write_diagrams_csv
from .rips import build_rips, write_debug_dump
from .shapes import ShapeSpec, generate
from .tracker import HASH_ALGORITHM, TrackConfig, export_report, natural_sort_key, track


def _eps_arg(text: str):
    if text == "auto":
        return "auto"
    try:
        return float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a real number or 'auto', got {text!r}")


def _add_input_flags(sub):
    sub.add_argument("--input", required=True, help="point-cloud file (csv or packed-binary)")
    sub.add_argument("--format", default="auto", choices=["auto", "csv", "packed-binary"],
                     help="input format; 'auto' sniffs the magic bytes (default: auto)")
    sub.add_argument("--subsample", type=int, default=None, metavar="M",
                     help="analyze a seeded uniform subsample of M points")
    sub.add_argument("--seed", type=int, default=0, help="subsampling seed (default: 0)")


def _load_input(args):
    fmt = sniff_format(args.input) if args.format == "auto" else args.format
    pc = load_pointcloud(args.input, fmt)
    if args.subsample is not None:
        pc = subsample(pc, args.subsample, args.seed)
    return pc


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="manifoldq",
        description="Quantify the manifold underlying a point cloud: persistence diagrams, "
                    "diagram summaries, intrinsic dimension, and snapshot-series tracking.",
    )
    parser.add_argument("--version", action="version",
                        version=f"manifoldq {__version__} (config-hash: {HASH_ALGORITHM})")
    parser.add_argument("-v", "--verbose", action="count", default=0,
                        help="progress logs on stderr (repeat for more)")
    commands = parser.add_subparsers(dest="command", required=True)

    synth = commands.add_parser("synth", help="generate a synthetic cloud with known topology")
    synth.add_argument("--kind", required=True,
                       choices=["circle", "sphere", "torus", "swiss-roll", "uniform-cube", "gaussian-blob"])
    synth.add_argument("--n", type=int, required=True)
    synth.add_argument("--noise", type=float, default=0.0)
    synth.add_argument("--seed", type=int, default=0)
    synth.add_argument("--dim", type=int, default=None, help="ambient dim for uniform-cube / gaussian-blob")
    synth.add_argument("--out", required=True)
    synth.add_argument("--out-format", default="csv", choices=["csv", "packed-binary"])

    ph = commands.add_parser("ph", help="persistence diagrams of a cloud")
    _add_input_flags(ph)
    ph.add_argument("--max-dim", type=int, default=2,
                    help="highest simplex dimension built; homology reaches max-dim - 1 (default: 2)")
    ph.add_argument("--eps-max", type=_eps_arg, default="auto",
                    help="filtration threshold, or 'auto' for the enclosing diameter (default: auto)")
    ph.add_argument("--metric", default="euclidean", choices=["euclidean", "manhattan", "chebyshev"])
    ph.add_argument("--out", default=None, help="diagram CSV path (default: stdout)")
    ph.add_argument("--dump-filtration", default=None, metavar="PATH",
                    help="also write the filtration debug dump (one simplex per line)")

    ident = commands.add_parser("id", help="intrinsic-dimension estimate of a cloud")
    _add_input_flags(ident)
    ident.add_argument("--method", default="two-nn-mle",
                       choices=["two-nn-mle", "two-nn-fit", "box-count"])
    ident.add_argument("--discard-fraction", type=float, default=0.1,
                       help="largest 2NN ratios to trim (default: 0.1)")
    ident.add_argument("--n-scales", type=int, default=5, help="box-count scales (default: 5)")
    ident.add_argument("--scale-decay", type=float, default=0.5,
                       help="box-count scale shrink factor (default: 0.5)")
    ident.add_argument("--out", default=None, help="JSON path (default: stdout)")

    metrics = commands.add_parser("metrics", help="scalar summaries of a diagram CSV")
    metrics.add_argument("--input", required=True, help="diagram CSV as written by 'ph'")
    metrics.add_argument("--dim", type=int, default=None, help="summarize only this homology dimension")
    metrics.add_argument("--p", type=float, default=1.0)
    metrics.add_argument("--infinite-policy", default="exclude", choices=["exclude", "cap"])
    metrics.add_argument("--eps-max", type=float, default=None,
                         help="cap value; required with --infinite-policy cap")
    metrics.add_argument("--out", default=None, help="JSON path (default: stdout)")

    trk = commands.add_parser("track", help="metric trajectories of a snapshot series vs a reference")
    trk.add_argument("--snapshots", required=True,
                     help="glob pattern, or a .txt manifest with one path per line (order authoritative)")
    trk.add_argument("--reference", required=True)
    trk.add_argument("--subsample", type=int, required=True, metavar="M")
    trk.add_argument("--seed", type=int, default=0)
    trk.add_argument("--max-dim", type=int, default=3)
    trk.add_argument("--eps-max", type=_eps_arg, default="auto")
    trk.add_argument("--p", type=float, default=1.0)
    trk.add_argument("--infinite-policy", default="exclude", choices=["exclude", "cap"])
    trk.add_argument("--discard-fraction", type=float, default=0.1)
    trk.add_argument("--metric", default="euclidean", choices=["euclidean", "manhattan", "chebyshev"])
    trk.add_argument("--threads", type=int, default=None,
                     help="snapshot-analysis threads (default: machine parallelism)")
    trk.add_argument("--out", default=None, help="report CSV path")
    trk.add_argument("--json", dest="json_out", default=None, help="report JSON path")
    return parser


def _cmd_synth(args) -> int:
    spec = ShapeSpec(kind=args.kind, n=args.n, noise=args.noise, seed=args.seed, dim=args.dim)
    save_pointcloud(generate(spec), args.out, args.out_format)
    print(f"wrote {args.out}", file=sys.stderr)
    return 0


def _log(args, msg: str) -> None:
    if args.verbose:
        print(msg, file=sys.stderr)


def _cmd_ph(args) -> int:
    pc = _load_input(args)
    _log(args, f"loaded {pc.n} points in dimension {pc.ambient_dim}")
    dm = pairwise_distances(pc, args.metric)
    filtration = build_rips(dm, args.max_dim, args.eps_max)
    _log(args, f"filtration: {len(filtration)} simplices up to dim {args.max_dim}, "
               f"eps_max {filtration.eps_max:g}")
    if args.dump_filtration:
        write_debug_dump(filtration, args.dump_filtration)
    diagrams = compute_persistence(filtration)
    write_diagrams_csv(diagrams, args.out if args.out else sys.stdout)
    return 0


def _cmd_id(args) -> int:
    pc = _load_input(args)
    if args.method == "box-count":
        est = estimate_id_boxcount(pc, args.n_scales, args.scale_decay)
    else:
        method = "mle" if args.method == "two-nn-mle" else "fit"
        est = estimate_id_2nn(pc, args.discard_fraction, method)
    _emit_json(est.to_dict(), args.out)
    return 0


def _cmd_metrics(args) -> int:
    diagrams = read_diagrams_csv(args.input)
    if args.infinite_policy == "cap" and args.eps_max is None:
        raise ParameterError("--infinite-policy cap requires --eps-max")
    if args.dim is not None:
        diagrams = [d for d in diagrams if d.dim == args.dim]
        if not diagrams:
            raise ParameterError(f"no dimension-{args.dim} diagram in {args.input}")
    summaries = [
        summarize(d, p=args.p, policy=args.infinite_policy, eps_max=args.eps_max).to_dict()
        for d in diagrams
    ]
    _emit_json(summaries[0] if args.dim is not None else summaries, args.out)
    return 0


def _cmd_track(args) -> int:
    snapshots = _resolve_snapshots(args.snapshots)
    _log(args, f"tracking {len(snapshots)} snapshots against {args.reference}")
    if args.out is None and args.json_out is None:
        raise ParameterError("need --out and/or --json")
    cfg = TrackConfig(
        subsample=args.subsample,
        seed=args.seed,
        max_dim=args.max_dim,
        eps_max=args.eps_max,
        p=args.p,
        infinite_policy=args.infinite_policy,
        discard_fraction=args.discard_fraction,
        metric=args.metric,
    )
    report = track(snapshots, args.reference, cfg, threads=args.threads)
    if args.out:
        export_report(report, "csv", args.out)
        print(f"wrote {args.out}", file=sys.stderr)
    if args.json_out:
        export_report(report, "json", args.json_out)
        print(f"wrote {args.json_out}", file=sys.stderr)
    return 0


def _resolve_snapshots(pattern: str) -> list:
    """A .txt/.lst path is a manifest (one path per line, order authoritative);
    anything else is a glob, sorted with numeric awareness."""
    path = Path(pattern)
    if path.suffix in (".txt", ".lst") and path.is_file():
        lines = [ln.strip() for ln in path.read_text().splitlines()]
        return [ln for ln in lines if ln and not ln.startswith("#")]
    matches = glob.glob(pattern)
    if not matches:
        raise ParameterError(f"no snapshot files match {pattern!r}")
    return sorted(matches, key=natural_sort_key)


def _emit_json(payload, out_path) -> None:
    text = json.dumps(payload, indent=2, sort_keys=True) + "\n"
    if out_path:
        Path(out_path).write_text(text)
    else:
        sys.stdout.write(text)


_DISPATCH = {
    "synth": _cmd_synth,
    "ph": _cmd_ph,
    "id": _cmd_id,
    "metrics": _cmd_metrics,
    "track": _cmd_track,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse exits 2 on usage errors; remap to 1
        return 0 if exc.code in (0, None) else 1
    try:
        return _DISPATCH[args.command](args)
    except MqError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: I/O: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
