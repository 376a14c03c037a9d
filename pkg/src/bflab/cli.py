"""Command line interface.

    bfl verify  --config alg.toml [--out report.json] [--jobs N] [--fig grid.png]
    bfl diagram --config alg.toml (--eq NAME | --inline "LHS == RHS") [--moves file]
    bfl export  --config alg.toml --out directory

Exit codes: 0 every asserted check holds, 1 some asserted check is refuted,
2 configuration or diagram-syntax problems, 3 internal errors.  Observational
results never affect the exit code.  ``BFL_STREAM_THRESHOLD`` overrides the
dense/streaming equality cutoff.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import diagram as dg, report as rp, tensor as tz
from .config import build_algebra, load_config
from .errors import ArityError, BflError, ConfigError, ParseError
from .runner import Builder, diagram_context, run_suites


def cmd_verify(args) -> int:
    cfg = load_config(args.config)
    if args.jobs:
        cfg.jobs = args.jobs
    report = run_suites(cfg)
    out_path = args.out or cfg.out
    if out_path:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(rp.to_json(report))
        base, _ = os.path.splitext(out_path)
        with open(base + ".tsv", "w", encoding="utf-8") as fh:
            fh.write(rp.to_tsv(report))
    if args.fig:
        rp.render_figure(report, args.fig)
    sys.stdout.write(rp.to_text(report))
    summary = report["summary"]
    if summary["failed"]:
        return 1
    if summary["errors"]:
        return 3
    return 0


def cmd_diagram(args) -> int:
    cfg = load_config(args.config)
    if cfg.stream_threshold is not None:
        tz.set_stream_threshold(cfg.stream_threshold)
    moves = dg.default_moves()
    if args.moves:
        try:
            with open(args.moves, "r", encoding="utf-8") as fh:
                moves.update(dg.parse_move_file(fh.read()))
        except OSError as exc:
            raise ConfigError(f"cannot read moves file: {exc}") from exc
    if args.eq:
        if args.eq not in moves:
            raise ConfigError(f"unknown equation {args.eq!r}; known: {sorted(moves)}")
        move = moves[args.eq]
    else:
        move = dg.parse_equation(f"inline : {args.inline}")
    builder = Builder(build_algebra(cfg))
    ctx = diagram_context(builder)
    ok, witnesses = dg.check_equation(move, ctx)
    verdict = {
        (True, False): "holds",
        (False, False): "REFUTED",
        (True, True): "observational: holds",
        (False, True): "observational: fails",
    }[(ok, move.observational)]
    print(f"{move.name}: {verdict}")
    print(f"  lhs: {dg.to_text(move.lhs)}")
    print(f"  rhs: {dg.to_text(move.rhs)}")
    for w in witnesses:
        print(f"  witness out={w['out']} in={w['in']}: lhs={w['lhs']} rhs={w['rhs']}")
    if args.out:
        payload = {
            "equation": move.name,
            "lhs": dg.to_text(move.lhs),
            "rhs": dg.to_text(move.rhs),
            "observational": move.observational,
            "holds": ok,
            "witnesses": witnesses,
        }
        with open(args.out, "w", encoding="utf-8") as fh:
            json.dump(payload, fh, indent=2)
            fh.write("\n")
    if move.observational or ok:
        return 0
    return 1


EXPORT_MAPS = (
    ("mu", lambda b: b.h.mu),
    ("unit", lambda b: b.h.unit),
    ("delta", lambda b: b.h.delta),
    ("counit", lambda b: b.h.counit),
    ("antipode", lambda b: b.h.antipode),
    ("integral_element", lambda b: b.cupcap()[1].Lambda),
    ("integral_functional", lambda b: b.cupcap()[1].functional),
    ("cup", lambda b: b.cupcap()[0].cup),
    ("cap", lambda b: b.cupcap()[0].cap),
    ("beta", lambda b: b.braid().beta),
    ("theta", lambda b: b.twist().theta),
    ("theta_loop", lambda b: b.twist().Theta),
)


def cmd_export(args) -> int:
    cfg = load_config(args.config)
    builder = Builder(build_algebra(cfg))
    # build every map before touching the filesystem: a failed build writes nothing
    blobs = {name: tz.serialize(fn(builder)) for name, fn in EXPORT_MAPS}
    blobs["fingerprint"] = builder.h.fingerprint() + "\n"
    os.makedirs(args.out, exist_ok=True)
    for name, text in blobs.items():
        suffix = ".tensor" if name != "fingerprint" else ".txt"
        with open(os.path.join(args.out, name + suffix), "w", encoding="utf-8") as fh:
            fh.write(text)
    print(f"exported {len(blobs) - 1} tensors to {args.out}")
    return 0


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="bfl", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p_verify = sub.add_parser("verify", help="run verification suites")
    p_verify.add_argument("--config", required=True)
    p_verify.add_argument("--out", default="")
    p_verify.add_argument("--jobs", type=int, default=0)
    p_verify.add_argument("--fig", default="", help="render the check grid to this file")
    p_verify.set_defaults(fn=cmd_verify)

    p_diag = sub.add_parser("diagram", help="check one diagram equation")
    p_diag.add_argument("--config", required=True)
    group = p_diag.add_mutually_exclusive_group(required=True)
    group.add_argument("--eq", default="")
    group.add_argument("--inline", default="")
    p_diag.add_argument("--moves", default="", help="extra equation file")
    p_diag.add_argument("--out", default="")
    p_diag.set_defaults(fn=cmd_diagram)

    p_export = sub.add_parser("export", help="serialize the derived structures")
    p_export.add_argument("--config", required=True)
    p_export.add_argument("--out", required=True)
    p_export.set_defaults(fn=cmd_export)
    return parser


def main(argv=None) -> int:
    args = make_parser().parse_args(argv)
    try:
        return args.fn(args)
    except (ConfigError, ParseError, ArityError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (BflError, OSError) as exc:
        print(f"internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
