"""Command line entry point and CSV/JSON report writer."""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import sys
from pathlib import Path
from typing import Sequence

from .runner import (
    EXPERIMENTS,
    CheckpointMismatch,
    ExperimentSpec,
    RunResult,
    run,
    workers_or_default,
)
from .sieve import DEFAULT_SEGMENT_SIZE
from .stats import unbiased_ratio

COLUMNS = (
    "kind",
    "exponent",
    "a",
    "b",
    "r",
    "r0",
    "rel_diff",
    "epsilon",
    "expected_b",
    "deficit",
    "redistribution_share",
)
TABLE_KINDS = (
    "twins",
    "isolated",
    "sqf-twins",
    "sqf-twins-noprimes",
    "sqf-neighbors",
    "sqf-neighbors-noprimes",
)


def _sig6(x: float) -> float:
    return float(f"{x:.6g}")


def _row(result: RunResult) -> dict:
    spec, t, rep = result.spec, result.tally, result.report
    row = {
        "kind": spec.kind,
        "exponent": spec.exponent if spec.count is None else None,
        "count": spec.scale,
        "a": t.a,
        "b": t.b,
    }
    if rep is None:
        row.update(dict.fromkeys(COLUMNS[4:]))
    else:
        row.update(
            r=_sig6(rep.r),
            r0=_sig6(rep.r0),
            rel_diff=_sig6(rep.rel_diff),
            epsilon=rep.epsilon,
            expected_b=rep.expected_b,
            deficit=rep.deficit,
            redistribution_share=_sig6(rep.redistribution_share),
        )
    return row


def emit_report(results: Sequence[RunResult], fmt: str = "csv") -> bytes:
    """Serialize results; the output depends only on the tallies, never on timing."""
    if not results:
        raise ValueError("no results to report")
    rows = [_row(r) for r in results]
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(COLUMNS)
        for row in rows:
            writer.writerow(
                "" if row[c] is None else (f"{row[c]:.6g}" if isinstance(row[c], float) else row[c])
                for c in COLUMNS
            )
        return buf.getvalue().encode()
    if fmt == "json":
        ordered = [{k: row[k] for k in ("kind", "exponent", "count") + COLUMNS[2:]} for row in rows]
        return (json.dumps(ordered, indent=2) + "\n").encode()
    raise ValueError(f"unsupported report format {fmt!r}")


def _write(data: bytes, output: str | None) -> None:
    if output is None:
        sys.stdout.buffer.write(data)
        sys.stdout.flush()
    else:
        Path(output).write_bytes(data)


def _cmd_run(args) -> int:
    if args.count is None and args.exponent is None:
        raise SystemExit("primebias run: one of --exponent or --count is required")
    ckpt = args.checkpoint
    if ckpt is not None and Path(ckpt).exists() and not (args.resume or args.force):
        raise SystemExit(f"checkpoint {ckpt} exists; pass --resume to continue or --force to start over")
    if args.resume and (ckpt is None or not Path(ckpt).exists()):
        raise SystemExit("--resume needs an existing --checkpoint file")
    if args.force and not args.resume and ckpt is not None and Path(ckpt).exists():
        Path(ckpt).unlink()

    spec = ExperimentSpec(
        kind=args.experiment,
        exponent=args.exponent,
        count=args.count,
        segment_size=args.segment_size,
        threads=workers_or_default(args.threads),
        checkpoint_path=ckpt,
        checkpoint_every=args.checkpoint_every,
    )
    try:
        result = run(spec, force=args.force)
    except CheckpointMismatch as exc:
        raise SystemExit(f"primebias run: {exc} (pass --force)")
    logging.getLogger("primebias").info(
        "%s scale=%d a=%d b=%d in %.2fs", spec.kind, spec.scale, result.tally.a, result.tally.b, result.wall_time
    )
    _write(emit_report([result], args.format), args.output)
    return 0


def _cmd_table(args) -> int:
    kinds = TABLE_KINDS if args.controls else TABLE_KINDS[:2]
    threads = workers_or_default(args.threads)
    results = []
    for k in range(args.min_exponent, args.max_exponent + 1):
        for kind in kinds:
            spec = ExperimentSpec(kind=kind, exponent=k, segment_size=args.segment_size, threads=threads)
            result = run(spec)
            logging.getLogger("primebias").info(
                "%s 10^%d: a=%d b=%d (%.1fs)", kind, k, result.tally.a, result.tally.b, result.wall_time
            )
            results.append(result)
    _write(emit_report(results, args.format), args.output)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="primebias",
        description="Count twin and isolated primes next to squarefree multiples of 6.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--segment-size", type=int, default=DEFAULT_SEGMENT_SIZE)
        p.add_argument("--threads", type=int, default=None, help="worker processes (default: all CPUs)")
        p.add_argument("--output", default=None, help="report path (default: stdout)")
        p.add_argument("--format", choices=("csv", "json"), default="csv")
        p.add_argument("-q", "--quiet", action="store_true", help="suppress progress on stderr")

    p = sub.add_parser("run", help="run one experiment")
    p.add_argument("--experiment", required=True, choices=EXPERIMENTS)
    p.add_argument("--exponent", type=int, default=None, help="scale 10^k")
    p.add_argument("--count", type=int, default=None, help="explicit scale; overrides --exponent")
    p.add_argument("--checkpoint", default=None)
    p.add_argument("--checkpoint-every", type=int, default=16, help="segments between checkpoints")
    p.add_argument("--resume", action="store_true")
    p.add_argument("--force", action="store_true", help="discard an existing or mismatched checkpoint")
    common(p)
    p.set_defaults(func=_cmd_run)

    p = sub.add_parser("table", help="a/b tallies and excess values for 10^min .. 10^max")
    p.add_argument("--max-exponent", type=int, required=True)
    p.add_argument("--min-exponent", type=int, default=6)
    p.add_argument("--controls", action=argparse.BooleanOptionalAction, default=True,
                   help="include the squarefree control experiments")
    common(p)
    p.set_defaults(func=_cmd_table)

    p = sub.add_parser("constants", help="print the unbiased ratio")
    p.set_defaults(func=lambda args: print(f"R0 = {unbiased_ratio():.4f} ({unbiased_ratio()!r})") or 0)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=logging.WARNING if getattr(args, "quiet", False) else logging.INFO,
        format="%(asctime)s %(levelname)s %(message)s",
        stream=sys.stderr,
    )
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
