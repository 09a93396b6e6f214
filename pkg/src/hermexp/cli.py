"""Command line entry point: ``hermexp <kind> --config PATH [--out DIR] [--threads N] [--seed S]``."""

from __future__ import annotations

import argparse
import sys

from .experiments import KINDS, ConfigError, load_config, persist, run


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="hermexp", description="Hermite expansion experiments")
    sub = parser.add_subparsers(dest="kind", required=True)
    for kind in KINDS:
        help_text = "run every experiment in the config" if kind == "verify-all" else f"run the {kind} experiments"
        p = sub.add_parser(kind, help=help_text)
        p.add_argument("--config", required=True, metavar="PATH", help="JSON experiment config")
        p.add_argument("--out", default="results", metavar="DIR", help="output directory (default: results)")
        p.add_argument("--threads", type=int, default=1, metavar="N", help="worker threads (default: 1)")
        p.add_argument("--seed", type=int, default=None, metavar="S", help="overrides the config seed")
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    if args.threads < 1:
        print("error: --threads must be at least 1", file=sys.stderr)
        return 2
    try:
        config = load_config(args.config, args.seed)
        kinds = None if args.kind == "verify-all" else (args.kind,)
        result = run(config, threads=args.threads, kinds=kinds)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    persist(result, config, args.out)
    failed = [r for r in result.rows if not r.passed]
    print(f"{len(result.rows)} rows, {len(failed)} failed; results in {args.out}")
    for r in failed:
        print(f"  FAIL {r.experiment_id} value={r.value:.6g} reference={r.reference:.6g} {r.params}")
    return 0 if not failed else 1


if __name__ == "__main__":
    sys.exit(main())
