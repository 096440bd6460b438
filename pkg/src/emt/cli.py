"""Command line entry point: ``emt run FILE`` and ``emt bench``."""
from __future__ import annotations

import argparse
import sys

from . import _core
from .bench import run_bench, write_csv
from .script import EXIT_ERROR, run_script


def _classes(text: str) -> list[int]:
    try:
        out = [int(float(x)) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad class list {text!r}") from None
    if not out or any(e < 1 for e in out):
        raise argparse.ArgumentTypeError("class counts must be positive")
    return out


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="emt", description="E-graphs modulo theories")
    ap.add_argument("--backend", choices=["auto", *sorted(_core.BACKENDS)], default="auto",
                    help="union-find kernel (default: compiled if available)")
    sub = ap.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="execute a script")
    run.add_argument("file", help="script path, or - for standard input")

    bench = sub.add_parser("bench", help="time bottom-up matching on deep and wide termbanks (CSV)")
    bench.add_argument("--depth", type=int, default=6)
    bench.add_argument("--width", type=int, default=3)
    bench.add_argument("--classes", type=_classes, default=[100, 1000, 10000])
    bench.add_argument("--repeat", type=int, default=3)
    bench.add_argument("--max-tuples", type=int, default=2_000_000)
    return ap


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    backend = None if args.backend == "auto" else args.backend
    if args.command == "run":
        try:
            if args.file == "-":
                text = sys.stdin.read()
            else:
                with open(args.file, encoding="utf-8") as fh:
                    text = fh.read()
        except OSError as exc:
            print(f"emt: {exc}", file=sys.stderr)
            return EXIT_ERROR
        return run_script(text, backend=backend)
    rows = run_bench(args.depth, args.width, args.classes, args.repeat, backend, args.max_tuples)
    write_csv(rows)
    return 0


if __name__ == "__main__":
    sys.exit(main())
