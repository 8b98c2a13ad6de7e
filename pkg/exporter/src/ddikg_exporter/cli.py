"""Command-line entry point: raw.tsv -> instances.jsonl."""

from __future__ import annotations

import argparse
import logging
import sys

from .export import DEFAULT_CLASSES, DEFAULT_MAX_LENGTH, ExporterError, export
from .raw import RawParseError, read_raw

logger = logging.getLogger(__name__)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ddikg-export",
        description="Run a contextual encoder over marked sentences and "
        "write relation-classification instances.",
    )
    parser.add_argument("--raw", required=True, help="raw.tsv input")
    parser.add_argument("--encoder", required=True,
                        help="encoder name or local directory")
    parser.add_argument("--out", required=True, help="instances.jsonl output")
    parser.add_argument("--max-len", type=int, default=DEFAULT_MAX_LENGTH)
    parser.add_argument("--classes", nargs="+", default=list(DEFAULT_CLASSES))
    return parser


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        raw = read_raw(args.raw)
        with open(args.out, "w", encoding="utf-8") as sink:
            stats = export(
                raw, args.encoder, sink, max_length=args.max_len, classes=args.classes
            )
    except (ExporterError, RawParseError, ValueError) as exc:
        print(f"ddikg-export: error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"ddikg-export: i/o error: {exc}", file=sys.stderr)
        return 2
    print(
        f"wrote {stats.written} instance(s), skipped {len(stats.skipped)}",
        file=sys.stderr,
    )
    for ident, reason in stats.skipped:
        print(f"  skipped {ident}: {reason}", file=sys.stderr)
    return 0


def main() -> None:
    logging.basicConfig(stream=sys.stderr, level=logging.WARNING, format="%(message)s")
    sys.exit(run())


if __name__ == "__main__":
    main()
