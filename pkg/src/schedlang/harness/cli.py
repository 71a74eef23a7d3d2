"""Command line: ``python -m schedlang {serve,run,analyze}``."""

from __future__ import annotations

import argparse
import logging
import sys
from collections import Counter
from dataclasses import replace
from pathlib import Path

from ..coconuts import KernelConfig
from ..gsi.server import GsiServer
from .corpus import analyze_corpus, report_jsonl
from .runner import run_scenario
from .scenario import ScenarioError, load_scenario


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="schedlang", description="Appointment-scheduling language server and agents")
    parser.add_argument("--language", choices=("de", "en"), default=None, help="session language")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    serve = sub.add_parser("serve", help="run the TCP language server")
    serve.add_argument("--host", default="127.0.0.1")
    serve.add_argument("--port", type=int, default=7070)
    serve.add_argument("--config", type=Path, help="kernel config JSON")

    run = sub.add_parser("run", help="replay a scenario file")
    run.add_argument("scenario", type=Path)
    run.add_argument("--transcript", type=Path, help="write JSONL transcript here (default: stdout)")

    analyze = sub.add_parser("analyze", help="analyze a directory of message files")
    analyze.add_argument("corpus", type=Path)
    analyze.add_argument("--report", type=Path, help="write JSONL report here (default: stdout)")
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")

    if args.command == "serve":
        config = KernelConfig.load(args.config) if args.config else KernelConfig.load()
        print(f"serving on {args.host}:{args.port}", file=sys.stderr)
        GsiServer(config).serve_forever(args.host, args.port)
        return 0

    if args.command == "run":
        try:
            scenario = load_scenario(args.scenario)
        except (ScenarioError, OSError) as exc:
            print(f"error: {exc}", file=sys.stderr)
            return 2
        if args.language:
            scenario = replace(scenario, language=args.language)
        text = run_scenario(scenario).to_jsonl()
        if args.transcript:
            args.transcript.write_text(text, encoding="utf-8")
        else:
            sys.stdout.write(text)
        return 0

    if not args.corpus.is_dir():
        print(f"error: {args.corpus} is not a directory", file=sys.stderr)
        return 2
    rows = analyze_corpus(args.corpus, args.language or "de")
    text = report_jsonl(rows)
    if args.report:
        args.report.write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    counts = Counter(r["kind"] for r in rows)
    print(" ".join(f"{k}={counts[k]}" for k in sorted(counts)) or "no files", file=sys.stderr)
    return 0
