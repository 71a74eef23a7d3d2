"""Replay the shipped sample dialogue and print it turn by turn.

    python3 scripts/run_sample.py [--scenario initiator] [--language en] [--jsonl out.jsonl]
"""

import argparse
import time
from dataclasses import replace
from importlib.resources import files

from schedlang.harness import load_scenario, run_scenario


def main() -> None:
    ap = argparse.ArgumentParser()
    ap.add_argument("--scenario", choices=("sample", "initiator"), default="sample")
    ap.add_argument("--language", choices=("de", "en"))
    ap.add_argument("--jsonl", help="also write the transcript here")
    args = ap.parse_args()

    path = files("schedlang") / "data" / "scenarios" / args.scenario / "scenario.txt"
    scenario = load_scenario(str(path))
    if args.language:
        scenario = replace(scenario, language=args.language)
    t0 = time.perf_counter()
    transcript = run_scenario(scenario)
    elapsed = time.perf_counter() - t0

    for r in transcript.records:
        arrow = f"{r['sender']} -> {r['recipient'] or '*'}"
        note = r.get("deficiency") or r.get("violation") or r.get("outcome") or ""
        print(f"{r['seq']:3d} {r['time']} {arrow:8s} {r['text'] or ''}" + (f"  [{note}]" if note else ""))
    print(f"\n{len(transcript)} records in {elapsed:.2f}s")
    if args.jsonl:
        transcript.write(args.jsonl)


if __name__ == "__main__":
    main()
