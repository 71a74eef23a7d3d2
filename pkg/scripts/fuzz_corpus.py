"""Feed random and mutated messages through corpus analysis and tally the outcomes.

    python3 scripts/fuzz_corpus.py -n 2000 --seed 1 [--language en] [--report rows.jsonl]
"""

import argparse
import time
from collections import Counter
from importlib.resources import files

from schedlang.harness import fuzz_messages
from schedlang.harness.corpus import analyze_texts, report_jsonl


def seed_texts() -> list[str]:
    data = files("schedlang") / "data"
    texts = [p.read_text(encoding="utf-8") for p in sorted((data / "corpus" / "sample_turns").iterdir())]
    for name in ("sample", "initiator"):
        for line in (data / "scenarios" / name / "scenario.txt").read_text(encoding="utf-8").splitlines():
            if line.startswith("send "):
                texts.append(line.split("|", 1)[1].strip())
    return texts


def main() -> None:
    ap = argparse.ArgumentParser()
    ap.add_argument("-n", type=int, default=1000)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--language", choices=("de", "en"), default="de")
    ap.add_argument("--report")
    args = ap.parse_args()

    t0 = time.perf_counter()
    rows = analyze_texts(fuzz_messages(args.n, seed_texts(), args.seed), args.language)
    elapsed = time.perf_counter() - t0
    kinds = Counter(r["kind"] for r in rows)
    deficiencies = Counter(r["deficiency"] for r in rows if r["kind"] == "clarification")
    print(f"{len(rows)} messages in {elapsed:.1f}s ({1000 * elapsed / max(1, len(rows)):.1f} ms each)")
    for kind, count in kinds.most_common():
        print(f"  {kind:14s} {count}")
    for kind, count in deficiencies.most_common():
        print(f"    {kind:24s} {count}")
    for row in (r for r in rows if r["kind"] not in ("il", "clarification")):
        print("  !", row["file"], row["error"])
    if args.report:
        with open(args.report, "w", encoding="utf-8") as fh:
            fh.write(report_jsonl(rows))


if __name__ == "__main__":
    main()
