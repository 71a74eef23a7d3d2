"""Batch of agent-only negotiations over random calendars and strategies.

Prints how often a meeting gets fixed, the round distribution, and any
protocol violation or forbidden reject->fix / reject->cancel sequence.

    python3 scripts/simulate_negotiations.py -n 1000 --seed 7
"""

import argparse
import datetime as dt
import random
from collections import Counter

from schedlang.agent import Agent, Calendar, Entry, StrategyConfig
from schedlang.harness import negotiate
from schedlang.il import Coop
from schedlang.temporal import Interval, TimePoint

MONDAY = dt.date(1996, 11, 4)


def random_calendar(rnd: random.Random, max_entries: int) -> Calendar:
    entries = []
    for _ in range(rnd.randint(0, max_entries)):
        day = MONDAY + dt.timedelta(days=rnd.randint(0, 4))
        start = rnd.randrange(480, 1050, 5)
        entries.append(Entry(day, start, min(1080, start + rnd.randrange(15, 240, 5))))
    return Calendar(min_gap=rnd.choice([0, 0, 15]), entries=entries)


def random_strategy(rnd: random.Random) -> StrategyConfig:
    return StrategyConfig(
        counter_proposals=rnd.random() < 0.5,
        free_slot_offering=rnd.random() < 0.7,
        max_slots_listed=rnd.randint(1, 4),
        counter_horizon_days=rnd.randint(0, 7),
    )


def main() -> None:
    ap = argparse.ArgumentParser()
    ap.add_argument("-n", type=int, default=1000)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--max-entries", type=int, default=5)
    args = ap.parse_args()

    rnd = random.Random(args.seed)
    phases, rounds = Counter(), Counter()
    violations = forbidden = 0
    for i in range(args.n):
        names = ["C", "D", "E", "F"][: rnd.randint(2, 4)]
        agents = {n: Agent(n, random_calendar(rnd, args.max_entries), random_strategy(rnd)) for n in names}
        day = MONDAY + dt.timedelta(days=rnd.randint(0, 3))
        rng = Interval(TimePoint.at(day, 480), TimePoint.at(day + dt.timedelta(days=rnd.randint(0, 1)), 1080))
        out = negotiate(agents, names[0], tuple(names[1:]), rng, rnd.choice([30, 60, 90]), nid=f"N#{i}")
        phases[out.phase] += 1
        rounds[out.rounds] += 1
        violations += len(out.violations)
        for partner in names[1:]:
            seq = out.pair_dialogue(names[0], partner)
            forbidden += sum(a is Coop.REJECT and b in (Coop.FIX, Coop.CANCEL) for a, b in zip(seq, seq[1:]))

    print(f"{args.n} negotiations: " + ", ".join(f"{k}={v}" for k, v in sorted(phases.items())))
    print("rounds: " + " ".join(f"{k}:{v}" for k, v in sorted(rounds.items())))
    print(f"protocol violations: {violations}; reject->fix/cancel: {forbidden}")


if __name__ == "__main__":
    main()
