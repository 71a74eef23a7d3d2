"""Acceptance gate: one test per criterion, each reported as a PASS/FAIL line."""

import datetime as dt
import random
import time

from schedlang.agent import Agent
from schedlang.featstruct import decode
from schedlang.generation import realize
from schedlang.goals import GenGoal
from schedlang.gsi.client import LocalClient
from schedlang.gsi.server import GsiServer
from schedlang.harness import fuzz_messages, load_scenario, negotiate, run_interleaved, run_scenario
from schedlang.harness.corpus import analyze_texts
from schedlang.il import Coop, ILExpression, il_from_fs
from schedlang.params import SessionParams
from schedlang.semantics import (
    DateSpec,
    Dialogue,
    DiscourseMemory,
    check_consistency,
    complete_endpoint,
    filter_actions,
    infer,
    resolve_date,
)
from schedlang.semantics.discourse import COMMITTED
from schedlang.temporal import Interval, TimePoint, weekday_of

from acceptance_log import criterion
from conftest import INITIATOR, SAMPLE, SEND, TURNS, turn
from oracles import grid_free_slots, minute_set, random_calendar, random_strategy, zeller_weekday
from test_harness import REFERENCE_MACHINE_TURNS

NOV4, NOV5 = dt.date(1996, 11, 4), dt.date(1996, 11, 5)


def il_of(record):
    return il_from_fs(decode(record["il"])) if record["il"] else None


@criterion(1, "golden transcript of the sample dialogue")
def test_golden_transcript():
    t0 = time.perf_counter()
    transcript = run_scenario(SAMPLE)
    elapsed = time.perf_counter() - t0
    assert transcript.to_jsonl() == (SAMPLE.parent / "expected.jsonl").read_text(encoding="utf-8")

    human = [r for r in transcript.records if r["sender"] == "H" and r["recipient"] == "A"]
    assert human[0]["deficiency"] == "weekday-date-mismatch"
    coops = [il_of(r).coop for r in human[1:]]
    assert coops == [Coop.PROPOSE, Coop.MODIFY, Coop.REFINE, Coop.FIX]
    assert il_of(human[1]).range == Interval.on(NOV4, 480, 1080)
    assert il_of(human[2]).range == Interval.on(NOV5, 480, 1080)
    assert il_of(human[3]).appt == Interval.on(NOV5, 600, 660)
    assert il_of(human[4]).appt == Interval.on(NOV5, 600, 660)

    machine = [r["text"] for r in transcript.records if r["sender"] in ("A", "B")]
    for line in REFERENCE_MACHINE_TURNS:
        assert line in machine
    assert elapsed < 5.0
    return f"{elapsed:.2f}s"


@criterion(2, "weekday/date consistency check")
def test_consistency_check():
    bad = check_consistency(DateSpec(day=2, month=11, year=1996, weekday=1))
    assert bad is not None and bad.kind == "weekday-date-mismatch"
    assert check_consistency(DateSpec(day=4, month=11, year=1996, weekday=1)) is None

    rnd = random.Random(2)
    first, span = dt.date(1900, 1, 1).toordinal(), (dt.date(2100, 12, 31) - dt.date(1900, 1, 1)).days
    mismatches = 0
    for _ in range(10_000):
        d = dt.date.fromordinal(first + rnd.randint(0, span))
        truth = zeller_weekday(d.year, d.month, d.day)
        wrong = truth % 7 + 1
        ok = (
            weekday_of(d.year, d.month, d.day) == truth
            and check_consistency(DateSpec(day=d.day, month=d.month, year=d.year, weekday=truth)) is None
            and check_consistency(DateSpec(day=d.day, month=d.month, year=d.year, weekday=wrong)).kind
            == "weekday-date-mismatch"
        )
        mismatches += not ok
    assert mismatches == 0
    return "10000 dates, 0 mismatches"


@criterion(3, "free-slot planner against a minute grid")
def test_free_slot_planner():
    rnd = random.Random(3)
    week = Interval(TimePoint.at(NOV4, 0), TimePoint.at(NOV4 + dt.timedelta(days=6), 1439))
    cases = 0
    for _ in range(1000):
        cal = random_calendar(rnd, NOV4)
        duration = rnd.choice([15, 30, 45, 60, 90, 120])
        if rnd.random() < 0.5:
            start, end = week.left.to_datetime(), week.right.to_datetime()
        else:
            start = dt.datetime.combine(NOV4, dt.time()) + dt.timedelta(minutes=rnd.randrange(0, 5 * 1440, 5))
            end = min(week.right.to_datetime(), start + dt.timedelta(minutes=rnd.randrange(30, 3 * 1440, 5)))
        rng = Interval(TimePoint.from_datetime(start), TimePoint.from_datetime(end))
        got = [(s.left.date(), s.left.clock(), s.right.clock()) for s in cal.free_slots(rng, duration)]
        assert got == grid_free_slots(cal, start, end, duration), (cal, start, end, duration)
        cases += 1
    return f"{cases} calendars"


def _workday(day, coop=Coop.PROPOSE):
    return ILExpression(coop, range=Interval.on(day, 480, 1080), duration=60)


def _memory(*ils):
    mem = DiscourseMemory()
    for il in ils:
        mem.add(COMMITTED, il)
    return mem


def _next_weekday(day, weekday, strict=False):
    d = day + dt.timedelta(days=1 if strict else 0)
    while d.isoweekday() != weekday:
        d += dt.timedelta(days=1)
    return d


@criterion(4, "anaphora order text, discourse, deictic")
def test_anaphora_order():
    rnd = random.Random(4)
    base = dt.date(1990, 1, 1).toordinal()
    for _ in range(500):
        text_day, memory_day, sent_day = (dt.date.fromordinal(base + rnd.randint(0, 7000)) for _ in range(3))
        wd = rnd.randint(1, 7)
        sent = dt.datetime.combine(sent_day, dt.time(9))
        cases = [
            ([_workday(text_day)], _memory(_workday(memory_day)), "text", _next_weekday(text_day, wd)),
            ([], _memory(_workday(memory_day)), "discourse", _next_weekday(memory_day, wd)),
            ([], DiscourseMemory(), "deictic", _next_weekday(sent_day, wd, strict=True)),
        ]
        for in_text, memory, stage, expected in cases:
            res = resolve_date(DateSpec(weekday=wd), in_text, memory, sent)
            assert res.stage == stage
            assert (res.first.year, res.first.month, res.first.day) == (expected.year, expected.month, expected.day)

    d = Dialogue()
    d.analyze(turn(1), SEND)
    d.analyze(turn(3), SEND)
    d.commit()
    d.record_generated(ILExpression(Coop.REJECT, range=Interval.on(NOV4, 480, 1080)))
    out = d.analyze(turn(6), SEND)
    assert out.top.coop is Coop.MODIFY
    assert out.top.range == Interval.on(NOV5, 480, 1080)
    return "1500 constructed cases + turn 06"


@criterion(5, "refine only under inclusion; endpoint from duration")
def test_inference():
    rnd = random.Random(5)
    refines = modifies = 0
    for _ in range(1000):
        day = NOV4 + dt.timedelta(days=rnd.randint(0, 2))
        a, b = sorted(rnd.sample(range(480, 1081, 15), 2))
        frame = Interval.on(day, a, b)
        other_day = day + dt.timedelta(days=rnd.choice([0, 0, 0, 1]))
        c, e = sorted(rnd.sample(range(480, 1081, 15), 2))
        cand = ILExpression(Coop.PROPOSE, appt=Interval.on(other_day, c, e), duration=e - c)
        got = infer(cand, _memory(ILExpression(Coop.PROPOSE, range=frame, duration=60)), ambiguous=True).coop
        inside = minute_set(cand.appt.left.to_datetime(), cand.appt.right.to_datetime()) <= minute_set(
            frame.left.to_datetime(), frame.right.to_datetime()
        )
        assert got is (Coop.REFINE if inside else Coop.MODIFY)
        refines += inside
        modifies += not inside
    assert refines > 50 and modifies > 50

    carries = 0
    for _ in range(1000):
        start = dt.datetime(1996, 1, 1) + dt.timedelta(days=rnd.randint(0, 1500), minutes=rnd.randrange(0, 1440, 5))
        duration = rnd.randint(1, 3 * 1440)
        left = TimePoint.from_datetime(start)
        il = ILExpression(Coop.PROPOSE, appt=Interval(left, TimePoint.at(start.date())), duration=duration)
        end = complete_endpoint(il).appt.right
        assert end.to_datetime() == start + dt.timedelta(minutes=duration)
        carries += end.date() != start.date()
    assert carries > 100
    return f"{refines} refine / {modifies} modify; {carries} day carries"


@criterion(6, "no fix or cancel after reject")
def test_action_filter():
    everything = [ILExpression(c) for c in Coop]
    for last in [None, *Coop]:
        kept = {il.coop for il in filter_actions(everything, last)}
        denied = {Coop.FIX, Coop.CANCEL} if last is Coop.REJECT else set()
        assert kept == set(Coop) - denied

    rnd = random.Random(6)
    checked = 0
    for _ in range(2000):
        names = ["C", "D", "E", "F"][: rnd.randint(2, 4)]
        agents = {n: Agent(n, random_calendar(rnd, NOV4), random_strategy(rnd)) for n in names}
        day = NOV4 + dt.timedelta(days=rnd.randint(0, 3))
        rng = Interval(TimePoint.at(day, 480), TimePoint.at(day + dt.timedelta(days=rnd.randint(0, 1)), 1080))
        out = negotiate(agents, names[0], tuple(names[1:]), rng, rnd.choice([30, 60, 90]))
        assert not out.violations
        if out.rounds > 8:
            continue
        checked += 1
        for partner in names[1:]:
            seq = out.pair_dialogue(names[0], partner)
            for prev, nxt in zip(seq, seq[1:]):
                assert not (prev is Coop.REJECT and nxt in (Coop.FIX, Coop.CANCEL)), seq
    assert checked >= 1000
    return f"{checked} dialogues with at most 8 rounds"


@criterion(7, "backtracking on turn 06")
def test_backtracking():
    client = LocalClient(GsiServer())
    client.open_session(SessionParams())
    assert client.analyze(turn(3), SEND).status == "ok"
    client.commit()
    first = client.analyze(turn(6), SEND)
    assert first.status == "ok" and first.payload["SOLUTIONS"] == 2
    top = il_from_fs(first.payload["IL"])
    second = client.next_solution()
    assert second.status == "ok" and second.payload["RANK"] == 1
    assert il_from_fs(second.payload["IL"]) != top
    assert client.next_solution().status == "exhausted"
    repair = client.repair()
    assert repair.status == "clarification-needed" and repair.payload["TEXT"]
    client.close()


@criterion(8, "ten interleaved sample dialogues equal the serial run")
def test_parallel_dialogues():
    baseline = run_scenario(SAMPLE).to_jsonl()
    server = GsiServer()
    transcripts = run_interleaved([load_scenario(SAMPLE) for _ in range(10)], server)
    assert [t.to_jsonl() for t in transcripts] == [baseline] * 10
    return "10 copies"


def _seed_texts():
    texts = [p.read_text(encoding="utf-8") for p in sorted(TURNS.iterdir())]
    for path in (SAMPLE, INITIATOR):
        texts += [line.split("|", 1)[1].strip() for line in path.read_text(encoding="utf-8").splitlines()
                  if line.startswith("send ")]
    return texts


@criterion(9, "fuzz corpus without crashes")
def test_robustness():
    rows = analyze_texts(fuzz_messages(10_000, _seed_texts(), seed=9))
    assert len(rows) == 10_000
    kinds = {}
    for row in rows:
        kinds[row["kind"]] = kinds.get(row["kind"], 0) + 1
    assert set(kinds) <= {"il", "clarification"}, kinds
    return ", ".join(f"{k}={v}" for k, v in sorted(kinds.items()))


def _same(a: ILExpression, b: ILExpression) -> bool:
    return (a.coop, a.appt, a.range, a.slots) == (b.coop, b.appt, b.range, b.slots)


@criterion(10, "analyze(realize(goal)) round trip")
def test_round_trip():
    server = GsiServer()
    agent_goals = 0
    for path in (SAMPLE, INITIATOR):
        agents = set(load_scenario(path).agents)
        sessions = {}
        for r in run_scenario(path).records:
            if r["il"] is None:
                continue
            key = (r["dialogue"], r["recipient"])
            if key not in sessions:
                sessions[key] = LocalClient(server)
                sessions[key].open_session()
            client = sessions[key]
            response = client.analyze(r["text"], dt.datetime.fromisoformat(r["time"]))
            if r["sender"] in agents:
                assert response.status == "ok", r["text"]
                assert _same(il_from_fs(response.payload["IL"]), il_of(r)), r["text"]
                agent_goals += 1
            if response.status == "ok":
                client.commit()
        for client in sessions.values():
            client.close()

    shapes = {
        "appt": dict(appt=Interval.on(NOV5, 600, 660), duration=60),
        "odd appt": dict(appt=Interval.on(NOV5, 585, 675), duration=90),
        "workday": dict(range=Interval.on(NOV5, 480, 1080), duration=60),
        "range": dict(range=Interval.on(NOV5, 600, 840), duration=60),
        "days": dict(range=Interval(TimePoint.at(NOV5, 480), TimePoint.at(NOV5 + dt.timedelta(days=2), 1080)), duration=60),
    }
    # Agents accept and confirm only concrete appointments, never ranges.
    kinds = {"reject": Coop.REJECT, "propose": Coop.PROPOSE, "cancel": Coop.CANCEL}
    grid = 0
    for language in ("de", "en"):
        for reference in ("pronoun", "full-name"):
            params = SessionParams(owner="Clara Conrad", owner_reference=reference, language=language)
            goals = [GenGoal(k, ILExpression(c, **s)) for k, c in kinds.items() for s in shapes.values()]
            for appt in ("appt", "odd appt"):
                goals.append(GenGoal("accept", ILExpression(Coop.ACCEPT, **shapes[appt])))
                goals.append(GenGoal("fix-confirm", ILExpression(Coop.FIX, **shapes[appt])))
            for slots in [(Interval.on(NOV5, 480, 720),),
                          (Interval.on(NOV5, 480, 720), Interval.on(NOV5, 960, 1080)),
                          (Interval.on(NOV5, 480, 720), Interval.on(NOV5 + dt.timedelta(days=2), 600, 700))]:
                for for_instance in (False, True):
                    il = ILExpression(Coop.PROVIDE_SLOTS, slots=slots, duration=60)
                    goals.append(GenGoal("provide-slots", il, for_instance=for_instance))
            for goal in goals:
                text = realize(goal, params)
                got = Dialogue(params).analyze(text, SEND).top
                assert got is not None and _same(got, goal.il), (language, text, got)
                grid += 1
    return f"{agent_goals} transcript goals, {grid} grid goals"
