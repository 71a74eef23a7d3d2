import json
import threading

import pytest
from hypothesis import given, strategies as st

from schedlang.coconuts import (
    CCM,
    CapacityExceeded,
    Component,
    Exhausted,
    ExclusivityViolation,
    KernelConfig,
    Manager,
    Pool,
    ReleasedError,
    StateError,
    dispatch,
    make_plan,
)
from schedlang.gsi.protocol import Request
from schedlang.params import SessionParams

from conftest import turn


def ccm_with(solutions):
    ccm = CCM("semantics", Component("c", lambda: None))
    ccm.bind()
    ccm.store(solutions)
    return ccm


def test_three_solutions_then_exhausted():
    ccm = ccm_with(["a", "b", "c"])
    assert ccm.current() == "a"
    assert [ccm.backtrack(), ccm.backtrack()] == ["b", "c"]
    with pytest.raises(Exhausted):
        ccm.backtrack()
    with pytest.raises(Exhausted):
        ccm.backtrack()


@given(st.lists(st.integers(), max_size=10))
def test_backtracking_visits_each_solution_once(solutions):
    ccm = ccm_with(solutions)
    seen = [ccm.current()] if solutions else []
    while True:
        try:
            seen.append(ccm.backtrack())
        except Exhausted:
            break
    assert seen == solutions


def test_release_is_idempotent_and_final():
    ccm = ccm_with(["a", "b"])
    ccm.release()
    ccm.release()
    with pytest.raises(ReleasedError):
        ccm.backtrack()
    with pytest.raises(ReleasedError):
        ccm.run()
    assert ccm.read(1) == "b"


def test_buffer_limit():
    ccm = CCM("x", Component("c", lambda: None), buffer_limit=2)
    ccm.bind()
    ccm.store([1, 2, 3])
    assert ccm.buffer == [1, 2]


def test_ccms_share_one_component_serially():
    holders = []
    comp = Component("shared", lambda tag: holders.append(tag) or tag)
    a, b = CCM("a", comp), CCM("b", comp)
    a.bind()
    b.bind()
    threads = [threading.Thread(target=ccm.run, args=(ccm.name,)) for ccm in (a, b) for _ in range(20)]
    for t in threads:
        t.start()
    for t in threads:
        t.join()
    assert comp.calls == 40 and comp.holder is None
    assert sorted(set(holders)) == ["a", "b"]


def test_manager_exclusivity():
    m = Manager("m")
    m.enter("vs1")
    m.enter("vs1")
    with pytest.raises(ExclusivityViolation):
        m.enter("vs2")
    m.leave("vs1")
    m.enter("vs2")


def test_plans():
    plan = make_plan("analyze")
    assert plan.subgoals == ("extract", "interpret", "clarify")
    assert plan.resources["interpret"] == "semantics"
    assert make_plan("repair").subgoals == ("repair-goal", "realize", "record")


def analyze(vs, text):
    return dispatch(vs, Request("analyze", vs.session, {"TEXT": text, "SEND-TIME": "1996-10-28T09:00"}))


def test_next_solution_then_exhausted_then_repair():
    pool = Pool()
    vs = pool.create_vs("s1", SessionParams())
    analyze(vs, turn(3))
    dispatch(vs, Request("commit", "s1"))
    first = analyze(vs, turn(6))
    assert first.status == "ok" and first.payload["SOLUTIONS"] == 2
    second = dispatch(vs, Request("next-solution", "s1"))
    assert second.status == "ok" and second.payload["RANK"] == 1
    assert dispatch(vs, Request("next-solution", "s1")).status == "exhausted"
    assert dispatch(vs, Request("next-solution", "s1")).status == "exhausted"
    repair = dispatch(vs, Request("repair", "s1"))
    assert repair.status == "clarification-needed"
    assert repair.payload["TEXT"].startswith("COSMA konnte keine passende Deutung")


def test_reuse_leaks_nothing():
    pool = Pool(KernelConfig(capacity=1))
    vs = pool.create_vs("s1", SessionParams())
    analyze(vs, turn(11))
    dispatch(vs, Request("commit", "s1"))
    assert len(vs.dialogue.memory) == 1
    with pytest.raises(StateError):
        pool.reuse_vs(vs, "s2", SessionParams())
    dispatch(vs, Request("close-session", "s1"))
    again = pool.create_vs("s2", SessionParams(language="en"))
    assert again is vs
    assert len(again.dialogue.memory) == 0
    assert all(ccm.buffer == [] for ccm in again.ccms.values())
    assert again.params.language == "en"


def test_capacity():
    pool = Pool(KernelConfig(capacity=2))
    pool.create_vs("a", SessionParams())
    pool.create_vs("b", SessionParams())
    with pytest.raises(CapacityExceeded):
        pool.create_vs("c", SessionParams())
    assert len(pool.live()) == 2


def test_malformed_payload_keeps_system_usable():
    vs = Pool().create_vs("s", SessionParams())
    bad = dispatch(vs, Request("analyze", "s", {"TEXT": 5}))
    assert bad.status == "error" and bad.error[0] == "bad-payload"
    bad_goal = dispatch(vs, Request("generate", "s", {"GOAL": {"KIND": "nonsense"}}))
    assert bad_goal.error[0] == "bad-payload"
    assert analyze(vs, turn(11)).status == "ok"
    assert all(m.owner is None for m in vs.managers)


def test_closed_session_refuses_work():
    vs = Pool().create_vs("s", SessionParams())
    dispatch(vs, Request("close-session", "s"))
    assert analyze(vs, turn(11)).error[0] == "bad-state"


def test_event_log(tmp_path):
    log = tmp_path / "events.jsonl"
    vs = Pool(KernelConfig(log_path=str(log))).create_vs("s", SessionParams())
    analyze(vs, turn(11))
    rows = [json.loads(line) for line in log.read_text().splitlines()]
    assert {r["dialogue"] for r in rows} == {"s"}
    assert [r["step"] for r in rows if r["goal"] == "analyze"][:2] == ["extract", "interpret"]


def test_config_file(tmp_path):
    assert KernelConfig.load().server_name == "COSMA"
    path = tmp_path / "k.json"
    path.write_text('{"capacity": 0}')
    with pytest.raises(ValueError):
        KernelConfig.load(path)
    path.write_text('{"colour": 1}')
    with pytest.raises(ValueError):
        KernelConfig.load(path)
