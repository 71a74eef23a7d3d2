import datetime as dt

import pytest
from hypothesis import given, strategies as st

from schedlang.goals import Inconsistency
from schedlang.il import Coop, ILExpression, informativeness
from schedlang.params import SessionParams
from schedlang.semantics import (
    DateSpec,
    Dialogue,
    DiscourseMemory,
    Partial,
    Span,
    TextStructure,
    anchor,
    build_clarification,
    check_consistency,
    complete_endpoint,
    filter_actions,
    infer,
    merge_repair,
    rank_sentence,
    rank_text,
    resolve_date,
)
from schedlang.semantics.discourse import COMMITTED
from schedlang.temporal import Interval, TimePoint

from conftest import SEND, turn

PARAMS = SessionParams()
NOV4 = dt.date(1996, 11, 4)
NOV5 = dt.date(1996, 11, 5)


def day_range(day, start=8 * 60, end=18 * 60, coop=Coop.PROPOSE):
    return ILExpression(coop, range=Interval.on(day, start, end), duration=60)


def memory_with(*ils):
    mem = DiscourseMemory()
    for il in ils:
        mem.add(COMMITTED, il)
    return mem


# -- consistency -------------------------------------------------------------


def test_weekday_mismatch_flagged():
    bad = check_consistency(DateSpec(day=2, month=11, year=1996, weekday=1))
    assert bad == Inconsistency("weekday-date-mismatch", TimePoint(1996, 11, 2), stated=1, computed=6)


def test_consistent_monday_passes():
    assert check_consistency(DateSpec(day=4, month=11, year=1996, weekday=1)) is None


def test_invalid_dates():
    assert check_consistency(DateSpec(day=31, month=2)).kind == "invalid-date"
    assert check_consistency(DateSpec(day=29, month=2, year=1997)).kind == "invalid-date"
    assert check_consistency(DateSpec(day=29, month=2)) is None  # year still open


# -- anaphora ----------------------------------------------------------------

dates = st.dates(dt.date(1990, 1, 1), dt.date(2010, 12, 31))
weekdays = st.integers(1, 7)


def first_on_or_after(day, weekday, strict=False):
    d = day + dt.timedelta(days=1 if strict else 0)
    while d.isoweekday() != weekday:
        d += dt.timedelta(days=1)
    return d


def resolved(res):
    return dt.date(res.first.year, res.first.month, res.first.day)


@given(weekdays, dates, dates, dates)
def test_text_antecedent_beats_memory_and_deixis(wd, in_text, in_memory, sent):
    res = resolve_date(
        DateSpec(weekday=wd), [day_range(in_text)], memory_with(day_range(in_memory)), dt.datetime.combine(sent, dt.time(9))
    )
    assert res.stage == "text"
    assert resolved(res) == first_on_or_after(in_text, wd)


@given(weekdays, dates, dates)
def test_memory_beats_deixis(wd, in_memory, sent):
    res = resolve_date(DateSpec(weekday=wd), [], memory_with(day_range(in_memory)), dt.datetime.combine(sent, dt.time(9)))
    assert res.stage == "discourse"
    assert resolved(res) == first_on_or_after(in_memory, wd)


@given(weekdays, dates)
def test_deixis_last(wd, sent):
    res = resolve_date(DateSpec(weekday=wd), [], DiscourseMemory(), dt.datetime.combine(sent, dt.time(9)))
    assert res.stage == "deictic"
    assert resolved(res) == first_on_or_after(sent, wd, strict=True)


def test_most_recent_memory_record_wins():
    mem = memory_with(day_range(dt.date(1996, 11, 11)), day_range(NOV4))
    res = resolve_date(DateSpec(weekday=2), [], mem, SEND)
    assert resolved(res) == NOV5


def test_explicit_date_needs_no_context():
    res = resolve_date(DateSpec(day=5, month=11, year=1996), [], DiscourseMemory(), SEND)
    assert res.stage == "explicit"


def test_next_week_is_monday_to_sunday():
    res = resolve_date(DateSpec(rel="next-week"), [], DiscourseMemory(), dt.datetime(1996, 10, 30, 9))
    assert resolved(res) == dt.date(1996, 11, 4)
    assert (res.last.day, res.last.month) == (10, 11)


# -- anchoring ---------------------------------------------------------------


def test_date_only_becomes_workday_range():
    out = anchor(Partial(date=DateSpec(day=4, month=11, year=1996)), PARAMS, SEND, DiscourseMemory())
    assert out.range == Interval.on(NOV4, 8 * 60, 18 * 60)
    assert out.appt is None and out.duration == 60


def test_clock_time_becomes_appointment():
    out = anchor(Partial(action="refine", date=DateSpec(day=5, month=11, year=1996), start=600), PARAMS, SEND, DiscourseMemory())
    assert out.coop is Coop.REFINE
    assert out.appt == Interval.on(NOV5, 600, 660)


def test_workday_bounds_follow_params():
    params = SessionParams(workday_start=9 * 60, workday_end=17 * 60)
    out = anchor(Partial(date=DateSpec(day=4, month=11, year=1996)), params, SEND, DiscourseMemory())
    assert out.range == Interval.on(NOV4, 9 * 60, 17 * 60)


def test_vague_message_is_deficient():
    out = anchor(Partial(topic="Treffen"), PARAMS, SEND, DiscourseMemory())
    assert isinstance(out, Inconsistency) and out.kind == "empty-extraction"


def test_span_with_contradicting_duration_is_ill_formed():
    p = Partial(date=DateSpec(day=5, month=11, year=1996), span=Span(600, 700, "appt"), duration=30)
    assert anchor(p, PARAMS, SEND, DiscourseMemory()).kind == "ill-formed"


@given(
    st.integers(1, 28), st.integers(1, 12), st.integers(1990, 2010),
    st.one_of(st.none(), st.integers(8 * 60, 16 * 60)),
)
def test_anchoring_keeps_explicit_fields(day, month, year, start):
    out = anchor(Partial(date=DateSpec(day=day, month=month, year=year), start=start), PARAMS, SEND, DiscourseMemory())
    focus = out.focus()
    assert (focus.left.day, focus.left.month, focus.left.year) == (day, month, year)
    if start is not None:
        assert focus.left.clock() == start


# -- inference ---------------------------------------------------------------


def test_endpoint_from_duration():
    il = ILExpression(Coop.PROPOSE, appt=Interval(TimePoint(1996, 11, 5, hour=10, minute=0), TimePoint(1996, 11, 5)), duration=60)
    assert complete_endpoint(il).appt.right == TimePoint(1996, 11, 5, hour=11, minute=0)


def test_refine_inside_previous_interval():
    mem = memory_with(day_range(NOV5, coop=Coop.MODIFY))
    il = ILExpression(Coop.PROPOSE, appt=Interval.on(NOV5, 600, 660), duration=60)
    assert infer(il, mem, ambiguous=True).coop is Coop.REFINE


def test_modify_elsewhere():
    mem = memory_with(day_range(NOV4))
    assert infer(day_range(NOV5), mem, ambiguous=True).coop is Coop.MODIFY


def test_partial_overlap_is_modify():
    mem = memory_with(day_range(NOV5, 8 * 60, 12 * 60))
    il = ILExpression(Coop.PROPOSE, appt=Interval.on(NOV5, 11 * 60, 13 * 60), duration=120)
    assert infer(il, mem, ambiguous=True).coop is Coop.MODIFY


def test_explicit_action_not_reclassified():
    mem = memory_with(day_range(NOV5))
    il = ILExpression(Coop.FIX, appt=Interval.on(NOV5, 600, 660), duration=60)
    assert infer(il, mem, ambiguous=False).coop is Coop.FIX


def test_rejections_do_not_frame_refinement():
    mem = memory_with(day_range(NOV5), day_range(NOV4, coop=Coop.REJECT))
    assert mem.latest_committed_interval() == Interval.on(NOV5, 480, 1080)


# -- filtering and ranking ---------------------------------------------------


def test_filter_table():
    fix = ILExpression(Coop.FIX)
    cancel = ILExpression(Coop.CANCEL)
    accept = ILExpression(Coop.ACCEPT)
    assert filter_actions([fix, cancel], Coop.REJECT) == []
    assert filter_actions([accept], Coop.PROPOSE) == [accept]
    assert filter_actions([fix], Coop.ACCEPT) == [fix]


def test_appointment_outranks_range():
    rng = day_range(NOV5)
    appt = ILExpression(Coop.PROPOSE, appt=Interval.on(NOV5, 600, 660), duration=60)
    assert informativeness(appt) > informativeness(rng)
    assert rank_sentence([rng, appt]) == [appt, rng]
    assert rank_sentence([rng]) == [rng]


def test_expected_sentence_first():
    reject = [ILExpression(Coop.REJECT, range=Interval.on(NOV4, 480, 1080))]
    modify = [ILExpression(Coop.MODIFY, range=Interval.on(NOV5, 480, 1080))]
    assert rank_text([reject, modify], Coop.PROPOSE) == [reject, modify]  # both expected: tie by informativeness keeps order
    assert rank_text([reject, modify], Coop.PROVIDE_SLOTS) == [modify, reject]


# -- text structures and dialogue -------------------------------------------


def test_enumeration_once_then_exhausted():
    a, b = day_range(NOV4), day_range(NOV5)
    ts = TextStructure([[a], [b]])
    assert ts.current() == a
    assert ts.next_solution() == b
    assert ts.next_solution() is None
    assert ts.next_solution() is None
    assert TextStructure([]).current() is None


def test_turn01_asks_for_clarification():
    d = Dialogue()
    out = d.analyze(turn(1), SEND)
    assert out.status == "clarification-needed"
    assert out.goal.inconsistency.kind == "weekday-date-mismatch"


def test_repair_merges_with_stored_partial():
    d = Dialogue()
    d.analyze(turn(1), SEND)
    out = d.analyze(turn(3), SEND)
    assert out.status == "ok"
    assert out.top.coop is Coop.PROPOSE
    assert out.top.range == Interval.on(NOV4, 480, 1080)


def test_repair_still_inconsistent_continues():
    d = Dialogue()
    d.analyze(turn(1), SEND)
    out = d.analyze("Ich meinte Dienstag den 4. 11.", SEND)
    assert out.status == "clarification-needed"
    assert out.goal.inconsistency.kind == "weekday-date-mismatch"


def test_repair_without_time_continues():
    d = Dialogue()
    d.analyze(turn(1), SEND)
    assert d.analyze("Entschuldigung.", SEND).status == "clarification-needed"


def test_merge_repair_rules():
    stored = Partial(action="propose", date=DateSpec(day=2, month=11, year=1996, weekday=1), topic="Projektbegutachtung")
    merged = merge_repair(stored, Partial(date=DateSpec(day=4, month=11, weekday=1)))
    assert merged.date == DateSpec(day=4, month=11, year=1996, weekday=1)
    assert merged.action == "propose" and merged.topic == "Projektbegutachtung"
    assert merge_repair(stored, Partial()) is None


def test_turn06_tuesday_after_monday():
    d = Dialogue()
    d.analyze(turn(1), SEND)
    d.analyze(turn(3), SEND)
    d.commit()
    d.record_generated(ILExpression(Coop.REJECT, range=Interval.on(NOV4, 480, 1080)))
    out = d.analyze(turn(6), SEND)
    assert out.top.coop is Coop.MODIFY
    assert out.top.range == Interval.on(NOV5, 480, 1080)
    second = out.text.solutions()[1]
    assert second.coop is Coop.REJECT


def test_um_10_uses_committed_antecedent():
    d = Dialogue()
    d.memory.add(COMMITTED, day_range(NOV5, coop=Coop.MODIFY))
    out = d.analyze(turn(9), SEND)
    assert out.top.coop is Coop.REFINE
    assert out.top.appt == Interval.on(NOV5, 600, 660)


def test_turn11_fix():
    out = Dialogue().analyze(turn(11), SEND)
    assert out.top.coop is Coop.FIX
    assert out.top.appt == Interval.on(NOV5, 600, 660)


def test_commit_grows_memory():
    d = Dialogue()
    d.analyze(turn(11), SEND)
    d.commit()
    assert len(d.memory) == 1
    with pytest.raises(LookupError):
        Dialogue().commit()


def test_clarification_payload_carries_misspellings():
    goal = build_clarification(Inconsistency("empty-extraction"), ("Montak",))
    assert goal.kind == "clarification-request"
    assert goal.misspellings == ("Montak",)
