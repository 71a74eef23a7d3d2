"""From partial interpretations to well-formed IL expressions.

Steps, in order: date resolution (explicit, then antecedents in the
current text, then discourse memory, then the send date), weekday/date
consistency, anchoring against workday conventions, and inference of
the cooperation primitive for underspecified proposals.
"""

from __future__ import annotations

import datetime as dt
from dataclasses import dataclass, replace
from typing import Iterable, Optional, Union

from ..goals import Inconsistency
from ..il import PROPOSALS, Coop, ILExpression
from ..params import SessionParams, anchoring_defaults
from ..temporal import Interval, TimePoint, add_minutes, is_valid_date, weekday_of
from .discourse import DiscourseMemory
from .fragments import PROPOSAL_QUESTION, DateSpec, Partial

DAY_OFFSETS = {"today": 0, "tomorrow": 1, "dayaftertomorrow": 2}
WEEK_OFFSETS = {"this-week": 0, "next-week": 1}
ONE_DAY = dt.timedelta(days=1)

Outcome = Union[ILExpression, Inconsistency]


# -- consistency -------------------------------------------------------------


def check_consistency(spec: DateSpec | TimePoint) -> Optional[Inconsistency]:
    """Calendar validity of a (possibly partial) date and agreement with its weekday."""
    day, month, year, weekday = spec.day, spec.month, spec.year, spec.weekday
    if day is None or month is None:
        return None
    stated = TimePoint(year=year, month=month, day=day)
    probe_year = year if year is not None else 2000  # leap year: 29.2. stays possible
    if not is_valid_date(probe_year, month, day):
        return Inconsistency("invalid-date", stated, stated=weekday)
    if year is not None and weekday is not None:
        actual = weekday_of(year, month, day)
        if actual != weekday:
            return Inconsistency("weekday-date-mismatch", stated, stated=weekday, computed=actual)
    return None


# -- date resolution ---------------------------------------------------------


@dataclass(frozen=True)
class Resolution:
    first: DateSpec
    last: Optional[DateSpec]
    stage: str  # explicit | text | discourse | deictic


def _spec(day: dt.date, weekday: Optional[int] = None) -> DateSpec:
    return DateSpec(day=day.day, month=day.month, year=day.year, weekday=weekday)


def _first_weekday(anchor: dt.date, weekday: int, strict: bool) -> dt.date:
    delta = (weekday - anchor.isoweekday()) % 7
    if delta == 0 and strict:
        delta = 7
    return anchor + dt.timedelta(days=delta)


def _relative(spec: DateSpec, anchor: dt.date, deictic: bool) -> Optional[Resolution]:
    stage = "deictic" if deictic else "anchor"
    if spec.has_day_month():
        year = anchor.year
        if deictic and is_valid_date(year, spec.month, spec.day):
            if dt.date(year, spec.month, spec.day) < anchor:
                year += 1
        return Resolution(replace(spec, year=year, rel=None), None, stage)
    if spec.weekday is not None:
        strict = deictic or spec.rel == "next"
        return Resolution(_spec(_first_weekday(anchor, spec.weekday, strict), spec.weekday), None, stage)
    if spec.rel is not None:
        return None
    return Resolution(_spec(anchor), None, stage)


def _deictic_rel(spec: DateSpec, send: dt.date) -> Optional[Resolution]:
    if spec.rel in DAY_OFFSETS:
        day = send + DAY_OFFSETS[spec.rel] * ONE_DAY
        return Resolution(_spec(day, spec.weekday), None, "deictic")
    if spec.rel in WEEK_OFFSETS:
        monday = send - (send.isoweekday() - 1) * ONE_DAY + 7 * WEEK_OFFSETS[spec.rel] * ONE_DAY
        return Resolution(_spec(monday), _spec(monday + 6 * ONE_DAY), "deictic")
    return None


def antecedent_dates(text_ils: Iterable[ILExpression], memory: DiscourseMemory) -> Iterable[tuple[dt.date, str]]:
    for il in text_ils:
        focus = il.focus()
        if focus is not None and focus.left.has_date():
            yield focus.left.date(), "text"
    for rec in memory.recent():
        focus = rec.il.focus()
        if focus is not None and focus.left.has_date():
            yield focus.left.date(), "discourse"


def resolve_date(
    spec: DateSpec,
    text_ils: list[ILExpression],
    memory: DiscourseMemory,
    send_time: dt.datetime,
) -> Optional[Resolution]:
    """Complete *spec* to a calendar date; ``text_ils`` are most recent first."""
    if spec.is_full():
        return Resolution(replace(spec, rel=None), None, "explicit")
    if spec.rel in DAY_OFFSETS or spec.rel in WEEK_OFFSETS:
        return _deictic_rel(spec, send_time.date())
    for anchor, stage in antecedent_dates(text_ils, memory):
        found = _relative(spec, anchor, deictic=False)
        if found is not None:
            return replace(found, stage=stage)
    return _relative(spec, send_time.date(), deictic=True)


def antecedent_il(
    text_ils: list[ILExpression], memory: DiscourseMemory, proposals_only: bool
) -> Optional[ILExpression]:
    """Nearest IL with temporal content; with *proposals_only*, nearest proposal."""
    candidates = list(text_ils) + [rec.il for rec in memory.recent()]
    for il in candidates:
        if il.focus() is None:
            continue
        if proposals_only and il.coop not in PROPOSALS:
            continue
        return il
    return None


# -- anchoring ---------------------------------------------------------------


def _plausible(clock: int, params: SessionParams) -> int:
    """Read "um 2" as 14:00 when 2:00 lies before the workday and 14:00 inside it."""
    if not anchoring_defaults().get("pm_shift", True):
        return clock
    shifted = clock + 12 * 60
    if clock < params.workday_start and clock < 12 * 60 and params.workday_start <= shifted < params.workday_end:
        return shifted
    return clock


def _plausible_span(start: int, end: int, params: SessionParams) -> tuple[int, int]:
    shifted = _plausible(start, params)
    if shifted != start and end + 12 * 60 <= params.workday_end and end < 12 * 60:
        return shifted, end + 12 * 60
    if shifted == start and end < start and end + 12 * 60 <= params.workday_end:
        return start, end + 12 * 60
    return start, end


def _date_of(res: Resolution) -> dt.date:
    return dt.date(res.first.year, res.first.month, res.first.day)


def _focus_of(il: ILExpression) -> dict:
    if il.appt is not None:
        return {"appt": il.appt}
    if il.range is not None:
        return {"range": il.range}
    if len(il.slots) == 1:
        return {"range": il.slots[0]}
    return {"range": il.focus()}


def anchor(
    partial: Partial,
    params: SessionParams,
    send_time: dt.datetime,
    memory: DiscourseMemory,
    text_ils: Optional[list[ILExpression]] = None,
) -> Outcome:
    """Resolve and anchor one partial; returns an IL (coop possibly provisional) or a deficiency."""
    text_ils = text_ils or []
    coop = _coop(partial.action)
    duration = partial.duration

    if not partial.locates():
        if partial.action in (None, PROPOSAL_QUESTION) and not partial.anaphor:
            return Inconsistency("empty-extraction")
        ante = antecedent_il(text_ils, memory, proposals_only=partial.anaphor)
        if ante is None:
            return Inconsistency("empty-extraction")
        return ILExpression(coop, duration=duration or ante.duration or params.default_duration, **_focus_of(ante))

    duration = duration or params.default_duration

    if partial.slots:
        slots = []
        local: list[ILExpression] = list(text_ils)
        for slot in partial.slots:
            res = resolve_date(slot.date, local, memory, send_time)
            if res is None:
                return Inconsistency("empty-extraction")
            bad = check_consistency(res.first)
            if bad is not None:
                return bad
            day = _date_of(res)
            if slot.start is None:
                start, end = params.workday_start, params.workday_end
            elif slot.end is None:
                start = _plausible(slot.start, params)
                end = start + duration
            else:
                start, end = _plausible_span(slot.start, slot.end, params)
            if end <= start:
                return Inconsistency("ill-formed", TimePoint.at(day))
            iv = Interval.on(day, start, end)
            slots.append(iv)
            local.insert(0, ILExpression(Coop.PROVIDE_SLOTS, range=iv))
        return ILExpression(coop, duration=duration, slots=tuple(slots))

    res = resolve_date(partial.date, text_ils, memory, send_time)
    if res is None:
        return Inconsistency("empty-extraction")
    bad = check_consistency(res.first)
    if bad is not None:
        return bad
    day = _date_of(res)

    if partial.end_date is not None:
        end_res = resolve_date(partial.end_date, [ILExpression(coop, range=Interval.on(day, 0, 0))], memory, send_time)
        if end_res is None:
            return Inconsistency("empty-extraction")
        bad = check_consistency(end_res.first)
        if bad is not None:
            return bad
        res = Resolution(res.first, end_res.first, res.stage)
    if res.last is not None:
        last = dt.date(res.last.year, res.last.month, res.last.day)
        if last < day:
            return Inconsistency("ill-formed", TimePoint.at(day))
        rng = Interval(TimePoint.at(day, params.workday_start), TimePoint.at(last, params.workday_end))
        return ILExpression(coop, range=rng, duration=duration)

    if partial.span is not None:
        start, end = _plausible_span(partial.span.start, partial.span.end, params)
        if end <= start:
            return Inconsistency("ill-formed", TimePoint.at(day))
        iv = Interval.on(day, start, end)
        if partial.span.kind == "appt":
            if partial.duration is not None and partial.duration != iv.minutes():
                return Inconsistency("ill-formed", TimePoint.at(day))
            return ILExpression(coop, appt=iv, duration=iv.minutes())
        return ILExpression(coop, range=iv, duration=duration)

    if partial.start is not None:
        start = _plausible(partial.start, params)
        left = TimePoint.at(day, start)
        return complete_endpoint(ILExpression(coop, appt=Interval(left, TimePoint.at(day)), duration=duration))

    return ILExpression(coop, range=Interval.on(day, params.workday_start, params.workday_end), duration=duration)


def _coop(action: Optional[str]) -> Coop:
    if action in (None, PROPOSAL_QUESTION):
        return Coop.PROPOSE
    return Coop(action)


# -- inference ---------------------------------------------------------------


def complete_endpoint(il: ILExpression) -> ILExpression:
    """Fill an appointment's missing end from its start plus the duration."""
    appt = il.appt
    if appt is None or not appt.left.is_complete() or appt.right.is_complete() or il.duration is None:
        return il
    return replace(il, appt=Interval(appt.left, add_minutes(appt.left, il.duration)))


def infer(il: ILExpression, memory: DiscourseMemory, ambiguous: bool) -> ILExpression:
    """Decide refine vs. modify for proposals whose wording left the primitive open.

    A proposal refines when its interval lies inside the most recent
    committed interval of the negotiation and modifies it otherwise.
    """
    il = complete_endpoint(il)
    if not ambiguous:
        return il
    frame = memory.latest_committed_interval()
    focus = il.focus()
    if frame is None or focus is None or not focus.is_complete():
        return il.with_coop(Coop.PROPOSE)
    return il.with_coop(Coop.REFINE if frame.contains(focus) else Coop.MODIFY)
