"""Partial interpretations gathered from predicate-argument structures.

A :class:`Partial` is what one clause says before any context is
consulted: the action evidence of its verb frame plus whatever date,
clock and span material its temporal adjuncts carried.  Resolution
against discourse and calendar conventions happens later.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Optional

from ..extraction.cascade import Automata, Constituent
from ..extraction.combine import PredArg
from ..temporal import TimePoint

PROPOSAL_QUESTION = "proposal-question"


@dataclass(frozen=True)
class DateSpec:
    day: Optional[int] = None
    month: Optional[int] = None
    year: Optional[int] = None
    weekday: Optional[int] = None
    rel: Optional[str] = None

    @classmethod
    def from_fields(cls, fields: dict) -> "DateSpec":
        return cls(
            day=fields.get("day"),
            month=fields.get("month"),
            year=fields.get("year"),
            weekday=fields.get("weekday"),
            rel=fields.get("rel"),
        )

    def is_empty(self) -> bool:
        return self == DateSpec()

    def has_day_month(self) -> bool:
        return self.day is not None and self.month is not None

    def is_full(self) -> bool:
        return self.has_day_month() and self.year is not None

    def to_timepoint(self) -> TimePoint:
        return TimePoint(year=self.year, month=self.month, day=self.day, weekday=self.weekday)


@dataclass(frozen=True)
class Span:
    start: int
    end: int
    kind: str  # "range" (window to search in) or "appt" (the meeting itself)


@dataclass(frozen=True)
class Slot:
    date: DateSpec
    start: Optional[int] = None
    end: Optional[int] = None


@dataclass(frozen=True)
class Partial:
    action: Optional[str] = None
    date: DateSpec = DateSpec()
    start: Optional[int] = None
    span: Optional[Span] = None
    end_date: Optional[DateSpec] = None
    duration: Optional[int] = None
    slots: tuple[Slot, ...] = ()
    anaphor: bool = False
    topic: Optional[str] = None

    def locates(self) -> bool:
        """True when the partial says something about *when*."""
        return (
            not self.date.is_empty()
            or self.start is not None
            or self.span is not None
            or self.end_date is not None
            or bool(self.slots)
        )

    def is_empty(self) -> bool:
        return not self.locates() and self.action is None and not self.anaphor and self.duration is None


@dataclass
class _Group:
    date: DateSpec = field(default_factory=DateSpec)
    start: Optional[int] = None
    spans: list[Span] = field(default_factory=list)
    end_date: Optional[DateSpec] = None

    def has_time(self) -> bool:
        return self.start is not None or bool(self.spans)

    def is_empty(self) -> bool:
        return self.date.is_empty() and not self.has_time() and self.end_date is None


def _clock(fields: dict) -> int:
    return fields["hour"] * 60 + fields.get("minute", 0)


def _kind(c: Constituent) -> Optional[str]:
    return c.category.split("-", 1)[1] if "-" in c.category else None


def _collect(pa: PredArg, slotting: bool) -> tuple[list[_Group], Optional[int]]:
    groups = [_Group()]
    duration = None
    for c in sorted(pa.temporal, key=lambda c: c.start):
        f, kind = c.fields, _kind(c)
        if "duration" in f:
            duration = f["duration"]
        if kind in ("date", "day") or (kind is None and "rel" in f):
            if not groups[-1].date.is_empty() or groups[-1].end_date is not None:
                groups.append(_Group())
            groups[-1].date = DateSpec.from_fields(f)
        elif kind == "time":
            if groups[-1].has_time():
                groups.append(_Group())
            groups[-1].start = _clock(f)
        elif kind == "dur" and "from" in f:
            span = Span(_clock(f["from"]), _clock(f["to"]), f["span"])
            if groups[-1].has_time() and not (slotting and groups[-1].spans):
                groups.append(_Group())
            groups[-1].spans.append(span)
        elif kind == "dur":
            if not groups[-1].is_empty():
                groups.append(_Group())
            groups[-1].date = DateSpec.from_fields(f["fromdate"])
            groups[-1].end_date = DateSpec.from_fields(f["todate"])
    groups = [g for g in groups if not g.is_empty()]
    # a date mentioned once governs the times around it
    last = None
    for g in groups:
        if g.date.is_empty() and last is not None:
            g.date = last
        elif not g.date.is_empty():
            last = g.date
    first = next((g.date for g in groups if not g.date.is_empty()), None)
    for g in groups:
        if g.date.is_empty() and first is not None:
            g.date = first
    return groups, duration


def _reference(pa: PredArg) -> tuple[bool, Optional[str]]:
    anaphor, topic = False, None
    for c in pa.args:
        anaphor = anaphor or bool(c.fields.get("anaphor"))
        topic = topic or c.fields.get("topic")
    return anaphor, topic


def partials_of(pa: PredArg, automata: Automata) -> list[Partial]:
    frame = automata.frames.get(pa.frame_id)
    action = frame.evidence(set(pa.cues)) if frame else None
    anaphor, topic = _reference(pa)
    slotting = action == "provide-slots"
    groups, duration = _collect(pa, slotting)
    base = Partial(action=action, duration=duration, anaphor=anaphor, topic=topic)
    if not groups:
        return [] if base.is_empty() else [base]
    if slotting:
        slots: list[Slot] = []
        for g in groups:
            if g.spans:
                slots.extend(Slot(g.date, s.start, s.end) for s in g.spans)
            else:
                slots.append(Slot(g.date, g.start, None))
        return [replace(base, slots=tuple(slots), date=groups[0].date)]
    return [
        replace(
            base,
            date=g.date,
            start=g.start,
            span=g.spans[0] if g.spans else None,
            end_date=g.end_date,
        )
        for g in groups
    ]


def gather(predargs: tuple[PredArg, ...] | list[PredArg], automata: Automata) -> list[Partial]:
    """All partial interpretations of one sentence, in surface order."""
    out: list[Partial] = []
    for pa in predargs:
        out.extend(partials_of(pa, automata))
    return out
