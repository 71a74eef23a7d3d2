from __future__ import annotations

import datetime as dt
from typing import Optional

from ..goals import GenGoal
from ..params import SessionParams
from ..temporal import Interval, TimePoint
from .templates import PLACEHOLDER, Template, TemplateSet, load_templates


class GenerationError(ValueError):
    pass


def aggregate(slots: tuple[Interval, ...] | list[Interval]) -> list[tuple[dt.date, list[Interval]]]:
    """Group slots by date; dates and clock ranges ascending."""
    groups: dict[dt.date, list[Interval]] = {}
    for slot in slots:
        groups.setdefault(slot.left.date(), []).append(slot)
    return [(day, sorted(groups[day], key=lambda iv: iv.left.clock())) for day in sorted(groups)]


class _Formatter:
    def __init__(self, ts: TemplateSet) -> None:
        self.loc = ts.locale

    def date(self, tp: TimePoint) -> str:
        fields = {"d": tp.day, "m": tp.month, "y": tp.year}
        if "months" in self.loc and tp.month is not None:
            fields["monthname"] = self.loc["months"][tp.month - 1]
        pattern = self.loc["date"] if tp.year is not None else self.loc.get("date-short", self.loc["date"])
        return pattern.format(**fields)

    def clock(self, tp: TimePoint) -> str:
        key = "clock" if tp.minute == 0 else "clock-minutes"
        return self.loc.get(key, self.loc["clock"]).format(h=tp.hour, mm=f"{tp.minute:02d}")

    def weekday(self, number: int) -> str:
        return self.loc["weekdays"][number - 1]

    def ranges(self, ivs: list[Interval]) -> str:
        parts = [self.loc["range"].format(**{"from": self.clock(iv.left), "to": self.clock(iv.right)}) for iv in ivs]
        return self.loc.get("range-join", " ").join(parts)

    def groups(self, slots) -> str:
        out = [
            self.loc["group"].format(date=self.date(TimePoint.at(day)), ranges=self.ranges(ivs))
            for day, ivs in aggregate(slots)
        ]
        return self.loc.get("group-join", " ").join(out)


def goal_flags(goal: GenGoal, params: SessionParams) -> set[str]:
    il = goal.il
    flags = {
        params.formality,
        params.owner_reference,
        "deictic" if params.time_style == "deictic-preferred" else "anaphoric",
        f"coop-{il.coop.value}",
    }
    if goal.for_instance:
        flags.add("for-instance")
    if goal.misspellings:
        flags.add("misspellings")
    if goal.inconsistency is not None:
        flags.add(goal.inconsistency.kind)
        if goal.inconsistency.stated is not None:
            flags.add("stated-weekday")
    if il.appt is not None:
        flags.add("appt")
        if il.appt.is_complete() and il.appt.minutes() == params.default_duration:
            flags.add("default-duration")
    if il.range is not None:
        flags.add("range")
    if il.slots:
        flags.add("slots")
        groups = aggregate(il.slots)
        if len(il.slots) == 1:
            flags.add("single-slot")
        if len(groups) == 1:
            flags.add("single-group")
    focus = il.focus()
    if focus is not None and focus.left.has_date() and focus.right.has_date():
        dates = focus.dates()
        if len(dates) == 1:
            flags.add("single-day")
            if (
                il.appt is None
                and focus.left.has_clock()
                and focus.left.clock() == params.workday_start
                and focus.right.clock() == params.workday_end
            ):
                flags.add("workday")
        else:
            flags.add("multi-day")
    if il.duration is not None and il.duration != params.default_duration:
        flags.add("explicit-duration")
    return flags


def goal_values(goal: GenGoal, params: SessionParams, ts: TemplateSet, server: Optional[str] = None) -> dict[str, str]:
    fmt = _Formatter(ts)
    values = {"owner": params.owner, "server": server or ts.locale.get("server", "")}
    il = goal.il
    focus = il.focus()
    if focus is not None and focus.left.has_date():
        values["date"] = fmt.date(focus.left)
        values["dayname"] = fmt.weekday(focus.left.date().isoweekday())
        if focus.right.has_date():
            values["end-date"] = fmt.date(focus.right)
        if focus.left.has_clock():
            values["start"] = fmt.clock(focus.left)
        if focus.right.has_clock():
            values["end"] = fmt.clock(focus.right)
    if il.slots:
        values["slots"] = fmt.groups(il.slots)
        groups = aggregate(il.slots)
        if len(groups) == 1:
            values["ranges"] = fmt.ranges(groups[0][1])
    if il.duration is not None:
        values["duration"] = str(il.duration)
    bad = goal.inconsistency
    if bad is not None:
        if bad.date is not None and bad.date.day is not None and bad.date.month is not None:
            values["date"] = fmt.date(bad.date)
        if bad.stated is not None:
            values["weekday"] = fmt.weekday(bad.stated)
        if bad.computed is not None:
            values["computed-weekday"] = fmt.weekday(bad.computed)
    if goal.misspellings:
        values["misspellings"] = ts.locale.get("list-join", ", ").join(goal.misspellings)
    return values


def _fill(template: Template, values: dict, flags: set[str], ts: TemplateSet, depth: int) -> Optional[str]:
    out = []
    pos = 0
    for m in PLACEHOLDER.finditer(template.body):
        out.append(template.body[pos : m.start()])
        name = m.group(1)
        if name.startswith("@"):
            out.append(_realize_kind(name[1:], values, flags, ts, depth + 1) or "")
        elif name in values:
            out.append(values[name])
        else:
            return None
        pos = m.end()
    out.append(template.body[pos:])
    return "".join(out)


def _realize_kind(kind: str, values: dict, flags: set[str], ts: TemplateSet, depth: int) -> Optional[str]:
    if depth > 8:
        raise GenerationError(f"template nesting too deep at {kind!r}")
    for template in ts.of_kind(kind):
        if template.conditions <= flags:
            text = _fill(template, values, flags, ts, depth)
            if text is not None:
                return text
    return None


def realize(
    goal: GenGoal,
    params: Optional[SessionParams] = None,
    templates: Optional[TemplateSet] = None,
    server: Optional[str] = None,
) -> str:
    """Render *goal* as one message in the session language."""
    params = params or SessionParams()
    ts = templates or load_templates(params.language)
    values = goal_values(goal, params, ts, server)
    flags = goal_flags(goal, params)
    text = _realize_kind(goal.kind, values, flags, ts, 0)
    if text is None:
        raise GenerationError(f"no applicable template for {goal.kind} with {sorted(flags)}")
    return text
