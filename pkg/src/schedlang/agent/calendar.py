"""Owner calendars and the free-slot planner.

File format, one item per line, ``#`` starts a comment::

    @workday 08:00 18:00
    @weekend 6 7
    @holiday 1996-12-25
    @min-gap 15
    1996-11-04 08:00 13:00 busy Projekttreffen
    1996-11-05 12:00 16:00 blocked -

Entry kinds are ``busy`` and ``blocked`` (owner-made, equivalent for
planning) and ``reserved`` (label = negotiation id).
"""

from __future__ import annotations

import datetime as dt
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Optional

from ..temporal import Interval, TimePoint

KINDS = ("busy", "blocked", "reserved")
DAY = 24 * 60


class CalendarError(ValueError):
    pass


class ReserveConflict(CalendarError):
    pass


class FixWithoutReservation(CalendarError):
    pass


@dataclass(frozen=True, order=True)
class Entry:
    date: dt.date
    start: int
    end: int
    kind: str = "busy"
    label: str = "-"

    def __post_init__(self) -> None:
        if self.kind not in KINDS:
            raise CalendarError(f"unknown entry kind {self.kind!r}")
        if not 0 <= self.start < self.end <= DAY:
            raise CalendarError(f"bad clock interval {self.start}-{self.end}")

    def interval(self) -> Interval:
        return Interval.on(self.date, self.start, self.end)


def parse_clock(text: str) -> int:
    hours, sep, minutes = text.partition(":")
    if not sep or not hours.isdigit() or not minutes.isdigit() or len(minutes) != 2:
        raise CalendarError(f"bad clock time {text!r}")
    value = int(hours) * 60 + int(minutes)
    if value > DAY or int(minutes) >= 60:
        raise CalendarError(f"bad clock time {text!r}")
    return value


def format_clock(minutes: int) -> str:
    return f"{minutes // 60:02d}:{minutes % 60:02d}"


def subtract(window: tuple[int, int], blocks: Iterable[tuple[int, int]]) -> list[tuple[int, int]]:
    """Parts of ``window`` not covered by any block, ascending."""
    lo, hi = window
    free = []
    cursor = lo
    for s, e in sorted(blocks):
        if e <= cursor:
            continue
        if s >= hi:
            break
        if s > cursor:
            free.append((cursor, s))
        cursor = max(cursor, e)
    if cursor < hi:
        free.append((cursor, hi))
    return free


@dataclass
class Calendar:
    workday_start: int = 8 * 60
    workday_end: int = 18 * 60
    weekend_days: tuple[int, ...] = (6, 7)
    holidays: frozenset = frozenset()
    min_gap: int = 0
    entries: list[Entry] = field(default_factory=list)

    def __post_init__(self) -> None:
        if not 0 <= self.workday_start < self.workday_end <= DAY:
            raise CalendarError("workday start must precede workday end")
        if self.min_gap < 0:
            raise CalendarError("min-gap must be non-negative")
        self.holidays = frozenset(self.holidays)
        for entry in self.entries:
            self._check_bounds(entry)

    def _check_bounds(self, entry: Entry) -> None:
        if entry.start < self.workday_start or entry.end > self.workday_end:
            raise CalendarError(f"entry {entry} lies outside the workday")

    # -- queries ---------------------------------------------------------

    def is_workday(self, day: dt.date) -> bool:
        return day.isoweekday() not in self.weekend_days and day not in self.holidays

    @property
    def busy(self) -> list[Entry]:
        return [e for e in self.entries if e.kind != "reserved"]

    @property
    def reserved(self) -> list[Entry]:
        return [e for e in self.entries if e.kind == "reserved"]

    def reservations(self, nid: str) -> list[Entry]:
        return [e for e in self.reserved if e.label == nid]

    def _blocks(self, day: dt.date, ignore: Optional[str]) -> list[tuple[int, int]]:
        g = self.min_gap
        return [
            (e.start - g, e.end + g)
            for e in self.entries
            if e.date == day and not (e.kind == "reserved" and e.label == ignore)
        ]

    def _window(self, day: dt.date, rng: Interval) -> Optional[tuple[int, int]]:
        if not self.is_workday(day):
            return None
        lo, hi = self.workday_start, self.workday_end
        if day == rng.left.date():
            lo = max(lo, rng.left.clock())
        if day == rng.right.date():
            hi = min(hi, rng.right.clock())
        return (lo, hi) if lo < hi else None

    def free_slots(self, rng: Interval, duration: int, ignore: Optional[str] = None) -> list[Interval]:
        """Maximal free sub-intervals of *rng* at least *duration* long.

        Entries are padded by the minimum gap on both sides; reservations
        held under *ignore* do not count as occupied.
        """
        if not rng.is_complete():
            raise CalendarError("free_slots needs a fully specified range")
        if duration <= 0:
            raise CalendarError("duration must be positive")
        out = []
        for day in rng.dates():
            window = self._window(day, rng)
            if window is None:
                continue
            for s, e in subtract(window, self._blocks(day, ignore)):
                if e - s >= duration:
                    out.append(Interval.on(day, s, e))
        return out

    def first_available(self, rng: Interval, duration: int, ignore: Optional[str] = None) -> Optional[Interval]:
        slots = self.free_slots(rng, duration, ignore)
        if not slots:
            return None
        first = slots[0]
        return Interval(first.left, TimePoint.at(first.left.date(), first.left.clock() + duration))

    def is_free(self, iv: Interval, ignore: Optional[str] = None) -> bool:
        if not iv.is_complete() or iv.left.date() != iv.right.date() or iv.minutes() <= 0:
            return False
        return any(slot.contains(iv) for slot in self.free_slots(iv, iv.minutes(), ignore))

    # -- updates ---------------------------------------------------------

    def reserve(self, iv: Interval, nid: str) -> Entry:
        if not self.is_free(iv, ignore=nid):
            raise ReserveConflict(f"{_fmt(iv)} is not free")
        entry = Entry(iv.left.date(), iv.left.clock(), iv.right.clock(), "reserved", nid)
        self.entries.append(entry)
        return entry

    def release(self, nid: str) -> int:
        before = len(self.entries)
        self.entries = [e for e in self.entries if not (e.kind == "reserved" and e.label == nid)]
        return before - len(self.entries)

    def fix(self, iv: Interval, nid: str) -> Entry:
        held = self.reservations(nid)
        if not any(e.interval().contains(iv) for e in held):
            raise FixWithoutReservation(f"{_fmt(iv)} is not reserved under {nid}")
        self.release(nid)
        entry = Entry(iv.left.date(), iv.left.clock(), iv.right.clock(), "busy", nid)
        self.entries.append(entry)
        return entry

    # -- files -----------------------------------------------------------

    @classmethod
    def parse(cls, text: str, name: str = "<calendar>") -> "Calendar":
        settings: dict = {}
        entries = []
        for lineno, raw in enumerate(text.splitlines(), 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            parts = line.split()
            try:
                if parts[0].startswith("@"):
                    _setting(settings, parts)
                    continue
                if len(parts) < 4:
                    raise CalendarError("expected date, start, end, kind [label]")
                date = dt.date.fromisoformat(parts[0])
                label = " ".join(parts[4:]) or "-"
                entries.append(Entry(date, parse_clock(parts[1]), parse_clock(parts[2]), parts[3], label))
            except (CalendarError, ValueError) as exc:
                raise CalendarError(f"{name}:{lineno}: {exc}") from None
        try:
            return cls(entries=entries, **settings)
        except CalendarError as exc:
            raise CalendarError(f"{name}: {exc}") from None

    @classmethod
    def load(cls, path: str | Path) -> "Calendar":
        return cls.parse(Path(path).read_text(encoding="utf-8"), str(path))

    def dump(self) -> str:
        lines = [
            f"@workday {format_clock(self.workday_start)} {format_clock(self.workday_end)}",
            "@weekend " + " ".join(str(d) for d in self.weekend_days),
            f"@min-gap {self.min_gap}",
        ]
        lines += [f"@holiday {d.isoformat()}" for d in sorted(self.holidays)]
        for e in sorted(self.entries):
            lines.append(f"{e.date.isoformat()} {format_clock(e.start)} {format_clock(e.end)} {e.kind} {e.label}")
        return "\n".join(lines) + "\n"


def _setting(settings: dict, parts: list[str]) -> None:
    key, args = parts[0][1:], parts[1:]
    if key == "workday" and len(args) == 2:
        settings["workday_start"], settings["workday_end"] = parse_clock(args[0]), parse_clock(args[1])
    elif key == "weekend":
        settings["weekend_days"] = tuple(int(a) for a in args)
    elif key == "holiday" and len(args) == 1:
        settings.setdefault("holidays", set()).add(dt.date.fromisoformat(args[0]))
    elif key == "min-gap" and len(args) == 1:
        settings["min_gap"] = int(args[0])
    else:
        raise CalendarError(f"unknown setting {' '.join(parts)!r}")


def _fmt(iv: Interval) -> str:
    return f"{iv.left.date()} {format_clock(iv.left.clock())}-{format_clock(iv.right.clock())}"
