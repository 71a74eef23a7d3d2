"""Possibly underspecified calendar time points and intervals."""

from __future__ import annotations

import datetime as dt
from dataclasses import dataclass, fields, replace
from typing import Optional

WEEKDAYS = range(1, 8)  # ISO: 1 = Monday ... 7 = Sunday

_RANGES = {
    "month": (1, 12),
    "day": (1, 31),
    "weekday": (1, 7),
    "hour": (0, 23),
    "minute": (0, 59),
}


def weekday_of(year: int, month: int, day: int) -> int:
    return dt.date(year, month, day).isoweekday()


def is_valid_date(year: int, month: int, day: int) -> bool:
    try:
        dt.date(year, month, day)
    except ValueError:
        return False
    return True


def expand_year(year: int) -> int:
    """Two-digit years: >= 70 means 19xx, otherwise 20xx."""
    if year >= 100:
        return year
    return 1900 + year if year >= 70 else 2000 + year


@dataclass(frozen=True)
class TimePoint:
    year: Optional[int] = None
    month: Optional[int] = None
    day: Optional[int] = None
    weekday: Optional[int] = None
    hour: Optional[int] = None
    minute: Optional[int] = None

    def __post_init__(self) -> None:
        for name, (lo, hi) in _RANGES.items():
            value = getattr(self, name)
            if value is not None and not lo <= value <= hi:
                raise ValueError(f"{name}={value} out of range {lo}..{hi}")
        if self.year is not None and not 1 <= self.year <= 9999:
            raise ValueError(f"year={self.year} out of range")

    @classmethod
    def at(cls, date: dt.date, minutes: Optional[int] = None) -> "TimePoint":
        if minutes is None:
            return cls(date.year, date.month, date.day)
        return cls(date.year, date.month, date.day, hour=minutes // 60, minute=minutes % 60)

    @classmethod
    def from_datetime(cls, value: dt.datetime) -> "TimePoint":
        return cls(value.year, value.month, value.day, hour=value.hour, minute=value.minute)

    def specified(self) -> dict:
        return {f.name: getattr(self, f.name) for f in fields(self) if getattr(self, f.name) is not None}

    def has_date(self) -> bool:
        return None not in (self.year, self.month, self.day)

    def has_clock(self) -> bool:
        return self.hour is not None and self.minute is not None

    def is_complete(self) -> bool:
        return self.has_date() and self.has_clock()

    def date(self) -> dt.date:
        return dt.date(self.year, self.month, self.day)

    def to_datetime(self) -> dt.datetime:
        return dt.datetime(self.year, self.month, self.day, self.hour, self.minute)

    def clock(self) -> int:
        """Minutes since midnight."""
        return self.hour * 60 + self.minute

    def without_weekday(self) -> "TimePoint":
        return replace(self, weekday=None)

    def merged(self, other: "TimePoint") -> "TimePoint":
        """Fields of *other* win wherever they are set."""
        return replace(self, **other.specified())


def add_minutes(tp: TimePoint, minutes: int) -> TimePoint:
    return TimePoint.from_datetime(tp.to_datetime() + dt.timedelta(minutes=minutes))


def minutes_between(a: TimePoint, b: TimePoint) -> int:
    return int((b.to_datetime() - a.to_datetime()).total_seconds() // 60)


@dataclass(frozen=True)
class Interval:
    left: TimePoint
    right: TimePoint

    def __post_init__(self) -> None:
        if self.is_complete() and self.left.to_datetime() > self.right.to_datetime():
            raise ValueError(f"interval bounds reversed: {self.left} > {self.right}")

    @classmethod
    def on(cls, date: dt.date, start: int, end: int) -> "Interval":
        """Interval on one day from clock minutes *start* to *end* (end may be 1440)."""
        left = TimePoint.at(date, start)
        if end >= 24 * 60:
            right = add_minutes(TimePoint.at(date, 0), end)
        else:
            right = TimePoint.at(date, end)
        return cls(left, right)

    def is_complete(self) -> bool:
        return self.left.is_complete() and self.right.is_complete()

    def minutes(self) -> int:
        return minutes_between(self.left, self.right)

    def contains(self, other: "Interval") -> bool:
        return (
            self.left.to_datetime() <= other.left.to_datetime()
            and other.right.to_datetime() <= self.right.to_datetime()
        )

    def overlaps(self, other: "Interval") -> bool:
        return (
            self.left.to_datetime() < other.right.to_datetime()
            and other.left.to_datetime() < self.right.to_datetime()
        )

    def dates(self) -> list[dt.date]:
        start, end = self.left.date(), self.right.date()
        if self.right.has_clock() and self.right.clock() == 0 and end > start:
            end -= dt.timedelta(days=1)
        return [start + dt.timedelta(days=i) for i in range((end - start).days + 1)]
