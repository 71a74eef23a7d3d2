"""Interface-level (IL) expressions: cooperation primitive plus temporal content."""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from enum import Enum
from typing import Optional

from .featstruct import FSError, Sym
from .temporal import Interval, TimePoint


class Coop(str, Enum):
    PROPOSE = "propose"
    REFINE = "refine"
    MODIFY = "modify"
    ACCEPT = "accept"
    REJECT = "reject"
    FIX = "fix"
    CANCEL = "cancel"
    REQUEST_CLARIFICATION = "request-clarification"
    PROVIDE_SLOTS = "provide-slots"

    def __str__(self) -> str:
        return self.value


PROPOSALS = frozenset({Coop.PROPOSE, Coop.REFINE, Coop.MODIFY})

# weights per specified atomic field: an appointment says more than a range
APPT_WEIGHT = 2
RANGE_WEIGHT = 1


@dataclass(frozen=True)
class ILExpression:
    coop: Coop
    range: Optional[Interval] = None
    appt: Optional[Interval] = None
    duration: Optional[int] = None
    slots: tuple[Interval, ...] = field(default=())

    def __post_init__(self) -> None:
        object.__setattr__(self, "coop", Coop(self.coop))
        object.__setattr__(self, "slots", tuple(self.slots))
        if self.duration is not None and self.duration <= 0:
            raise ValueError("duration must be positive")

    def intervals(self) -> list[Interval]:
        out = [iv for iv in (self.appt, self.range) if iv is not None]
        return out + list(self.slots)

    def is_temporal(self) -> bool:
        return bool(self.intervals()) or self.duration is not None

    def is_fully_specified(self) -> bool:
        return self.is_temporal() and all(iv.is_complete() for iv in self.intervals())

    def focus(self) -> Optional[Interval]:
        """The interval the utterance is about: appointment, else range, else slot hull."""
        if self.appt is not None:
            return self.appt
        if self.range is not None:
            return self.range
        if self.slots:
            if not all(s.is_complete() for s in self.slots):
                return Interval(self.slots[0].left, self.slots[-1].right)
            left = min(self.slots, key=lambda s: s.left.to_datetime()).left
            right = max(self.slots, key=lambda s: s.right.to_datetime()).right
            return Interval(left, right)
        return None

    def with_coop(self, coop: Coop) -> "ILExpression":
        return replace(self, coop=Coop(coop))


def informativeness(il: ILExpression) -> int:
    score = 0
    if il.appt is not None:
        score += APPT_WEIGHT * _count(il.appt)
    if il.range is not None:
        score += RANGE_WEIGHT * _count(il.range)
    for slot in il.slots:
        score += RANGE_WEIGHT * _count(slot)
    if il.duration is not None:
        score += 1
    return score


def _count(iv: Interval) -> int:
    return len(iv.left.specified()) + len(iv.right.specified())


# -- feature structure conversion -------------------------------------------

_TP_FEATURES = ("YEAR", "MONTH", "DAY", "WEEKDAY", "HOUR", "MINUTE")


def timepoint_to_fs(tp: TimePoint) -> dict:
    return {name.upper(): value for name, value in tp.specified().items()}


def timepoint_from_fs(fs: dict) -> TimePoint:
    if not isinstance(fs, dict):
        raise FSError("time point must be a map")
    unknown = set(fs) - set(_TP_FEATURES)
    if unknown:
        raise FSError(f"unknown time point features {sorted(unknown)}")
    values = {}
    for key, value in fs.items():
        if not isinstance(value, int) or isinstance(value, bool):
            raise FSError(f"{key} must be an integer")
        values[key.lower()] = value
    try:
        return TimePoint(**values)
    except ValueError as exc:
        raise FSError(str(exc)) from exc


def interval_to_fs(iv: Interval) -> dict:
    return {"LEFT-BOUND": timepoint_to_fs(iv.left), "RIGHT-BOUND": timepoint_to_fs(iv.right)}


def interval_from_fs(fs: dict) -> Interval:
    if not isinstance(fs, dict) or set(fs) != {"LEFT-BOUND", "RIGHT-BOUND"}:
        raise FSError("interval must have exactly LEFT-BOUND and RIGHT-BOUND")
    try:
        return Interval(timepoint_from_fs(fs["LEFT-BOUND"]), timepoint_from_fs(fs["RIGHT-BOUND"]))
    except ValueError as exc:
        raise FSError(str(exc)) from exc


def il_to_fs(il: ILExpression) -> dict:
    fs: dict = {"COOP": Sym(il.coop.value)}
    if il.range is not None:
        fs["RANGE"] = interval_to_fs(il.range)
    if il.appt is not None:
        fs["APPT"] = interval_to_fs(il.appt)
    if il.duration is not None:
        fs["DURATION"] = il.duration
    if il.slots:
        fs["SLOTS"] = [interval_to_fs(s) for s in il.slots]
    return fs


def il_from_fs(fs: dict) -> ILExpression:
    if not isinstance(fs, dict) or "COOP" not in fs:
        raise FSError("IL expression needs a COOP feature")
    unknown = set(fs) - {"COOP", "RANGE", "APPT", "DURATION", "SLOTS"}
    if unknown:
        raise FSError(f"unknown IL features {sorted(unknown)}")
    coop = fs["COOP"]
    try:
        coop = Coop(coop.name if isinstance(coop, Sym) else coop)
    except ValueError as exc:
        raise FSError(f"unknown cooperation primitive {coop}") from exc
    duration = fs.get("DURATION")
    if duration is not None and (not isinstance(duration, int) or isinstance(duration, bool)):
        raise FSError("DURATION must be an integer")
    slots = fs.get("SLOTS", [])
    if not isinstance(slots, (list, tuple)):
        raise FSError("SLOTS must be a list")
    try:
        return ILExpression(
            coop=coop,
            range=interval_from_fs(fs["RANGE"]) if "RANGE" in fs else None,
            appt=interval_from_fs(fs["APPT"]) if "APPT" in fs else None,
            duration=duration,
            slots=tuple(interval_from_fs(s) for s in slots),
        )
    except ValueError as exc:
        raise FSError(str(exc)) from exc
