"""Per-session client parameters used by anchoring and generation."""

from __future__ import annotations

import datetime as dt
import json
from dataclasses import asdict, dataclass, field
from functools import lru_cache
from pathlib import Path

from .featstruct import FSError, Sym

ANCHORING_DEFAULTS = Path(__file__).parent / "semantics" / "data" / "anchoring.json"

FORMALITY = ("formal", "informal")
OWNER_REFERENCE = ("pronoun", "full-name")
TIME_STYLE = ("deictic-preferred", "anaphoric-preferred")


@lru_cache(maxsize=1)
def anchoring_defaults() -> dict:
    return json.loads(ANCHORING_DEFAULTS.read_text(encoding="utf-8"))


@dataclass(frozen=True)
class SessionParams:
    owner: str = "Ich"
    workday_start: int = 8 * 60
    workday_end: int = 18 * 60
    weekend_days: tuple[int, ...] = (6, 7)
    holidays: tuple[dt.date, ...] = ()
    min_gap: int = 0
    formality: str = "formal"
    owner_reference: str = "pronoun"
    time_style: str = "deictic-preferred"
    default_duration: int = 60
    language: str = "de"
    extra: dict = field(default_factory=dict, compare=False)

    def __post_init__(self) -> None:
        if not 0 <= self.workday_start < self.workday_end <= 24 * 60:
            raise ValueError("workday-start must be before workday-end within one day")
        if self.min_gap < 0:
            raise ValueError("min-gap must be non-negative")
        if self.default_duration <= 0:
            raise ValueError("default-duration must be positive")
        if self.formality not in FORMALITY:
            raise ValueError(f"formality must be one of {FORMALITY}")
        if self.owner_reference not in OWNER_REFERENCE:
            raise ValueError(f"owner-reference must be one of {OWNER_REFERENCE}")
        if self.time_style not in TIME_STYLE:
            raise ValueError(f"time-style must be one of {TIME_STYLE}")
        if any(d not in range(1, 8) for d in self.weekend_days):
            raise ValueError("weekend days are ISO weekdays 1..7")
        object.__setattr__(self, "weekend_days", tuple(self.weekend_days))
        object.__setattr__(self, "holidays", tuple(self.holidays))

    @classmethod
    def with_defaults(cls, **overrides) -> "SessionParams":
        base = {k: v for k, v in anchoring_defaults().items() if k in cls.__dataclass_fields__}
        if "weekend_days" in base:
            base["weekend_days"] = tuple(base["weekend_days"])
        base.update(overrides)
        return cls(**base)

    def is_workday(self, day: dt.date) -> bool:
        return day.isoweekday() not in self.weekend_days and day not in self.holidays

    def to_fs(self) -> dict:
        return {
            "OWNER": self.owner,
            "WORKDAY-START": self.workday_start,
            "WORKDAY-END": self.workday_end,
            "WEEKEND": list(self.weekend_days),
            "HOLIDAYS": [d.isoformat() for d in self.holidays],
            "MIN-GAP": self.min_gap,
            "FORMALITY": Sym(self.formality),
            "OWNER-REFERENCE": Sym(self.owner_reference),
            "TIME-STYLE": Sym(self.time_style),
            "DEFAULT-DURATION": self.default_duration,
            "LANGUAGE": Sym(self.language),
        }

    @classmethod
    def from_fs(cls, fs) -> "SessionParams":
        if not isinstance(fs, dict):
            raise FSError("session parameters must be a map")

        def atom(key, default):
            value = fs.get(key, default)
            return value.name if isinstance(value, Sym) else value

        defaults = cls.with_defaults()
        try:
            return cls(
                owner=atom("OWNER", defaults.owner),
                workday_start=int(atom("WORKDAY-START", defaults.workday_start)),
                workday_end=int(atom("WORKDAY-END", defaults.workday_end)),
                weekend_days=tuple(int(d) for d in fs.get("WEEKEND", defaults.weekend_days)),
                holidays=tuple(dt.date.fromisoformat(str(d)) for d in fs.get("HOLIDAYS", ())),
                min_gap=int(atom("MIN-GAP", defaults.min_gap)),
                formality=atom("FORMALITY", defaults.formality),
                owner_reference=atom("OWNER-REFERENCE", defaults.owner_reference),
                time_style=atom("TIME-STYLE", defaults.time_style),
                default_duration=int(atom("DEFAULT-DURATION", defaults.default_duration)),
                language=atom("LANGUAGE", defaults.language),
            )
        except (TypeError, ValueError) as exc:
            raise FSError(f"invalid session parameters: {exc}") from exc

    def as_dict(self) -> dict:
        return asdict(self)
