from __future__ import annotations

import datetime as dt
from dataclasses import dataclass
from typing import Iterator, Optional

from ..il import PROPOSALS, Coop, ILExpression
from ..temporal import Interval

COMMITTED = "committed"
GENERATED = "generated"

# intervals that frame the ongoing negotiation (rejections do not)
_FRAMING = PROPOSALS | {Coop.ACCEPT, Coop.FIX, Coop.PROVIDE_SLOTS}


@dataclass(frozen=True)
class Record:
    source: str
    il: ILExpression
    seq: int
    timestamp: Optional[dt.datetime] = None


class DiscourseMemory:
    """Append-only history of committed analyses and generated replies of one session."""

    def __init__(self) -> None:
        self._records: list[Record] = []

    def add(self, source: str, il: ILExpression, timestamp: Optional[dt.datetime] = None) -> Record:
        if source not in (COMMITTED, GENERATED):
            raise ValueError(f"unknown record source {source!r}")
        rec = Record(source, il, len(self._records), timestamp)
        self._records.append(rec)
        return rec

    def __len__(self) -> int:
        return len(self._records)

    def __iter__(self) -> Iterator[Record]:
        return iter(self._records)

    def recent(self) -> Iterator[Record]:
        """Most recent first."""
        return reversed(self._records)

    def last_coop(self) -> Optional[Coop]:
        return self._records[-1].il.coop if self._records else None

    def latest_committed_interval(self) -> Optional[Interval]:
        for rec in self.recent():
            if rec.source == COMMITTED and rec.il.coop in _FRAMING:
                focus = rec.il.focus()
                if focus is not None and focus.is_complete():
                    return focus
        return None
