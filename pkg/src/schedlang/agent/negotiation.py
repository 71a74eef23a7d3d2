"""Strategy settings and per-negotiation state of a scheduling agent."""

from __future__ import annotations

import json
from dataclasses import dataclass, field, fields
from pathlib import Path
from typing import Optional

from ..il import Coop, ILExpression
from ..temporal import Interval

INITIATOR, PARTICIPANT = "initiator", "participant"
PHASES = ("proposing", "awaiting", "agreed", "fixed", "failed")
LIVE_PHASES = ("proposing", "awaiting", "agreed")

# Primitives an agent accepts from its counterpart, per role and phase.
ADMISSIBLE: dict[tuple[str, str], frozenset] = {
    (PARTICIPANT, "awaiting"): frozenset({Coop.PROPOSE, Coop.MODIFY, Coop.REFINE, Coop.CANCEL}),
    (PARTICIPANT, "agreed"): frozenset({Coop.FIX, Coop.CANCEL, Coop.PROPOSE, Coop.MODIFY, Coop.REFINE}),
    (PARTICIPANT, "fixed"): frozenset({Coop.CANCEL}),
    (PARTICIPANT, "failed"): frozenset({Coop.PROPOSE}),
    (INITIATOR, "proposing"): frozenset(),
    (INITIATOR, "awaiting"): frozenset({Coop.ACCEPT, Coop.REJECT, Coop.MODIFY, Coop.PROVIDE_SLOTS}),
    (INITIATOR, "agreed"): frozenset(),
    (INITIATOR, "fixed"): frozenset(),
    (INITIATOR, "failed"): frozenset(),
}


class ProtocolViolation(ValueError):
    def __init__(self, nid: str, phase: str, coop: Coop) -> None:
        super().__init__(f"{coop.value} is not admissible in phase {phase} of {nid}")
        self.nid, self.phase, self.coop = nid, phase, coop


@dataclass(frozen=True)
class StrategyConfig:
    """Keys in JSON strategy files use dashes: ``counter-proposals`` etc."""

    counter_proposals: bool = False
    free_slot_offering: bool = True
    max_slots_listed: int = 4
    counter_horizon_days: int = 7

    def __post_init__(self) -> None:
        if self.max_slots_listed < 1:
            raise ValueError("max-slots-listed must be at least 1")
        if self.counter_horizon_days < 0:
            raise ValueError("counter-horizon-days must be non-negative")

    @classmethod
    def from_dict(cls, data: dict) -> "StrategyConfig":
        known = {f.name for f in fields(cls)}
        kwargs = {}
        for key, value in data.items():
            name = key.replace("-", "_")
            if name not in known:
                raise ValueError(f"unknown strategy key {key!r}")
            if isinstance(value, str) and value in ("on", "off"):
                value = value == "on"
            kwargs[name] = value
        return cls(**kwargs)

    @classmethod
    def load(cls, path: str | Path) -> "StrategyConfig":
        return cls.from_dict(json.loads(Path(path).read_text(encoding="utf-8")))


@dataclass
class NegotiationState:
    id: str
    role: str
    partners: tuple[str, ...]
    range: Optional[Interval]
    duration: int
    phase: str = "proposing"
    pending: Optional[ILExpression] = None
    accepted: set = field(default_factory=set)
    replies: dict = field(default_factory=dict)  # partner -> IL answering the pending proposal
    history: list = field(default_factory=list)  # (sender, coop) in arrival order

    def __post_init__(self) -> None:
        if self.role not in (INITIATOR, PARTICIPANT):
            raise ValueError(f"unknown role {self.role!r}")
        if self.phase not in PHASES:
            raise ValueError(f"unknown phase {self.phase!r}")

    @property
    def live(self) -> bool:
        return self.phase in LIVE_PHASES

    def admits(self, coop: Coop) -> bool:
        return Coop(coop) in ADMISSIBLE[(self.role, self.phase)]
