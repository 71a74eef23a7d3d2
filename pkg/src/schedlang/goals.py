"""Generation goals and the deficiency values that feed clarification requests."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .featstruct import FSError, Sym
from .il import Coop, ILExpression, il_from_fs, il_to_fs, timepoint_from_fs, timepoint_to_fs
from .temporal import TimePoint

GOAL_KINDS = (
    "propose",
    "accept",
    "reject",
    "fix-confirm",
    "provide-slots",
    "clarification-request",
    "cancel",
)

DEFICIENCY_KINDS = (
    "weekday-date-mismatch",
    "invalid-date",
    "empty-extraction",
    "ill-formed-after-merge",
    "ill-formed",
    "no-solution",
)


@dataclass(frozen=True)
class Inconsistency:
    """Why an utterance could not be turned into a well-formed IL expression.

    ``date`` holds whatever date fields were understood (possibly an
    impossible combination such as 31.2.), ``stated`` the weekday the
    writer gave and ``computed`` the weekday the date actually falls on.
    """

    kind: str
    date: Optional[TimePoint] = None
    stated: Optional[int] = None
    computed: Optional[int] = None

    def __post_init__(self) -> None:
        if self.kind not in DEFICIENCY_KINDS:
            raise ValueError(f"unknown deficiency kind {self.kind!r}")

    def to_fs(self) -> dict:
        fs: dict = {"KIND": Sym(self.kind)}
        if self.date is not None:
            fs["DATE"] = timepoint_to_fs(self.date)
        if self.stated is not None:
            fs["STATED"] = self.stated
        if self.computed is not None:
            fs["COMPUTED"] = self.computed
        return fs

    @classmethod
    def from_fs(cls, fs: dict) -> "Inconsistency":
        if not isinstance(fs, dict) or not isinstance(fs.get("KIND"), Sym):
            raise FSError("inconsistency needs a KIND symbol")
        try:
            return cls(
                kind=fs["KIND"].name,
                date=timepoint_from_fs(fs["DATE"]) if "DATE" in fs else None,
                stated=fs.get("STATED"),
                computed=fs.get("COMPUTED"),
            )
        except ValueError as exc:
            raise FSError(str(exc)) from exc


@dataclass(frozen=True)
class GenGoal:
    kind: str
    il: ILExpression
    inconsistency: Optional[Inconsistency] = None
    misspellings: tuple[str, ...] = ()
    for_instance: bool = False
    # routing hint for agents: empty means "reply to whoever wrote last"
    addressees: tuple[str, ...] = field(default=(), compare=False)

    def __post_init__(self) -> None:
        if self.kind not in GOAL_KINDS:
            raise ValueError(f"unknown generation goal kind {self.kind!r}")
        object.__setattr__(self, "misspellings", tuple(self.misspellings))
        object.__setattr__(self, "addressees", tuple(self.addressees))

    def to_fs(self) -> dict:
        fs: dict = {"KIND": Sym(self.kind), "IL": il_to_fs(self.il)}
        if self.inconsistency is not None:
            fs["INCONSISTENCY"] = self.inconsistency.to_fs()
        if self.misspellings:
            fs["MISSPELLINGS"] = list(self.misspellings)
        if self.for_instance:
            fs["FOR-INSTANCE"] = 1
        return fs

    @classmethod
    def from_fs(cls, fs: dict) -> "GenGoal":
        if not isinstance(fs, dict) or not isinstance(fs.get("KIND"), Sym) or "IL" not in fs:
            raise FSError("generation goal needs KIND and IL")
        words = fs.get("MISSPELLINGS", [])
        if not isinstance(words, (list, tuple)) or not all(isinstance(w, str) for w in words):
            raise FSError("MISSPELLINGS must be a list of strings")
        try:
            return cls(
                kind=fs["KIND"].name,
                il=il_from_fs(fs["IL"]),
                inconsistency=Inconsistency.from_fs(fs["INCONSISTENCY"]) if "INCONSISTENCY" in fs else None,
                misspellings=tuple(words),
                for_instance=bool(fs.get("FOR-INSTANCE", 0)),
            )
        except ValueError as exc:
            raise FSError(str(exc)) from exc


def goal_for(il: ILExpression, **kwargs) -> GenGoal:
    """The goal kind that verbalizes *il* directly."""
    kind = {
        Coop.PROPOSE: "propose",
        Coop.MODIFY: "propose",
        Coop.REFINE: "propose",
        Coop.ACCEPT: "accept",
        Coop.REJECT: "reject",
        Coop.FIX: "fix-confirm",
        Coop.CANCEL: "cancel",
        Coop.PROVIDE_SLOTS: "provide-slots",
        Coop.REQUEST_CLARIFICATION: "clarification-request",
    }[il.coop]
    return GenGoal(kind, il, **kwargs)
