"""Per-session semantic state: analysis, backtracking, clarification and repair."""

from __future__ import annotations

import datetime as dt
from dataclasses import dataclass, field, replace
from typing import Optional

from ..extraction.pipeline import Grammar, SmesResult, extract_message, load_grammar
from ..goals import GenGoal, Inconsistency
from ..il import Coop, ILExpression
from ..params import SessionParams
from .actions import ActionTable, default_table, filter_actions, rank_sentence, rank_text
from .discourse import COMMITTED, GENERATED, DiscourseMemory
from .fragments import PROPOSAL_QUESTION, DateSpec, Partial, gather
from .resolve import anchor, infer

ACTIVE = "active"
CLARIFYING = "clarifying"


@dataclass
class TextStructure:
    """Ranked readings of one message; a cursor walks them best first."""

    sentences: list[list[ILExpression]]
    cursor: int = 0

    def solutions(self) -> list[ILExpression]:
        return [il for sentence in self.sentences for il in sentence]

    def current(self) -> Optional[ILExpression]:
        sols = self.solutions()
        return sols[self.cursor] if self.cursor < len(sols) else None

    def next_solution(self) -> Optional[ILExpression]:
        """Advance to the next reading; None once all are used up."""
        if self.cursor < len(self.solutions()):
            self.cursor += 1
        return self.current()


@dataclass
class Analysis:
    status: str  # "ok" or "clarification-needed"
    text: Optional[TextStructure] = None
    goal: Optional[GenGoal] = None
    misspellings: tuple[str, ...] = ()

    @property
    def top(self) -> Optional[ILExpression]:
        return self.text.current() if self.text else None


def build_clarification(deficiency: Inconsistency, misspellings: tuple[str, ...] = ()) -> GenGoal:
    return GenGoal(
        "clarification-request",
        ILExpression(Coop.REQUEST_CLARIFICATION),
        inconsistency=deficiency,
        misspellings=tuple(misspellings),
    )


def merge_repair(stored: Optional[Partial], new: Optional[Partial]) -> Optional[Partial]:
    """Combine a stored deficient reading with the reader's correction.

    Returns None when the correction carries nothing temporal, meaning
    clarification goes on.  Corrected date fields replace the stored ones;
    a stored weekday does not survive a corrected day and month unless it
    is restated.  The stored action stands unless the correction names one.
    """
    if new is None or not new.locates():
        return None
    if stored is None:
        return new
    old, fresh = stored.date, new.date
    if fresh.has_day_month():
        date = DateSpec(
            day=fresh.day,
            month=fresh.month,
            year=fresh.year if fresh.year is not None else old.year,
            weekday=fresh.weekday,
        )
    elif fresh.weekday is not None and not fresh.rel:
        date = replace(old, weekday=fresh.weekday)
    elif not fresh.is_empty():
        date = fresh
    else:
        date = old
    action = new.action if new.action not in (None, PROPOSAL_QUESTION) else stored.action
    return Partial(
        action=action,
        date=date,
        start=new.start if new.start is not None else stored.start,
        span=new.span or stored.span,
        end_date=new.end_date or stored.end_date,
        duration=new.duration or stored.duration,
        slots=new.slots or stored.slots,
        anaphor=stored.anaphor or new.anaphor,
        topic=stored.topic or new.topic,
    )


@dataclass
class Dialogue:
    params: SessionParams = field(default_factory=SessionParams)
    grammar: Optional[Grammar] = None
    table: ActionTable = field(default_factory=default_table)
    memory: DiscourseMemory = field(default_factory=DiscourseMemory)
    state: str = ACTIVE
    pending: Optional[Partial] = None
    deficiency: Optional[Inconsistency] = None
    text: Optional[TextStructure] = None
    send_time: Optional[dt.datetime] = None

    def __post_init__(self) -> None:
        if self.grammar is None:
            self.grammar = load_grammar(self.params.language)

    # -- analysis --------------------------------------------------------

    def analyze(self, text: str, send_time: dt.datetime) -> Analysis:
        return self.analyze_extraction(extract_message(text, self.grammar), send_time)

    def analyze_extraction(self, smes: SmesResult, send_time: dt.datetime) -> Analysis:
        self.send_time = send_time
        per_sentence = [gather(s, self.grammar.automata) for s in smes.sentences]

        if self.state == CLARIFYING:
            fresh = next((p for ps in per_sentence for p in ps if p.locates()), None)
            merged = merge_repair(self.pending, fresh)
            if merged is None:
                return self._clarify(self.deficiency or Inconsistency("empty-extraction"), self.pending, smes)
            per_sentence = [[merged]]
            repairing = True
        else:
            repairing = False

        last = self.memory.last_coop()
        text_ils: list[ILExpression] = []  # most recent first
        ranked: list[list[ILExpression]] = []
        failures: list[tuple[Partial, Inconsistency]] = []
        for partials in per_sentence:
            readings = []
            for partial in partials:
                outcome = anchor(partial, self.params, send_time, self.memory, text_ils)
                if isinstance(outcome, Inconsistency):
                    failures.append((partial, outcome))
                    continue
                ambiguous = partial.action in (None, PROPOSAL_QUESTION)
                readings.append(infer(outcome, self.memory, ambiguous))
            readings = rank_sentence(filter_actions(readings, last, self.table))
            if readings:
                ranked.append(readings)
                text_ils = list(reversed(readings)) + text_ils

        if not ranked:
            if failures:
                partial, deficiency = failures[0]
                if repairing and deficiency.kind not in ("weekday-date-mismatch", "invalid-date"):
                    deficiency = Inconsistency("ill-formed-after-merge", deficiency.date)
            else:
                partial, deficiency = None, Inconsistency("empty-extraction")
            return self._clarify(deficiency, partial, smes)

        self.state, self.pending, self.deficiency = ACTIVE, None, None
        self.text = TextStructure(rank_text(ranked, last, self.table))
        return Analysis("ok", self.text, misspellings=smes.misspellings)

    def _clarify(self, deficiency: Inconsistency, partial: Optional[Partial], smes: SmesResult) -> Analysis:
        self.state, self.deficiency, self.text = CLARIFYING, deficiency, None
        if partial is not None:
            self.pending = partial
        goal = build_clarification(deficiency, smes.misspellings)
        return Analysis("clarification-needed", goal=goal, misspellings=smes.misspellings)

    # -- solution handling -----------------------------------------------

    def next_solution(self) -> Optional[ILExpression]:
        if self.text is None:
            return None
        return self.text.next_solution()

    def current(self) -> Optional[ILExpression]:
        return self.text.current() if self.text else None

    def commit(self, il: Optional[ILExpression] = None, timestamp: Optional[dt.datetime] = None) -> ILExpression:
        il = il or self.current()
        if il is None:
            raise LookupError("nothing to commit")
        self.memory.add(COMMITTED, il, timestamp or self.send_time)
        return il

    def record_generated(self, il: ILExpression, timestamp: Optional[dt.datetime] = None) -> None:
        self.memory.add(GENERATED, il, timestamp or self.send_time)

    def repair_goal(self) -> GenGoal:
        """Ask the writer to rephrase after every reading was turned down."""
        return build_clarification(Inconsistency("no-solution"))
