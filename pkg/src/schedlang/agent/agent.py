"""The negotiating agent: local planner, strategy layer and control regime."""

from __future__ import annotations

import datetime as dt
from dataclasses import dataclass, field
from typing import Optional

from ..goals import GenGoal
from ..il import PROPOSALS, Coop, ILExpression
from ..temporal import Interval, TimePoint, add_minutes
from .calendar import Calendar
from .negotiation import INITIATOR, PARTICIPANT, NegotiationState, ProtocolViolation, StrategyConfig

COMMIT, REQUEST_NEXT, REQUEST_REPAIR = "commit", "request-next", "request-repair"


def _goal(kind: str, coop: Coop, to: tuple[str, ...], for_instance: bool = False, **temporal) -> GenGoal:
    return GenGoal(kind, ILExpression(coop, **temporal), for_instance=for_instance, addressees=to)


@dataclass
class Agent:
    name: str
    calendar: Calendar = field(default_factory=Calendar)
    strategy: StrategyConfig = field(default_factory=StrategyConfig)
    negotiations: dict[str, NegotiationState] = field(default_factory=dict)

    # -- control regime --------------------------------------------------

    def control_step(self, nid: str, il: Optional[ILExpression]) -> str:
        """Judge one server reading: commit it, ask for the next one, or ask for repair."""
        if il is None:
            return REQUEST_REPAIR
        state = self.negotiations.get(nid)
        if state is None:
            fits = il.coop == Coop.PROPOSE and _usable_proposal(il)
        else:
            fits = state.admits(il.coop) and (il.coop not in PROPOSALS or _usable_proposal(il))
        return COMMIT if fits else REQUEST_NEXT

    # -- inbound ---------------------------------------------------------

    def on_receive(self, nid: str, il: ILExpression, sender: str) -> list[GenGoal]:
        state = self.negotiations.get(nid)
        if state is None:
            if il.coop != Coop.PROPOSE:
                raise ProtocolViolation(nid, "none", il.coop)
            state = NegotiationState(nid, PARTICIPANT, (sender,), il.focus(), il.duration or 60, "awaiting")
            self.negotiations[nid] = state
        if not state.admits(il.coop):
            raise ProtocolViolation(nid, state.phase, il.coop)
        state.history.append((sender, il.coop))
        if state.role == INITIATOR:
            return self._as_initiator(state, il, sender)
        return self._as_participant(state, il, sender)

    def _as_participant(self, state: NegotiationState, il: ILExpression, sender: str) -> list[GenGoal]:
        nid, cal, to = state.id, self.calendar, (sender,)
        if il.coop == Coop.CANCEL:
            cal.release(nid)
            state.phase, state.pending = "failed", None
            return []
        if il.coop == Coop.FIX:
            cal.fix(il.appt, nid)
            state.phase = "fixed"
            return []

        duration = il.duration or (il.appt.minutes() if il.appt else state.duration)
        state.duration, state.range, state.pending = duration, il.focus(), il
        cal.release(nid)
        if il.appt is not None:
            if cal.is_free(il.appt):
                cal.reserve(il.appt, nid)
                state.phase = "agreed"
                return [_goal("accept", Coop.ACCEPT, to, appt=il.appt, duration=duration)]
            return self._decline(state, to, appt=il.appt, duration=duration)

        slots = cal.free_slots(il.range, duration)
        if not slots:
            return self._decline(state, to, range=il.range, duration=duration)
        # Offered time is held, so the initiator may fix it right away.
        state.phase = "agreed"
        if not self.strategy.free_slot_offering:
            appt = cal.first_available(il.range, duration)
            cal.reserve(appt, nid)
            return [_goal("propose", Coop.MODIFY, to, appt=appt, duration=duration)]
        listed = slots[: self.strategy.max_slots_listed]
        for slot in listed:
            cal.reserve(slot, nid)
        return [
            _goal(
                "provide-slots",
                Coop.PROVIDE_SLOTS,
                to,
                for_instance=len(listed) < len(slots),
                slots=tuple(listed),
                duration=duration,
            )
        ]

    def _decline(self, state: NegotiationState, to: tuple[str, ...], **temporal) -> list[GenGoal]:
        state.phase = "awaiting"
        if self.strategy.counter_proposals:
            counter = self._counter_slot(state)
            if counter is not None:
                self.calendar.reserve(counter, state.id)
                state.phase = "agreed"
                return [_goal("propose", Coop.MODIFY, to, appt=counter, duration=state.duration)]
        return [_goal("reject", Coop.REJECT, to, **temporal)]

    def _counter_slot(self, state: NegotiationState) -> Optional[Interval]:
        """Earliest own slot from the start of the rejected interval up to the horizon."""
        rng = state.range
        if rng is None or not rng.left.has_date():
            return None
        first = rng.left.date()
        last = max(rng.right.date(), first) + dt.timedelta(days=self.strategy.counter_horizon_days)
        search = Interval(TimePoint.at(first, 0), TimePoint.at(last, 23 * 60 + 59))
        return self.calendar.first_available(search, state.duration)

    # -- initiator -------------------------------------------------------

    def initiate(self, nid: str, partners: tuple[str, ...], rng: Interval, duration: int) -> list[GenGoal]:
        if duration <= 0 or not rng.is_complete():
            raise ValueError("initiation needs a complete range and a positive duration")
        state = NegotiationState(nid, INITIATOR, tuple(partners), rng, duration)
        self.negotiations[nid] = state
        if self.calendar.first_available(rng, duration) is None:
            state.phase = "failed"  # nothing was offered, so nobody needs a cancel
            return []
        return self._propose_from(state, rng.left)

    def _propose_from(self, state: NegotiationState, start: TimePoint, coop: Coop = Coop.PROPOSE) -> list[GenGoal]:
        cal = self.calendar
        cal.release(state.id)
        state.accepted, state.replies = set(), {}
        rng = state.range
        if start.to_datetime() < rng.right.to_datetime():
            slot = cal.first_available(Interval(start, rng.right), state.duration)
        else:
            slot = None
        if slot is None:
            return self._fail(state)
        cal.reserve(slot, state.id)
        state.phase = "awaiting"
        state.pending = ILExpression(coop, appt=slot, duration=state.duration)
        return [_goal("propose", coop, state.partners, appt=slot, duration=state.duration)]

    def _fail(self, state: NegotiationState) -> list[GenGoal]:
        last = state.pending
        self.calendar.release(state.id)
        state.phase, state.pending = "failed", None
        # Partners whose last word was a rejection already dropped their
        # reservation; a cancel after a rejection would be inadmissible.
        holders = tuple(p for p in state.partners if _last_from(state, p) != Coop.REJECT)
        if not holders:
            return []
        if last is not None and last.appt is not None:
            return [_goal("cancel", Coop.CANCEL, holders, appt=last.appt, duration=state.duration)]
        return [_goal("cancel", Coop.CANCEL, holders, range=state.range, duration=state.duration)]

    def _as_initiator(self, state: NegotiationState, il: ILExpression, sender: str) -> list[GenGoal]:
        # Replies are collected per round; the initiator decides once every partner answered.
        state.replies[sender] = il
        if il.coop == Coop.ACCEPT and il.appt == state.pending.appt:
            state.accepted.add(sender)
        if any(p not in state.replies for p in state.partners):
            return []
        if state.accepted >= set(state.partners):
            return self._confirm(state)
        for partner in state.partners:
            reply = state.replies[partner]
            if reply.coop in (Coop.MODIFY, Coop.PROVIDE_SLOTS):
                adopted = self._adopt_counter(state, reply)
                if adopted is not None:
                    # the counter counts as its author's acceptance
                    state.accepted, state.replies = {partner}, {partner: reply}
                    if state.accepted >= set(state.partners):
                        return self._confirm(state)
                    others = tuple(p for p in state.partners if p != partner)
                    return [_goal("propose", Coop.MODIFY, others, appt=adopted, duration=state.duration)]
        return self._propose_from(state, state.pending.appt.right)

    def _confirm(self, state: NegotiationState) -> list[GenGoal]:
        appt = state.pending.appt
        self.calendar.fix(appt, state.id)
        state.phase = "fixed"
        return [_goal("fix-confirm", Coop.FIX, state.partners, appt=appt, duration=state.duration)]

    def _adopt_counter(self, state: NegotiationState, il: ILExpression) -> Optional[Interval]:
        candidates = [il.appt] if il.appt is not None else []
        for slot in il.slots:
            end = add_minutes(slot.left, state.duration)
            if end.to_datetime() <= slot.right.to_datetime():
                candidates.append(Interval(slot.left, end))
        floor = state.pending.appt.left.to_datetime()
        for appt in candidates:
            if appt.minutes() != state.duration or not state.range.contains(appt):
                continue
            if appt.left.to_datetime() <= floor:
                continue  # proposals only move forward, so the loop terminates
            if self.calendar.is_free(appt, ignore=state.id):
                self.calendar.release(state.id)
                self.calendar.reserve(appt, state.id)
                state.pending = ILExpression(Coop.MODIFY, appt=appt, duration=state.duration)
                return appt
        return None

    # -- bookkeeping -----------------------------------------------------

    def reserved_minutes(self, nid: str) -> int:
        return sum(e.end - e.start for e in self.calendar.reservations(nid))


def _usable_proposal(il: ILExpression) -> bool:
    focus = il.focus()
    return focus is not None and focus.is_complete()


def _last_from(state: NegotiationState, partner: str) -> Optional[Coop]:
    for sender, coop in reversed(state.history):
        if sender == partner:
            return coop
    return None
