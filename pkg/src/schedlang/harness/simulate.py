"""Agent-only negotiations without a language server, for property checks and batch studies."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field

from ..agent import Agent, ProtocolViolation
from ..il import Coop
from ..temporal import Interval

MAX_MESSAGES = 10_000


@dataclass(frozen=True)
class Message:
    sender: str
    recipient: str
    coop: Coop
    appt: Interval | None


@dataclass
class Outcome:
    nid: str
    messages: list[Message] = field(default_factory=list)
    violations: list[str] = field(default_factory=list)
    phase: str = "proposing"
    rounds: int = 0

    def pair_dialogue(self, a: str, b: str) -> list[Coop]:
        """Cooperation primitives exchanged between *a* and *b*, in delivery order."""
        return [m.coop for m in self.messages if {m.sender, m.recipient} == {a, b}]


def negotiate(agents: dict[str, Agent], initiator: str, partners: tuple[str, ...], rng: Interval, duration: int,
              nid: str = "N#1") -> Outcome:
    """Run one negotiation to quiescence; mail is delivered first in, first out."""
    out = Outcome(nid)
    queue: deque = deque()

    def post(sender: str, goals) -> None:
        for goal in goals:
            if sender == initiator and goal.il.coop in (Coop.PROPOSE, Coop.MODIFY):
                out.rounds += 1
            for to in goal.addressees:
                out.messages.append(Message(sender, to, goal.il.coop, goal.il.appt))
                queue.append((sender, to, goal.il))

    post(initiator, agents[initiator].initiate(nid, partners, rng, duration))
    while queue:
        if len(out.messages) > MAX_MESSAGES:
            raise RuntimeError(f"{nid} did not settle")
        sender, to, il = queue.popleft()
        try:
            goals = agents[to].on_receive(nid, il, sender)
        except ProtocolViolation as exc:
            out.violations.append(str(exc))
            continue
        post(to, goals)
    out.phase = agents[initiator].negotiations[nid].phase
    return out
