"""Scenario execution: humans talk to agents through the language server,
agents talk to each other with IL expressions over an in-memory transport."""

from __future__ import annotations

import datetime as dt
import json
from collections import deque
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterator, Optional

from ..agent import COMMIT, REQUEST_NEXT, Agent, Calendar, ProtocolViolation
from ..featstruct import encode
from ..generation import realize
from ..goals import GenGoal
from ..gsi.client import LocalClient
from ..gsi.server import GsiServer
from ..il import ILExpression, il_from_fs, il_to_fs
from ..temporal import Interval, TimePoint
from .scenario import Initiate, Scenario, Send, load_scenario

MAX_MAILBOX_STEPS = 10_000


@dataclass
class Transcript:
    records: list[dict] = field(default_factory=list)

    def add(self, **record) -> None:
        record["seq"] = len(self.records) + 1
        self.records.append(record)

    def to_jsonl(self) -> str:
        return "".join(json.dumps(r, sort_keys=True, ensure_ascii=False) + "\n" for r in self.records)

    def write(self, path: str | Path) -> None:
        Path(path).write_text(self.to_jsonl(), encoding="utf-8")

    @classmethod
    def from_jsonl(cls, text: str) -> "Transcript":
        return cls([json.loads(line) for line in text.splitlines() if line.strip()])

    def __len__(self) -> int:
        return len(self.records)


def _il_text(il: Optional[ILExpression]) -> Optional[str]:
    return encode(il_to_fs(il)) if il is not None else None


@dataclass
class Mail:
    sender: str
    recipient: str
    nid: str
    il: ILExpression
    time: dt.datetime


class Mailbox:
    """FIFO delivery; the scenario fixes the order in which mail is enqueued."""

    def __init__(self) -> None:
        self._queue: deque[Mail] = deque()

    def post(self, mail: Mail) -> None:
        self._queue.append(mail)

    def take(self) -> Optional[Mail]:
        return self._queue.popleft() if self._queue else None

    def __len__(self) -> int:
        return len(self._queue)


class HumanLink:
    """One human-agent dialogue: the agent is the server's client for it."""

    def __init__(self, agent: Agent, human: str, client: LocalClient, params) -> None:
        self.agent, self.human, self.client = agent, human, client
        self.nid = f"{human}-{agent.name}"
        client.open_session(params)

    def receive(self, text: str, when: dt.datetime) -> tuple[dict, list[tuple[str, Optional[ILExpression]]]]:
        """Analyze one human message; returns its analysis record and the agent's replies."""
        response = self.client.analyze(text, when)
        if response.status == "clarification-needed":
            deficiency = response.payload["GOAL"]["INCONSISTENCY"]["KIND"].name
            return {"deficiency": deficiency}, [(response.payload["TEXT"], None)]
        tried = 0
        while True:
            if response.status == "exhausted":
                repair = self.client.repair()
                return {"deficiency": "no-solution", "tried": tried}, [(repair.payload["TEXT"], None)]
            il = il_from_fs(response.payload["IL"])
            decision = self.agent.control_step(self.nid, il)
            if decision == COMMIT:
                break
            tried += 1
            response = self.client.next_solution()
        self.client.commit()
        goals = self.agent.on_receive(self.nid, il, self.human)
        replies = [(self.client.generate(goal), goal.il) for goal in goals]
        return {"il": _il_text(il), "rank": tried}, replies

    def say(self, goal: GenGoal) -> str:
        return self.client.generate(goal)


class Runner:
    def __init__(self, scenario: Scenario, server: Optional[GsiServer] = None) -> None:
        self.scenario = scenario
        self.server = server or GsiServer()
        self.transcript = Transcript()
        self.mailbox = Mailbox()
        self.agents: dict[str, Agent] = {}
        for name, spec in scenario.agents.items():
            cal = Calendar.load(spec.calendar) if spec.calendar else Calendar()
            self.agents[name] = Agent(name, cal, spec.strategy)
        self.links: dict[tuple[str, str], HumanLink] = {}
        self._initiated = 0

    def link(self, human: str, agent: str) -> HumanLink:
        key = (human, agent)
        if key not in self.links:
            params = self.scenario.session_params(agent)
            self.links[key] = HumanLink(self.agents[agent], human, LocalClient(self.server), params)
        return self.links[key]

    def steps(self) -> Iterator[int]:
        """Run event by event; yields the transcript length after each one."""
        for ev in self.scenario.events:
            if isinstance(ev, Send):
                for recipient in ev.recipients:
                    self._deliver_text(ev, recipient)
                    yield len(self.transcript)
            else:
                self._initiate(ev)
                yield len(self.transcript)
                while self.mailbox:
                    self._drain_one()
                    yield len(self.transcript)
        self.close()

    def run(self) -> Transcript:
        for _ in self.steps():
            pass
        return self.transcript

    def close(self) -> None:
        for link in self.links.values():
            if link.client.session is not None:
                link.client.close()

    # -- human traffic ----------------------------------------------------

    def _deliver_text(self, ev: Send, recipient: str) -> None:
        link = self.link(ev.sender, recipient)
        stamp = ev.time.isoformat(timespec="minutes")
        try:
            analysis, replies = link.receive(ev.text, ev.time)
        except ProtocolViolation as exc:
            analysis, replies = {"violation": str(exc)}, []
        self.transcript.add(
            time=stamp, sender=ev.sender, recipient=recipient, dialogue=link.nid, text=ev.text, **_fill(analysis)
        )
        for text, il in replies:
            self.transcript.add(
                time=stamp,
                sender=recipient,
                recipient=ev.sender,
                dialogue=link.nid,
                text=text,
                **_fill({"il": _il_text(il)} if il is not None else {"deficiency": analysis.get("deficiency")}),
            )

    # -- agent traffic ----------------------------------------------------

    def _initiate(self, ev: Initiate) -> None:
        self._initiated += 1
        nid = f"{ev.initiator}#{self._initiated}"
        rng = Interval(TimePoint.from_datetime(ev.start), TimePoint.from_datetime(ev.end))
        goals = self.agents[ev.initiator].initiate(nid, ev.partners, rng, ev.duration)
        if not goals:
            self.transcript.add(
                time=ev.time.isoformat(timespec="minutes"), sender=ev.initiator, recipient=None,
                dialogue=nid, text=None, **_fill({"outcome": "failed"}),
            )
        self._post(ev.initiator, nid, goals, ev.time)

    def _post(self, sender: str, nid: str, goals: list[GenGoal], when: dt.datetime) -> None:
        params = self.scenario.session_params(sender)
        for goal in goals:
            text = realize(goal, params)
            for to in goal.addressees:
                self.transcript.add(
                    time=when.isoformat(timespec="minutes"), sender=sender, recipient=to, dialogue=nid,
                    text=text, **_fill({"il": _il_text(goal.il)}),
                )
                self.mailbox.post(Mail(sender, to, nid, goal.il, when))

    def _drain_one(self) -> None:
        mail = self.mailbox.take()
        if len(self.transcript) > MAX_MAILBOX_STEPS:
            raise RuntimeError("negotiation did not settle")
        agent = self.agents[mail.recipient]
        try:
            goals = agent.on_receive(mail.nid, mail.il, mail.sender)
        except ProtocolViolation as exc:
            self.transcript.add(
                time=mail.time.isoformat(timespec="minutes"), sender=mail.recipient, recipient=None,
                dialogue=mail.nid, text=None, **_fill({"violation": str(exc)}),
            )
            return
        self._post(mail.recipient, mail.nid, goals, mail.time)


_FIELDS = ("il", "deficiency", "rank", "tried", "violation", "outcome")


def _fill(values: dict) -> dict:
    out = {k: None for k in ("il", "deficiency")}
    out.update({k: v for k, v in values.items() if k in _FIELDS})
    return out


def run_scenario(path_or_scenario, server: Optional[GsiServer] = None) -> Transcript:
    sc = path_or_scenario if isinstance(path_or_scenario, Scenario) else load_scenario(path_or_scenario)
    return Runner(sc, server).run()


def run_interleaved(scenarios: list[Scenario], server: Optional[GsiServer] = None) -> list[Transcript]:
    """Advance several scenarios round-robin, one event at a time, against one server."""
    server = server or GsiServer()
    runners = [Runner(sc, server) for sc in scenarios]
    active = [(r, r.steps()) for r in runners]
    while active:
        still = []
        for runner, it in active:
            if next(it, None) is not None:
                still.append((runner, it))
        active = still
    return [r.transcript for r in runners]
