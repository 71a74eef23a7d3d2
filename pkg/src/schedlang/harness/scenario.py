"""Scenario files.

One directive per line; ``#`` starts a comment line; tokens are split
shell-style so quoted values may contain spaces::

    language de
    human H
    agent A calendar=A.cal owner="Anna Arndt" counter-proposals=off
    send 1996-10-28T09:00 H -> A,B | Ich würde Sie gern ... treffen.
    initiate 1996-10-28T09:00 A -> B,C range 1996-11-04T08:00 1996-11-08T18:00 duration 60

``send`` delivers a scripted human message to each listed agent in
order; ``initiate`` starts an agent-driven negotiation whose messages
are exchanged as IL expressions.  Calendar paths are relative to the
scenario file.
"""

from __future__ import annotations

import datetime as dt
import shlex
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional, Union

from ..agent.negotiation import StrategyConfig
from ..params import SessionParams

STRATEGY_KEYS = {"counter-proposals", "free-slot-offering", "max-slots-listed", "counter-horizon-days"}
PARAM_KEYS = {
    "owner": ("owner", str),
    "formality": ("formality", str),
    "owner-reference": ("owner_reference", str),
    "time-style": ("time_style", str),
    "default-duration": ("default_duration", int),
    "workday-start": ("workday_start", int),
    "workday-end": ("workday_end", int),
    "min-gap": ("min_gap", int),
}


class ScenarioError(ValueError):
    def __init__(self, where: str, line: int, message: str) -> None:
        super().__init__(f"{where}:{line}: {message}")
        self.line = line


@dataclass(frozen=True)
class AgentSpec:
    name: str
    calendar: Optional[Path]
    strategy: StrategyConfig
    params: dict


@dataclass(frozen=True)
class Send:
    time: dt.datetime
    sender: str
    recipients: tuple[str, ...]
    text: str
    line: int


@dataclass(frozen=True)
class Initiate:
    time: dt.datetime
    initiator: str
    partners: tuple[str, ...]
    start: dt.datetime
    end: dt.datetime
    duration: int
    line: int


Event = Union[Send, Initiate]


@dataclass
class Scenario:
    language: str = "de"
    humans: list[str] = field(default_factory=list)
    agents: dict[str, AgentSpec] = field(default_factory=dict)
    events: list[Event] = field(default_factory=list)
    path: Optional[Path] = None

    def session_params(self, agent: str) -> SessionParams:
        return SessionParams.with_defaults(language=self.language, **self.agents[agent].params)


def _time(text: str) -> dt.datetime:
    return dt.datetime.fromisoformat(text)


def _names(text: str) -> tuple[str, ...]:
    names = tuple(n for n in text.split(",") if n)
    if not names:
        raise ValueError("empty recipient list")
    return names


def parse_scenario(text: str, base: Optional[Path] = None, name: str = "<scenario>") -> Scenario:
    sc = Scenario()
    last_time: dict[str, dt.datetime] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        try:
            _directive(sc, line, lineno, base, last_time)
        except ScenarioError:
            raise
        except (ValueError, KeyError) as exc:
            raise ScenarioError(name, lineno, str(exc)) from None
    participants = set(sc.humans) | set(sc.agents)
    for ev in sc.events:
        named = (ev.sender, *ev.recipients) if isinstance(ev, Send) else (ev.initiator, *ev.partners)
        unknown = [n for n in named if n not in participants]
        if unknown:
            raise ScenarioError(name, ev.line, f"unknown participant(s) {', '.join(unknown)}")
        if isinstance(ev, Send) and ev.sender not in sc.humans:
            raise ScenarioError(name, ev.line, "only humans send scripted messages")
        if isinstance(ev, Send) and any(r not in sc.agents for r in ev.recipients):
            raise ScenarioError(name, ev.line, "scripted messages go to agents")
        if isinstance(ev, Initiate) and (ev.initiator not in sc.agents or any(p not in sc.agents for p in ev.partners)):
            raise ScenarioError(name, ev.line, "agent-initiated meetings involve agents only")
    return sc


def _directive(sc: Scenario, line: str, lineno: int, base: Optional[Path], last_time: dict) -> None:
    head, _, rest = line.partition(" ")
    if head == "language":
        if rest.strip() not in ("de", "en"):
            raise ValueError(f"unsupported language {rest.strip()!r}")
        sc.language = rest.strip()
    elif head == "human":
        sc.humans.append(rest.strip())
    elif head == "agent":
        sc.agents[_agent_name(rest)] = _agent(rest, base)
    elif head == "send":
        meta, bar, body = rest.partition("|")
        if not bar:
            raise ValueError("send needs '| text'")
        when, sender, arrow, to = meta.split()
        if arrow != "->":
            raise ValueError("expected 'sender -> recipients'")
        ev = Send(_time(when), sender, _names(to), body.strip(), lineno)
        _monotone(last_time, sender, ev.time)
        sc.events.append(ev)
    elif head == "initiate":
        parts = rest.split()
        if len(parts) != 9 or parts[2] != "->" or parts[4] != "range" or parts[7] != "duration":
            raise ValueError("expected: initiate TIME AGENT -> PARTNERS range START END duration MINUTES")
        ev = Initiate(_time(parts[0]), parts[1], _names(parts[3]), _time(parts[5]), _time(parts[6]), int(parts[8]), lineno)
        if ev.end <= ev.start or ev.duration <= 0:
            raise ValueError("range must be non-empty and duration positive")
        _monotone(last_time, ev.initiator, ev.time)
        sc.events.append(ev)
    else:
        raise ValueError(f"unknown directive {head!r}")


def _monotone(last_time: dict, sender: str, when: dt.datetime) -> None:
    if sender in last_time and when < last_time[sender]:
        raise ValueError(f"send time of {sender} goes backwards")
    last_time[sender] = when


def _agent_name(rest: str) -> str:
    return shlex.split(rest)[0]


def _agent(rest: str, base: Optional[Path]) -> AgentSpec:
    tokens = shlex.split(rest)
    name, options = tokens[0], tokens[1:]
    calendar = None
    strategy: dict = {}
    params: dict = {}
    for opt in options:
        key, eq, value = opt.partition("=")
        if not eq:
            raise ValueError(f"expected key=value, got {opt!r}")
        if key == "calendar":
            calendar = (base / value) if base is not None else Path(value)
            if not calendar.exists():
                raise ValueError(f"calendar file {calendar} does not exist")
        elif key in STRATEGY_KEYS:
            strategy[key] = int(value) if value.isdigit() else value
        elif key in PARAM_KEYS:
            field_name, conv = PARAM_KEYS[key]
            params[field_name] = conv(value)
        else:
            raise ValueError(f"unknown agent option {key!r}")
    SessionParams(**params)  # reject bad values at parse time
    return AgentSpec(name, calendar, StrategyConfig.from_dict(strategy), params)


def load_scenario(path: str | Path) -> Scenario:
    path = Path(path)
    sc = parse_scenario(path.read_text(encoding="utf-8"), path.parent, str(path))
    sc.path = path
    return sc
