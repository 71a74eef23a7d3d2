"""Orchestration kernel: virtual systems, computing-component managers, workflow plans.

Every dialogue runs in its own :class:`VirtualSystem`.  A virtual system
owns a data manager, a workflow manager and one CCM per processing
component (extraction, semantics, generation).  Components themselves are
shared between virtual systems and handed from CCM to CCM under a lock.
Requests are executed as static plans of subgoals; any exception raised
inside a step ends up as a structured error response.
"""

from __future__ import annotations

import datetime as dt
import itertools
import json
import logging
import threading
import uuid
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Callable, Optional

from .extraction.pipeline import extract_message, load_grammar
from .featstruct import FSError
from .generation.realize import GenerationError, realize
from .generation.templates import load_templates
from .goals import GenGoal
from .gsi.protocol import ProtocolError, Request, Response
from .il import il_from_fs, il_to_fs
from .params import SessionParams
from .semantics.dialogue import CLARIFYING, Dialogue

log = logging.getLogger(__name__)

CONFIG_PATH = Path(__file__).parent / "data" / "server.json"

ACTIVE, COMPLETED = "active", "completed"


class KernelError(Exception):
    code = "internal-error"


class Exhausted(KernelError):
    code = "exhausted"


class ReleasedError(KernelError):
    code = "released"


class CapacityExceeded(KernelError):
    code = "resource-exhausted"


class ExclusivityViolation(KernelError):
    code = "exclusivity"


class StateError(KernelError):
    code = "bad-state"


@dataclass(frozen=True)
class KernelConfig:
    capacity: int = 64
    buffer_limit: int = 32
    log_path: Optional[str] = None
    server_name: str = "COSMA"
    max_frame: int = 1 << 20

    @classmethod
    def load(cls, path: str | Path = CONFIG_PATH) -> "KernelConfig":
        data = json.loads(Path(path).read_text(encoding="utf-8"))
        unknown = set(data) - set(cls.__dataclass_fields__)
        if unknown:
            raise ValueError(f"unknown config keys {sorted(unknown)}")
        cfg = cls(**data)
        if cfg.capacity < 1 or cfg.buffer_limit < 1:
            raise ValueError("capacity and buffer_limit must be positive")
        return cfg


# -- managers ----------------------------------------------------------------


class Manager:
    """Base for per-system managers; tracks which virtual system it serves."""

    def __init__(self, name: str) -> None:
        self.name = name
        self.owner: Optional[str] = None
        self._guard = threading.Lock()

    def enter(self, vs_id: str) -> None:
        with self._guard:
            if self.owner is not None and self.owner != vs_id:
                raise ExclusivityViolation(f"{self.name} busy in {self.owner}, requested by {vs_id}")
            self.owner = vs_id

    def leave(self, vs_id: str) -> None:
        with self._guard:
            if self.owner == vs_id:
                self.owner = None


class Component:
    """A processing resource shared by several CCMs, used by one at a time."""

    def __init__(self, name: str, fn: Callable[..., Any]) -> None:
        self.name = name
        self.fn = fn
        self._lock = threading.Lock()
        self.holder: Optional["CCM"] = None
        self.calls = 0

    def run(self, ccm: "CCM", *args, **kwargs):
        with self._lock:
            self.holder = ccm
            try:
                self.calls += 1
                return self.fn(*args, **kwargs)
            finally:
                self.holder = None


class CCM(Manager):
    """Computing-component manager with working memory and a solution buffer."""

    def __init__(self, name: str, component: Component, buffer_limit: int = 32) -> None:
        super().__init__(name)
        self.component = component
        self.buffer_limit = buffer_limit
        self.short_term: dict = {}
        self.long_term: dict = {}
        self.buffer: list = []
        self.cursor = 0
        self.released = True

    def bind(self) -> None:
        self.released = False
        self.buffer, self.cursor = [], 0
        self.short_term = {}

    def run(self, *args, **kwargs):
        if self.released:
            raise ReleasedError(f"{self.name} holds no component")
        return self.component.run(self, *args, **kwargs)

    def store(self, solutions: list) -> None:
        self.buffer = list(solutions)[: self.buffer_limit]
        self.cursor = 0

    def current(self):
        return self.buffer[self.cursor] if self.cursor < len(self.buffer) else None

    def read(self, index: int):
        """Buffered solutions stay readable after release."""
        return self.buffer[index]

    def backtrack(self):
        if self.released:
            raise ReleasedError(f"{self.name} was released")
        if self.cursor < len(self.buffer):
            self.cursor += 1
        if self.cursor >= len(self.buffer):
            raise Exhausted(self.name)
        return self.buffer[self.cursor]

    def release(self) -> None:
        self.released = True

    def clear(self) -> None:
        self.short_term, self.long_term = {}, {}
        self.buffer, self.cursor, self.released = [], 0, True


class DataManager(Manager):
    """Converts between wire feature structures and domain objects."""

    def il(self, fs):
        return il_from_fs(fs)

    def goal(self, fs):
        return GenGoal.from_fs(fs)

    def send_time(self, value) -> dt.datetime:
        if not isinstance(value, str):
            raise FSError("SEND-TIME must be text")
        try:
            return dt.datetime.fromisoformat(value)
        except ValueError as exc:
            raise FSError(f"bad SEND-TIME: {exc}") from exc


# -- workflow ----------------------------------------------------------------


@dataclass
class WorkflowPlan:
    goal: str
    subgoals: tuple[str, ...]
    resources: dict[str, str]
    status: dict[str, str] = field(default_factory=dict)

    def __post_init__(self) -> None:
        missing = [s for s in self.subgoals if s not in self.resources]
        if missing:
            raise ValueError(f"subgoals without resource: {missing}")
        self.status = {s: "pending" for s in self.subgoals}


PLANS: dict[str, tuple[tuple[str, str], ...]] = {
    "analyze": (("extract", "extraction"), ("interpret", "semantics"), ("clarify", "generation")),
    "next-solution": (("backtrack", "semantics"),),
    "commit": (("commit", "semantics"),),
    "generate": (("realize", "generation"), ("record", "semantics")),
    "repair": (("repair-goal", "semantics"), ("realize", "generation"), ("record", "semantics")),
}


def make_plan(op: str) -> WorkflowPlan:
    steps = PLANS[op]
    return WorkflowPlan(op, tuple(s for s, _ in steps), dict(steps))


class _Skip(Exception):
    """A step decided the remaining plan does not apply."""


class WorkflowManager(Manager):
    def __init__(self, vs: "VirtualSystem") -> None:
        super().__init__("workflow")
        self.vs = vs

    def execute(self, plan: WorkflowPlan, ctx: dict) -> None:
        for sub in plan.subgoals:
            ccm = self.vs.ccms[plan.resources[sub]]
            plan.status[sub] = "running"
            try:
                getattr(self, "step_" + sub.replace("-", "_"))(ccm, ctx)
            except _Skip:
                plan.status[sub] = "skipped"
                self.vs.event(plan.goal, sub, "skipped")
                for rest in plan.subgoals[plan.subgoals.index(sub) + 1 :]:
                    plan.status[rest] = "skipped"
                return
            except Exception:
                plan.status[sub] = "failed"
                self.vs.event(plan.goal, sub, "failed")
                raise
            plan.status[sub] = "done"
            self.vs.event(plan.goal, sub, "done")

    # steps -------------------------------------------------------------

    def step_extract(self, ccm: CCM, ctx: dict) -> None:
        ccm.bind()
        grammar = self.vs.grammar
        ctx["smes"] = ccm.run(ctx["text"], grammar)
        ccm.short_term["smes"] = ctx["smes"]
        ccm.release()

    def step_interpret(self, ccm: CCM, ctx: dict) -> None:
        ccm.bind()
        dialogue: Dialogue = ccm.long_term["dialogue"]
        analysis = ccm.run(dialogue, ctx["smes"], ctx["send_time"])
        ctx["analysis"] = analysis
        if analysis.status == "ok":
            ccm.store(analysis.text.solutions())
            self.vs.status = ACTIVE
            raise _Skip
        ccm.store([])
        self.vs.status = CLARIFYING
        ctx["goal"] = analysis.goal

    def step_clarify(self, ccm: CCM, ctx: dict) -> None:
        ccm.bind()
        ctx["text_out"] = ccm.run(ctx["goal"], self.vs.params, self.vs.templates, self.vs.server_name)
        ccm.release()
        self.vs.dialogue.record_generated(ctx["goal"].il)

    def step_backtrack(self, ccm: CCM, ctx: dict) -> None:
        dialogue = self.vs.dialogue
        if ccm.released and ccm.cursor >= len(ccm.buffer):
            raise Exhausted(ccm.name)  # stays exhausted until the next analysis
        try:
            ctx["il"] = ccm.backtrack()
        except Exhausted:
            ccm.release()
            if dialogue.text is not None:
                dialogue.text.cursor = len(dialogue.text.solutions())
            raise
        dialogue.next_solution()
        ctx["rank"] = ccm.cursor

    def step_commit(self, ccm: CCM, ctx: dict) -> None:
        il = ctx.get("il") or ccm.current()
        if il is None:
            raise StateError("nothing to commit")
        ctx["il"] = self.vs.dialogue.commit(il)

    def step_realize(self, ccm: CCM, ctx: dict) -> None:
        ccm.bind()
        ctx["text_out"] = ccm.run(ctx["goal"], self.vs.params, self.vs.templates, self.vs.server_name)
        ccm.release()

    def step_record(self, ccm: CCM, ctx: dict) -> None:
        self.vs.dialogue.record_generated(ctx["goal"].il)

    def step_repair_goal(self, ccm: CCM, ctx: dict) -> None:
        ctx["goal"] = self.vs.dialogue.repair_goal()


# -- virtual systems -----------------------------------------------------------


def _interpret(dialogue: Dialogue, smes, send_time):
    return dialogue.analyze_extraction(smes, send_time)


class Components:
    """The shared component instances of one server process."""

    def __init__(self) -> None:
        self.extraction = Component("extraction", extract_message)
        self.semantics = Component("semantics", _interpret)
        self.generation = Component("generation", lambda goal, params, ts, server: realize(goal, params, ts, server))


_vs_counter = itertools.count(1)
_log_lock = threading.Lock()


class VirtualSystem:
    def __init__(self, components: Components, config: KernelConfig) -> None:
        self.id = f"vs{next(_vs_counter)}"
        self.config = config
        self.session: Optional[str] = None
        self.params = SessionParams()
        self.status = COMPLETED
        self.lock = threading.Lock()
        self.events: list[dict] = []
        self.last_used = 0
        self.data = DataManager("data")
        self.workflow = WorkflowManager(self)
        self.ccms = {
            "extraction": CCM("extraction", components.extraction, config.buffer_limit),
            "semantics": CCM("semantics", components.semantics, config.buffer_limit),
            "generation": CCM("generation", components.generation, config.buffer_limit),
        }
        self.server_name = config.server_name

    @property
    def managers(self) -> list[Manager]:
        return [self.data, self.workflow, *self.ccms.values()]

    @property
    def dialogue(self) -> Dialogue:
        return self.ccms["semantics"].long_term["dialogue"]

    def bind(self, session: str, params: SessionParams) -> None:
        if self.status not in (COMPLETED,):
            raise StateError(f"{self.id} is {self.status}; only completed systems can be reused")
        for ccm in self.ccms.values():
            ccm.clear()
        self.session, self.params, self.status = session, params, ACTIVE
        self.events = []
        self.grammar = load_grammar(params.language)
        self.templates = load_templates(params.language)
        self.ccms["semantics"].long_term["dialogue"] = Dialogue(params, self.grammar)
        self.event("open-session", "bind", "done")

    def complete(self) -> None:
        self.status = COMPLETED
        self.event("close-session", "complete", "done")

    def event(self, goal: str, step: str, status: str) -> None:
        record = {"vs": self.id, "dialogue": self.session, "goal": goal, "step": step, "status": status}
        self.events.append(record)
        log.debug("%s", record)
        if self.config.log_path:
            with _log_lock, open(self.config.log_path, "a", encoding="utf-8") as fh:
                fh.write(json.dumps(record, sort_keys=True) + "\n")


class Pool:
    """Bounded set of virtual systems; completed systems are reused least-recently-used first."""

    def __init__(self, config: Optional[KernelConfig] = None, components: Optional[Components] = None) -> None:
        self.config = config or KernelConfig()
        self.components = components or Components()
        self.systems: list[VirtualSystem] = []
        self._lock = threading.Lock()
        self._clock = itertools.count(1)

    def create_vs(self, session: str, params: SessionParams) -> VirtualSystem:
        with self._lock:
            idle = [vs for vs in self.systems if vs.status == COMPLETED]
            if idle:
                vs = min(idle, key=lambda v: v.last_used)
            elif len(self.systems) < self.config.capacity:
                vs = VirtualSystem(self.components, self.config)
                self.systems.append(vs)
            else:
                raise CapacityExceeded(f"all {self.config.capacity} virtual systems busy")
            vs.bind(session, params)
            vs.last_used = next(self._clock)
            return vs

    def reuse_vs(self, vs: VirtualSystem, session: str, params: SessionParams) -> VirtualSystem:
        with self._lock:
            vs.bind(session, params)
            vs.last_used = next(self._clock)
            return vs

    def live(self) -> list[VirtualSystem]:
        return [vs for vs in self.systems if vs.status != COMPLETED]


# -- dispatch ------------------------------------------------------------------


def _ok_solution(vs: VirtualSystem, il, rank: int, rid) -> Response:
    return Response(vs.session, "ok", {"IL": il_to_fs(il), "RANK": rank}, id=rid)


def dispatch(vs: VirtualSystem, request: Request) -> Response:
    """Run one request inside *vs*; always returns exactly one response."""
    rid = request.id
    with vs.lock:
        for m in vs.managers:
            m.enter(vs.id)
        try:
            return _dispatch(vs, request)
        except Exhausted:
            return Response(vs.session, "exhausted", {}, id=rid)
        except KernelError as exc:
            return Response.failure(vs.session, exc.code, str(exc), rid)
        except ProtocolError as exc:
            return Response.failure(vs.session, exc.code, exc.detail, rid)
        except FSError as exc:
            return Response.failure(vs.session, "bad-payload", str(exc), rid)
        except GenerationError as exc:
            return Response.failure(vs.session, "no-template", str(exc), rid)
        except Exception as exc:  # crash-freedom: report, keep the system usable
            log.exception("internal error in %s", vs.id)
            vs.event(request.op, "handler", "internal-error")
            return Response.failure(vs.session, "internal-error", f"{type(exc).__name__}: {exc}", rid)
        finally:
            for m in vs.managers:
                m.leave(vs.id)


def _dispatch(vs: VirtualSystem, request: Request) -> Response:
    rid, payload = request.id, request.payload
    if vs.status == COMPLETED:
        raise StateError("session is closed")
    if request.op == "close-session":
        vs.complete()
        return Response(vs.session, "ok", {}, id=rid)
    if request.op not in PLANS:
        raise ProtocolError("bad-request", f"{request.op} is not a session operation")

    plan = make_plan(request.op)
    ctx: dict = {}
    if request.op == "analyze":
        text = payload.get("TEXT")
        if not isinstance(text, str):
            raise FSError("analyze needs TEXT")
        ctx["text"] = text
        ctx["send_time"] = vs.data.send_time(payload.get("SEND-TIME", "1970-01-01T00:00"))
    elif request.op == "generate":
        if "GOAL" not in payload:
            raise FSError("generate needs GOAL")
        ctx["goal"] = vs.data.goal(payload["GOAL"])
    elif request.op == "commit" and "IL" in payload:
        ctx["il"] = vs.data.il(payload["IL"])

    vs.workflow.execute(plan, ctx)

    if request.op == "analyze":
        analysis = ctx["analysis"]
        if analysis.status == "ok":
            sols = analysis.text.solutions()
            out = _ok_solution(vs, sols[0], 0, rid)
            out.payload["SOLUTIONS"] = len(sols)
            out.payload["MISSPELLINGS"] = list(analysis.misspellings)
            return out
        return Response(
            vs.session,
            "clarification-needed",
            {"TEXT": ctx["text_out"], "GOAL": ctx["goal"].to_fs(), "MISSPELLINGS": list(analysis.misspellings)},
            id=rid,
        )
    if request.op == "next-solution":
        return _ok_solution(vs, ctx["il"], ctx["rank"], rid)
    if request.op == "commit":
        return Response(vs.session, "ok", {"IL": il_to_fs(ctx["il"])}, id=rid)
    if request.op == "generate":
        return Response(vs.session, "ok", {"TEXT": ctx["text_out"]}, id=rid)
    # repair
    return Response(
        vs.session, "clarification-needed", {"TEXT": ctx["text_out"], "GOAL": ctx["goal"].to_fs()}, id=rid
    )


def new_session_id() -> str:
    return uuid.uuid4().hex[:16]
