"""Request/response envelopes exchanged between clients and the server.

Request  ``[OP <op> SESSION "<id>" PAYLOAD <fs> ID <n>]``
Response ``[SESSION "<id>" STATUS <status> PAYLOAD <fs> ERROR [CODE <c> DETAIL "<d>"] ID <n>]``

Payloads per operation:

================  =========================================  ===========================================
op                request PAYLOAD                            response PAYLOAD
================  =========================================  ===========================================
open-session      [PARAMS <session params>]                  []
analyze           [TEXT "..." SEND-TIME "YYYY-MM-DDTHH:MM"]  ok: [IL .. RANK 0 SOLUTIONS n MISSPELLINGS <..>]
                                                             clarification-needed: [TEXT ".." GOAL ..]
next-solution     []                                         ok: [IL .. RANK i]; exhausted: []
commit            [] or [IL ..]                              [IL ..]
generate          [GOAL ..]                                  [TEXT ".."]
repair            []                                         clarification-needed: [TEXT ".." GOAL ..]
close-session     []                                         []
================  =========================================  ===========================================
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from ..featstruct import FSError, Sym

OPS = ("open-session", "analyze", "next-solution", "generate", "commit", "repair", "close-session")
STATUSES = ("ok", "exhausted", "clarification-needed", "error")


class ProtocolError(ValueError):
    def __init__(self, code: str, detail: str) -> None:
        super().__init__(f"{code}: {detail}")
        self.code = code
        self.detail = detail


@dataclass(frozen=True)
class Request:
    op: str
    session: Optional[str] = None
    payload: dict = field(default_factory=dict)
    id: Optional[int] = None

    def to_fs(self) -> dict:
        fs: dict = {"OP": Sym(self.op), "PAYLOAD": self.payload}
        if self.session is not None:
            fs["SESSION"] = self.session
        if self.id is not None:
            fs["ID"] = self.id
        return fs

    @classmethod
    def from_fs(cls, fs) -> "Request":
        if not isinstance(fs, dict):
            raise ProtocolError("bad-request", "request must be a map")
        op = fs.get("OP")
        if not isinstance(op, Sym) or op.name not in OPS:
            raise ProtocolError("bad-request", f"unknown op {op}")
        session = fs.get("SESSION")
        if session is not None and not isinstance(session, str):
            raise ProtocolError("bad-request", "SESSION must be text")
        payload = fs.get("PAYLOAD", {})
        if not isinstance(payload, dict):
            raise ProtocolError("bad-request", "PAYLOAD must be a map")
        rid = fs.get("ID")
        if rid is not None and (not isinstance(rid, int) or isinstance(rid, bool)):
            raise ProtocolError("bad-request", "ID must be an integer")
        extra = set(fs) - {"OP", "SESSION", "PAYLOAD", "ID"}
        if extra:
            raise ProtocolError("bad-request", f"unknown request features {sorted(extra)}")
        return cls(op.name, session, payload, rid)


@dataclass(frozen=True)
class Response:
    session: Optional[str]
    status: str
    payload: dict = field(default_factory=dict)
    error: Optional[tuple[str, str]] = None
    id: Optional[int] = None

    def __post_init__(self) -> None:
        if self.status not in STATUSES:
            raise ValueError(f"unknown status {self.status!r}")

    @classmethod
    def failure(cls, session: Optional[str], code: str, detail: str, rid: Optional[int] = None) -> "Response":
        return cls(session, "error", {}, (code, detail), rid)

    def to_fs(self) -> dict:
        fs: dict = {"STATUS": Sym(self.status), "PAYLOAD": self.payload}
        if self.session is not None:
            fs["SESSION"] = self.session
        if self.error is not None:
            fs["ERROR"] = {"CODE": Sym(self.error[0]), "DETAIL": self.error[1]}
        if self.id is not None:
            fs["ID"] = self.id
        return fs

    @classmethod
    def from_fs(cls, fs) -> "Response":
        if not isinstance(fs, dict) or not isinstance(fs.get("STATUS"), Sym):
            raise FSError("response needs a STATUS symbol")
        err = fs.get("ERROR")
        error = None
        if err is not None:
            error = (err["CODE"].name, err.get("DETAIL", ""))
        return cls(fs.get("SESSION"), fs["STATUS"].name, fs.get("PAYLOAD", {}), error, fs.get("ID"))
