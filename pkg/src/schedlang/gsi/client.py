"""Clients for the language server: in-process and over TCP.

Both speak the canonical wire text, so a :class:`LocalClient` exercises
exactly the same encode/decode path as a remote one.
"""

from __future__ import annotations

import datetime as dt
import itertools
import socket
from typing import Optional

from ..featstruct import decode, encode
from ..framing import DEFAULT_MAX_FRAME, FrameDecoder, frame
from ..goals import GenGoal
from ..il import ILExpression, il_to_fs
from ..params import SessionParams
from .protocol import Request, Response


class ClientError(RuntimeError):
    def __init__(self, response: Response) -> None:
        code, detail = response.error or ("unknown", "")
        super().__init__(f"{code}: {detail}")
        self.response = response
        self.code = code


class _BaseClient:
    def __init__(self) -> None:
        self.session: Optional[str] = None
        self._ids = itertools.count(1)

    def _exchange(self, text: str) -> str:  # pragma: no cover - abstract
        raise NotImplementedError

    def request(self, op: str, payload: Optional[dict] = None) -> Response:
        req = Request(op, self.session, payload or {}, next(self._ids))
        return Response.from_fs(decode(self._exchange(encode(req.to_fs()))))

    def _checked(self, op: str, payload: Optional[dict] = None) -> Response:
        response = self.request(op, payload)
        if response.status == "error":
            raise ClientError(response)
        return response

    def open_session(self, params: Optional[SessionParams] = None) -> str:
        params = params or SessionParams()
        self.session = None
        self.session = self._checked("open-session", {"PARAMS": params.to_fs()}).session
        return self.session

    def analyze(self, text: str, send_time: dt.datetime) -> Response:
        return self._checked("analyze", {"TEXT": text, "SEND-TIME": send_time.isoformat(timespec="minutes")})

    def next_solution(self) -> Response:
        return self._checked("next-solution")

    def commit(self, il: Optional[ILExpression] = None) -> Response:
        return self._checked("commit", {"IL": il_to_fs(il)} if il is not None else {})

    def generate(self, goal: GenGoal) -> str:
        return self._checked("generate", {"GOAL": goal.to_fs()}).payload["TEXT"]

    def repair(self) -> Response:
        return self._checked("repair")

    def close(self) -> None:
        if self.session is not None:
            self._checked("close-session")
            self.session = None


class LocalClient(_BaseClient):
    def __init__(self, server) -> None:
        super().__init__()
        self.server = server

    def _exchange(self, text: str) -> str:
        return self.server.handle_text(text)


class TcpClient(_BaseClient):
    def __init__(self, host: str, port: int, timeout: float = 10.0, max_frame: int = DEFAULT_MAX_FRAME) -> None:
        super().__init__()
        self.sock = socket.create_connection((host, port), timeout=timeout)
        self.max_frame = max_frame
        self._decoder = FrameDecoder(max_frame)
        self._queue: list[bytes] = []

    def _exchange(self, text: str) -> str:
        self.sock.sendall(frame(text.encode("utf-8"), self.max_frame))
        while not self._queue:
            chunk = self.sock.recv(65536)
            if not chunk:
                self._decoder.close()
                raise ConnectionError("server closed the connection")
            self._queue.extend(self._decoder.feed(chunk))
        return self._queue.pop(0).decode("utf-8")

    def disconnect(self) -> None:
        self.sock.close()

    def __enter__(self) -> "TcpClient":
        return self

    def __exit__(self, *exc) -> None:
        self.disconnect()
