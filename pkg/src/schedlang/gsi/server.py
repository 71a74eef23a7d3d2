"""Session manager and TCP front end of the language server."""

from __future__ import annotations

import asyncio
import logging
import threading
from typing import Optional

from ..coconuts import KernelConfig, KernelError, Pool, VirtualSystem, dispatch, new_session_id
from ..featstruct import FSError, decode, encode
from ..framing import FrameError, frame, read_frame
from ..params import SessionParams
from .protocol import ProtocolError, Request, Response

log = logging.getLogger(__name__)

LANGUAGES = ("de", "en")


class GsiServer:
    """Maps session ids to virtual systems and answers one response per request."""

    def __init__(self, config: Optional[KernelConfig] = None, pool: Optional[Pool] = None) -> None:
        self.config = config or KernelConfig()
        self.pool = pool or Pool(self.config)
        self.sessions: dict[str, VirtualSystem] = {}
        self._lock = threading.Lock()

    def open_session(self, params: SessionParams) -> str:
        if params.language not in LANGUAGES:
            raise ProtocolError("bad-params", f"unsupported language {params.language!r}")
        with self._lock:
            sid = new_session_id()
            while sid in self.sessions:
                sid = new_session_id()
            vs = self.pool.create_vs(sid, params)
            self.sessions[sid] = vs
        return sid

    def handle(self, request: Request) -> Response:
        rid = request.id
        try:
            if request.op == "open-session":
                params = SessionParams.from_fs(request.payload.get("PARAMS", {}))
                return Response(self.open_session(params), "ok", {}, id=rid)
            vs = self.sessions.get(request.session) if request.session else None
            if vs is None:
                return Response.failure(request.session, "unknown-session", f"no live session {request.session!r}", rid)
            response = dispatch(vs, request)
            if request.op == "close-session" and response.status == "ok":
                with self._lock:
                    self.sessions.pop(request.session, None)
            return response
        except ProtocolError as exc:
            return Response.failure(request.session, exc.code, exc.detail, rid)
        except FSError as exc:
            return Response.failure(request.session, "bad-params", str(exc), rid)
        except KernelError as exc:
            return Response.failure(request.session, exc.code, str(exc), rid)

    def handle_text(self, text: str) -> str:
        """Wire-level entry: canonical request text in, canonical response text out."""
        try:
            request = Request.from_fs(decode(text))
        except ProtocolError as exc:
            return encode(Response.failure(None, exc.code, exc.detail).to_fs())
        except FSError as exc:
            return encode(Response.failure(None, "syntax-error", str(exc)).to_fs())
        return encode(self.handle(request).to_fs())

    # -- TCP -------------------------------------------------------------

    async def _serve_client(self, reader: asyncio.StreamReader, writer: asyncio.StreamWriter) -> None:
        peer = writer.get_extra_info("peername")
        try:
            while True:
                try:
                    data = await read_frame(reader, self.config.max_frame)
                except FrameError as exc:
                    log.warning("dropping %s: %s", peer, exc)
                    break
                if data is None:
                    break
                try:
                    text = data.decode("utf-8")
                except UnicodeDecodeError:
                    reply = encode(Response.failure(None, "syntax-error", "payload is not UTF-8").to_fs())
                else:
                    reply = await self._handle_ordered(text)
                writer.write(frame(reply.encode("utf-8"), self.config.max_frame))
                await writer.drain()
        finally:
            writer.close()

    async def _handle_ordered(self, text: str) -> str:
        # Requests of one session run in arrival order; different sessions overlap.
        session = _peek_session(text)
        lock = self._session_locks.setdefault(session, asyncio.Lock())
        async with lock:
            return await asyncio.to_thread(self.handle_text, text)

    async def start(self, host: str = "127.0.0.1", port: int = 0) -> asyncio.AbstractServer:
        self._session_locks: dict[Optional[str], asyncio.Lock] = {}
        return await asyncio.start_server(self._serve_client, host, port)

    def serve_forever(self, host: str = "127.0.0.1", port: int = 7070) -> None:
        async def main() -> None:
            server = await self.start(host, port)
            addrs = ", ".join(str(s.getsockname()) for s in server.sockets)
            log.info("listening on %s", addrs)
            async with server:
                await server.serve_forever()

        asyncio.run(main())


def _peek_session(text: str) -> Optional[str]:
    try:
        fs = decode(text)
    except FSError:
        return None
    session = fs.get("SESSION") if isinstance(fs, dict) else None
    return session if isinstance(session, str) else None
