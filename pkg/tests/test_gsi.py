import asyncio
import datetime as dt
import socket
import threading

import pytest

from schedlang.featstruct import Sym, decode, encode
from schedlang.framing import frame
from schedlang.gsi.client import ClientError, LocalClient, TcpClient
from schedlang.gsi.protocol import Request, Response
from schedlang.gsi.server import GsiServer
from schedlang.il import Coop, il_from_fs
from schedlang.params import SessionParams

from conftest import SEND, turn


def test_sessions_get_distinct_ids(server):
    ids = {LocalClient(server).open_session() for _ in range(20)}
    assert len(ids) == 20 and all(len(i) == 16 for i in ids)


def test_bad_params(server):
    reply = decode(server.handle_text('[OP open-session PAYLOAD [PARAMS [LANGUAGE "fr"]]]'))
    assert reply["STATUS"] == Sym("error") and reply["ERROR"]["CODE"] == Sym("bad-params")


@pytest.mark.parametrize(
    "text, code",
    [
        ("[OP", "syntax-error"),
        ("[OP fly]", "bad-request"),
        ('[OP analyze SESSION "nope" PAYLOAD []]', "unknown-session"),
        ("<1 2>", "bad-request"),
    ],
)
def test_structured_errors(server, text, code):
    reply = decode(server.handle_text(text))
    assert reply["ERROR"]["CODE"] == Sym(code)


def test_request_round_trip():
    req = Request("analyze", "abc", {"TEXT": "x"}, 7)
    assert Request.from_fs(decode(encode(req.to_fs()))) == req
    resp = Response("abc", "ok", {"RANK": 0}, None, 7)
    assert Response.from_fs(decode(encode(resp.to_fs()))) == resp


def test_sessions_are_isolated(server):
    a, b = LocalClient(server), LocalClient(server)
    a.open_session()
    b.open_session()
    a.analyze(turn(3), SEND)
    a.commit()
    # b has no memory of the Monday proposal, so "um 10" falls back to the send date
    out = il_from_fs(b.analyze(turn(9), SEND).payload["IL"])
    assert out.appt.left.date() == dt.date(1996, 10, 28)
    out = il_from_fs(a.analyze(turn(9), SEND).payload["IL"])
    assert out.appt.left.date() == dt.date(1996, 11, 4)


def test_closed_session_is_forgotten(server):
    c = LocalClient(server)
    c.open_session()
    sid = c.session
    c.close()
    c.session = sid
    with pytest.raises(ClientError) as info:
        c.analyze(turn(11), SEND)
    assert info.value.code == "unknown-session"


@pytest.fixture
def tcp_server():
    server = GsiServer()
    loop = asyncio.new_event_loop()
    ready = threading.Event()
    holder = {}

    async def boot():
        holder["srv"] = await server.start("127.0.0.1", 0)
        ready.set()

    thread = threading.Thread(target=lambda: (loop.run_until_complete(boot()), loop.run_forever()), daemon=True)
    thread.start()
    ready.wait(5)
    port = holder["srv"].sockets[0].getsockname()[1]
    yield port
    loop.call_soon_threadsafe(holder["srv"].close)
    loop.call_soon_threadsafe(loop.stop)
    thread.join(5)


def test_tcp_backtracking(tcp_server):
    with TcpClient("127.0.0.1", tcp_server) as c:
        c.open_session(SessionParams())
        c.analyze(turn(3), SEND)
        c.commit()
        first = c.analyze(turn(6), SEND)
        assert first.payload["SOLUTIONS"] == 2
        second = c.next_solution()
        assert il_from_fs(second.payload["IL"]).coop in (Coop.MODIFY, Coop.REJECT)
        assert c.next_solution().status == "exhausted"
        assert "COSMA" in c.repair().payload["TEXT"]
        c.close()


def test_tcp_concurrent_sessions(tcp_server):
    results = {}

    def talk(i):
        with TcpClient("127.0.0.1", tcp_server) as c:
            c.open_session()
            results[i] = il_from_fs(c.analyze(turn(11), SEND).payload["IL"])
            c.close()

    threads = [threading.Thread(target=talk, args=(i,)) for i in range(8)]
    for t in threads:
        t.start()
    for t in threads:
        t.join(10)
    assert len(results) == 8 and len(set(results.values())) == 1


def test_tcp_bad_utf8_and_server_survives(tcp_server):
    with socket.create_connection(("127.0.0.1", tcp_server), timeout=5) as s:
        s.sendall(frame(b"\xff\xfe"))
        header = s.recv(4)
        body = b""
        while len(body) < int.from_bytes(header, "big"):
            body += s.recv(4096)
        assert decode(body.decode())["ERROR"]["CODE"] == Sym("syntax-error")
    with TcpClient("127.0.0.1", tcp_server) as c:
        assert c.open_session()
