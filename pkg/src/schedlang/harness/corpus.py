"""Batch analysis of message files; one report row per file, never aborting."""

from __future__ import annotations

import datetime as dt
import json
from pathlib import Path
from typing import Iterable, Optional

from ..featstruct import encode
from ..gsi.client import ClientError, LocalClient
from ..gsi.server import GsiServer
from ..params import SessionParams

DEFAULT_SEND_TIME = dt.datetime(1996, 10, 28, 9, 0)
ROW_KINDS = ("il", "clarification")


def read_message(path: Path) -> str:
    return path.read_bytes().decode("utf-8", errors="replace")


def analyze_text(
    client: LocalClient, text: str, params: SessionParams, send_time: dt.datetime = DEFAULT_SEND_TIME
) -> dict:
    """Analyze one message in a fresh session; the row says what came out."""
    client.open_session(params)
    try:
        response = client.request("analyze", {"TEXT": text, "SEND-TIME": send_time.isoformat(timespec="minutes")})
        payload = response.payload
        if response.status == "ok":
            return {
                "kind": "il",
                "il": encode(payload["IL"]),
                "solutions": payload.get("SOLUTIONS", 1),
                "misspellings": list(payload.get("MISSPELLINGS", [])),
            }
        if response.status == "clarification-needed":
            goal = payload["GOAL"]
            return {
                "kind": "clarification",
                "deficiency": goal["INCONSISTENCY"]["KIND"].name,
                "text": payload["TEXT"],
                "misspellings": list(payload.get("MISSPELLINGS", [])),
            }
        code, detail = response.error or (response.status, "")
        return {"kind": "error", "error": f"{code}: {detail}"}
    finally:
        try:
            client.close()
        except ClientError:
            client.session = None


def analyze_texts(
    texts: Iterable[tuple[str, str]],
    language: str = "de",
    server: Optional[GsiServer] = None,
    send_time: dt.datetime = DEFAULT_SEND_TIME,
) -> list[dict]:
    server = server or GsiServer()
    client = LocalClient(server)
    params = SessionParams.with_defaults(language=language)
    rows = []
    for name, text in texts:
        try:
            row = analyze_text(client, text, params, send_time)
        except Exception as exc:  # a report row, never an abort
            row = {"kind": "crash", "error": f"{type(exc).__name__}: {exc}"}
        rows.append({"file": name, **row})
    return rows


def analyze_corpus(
    directory: str | Path,
    language: str = "de",
    server: Optional[GsiServer] = None,
    send_time: dt.datetime = DEFAULT_SEND_TIME,
) -> list[dict]:
    files = sorted(p for p in Path(directory).iterdir() if p.is_file())
    return analyze_texts(((p.name, read_message(p)) for p in files), language, server, send_time)


def report_jsonl(rows: list[dict]) -> str:
    return "".join(json.dumps(r, sort_keys=True, ensure_ascii=False) + "\n" for r in rows)
