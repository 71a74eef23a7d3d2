import datetime as dt
from pathlib import Path

import pytest

from schedlang.extraction import load_grammar
from schedlang.gsi.server import GsiServer

DATA = Path(__file__).resolve().parents[1] / "src" / "schedlang" / "data"
SAMPLE = DATA / "scenarios" / "sample" / "scenario.txt"
INITIATOR = DATA / "scenarios" / "initiator" / "scenario.txt"
TURNS = DATA / "corpus" / "sample_turns"
SEND = dt.datetime(1996, 10, 28, 9, 0)


def turn(n: int) -> str:
    return (TURNS / f"turn{n:02d}.txt").read_text(encoding="utf-8").strip()


@pytest.fixture(scope="session")
def grammar():
    return load_grammar("de")


@pytest.fixture
def server():
    return GsiServer()


def pytest_terminal_summary(terminalreporter):
    from acceptance_log import lines

    rows = lines()
    if rows:
        terminalreporter.section("acceptance criteria")
        for row in rows:
            terminalreporter.write_line(row)
