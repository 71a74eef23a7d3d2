import json

import pytest

from schedlang.harness import (
    ScenarioError,
    Transcript,
    analyze_corpus,
    analyze_texts,
    load_scenario,
    parse_scenario,
    run_scenario,
)
from schedlang.harness.cli import main

from conftest import INITIATOR, SAMPLE, TURNS

REFERENCE_MACHINE_TURNS = [
    "COSMA hat die folgende Zeitangabe verstanden, die nicht konsistent ist: Montag, den 2. 11. 1996. "
    "Könnten Sie bitte den Wochentag oder das Datum korrigieren?",
    "Am 4. 11. 1996 paßt es bei mir zwischen 13 und 18 Uhr.",
    "Leider kann ich am 4. 11. 1996 nicht kommen.",
    "Zu folgenden Zeiten geht es bei mir: am 5. 11. 1996 zwischen 8 und 12 Uhr und zwischen 16 und 18 Uhr.",
    "Am 5. 11. 1996 paßt es bei mir zwischen 10 und 12 Uhr.",
    "Ich sage den 5. 11. 1996 um 10 Uhr zu.",
]


@pytest.mark.parametrize("path", [SAMPLE, INITIATOR], ids=["sample", "initiator"])
def test_golden_transcripts(path):
    expected = (path.parent / "expected.jsonl").read_text(encoding="utf-8")
    assert run_scenario(path).to_jsonl() == expected


def test_sample_contains_every_reference_machine_turn():
    texts = [r["text"] for r in run_scenario(SAMPLE).records if r["sender"] in ("A", "B")]
    for line in REFERENCE_MACHINE_TURNS:
        assert line in texts


def test_transcript_jsonl_round_trip():
    t = run_scenario(INITIATOR)
    again = Transcript.from_jsonl(t.to_jsonl())
    assert again.records == t.records
    assert [r["seq"] for r in t.records] == list(range(1, len(t) + 1))


def test_initiator_outcome():
    records = run_scenario(INITIATOR).records
    fixes = [r for r in records if r["il"] and "COOP fix" in r["il"]]
    assert {r["recipient"] for r in fixes} == {"D", "E"}
    assert all("Clara Conrad" in r["text"] or "Treffen" in r["text"] for r in records if r["sender"] == "C")
    assert not any(r.get("violation") for r in records)


def test_empty_scenario():
    sc = parse_scenario("# nothing\nlanguage de\n")
    assert len(run_scenario(sc)) == 0


@pytest.mark.parametrize(
    "text, line",
    [
        ("human H\nagent A\nsend 1996-10-28T09:00 H -> Z | hallo", 3),
        ("human H\nagent A\nfly away", 3),
        ("human H\nagent A\nsend 1996-10-28T10:00 H -> A | a\nsend 1996-10-28T09:00 H -> A | b", 4),
        ("language xx", 1),
        ("agent A colour=red", 1),
        ("agent A calendar=missing.cal", 1),
        ("human H\nagent A\nsend 1996-10-28T09:00 H -> A hallo", 3),
        ("agent A\nagent B\ninitiate 1996-10-28T09:00 A -> B range 1996-11-05T08:00 1996-11-04T08:00 duration 60", 3),
    ],
)
def test_scenario_errors_name_the_line(tmp_path, text, line):
    path = tmp_path / "bad.txt"
    path.write_text(text, encoding="utf-8")
    with pytest.raises(ScenarioError) as info:
        load_scenario(path)
    assert info.value.line == line
    assert f"bad.txt:{line}:" in str(info.value)


def test_corpus_never_aborts(tmp_path):
    (tmp_path / "empty.txt").write_bytes(b"")
    (tmp_path / "binary.bin").write_bytes(bytes(range(256)) * 4)
    (tmp_path / "ok.txt").write_text("Können wir uns am 5. 11. 1996 um 10 Uhr treffen?", encoding="utf-8")
    rows = {r["file"]: r for r in analyze_corpus(tmp_path)}
    assert rows["empty.txt"]["kind"] == "clarification"
    assert rows["binary.bin"]["kind"] in ("il", "clarification")
    assert rows["ok.txt"]["kind"] == "il"


def test_sample_turn_corpus():
    rows = analyze_corpus(TURNS)
    assert len(rows) == 11
    assert {r["kind"] for r in rows} <= {"il", "clarification"}
    first = next(r for r in rows if r["file"] == "turn01.txt")
    assert first["deficiency"] == "weekday-date-mismatch"


def test_misspellings_in_report():
    (row,) = analyze_texts([("m", "Montak um 10 Uhr?")])
    assert "Montak" in row["misspellings"]


def test_cli_run_and_analyze(tmp_path, capsys):
    out = tmp_path / "t.jsonl"
    assert main(["run", str(SAMPLE), "--transcript", str(out)]) == 0
    assert out.read_text(encoding="utf-8") == (SAMPLE.parent / "expected.jsonl").read_text(encoding="utf-8")
    report = tmp_path / "r.jsonl"
    assert main(["analyze", str(TURNS), "--report", str(report)]) == 0
    assert len(report.read_text().splitlines()) == 11
    assert "il=" in capsys.readouterr().err
    bad = tmp_path / "bad.txt"
    bad.write_text("fly", encoding="utf-8")
    assert main(["run", str(bad)]) == 2


def test_cli_english_override(capsys):
    assert main(["--language", "en", "run", str(SAMPLE)]) == 0
    rows = [json.loads(line) for line in capsys.readouterr().out.splitlines()]
    assert rows
