import datetime as dt
import re
from pathlib import Path

import pytest
from hypothesis import given, strategies as st

from schedlang.generation import GenerationError, TemplateSet, aggregate, load_templates, realize
from schedlang.goals import GOAL_KINDS, GenGoal, Inconsistency
from schedlang.il import Coop, ILExpression
from schedlang.params import SessionParams
from schedlang.generation import templates as templates_module
from schedlang.temporal import Interval, TimePoint

NOV4, NOV5, NOV6 = dt.date(1996, 11, 4), dt.date(1996, 11, 5), dt.date(1996, 11, 6)
TEMPLATE_DIR = Path(templates_module.__file__).parent / "data"
ANNA = SessionParams(owner="Anna Arndt", owner_reference="full-name")


def slots_goal(*slots):
    return GenGoal("provide-slots", ILExpression(Coop.PROVIDE_SLOTS, slots=tuple(slots), duration=60))


def test_aggregate_groups_by_date():
    a, b = Interval.on(NOV5, 480, 720), Interval.on(NOV5, 960, 1080)
    assert aggregate([b, a]) == [(NOV5, [a, b])]
    assert aggregate([]) == []
    c = Interval.on(NOV4, 600, 660)
    assert [day for day, _ in aggregate([a, c])] == [NOV4, NOV5]


slot_lists = st.lists(
    st.tuples(st.sampled_from([NOV4, NOV5, NOV6]), st.integers(8, 16)).map(lambda p: Interval.on(p[0], p[1] * 60, p[1] * 60 + 60)),
    min_size=1,
    max_size=6,
    unique=True,
)


@given(slot_lists)
def test_one_date_mention_per_distinct_date(slots):
    text = realize(slots_goal(*slots))
    for day in {s.left.date() for s in slots}:
        assert text.count(f"{day.day}. {day.month}. {day.year}") == 1
    assert len(re.findall(r"\d+\. \d+\. \d{4}", text)) == len({s.left.date() for s in slots})


def test_reference_machine_strings():
    accept = GenGoal("accept", ILExpression(Coop.ACCEPT, appt=Interval.on(NOV5, 600, 660), duration=60))
    assert realize(accept) == "Ich sage den 5. 11. 1996 um 10 Uhr zu."
    assert realize(slots_goal(Interval.on(NOV4, 780, 1080))) == "Am 4. 11. 1996 paßt es bei mir zwischen 13 und 18 Uhr."
    assert realize(slots_goal(Interval.on(NOV5, 480, 720), Interval.on(NOV5, 960, 1080))) == (
        "Zu folgenden Zeiten geht es bei mir: am 5. 11. 1996 zwischen 8 und 12 Uhr und zwischen 16 und 18 Uhr."
    )
    reject = GenGoal("reject", ILExpression(Coop.REJECT, range=Interval.on(NOV4, 480, 1080), duration=60))
    assert realize(reject) == "Leider kann ich am 4. 11. 1996 nicht kommen."


def test_weekday_mismatch_clarification_text():
    bad = Inconsistency("weekday-date-mismatch", TimePoint(1996, 11, 2), stated=1, computed=6)
    goal = GenGoal("clarification-request", ILExpression(Coop.REQUEST_CLARIFICATION), inconsistency=bad)
    assert realize(goal) == (
        "COSMA hat die folgende Zeitangabe verstanden, die nicht konsistent ist: Montag, den 2. 11. 1996. "
        "Könnten Sie bitte den Wochentag oder das Datum korrigieren?"
    )
    assert "Könntest du" in realize(goal, SessionParams(formality="informal"))


def test_vague_clarification_lists_misspellings():
    goal = GenGoal(
        "clarification-request", ILExpression(Coop.REQUEST_CLARIFICATION),
        inconsistency=Inconsistency("empty-extraction"), misspellings=("Montak",),
    )
    text = realize(goal)
    assert "Datum und Uhrzeit" in text and "Montak" in text


goals = st.sampled_from([
    GenGoal("accept", ILExpression(Coop.ACCEPT, appt=Interval.on(NOV5, 600, 660), duration=60)),
    GenGoal("reject", ILExpression(Coop.REJECT, range=Interval.on(NOV4, 480, 1080), duration=60)),
    GenGoal("propose", ILExpression(Coop.PROPOSE, appt=Interval.on(NOV5, 600, 690), duration=90)),
    GenGoal("cancel", ILExpression(Coop.CANCEL, appt=Interval.on(NOV5, 600, 660), duration=60)),
    slots_goal(Interval.on(NOV5, 480, 720)),
])


@given(goals)
def test_owner_reference_style(goal):
    named = realize(goal, ANNA)
    assert "Anna Arndt" in named
    assert not re.search(r"\b(ich|mir|mich|mein\w*)\b", named, re.IGNORECASE)
    plain = realize(goal, SessionParams(owner="Anna Arndt"))
    assert "Anna Arndt" not in plain
    assert re.search(r"\b(ich|mir)\b", plain, re.IGNORECASE)


def test_fix_confirmation_is_impersonal():
    goal = GenGoal("fix-confirm", ILExpression(Coop.FIX, appt=Interval.on(NOV5, 600, 660), duration=60))
    assert realize(goal, ANNA) == realize(goal) == "Das Treffen wird also am 5. 11. 1996 um 10 Uhr stattfinden."


def test_anaphoric_style_names_the_weekday():
    goal = GenGoal("fix-confirm", ILExpression(Coop.FIX, appt=Interval.on(NOV5, 600, 660), duration=60))
    text = realize(goal, SessionParams(time_style="anaphoric-preferred"))
    assert text == "Das Treffen wird also am Dienstag, dem 5. 11. 1996, um 10 Uhr stattfinden."


@given(goals, st.sampled_from(["de", "en"]))
def test_deterministic(goal, language):
    params = SessionParams(language=language)
    assert realize(goal, params) == realize(goal, params)


@pytest.mark.parametrize("language", ["de", "en"])
def test_every_kind_has_a_template(language):
    ts = load_templates(language)
    for kind in GOAL_KINDS:
        assert ts.of_kind(kind), kind


def test_missing_template_is_reported():
    source = TEMPLATE_DIR.joinpath("templates_de.tsv").read_text(encoding="utf-8")
    stripped = "\n".join(line for line in source.splitlines() if not line.startswith("accept\t"))
    ts = TemplateSet.parse(stripped, "de")
    goal = GenGoal("accept", ILExpression(Coop.ACCEPT, appt=Interval.on(NOV5, 600, 660), duration=60))
    with pytest.raises(GenerationError):
        realize(goal, templates=ts)
