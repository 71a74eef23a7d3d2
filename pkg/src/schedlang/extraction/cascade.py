"""Finite-state constituent cascade driven by a declarative automata file.

Automata file format (``#`` starts a comment)::

    stage <n>
    <CATEGORY> : <element> <element> ... => <action> <action> ...

    frame <frame-id> <priority>
      <cue>[+<cue>...] -> <action-evidence>
      * -> <action-evidence>

A pattern element is ``[binder=]alternative|alternative[?*+]``.  An
alternative is one or more atoms joined by ``&``; an atom may be negated
with a leading ``!``:

    "lit"        token whose lower-cased surface or lemma equals lit
    <kind>       token kind (number, date-pattern, clock-pattern, ordinal,
                 word, punct) or <year4> for a four-digit number
    :pos         token with a lexicon entry of that part of speech
    {feat}       token with a lexicon entry carrying feature feat
    {feat=val}   ... with that feature value
    CATEGORY     constituent built by an earlier stage

Stages run in order.  Within a stage the input is scanned left to right;
at each position the longest match wins and ties go to the rule listed
first.  Matches whose resulting fields violate the category shape are
discarded.  Frames map clause cues to domain-action evidence for verbs
(see :mod:`schedlang.semantics.gather`).
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Callable, Iterator, Optional, Union

from ..temporal import expand_year
from .lexicon import Lexicon, LexEntry
from .tokenizer import Token, parse_clock_pattern, parse_date_pattern

CATEGORIES = (
    "PP_temp",
    "PP_temp-date",
    "PP_temp-day",
    "PP_temp-dur",
    "PP_temp-time",
    "NP_temp",
    "NP_temp-date",
    "NP_temp-day",
    "NP_temp-time",
    "NP_other",
    "PP_other",
)
TEMPORAL_CATEGORIES = frozenset(c for c in CATEGORIES if "_temp" in c)


class AutomataError(ValueError):
    pass


@dataclass(frozen=True)
class Constituent:
    category: str
    fields: dict
    start: int
    end: int
    tokens: tuple[Token, ...] = field(repr=False, default=())

    @property
    def span(self) -> tuple[int, int]:
        return (self.start, self.end)

    @property
    def temporal(self) -> bool:
        return self.category in TEMPORAL_CATEGORIES


Item = Union[Token, Constituent]


def item_tokens(item: Item) -> tuple[Token, ...]:
    return item.tokens if isinstance(item, Constituent) else (item,)


# -- category field shapes ---------------------------------------------------

_DATE_KEYS = {"day", "month", "year", "weekday", "rel"}
_TIME_KEYS = {"hour", "minute"}


def _clock_ok(d: Any) -> bool:
    return (
        isinstance(d, dict)
        and set(d) <= _TIME_KEYS
        and isinstance(d.get("hour"), int)
        and 0 <= d["hour"] <= 23
        and 0 <= d.get("minute", 0) <= 59
    )


def _date_ok(d: Any) -> bool:
    return (
        isinstance(d, dict)
        and set(d) <= _DATE_KEYS
        and isinstance(d.get("day"), int)
        and isinstance(d.get("month"), int)
        and 1 <= d["day"] <= 31
        and 1 <= d["month"] <= 12
        and 1 <= d.get("weekday", 1) <= 7
    )


def shape_ok(category: str, fields: dict) -> bool:
    """Category/field agreement."""
    keys = set(fields)
    kind = category.split("-", 1)[1] if "-" in category else None
    if category in ("NP_other", "PP_other"):
        return keys <= {"topic", "anaphor"}
    if kind == "time":
        return _clock_ok(fields)
    if kind == "date":
        return _date_ok(fields)
    if kind == "day":
        return keys <= {"weekday", "rel"} and isinstance(fields.get("weekday"), int) and 1 <= fields["weekday"] <= 7
    if kind == "dur":
        if "from" in fields or "to" in fields:
            extra = keys - {"from", "to", "span"}
            return (
                not extra
                and _clock_ok(fields.get("from"))
                and _clock_ok(fields.get("to"))
                and fields.get("span") in ("range", "appt")
            )
        return keys == {"fromdate", "todate"} and _date_ok(fields["fromdate"]) and _date_ok(fields["todate"])
    if category in ("PP_temp", "NP_temp"):
        if not keys or not keys <= {"rel", "duration"}:
            return False
        if "duration" in fields and not (isinstance(fields["duration"], int) and fields["duration"] > 0):
            return False
        return True
    return False


# -- pattern atoms -----------------------------------------------------------


def _entries(item: Item, lexicon: Lexicon) -> tuple[LexEntry, ...]:
    if isinstance(item, Token) and item.kind == "word":
        return lexicon.lookup(item.surface)
    return ()


def _compile_atom(text: str) -> Callable[[Item, Lexicon], bool]:
    if text.startswith("!"):
        inner = _compile_atom(text[1:])
        return lambda item, lex: not inner(item, lex)
    if text.startswith('"') and text.endswith('"') and len(text) >= 3:
        lit = text[1:-1].lower()

        def lit_test(item, lex):
            if not isinstance(item, Token):
                return False
            if item.surface.lower() == lit:
                return True
            return any(e.lemma.lower() == lit for e in _entries(item, lex))

        return lit_test
    if text.startswith("<") and text.endswith(">"):
        kind = text[1:-1]
        if kind == "year4":
            return lambda item, lex: isinstance(item, Token) and item.kind == "number" and len(item.surface) == 4
        return lambda item, lex: isinstance(item, Token) and item.kind == kind
    if text.startswith(":"):
        pos = text[1:]
        return lambda item, lex: any(e.pos == pos for e in _entries(item, lex))
    if text.startswith("{") and text.endswith("}"):
        name, sep, value = text[1:-1].partition("=")
        if sep:
            return lambda item, lex: any(e.features.get(name) == value for e in _entries(item, lex))
        return lambda item, lex: any(name in e.features for e in _entries(item, lex))
    if text in CATEGORIES:
        return lambda item, lex: isinstance(item, Constituent) and item.category == text
    raise AutomataError(f"bad pattern atom {text!r}")


@dataclass
class Element:
    binder: Optional[str]
    alternatives: list[list[Callable]]
    quant: str  # "", "?", "*", "+"
    source: str
    body: str = ""

    def test(self, item: Item, lex: Lexicon) -> bool:
        return any(all(atom(item, lex) for atom in alt) for alt in self.alternatives)


_ELEMENT_RE = re.compile(r'^(?:(?P<binder>[a-z][a-z0-9_]*)=)?(?P<body>.+?)(?P<quant>[?*+]?)$')


def _split_alternatives(body: str) -> list[str]:
    parts, depth, cur, quoted = [], 0, "", False
    for ch in body:
        if ch == '"':
            quoted = not quoted
        if ch == "|" and not quoted:
            parts.append(cur)
            cur = ""
        else:
            cur += ch
    parts.append(cur)
    return parts


def _parse_element(text: str) -> Element:
    m = _ELEMENT_RE.match(text)
    if not m:
        raise AutomataError(f"bad pattern element {text!r}")
    body, quant = m.group("body"), m.group("quant")
    alts = []
    for alt in _split_alternatives(body):
        alts.append([_compile_atom(a) for a in alt.split("&")])
    return Element(m.group("binder"), alts, quant, text, body)


# -- actions -----------------------------------------------------------------


def _first(value: Any) -> Any:
    if isinstance(value, list):
        return value[0] if value else None
    return value


def _lex_feature(item: Item, lex: Lexicon, name: str) -> Optional[str]:
    for entry in _entries(item, lex):
        if name in entry.features:
            return entry.features[name]
    return None


def _digits(item: Item) -> Optional[int]:
    if isinstance(item, Token):
        digits = re.match(r"\d+", item.surface)
        if digits:
            return int(digits.group())
    return None


def _time_fields(item: Item) -> Optional[dict]:
    if isinstance(item, Constituent):
        return {k: v for k, v in item.fields.items() if k in _TIME_KEYS} or None
    if item.kind == "clock-pattern":
        hour, minute = parse_clock_pattern(item.surface)
        return {"hour": hour, "minute": minute}
    if item.kind == "number":
        return {"hour": int(item.surface)}
    return None


def _date_fields(item: Item) -> Optional[dict]:
    if isinstance(item, Constituent):
        return {k: v for k, v in item.fields.items() if k in _DATE_KEYS} or None
    if item.kind == "date-pattern":
        day, month, year = parse_date_pattern(item.surface)
        out = {"day": day, "month": month}
        if year is not None:
            out["year"] = expand_year(year)
        return out
    return None


class _Invalid(Exception):
    pass


def _act_weekday(f, b, lex, x):
    item = _first(b.get(x))
    if item is None:
        return
    if isinstance(item, Constituent):
        if "weekday" in item.fields:
            f["weekday"] = item.fields["weekday"]
        return
    value = _lex_feature(item, lex, "weekday")
    if value is not None:
        f["weekday"] = int(value)


def _act_date(f, b, lex, x):
    item = _first(b.get(x))
    if item is None:
        return
    fields = _date_fields(item)
    if fields is None:
        raise _Invalid
    f.update(fields)


def _act_day(f, b, lex, x):
    item = _first(b.get(x))
    if item is not None:
        value = _digits(item)
        if value is None:
            raise _Invalid
        f["day"] = value


def _act_month(f, b, lex, x):
    item = _first(b.get(x))
    if item is None:
        return
    value = _lex_feature(item, lex, "month")
    if value is None:
        value = _digits(item)
    if value is None:
        raise _Invalid
    f["month"] = int(value)


def _act_year(f, b, lex, x):
    item = _first(b.get(x))
    if item is not None:
        value = _digits(item)
        if value is None:
            raise _Invalid
        f["year"] = expand_year(value)


def _act_time(f, b, lex, x):
    item = _first(b.get(x))
    if item is None:
        return
    fields = _time_fields(item)
    if fields is None:
        raise _Invalid
    f.update(fields)


def _act_ampm(f, b, lex, x):
    item = _first(b.get(x))
    if item is None or "hour" not in f:
        return
    marker = _lex_feature(item, lex, "ampm")
    if marker == "pm" and f["hour"] < 12:
        f["hour"] += 12
    elif marker == "am" and f["hour"] == 12:
        f["hour"] = 0


def _bound(key):
    def act(f, b, lex, x):
        item = _first(b.get(x))
        if item is None:
            raise _Invalid
        fields = _time_fields(item)
        if fields is None:
            raise _Invalid
        f[key] = fields

    return act


def _date_bound(key):
    def act(f, b, lex, x):
        item = _first(b.get(x))
        if item is None:
            raise _Invalid
        fields = _date_fields(item)
        if fields is None:
            raise _Invalid
        f[key] = fields

    return act


def _act_pmspan(f, b, lex):
    lo, hi = f.get("from"), f.get("to")
    if lo and hi and hi["hour"] >= 12 and lo["hour"] < 12 and lo["hour"] + 12 <= hi["hour"]:
        lo["hour"] += 12


def _act_copy(f, b, lex, x):
    item = _first(b.get(x))
    if isinstance(item, Constituent):
        for k, v in item.fields.items():
            f[k] = dict(v) if isinstance(v, dict) else v


def _act_rel(f, b, lex, x):
    if x in b:
        item = _first(b[x])
        if item is None:
            return
        value = _lex_feature(item, lex, "rel")
        if value is None:
            raise _Invalid
    else:
        value = x
    f["rel"] = value


def _act_mod(f, b, lex, x):
    item = _first(b.get(x))
    if item is not None:
        value = _lex_feature(item, lex, "mod")
        if value is None:
            raise _Invalid
        f["rel"] = value


def _act_relunit(f, b, lex, m, u):
    mod_item, unit_item = _first(b.get(m)), _first(b.get(u))
    if mod_item is None or unit_item is None:
        raise _Invalid
    mod = _lex_feature(mod_item, lex, "mod")
    unit = _lex_feature(unit_item, lex, "unit")
    if mod is None or unit is None:
        raise _Invalid
    f["rel"] = f"{mod}-{unit}"


def _act_dur(f, b, lex, n, u):
    count_item, unit_item = _first(b.get(n)), _first(b.get(u))
    if count_item is None or unit_item is None:
        raise _Invalid
    count = _digits(count_item)
    if count is None:
        raw = _lex_feature(count_item, lex, "count")
        count = int(raw) if raw is not None else None
    minutes = _lex_feature(unit_item, lex, "minutes")
    if count is None or minutes is None:
        raise _Invalid
    f["duration"] = count * int(minutes)


def _act_set(f, b, lex, key, value):
    f[key] = value


def _act_anaphor(f, b, lex, x):
    if _first(b.get(x)) is not None:
        f["anaphor"] = 1


def _act_topic(f, b, lex, x):
    item = _first(b.get(x))
    if isinstance(item, Token):
        entries = _entries(item, lex)
        f["topic"] = entries[0].lemma if entries else item.surface


ACTIONS: dict[str, Callable] = {
    "weekday": _act_weekday,
    "date": _act_date,
    "day": _act_day,
    "month": _act_month,
    "year": _act_year,
    "time": _act_time,
    "ampm": _act_ampm,
    "from": _bound("from"),
    "to": _bound("to"),
    "fromdate": _date_bound("fromdate"),
    "todate": _date_bound("todate"),
    "pmspan": _act_pmspan,
    "copy": _act_copy,
    "rel": _act_rel,
    "mod": _act_mod,
    "relunit": _act_relunit,
    "dur": _act_dur,
    "set": _act_set,
    "anaphor": _act_anaphor,
    "topic": _act_topic,
}

_ACTION_RE = re.compile(r"([a-z]+)\(([^)]*)\)")


@dataclass
class Rule:
    category: str
    elements: list[Element]
    actions: list[tuple[str, tuple[str, ...]]]
    lineno: int

    def matches(
        self, items: list[Item], pos: int, lex: Lexicon, memo: Optional[dict] = None
    ) -> Iterator[tuple[int, dict]]:
        yield from self._match(items, pos, 0, {}, (lex, {} if memo is None else memo))

    @staticmethod
    def _test(el: Element, items: list[Item], pos: int, ctx: tuple) -> bool:
        lex, memo = ctx
        key = (el.body, pos)  # same body, same test; items are fixed per stage
        hit = memo.get(key)
        if hit is None:
            hit = memo[key] = el.test(items[pos], lex)
        return hit

    def _match(self, items, pos, k, binds, ctx):
        if k == len(self.elements):
            yield pos, binds
            return
        el = self.elements[k]
        if el.quant in ("", "+"):
            if pos < len(items) and self._test(el, items, pos, ctx):
                if el.quant == "":
                    nb = dict(binds)
                    if el.binder:
                        nb[el.binder] = items[pos]
                    yield from self._match(items, pos + 1, k + 1, nb, ctx)
                else:
                    yield from self._repeat(items, pos, k, binds, ctx, min_count=1)
            return
        if el.quant == "?":
            if pos < len(items) and self._test(el, items, pos, ctx):
                nb = dict(binds)
                if el.binder:
                    nb[el.binder] = items[pos]
                yield from self._match(items, pos + 1, k + 1, nb, ctx)
            nb = dict(binds)
            if el.binder:
                nb.setdefault(el.binder, None)
            yield from self._match(items, pos, k + 1, nb, ctx)
            return
        yield from self._repeat(items, pos, k, binds, ctx, min_count=0)

    def _repeat(self, items, pos, k, binds, ctx, min_count):
        el = self.elements[k]
        end = pos
        while end < len(items) and self._test(el, items, end, ctx):
            end += 1
        for stop in range(end, pos + min_count - 1, -1):
            nb = dict(binds)
            if el.binder:
                nb[el.binder] = list(items[pos:stop])
            yield from self._match(items, stop, k + 1, nb, ctx)

    def build(self, binds: dict, lex: Lexicon) -> Optional[dict]:
        fields: dict = {}
        try:
            for name, args in self.actions:
                ACTIONS[name](fields, binds, lex, *args)
        except _Invalid:
            return None
        return fields if shape_ok(self.category, fields) else None


@dataclass
class Frame:
    frame_id: str
    priority: int
    rules: list[tuple[frozenset, str]]

    def evidence(self, cues: set[str]) -> Optional[str]:
        for conds, action in self.rules:
            if conds <= cues:
                return None if action == "none" else action
        return None


@dataclass
class Automata:
    stages: list[list[Rule]]
    frames: dict[str, Frame]

    @classmethod
    def load(cls, path: str | Path) -> "Automata":
        return cls.parse(Path(path).read_text(encoding="utf-8"), str(path))

    @classmethod
    def parse(cls, text: str, name: str = "<automata>") -> "Automata":
        stages: dict[int, list[Rule]] = {}
        frames: dict[str, Frame] = {}
        stage: Optional[int] = None
        frame: Optional[Frame] = None
        for lineno, raw in enumerate(text.splitlines(), 1):
            line = _strip_comment(raw).rstrip()
            if not line.strip():
                continue
            try:
                if line[0].isspace():
                    if frame is None:
                        raise AutomataError("indented line outside a frame block")
                    conds, sep, action = line.strip().partition("->")
                    if not sep:
                        raise AutomataError("frame rule needs '->'")
                    conds = conds.strip()
                    cueset = frozenset() if conds == "*" else frozenset(c.strip() for c in conds.split("+"))
                    frame.rules.append((cueset, action.strip()))
                    continue
                frame = None
                words = line.split()
                if words[0] == "stage":
                    stage = int(words[1])
                    stages.setdefault(stage, [])
                elif words[0] == "frame":
                    frame = Frame(words[1], int(words[2]) if len(words) > 2 else 1, [])
                    frames[frame.frame_id] = frame
                else:
                    if stage is None:
                        raise AutomataError("rule before any 'stage' line")
                    stages[stage].append(_parse_rule(line, lineno))
            except (AutomataError, ValueError, IndexError) as exc:
                raise AutomataError(f"{name}:{lineno}: {exc}") from None
        return cls([stages[k] for k in sorted(stages)], frames)


def _strip_comment(line: str) -> str:
    quoted = False
    for i, ch in enumerate(line):
        if ch == '"':
            quoted = not quoted
        elif ch == "#" and not quoted:
            return line[:i]
    return line


def _parse_rule(line: str, lineno: int) -> Rule:
    head, sep, rest = line.partition(":")
    category = head.strip()
    if not sep or category not in CATEGORIES:
        raise AutomataError(f"unknown category {category!r}")
    pattern, sep, actions = rest.partition("=>")
    elements = [_parse_element(tok) for tok in pattern.split()]
    if not elements:
        raise AutomataError("empty pattern")
    parsed_actions = []
    for name, args in _ACTION_RE.findall(actions):
        if name not in ACTIONS:
            raise AutomataError(f"unknown action {name!r}")
        parsed_actions.append((name, tuple(a.strip() for a in args.split(",") if a.strip())))
    return Rule(category, elements, parsed_actions, lineno)


def parse_constituents(tokens: list[Token], lexicon: Lexicon, automata: Automata) -> list[Item]:
    """Run the cascade; returns constituents interleaved with uncovered tokens."""
    items: list[Item] = list(tokens)
    for rules in automata.stages:
        items = _run_stage(items, rules, lexicon)
    return items


def _run_stage(items: list[Item], rules: list[Rule], lex: Lexicon) -> list[Item]:
    out: list[Item] = []
    pos = 0
    memo: dict = {}
    while pos < len(items):
        candidates = []
        for index, rule in enumerate(rules):
            for end, binds in rule.matches(items, pos, lex, memo):
                if end > pos:
                    candidates.append((-end, index, rule, binds))
        candidates.sort(key=lambda c: (c[0], c[1]))
        built = None
        for neg_end, _, rule, binds in candidates:
            fields = rule.build(binds, lex)
            if fields is not None:
                end = -neg_end
                covered = items[pos:end]
                toks = tuple(t for it in covered for t in item_tokens(it))
                built = Constituent(rule.category, fields, toks[0].start, toks[-1].end, toks)
                break
        if built is None:
            out.append(items[pos])
            pos += 1
        else:
            out.append(built)
            pos = end
    return out


def constituents_only(items: list[Item]) -> list[Constituent]:
    return [it for it in items if isinstance(it, Constituent)]
