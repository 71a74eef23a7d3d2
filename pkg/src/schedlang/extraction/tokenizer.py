"""Regular-expression tokenizer for appointment messages."""

from __future__ import annotations

import re
from dataclasses import dataclass

KINDS = ("word", "number", "date-pattern", "clock-pattern", "ordinal", "punct")

_MONTH_AHEAD = (
    r"(?=\s*(?:jan|feb|mär|maer|mar|apr|mai|may|jun|jul|aug|sep|okt|oct|nov|dez|dec)[^\W\d_]*\.?)"
)
_DAY = r"(?:[12][0-9]|3[01]|0?[1-9])"
_MON = r"(?:1[0-2]|0?[1-9])"
_NO_CLOCK_AHEAD = r"(?!\s*(?:uhr|h|pm|a\.m\.|p\.m\.)\b)"

_PATTERNS = [
    ("clock-pattern", r"\d{1,2}:\d{2}(?!\d)"),
    ("clock-pattern", r"\d{1,2}\.\d{2}(?=\s*(?:uhr|h)\b)"),
    (
        "date-pattern",
        rf"{_DAY}\.\s?{_MON}(?![\d:])(?:\.(?:\s?(?:\d{{4}}|\d{{2}})(?![\d:]){_NO_CLOCK_AHEAD})?)?",
    ),
    ("date-pattern", rf"{_MON}/{_DAY}(?:/(?:\d{{4}}|\d{{2}}))?(?!\d)"),
    ("ordinal", rf"\d{{1,2}}\.{_MONTH_AHEAD}"),
    ("ordinal", r"\d{1,2}(?:st|nd|rd|th)\b"),
    ("number", r"\d+"),
    ("word", r"[^\W\d_]+(?:[-'][^\W\d_]+)*"),
    ("punct", r"\S"),
]

_SCANNER = re.compile(
    "|".join(f"(?P<g{i}>{pattern})" for i, (_, pattern) in enumerate(_PATTERNS)),
    re.IGNORECASE,
)
_KIND_BY_GROUP = {f"g{i}": kind for i, (kind, _) in enumerate(_PATTERNS)}

SENTENCE_END = frozenset(".!?")


@dataclass(frozen=True)
class Token:
    surface: str
    kind: str
    start: int
    end: int

    @property
    def span(self) -> tuple[int, int]:
        return (self.start, self.end)


def tokenize(text: str) -> list[Token]:
    tokens = []
    pos = 0
    n = len(text)
    while pos < n:
        if text[pos].isspace():
            pos += 1
            continue
        m = _SCANNER.match(text, pos)
        # the final alternative matches any non-space character
        tokens.append(Token(m.group(), _KIND_BY_GROUP[m.lastgroup], m.start(), m.end()))
        pos = m.end()
    return tokens


def split_sentences(tokens: list[Token]) -> list[list[Token]]:
    """Split after sentence punctuation; periods inside date tokens never split."""
    sentences: list[list[Token]] = []
    current: list[Token] = []
    for tok in tokens:
        current.append(tok)
        if tok.kind == "punct" and tok.surface in SENTENCE_END:
            sentences.append(current)
            current = []
    if current:
        sentences.append(current)
    # fold runs like "?!" or "..." into the preceding sentence
    merged: list[list[Token]] = []
    for sent in sentences:
        if merged and all(t.kind == "punct" and t.surface in SENTENCE_END for t in sent):
            merged[-1].extend(sent)
        else:
            merged.append(sent)
    return merged


def parse_date_pattern(surface: str) -> tuple[int, int, int | None]:
    """Return (day, month, year-or-None); year two-digit values are not expanded."""
    if "/" in surface:
        parts = surface.split("/")
        month, day = int(parts[0]), int(parts[1])
        year = int(parts[2]) if len(parts) > 2 else None
        return day, month, year
    parts = [p.strip() for p in surface.split(".") if p.strip()]
    day, month = int(parts[0]), int(parts[1])
    year = int(parts[2]) if len(parts) > 2 else None
    return day, month, year


def parse_clock_pattern(surface: str) -> tuple[int, int]:
    hour, minute = re.split(r"[:.]", surface)
    return int(hour), int(minute)
