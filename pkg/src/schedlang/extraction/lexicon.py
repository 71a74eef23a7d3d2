"""Full-form lexicon loaded from a tab-separated data file.

File format, one entry per line, ``#`` starts a comment::

    surface <TAB> lemma <TAB> pos <TAB> features <TAB> frame-id

``features`` is ``-`` or ``key=value`` pairs joined by ``;``.  ``frame-id``
is ``-`` except for verbs, which must name a verb frame of the automata
file.  Lookup is case-insensitive.  Particle verbs are listed under the
key ``stem+particle`` (e.g. ``sage+zu``) and are resolved by the clause
combiner when the particle closes the clause.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path
from types import MappingProxyType
from typing import Mapping, Optional

POS_TAGS = frozenset({"verb", "noun", "prep", "det", "adv", "pron", "adj", "misc"})
NUMERIC_FEATURES = ("weekday", "month", "minutes", "hour", "clause")


class LexiconError(ValueError):
    pass


@dataclass(frozen=True)
class LexEntry:
    surface: str
    lemma: str
    pos: str
    features: Mapping[str, str] = field(default_factory=dict, compare=False, hash=False)
    frame_id: Optional[str] = None

    def feature(self, name: str, default=None):
        value = self.features.get(name, default)
        if name in NUMERIC_FEATURES and value is not None:
            return int(value)
        return value


class Lexicon:
    def __init__(self, entries=()) -> None:
        self._entries: dict[str, list[LexEntry]] = {}
        for entry in entries:
            self.add(entry)

    def add(self, entry: LexEntry) -> None:
        if entry.pos not in POS_TAGS:
            raise LexiconError(f"{entry.surface}: unknown pos {entry.pos!r}")
        if entry.pos == "verb" and not entry.frame_id:
            raise LexiconError(f"{entry.surface}: verb entries need a frame id")
        for name in NUMERIC_FEATURES:
            if name in entry.features and not str(entry.features[name]).lstrip("-").isdigit():
                raise LexiconError(f"{entry.surface}: feature {name} must be numeric")
        self._entries.setdefault(entry.surface.lower(), []).append(entry)

    def lookup(self, surface: str) -> tuple[LexEntry, ...]:
        return tuple(self._entries.get(surface.lower(), ()))

    def __contains__(self, surface: str) -> bool:
        return surface.lower() in self._entries

    def __len__(self) -> int:
        return sum(len(v) for v in self._entries.values())

    def frame_ids(self) -> set[str]:
        return {e.frame_id for es in self._entries.values() for e in es if e.frame_id}

    @classmethod
    def load(cls, path: str | Path) -> "Lexicon":
        lex = cls()
        for lineno, raw in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), 1):
            line = raw.split("#", 1)[0].rstrip()
            if not line.strip():
                continue
            cols = line.split("\t")
            if len(cols) != 5:
                raise LexiconError(f"{path}:{lineno}: expected 5 tab-separated columns, got {len(cols)}")
            surface, lemma, pos, feats, frame = (c.strip() for c in cols)
            try:
                lex.add(
                    LexEntry(
                        surface=surface,
                        lemma=lemma,
                        pos=pos,
                        features=MappingProxyType(_parse_features(feats)),
                        frame_id=None if frame == "-" else frame,
                    )
                )
            except LexiconError as exc:
                raise LexiconError(f"{path}:{lineno}: {exc}") from None
        return lex


def _parse_features(text: str) -> dict[str, str]:
    if text == "-" or not text:
        return {}
    feats = {}
    for part in text.split(";"):
        key, sep, value = part.partition("=")
        if not sep:
            raise LexiconError(f"malformed feature {part!r}")
        feats[key.strip()] = value.strip()
    return feats


def lex_lookup(token, lexicon: Lexicon) -> tuple[LexEntry, ...]:
    """Entries for a word token; an empty tuple marks a misspelling candidate."""
    if token.kind != "word":
        return ()
    return lexicon.lookup(token.surface)
