"""Clause-bounded verb search combining constituents into predicate-argument structures."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .cascade import Automata, Constituent, Item, item_tokens
from .lexicon import LexEntry, Lexicon
from .tokenizer import SENTENCE_END, Token

DUMMY = "DUMMY"
DUMMY_FRAME = "dummy-frame"


@dataclass(frozen=True)
class PredArg:
    head: str
    frame_id: str
    args: tuple[Constituent, ...]
    temporal: tuple[Constituent, ...]
    cues: frozenset
    span: tuple[int, int]


def _is_marker(item: Item, lex: Lexicon) -> bool:
    if not isinstance(item, Token):
        return False
    if item.kind == "punct":
        return item.surface == ";"
    return item.kind == "word" and any(e.feature("clause") for e in lex.lookup(item.surface))


def split_clauses(items: list[Item], lex: Lexicon) -> list[list[Item]]:
    clauses: list[list[Item]] = [[]]
    for item in items:
        if isinstance(item, Token) and item.kind == "punct" and item.surface in SENTENCE_END:
            continue
        if _is_marker(item, lex):
            clauses.append([])
        else:
            clauses[-1].append(item)
    return [c for c in clauses if c]


def _verb_entry(tok: Token, lex: Lexicon) -> Optional[LexEntry]:
    for entry in lex.lookup(tok.surface):
        if entry.pos == "verb":
            return entry
    return None


def _clause_final_word(clause: list[Item]) -> Optional[int]:
    for idx in range(len(clause) - 1, -1, -1):
        item = clause[idx]
        if isinstance(item, Token) and item.kind == "punct":
            continue
        if isinstance(item, Token) and item.kind == "word":
            return idx
        return None
    return None


def _main_verb(clause: list[Item], lex: Lexicon, automata: Automata) -> Optional[tuple[int, LexEntry]]:
    final = _clause_final_word(clause)
    best: Optional[tuple[int, int, LexEntry]] = None
    for idx, item in enumerate(clause):
        if not isinstance(item, Token) or item.kind != "word":
            continue
        entry = _verb_entry(item, lex)
        if entry is None:
            continue
        if final is not None and final != idx:
            particle = clause[final].surface
            compound = [e for e in lex.lookup(f"{item.surface}+{particle}") if e.pos == "verb"]
            if compound:
                entry = compound[0]
        frame = automata.frames.get(entry.frame_id)
        prio = frame.priority if frame else 0
        if best is None or prio > best[0]:
            best = (prio, idx, entry)
    if best is None:
        return None
    return best[1], best[2]


def _bidirectional(clause: list[Item], pivot: int) -> list[Constituent]:
    """Collect constituents outward from the verb, alternating left and right."""
    found: list[tuple[int, Constituent]] = []
    left, right = pivot - 1, pivot + 1
    while left >= 0 or right < len(clause):
        if left >= 0:
            if isinstance(clause[left], Constituent):
                found.append((left, clause[left]))
            left -= 1
        if right < len(clause):
            if isinstance(clause[right], Constituent):
                found.append((right, clause[right]))
            right += 1
    return [c for _, c in sorted(found, key=lambda p: p[0])]


def clause_cues(clause: list[Item], lex: Lexicon) -> set[str]:
    cues = set()
    for item in clause:
        for tok in item_tokens(item):
            if tok.kind != "word":
                continue
            for entry in lex.lookup(tok.surface):
                cue = entry.features.get("cue")
                if cue:
                    cues.add(cue)
    return cues


def combine(items: list[Item], lex: Lexicon, automata: Automata, question: bool = False) -> list[PredArg]:
    """One PredArg per clause that has a verb, a constituent, or a cue word."""
    result = []
    for clause in split_clauses(items, lex):
        cues = clause_cues(clause, lex)
        verb = _main_verb(clause, lex, automata)
        if verb is None:
            if not any(isinstance(it, Constituent) for it in clause) and not cues:
                continue
            constituents = [it for it in clause if isinstance(it, Constituent)]
            head, frame_id = DUMMY, DUMMY_FRAME
        else:
            pivot, entry = verb
            constituents = _bidirectional(clause, pivot)
            head, frame_id = entry.lemma, entry.frame_id
        temporal = tuple(c for c in constituents if c.temporal)
        args = tuple(c for c in constituents if not c.temporal)
        if question:
            cues.add("question")
        if not temporal:
            cues.add("notime")
        toks = [t for it in clause for t in item_tokens(it)]
        result.append(
            PredArg(head, frame_id, args, temporal, frozenset(cues), (toks[0].start, toks[-1].end))
        )
    return result
