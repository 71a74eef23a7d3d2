from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from pathlib import Path

from .cascade import Automata, parse_constituents
from .combine import PredArg, combine
from .lexicon import Lexicon
from .tokenizer import Token, split_sentences, tokenize

DATA_DIR = Path(__file__).parent / "data"
LANGUAGES = ("de", "en")


@dataclass(frozen=True)
class Grammar:
    language: str
    lexicon: Lexicon = field(repr=False)
    automata: Automata = field(repr=False)


@lru_cache(maxsize=None)
def load_grammar(language: str = "de") -> Grammar:
    if language not in LANGUAGES:
        raise ValueError(f"unsupported language {language!r}")
    return Grammar(
        language,
        Lexicon.load(DATA_DIR / f"lexicon_{language}.tsv"),
        Automata.load(DATA_DIR / f"automata_{language}.txt"),
    )


@dataclass(frozen=True)
class SmesResult:
    sentences: tuple[tuple[PredArg, ...], ...]
    misspellings: tuple[str, ...]

    def predargs(self) -> list[PredArg]:
        return [pa for sent in self.sentences for pa in sent]


def find_misspellings(tokens: list[Token], lexicon: Lexicon) -> list[str]:
    seen: dict[str, None] = {}
    for tok in tokens:
        if tok.kind == "word" and tok.surface not in lexicon:
            seen.setdefault(tok.surface, None)
    return list(seen)


def extract_sentence(tokens: list[Token], grammar: Grammar) -> tuple[PredArg, ...]:
    items = parse_constituents(tokens, grammar.lexicon, grammar.automata)
    question = bool(tokens) and tokens[-1].kind == "punct" and tokens[-1].surface == "?"
    if not question:
        # "?!" style endings
        question = any(t.kind == "punct" and t.surface == "?" for t in tokens[-2:])
    return tuple(combine(items, grammar.lexicon, grammar.automata, question))


def extract_message(text: str, grammar: Grammar | None = None) -> SmesResult:
    """Tokenize, split, parse and combine a whole message.  Never raises on text input."""
    grammar = grammar or load_grammar("de")
    tokens = tokenize(text)
    sentences = tuple(extract_sentence(sent, grammar) for sent in split_sentences(tokens))
    return SmesResult(sentences, tuple(find_misspellings(tokens, grammar.lexicon)))
