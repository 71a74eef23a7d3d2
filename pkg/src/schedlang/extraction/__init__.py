"""Shallow message extraction: tokenizer, lexicon, constituent cascade, clause combiner."""

from .cascade import Automata, Constituent, parse_constituents, shape_ok
from .combine import DUMMY, PredArg, combine
from .lexicon import LexEntry, Lexicon, lex_lookup
from .pipeline import Grammar, SmesResult, extract_message, load_grammar
from .tokenizer import Token, split_sentences, tokenize

__all__ = [
    "Automata",
    "Constituent",
    "DUMMY",
    "Grammar",
    "LexEntry",
    "Lexicon",
    "PredArg",
    "SmesResult",
    "Token",
    "combine",
    "extract_message",
    "lex_lookup",
    "load_grammar",
    "parse_constituents",
    "shape_ok",
    "split_sentences",
    "tokenize",
]
