"""Attribute-value trees used as the wire representation of all requests.

Concrete syntax (canonical form produced by :func:`encode`)::

    value   := map | list | integer | text | symbol
    map     := "[" (NAME value)* "]"          features in sorted order
    list    := "<" value* ">"
    integer := -?[0-9]+
    text    := JSON string literal ("...")
    symbol  := [A-Za-z_][A-Za-z0-9_.:-]*

Tokens are separated by single spaces in canonical output; the parser
accepts arbitrary whitespace.  In Python a map is a ``dict``, a list is a
``list`` (tuples are accepted for encoding), text is ``str``, integers are
``int`` and symbols are :class:`Sym`.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from typing import Any, Union

__all__ = [
    "Sym",
    "FeatureStructure",
    "FSError",
    "FSSyntaxError",
    "DuplicateFeatureError",
    "encode",
    "decode",
    "validate",
    "get_path",
]

_NAME_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_.:\-]*")
_INT_RE = re.compile(r"-?[0-9]+")


@dataclass(frozen=True, order=True)
class Sym:
    """A symbolic atom, distinct from text with the same characters."""

    name: str

    def __post_init__(self) -> None:
        if not isinstance(self.name, str) or not _NAME_RE.fullmatch(self.name):
            raise ValueError(f"invalid symbol {self.name!r}")

    def __str__(self) -> str:
        return self.name


FeatureStructure = Union[Sym, int, str, list, tuple, dict]


class FSError(ValueError):
    pass


class FSSyntaxError(FSError):
    def __init__(self, message: str, position: int) -> None:
        super().__init__(f"{message} at position {position}")
        self.position = position


class DuplicateFeatureError(FSError):
    def __init__(self, feature: str, position: int) -> None:
        super().__init__(f"duplicate feature {feature!r} at position {position}")
        self.feature = feature
        self.position = position


def validate(fs: Any) -> None:
    """Raise FSError unless *fs* is a well-formed feature structure tree."""
    _validate(fs, set())


def _validate(fs: Any, active: set) -> None:
    if isinstance(fs, bool):
        raise FSError("booleans are not feature structure atoms")
    if isinstance(fs, (Sym, int, str)):
        return
    if isinstance(fs, (list, tuple, dict)):
        if id(fs) in active:
            raise FSError("cyclic feature structure")
        active.add(id(fs))
        if isinstance(fs, dict):
            for key, value in fs.items():
                if not isinstance(key, str) or not _NAME_RE.fullmatch(key):
                    raise FSError(f"invalid feature name {key!r}")
                _validate(value, active)
        else:
            for value in fs:
                _validate(value, active)
        active.discard(id(fs))
        return
    raise FSError(f"unsupported atom type {type(fs).__name__}")


def encode(fs: FeatureStructure) -> str:
    validate(fs)
    parts: list[str] = []
    _emit(fs, parts)
    return "".join(parts)


def _emit(fs: Any, out: list[str]) -> None:
    if isinstance(fs, Sym):
        out.append(fs.name)
    elif isinstance(fs, int):
        out.append(str(fs))
    elif isinstance(fs, str):
        out.append(json.dumps(fs, ensure_ascii=False))
    elif isinstance(fs, dict):
        out.append("[")
        for i, key in enumerate(sorted(fs)):
            if i:
                out.append(" ")
            out.append(key)
            out.append(" ")
            _emit(fs[key], out)
        out.append("]")
    else:
        out.append("<")
        for i, value in enumerate(fs):
            if i:
                out.append(" ")
            _emit(value, out)
        out.append(">")


class _Parser:
    def __init__(self, text: str) -> None:
        self.text = text
        self.pos = 0
        self._decoder = json.JSONDecoder()

    def skip_ws(self) -> None:
        n = len(self.text)
        while self.pos < n and self.text[self.pos].isspace():
            self.pos += 1

    def parse(self) -> Any:
        value = self.value()
        self.skip_ws()
        if self.pos != len(self.text):
            raise FSSyntaxError("trailing input", self.pos)
        return value

    def value(self) -> Any:
        self.skip_ws()
        if self.pos >= len(self.text):
            raise FSSyntaxError("unexpected end of input", self.pos)
        ch = self.text[self.pos]
        if ch == "[":
            return self.map()
        if ch == "<":
            return self.list()
        if ch == '"':
            try:
                value, end = self._decoder.raw_decode(self.text, self.pos)
            except json.JSONDecodeError as exc:
                raise FSSyntaxError("bad text literal", self.pos) from exc
            self.pos = end
            return value
        m = _INT_RE.match(self.text, self.pos)
        if m:
            self.pos = m.end()
            self._check_boundary()
            return int(m.group())
        m = _NAME_RE.match(self.text, self.pos)
        if m:
            self.pos = m.end()
            self._check_boundary()
            return Sym(m.group())
        raise FSSyntaxError(f"unexpected character {ch!r}", self.pos)

    def _check_boundary(self) -> None:
        if self.pos < len(self.text) and self.text[self.pos] not in " \t\r\n[]<>":
            raise FSSyntaxError("malformed atom", self.pos)

    def map(self) -> dict:
        self.pos += 1
        result: dict = {}
        while True:
            self.skip_ws()
            if self.pos >= len(self.text):
                raise FSSyntaxError("unclosed map", self.pos)
            if self.text[self.pos] == "]":
                self.pos += 1
                return result
            start = self.pos
            m = _NAME_RE.match(self.text, self.pos)
            if not m:
                raise FSSyntaxError("expected feature name", self.pos)
            name = m.group()
            self.pos = m.end()
            if name in result:
                raise DuplicateFeatureError(name, start)
            if self.pos >= len(self.text) or not self.text[self.pos].isspace():
                raise FSSyntaxError("expected whitespace after feature name", self.pos)
            result[name] = self.value()

    def list(self) -> list:
        self.pos += 1
        result: list = []
        while True:
            self.skip_ws()
            if self.pos >= len(self.text):
                raise FSSyntaxError("unclosed list", self.pos)
            if self.text[self.pos] == ">":
                self.pos += 1
                return result
            result.append(self.value())


def decode(text: str) -> FeatureStructure:
    """Parse canonical (or loosely spaced) text into a feature structure."""
    return _Parser(text).parse()


def get_path(fs: Any, *path: str, default: Any = None) -> Any:
    node = fs
    for key in path:
        if not isinstance(node, dict) or key not in node:
            return default
        node = node[key]
    return node
