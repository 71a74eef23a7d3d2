"""Template tables for surface generation.

File format (tab-separated, ``#`` comments)::

    @<locale-key>  <value>                    formatting settings
    <kind>  <rank>  <cond,cond,...|->  <body> templates

Values and bodies may be JSON-quoted to keep leading or trailing
spaces.  A body mixes literal text with ``{name}`` placeholders filled
from the goal and ``{@kind}`` references realized by the best applicable
template of that kind (empty when none applies).  Among the templates of
a kind whose conditions all hold and whose placeholders are all
available, the lowest rank wins.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from functools import lru_cache
from pathlib import Path

DATA_DIR = Path(__file__).parent / "data"
PLACEHOLDER = re.compile(r"\{(@?[a-z][a-z0-9_-]*)\}")

LOCALE_KEYS = frozenset(
    {
        "server",
        "date",
        "date-short",
        "clock",
        "clock-minutes",
        "weekdays",
        "months",
        "range",
        "range-join",
        "group",
        "group-join",
        "list-join",
    }
)


class TemplateError(ValueError):
    pass


@dataclass(frozen=True)
class Template:
    kind: str
    rank: int
    conditions: frozenset
    body: str

    def placeholders(self) -> list[str]:
        return PLACEHOLDER.findall(self.body)


@dataclass(frozen=True)
class TemplateSet:
    language: str
    locale: dict
    templates: tuple[Template, ...]

    def of_kind(self, kind: str) -> list[Template]:
        return sorted((t for t in self.templates if t.kind == kind), key=lambda t: t.rank)

    @classmethod
    def parse(cls, text: str, language: str, name: str = "<templates>") -> "TemplateSet":
        locale: dict = {}
        templates = []
        for lineno, raw in enumerate(text.splitlines(), 1):
            if not raw.strip() or raw.lstrip().startswith("#"):
                continue
            where = f"{name}:{lineno}"
            if raw.startswith("@"):
                key, sep, value = raw[1:].partition("\t")
                if not sep or key not in LOCALE_KEYS:
                    raise TemplateError(f"{where}: bad locale line")
                locale[key] = _unquote(value, where)
                continue
            parts = raw.split("\t")
            if len(parts) != 4:
                raise TemplateError(f"{where}: expected kind, rank, conditions, body")
            kind, rank, conds, body = parts
            try:
                rank_value = int(rank)
            except ValueError:
                raise TemplateError(f"{where}: rank must be an integer") from None
            conditions = frozenset() if conds == "-" else frozenset(c.strip() for c in conds.split(","))
            templates.append(Template(kind, rank_value, conditions, _unquote(body, where)))
        missing = {"date", "clock", "weekdays", "range", "group"} - set(locale)
        if missing:
            raise TemplateError(f"{name}: missing locale settings {sorted(missing)}")
        for key in ("weekdays", "months"):
            if key in locale:
                locale[key] = locale[key].split()
        return cls(language, locale, tuple(templates))

    @classmethod
    def load(cls, path: str | Path, language: str) -> "TemplateSet":
        return cls.parse(Path(path).read_text(encoding="utf-8"), language, str(path))


def _unquote(value: str, where: str) -> str:
    if value.startswith('"'):
        try:
            return json.loads(value)
        except json.JSONDecodeError as exc:
            raise TemplateError(f"{where}: bad quoted string ({exc})") from None
    return value


@lru_cache(maxsize=None)
def load_templates(language: str = "de") -> TemplateSet:
    path = DATA_DIR / f"templates_{language}.tsv"
    if not path.exists():
        raise ValueError(f"no templates for language {language!r}")
    return TemplateSet.load(path, language)
