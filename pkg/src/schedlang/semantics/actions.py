"""Action-sequence compatibility and ranking of competing interpretations."""

from __future__ import annotations

from functools import lru_cache
from pathlib import Path
from typing import Optional

from ..il import Coop, ILExpression, informativeness

TABLE_PATH = Path(__file__).parent / "data" / "actions.tsv"
VERDICTS = ("allow", "deny", "expect")


class ActionTable:
    def __init__(self, rows: dict[tuple[str, str], str]) -> None:
        self.rows = rows

    @classmethod
    def parse(cls, text: str, name: str = "<actions>") -> "ActionTable":
        rows: dict[tuple[str, str], str] = {}
        for lineno, line in enumerate(text.splitlines(), 1):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            parts = line.split("\t")
            if len(parts) != 3 or parts[2] not in VERDICTS:
                raise ValueError(f"{name}:{lineno}: expected 'last<TAB>candidate<TAB>verdict'")
            last, cand, verdict = parts
            for coop in (last, cand):
                if coop != "none":
                    Coop(coop)
            rows[(last, cand)] = verdict
        return cls(rows)

    @classmethod
    def load(cls, path: str | Path = TABLE_PATH) -> "ActionTable":
        return cls.parse(Path(path).read_text(encoding="utf-8"), str(path))

    def verdict(self, last: Optional[Coop], candidate: Coop) -> str:
        key = (last.value if last is not None else "none", Coop(candidate).value)
        return self.rows.get(key, "allow")


@lru_cache(maxsize=1)
def default_table() -> ActionTable:
    return ActionTable.load()


def filter_actions(ils: list[ILExpression], last: Optional[Coop], table: Optional[ActionTable] = None) -> list[ILExpression]:
    table = table or default_table()
    return [il for il in ils if table.verdict(last, il.coop) != "deny"]


def rank_sentence(ils: list[ILExpression]) -> list[ILExpression]:
    """More informative readings first; ties keep surface order."""
    return sorted(ils, key=lambda il: -informativeness(il))


def rank_text(
    sentences: list[list[ILExpression]], last: Optional[Coop], table: Optional[ActionTable] = None
) -> list[list[ILExpression]]:
    """Sentences whose best reading is an expected follow-up come first."""
    table = table or default_table()

    def key(sentence: list[ILExpression]) -> tuple[int, int]:
        top = sentence[0]
        expected = table.verdict(last, top.coop) == "expect"
        return (0 if expected else 1, -informativeness(top))

    return sorted((s for s in sentences if s), key=key)
