"""Interpretation of extracted messages into ranked IL expressions."""

from .actions import ActionTable, filter_actions, rank_sentence, rank_text
from .dialogue import Analysis, Dialogue, TextStructure, build_clarification, merge_repair
from .discourse import DiscourseMemory, Record
from .fragments import DateSpec, Partial, Slot, Span, gather
from .resolve import anchor, check_consistency, complete_endpoint, infer, resolve_date

__all__ = [
    "ActionTable",
    "Analysis",
    "DateSpec",
    "Dialogue",
    "DiscourseMemory",
    "Partial",
    "Record",
    "Slot",
    "Span",
    "TextStructure",
    "anchor",
    "build_clarification",
    "check_consistency",
    "complete_endpoint",
    "filter_actions",
    "gather",
    "infer",
    "merge_repair",
    "rank_sentence",
    "rank_text",
    "resolve_date",
]
