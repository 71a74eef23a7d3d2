"""Template-based surface generation from generation goals."""

from .realize import GenerationError, aggregate, goal_flags, realize
from .templates import Template, TemplateSet, load_templates

__all__ = ["GenerationError", "Template", "TemplateSet", "aggregate", "goal_flags", "load_templates", "realize"]
