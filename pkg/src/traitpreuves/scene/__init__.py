"""The scene language: parse, evaluate, render."""

from .evaluate import CheckOutcome, EvaluationError, evaluate, evaluate_scene
from .nodes import Scene, SourceSpan
from .parser import ParseError, format_scene, parse_scene
from .render import NoRenderDirective, render_svg

__all__ = [
    "CheckOutcome",
    "EvaluationError",
    "NoRenderDirective",
    "ParseError",
    "Scene",
    "SourceSpan",
    "evaluate",
    "evaluate_scene",
    "format_scene",
    "parse_scene",
    "render_svg",
]
