"""CLI, chart rendering and result documents."""

from .cli import build_parser, cli_main, main
from .render import OP_COLORS, component_text, dump_document, region_to_document, render_chart

__all__ = [
    "OP_COLORS",
    "build_parser",
    "cli_main",
    "component_text",
    "dump_document",
    "main",
    "region_to_document",
    "render_chart",
]
