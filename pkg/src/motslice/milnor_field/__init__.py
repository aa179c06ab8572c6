"""Field presentations: truncated mod-2 Milnor K-rings with ρ and optional integral data."""

from .core import (
    DEFAULT_TRUNCATION,
    FieldError,
    FieldPresentation,
    IntegralCell,
    IntegralLookup,
    MissingIntegralCell,
    MotClass,
    basis_classes,
    class_label,
    cup,
    h_dim,
    integral_cell,
    make_class,
    rho,
    tau,
    validate,
    zero_class,
)
from .documents import dump_field, field_to_document, load_field, load_field_file
from .presets import PRESET_NAMES, parse_field_spec, preset_field, resolve_field

__all__ = [
    "DEFAULT_TRUNCATION",
    "FieldError",
    "FieldPresentation",
    "IntegralCell",
    "IntegralLookup",
    "MissingIntegralCell",
    "MotClass",
    "PRESET_NAMES",
    "basis_classes",
    "class_label",
    "cup",
    "dump_field",
    "field_to_document",
    "h_dim",
    "integral_cell",
    "load_field",
    "load_field_file",
    "make_class",
    "parse_field_spec",
    "preset_field",
    "resolve_field",
    "rho",
    "tau",
    "validate",
    "zero_class",
]
