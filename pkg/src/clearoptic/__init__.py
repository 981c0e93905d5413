"""Concrete optics, their composition lattice, and a path language for JSON documents."""

from .core import (
    AchromaticLens,
    Adapter,
    AffineTraversal,
    Glass,
    Grate,
    Kaleidoscope,
    Left,
    LengthMismatch,
    Lens,
    ListLens,
    Prism,
    Right,
    Setter,
    Some,
    Traversal,
)
from .lattice import DynOptic, NoPathError, OpticKind, compose, join, upcast
from .path import compile_path, compile_text, infer_kind, parse_path, print_path, tokenize

__all__ = [
    "AchromaticLens",
    "Adapter",
    "AffineTraversal",
    "DynOptic",
    "Glass",
    "Grate",
    "Kaleidoscope",
    "Left",
    "LengthMismatch",
    "Lens",
    "ListLens",
    "NoPathError",
    "OpticKind",
    "Prism",
    "Right",
    "Setter",
    "Some",
    "Traversal",
    "compile_path",
    "compile_text",
    "compose",
    "infer_kind",
    "join",
    "parse_path",
    "print_path",
    "tokenize",
    "upcast",
]
