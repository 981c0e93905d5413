"""Path expressions: lexer, parser, printer and compiler to dynamic optics.

Grammar::

    path    := segment*
    segment := '.' IDENT      field      (lens)
             | '?' IDENT      variant    (prism)
             | '[' NAT ']'    index      (affine traversal)
             | 'each'         elements   (traversal)

Whitespace only separates tokens.  The empty path is the identity.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Union

from .core import (
    AffineTraversal,
    Left,
    Lens,
    Prism,
    Right,
    Traversal,
    checked_rebuild,
)
from .lattice import DynOptic, OpticKind, compose, identity_optic, join_all

DOT = "DOT"
QMARK = "QMARK"
LBRACKET = "LBRACKET"
RBRACKET = "RBRACKET"
IDENT = "IDENT"
NAT = "NAT"
EACH = "EACH"

_IDENT_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")
_NAT_RE = re.compile(r"[0-9]+")
_PUNCT = {".": DOT, "?": QMARK, "[": LBRACKET, "]": RBRACKET}


class PathError(Exception):
    """Base class for errors in the path text itself."""


class LexError(PathError):
    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} at byte {offset}")
        self.offset = offset


class ParseError(PathError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at token {position}")
        self.position = position


class PathTypeError(Exception):
    """The document does not have the shape the path expects."""


@dataclass(frozen=True)
class Token:
    type: str
    value: Union[str, int, None] = None
    offset: int = 0

    def __eq__(self, other):
        # offsets are bookkeeping, not identity
        if not isinstance(other, Token):
            return NotImplemented
        return (self.type, self.value) == (other.type, other.value)

    def __hash__(self):
        return hash((self.type, self.value))

    def __repr__(self):
        return self.type if self.value is None else f"{self.type}({self.value!r})"


def tokenize(src: str) -> list[Token]:
    tokens = []
    i = 0
    while i < len(src):
        ch = src[i]
        byte_offset = len(src[:i].encode("utf-8"))
        if ch.isspace():
            i += 1
        elif ch in _PUNCT:
            tokens.append(Token(_PUNCT[ch], None, byte_offset))
            i += 1
        elif m := _IDENT_RE.match(src, i):
            word = m.group()
            if word == "each":
                tokens.append(Token(EACH, None, byte_offset))
            else:
                tokens.append(Token(IDENT, word, byte_offset))
            i = m.end()
        elif m := _NAT_RE.match(src, i):
            tokens.append(Token(NAT, int(m.group()), byte_offset))
            i = m.end()
        else:
            raise LexError(f"unexpected character {ch!r}", byte_offset)
    return tokens


@dataclass(frozen=True)
class Field:
    name: str


@dataclass(frozen=True)
class Variant:
    name: str


@dataclass(frozen=True)
class Index:
    index: int


@dataclass(frozen=True)
class Each:
    pass


Segment = Union[Field, Variant, Index, Each]


def _name(tokens, i, after):
    if i >= len(tokens):
        raise ParseError(f"expected a name after {after!r}, got end of path", i)
    tok = tokens[i]
    if tok.type == IDENT:
        return tok.value
    # `.each` names a field called "each"
    if tok.type == EACH:
        return "each"
    raise ParseError(f"expected a name after {after!r}, got {tok!r}", i)


def parse(tokens: list[Token]) -> list[Segment]:
    segments: list[Segment] = []
    i = 0
    while i < len(tokens):
        tok = tokens[i]
        if tok.type == DOT:
            segments.append(Field(_name(tokens, i + 1, ".")))
            i += 2
        elif tok.type == QMARK:
            segments.append(Variant(_name(tokens, i + 1, "?")))
            i += 2
        elif tok.type == LBRACKET:
            if i + 1 >= len(tokens) or tokens[i + 1].type != NAT:
                raise ParseError("expected an index after '['", i + 1)
            if i + 2 >= len(tokens) or tokens[i + 2].type != RBRACKET:
                raise ParseError("expected ']'", i + 2)
            segments.append(Index(tokens[i + 1].value))
            i += 3
        elif tok.type == EACH:
            segments.append(Each())
            i += 1
        else:
            raise ParseError(f"unexpected {tok!r}", i)
    return segments


def parse_path(src: str) -> list[Segment]:
    return parse(tokenize(src))


def print_path(ast: list[Segment]) -> str:
    """Canonical text for an AST; ``parse_path(print_path(ast)) == ast``."""
    out = []
    for seg in ast:
        if isinstance(seg, Field):
            out.append("." + seg.name)
        elif isinstance(seg, Variant):
            out.append("?" + seg.name)
        elif isinstance(seg, Index):
            out.append(f"[{seg.index}]")
        else:
            # keep "each" from gluing onto a preceding name or keyword
            if out and not out[-1].endswith("]"):
                out.append(" ")
            out.append("each")
    return "".join(out)


# ---------------------------------------------------------------------------
# Segment semantics


def _field_lens(name: str) -> Lens:
    def view(s):
        if not isinstance(s, dict):
            raise PathTypeError(f"field .{name}: expected an object")
        if name not in s:
            raise PathTypeError(f"field .{name}: missing")
        return s[name]

    def update(s, b):
        if not isinstance(s, dict):
            raise PathTypeError(f"field .{name}: expected an object")
        out = dict(s)
        out[name] = b
        return out

    return Lens(view, update)


def _variant_prism(tag: str) -> Prism:
    def match(s):
        if isinstance(s, dict) and len(s) == 1 and tag in s:
            return Right(s[tag])
        return Left(s)

    return Prism(match, lambda b: {tag: b})


def _index_affine(i: int) -> AffineTraversal:
    def access(s):
        if isinstance(s, list) and i < len(s):

            def put(b):
                out = list(s)
                out[i] = b
                return out

            return Right((s[i], put))
        return Left(s)

    return AffineTraversal(access)


def _each_traversal() -> Traversal:
    def extract(s):
        if not isinstance(s, list):
            raise PathTypeError("each: expected an array")
        return list(s), checked_rebuild(len(s), list)

    return Traversal(extract)


SEGMENT_KINDS = {
    Field: OpticKind.LENS,
    Variant: OpticKind.PRISM,
    Index: OpticKind.AFFINE,
    Each: OpticKind.TRAVERSAL,
}


def segment_optic(seg: Segment) -> DynOptic:
    if isinstance(seg, Field):
        return DynOptic(OpticKind.LENS, _field_lens(seg.name))
    if isinstance(seg, Variant):
        return DynOptic(OpticKind.PRISM, _variant_prism(seg.name))
    if isinstance(seg, Index):
        return DynOptic(OpticKind.AFFINE, _index_affine(seg.index))
    if isinstance(seg, Each):
        return DynOptic(OpticKind.TRAVERSAL, _each_traversal())
    raise TypeError(f"not a path segment: {seg!r}")


def compile_path(ast: list[Segment]) -> DynOptic:
    optic = identity_optic()
    for seg in ast:
        optic = compose(optic, segment_optic(seg))
    return optic


def infer_kind(ast: list[Segment]) -> OpticKind:
    return join_all(SEGMENT_KINDS[type(seg)] for seg in ast)


def compile_text(src: str) -> DynOptic:
    return compile_path(parse_path(src))
