"""Seeded random documents and paths for the law suites."""

from __future__ import annotations

import random

from .path import Each, Field, Index, Segment, Variant

NAMES = ("a", "b", "x", "name", "email", "postal", "left", "right")
_WORDS = ("", "a", "Oxford", "turing", "fau.eu", "x y", "ñ")


def random_scalar(rng: random.Random):
    r = rng.randrange(6)
    if r == 0:
        return None
    if r == 1:
        return rng.random() < 0.5
    if r == 2:
        return rng.randint(-5, 5)
    if r == 3:
        return rng.choice((0.5, -1.25, 3.0, 1e-3))
    return rng.choice(_WORDS)


def random_value(rng: random.Random, depth: int = 2):
    if depth <= 0 or rng.random() < 0.5:
        return random_scalar(rng)
    if rng.random() < 0.5:
        return [random_value(rng, depth - 1) for _ in range(rng.randrange(4))]
    keys = rng.sample(NAMES, rng.randrange(4))
    return {k: random_value(rng, depth - 1) for k in keys}


def random_segment(rng: random.Random) -> Segment:
    r = rng.randrange(4)
    if r == 0:
        return Field(rng.choice(NAMES))
    if r == 1:
        return Variant(rng.choice(NAMES))
    if r == 2:
        return Index(rng.randrange(3))
    return Each()


def random_ast(rng: random.Random, max_len: int = 6, kinds=None) -> list[Segment]:
    """A random path; ``kinds`` restricts the segment classes used."""
    out = []
    for _ in range(rng.randint(0, max_len)):
        seg = random_segment(rng)
        while kinds is not None and type(seg) not in kinds:
            seg = random_segment(rng)
        out.append(seg)
    return out


def random_document(ast: list[Segment], rng: random.Random, match_rate: float = 0.75):
    """A document shaped for ``ast``.

    Fields are always present and ``each`` always meets an array, so the
    path never fails at runtime; variants and indices miss with
    probability ``1 - match_rate``.
    """
    if not ast:
        return random_value(rng)
    seg, rest = ast[0], ast[1:]
    if isinstance(seg, Field):
        others = [k for k in rng.sample(NAMES, rng.randrange(3)) if k != seg.name]
        keys = others[:]
        keys.insert(rng.randint(0, len(keys)), seg.name)
        return {
            k: random_document(rest, rng, match_rate) if k == seg.name else random_value(rng, 1)
            for k in keys
        }
    if isinstance(seg, Variant):
        if rng.random() < match_rate:
            return {seg.name: random_document(rest, rng, match_rate)}
        miss = rng.randrange(3)
        if miss == 0:
            other = rng.choice([n for n in NAMES if n != seg.name])
            return {other: random_document(rest, rng, match_rate)}
        if miss == 1:
            return {seg.name: random_value(rng, 1), "extra": random_value(rng, 1)}
        return random_scalar(rng)
    if isinstance(seg, Index):
        if rng.random() < match_rate:
            n = rng.randint(seg.index + 1, seg.index + 3)
        elif rng.random() < 0.5:
            return random_scalar(rng)
        else:
            n = rng.randint(0, seg.index)
        return [random_document(rest, rng, match_rate) for _ in range(n)]
    if isinstance(seg, Each):
        return [random_document(rest, rng, match_rate) for _ in range(rng.randrange(4))]
    raise TypeError(seg)
