"""Shape and contents of finite containers.

Four container families are supported, all walked left to right:

* sequences: ``list``
* optionals: ``None`` or :class:`~clearoptic.core.Some`
* pairs: a 2-``tuple``
* leaf-labelled binary trees: :class:`Leaf` / :class:`Node`

A container splits into a length ``n``, a shape (the same container with
its elements replaced by the positions ``0..n-1``) and the ``n`` contents.
Effectful traversal is derived from the split alone.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Callable, Generic, TypeVar

from .core import LengthMismatch, Some

A = TypeVar("A")


@dataclass(frozen=True)
class Leaf(Generic[A]):
    value: A


@dataclass(frozen=True)
class Node:
    left: Any
    right: Any


@dataclass(frozen=True)
class ShapeContents:
    length: int
    shape: Any
    contents: tuple


def fmap(x, f: Callable):
    """Apply ``f`` to every element, left to right, keeping the structure."""
    if isinstance(x, list):
        return [f(a) for a in x]
    if x is None:
        return None
    if isinstance(x, Some):
        return Some(f(x.value))
    if isinstance(x, tuple):
        if len(x) != 2:
            raise TypeError(f"pairs have two components, got {len(x)}")
        first = f(x[0])
        return (first, f(x[1]))
    if isinstance(x, Leaf):
        return Leaf(f(x.value))
    if isinstance(x, Node):
        left = fmap(x.left, f)
        return Node(left, fmap(x.right, f))
    raise TypeError(f"not a container: {x!r}")


def to_list(x) -> list:
    out = []
    fmap(x, out.append)
    return out


def decompose(x) -> ShapeContents:
    contents = []

    def slot(a):
        contents.append(a)
        return len(contents) - 1

    shape = fmap(x, slot)
    return ShapeContents(len(contents), shape, tuple(contents))


def recombine(sc: ShapeContents):
    if len(sc.contents) != sc.length:
        raise LengthMismatch(f"{sc.length} slots but {len(sc.contents)} contents")
    positions = to_list(sc.shape)
    if set(positions) != set(range(sc.length)):
        raise LengthMismatch(f"shape slots {positions} do not cover 0..{sc.length - 1}")
    return fmap(sc.shape, lambda i: sc.contents[i])


def shape_of(x):
    return decompose(x).shape


# ---------------------------------------------------------------------------
# Effects: a closed set of applicatives given by unit and binary lifting.


@dataclass(frozen=True)
class Effect:
    name: str
    pure: Callable[[Any], Any]
    lift2: Callable[[Callable, Any, Any], Any]
    fmap: Callable[[Callable, Any], Any]


def _opt_lift2(fn, x, y):
    if x is None or y is None:
        return None
    return Some(fn(x.value, y.value))


OPTIONAL = Effect(
    "optional",
    pure=Some,
    lift2=_opt_lift2,
    fmap=lambda fn, x: None if x is None else Some(fn(x.value)),
)


# A counter action is a function ``state -> (value, state)``.
def _counter_lift2(fn, x, y):
    def run(n):
        a, n = x(n)
        b, n = y(n)
        return fn(a, b), n

    return run


def _counter_fmap(fn, x):
    def run(n):
        a, n = x(n)
        return fn(a), n

    return run


COUNTER = Effect(
    "counter",
    pure=lambda a: lambda n: (a, n),
    lift2=_counter_lift2,
    fmap=_counter_fmap,
)


def tick(a):
    """Counter action returning ``(state, a)`` and bumping the state."""
    return lambda n: ((n, a), n + 1)


def compose_effects(outer: Effect, inner: Effect) -> Effect:
    """The applicative of ``outer`` actions yielding ``inner`` actions."""
    return Effect(
        f"{outer.name}.{inner.name}",
        pure=lambda a: outer.pure(inner.pure(a)),
        lift2=lambda fn, x, y: outer.lift2(lambda u, v: inner.lift2(fn, u, v), x, y),
        fmap=lambda fn, x: outer.fmap(lambda u: inner.fmap(fn, u), x),
    )


def traverse_effect(x, effect: Effect, f: Callable):
    """Map ``f`` over the contents of ``x`` inside ``effect``, left to right."""
    sc = decompose(x)
    acc = effect.pure(())
    for a in sc.contents:
        acc = effect.lift2(lambda done, b: done + (b,), acc, f(a))
    return effect.fmap(lambda bs: recombine(ShapeContents(sc.length, sc.shape, bs)), acc)
