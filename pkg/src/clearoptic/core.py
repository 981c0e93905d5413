"""Concrete optic forms and their run operations.

Every optic is a frozen dataclass whose fields are plain callables, so an
optic is just the tuple of functions that defines it concretely.  Nothing
here checks laws; lawfulness is only tested for the optics the path
compiler emits.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Callable, Generic, Optional, Sequence, TypeVar

S = TypeVar("S")
T = TypeVar("T")
A = TypeVar("A")
B = TypeVar("B")


@dataclass(frozen=True)
class Left(Generic[A]):
    value: A


@dataclass(frozen=True)
class Right(Generic[A]):
    value: A


Either = Left | Right  # type: ignore[operator]


@dataclass(frozen=True)
class Some(Generic[A]):
    """A present optional value; absence is plain ``None``.

    A wrapper is needed because ``None`` is itself a legal focus (JSON null).
    """

    value: A


class LengthMismatch(ValueError):
    """A rebuild function received a sequence of the wrong length."""


def identity(x):
    return x


def compose_fns(*fns: Callable) -> Callable:
    """``compose_fns(f, g)(x) == f(g(x))``."""

    def composed(x):
        for fn in reversed(fns):
            x = fn(x)
        return x

    return composed


# ---------------------------------------------------------------------------
# The ten kinds of the lattice, plus the achromatic lens.


@dataclass(frozen=True)
class Adapter(Generic[S, T, A, B]):
    fwd: Callable[[S], A]
    bwd: Callable[[B], T]


@dataclass(frozen=True)
class Lens(Generic[S, T, A, B]):
    view: Callable[[S], A]
    update: Callable[[S, B], T]


@dataclass(frozen=True)
class Prism(Generic[S, T, A, B]):
    match: Callable[[S], Any]  # S -> Left[T] | Right[A]
    build: Callable[[B], T]


@dataclass(frozen=True)
class AffineTraversal(Generic[S, T, A, B]):
    # S -> Left[T] | Right[(A, B -> T)]
    access: Callable[[S], Any]


@dataclass(frozen=True)
class Traversal(Generic[S, T, A, B]):
    """``extract(s)`` returns ``(contents, rebuild)``.

    ``rebuild`` must only be called with a sequence as long as ``contents``;
    rebuild functions built in this package raise :class:`LengthMismatch`
    otherwise.
    """

    extract: Callable[[S], tuple]


@dataclass(frozen=True)
class Grate(Generic[S, T, A, B]):
    degrate: Callable[[Callable[[Callable[[S], A]], B]], T]


@dataclass(frozen=True)
class Glass(Generic[S, T, A, B]):
    run: Callable[[S, Callable[[Callable[[S], A]], B]], T]


@dataclass(frozen=True)
class Setter(Generic[S, T, A, B]):
    over: Callable[[Callable[[A], B]], Callable[[S], T]]


@dataclass(frozen=True)
class Kaleidoscope(Generic[S, T, A, B]):
    """``agg(fold)`` turns a fold over foci into a fold over wholes.

    A single function on sequences stands for the whole family indexed by
    length, so ``agg(fold)`` must accept the empty sequence too.
    """

    agg: Callable[[Callable[[Sequence[A]], B]], Callable[[Sequence[S]], T]]


@dataclass(frozen=True)
class ListLens(Generic[S, T, A, B]):
    view: Callable[[S], A]
    classify: Callable[[Sequence[S], B], T]


@dataclass(frozen=True)
class AchromaticLens(Generic[S, T, A, B]):
    # S -> Left[B -> T] | Right[None]
    setter_opt: Callable[[S], Any]
    view: Callable[[S], A]
    build: Callable[[B], T]


# ---------------------------------------------------------------------------
# Run operations.


def lens_view(l: Lens, s):
    return l.view(s)


def lens_update(l: Lens, s, b):
    return l.update(s, b)


def prism_match(p: Prism, s):
    return p.match(s)


def prism_build(p: Prism, b):
    return p.build(b)


def affine_preview(af: AffineTraversal, s) -> Optional[Some]:
    r = af.access(s)
    if isinstance(r, Right):
        return Some(r.value[0])
    return None


def affine_set(af: AffineTraversal, s, b):
    r = af.access(s)
    if isinstance(r, Left):
        return r.value
    _, cont = r.value
    return cont(b)


def traversal_to_list(t: Traversal, s) -> list:
    contents, _ = t.extract(s)
    return list(contents)


def traversal_over(t: Traversal, f: Callable, s):
    contents, rebuild = t.extract(s)
    return rebuild([f(a) for a in contents])


def grate_zip2(g: Grate, s1, s2, combine: Callable):
    return g.degrate(lambda v: combine(v(s1), v(s2)))


def glass_run(gl: Glass, s, k: Callable):
    return gl.run(s, k)


def setter_over(st: Setter, f: Callable) -> Callable:
    return st.over(f)


def kaleidoscope_apply(k: Kaleidoscope, fold: Callable, ss: Sequence):
    return k.agg(fold)(ss)


def listlens_classify(ll: ListLens, ss: Sequence, b):
    return ll.classify(ss, b)


def achromatic_ops(al: AchromaticLens):
    """Return ``(view, update, build)``.

    ``update`` uses the stored setter when there is one and falls back to
    building from scratch otherwise.
    """

    def update(s, b):
        r = al.setter_opt(s)
        if isinstance(r, Left):
            return r.value(b)
        return al.build(b)

    return al.view, update, al.build


def achromatic_to_lens(al: AchromaticLens) -> Lens:
    view, update, _ = achromatic_ops(al)
    return Lens(view, update)


def checked_rebuild(n: int, rebuild: Callable) -> Callable:
    """Wrap ``rebuild`` so that it rejects sequences whose length is not ``n``."""

    def guarded(bs):
        bs = list(bs)
        if len(bs) != n:
            raise LengthMismatch(f"rebuild expects {n} values, got {len(bs)}")
        return rebuild(bs)

    return guarded
