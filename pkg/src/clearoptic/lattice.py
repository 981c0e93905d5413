"""The lattice of optic kinds and heterogeneous composition.

Composition of two optics of different kinds goes join, upcast, compose:
the composite lives in the least kind both operands embed into.
"""

from __future__ import annotations

import enum
from collections import deque
from dataclasses import dataclass
from functools import lru_cache
from typing import Any, Callable, Iterator

from .core import (
    Adapter,
    AffineTraversal,
    Glass,
    Grate,
    Kaleidoscope,
    Left,
    Lens,
    ListLens,
    Prism,
    Right,
    Setter,
    Some,
    Traversal,
    checked_rebuild,
    compose_fns,
    identity,
    traversal_over,
)


class OpticKind(enum.Enum):
    ADAPTER = "Adapter"
    GRATE = "Grate"
    PRISM = "Prism"
    LISTLENS = "ListLens"
    LENS = "Lens"
    AFFINE = "Affine"
    GLASS = "Glass"
    KALEIDOSCOPE = "Kaleidoscope"
    TRAVERSAL = "Traversal"
    SETTER = "Setter"

    def __str__(self):
        return self.value


K = OpticKind

# (x, y): every x is a y.
EDGES: tuple[tuple[OpticKind, OpticKind], ...] = (
    (K.ADAPTER, K.GRATE),
    (K.ADAPTER, K.PRISM),
    (K.ADAPTER, K.LISTLENS),
    (K.LISTLENS, K.LENS),
    (K.LISTLENS, K.KALEIDOSCOPE),
    (K.LENS, K.AFFINE),
    (K.LENS, K.GLASS),
    (K.PRISM, K.AFFINE),
    (K.GRATE, K.GLASS),
    (K.AFFINE, K.TRAVERSAL),
    (K.GLASS, K.SETTER),
    (K.TRAVERSAL, K.SETTER),
    (K.KALEIDOSCOPE, K.SETTER),
)

BOTTOM = K.ADAPTER
TOP = K.SETTER

PAYLOAD_TYPES = {
    K.ADAPTER: Adapter,
    K.GRATE: Grate,
    K.PRISM: Prism,
    K.LISTLENS: ListLens,
    K.LENS: Lens,
    K.AFFINE: AffineTraversal,
    K.GLASS: Glass,
    K.KALEIDOSCOPE: Kaleidoscope,
    K.TRAVERSAL: Traversal,
    K.SETTER: Setter,
}


class LatticeError(Exception):
    pass


class NoPathError(LatticeError):
    """No chain of inclusions leads from one kind to the other."""


def kind_by_name(name: str) -> OpticKind:
    for k in OpticKind:
        if k.value.lower() == name.lower():
            return k
    raise KeyError(name)


def successors(k: OpticKind) -> list[OpticKind]:
    return [y for x, y in EDGES if x is k]


@lru_cache(maxsize=None)
def upper_set(k: OpticKind) -> frozenset:
    """All kinds reachable from ``k``, including ``k`` itself."""
    seen = {k}
    todo = [k]
    while todo:
        for y in successors(todo.pop()):
            if y not in seen:
                seen.add(y)
                todo.append(y)
    return frozenset(seen)


def leq(k1: OpticKind, k2: OpticKind) -> bool:
    return k2 in upper_set(k1)


def minimal_upper_bounds(k1: OpticKind, k2: OpticKind) -> set:
    common = upper_set(k1) & upper_set(k2)
    return {u for u in common if not any(v != u and leq(v, u) for v in common)}


@lru_cache(maxsize=None)
def join(k1: OpticKind, k2: OpticKind) -> OpticKind:
    bounds = minimal_upper_bounds(k1, k2)
    if len(bounds) != 1:
        raise LatticeError(f"no unique join for {k1} and {k2}: {sorted(map(str, bounds))}")
    return next(iter(bounds))


def join_all(kinds) -> OpticKind:
    acc = BOTTOM
    for k in kinds:
        acc = join(acc, k)
    return acc


def find_path(src: OpticKind, dst: OpticKind) -> list[OpticKind]:
    """Shortest inclusion path ``[src, ..., dst]``; ties go to edge order."""
    prev = {src: None}
    queue = deque([src])
    while queue:
        k = queue.popleft()
        if k is dst:
            path = [k]
            while prev[path[-1]] is not None:
                path.append(prev[path[-1]])
            return path[::-1]
        for y in successors(k):
            if y not in prev:
                prev[y] = k
                queue.append(y)
    raise NoPathError(f"{src} does not include into {dst}")


def all_paths(src: OpticKind, dst: OpticKind) -> Iterator[list[OpticKind]]:
    if src is dst:
        yield [src]
        return
    for y in successors(src):
        if leq(y, dst):
            for rest in all_paths(y, dst):
                yield [src] + rest


# ---------------------------------------------------------------------------
# Dynamic optics


@dataclass(frozen=True)
class DynOptic:
    kind: OpticKind
    payload: Any

    def __post_init__(self):
        expected = PAYLOAD_TYPES[self.kind]
        if not isinstance(self.payload, expected):
            raise TypeError(
                f"{self.kind} optic needs a {expected.__name__} payload, "
                f"got {type(self.payload).__name__}"
            )

    @classmethod
    def of(cls, payload) -> "DynOptic":
        for kind, tp in PAYLOAD_TYPES.items():
            if type(payload) is tp:
                return cls(kind, payload)
        raise TypeError(f"not an optic of a lattice kind: {payload!r}")


def identity_optic() -> DynOptic:
    return DynOptic(K.ADAPTER, Adapter(identity, identity))


def _affine_to_traversal(af: AffineTraversal) -> Traversal:
    def extract(s):
        r = af.access(s)
        if isinstance(r, Left):
            t = r.value
            return [], checked_rebuild(0, lambda bs: t)
        a, cont = r.value
        return [a], checked_rebuild(1, lambda bs: cont(bs[0]))

    return Traversal(extract)


def _prism_to_affine(p: Prism) -> AffineTraversal:
    def access(s):
        r = p.match(s)
        if isinstance(r, Left):
            return r
        return Right((r.value, p.build))

    return AffineTraversal(access)


# Per-edge conversions. Each maps a payload of the source kind to one of the
# target kind.
_EDGE_FORMULAS: dict[tuple[OpticKind, OpticKind], Callable] = {
    (K.ADAPTER, K.GRATE): lambda o: Grate(lambda k: o.bwd(k(o.fwd))),
    (K.ADAPTER, K.PRISM): lambda o: Prism(lambda s: Right(o.fwd(s)), o.bwd),
    (K.ADAPTER, K.LISTLENS): lambda o: ListLens(o.fwd, lambda ss, b: o.bwd(b)),
    (K.LISTLENS, K.LENS): lambda o: Lens(o.view, lambda s, b: o.classify([s], b)),
    (K.LISTLENS, K.KALEIDOSCOPE): lambda o: Kaleidoscope(
        lambda fold: lambda ss: o.classify(ss, fold([o.view(s) for s in ss]))
    ),
    (K.LENS, K.AFFINE): lambda o: AffineTraversal(
        lambda s: Right((o.view(s), lambda b: o.update(s, b)))
    ),
    (K.LENS, K.GLASS): lambda o: Glass(lambda s, k: o.update(s, k(o.view))),
    (K.PRISM, K.AFFINE): _prism_to_affine,
    (K.GRATE, K.GLASS): lambda o: Glass(lambda s, k: o.degrate(k)),
    (K.AFFINE, K.TRAVERSAL): _affine_to_traversal,
    (K.GLASS, K.SETTER): lambda o: Setter(
        lambda f: lambda s: o.run(s, lambda v: f(v(s)))
    ),
    (K.TRAVERSAL, K.SETTER): lambda o: Setter(lambda f: lambda s: traversal_over(o, f, s)),
    (K.KALEIDOSCOPE, K.SETTER): lambda o: Setter(
        lambda f: lambda s: o.agg(lambda xs: f(xs[0]))([s])
    ),
}

assert set(_EDGE_FORMULAS) == set(EDGES)


def upcast_along(o: DynOptic, path: list[OpticKind]) -> DynOptic:
    if path[0] is not o.kind:
        raise NoPathError(f"path starts at {path[0]}, optic is {o.kind}")
    payload = o.payload
    for x, y in zip(path, path[1:]):
        try:
            edge = _EDGE_FORMULAS[(x, y)]
        except KeyError:
            raise NoPathError(f"{x} -> {y} is not an inclusion") from None
        payload = edge(payload)
    return DynOptic(path[-1], payload)


def upcast(o: DynOptic, target: OpticKind) -> DynOptic:
    if o.kind is target:
        return o
    return upcast_along(o, find_path(o.kind, target))


# ---------------------------------------------------------------------------
# Within-kind composition. ``outer`` focuses from the whole into an
# intermediate part, ``inner`` from that part into the final focus.


def _compose_adapter(o1: Adapter, o2: Adapter) -> Adapter:
    return Adapter(compose_fns(o2.fwd, o1.fwd), compose_fns(o1.bwd, o2.bwd))


def _compose_lens(o1: Lens, o2: Lens) -> Lens:
    return Lens(
        compose_fns(o2.view, o1.view),
        lambda s, x: o1.update(s, o2.update(o1.view(s), x)),
    )


def _compose_prism(o1: Prism, o2: Prism) -> Prism:
    def match(s):
        r1 = o1.match(s)
        if isinstance(r1, Left):
            return r1
        r2 = o2.match(r1.value)
        if isinstance(r2, Left):
            return Left(o1.build(r2.value))
        return r2

    return Prism(match, compose_fns(o1.build, o2.build))


def _compose_affine(o1: AffineTraversal, o2: AffineTraversal) -> AffineTraversal:
    def access(s):
        r1 = o1.access(s)
        if isinstance(r1, Left):
            return r1
        a, k1 = r1.value
        r2 = o2.access(a)
        if isinstance(r2, Left):
            return Left(k1(r2.value))
        x, k2 = r2.value
        return Right((x, compose_fns(k1, k2)))

    return AffineTraversal(access)


def _compose_traversal(o1: Traversal, o2: Traversal) -> Traversal:
    def extract(s):
        outer, rebuild_outer = o1.extract(s)
        parts = [o2.extract(a) for a in outer]
        lengths = [len(c) for c, _ in parts]
        contents = [x for c, _ in parts for x in c]

        def rebuild(ys):
            bs = []
            pos = 0
            for (_, rebuild_inner), n in zip(parts, lengths):
                bs.append(rebuild_inner(ys[pos : pos + n]))
                pos += n
            return rebuild_outer(bs)

        return contents, checked_rebuild(len(contents), rebuild)

    return Traversal(extract)


def _compose_grate(o1: Grate, o2: Grate) -> Grate:
    return Grate(
        lambda k: o1.degrate(lambda v1: o2.degrate(lambda v2: k(compose_fns(v2, v1))))
    )


def _compose_glass(o1: Glass, o2: Glass) -> Glass:
    return Glass(
        lambda s, k: o1.run(
            s, lambda va: o2.run(va(s), lambda vx: k(compose_fns(vx, va)))
        )
    )


def _compose_setter(o1: Setter, o2: Setter) -> Setter:
    return Setter(lambda f: o1.over(o2.over(f)))


def _compose_kaleidoscope(o1: Kaleidoscope, o2: Kaleidoscope) -> Kaleidoscope:
    return Kaleidoscope(lambda fold: o1.agg(o2.agg(fold)))


def _compose_listlens(o1: ListLens, o2: ListLens) -> ListLens:
    return ListLens(
        compose_fns(o2.view, o1.view),
        lambda ss, y: o1.classify(ss, o2.classify([o1.view(s) for s in ss], y)),
    )


_WITHIN_KIND = {
    K.ADAPTER: _compose_adapter,
    K.LENS: _compose_lens,
    K.PRISM: _compose_prism,
    K.AFFINE: _compose_affine,
    K.TRAVERSAL: _compose_traversal,
    K.GRATE: _compose_grate,
    K.GLASS: _compose_glass,
    K.SETTER: _compose_setter,
    K.KALEIDOSCOPE: _compose_kaleidoscope,
    K.LISTLENS: _compose_listlens,
}


def compose(outer: DynOptic, inner: DynOptic) -> DynOptic:
    kind = join(outer.kind, inner.kind)
    o1 = upcast(outer, kind).payload
    o2 = upcast(inner, kind).payload
    return DynOptic(kind, _WITHIN_KIND[kind](o1, o2))


def compose_all(*optics: DynOptic) -> DynOptic:
    acc = identity_optic()
    for o in optics:
        acc = compose(acc, o)
    return acc


# ---------------------------------------------------------------------------
# Kind-polymorphic operations on dynamic optics, used by the CLI and the
# observational probes.


def view(o: DynOptic, s):
    return upcast(o, K.LENS).payload.view(s)


def preview(o: DynOptic, s):
    r = upcast(o, K.AFFINE).payload.access(s)
    return Some(r.value[0]) if isinstance(r, Right) else None


def to_list(o: DynOptic, s) -> list:
    contents, _ = upcast(o, K.TRAVERSAL).payload.extract(s)
    return list(contents)


def over(o: DynOptic, f: Callable, s):
    return upcast(o, K.SETTER).payload.over(f)(s)


def set_all(o: DynOptic, s, b):
    return over(o, lambda _: b, s)
