"""Existential optics over finite sets, checked by brute force.

Finite sets are initial segments ``{0, ..., n-1}``.  A product ``m x a`` is
encoded row-major, ``(i, j) -> i * a + j``; a coproduct ``m + a`` is
left-tagged, ``inl i -> i`` and ``inr j -> m + j``.

An existential optic is a residual together with ``fwd : s -> m.a`` and
``bwd : m.b -> t`` for a monoidal action ``m.x``:

=========  ============  ==============
kind       residual m    action m.x
=========  ============  ==============
lens       c             c * x
prism      c             c + x
affine     (c, d)        c + d * x
=========  ============  ==============

``concretize`` removes the residual and ``abstract`` picks a canonical one.
Two existentials related by a residual map ``h`` (``fwd`` pushed along
``h`` versus ``bwd`` pulled back along ``h``) must concretize equally.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from typing import Iterator, NamedTuple, Union

from .core import AffineTraversal, Left, Lens, Prism, Right
from .lattice import DynOptic, OpticKind


class Sizes(NamedTuple):
    s: int
    t: int
    a: int
    b: int


@dataclass(frozen=True)
class FinFn:
    dom: int
    cod: int
    table: tuple

    def __post_init__(self):
        if len(self.table) != self.dom:
            raise ValueError(f"table has {len(self.table)} entries, domain is {self.dom}")
        if any(not 0 <= v < self.cod for v in self.table):
            raise ValueError(f"table {self.table} leaves codomain {self.cod}")

    def __call__(self, i: int) -> int:
        return self.table[i]

    def then(self, g: "FinFn") -> "FinFn":
        """``g`` after ``self``."""
        if g.dom != self.cod:
            raise ValueError("composing functions with mismatched sizes")
        return FinFn(self.dom, g.cod, tuple(g.table[v] for v in self.table))

    @classmethod
    def identity(cls, n: int) -> "FinFn":
        return cls(n, n, tuple(range(n)))

    @classmethod
    def all(cls, dom: int, cod: int) -> Iterator["FinFn"]:
        for table in itertools.product(range(cod), repeat=dom):
            yield cls(dom, cod, table)

    @classmethod
    def random(cls, dom: int, cod: int, rng: random.Random) -> "FinFn":
        return cls(dom, cod, tuple(rng.randrange(cod) for _ in range(dom)))


Residual = Union[int, tuple]


# ---------------------------------------------------------------------------
# Existential forms


@dataclass(frozen=True)
class Existential:
    sizes: Sizes
    residual: Residual
    fwd: FinFn
    bwd: FinFn

    kind = None

    def __post_init__(self):
        s, t, a, b = self.sizes
        if (self.fwd.dom, self.fwd.cod) != (s, self.act_size(self.residual, a)):
            raise ValueError("fwd has the wrong shape for these sizes")
        if (self.bwd.dom, self.bwd.cod) != (self.act_size(self.residual, b), t):
            raise ValueError("bwd has the wrong shape for these sizes")

    @staticmethod
    def act_size(m: Residual, x: int) -> int:
        raise NotImplementedError

    @staticmethod
    def act_map(h, x: int) -> FinFn:
        """The action of a residual map ``h : m -> m'`` on ``m.x``."""
        raise NotImplementedError


@dataclass(frozen=True)
class ExistentialLens(Existential):
    kind = OpticKind.LENS

    @staticmethod
    def act_size(m, x):
        return m * x

    @staticmethod
    def act_map(h: FinFn, x):
        return FinFn(h.dom * x, h.cod * x, tuple(h(i) * x + j for i in range(h.dom) for j in range(x)))


@dataclass(frozen=True)
class ExistentialPrism(Existential):
    kind = OpticKind.PRISM

    @staticmethod
    def act_size(m, x):
        return m + x

    @staticmethod
    def act_map(h: FinFn, x):
        return FinFn(h.dom + x, h.cod + x, h.table + tuple(h.cod + j for j in range(x)))


@dataclass(frozen=True)
class ExistentialAffine(Existential):
    kind = OpticKind.AFFINE

    @staticmethod
    def act_size(m, x):
        c, d = m
        return c + d * x

    @staticmethod
    def act_map(h, x):
        h1, h2 = h
        left = h1.table
        right = tuple(h1.cod + h2(i) * x + j for i in range(h2.dom) for j in range(x))
        return FinFn(h1.dom + h2.dom * x, h1.cod + h2.cod * x, left + right)


EXISTENTIAL_TYPES = {
    OpticKind.LENS: ExistentialLens,
    OpticKind.PRISM: ExistentialPrism,
    OpticKind.AFFINE: ExistentialAffine,
}


# ---------------------------------------------------------------------------
# Concrete forms, as hashable tables


@dataclass(frozen=True)
class ConcreteAdapter:
    sizes: Sizes
    fwd: tuple  # s -> a
    bwd: tuple  # b -> t


@dataclass(frozen=True)
class ConcreteLens:
    sizes: Sizes
    view: tuple  # s -> a
    update: tuple  # s * b -> t, row-major


@dataclass(frozen=True)
class ConcretePrism:
    sizes: Sizes
    match: tuple  # s -> t + a, left-tagged
    build: tuple  # b -> t


@dataclass(frozen=True)
class ConcreteAffine:
    """``access[s]`` is ``Left(t)`` or ``Right((a, k))`` with ``k`` a b -> t table."""

    sizes: Sizes
    access: tuple


Concrete = Union[ConcreteAdapter, ConcreteLens, ConcretePrism, ConcreteAffine]


def concretize(ex: Existential) -> Concrete:
    s, t, a, b = ex.sizes
    if isinstance(ex, ExistentialLens):
        pairs = [divmod(ex.fwd(i), a) for i in range(s)]
        view = tuple(x for _, x in pairs)
        update = tuple(ex.bwd(m * b + y) for m, _ in pairs for y in range(b))
        return ConcreteLens(ex.sizes, view, update)
    if isinstance(ex, ExistentialPrism):
        c = ex.residual
        match = []
        for i in range(s):
            v = ex.fwd(i)
            match.append(ex.bwd(v) if v < c else t + (v - c))
        build = tuple(ex.bwd(c + y) for y in range(b))
        return ConcretePrism(ex.sizes, tuple(match), build)
    if isinstance(ex, ExistentialAffine):
        c, _ = ex.residual
        access = []
        for i in range(s):
            v = ex.fwd(i)
            if v < c:
                access.append(Left(ex.bwd(v)))
            else:
                dd, x = divmod(v - c, a)
                k = tuple(ex.bwd(c + dd * b + y) for y in range(b))
                access.append(Right((x, k)))
        return ConcreteAffine(ex.sizes, tuple(access))
    raise TypeError(f"cannot concretize {ex!r}")


def abstract(conc: Concrete) -> Existential:
    s, t, a, b = conc.sizes
    if isinstance(conc, ConcreteLens):
        # residual: the whole itself
        fwd = FinFn(s, s * a, tuple(i * a + conc.view[i] for i in range(s)))
        return ExistentialLens(conc.sizes, s, fwd, FinFn(s * b, t, conc.update))
    if isinstance(conc, ConcretePrism):
        # residual: the failure result
        fwd = FinFn(s, t + a, conc.match)
        bwd = FinFn(t + b, t, tuple(range(t)) + conc.build)
        return ExistentialPrism(conc.sizes, t, fwd, bwd)
    if isinstance(conc, ConcreteAffine):
        # residual: (failure results, wholes that matched)
        fwd_table = []
        bwd_right = []
        for i, entry in enumerate(conc.access):
            if isinstance(entry, Left):
                fwd_table.append(entry.value)
                bwd_right.extend([0] * b)  # unreachable slots
            else:
                x, k = entry.value
                fwd_table.append(t + i * a + x)
                bwd_right.extend(k)
        fwd = FinFn(s, t + s * a, tuple(fwd_table))
        bwd = FinFn(t + s * b, t, tuple(range(t)) + tuple(bwd_right))
        return ExistentialAffine(conc.sizes, (t, s), fwd, bwd)
    raise TypeError(f"cannot abstract {conc!r}")


def yoneda_lens(ex: ExistentialLens) -> ConcreteLens:
    """Concretize a lens one element at a time, straight from its pieces.

    Independent of :func:`concretize`: it reads the residual and focus off
    every candidate pair instead of dividing encoded indices.
    """
    s, t, a, b = ex.sizes
    view, update = [], []
    for i in range(s):
        for m, x in itertools.product(range(ex.residual), range(a)):
            if ex.fwd(i) == m * a + x:
                view.append(x)
                update.extend(ex.bwd(m * b + y) for y in range(b))
    return ConcreteLens(ex.sizes, tuple(view), tuple(update))


# ---------------------------------------------------------------------------
# Enumeration and counting


def count_concrete(kind: OpticKind, sizes: Sizes) -> int:
    s, t, a, b = sizes
    if min(sizes) < 1:
        raise ValueError("sizes must be positive")
    if kind is OpticKind.LENS:
        return a**s * t ** (s * b)
    if kind is OpticKind.PRISM:
        return (t + a) ** s * t**b
    if kind is OpticKind.AFFINE:
        return (t + a * t**b) ** s
    if kind is OpticKind.ADAPTER:
        return a**s * t**b
    raise ValueError(f"no finite concrete form counted for {kind}")


def enumerate_concrete(kind: OpticKind, sizes: Sizes) -> Iterator[Concrete]:
    s, t, a, b = sizes
    tables = lambda n, k: itertools.product(range(k), repeat=n)  # noqa: E731
    if kind is OpticKind.ADAPTER:
        for fwd, bwd in itertools.product(tables(s, a), tables(b, t)):
            yield ConcreteAdapter(sizes, fwd, bwd)
    elif kind is OpticKind.LENS:
        for view, update in itertools.product(tables(s, a), tables(s * b, t)):
            yield ConcreteLens(sizes, view, update)
    elif kind is OpticKind.PRISM:
        for match, build in itertools.product(tables(s, t + a), tables(b, t)):
            yield ConcretePrism(sizes, match, build)
    elif kind is OpticKind.AFFINE:
        entries = [Left(i) for i in range(t)] + [
            Right((x, k)) for x in range(a) for k in tables(b, t)
        ]
        for access in itertools.product(entries, repeat=s):
            yield ConcreteAffine(sizes, access)
    else:
        raise ValueError(f"no finite concrete form enumerated for {kind}")


def random_concrete(kind: OpticKind, sizes: Sizes, rng: random.Random) -> Concrete:
    s, t, a, b = sizes
    table = lambda n, k: tuple(rng.randrange(k) for _ in range(n))  # noqa: E731
    if kind is OpticKind.LENS:
        return ConcreteLens(sizes, table(s, a), table(s * b, t))
    if kind is OpticKind.PRISM:
        return ConcretePrism(sizes, table(s, t + a), table(b, t))
    if kind is OpticKind.AFFINE:
        access = []
        for _ in range(s):
            if rng.randrange(t + a * t**b) < t:
                access.append(Left(rng.randrange(t)))
            else:
                access.append(Right((rng.randrange(a), table(b, t))))
        return ConcreteAffine(sizes, tuple(access))
    raise ValueError(f"no random concrete form for {kind}")


# ---------------------------------------------------------------------------
# Dinaturality


@dataclass(frozen=True)
class Generator:
    """``fwd`` lands in ``m.a``, ``bwd`` reads ``m'.b`` and ``h : m -> m'``."""

    kind: OpticKind
    sizes: Sizes
    residual: Residual
    residual2: Residual
    h: object  # FinFn, or a pair of them for affines
    fwd: FinFn
    bwd: FinFn


def dinaturality_sides(gen: Generator) -> tuple[Existential, Existential]:
    cls = EXISTENTIAL_TYPES[gen.kind]
    _, _, a, b = gen.sizes
    pushed = cls(gen.sizes, gen.residual2, gen.fwd.then(cls.act_map(gen.h, a)), gen.bwd)
    pulled = cls(gen.sizes, gen.residual, gen.fwd, cls.act_map(gen.h, b).then(gen.bwd))
    return pushed, pulled


def dinaturality_invariant(gen: Generator) -> bool:
    pushed, pulled = dinaturality_sides(gen)
    return concretize(pushed) == concretize(pulled)


def _residual_maps(kind, m, m2):
    if kind is OpticKind.AFFINE:
        return itertools.product(FinFn.all(m[0], m2[0]), FinFn.all(m[1], m2[1]))
    return FinFn.all(m, m2)


def _residuals(kind, max_size):
    r = range(1, max_size + 1)
    return list(itertools.product(r, r)) if kind is OpticKind.AFFINE else list(r)


def all_generators(kind: OpticKind, max_size: int = 2) -> Iterator[Generator]:
    """Every generator with all sizes and residual components in ``1..max_size``."""
    cls = EXISTENTIAL_TYPES[kind]
    r = range(1, max_size + 1)
    residuals = _residuals(kind, max_size)
    for sizes in itertools.starmap(Sizes, itertools.product(r, repeat=4)):
        for m, m2 in itertools.product(residuals, repeat=2):
            fwds = list(FinFn.all(sizes.s, cls.act_size(m, sizes.a)))
            bwds = list(FinFn.all(cls.act_size(m2, sizes.b), sizes.t))
            for h in _residual_maps(kind, m, m2):
                for fwd in fwds:
                    for bwd in bwds:
                        yield Generator(kind, sizes, m, m2, h, fwd, bwd)


def random_generator(kind: OpticKind, rng: random.Random, max_size: int = 3) -> Generator:
    cls = EXISTENTIAL_TYPES[kind]
    sizes = Sizes(*(rng.randint(1, max_size) for _ in range(4)))
    residuals = _residuals(kind, max_size)
    m, m2 = rng.choice(residuals), rng.choice(residuals)
    if kind is OpticKind.AFFINE:
        h = (FinFn.random(m[0], m2[0], rng), FinFn.random(m[1], m2[1], rng))
    else:
        h = FinFn.random(m, m2, rng)
    fwd = FinFn.random(sizes.s, cls.act_size(m, sizes.a), rng)
    bwd = FinFn.random(cls.act_size(m2, sizes.b), sizes.t, rng)
    return Generator(kind, sizes, m, m2, h, fwd, bwd)


def random_existential(kind: OpticKind, sizes: Sizes, rng: random.Random, max_residual: int = 2) -> Existential:
    cls = EXISTENTIAL_TYPES[kind]
    m = rng.choice(_residuals(kind, max_residual))
    fwd = FinFn.random(sizes.s, cls.act_size(m, sizes.a), rng)
    bwd = FinFn.random(cls.act_size(m, sizes.b), sizes.t, rng)
    return cls(sizes, m, fwd, bwd)


# ---------------------------------------------------------------------------
# Composition of existentials: residuals combine through the action.


def compose_existential(e1: Existential, e2: Existential) -> Existential:
    """``e1`` goes from (s, t) to (a, b); ``e2`` from (a, b) to (x, y)."""
    if type(e1) is not type(e2):
        raise TypeError("existential composition is within one kind")
    s, t, a, b = e1.sizes
    a2, b2, x, y = e2.sizes
    if (a, b) != (a2, b2):
        raise ValueError("inner optic does not start where the outer one ends")
    sizes = Sizes(s, t, x, y)

    if isinstance(e1, ExistentialLens):
        c1, c2 = e1.residual, e2.residual
        fwd = []
        for i in range(s):
            m1, fa = divmod(e1.fwd(i), a)
            m2, fx = divmod(e2.fwd(fa), x)
            fwd.append((m1 * c2 + m2) * x + fx)
        bwd = []
        for m1, m2, fy in itertools.product(range(c1), range(c2), range(y)):
            bwd.append(e1.bwd(m1 * b + e2.bwd(m2 * y + fy)))
        m = c1 * c2
        return ExistentialLens(sizes, m, FinFn(s, m * x, tuple(fwd)), FinFn(m * y, t, tuple(bwd)))

    if isinstance(e1, ExistentialPrism):
        c1, c2 = e1.residual, e2.residual
        m = c1 + c2
        fwd = []
        for i in range(s):
            v = e1.fwd(i)
            if v < c1:
                fwd.append(v)
            else:
                w = e2.fwd(v - c1)
                fwd.append(c1 + w)  # inr of c2 lands at c1 + w, x right after
        bwd = []
        for u in range(m + y):
            if u < c1:
                bwd.append(e1.bwd(u))
            else:
                bwd.append(e1.bwd(c1 + e2.bwd(u - c1)))
        return ExistentialPrism(sizes, m, FinFn(s, m + x, tuple(fwd)), FinFn(m + y, t, tuple(bwd)))

    if isinstance(e1, ExistentialAffine):
        (c1, d1), (c2, d2) = e1.residual, e2.residual
        big_c, big_d = c1 + d1 * c2, d1 * d2
        fwd = []
        for i in range(s):
            v = e1.fwd(i)
            if v < c1:
                fwd.append(v)
                continue
            dd1, fa = divmod(v - c1, a)
            w = e2.fwd(fa)
            if w < c2:
                fwd.append(c1 + dd1 * c2 + w)
            else:
                dd2, fx = divmod(w - c2, x)
                fwd.append(big_c + (dd1 * d2 + dd2) * x + fx)
        bwd = []
        for u in range(big_c + big_d * y):
            if u < c1:
                bwd.append(e1.bwd(u))
            elif u < big_c:
                dd1, m2 = divmod(u - c1, c2)
                bwd.append(e1.bwd(c1 + dd1 * b + e2.bwd(m2)))
            else:
                dd, fy = divmod(u - big_c, y)
                dd1, dd2 = divmod(dd, d2)
                bwd.append(e1.bwd(c1 + dd1 * b + e2.bwd(c2 + dd2 * y + fy)))
        m = (big_c, big_d)
        return ExistentialAffine(
            sizes,
            m,
            FinFn(s, big_c + big_d * x, tuple(fwd)),
            FinFn(big_c + big_d * y, t, tuple(bwd)),
        )
    raise TypeError(f"cannot compose {type(e1).__name__}")


# ---------------------------------------------------------------------------
# Bridges to the runtime optics of the lattice module


def to_optic(conc: Concrete) -> DynOptic:
    _, t, _, b = conc.sizes
    if isinstance(conc, ConcreteLens):
        return DynOptic(
            OpticKind.LENS,
            Lens(lambda i: conc.view[i], lambda i, y: conc.update[i * b + y]),
        )
    if isinstance(conc, ConcretePrism):

        def match(i):
            v = conc.match[i]
            return Left(v) if v < t else Right(v - t)

        return DynOptic(OpticKind.PRISM, Prism(match, lambda y: conc.build[y]))
    if isinstance(conc, ConcreteAffine):

        def access(i):
            entry = conc.access[i]
            if isinstance(entry, Left):
                return entry
            x, k = entry.value
            return Right((x, lambda y: k[y]))

        return DynOptic(OpticKind.AFFINE, AffineTraversal(access))
    raise TypeError(f"no runtime optic for {conc!r}")


def tabulate(o: DynOptic, sizes: Sizes) -> Concrete:
    s, t, _, b = sizes
    p = o.payload
    if o.kind is OpticKind.LENS:
        return ConcreteLens(
            sizes,
            tuple(p.view(i) for i in range(s)),
            tuple(p.update(i, y) for i in range(s) for y in range(b)),
        )
    if o.kind is OpticKind.PRISM:
        match = []
        for i in range(s):
            r = p.match(i)
            match.append(r.value if isinstance(r, Left) else t + r.value)
        return ConcretePrism(sizes, tuple(match), tuple(p.build(y) for y in range(b)))
    if o.kind is OpticKind.AFFINE:
        access = []
        for i in range(s):
            r = p.access(i)
            if isinstance(r, Left):
                access.append(r)
            else:
                x, cont = r.value
                access.append(Right((x, tuple(cont(y) for y in range(b)))))
        return ConcreteAffine(sizes, tuple(access))
    raise TypeError(f"cannot tabulate a {o.kind} optic")
