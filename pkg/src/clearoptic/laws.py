"""Law suites: finite brute force, container laws, optic laws, lattice coherence.

Each suite returns a :class:`SuiteResult`; :func:`run_suites` collects them
into the plain-text report printed by ``clearoptic laws``.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from typing import Callable, Iterable

from . import containers as ct
from . import finite as fl
from .core import (
    Adapter,
    Glass,
    Grate,
    Kaleidoscope,
    Left,
    LengthMismatch,
    ListLens,
    Right,
    Setter,
    Some,
)
from .lattice import (
    DynOptic,
    OpticKind,
    all_paths,
    compose,
    join,
    leq,
    minimal_upper_bounds,
    upcast,
    upcast_along,
    upper_set,
)
from .path import Each, Field, Index, PathTypeError, Variant, compile_path, compile_text, infer_kind
from .sampling import random_ast, random_document, random_value
from .value import values_equal

K = OpticKind


@dataclass
class SuiteResult:
    name: str
    cases: int = 0
    failures: list = field(default_factory=list)
    note: str = ""

    @property
    def passed(self) -> bool:
        return not self.failures

    def check(self, ok: bool, witness=None):
        self.cases += 1
        if not ok and len(self.failures) < 5:
            self.failures.append(witness)
        elif not ok:
            self.failures.append(None)

    def line(self) -> str:
        status = "PASS" if self.passed else f"FAIL ({len(self.failures)} failures)"
        note = f"  [{self.note}]" if self.note else ""
        return f"{self.name:<40} {self.cases:>8} cases  {status}{note}"


# ---------------------------------------------------------------------------
# Observational equality


def same(x, y) -> bool:
    if isinstance(x, (Some, Left, Right)) or isinstance(y, (Some, Left, Right)):
        return type(x) is type(y) and same(x.value, y.value)
    if isinstance(x, tuple) and isinstance(y, tuple):
        return len(x) == len(y) and all(same(a, b) for a, b in zip(x, y))
    return values_equal(x, y)


def outcome(thunk: Callable):
    """``("ok", value)`` or ``("err", exception class name)``."""
    try:
        return ("ok", thunk())
    except (PathTypeError, LengthMismatch, KeyError, IndexError, TypeError) as exc:
        return ("err", type(exc).__name__)


def _tag(k):
    return lambda v: [k, v]


def probe(o: DynOptic, s, s2, b) -> tuple:
    """Observations of ``o`` on wholes ``s``, ``s2`` and replacement ``b``."""
    p = o.payload
    f = _tag("f")
    pair = lambda v: [v(s), v(s2)]  # noqa: E731
    if o.kind is K.ADAPTER:
        obs = [lambda: p.fwd(s), lambda: p.bwd(b)]
    elif o.kind is K.LENS:
        obs = [lambda: p.view(s), lambda: p.update(s, b)]
    elif o.kind is K.PRISM:
        obs = [lambda: p.match(s), lambda: p.build(b)]
    elif o.kind is K.AFFINE:
        obs = [lambda: _preview(p, s), lambda: _affine_set(p, s, b)]
    elif o.kind is K.TRAVERSAL:
        obs = [lambda: list(p.extract(s)[0]), lambda: _trav_over(p, f, s)]
    elif o.kind is K.GRATE:
        obs = [lambda: p.degrate(lambda v: f(v(s))), lambda: p.degrate(pair)]
    elif o.kind is K.GLASS:
        obs = [lambda: p.run(s, lambda v: f(v(s))), lambda: p.run(s, pair)]
    elif o.kind is K.KALEIDOSCOPE:
        obs = [lambda: p.agg(list)([s, s2]), lambda: p.agg(list)([s]), lambda: p.agg(list)([])]
    elif o.kind is K.LISTLENS:
        obs = [lambda: p.view(s), lambda: p.classify([s, s2], b), lambda: p.classify([], b)]
    else:
        obs = []
    obs.append(lambda: upcast(o, K.SETTER).payload.over(f)(s))
    return tuple(outcome(t) for t in obs)


def _preview(af, s):
    r = af.access(s)
    return Some(r.value[0]) if isinstance(r, Right) else None


def _affine_set(af, s, b):
    r = af.access(s)
    return r.value if isinstance(r, Left) else r.value[1](b)


def _trav_over(t, f, s):
    contents, rebuild = t.extract(s)
    return rebuild([f(a) for a in contents])


# ---------------------------------------------------------------------------
# Sample optics of every kind over documents


def _at(s, i):
    return s[i] if isinstance(s, list) and i < len(s) else None


def _x(s):
    if isinstance(s, dict) and "x" in s:
        return s["x"]
    raise PathTypeError("no field x")


def _pair_doc(rng):
    return [random_value(rng, 1), random_value(rng, 1)]


def _x_doc(rng):
    return {"x": random_value(rng, 1)}


def sample_optics() -> dict:
    """One hand-built optic per kind, with a generator of suitable wholes."""
    unwrap = lambda b: b["w"] if isinstance(b, dict) and "w" in b else b  # noqa: E731
    return {
        K.ADAPTER: (DynOptic(K.ADAPTER, Adapter(lambda s: {"w": s}, unwrap)), random_value),
        K.GRATE: (
            DynOptic(K.GRATE, Grate(lambda k: [k(lambda s: _at(s, 0)), k(lambda s: _at(s, 1))])),
            _pair_doc,
        ),
        K.PRISM: (compile_text("?left"), lambda rng: random_document([Variant("left")], rng)),
        K.LISTLENS: (
            DynOptic(K.LISTLENS, ListLens(_x, lambda ss, b: {"x": b, "ctx": [_x(s) for s in ss]})),
            _x_doc,
        ),
        K.LENS: (compile_text(".x"), lambda rng: random_document([Field("x")], rng)),
        K.AFFINE: (compile_text("[1]"), lambda rng: random_document([Index(1)], rng)),
        K.GLASS: (
            DynOptic(K.GLASS, Glass(lambda s, k: {"x": k(_x), "was": _x(s)})),
            _x_doc,
        ),
        K.KALEIDOSCOPE: (
            DynOptic(
                K.KALEIDOSCOPE,
                Kaleidoscope(
                    lambda fold: lambda ss: [fold([_at(s, 0) for s in ss]), fold([_at(s, 1) for s in ss])]
                ),
            ),
            _pair_doc,
        ),
        K.TRAVERSAL: (compile_text("each"), lambda rng: random_document([Each()], rng)),
        K.SETTER: (
            DynOptic(K.SETTER, Setter(lambda f: lambda s: [f(v) for v in s] if isinstance(s, list) else s)),
            lambda rng: random_document([Each()], rng),
        ),
    }


# ---------------------------------------------------------------------------
# Finite-lab suites

_FINITE_KINDS = (K.LENS, K.PRISM, K.AFFINE)
ENUMERATION_LIMIT = 200_000


def _size_vectors(max_product: int):
    for v in itertools.product(range(1, max_product + 1), repeat=4):
        p = v[0] * v[1] * v[2] * v[3]
        if p <= max_product:
            yield fl.Sizes(*v)


def suite_counts(max_product: int = 16) -> SuiteResult:
    res = SuiteResult(f"finite.count (product <= {max_product})")
    for sizes in _size_vectors(max_product):
        for kind in (K.ADAPTER,) + _FINITE_KINDS:
            expected = fl.count_concrete(kind, sizes)
            n = sum(1 for _ in fl.enumerate_concrete(kind, sizes))
            res.check(n == expected, (kind, sizes, n, expected))
    return res


def suite_section(kind: OpticKind, sizes: fl.Sizes, seed: int = 0) -> SuiteResult:
    """concretize(abstract(c)) == c, exhaustively when the count allows."""
    res = SuiteResult(f"finite.section.{kind.value.lower()} {tuple(sizes)}")
    total = fl.count_concrete(kind, sizes)
    if total <= ENUMERATION_LIMIT:
        items: Iterable = fl.enumerate_concrete(kind, sizes)
        res.note = f"exhaustive, count {total}"
    else:
        rng = random.Random(seed)
        items = (fl.random_concrete(kind, sizes, rng) for _ in range(20_000))
        res.note = f"sampled of {total}"
    seen = 0
    for c in items:
        seen += 1
        res.check(fl.concretize(fl.abstract(c)) == c, c)
    if total <= ENUMERATION_LIMIT:
        res.check(seen == total, ("enumerated", seen, "expected", total))
    return res


def suite_section_small(kind: OpticKind) -> SuiteResult:
    res = SuiteResult(f"finite.section.{kind.value.lower()} sizes <= 2")
    for sizes in itertools.starmap(fl.Sizes, itertools.product((1, 2), repeat=4)):
        for c in fl.enumerate_concrete(kind, sizes):
            res.check(fl.concretize(fl.abstract(c)) == c, c)
    return res


def suite_dinaturality_exhaustive(kind: OpticKind, max_size: int = 2) -> SuiteResult:
    res = SuiteResult(f"finite.dinaturality.{kind.value.lower()} <= {max_size}")
    for gen in fl.all_generators(kind, max_size):
        res.check(fl.dinaturality_invariant(gen), gen)
    return res


def suite_dinaturality_random(kind: OpticKind, seed: int, n: int = 10_000, max_size: int = 3) -> SuiteResult:
    res = SuiteResult(f"finite.dinaturality.{kind.value.lower()} random <= {max_size}")
    rng = random.Random(f"dinat-{kind.value}-{seed}")
    for _ in range(n):
        gen = fl.random_generator(kind, rng, max_size)
        res.check(fl.dinaturality_invariant(gen), gen)
    return res


def suite_yoneda_lens(seed: int, n: int = 1000) -> SuiteResult:
    res = SuiteResult("finite.yoneda.lens (2,2,2,2)")
    rng = random.Random(f"yoneda-{seed}")
    sizes = fl.Sizes(2, 2, 2, 2)
    for _ in range(n):
        ex = fl.random_existential(K.LENS, sizes, rng, max_residual=3)
        res.check(fl.concretize(ex) == fl.yoneda_lens(ex), ex)
    return res


def suite_existential_composition(kind: OpticKind, seed: int, n: int = 1000) -> SuiteResult:
    res = SuiteResult(f"finite.composition.{kind.value.lower()}")
    rng = random.Random(f"compose-{kind.value}-{seed}")
    for _ in range(n):
        s, t, a, b, x, y = (rng.randint(1, 2) for _ in range(6))
        e1 = fl.random_existential(kind, fl.Sizes(s, t, a, b), rng)
        e2 = fl.random_existential(kind, fl.Sizes(a, b, x, y), rng)
        direct = fl.concretize(fl.compose_existential(e1, e2))
        via_lattice = fl.tabulate(
            compose(fl.to_optic(fl.concretize(e1)), fl.to_optic(fl.concretize(e2))),
            fl.Sizes(s, t, x, y),
        )
        res.check(direct == via_lattice, (e1, e2))
    return res


def finite_suites(seed: int = 0, sizes: fl.Sizes = fl.Sizes(2, 2, 2, 2)) -> list[SuiteResult]:
    out = [suite_counts()]
    for kind in _FINITE_KINDS:
        out.append(suite_section(kind, sizes, seed))
        out.append(suite_section_small(kind))
    for kind in _FINITE_KINDS:
        out.append(suite_dinaturality_exhaustive(kind))
        out.append(suite_dinaturality_random(kind, seed))
    out.append(suite_yoneda_lens(seed))
    for kind in _FINITE_KINDS:
        out.append(suite_existential_composition(kind, seed))
    return out


# ---------------------------------------------------------------------------
# Container suites


def _trees(n: int):
    """All leaf-labelled tree shapes with ``n`` leaves, leaves holding ``None``."""
    if n == 1:
        yield ct.Leaf(None)
        return
    for k in range(1, n):
        for left in _trees(k):
            for right in _trees(n - k):
                yield ct.Node(left, right)


def all_containers(max_elems: int, alphabet=(0, 1)) -> list:
    """Every container of the four families with at most ``max_elems`` elements."""
    out = []
    for n in range(max_elems + 1):
        for labels in itertools.product(alphabet, repeat=n):
            out.append(list(labels))
    out.append(None)
    out.extend(Some(a) for a in alphabet)
    if max_elems >= 2:
        out.extend(itertools.product(alphabet, repeat=2))
    for n in range(1, max_elems + 1):
        for shape in _trees(n):
            for labels in itertools.product(alphabet, repeat=n):
                it = iter(labels)
                out.append(ct.fmap(shape, lambda _: next(it)))
    return out


def _container_equal(x, y) -> bool:
    return type(x) is type(y) and x == y


def suite_counitality(max_elems: int = 4) -> SuiteResult:
    res = SuiteResult(f"containers.counitality <= {max_elems}")
    for x in all_containers(max_elems):
        res.check(_container_equal(ct.recombine(ct.decompose(x)), x), x)
    return res


def suite_shape_idempotence(max_elems: int = 4) -> SuiteResult:
    res = SuiteResult(f"containers.shape_idempotence <= {max_elems}")
    for x in all_containers(max_elems):
        sh = ct.shape_of(x)
        sc = ct.decompose(sh)
        res.check(_container_equal(ct.shape_of(sh), sh), x)
        res.check(sc.contents == tuple(range(sc.length)), x)
    return res


def suite_unitarity(max_elems: int = 3) -> SuiteResult:
    res = SuiteResult(f"containers.unitarity <= {max_elems}")
    for x in all_containers(max_elems):
        r = ct.traverse_effect(x, ct.OPTIONAL, Some)
        res.check(isinstance(r, Some) and _container_equal(r.value, x), x)
        y, n = ct.traverse_effect(x, ct.COUNTER, ct.COUNTER.pure)(7)
        res.check(_container_equal(y, x) and n == 7, x)
    return res


def _partial(pair):
    n, a = pair
    return None if (n + a) % 3 == 2 else Some(pair)


def suite_linearity(max_elems: int = 3) -> SuiteResult:
    """Traversing with counter-then-optional equals the two traversals in sequence."""
    res = SuiteResult(f"containers.linearity <= {max_elems}")
    both = ct.compose_effects(ct.COUNTER, ct.OPTIONAL)
    for x in all_containers(max_elems):
        once = ct.traverse_effect(x, both, lambda a: ct.COUNTER.fmap(_partial, ct.tick(a)))
        twice = ct.COUNTER.fmap(
            lambda y: ct.traverse_effect(y, ct.OPTIONAL, _partial),
            ct.traverse_effect(x, ct.COUNTER, ct.tick),
        )
        for start in (0, 1, 2):
            (r1, n1), (r2, n2) = once(start), twice(start)
            ok = n1 == n2 and (
                (r1 is None and r2 is None)
                or (isinstance(r1, Some) and isinstance(r2, Some) and _container_equal(r1.value, r2.value))
            )
            res.check(ok, (x, start))
    return res


def container_suites() -> list[SuiteResult]:
    return [suite_counitality(), suite_shape_idempotence(), suite_unitarity(), suite_linearity()]


# ---------------------------------------------------------------------------
# Optic laws for compiled paths


def _kinded_ast(rng, kinds, min_len=1, max_len=4):
    while True:
        ast = random_ast(rng, max_len, kinds)
        if len(ast) >= min_len:
            return ast


def suite_lens_laws(seed: int, n: int = 1000) -> SuiteResult:
    res = SuiteResult("optics.lens_laws")
    rng = random.Random(f"lens-{seed}")
    for _ in range(n):
        try:
            ast = _kinded_ast(rng, {Field})
            o = compile_path(ast)
            lens = o.payload
            s = random_document(ast, rng)
            b1, b2 = random_value(rng), random_value(rng)
            res.check(o.kind is K.LENS, ast)
            res.check(values_equal(lens.update(s, lens.view(s)), s), ("GetPut", ast, s))
            res.check(values_equal(lens.view(lens.update(s, b1)), b1), ("PutGet", ast, s, b1))
            res.check(
                values_equal(lens.update(lens.update(s, b1), b2), lens.update(s, b2)),
                ("PutPut", ast, s, b1, b2),
            )
        except Exception as exc:  # a crash is a failed case
            res.check(False, (type(exc).__name__, str(exc)))
    return res


def suite_prism_laws(seed: int, n: int = 1000) -> SuiteResult:
    res = SuiteResult("optics.prism_laws")
    rng = random.Random(f"prism-{seed}")
    for i in range(n):
        try:
            ast = _kinded_ast(rng, {Variant}, max_len=3)
            o = compile_path(ast)
            prism = o.payload
            # half shaped for the path, half arbitrary
            s = random_document(ast, rng) if i % 2 else random_value(rng, 3)
            b = random_value(rng)
            res.check(o.kind is K.PRISM, ast)
            r = prism.match(prism.build(b))
            res.check(isinstance(r, Right) and values_equal(r.value, b), ("MatchBuild", ast, b))
            m = prism.match(s)
            if isinstance(m, Right):
                res.check(values_equal(prism.build(m.value), s), ("BuildMatch", ast, s))
            else:
                res.check(values_equal(m.value, s), ("MissKeeps", ast, s))
        except Exception as exc:  # a crash is a failed case
            res.check(False, (type(exc).__name__, str(exc)))
    return res


def suite_affine_laws(seed: int, n: int = 1000) -> SuiteResult:
    res = SuiteResult("optics.affine_laws")
    rng = random.Random(f"affine-{seed}")
    for _ in range(n):
        try:
            ast = _kinded_ast(rng, {Field, Variant, Index})
            o = compile_path(ast)
            af = upcast(o, K.AFFINE).payload
            s = random_document(ast, rng)
            b1, b2 = random_value(rng), random_value(rng)
            res.check(o.kind is infer_kind(ast) and leq(o.kind, K.AFFINE), ast)
            pv = _preview(af, s)
            if pv is not None:
                res.check(values_equal(_affine_set(af, s, pv.value), s), ("SetPreview", ast, s))
                res.check(same(_preview(af, _affine_set(af, s, b1)), Some(b1)), ("PreviewSet", ast, s, b1))
            else:
                res.check(values_equal(_affine_set(af, s, b1), s), ("MissKeeps", ast, s))
            res.check(
                values_equal(_affine_set(af, _affine_set(af, s, b1), b2), _affine_set(af, s, b2)),
                ("SetSet", ast, s),
            )
        except Exception as exc:  # a crash is a failed case
            res.check(False, (type(exc).__name__, str(exc)))
    return res


def suite_traversal_laws(seed: int, n: int = 1000) -> SuiteResult:
    res = SuiteResult("optics.traversal_laws")
    rng = random.Random(f"traversal-{seed}")
    f = _tag("f")
    for _ in range(n):
        try:
            ast = _kinded_ast(rng, None, min_len=0)
            tr = upcast(compile_path(ast), K.TRAVERSAL).payload
            s = random_document(ast, rng)
            contents, rebuild = tr.extract(s)
            res.check(values_equal(rebuild(contents), s), ("RebuildContents", ast, s))
            res.check(
                values_equal(list(tr.extract(_trav_over(tr, f, s))[0]), [f(a) for a in contents]),
                ("ListOver", ast, s),
            )
        except Exception as exc:  # a crash is a failed case
            res.check(False, (type(exc).__name__, str(exc)))
    return res


def optic_suites(seed: int = 0) -> list[SuiteResult]:
    return [
        suite_lens_laws(seed),
        suite_prism_laws(seed),
        suite_affine_laws(seed),
        suite_traversal_laws(seed),
    ]


# ---------------------------------------------------------------------------
# Lattice suites


def suite_join_table() -> SuiteResult:
    res = SuiteResult("lattice.join_unique")
    for k1, k2 in itertools.product(OpticKind, repeat=2):
        res.check(len(minimal_upper_bounds(k1, k2)) == 1, (k1, k2))
    return res


def suite_join_algebra() -> SuiteResult:
    res = SuiteResult("lattice.join_algebra")
    for k in OpticKind:
        res.check(join(k, k) is k, ("idempotent", k))
        res.check(join(K.ADAPTER, k) is k, ("bottom", k))
        res.check(join(K.SETTER, k) is K.SETTER, ("top", k))
    for k1, k2 in itertools.product(OpticKind, repeat=2):
        res.check(join(k1, k2) is join(k2, k1), ("commutative", k1, k2))
    for k1, k2, k3 in itertools.product(OpticKind, repeat=3):
        res.check(join(join(k1, k2), k3) is join(k1, join(k2, k3)), ("associative", k1, k2, k3))
    return res


def suite_path_independence(seed: int, docs: int = 500) -> SuiteResult:
    res = SuiteResult("lattice.path_independence")
    rng = random.Random(f"paths-{seed}")
    cases = 0
    for kind, (o, gen) in sample_optics().items():
        for target in sorted(upper_set(kind), key=lambda k: k.value):
            paths = list(all_paths(kind, target))
            if len(paths) < 2:
                continue
            cases += 1
            ups = [upcast_along(o, p) for p in paths]
            for _ in range(docs):
                s, s2, b = gen(rng), gen(rng), random_value(rng)
                first = probe(ups[0], s, s2, b)
                for p, u in zip(paths[1:], ups[1:]):
                    res.check(same(first, probe(u, s, s2, b)), (kind, target, p, s))
    res.note = f"{cases} kind/target pairs, {docs} docs each"
    return res


def suite_setter_preservation(seed: int, docs: int = 500) -> SuiteResult:
    res = SuiteResult("lattice.setter_preservation")
    rng = random.Random(f"setter-{seed}")
    f = _tag("f")
    for kind, (o, gen) in sample_optics().items():
        direct = upcast(o, K.SETTER).payload
        for mid in upper_set(kind):
            via = upcast(upcast(o, mid), K.SETTER).payload
            for _ in range(docs):
                s = gen(rng)
                res.check(
                    same(outcome(lambda: direct.over(f)(s)), outcome(lambda: via.over(f)(s))),
                    (kind, mid, s),
                )
    return res


def suite_associativity(seed: int, triples: int = 30, docs: int = 500) -> SuiteResult:
    res = SuiteResult("lattice.associativity")
    rng = random.Random(f"assoc-{seed}")
    for _ in range(triples):
        parts = [random_ast(rng, 2) for _ in range(3)]
        a, b, c = (compile_path(p) for p in parts)
        left = compose(compose(a, b), c)
        right = compose(a, compose(b, c))
        res.check(left.kind is right.kind, parts)
        whole = parts[0] + parts[1] + parts[2]
        for _ in range(docs):
            s, s2, v = random_document(whole, rng), random_document(whole, rng), random_value(rng)
            res.check(same(probe(left, s, s2, v), probe(right, s, s2, v)), (parts, s))
    res.note = f"{triples} triples, {docs} docs each"
    return res


def suite_compose_kind() -> SuiteResult:
    res = SuiteResult("lattice.compose_kind")
    samples = sample_optics()
    for k1, k2 in itertools.product(OpticKind, repeat=2):
        res.check(compose(samples[k1][0], samples[k2][0]).kind is join(k1, k2), (k1, k2))
    return res


def lattice_suites(seed: int = 0) -> list[SuiteResult]:
    return [
        suite_join_table(),
        suite_join_algebra(),
        suite_compose_kind(),
        suite_path_independence(seed),
        suite_setter_preservation(seed),
        suite_associativity(seed),
    ]


SUITES = {
    "finite": finite_suites,
    "containers": lambda seed=0, sizes=None: container_suites(),
    "optics": lambda seed=0, sizes=None: optic_suites(seed),
    "lattice": lambda seed=0, sizes=None: lattice_suites(seed),
}


def run_suites(names=None, seed: int = 0, sizes: fl.Sizes = fl.Sizes(2, 2, 2, 2)) -> list[SuiteResult]:
    out = []
    for name in names or SUITES:
        if name == "finite":
            out.extend(finite_suites(seed, sizes))
        else:
            out.extend(SUITES[name](seed=seed))
    return out


def report(results: list[SuiteResult]) -> str:
    lines = [r.line() for r in results]
    ok = all(r.passed for r in results)
    lines.append(f"{'all suites' :<40} {sum(r.cases for r in results):>8} cases  {'PASS' if ok else 'FAIL'}")
    return "\n".join(lines)
