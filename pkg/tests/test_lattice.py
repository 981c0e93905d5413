import itertools
import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from clearoptic.core import Adapter, Lens, identity
from clearoptic.laws import probe, same, sample_optics
from clearoptic.lattice import (
    DynOptic,
    LatticeError,
    NoPathError,
    OpticKind,
    all_paths,
    compose,
    find_path,
    identity_optic,
    join,
    preview,
    upcast,
    upcast_along,
)
from clearoptic.path import compile_text
from clearoptic.sampling import random_value

K = OpticKind

# Inclusions as drawn in the lattice figure, written out independently of the
# module's edge table.
FIGURE = """
Adapter Grate
Adapter Prism
Adapter ListLens
ListLens Lens
ListLens Kaleidoscope
Lens Affine
Lens Glass
Prism Affine
Grate Glass
Affine Traversal
Glass Setter
Traversal Setter
Kaleidoscope Setter
"""


def oracle_join_table():
    names = [k.value for k in OpticKind]
    reach = {(x, y): x == y for x in names for y in names}
    for line in FIGURE.split("\n"):
        if line.strip():
            x, y = line.split()
            reach[x, y] = True
    for m, x, y in itertools.product(names, repeat=3):
        if reach[x, m] and reach[m, y]:
            reach[x, y] = True
    table = {}
    for x, y in itertools.product(names, repeat=2):
        ups = [u for u in names if reach[x, u] and reach[y, u]]
        least = [u for u in ups if all(reach[u, v] for v in ups)]
        table[x, y] = least
    return table


def test_join_matches_closure_oracle():
    table = oracle_join_table()
    for k1, k2 in itertools.product(OpticKind, repeat=2):
        assert table[k1.value, k2.value] == [join(k1, k2).value]


@pytest.mark.parametrize(
    "k1, k2, expected",
    [
        (K.LENS, K.PRISM, K.AFFINE),
        (K.LISTLENS, K.KALEIDOSCOPE, K.KALEIDOSCOPE),
        (K.LENS, K.GRATE, K.GLASS),
        (K.LENS, K.KALEIDOSCOPE, K.SETTER),
        (K.GRATE, K.PRISM, K.SETTER),
        (K.AFFINE, K.GLASS, K.SETTER),
        (K.LENS, K.TRAVERSAL, K.TRAVERSAL),
    ],
)
def test_join_values(k1, k2, expected):
    assert join(k1, k2) is expected


kinds = st.sampled_from(list(OpticKind))


@given(kinds, kinds, kinds)
def test_join_is_a_semilattice(a, b, c):
    assert join(a, a) is a
    assert join(a, b) is join(b, a)
    assert join(join(a, b), c) is join(a, join(b, c))
    assert join(K.ADAPTER, a) is a
    assert join(K.SETTER, a) is K.SETTER


def test_identity_adapter_to_setter_is_identity():
    setter = upcast(identity_optic(), K.SETTER).payload
    f = lambda x: [x]  # noqa: E731
    rng = random.Random(0)
    for _ in range(100):
        s = random_value(rng)
        assert same(setter.over(f)(s), f(s))


def test_lens_to_setter_both_routes_agree():
    lens = compile_text(".x")
    paths = list(all_paths(K.LENS, K.SETTER))
    assert [K.LENS, K.GLASS, K.SETTER] in paths
    assert [K.LENS, K.AFFINE, K.TRAVERSAL, K.SETTER] in paths
    via_glass = upcast_along(lens, [K.LENS, K.GLASS, K.SETTER]).payload
    via_traversal = upcast_along(lens, [K.LENS, K.AFFINE, K.TRAVERSAL, K.SETTER]).payload
    rng = random.Random(1)
    f = lambda v: {"new": v}  # noqa: E731
    for _ in range(1000):
        s = {"x": random_value(rng), "y": random_value(rng)}
        assert same(via_glass.over(f)(s), via_traversal.over(f)(s))


def test_no_path_from_lens_to_kaleidoscope():
    with pytest.raises(NoPathError):
        upcast(compile_text(".x"), K.KALEIDOSCOPE)
    with pytest.raises(NoPathError):
        find_path(K.SETTER, K.LENS)
    with pytest.raises(NoPathError):
        upcast_along(compile_text(".x"), [K.LENS, K.KALEIDOSCOPE])


def test_payload_must_match_kind():
    with pytest.raises(TypeError):
        DynOptic(K.PRISM, Lens(identity, lambda s, b: b))


def test_prism_then_lens_is_affine_on_address():
    street = DynOptic(K.LENS, Lens(lambda p: p["street"], lambda p, v: {**p, "street": v}))
    o = compose(compile_text("?postal"), street)
    assert o.kind is K.AFFINE
    doc = {"postal": {"street": "45 Banbury Rd", "city": "Oxford"}}
    assert preview(o, doc).value == "45 Banbury Rd"


def test_identity_is_a_unit():
    rng = random.Random(3)
    for kind, (o, gen) in sample_optics().items():
        left = compose(identity_optic(), o)
        right = compose(o, identity_optic())
        assert left.kind is right.kind is kind
        for _ in range(100):
            s, s2, b = gen(rng), gen(rng), random_value(rng)
            assert same(probe(left, s, s2, b), probe(o, s, s2, b))
            assert same(probe(right, s, s2, b), probe(o, s, s2, b))


def test_compose_kind_is_join_for_all_pairs():
    samples = sample_optics()
    for k1, k2 in itertools.product(OpticKind, repeat=2):
        assert compose(samples[k1][0], samples[k2][0]).kind is join(k1, k2)


def test_traversal_composition_repartitions():
    o = compile_text("each each")
    contents, rebuild = o.payload.extract([[1, 2], [], [3]])
    assert contents == [1, 2, 3]
    assert rebuild([7, 8, 9]) == [[7, 8], [], [9]]


def test_adapter_composition():
    inc = DynOptic(K.ADAPTER, Adapter(lambda s: s + 1, lambda b: b - 1))
    dbl = DynOptic(K.ADAPTER, Adapter(lambda s: s * 2, lambda b: b // 2))
    both = compose(inc, dbl).payload
    assert both.fwd(3) == 8
    assert both.bwd(8) == 3


def test_join_raises_on_ambiguous_bounds(monkeypatch):
    from clearoptic import lattice

    # a diamond with no unique least upper bound
    monkeypatch.setattr(lattice, "minimal_upper_bounds", lambda a, b: {K.LENS, K.PRISM})
    lattice.join.cache_clear()
    try:
        with pytest.raises(LatticeError):
            lattice.join(K.GRATE, K.GLASS)
    finally:
        monkeypatch.undo()
        lattice.join.cache_clear()
