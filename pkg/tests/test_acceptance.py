"""Acceptance criteria 1-9; criterion 10 (total runtime) is timed in conftest.py.

Each test prints one PASS/FAIL line in the "acceptance criteria" section of
the pytest summary.
"""

import io
import itertools
import pathlib
import random
import re
import time

from clearoptic import finite as fl
from clearoptic import laws
from clearoptic.cli import main
from clearoptic.iris import Measurements, Species, knn_classify, load_iris
from clearoptic.lattice import OpticKind, join, minimal_upper_bounds

K = OpticKind
GOLDEN = pathlib.Path(__file__).parent / "fixtures" / "golden"


def cli(*argv):
    out, err = io.StringIO(), io.StringIO()
    t0 = time.perf_counter()
    code = main(list(argv), out, err)
    return code, out.getvalue(), time.perf_counter() - t0


def printed_flower(text):
    values = [float(v) for v in re.findall(r"^\s+(?:Sepal|Petal) \w+:\s+(\S+)$", text, re.M)]
    species = re.search(r"^\s+Species:\s+(.+)$", text, re.M).group(1)
    return values, species


def assert_suites(results):
    bad = [(r.name, r.failures) for r in results if not r.passed]
    assert not bad, bad
    return sum(r.cases for r in results)


def test_criterion_1_iris_mean(criterion):
    with criterion(1, "iris mean fold") as c:
        code, out, dt = cli("demo", "iris", "--agg", "mean")
        values, species = printed_flower(out)
        assert code == 0
        assert len(values) == 4
        for got, want in zip(values, (5.843, 3.054, 3.758, 1.198)):
            assert abs(got - want) <= 0.001 + 1e-12, (got, want)
        assert species == "Iris versicolor"
        assert dt < 1.0, dt
        c.detail = f"{values} {species}"


def test_criterion_2_iris_max(criterion):
    with criterion(2, "iris max fold") as c:
        code, out, dt = cli("demo", "iris", "--agg", "max")
        values, species = printed_flower(out)
        assert code == 0
        assert values == [7.9, 4.4, 6.9, 2.5]
        assert species == "Iris virginica"
        assert dt < 1.0, dt
        c.detail = f"{values} {species}"


def _full_scan(q, flowers):
    best = 0
    for i, f in enumerate(flowers):
        d = sum((x - y) ** 2 for x, y in zip(q.as_tuple(), f.measurements.as_tuple()))
        b = sum((x - y) ** 2 for x, y in zip(q.as_tuple(), flowers[best].measurements.as_tuple()))
        if d < b:
            best = i
    return flowers[best].species


def test_criterion_3_nearest_neighbour(criterion):
    with criterion(3, "1-NN classify") as c:
        flowers = load_iris()
        assert knn_classify(Measurements(4.8, 3.1, 1.5, 0.1), flowers) is Species.SETOSA
        rng = random.Random(3)
        for _ in range(100):
            q = Measurements(*(rng.uniform(lo, hi) for lo, hi in ((4, 8), (2, 4.5), (1, 7), (0.1, 2.5))))
            assert knn_classify(q, flowers) is _full_scan(q, flowers)
        c.detail = "query -> setosa, 100 random queries agree with full scan"


def test_criterion_4_join_table(criterion):
    with criterion(4, "join table") as c:
        t0 = time.perf_counter()
        pairs = list(itertools.product(OpticKind, repeat=2))
        for k1, k2 in pairs:
            assert len(minimal_upper_bounds(k1, k2)) == 1, (k1, k2)
            join(k1, k2)
        assert join(K.LENS, K.PRISM) is K.AFFINE
        assert join(K.LENS, K.GRATE) is K.GLASS
        assert join(K.LISTLENS, K.KALEIDOSCOPE) is K.KALEIDOSCOPE
        assert join(K.LENS, K.KALEIDOSCOPE) is K.SETTER
        dt = time.perf_counter() - t0
        assert dt < 1.0, dt
        c.detail = f"{len(pairs)} pairs"


def test_criterion_5_finite_lab(criterion):
    with criterion(5, "finite-lab bijection and dinaturality") as c:
        t0 = time.perf_counter()
        twos = fl.Sizes(2, 2, 2, 2)
        for kind in (K.LENS, K.PRISM):
            assert fl.count_concrete(kind, twos) == 64
        results = [laws.suite_section(K.LENS, twos), laws.suite_section(K.PRISM, twos)]
        for kind in (K.LENS, K.PRISM, K.AFFINE):
            results.append(laws.suite_dinaturality_exhaustive(kind, 2))
            results.append(laws.suite_dinaturality_random(kind, seed=0, n=10_000, max_size=3))
        # 64 items plus one count check for each of the two section suites
        assert [r.cases for r in results[:2]] == [65, 65]
        cases = assert_suites(results)
        dt = time.perf_counter() - t0
        assert dt < 30.0, dt
        c.detail = f"{cases} cases"


def test_criterion_6_container_laws(criterion):
    with criterion(6, "container laws") as c:
        t0 = time.perf_counter()
        results = [
            laws.suite_counitality(4),
            laws.suite_shape_idempotence(4),
            laws.suite_unitarity(3),
            laws.suite_linearity(3),
        ]
        cases = assert_suites(results)
        dt = time.perf_counter() - t0
        assert dt < 10.0, dt
        c.detail = f"{cases} cases"


def test_criterion_7_optic_laws(criterion):
    with criterion(7, "lens/prism/affine laws on DSL optics") as c:
        results = [
            laws.suite_lens_laws(seed=0, n=1000),
            laws.suite_prism_laws(seed=0, n=1000),
            laws.suite_affine_laws(seed=0, n=1000),
        ]
        cases = assert_suites(results)
        c.detail = f"1000 documents per kind, {cases} checks"


def test_criterion_8_lattice_coherence(criterion):
    with criterion(8, "upcast path independence and associativity") as c:
        results = [
            laws.suite_path_independence(seed=0, docs=500),
            laws.suite_associativity(seed=0, triples=30, docs=500),
        ]
        cases = assert_suites(results)
        c.detail = f"500 documents per case, {cases} checks"


def test_criterion_9_golden_demos(criterion):
    with criterion(9, "golden demos") as c:
        for name, needles in (
            ("address", ["45 Banbury Rd"]),
            ("mail", ["turing@manchester.ac.uk", "emmynoether@fau.eu", "gauss@goettingen.de", "turing@MANCHESTER.AC.UK"]),
        ):
            code, out, _ = cli("demo", name)
            assert code == 0
            assert out.encode("utf-8") == (GOLDEN / f"{name}.txt").read_bytes(), name
            for needle in needles:
                assert needle in out, needle
        c.detail = "address, mail byte-identical"
