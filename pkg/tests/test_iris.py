import random

import pytest

from clearoptic.iris import (
    DatasetError,
    EmptyContext,
    Flower,
    Measurements,
    Species,
    aggregate,
    format_flower,
    format_number,
    knn_classify,
    load_iris,
    mean,
    measure_nearest,
    parse_iris_csv,
)

FLOWERS = load_iris()


def brute_force(query, context):
    """Full scan with squared distances; the first strictly closer row wins."""
    best, best_d = None, None
    for f in context:
        d = sum((x - y) ** 2 for x, y in zip(query.as_tuple(), f.measurements.as_tuple()))
        if best_d is None or d < best_d:
            best, best_d = f, d
    return best.species


def test_dataset_shape():
    assert len(FLOWERS) == 150
    counts = {s: sum(f.species is s for f in FLOWERS) for s in Species}
    assert set(counts.values()) == {50}
    assert FLOWERS[0].measurements.as_tuple() == (5.1, 3.5, 1.4, 0.2)


def test_first_row_view():
    assert measure_nearest.view(FLOWERS[1]) == Measurements(4.9, 3.0, 1.4, 0.2)


def test_classify_query_from_the_case_study():
    q = Measurements(4.8, 3.1, 1.5, 0.1)
    assert knn_classify(q, FLOWERS) is Species.SETOSA
    assert measure_nearest.classify(FLOWERS, q) == Flower(q, Species.SETOSA)


def test_knn_matches_brute_force_on_random_queries():
    rng = random.Random(17)
    shuffled = FLOWERS[:]
    rng.shuffle(shuffled)
    for _ in range(100):
        q = Measurements(
            rng.uniform(4.0, 8.0), rng.uniform(2.0, 4.5), rng.uniform(1.0, 7.0), rng.uniform(0.1, 2.5)
        )
        expected = brute_force(q, FLOWERS)
        assert knn_classify(q, FLOWERS) is expected
        assert knn_classify(q, shuffled) is brute_force(q, shuffled)


def test_query_equal_to_a_row_returns_its_species():
    for f in FLOWERS[::7]:
        assert knn_classify(f.measurements, FLOWERS) is f.species


def test_ties_go_to_the_lowest_index():
    m = Measurements(1.0, 1.0, 1.0, 1.0)
    ctx = [
        Flower(Measurements(2.0, 1.0, 1.0, 1.0), Species.VIRGINICA),
        Flower(Measurements(0.0, 1.0, 1.0, 1.0), Species.SETOSA),
    ]
    assert knn_classify(m, ctx) is Species.VIRGINICA
    assert knn_classify(m, ctx[::-1]) is Species.SETOSA


def test_empty_context():
    with pytest.raises(EmptyContext):
        knn_classify(Measurements(1, 1, 1, 1), [])


def test_aggregate_is_componentwise():
    ms = [Measurements(1, 2, 3, 4), Measurements(3, 2, 1, 0)]
    assert aggregate.agg(mean)(ms) == Measurements(2, 2, 2, 2)
    assert aggregate.agg(max)(ms) == Measurements(3, 2, 3, 4)


def test_measurements_must_be_finite():
    with pytest.raises(ValueError):
        Measurements(float("nan"), 1, 1, 1)


@pytest.mark.parametrize(
    "x, text",
    [
        (5.843333333333335, "5.843"),
        (3.0540000000000003, "3.054"),
        (3.0539999999999998, "3.054"),
        (3.758666666666666, "3.758"),
        (1.1986666666666672, "1.198"),
        (7.9, "7.9"),
        (2.0, "2.0"),
        (0.1, "0.1"),
        (-1.2345, "-1.234"),
    ],
)
def test_format_number(x, text):
    assert format_number(x) == text


def test_format_flower():
    f = Flower(Measurements(4.8, 3.1, 1.5, 0.1), Species.SETOSA)
    assert format_flower(f).splitlines() == [
        "Flower:",
        "    Sepal length: 4.8",
        "    Sepal width:  3.1",
        "    Petal length: 1.5",
        "    Petal width:  0.1",
        "    Species:      Iris setosa",
    ]


@pytest.mark.parametrize(
    "text",
    [
        "",
        "a,b,c\n",
        "sepal_length,sepal_width,petal_length,petal_width,species\n1,2,3,4,rose\n",
        "sepal_length,sepal_width,petal_length,petal_width,species\n1,2,x,4,setosa\n",
        "sepal_length,sepal_width,petal_length,petal_width,species\n1,2,3,setosa\n",
    ],
)
def test_malformed_csv(text):
    with pytest.raises(DatasetError):
        parse_iris_csv(text)


def test_missing_file(tmp_path):
    with pytest.raises(DatasetError):
        load_iris(str(tmp_path / "absent.csv"))
