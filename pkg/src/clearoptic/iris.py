"""Iris flowers, a 1-nearest-neighbour list lens and an aggregating kaleidoscope."""

from __future__ import annotations

import csv
import enum
import io
import math
from dataclasses import dataclass
from decimal import ROUND_DOWN, ROUND_HALF_EVEN, Decimal
from importlib import resources
from typing import Callable, Optional, Sequence

from .core import Kaleidoscope, ListLens

FIELDS = ("sepal_length", "sepal_width", "petal_length", "petal_width")


class Species(enum.Enum):
    SETOSA = "setosa"
    VERSICOLOR = "versicolor"
    VIRGINICA = "virginica"

    @property
    def label(self) -> str:
        return f"Iris {self.value}"


@dataclass(frozen=True)
class Measurements:
    sepal_length: float
    sepal_width: float
    petal_length: float
    petal_width: float

    def __post_init__(self):
        for name in FIELDS:
            v = getattr(self, name)
            if not math.isfinite(v):
                raise ValueError(f"{name} must be finite, got {v}")

    def as_tuple(self) -> tuple:
        return tuple(getattr(self, name) for name in FIELDS)


@dataclass(frozen=True)
class Flower:
    measurements: Measurements
    species: Species


class DatasetError(Exception):
    pass


class EmptyContext(ValueError):
    pass


def parse_iris_csv(text: str) -> list[Flower]:
    reader = csv.reader(io.StringIO(text))
    try:
        header = next(reader)
    except StopIteration:
        raise DatasetError("empty dataset") from None
    if tuple(header) != FIELDS + ("species",):
        raise DatasetError(f"unexpected header {header}")
    flowers = []
    for lineno, row in enumerate(reader, start=2):
        if not row:
            continue
        try:
            *nums, species = row
            m = Measurements(*(float(v) for v in nums))
            flowers.append(Flower(m, Species(species)))
        except (TypeError, ValueError) as exc:
            raise DatasetError(f"line {lineno}: {exc}") from None
    return flowers


def load_iris(path: Optional[str] = None) -> list[Flower]:
    """Load the bundled dataset, or a CSV with the same header from ``path``."""
    try:
        if path is None:
            text = resources.files("clearoptic").joinpath("data/iris.csv").read_text("utf-8")
        else:
            with open(path, encoding="utf-8") as f:
                text = f.read()
    except OSError as exc:
        raise DatasetError(str(exc)) from exc
    return parse_iris_csv(text)


def knn_classify(query: Measurements, context: Sequence[Flower]) -> Species:
    """Species of the closest flower; ties go to the earliest one."""
    if not context:
        raise EmptyContext("cannot classify against an empty dataset")
    q = query.as_tuple()
    best = min(
        range(len(context)),
        key=lambda i: (math.dist(q, context[i].measurements.as_tuple()), i),
    )
    return context[best].species


measure_nearest: ListLens = ListLens(
    view=lambda flower: flower.measurements,
    classify=lambda flowers, m: Flower(m, knn_classify(m, flowers)),
)


def _aggregate(fold: Callable[[Sequence[float]], float]):
    def run(ms: Sequence[Measurements]) -> Measurements:
        return Measurements(*(fold([getattr(m, name) for m in ms]) for name in FIELDS))

    return run


# Componentwise: a fold on numbers induces one on measurements.
aggregate: Kaleidoscope = Kaleidoscope(agg=_aggregate)


def mean(xs: Sequence[float]) -> float:
    if not xs:
        raise ValueError("mean of an empty sequence")
    return math.fsum(xs) / len(xs)


def maximum(xs: Sequence[float]) -> float:
    return max(xs)


FOLDS = {"mean": mean, "max": maximum}


def format_number(x: float) -> str:
    """Three decimals, truncated, trailing zeros dropped: 5.8433 -> '5.843', 7.9 -> '7.9'.

    The value is first rounded to 9 places so float noise such as
    3.0540000000000003 or 3.0539999999999998 cannot shift the truncated digit.
    """
    d = Decimal(repr(x)).quantize(Decimal("1e-9"), rounding=ROUND_HALF_EVEN)
    d = d.quantize(Decimal("0.001"), rounding=ROUND_DOWN)
    text = format(d, "f").rstrip("0")
    if text.endswith("."):
        text += "0"
    return text


def format_measurements(m: Measurements, indent: str = "    ") -> list[str]:
    labels = ("Sepal length:", "Sepal width:", "Petal length:", "Petal width:")
    return [f"{indent}{label:<14}{format_number(v)}" for label, v in zip(labels, m.as_tuple())]


def format_flower(flower: Flower, indent: str = "    ") -> str:
    lines = ["Flower:"] + format_measurements(flower.measurements, indent)
    lines.append(f"{indent}{'Species:':<14}{flower.species.label}")
    return "\n".join(lines)
