"""JSON-like documents as plain Python values.

A document is ``None``, ``bool``, ``int``/``float``, ``str``, ``list`` or
``dict`` with string keys, i.e. exactly what :func:`json.loads` produces.
Optics never mutate a document; updates return fresh containers.
"""

from __future__ import annotations

import json
import math


def kind_of(v) -> str:
    if v is None:
        return "null"
    if isinstance(v, bool):
        return "bool"
    if isinstance(v, (int, float)):
        return "number"
    if isinstance(v, str):
        return "text"
    if isinstance(v, list):
        return "array"
    if isinstance(v, dict):
        return "object"
    raise TypeError(f"not a document value: {v!r}")


def is_number(v) -> bool:
    return isinstance(v, (int, float)) and not isinstance(v, bool)


def values_equal(x, y) -> bool:
    """Structural equality that keeps booleans apart from numbers.

    Python's ``==`` says ``True == 1``; documents don't.  Object key order
    is part of the comparison since the document model preserves it.
    """
    kx, ky = kind_of(x), kind_of(y)
    if kx != ky:
        return False
    if kx == "array":
        return len(x) == len(y) and all(values_equal(a, b) for a, b in zip(x, y))
    if kx == "object":
        return list(x) == list(y) and all(values_equal(x[k], y[k]) for k in x)
    if kx == "number" and math.isnan(x) and math.isnan(y):
        return True
    return x == y


def dumps(v) -> str:
    return json.dumps(v, ensure_ascii=False)


def loads(text: str):
    return json.loads(text)
