"""Exact JSON encoding of the package's values.

Rationals that are not integers become ``{"num": "p", "den": "q"}``; integers
stay JSON integers.  Graded classes encode as

* H2: list of rationals (coordinates in the lattice basis)
* H4: ``{"sym2": [[...]], "c2": r}``
* H6: ``{"sym3": [[[...]]], "c2_h2": [...]}``
* Top: a rational

A Chern character document (the ``--ch`` argument of the CLI) is::

    {"lattice": [[0, 1], [1, 0]],   # Gram matrix of the H^2 sublattice
     "c_X": 1,                      # optional, default 1
     "ch0": 4, "ch1": [...], "ch2": {...}, "ch3": {...}, "ch4": r}

Missing ``ch1``..``ch4`` default to zero.  On input a rational may be an
integer, a string ``"p/q"`` or a ``{"num", "den"}`` object.
"""

from __future__ import annotations

import dataclasses
import json
from fractions import Fraction
from typing import Any

from .chern import ChernCharacter
from .cohomology import FujikiModel, H2Class, H4Class, H6Class, TopClass
from .lattice import GramLattice, LatVec


def rational(x: Fraction | int) -> Any:
    x = Fraction(x)
    if x.denominator == 1:
        return x.numerator
    return {"num": str(x.numerator), "den": str(x.denominator)}


def encode(obj: Any) -> Any:
    """Turn package values into JSON-ready data without losing exactness."""
    if isinstance(obj, bool) or obj is None or isinstance(obj, str):
        return obj
    if isinstance(obj, (int, Fraction)):
        return rational(obj)
    if isinstance(obj, float):
        raise TypeError("floats are never emitted")
    if isinstance(obj, H2Class):
        return [rational(c) for c in obj.coords]
    if isinstance(obj, H4Class):
        return {"sym2": encode(obj.sym2), "c2": rational(obj.c2)}
    if isinstance(obj, H6Class):
        return {"sym3": encode(obj.sym3), "c2_h2": encode(obj.c2_h2)}
    if isinstance(obj, TopClass):
        return rational(obj.value)
    if isinstance(obj, LatVec):
        return list(obj.coords)
    if isinstance(obj, ChernCharacter):
        return {f"ch{k}": encode(p) for k, p in enumerate(obj.pieces())}
    if isinstance(obj, GramLattice):
        return [list(row) for row in obj.gram]
    if isinstance(obj, FujikiModel):
        return {"lattice": encode(obj.lattice), "c_X": rational(obj.c_X)}
    if isinstance(obj, dict):
        return {str(k): encode(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [encode(v) for v in obj]
    if dataclasses.is_dataclass(obj):
        return {f.name: encode(getattr(obj, f.name)) for f in dataclasses.fields(obj)}
    raise TypeError(f"cannot encode {type(obj).__name__}")


def dumps(obj: Any) -> str:
    return json.dumps(encode(obj), indent=2, ensure_ascii=False)


def parse_rational(x: Any) -> Fraction:
    if isinstance(x, bool):
        raise ValueError("booleans are not rationals")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    if isinstance(x, dict) and set(x) == {"num", "den"}:
        return Fraction(int(x["num"]), int(x["den"]))
    raise ValueError(f"not an exact rational: {x!r}")


def _tensor(x: Any, depth: int) -> Any:
    if depth == 0:
        return parse_rational(x)
    if not isinstance(x, list):
        raise ValueError(f"expected a nested list of depth {depth}")
    return [_tensor(v, depth - 1) for v in x]


def decode_character(doc: dict) -> tuple[FujikiModel, ChernCharacter]:
    """Parse a Chern character document into its model and character."""
    if not isinstance(doc, dict) or "lattice" not in doc or "ch0" not in doc:
        raise ValueError("a Chern character document needs 'lattice' and 'ch0'")
    unknown = set(doc) - {"lattice", "c_X", "ch0", "ch1", "ch2", "ch3", "ch4"}
    if unknown:
        raise ValueError(f"unknown keys: {', '.join(sorted(unknown))}")
    gram = doc["lattice"]
    if not isinstance(gram, list) or not all(isinstance(r, list) and all(type(v) is int for v in r) for r in gram):
        raise ValueError("'lattice' must be an integer matrix")
    model = FujikiModel.from_gram(gram, c_X=parse_rational(doc.get("c_X", 1)))
    n = model.rank
    ch1 = H2Class(tuple(_tensor(doc["ch1"], 1))) if "ch1" in doc else model.zero(2)
    if "ch2" in doc:
        c = doc["ch2"]
        ch2 = H4Class(_tensor(c.get("sym2", [[0] * n] * n), 2), parse_rational(c.get("c2", 0)))
    else:
        ch2 = model.zero(4)
    if "ch3" in doc:
        c = doc["ch3"]
        zero3 = [[[0] * n for _ in range(n)] for _ in range(n)]
        ch3 = H6Class(_tensor(c.get("sym3", zero3), 3), H2Class(tuple(_tensor(c.get("c2_h2", [0] * n), 1))))
    else:
        ch3 = model.zero(6)
    ch4 = TopClass(parse_rational(doc.get("ch4", 0)))
    return model, ChernCharacter(parse_rational(doc["ch0"]), ch1, ch2, ch3, ch4)


def character_document(model: FujikiModel, ch: ChernCharacter) -> dict:
    """Inverse of :func:`decode_character`."""
    return {"lattice": encode(model.lattice), "c_X": rational(model.c_X), **encode(ch)}


def to_text(x: Any) -> str:
    """Compact one-line rendering for table output."""
    if isinstance(x, dict) and set(x) == {"num", "den"}:
        return f"{x['num']}/{x['den']}"
    if isinstance(x, dict):
        return "{" + ", ".join(f"{k}: {to_text(v)}" for k, v in x.items()) + "}"
    if isinstance(x, list):
        return "(" + ", ".join(to_text(v) for v in x) + ")"
    if isinstance(x, bool):
        return "yes" if x else "no"
    if x is None:
        return "-"
    return str(x)
