"""Value types shared by the checkers: lattice functions and axiom reports."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable, Mapping

from .errors import ParseError, UnknownElement
from .lattice import Lattice


def to_fraction(v) -> Fraction:
    if isinstance(v, Fraction):
        return v
    if isinstance(v, bool):
        raise TypeError("booleans are not function values")
    if isinstance(v, (int, str)):
        return Fraction(v)
    if isinstance(v, float):
        # floats only ever arrive from user code; keep their exact binary value
        return Fraction(v)
    raise TypeError(f"cannot use {v!r} as an exact value")


def fmt_fraction(v: Fraction) -> str:
    return str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"


class LatticeFn:
    """An exact rational-valued function on the elements of a lattice.

    ``values`` maps every element to a number; ints, ``Fraction`` and
    strings like ``"3/2"`` are accepted.  ``v`` holds the values by position.
    """

    def __init__(self, lattice: Lattice, values: Mapping[str, Any]):
        self.lattice = lattice
        missing = [x for x in lattice.elements if x not in values]
        if missing:
            raise UnknownElement(f"function is not total; missing {missing[:5]}")
        for x in values:
            lattice.index(x)
        self.v: list[Fraction] = [to_fraction(values[x]) for x in lattice.elements]

    @classmethod
    def from_list(cls, lattice: Lattice, vals) -> "LatticeFn":
        f = cls.__new__(cls)
        f.lattice = lattice
        f.v = [to_fraction(x) for x in vals]
        if len(f.v) != lattice.n:
            raise ValueError("need one value per element")
        return f

    @classmethod
    def from_callable(cls, lattice: Lattice, fn: Callable[[str], Any]) -> "LatticeFn":
        return cls.from_list(lattice, [fn(x) for x in lattice.elements])

    @classmethod
    def height(cls, lattice: Lattice) -> "LatticeFn":
        return cls.from_list(lattice, lattice.hgt)

    def __call__(self, x) -> Fraction:
        return self.v[self.lattice.index(x)]

    def __getitem__(self, x) -> Fraction:
        return self(x)

    @property
    def values(self) -> dict[str, Fraction]:
        return dict(zip(self.lattice.elements, self.v))

    def __eq__(self, other) -> bool:
        if not isinstance(other, LatticeFn):
            return NotImplemented
        return self.lattice == other.lattice and self.v == other.v

    def __repr__(self) -> str:
        body = ", ".join(f"{x}: {fmt_fraction(v)}" for x, v in self.values.items())
        return f"{type(self).__name__}({{{body}}})"

    def on(self, lattice: Lattice) -> "LatticeFn":
        """The same values viewed on another lattice with the same identifiers
        (typically the dual)."""
        f = type(self).__new__(type(self))
        f.lattice = lattice
        f.v = [self.v[self.lattice.index(x)] for x in lattice.elements]
        return f

    def to_json(self) -> dict:
        return {"values": {x: fmt_fraction(v) for x, v in self.values.items()}}

    @classmethod
    def from_json(cls, lattice: Lattice, data) -> "LatticeFn":
        if isinstance(data, dict) and "values" in data:
            data = data["values"]
        if not isinstance(data, dict):
            raise ParseError(None, 'function must be {"values": {element: value}}')
        try:
            return cls(lattice, data)
        except (ValueError, ZeroDivisionError, TypeError) as e:
            raise ParseError(None, str(e)) from None


class RankFn(LatticeFn):
    """A lattice function meant as a rank function; values are integers."""

    def __init__(self, lattice: Lattice, values: Mapping[str, Any]):
        super().__init__(lattice, values)

    def to_json(self) -> dict:
        return {"values": {x: int(v) if v.denominator == 1 else fmt_fraction(v)
                           for x, v in self.values.items()}}


# ----------------------------------------------------------------------
# reports


@dataclass
class Clause:
    id: str
    verdict: bool
    witness: dict[str, Any] = field(default_factory=dict)

    def to_json(self) -> dict:
        return {"id": self.id, "verdict": self.verdict, "witness": _jsonable(self.witness)}


@dataclass
class AxiomReport:
    """Verdict of an axiom check with one entry per clause.

    A failing clause carries a counterexample; passing clauses may carry a
    witness of why they hold (for instance the chosen element of an
    existential) or nothing.
    """

    axiom: str
    clauses: list[Clause] = field(default_factory=list)

    @property
    def verdict(self) -> bool:
        return all(c.verdict for c in self.clauses)

    def __bool__(self) -> bool:
        return self.verdict

    def clause(self, cid: str) -> Clause:
        for c in self.clauses:
            if c.id == cid:
                return c
        raise KeyError(cid)

    def failing(self) -> Clause | None:
        return next((c for c in self.clauses if not c.verdict), None)

    def add(self, cid: str, verdict: bool, **witness) -> "AxiomReport":
        self.clauses.append(Clause(cid, bool(verdict), witness))
        return self

    def extend(self, other: "AxiomReport") -> "AxiomReport":
        self.clauses.extend(other.clauses)
        return self

    def to_json(self) -> dict:
        return {
            "axiom": self.axiom,
            "verdict": self.verdict,
            "clauses": [c.to_json() for c in self.clauses],
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), ensure_ascii=False, sort_keys=False)


def _jsonable(obj):
    if isinstance(obj, Fraction):
        return fmt_fraction(obj)
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, (frozenset, set)):
        return sorted(_jsonable(v) for v in obj)
    return obj
