"""Named lattice families, finite-field subspace lattices, the counterexample corpus
and JSON file I/O."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources
from pathlib import Path
from typing import Any

from .errors import (
    LatticeError,
    LatticeIOError,
    NotPrimePower,
    ParseError,
    TooLarge,
    UnknownCorpusEntry,
)
from .gf import GF, gaussian_binomial, rref_matrices
from .lattice import Lattice, build_lattice

CORPUS_NAMES = ("fig2_diamond", "fig3_i2l_gap", "fig4_lld_rank_gap", "fig6_upward_gap")


def _letters(k: int) -> list[str]:
    if k <= 26:
        return [chr(ord("a") + i) for i in range(k)]
    return [f"a{i + 1}" for i in range(k)]


def chain(k: int) -> Lattice:
    """The k-element chain ``bot < x1 < ... < top`` (``x`` when k = 3)."""
    if k < 1:
        raise ValueError("a chain needs at least one element")
    if k == 1:
        return build_lattice(["bot"], [])
    mids = ["x"] if k == 3 else [f"x{i}" for i in range(1, k - 1)]
    names = ["bot", *mids, "top"]
    return build_lattice(names, list(zip(names, names[1:])))


def boolean_lattice(n: int) -> Lattice:
    """Subsets of {1..n}; identifiers like ``"{1,3}"``, ordered by bitmask."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    if n > 10:
        raise TooLarge(f"boolean lattice of rank {n} exceeds the guard n <= 10")

    def name(mask):
        return "{" + ",".join(str(i + 1) for i in range(n) if mask >> i & 1) + "}"

    elements = [name(m) for m in range(1 << n)]
    covers = [
        (name(m), name(m | 1 << i)) for m in range(1 << n) for i in range(n) if not m >> i & 1
    ]
    return build_lattice(elements, covers)


def diamond(k: int = 3) -> Lattice:
    """``M_k``: bottom, k pairwise incomparable atoms, top."""
    if k < 3:
        raise ValueError("diamond needs k >= 3")
    if k > 64:
        raise TooLarge(f"diamond M_{k} exceeds the guard k <= 64")
    atoms = _letters(k)
    covers = [("bot", a) for a in atoms] + [(a, "top") for a in atoms]
    return build_lattice(["bot", *atoms, "top"], covers)


def pentagon() -> Lattice:
    """``N5``: ``bot < x < z < top`` with ``y`` alone on the other side."""
    return build_lattice(
        ["bot", "x", "y", "z", "top"],
        [("bot", "x"), ("x", "z"), ("z", "top"), ("bot", "y"), ("y", "top")],
    )


# ----------------------------------------------------------------------
# subspace lattices


def subspace_id(rows) -> str:
    return "span(" + ",".join("".join(str(v) for v in r) for r in rows) + ")"


def parse_subspace_id(name: str) -> tuple[tuple[int, ...], ...]:
    """Inverse of :func:`subspace_id`: the RREF basis rows."""
    if not (name.startswith("span(") and name.endswith(")")):
        raise ValueError(f"not a subspace identifier: {name!r}")
    body = name[5:-1]
    if not body:
        return ()
    return tuple(tuple(int(c) for c in row) for row in body.split(","))


def subspace_lattice(q: int, n: int) -> Lattice:
    """All subspaces of GF(q)^n ordered by inclusion.

    Identifiers are ``span(r1,r2,...)`` with the rows of the reduced row
    echelon basis written as digit strings; the zero space is ``span()``.
    Elements are listed by dimension, then in RREF enumeration order.
    """
    field = GF(q)
    if n < 0:
        raise ValueError("n must be nonnegative")
    count = sum(gaussian_binomial(n, k, q) for k in range(n + 1))
    if count > 1000 or n > 4:
        raise TooLarge(f"subspace lattice of GF({q})^{n} has {count} elements")
    vec_index: dict[tuple, int] = {}
    layers = []
    for k in range(n + 1):
        layer = []
        for m in rref_matrices(field, k, n):
            mask = 0
            for v in field.span(m, n):
                if v not in vec_index:
                    vec_index[v] = len(vec_index)
                mask |= 1 << vec_index[v]
            layer.append((subspace_id(m), mask))
        layers.append(layer)
    elements = [name for layer in layers for name, _ in layer]
    covers = []
    for k in range(n):
        for lo, lo_mask in layers[k]:
            for hi, hi_mask in layers[k + 1]:
                if lo_mask & ~hi_mask == 0:
                    covers.append((lo, hi))
    L = build_lattice(elements, covers)
    L.field = field  # used by the linear-algebra helpers below
    L.ambient_dim = n
    return L


def subspace_basis(L: Lattice, x: str) -> tuple[tuple[int, ...], ...]:
    L.index(x)
    return parse_subspace_id(x)


def orthogonal_complement_map(L: Lattice) -> dict[str, str]:
    """``X -> X^perp`` under the standard bilinear form, on a subspace lattice."""
    field: GF = L.field
    n = L.ambient_dim
    by_span = {}
    for x in L.elements:
        by_span[field.span(parse_subspace_id(x), n)] = x
    all_vecs = field.span([tuple(int(i == j) for j in range(n)) for i in range(n)], n)
    out = {}
    for x in L.elements:
        basis = parse_subspace_id(x)
        perp = frozenset(v for v in all_vecs if all(field.dot(v, b) == 0 for b in basis))
        out[x] = by_span[perp]
    return out


def linear_rank_function(L: Lattice, A) -> dict[str, int]:
    """``r_A(X) = dim span(A X)`` for a matrix ``A`` (list of rows) over the
    field of the subspace lattice ``L``."""
    field: GF = L.field
    out = {}
    for x in L.elements:
        images = [field.matvec(A, v) for v in parse_subspace_id(x)]
        out[x] = field.rank(images) if images else 0
    return out


# ----------------------------------------------------------------------
# JSON I/O


def lattice_to_json(L: Lattice) -> dict[str, Any]:
    return {"elements": list(L.elements), "covers": [list(c) for c in L.covers]}


def dumps_lattice(L: Lattice) -> str:
    return json.dumps(lattice_to_json(L), indent=2, ensure_ascii=False) + "\n"


def _parse_json_text(text: str) -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(e.lineno, e.msg) from None


def lattice_from_json(data: Any) -> Lattice:
    if not isinstance(data, dict):
        raise ParseError(None, "top-level value must be an object")
    elements = data.get("elements")
    covers = data.get("covers")
    if not isinstance(elements, list) or not all(isinstance(x, str) for x in elements):
        raise ParseError(None, '"elements" must be an array of strings')
    if not isinstance(covers, list):
        raise ParseError(None, '"covers" must be an array of [lower, upper] pairs')
    pairs = []
    for k, c in enumerate(covers):
        if not (isinstance(c, list) and len(c) == 2 and all(isinstance(z, str) for z in c)):
            raise ParseError(None, f"covers[{k}] must be a [lower, upper] pair of strings")
        pairs.append((c[0], c[1]))
    return build_lattice(elements, pairs)


def loads_lattice(text: str) -> Lattice:
    return lattice_from_json(_parse_json_text(text))


def load_lattice(path) -> Lattice:
    """Read a lattice from the JSON lattice format.  Extra keys are ignored."""
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise LatticeIOError(str(e)) from e
    return loads_lattice(text)


def save_lattice(L: Lattice, path) -> None:
    try:
        Path(path).write_text(dumps_lattice(L), encoding="utf-8")
    except OSError as e:
        raise LatticeIOError(str(e)) from e


# ----------------------------------------------------------------------
# corpus


@dataclass
class CorpusEntry:
    name: str
    lattice: Lattice
    ideal: tuple[str, ...] | None = None
    rank: dict[str, int] | None = None
    annotations: dict[str, Any] = field(default_factory=dict)
    description: str = ""


def corpus_path(name: str) -> Path:
    if name not in CORPUS_NAMES:
        raise UnknownCorpusEntry(name)
    return Path(str(resources.files("supermatroids") / "data" / f"{name}.json"))


def load_corpus_entry(path) -> CorpusEntry:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise LatticeIOError(str(e)) from e
    data = _parse_json_text(text)
    L = lattice_from_json(data)
    ideal = data.get("ideal")
    rank = data.get("rank")
    try:
        if ideal is not None:
            for x in ideal:
                L.index(x)
            ideal = tuple(ideal)
        if rank is not None:
            rank = {L.elements[L.index(x)]: int(Fraction(v)) for x, v in rank.items()}
    except LatticeError as e:
        raise ParseError(None, str(e)) from None
    return CorpusEntry(
        name=data.get("name", Path(path).stem),
        lattice=L,
        ideal=ideal,
        rank=rank,
        annotations=dict(data.get("annotations", {})),
        description=data.get("description", ""),
    )


def corpus(name: str) -> CorpusEntry:
    """One of the stored counterexample lattices with its marked ideal or rank and claims."""
    return load_corpus_entry(corpus_path(name))


def named_lattice(ref: str) -> Lattice:
    """Resolve ``boolean_N``, ``diamond_K``, ``subspace_Q_N``, ``chain_K``,
    ``pentagon`` or a corpus name (``fig2`` ... ``fig6`` accepted as short
    forms)."""
    parts = ref.split("_")
    try:
        if parts[0] == "boolean" and len(parts) == 2:
            return boolean_lattice(int(parts[1]))
        if parts[0] == "diamond" and len(parts) == 2:
            return diamond(int(parts[1]))
        if parts[0] == "subspace" and len(parts) == 3:
            return subspace_lattice(int(parts[1]), int(parts[2]))
        if parts[0] == "chain" and len(parts) == 2:
            return chain(int(parts[1]))
    except ValueError as e:
        if isinstance(e, (TooLarge, NotPrimePower)):
            raise
        raise UnknownCorpusEntry(ref) from None
    if ref == "pentagon":
        return pentagon()
    return corpus(resolve_corpus_name(ref)).lattice


def resolve_corpus_name(ref: str) -> str:
    for name in CORPUS_NAMES:
        if ref == name or ref == name.split("_")[0]:
            return name
    raise UnknownCorpusEntry(ref)
