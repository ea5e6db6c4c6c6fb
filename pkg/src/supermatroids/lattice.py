"""Finite lattices given by a cover relation.

A :class:`Lattice` is immutable.  Everything quantifier-heavy code needs is
precomputed at construction: the order as bitsets, the join and meet
tables, heights (longest chain from the bottom), join-irreducibles and the
admissible / co-extreme sets of every element.

Elements are opaque strings.  Their position in the input list is the
canonical order, and every tie-break in the package follows it.

Two views of the same data are exposed.  The element-level methods
(``join``, ``meet``, ``admissible`` ...) take and return identifiers.  The
index-level attributes (``jn``, ``mt``, ``hgt``, ``up``, ``down``,
``adm_idx`` ...) are plain lists over positions and exist for the checkers,
which run millions of table lookups.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from typing import Iterable, Sequence

import numpy as np

from .errors import (
    CycleDetected,
    DuplicateElement,
    NoUniqueBottom,
    NoUniqueTop,
    NotALattice,
    NotComparable,
    NotModular,
    UnknownElement,
)


def bits(mask: int):
    """Yield the positions of the set bits of ``mask`` in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


class Lattice:
    """A finite lattice.  Build one with :func:`build_lattice`."""

    def __init__(self, elements, covers, *, _dual=None):
        self.elements: tuple[str, ...] = tuple(elements)
        self._index = {x: i for i, x in enumerate(self.elements)}
        n = self.n = len(self.elements)

        succ = [[] for _ in range(n)]
        pred = [[] for _ in range(n)]
        pairs = []
        for lo, hi in covers:
            i, j = self._index[lo], self._index[hi]
            if i == j:
                raise CycleDetected(f"self-loop on {lo!r}")
            succ[i].append(j)
            pred[j].append(i)
            pairs.append((i, j))

        order = _toposort(n, succ, pred)
        if order is None:
            raise CycleDetected("cover relation contains a cycle")

        down = [1 << i for i in range(n)]
        for v in order:
            for u in pred[v]:
                down[v] |= down[u]
        up = [1 << i for i in range(n)]
        for v in reversed(order):
            for w in succ[v]:
                up[v] |= up[w]
        self.down: list[int] = down
        self.up: list[int] = up

        # keep only genuine covers; redundant input pairs are implied by the order
        seen = set()
        reduced = []
        for i, j in pairs:
            if (i, j) in seen:
                continue
            seen.add((i, j))
            if (up[i] & ~(1 << i)) & (down[j] & ~(1 << j)) == 0:
                reduced.append((i, j))
        self.cover_pairs: tuple[tuple[int, int], ...] = tuple(reduced)
        self.cover_set = frozenset(reduced)
        self.covers: tuple[tuple[str, str], ...] = tuple(
            (self.elements[i], self.elements[j]) for i, j in reduced
        )
        lower = [[] for _ in range(n)]
        upper = [[] for _ in range(n)]
        for i, j in reduced:
            upper[i].append(j)
            lower[j].append(i)
        self.lower_covers = [tuple(sorted(c)) for c in lower]
        self.upper_covers = [tuple(sorted(c)) for c in upper]

        mins = [i for i in range(n) if down[i] == 1 << i]
        maxs = [i for i in range(n) if up[i] == 1 << i]
        if len(mins) != 1:
            raise NoUniqueBottom([self.elements[i] for i in mins])
        if len(maxs) != 1:
            raise NoUniqueTop([self.elements[i] for i in maxs])
        self.bot: int = mins[0]
        self.tp: int = maxs[0]

        if _dual is not None:
            # tables of the order-reversal are those of the original, swapped
            self.jn = _dual.mt
            self.mt = _dual.jn
        else:
            self.jn = _bound_table(self, up, "join")
            self.mt = _bound_table(self, down, "meet")

        hgt = [0] * n
        for v in order:
            for w in succ[v]:
                if hgt[v] + 1 > hgt[w]:
                    hgt[w] = hgt[v] + 1
        self.hgt: list[int] = hgt
        self._dual_ref = _dual

    # ------------------------------------------------------------------
    # identity

    def __len__(self) -> int:
        return self.n

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, x) -> bool:
        return x in self._index

    def __eq__(self, other) -> bool:
        if not isinstance(other, Lattice):
            return NotImplemented
        return self.elements == other.elements and self.cover_set == other.cover_set

    def __hash__(self) -> int:
        return hash((self.elements, self.cover_set))

    def __repr__(self) -> str:
        return f"Lattice(n={self.n}, bottom={self.bottom!r}, top={self.top!r})"

    def index(self, x) -> int:
        try:
            return self._index[x]
        except (KeyError, TypeError):
            raise UnknownElement(f"unknown element {x!r}") from None

    @property
    def bottom(self) -> str:
        return self.elements[self.bot]

    @property
    def top(self) -> str:
        return self.elements[self.tp]

    # ------------------------------------------------------------------
    # numpy views

    @cached_property
    def leq_matrix(self) -> np.ndarray:
        m = np.zeros((self.n, self.n), dtype=bool)
        for i in range(self.n):
            for j in bits(self.up[i]):
                m[i, j] = True
        m.setflags(write=False)
        return m

    @cached_property
    def cover_matrix(self) -> np.ndarray:
        m = np.zeros((self.n, self.n), dtype=bool)
        for i, j in self.cover_pairs:
            m[i, j] = True
        m.setflags(write=False)
        return m

    @cached_property
    def join_table(self) -> np.ndarray:
        t = np.array(self.jn, dtype=np.intp).reshape(self.n, self.n)
        t.setflags(write=False)
        return t

    @cached_property
    def meet_table(self) -> np.ndarray:
        t = np.array(self.mt, dtype=np.intp).reshape(self.n, self.n)
        t.setflags(write=False)
        return t

    @cached_property
    def height_vector(self) -> np.ndarray:
        h = np.array(self.hgt, dtype=np.int64)
        h.setflags(write=False)
        return h

    # ------------------------------------------------------------------
    # index-level helpers

    def le(self, i: int, j: int) -> bool:
        return (self.up[i] >> j) & 1 == 1

    def is_cov(self, i: int, j: int) -> bool:
        return (i, j) in self.cover_set

    @cached_property
    def ji(self) -> tuple[int, ...]:
        """Join-irreducible positions: exactly one lower cover."""
        return tuple(i for i in range(self.n) if len(self.lower_covers[i]) == 1)

    @cached_property
    def ji_mask(self) -> int:
        m = 0
        for i in self.ji:
            m |= 1 << i
        return m

    @cached_property
    def adm_idx(self) -> list[tuple[int, ...]]:
        cov = self.cover_set
        mt = self.mt
        return [
            tuple(a for a in self.ji if (mt[x][a], a) in cov) for x in range(self.n)
        ]

    @cached_property
    def coex_idx(self) -> list[tuple[int, ...]]:
        cov = self.cover_set
        jn = self.jn
        return [
            tuple(p for p in self.ji if (x, jn[x][p]) in cov) for x in range(self.n)
        ]

    @cached_property
    def strict_up(self) -> list[int]:
        return [self.up[i] & ~(1 << i) for i in range(self.n)]

    @cached_property
    def strict_down(self) -> list[int]:
        return [self.down[i] & ~(1 << i) for i in range(self.n)]

    @cached_property
    def by_height(self) -> dict[int, tuple[int, ...]]:
        out: dict[int, list[int]] = {}
        for i, h in enumerate(self.hgt):
            out.setdefault(h, []).append(i)
        return {h: tuple(v) for h, v in sorted(out.items())}

    def names(self, idxs: Iterable[int]) -> tuple[str, ...]:
        return tuple(self.elements[i] for i in idxs)

    def mask_of(self, xs: Iterable) -> int:
        m = 0
        for x in xs:
            m |= 1 << self.index(x)
        return m

    def members(self, mask: int) -> tuple[str, ...]:
        return tuple(self.elements[i] for i in bits(mask))

    # ------------------------------------------------------------------
    # element-level queries

    def leq(self, x, y) -> bool:
        return self.le(self.index(x), self.index(y))

    def lt(self, x, y) -> bool:
        return x != y and self.leq(x, y)

    def is_cover(self, x, y) -> bool:
        """True when ``x`` is covered by ``y``."""
        return (self.index(x), self.index(y)) in self.cover_set

    def join(self, x, y) -> str:
        return self.elements[self.jn[self.index(x)][self.index(y)]]

    def meet(self, x, y) -> str:
        return self.elements[self.mt[self.index(x)][self.index(y)]]

    def height(self, x) -> int:
        return self.hgt[self.index(x)]

    def join_irreducibles(self) -> tuple[str, ...]:
        return self.names(self.ji)

    def admissible(self, x) -> tuple[str, ...]:
        """Join-irreducibles ``a`` with ``x ∧ a ≺ a``, in canonical order."""
        return self.names(self.adm_idx[self.index(x)])

    def coextreme(self, x) -> tuple[str, ...]:
        """Join-irreducibles ``p`` with ``x ≺ x ∨ p``, in canonical order."""
        return self.names(self.coex_idx[self.index(x)])

    def congruent_mod(self, x1, x2, y) -> bool:
        j = self.index(y)
        return self.jn[self.index(x1)][j] == self.jn[self.index(x2)][j]

    def lower_covers_of(self, x) -> tuple[str, ...]:
        return self.names(self.lower_covers[self.index(x)])

    def upper_covers_of(self, x) -> tuple[str, ...]:
        return self.names(self.upper_covers[self.index(x)])

    # ------------------------------------------------------------------
    # derived lattices

    @cached_property
    def dual(self) -> "Lattice":
        d = Lattice(self.elements, [(y, x) for x, y in self.covers], _dual=self)
        d.__dict__["dual"] = self
        return d


def _toposort(n, succ, pred):
    indeg = [len(p) for p in pred]
    stack = [i for i in range(n) if indeg[i] == 0]
    stack.reverse()
    order = []
    while stack:
        v = stack.pop()
        order.append(v)
        for w in reversed(succ[v]):
            indeg[w] -= 1
            if indeg[w] == 0:
                stack.append(w)
    return order if len(order) == n else None


def _bound_table(L: Lattice, cone: list[int], kind: str) -> list[list[int]]:
    """Least upper bounds (``cone = up``) or greatest lower bounds (``cone = down``)."""
    n = L.n
    table = [[0] * n for _ in range(n)]
    for i in range(n):
        table[i][i] = i
        for j in range(i + 1, n):
            common = cone[i] & cone[j]
            best = -1
            for c in bits(common):
                if common & ~cone[c] == 0:
                    best = c
                    break
            if best < 0:
                raise NotALattice((L.elements[i], L.elements[j]), f"no unique {kind}")
            table[i][j] = table[j][i] = best
    return table


def build_lattice(elements: Sequence, covers: Iterable) -> Lattice:
    """Validate ``elements`` and ``covers`` and precompute every table.

    ``covers`` holds ``(lower, upper)`` pairs.  Pairs implied by transitivity
    are accepted and dropped.
    """
    elements = list(elements)
    seen = set()
    for x in elements:
        if not isinstance(x, str):
            raise DuplicateElement(f"element identifiers must be strings, got {x!r}")
        if x in seen:
            raise DuplicateElement(f"duplicate element {x!r}")
        seen.add(x)
    pairs = []
    for pair in covers:
        lo, hi = pair
        for z in (lo, hi):
            if z not in seen:
                raise UnknownElement(f"cover pair references unknown element {z!r}")
        pairs.append((lo, hi))
    return Lattice(elements, pairs)


# ----------------------------------------------------------------------
# classification


@dataclass(frozen=True)
class ClassificationFlags:
    distributive: bool
    modular: bool
    lower_semimodular: bool
    upper_semimodular: bool
    lower_locally_modular: bool
    lower_locally_distributive: bool
    atomic: bool
    graded: bool

    def as_dict(self) -> dict[str, bool]:
        return dict(self.__dict__)


def _sub_lsm(L: Lattice, S) -> bool:
    cov, jn, mt = L.cover_set, L.jn, L.mt
    for x in S:
        for y in S:
            if (x, jn[x][y]) in cov and (mt[x][y], y) not in cov:
                return False
    return True


def _sub_usm(L: Lattice, S) -> bool:
    cov, jn, mt = L.cover_set, L.jn, L.mt
    for x in S:
        for y in S:
            if (mt[x][y], x) in cov and (y, jn[x][y]) not in cov:
                return False
    return True


def _sub_distributive(L: Lattice, S) -> bool:
    jn, mt = L.jn, L.mt
    for x in S:
        for y in S:
            for z in S:
                if mt[x][jn[y][z]] != jn[mt[x][y]][mt[x][z]]:
                    return False
    return True


def _lsm(L: Lattice) -> bool:
    C, J, M = L.cover_matrix, L.join_table, L.meet_table
    rows = np.arange(L.n)[:, None]
    cols = np.arange(L.n)[None, :]
    premise = C[rows, J]
    concl = C[M, cols]
    return bool(np.all(~premise | concl))


def _usm(L: Lattice) -> bool:
    C, J, M = L.cover_matrix, L.join_table, L.meet_table
    rows = np.arange(L.n)[:, None]
    cols = np.arange(L.n)[None, :]
    premise = C[M, rows]
    concl = C[cols, J]
    return bool(np.all(~premise | concl))


def _distributive(L: Lattice) -> bool:
    J, M = L.join_table, L.meet_table
    for x in range(L.n):
        lhs = M[x][J]  # x ∧ (y ∨ z)
        rhs = J[M[x][:, None], M[x][None, :]]  # (x ∧ y) ∨ (x ∧ z)
        if not np.array_equal(lhs, rhs):
            return False
    return True


def lower_interval(L: Lattice, i: int) -> tuple[int, ...]:
    """Positions of ``[X⁻, X]`` where ``X⁻`` is the meet of the lower covers of ``X``."""
    lows = L.lower_covers[i]
    if not lows:
        return (i,)
    m = lows[0]
    for c in lows[1:]:
        m = L.mt[m][c]
    return tuple(bits(L.up[m] & L.down[i]))


def classify(L: Lattice) -> ClassificationFlags:
    """Decide each class flag by exhaustive check of its defining condition."""
    lsm = _lsm(L)
    usm = _usm(L)
    modular = lsm and usm
    distributive = modular and _distributive(L)
    llm = True
    lld = True
    for i in range(L.n):
        S = lower_interval(L, i)
        if len(S) <= 2:
            continue
        if not (_sub_lsm(L, S) and _sub_usm(L, S)):
            llm = lld = False
            break
        if lld and not _sub_distributive(L, S):
            lld = False
    ji = L.ji
    atomic = all(not L.le(a, b) for a in ji for b in ji if a != b)
    graded = all(L.hgt[j] == L.hgt[i] + 1 for i, j in L.cover_pairs)
    return ClassificationFlags(
        distributive=distributive,
        modular=modular,
        lower_semimodular=lsm,
        upper_semimodular=usm,
        lower_locally_modular=llm,
        lower_locally_distributive=lld,
        atomic=atomic,
        graded=graded,
    )


def is_modular(L: Lattice) -> bool:
    return _lsm(L) and _usm(L)


# ----------------------------------------------------------------------
# constructions


def dualize(L: Lattice) -> Lattice:
    """Order reversal on the same identifiers."""
    return L.dual


def product(L1: Lattice, L2: Lattice) -> Lattice:
    """Direct product with componentwise order; identifiers ``"(x,y)"``."""

    def name(x, y):
        return f"({x},{y})"

    elements = [name(x, y) for x in L1.elements for y in L2.elements]
    covers = []
    for x in L1.elements:
        for lo, hi in L2.covers:
            covers.append((name(x, lo), name(x, hi)))
    for lo, hi in L1.covers:
        for y in L2.elements:
            covers.append((name(lo, y), name(hi, y)))
    return build_lattice(elements, covers)


def interval(L: Lattice, a, b) -> Lattice:
    """The sublattice ``[a, b]`` with induced covers."""
    i, j = L.index(a), L.index(b)
    if not L.le(i, j):
        raise NotComparable(f"{a!r} is not below {b!r}")
    mask = L.up[i] & L.down[j]
    members = list(bits(mask))
    covers = [
        (L.elements[x], L.elements[y])
        for x, y in L.cover_pairs
        if (mask >> x) & 1 and (mask >> y) & 1
    ]
    return build_lattice([L.elements[k] for k in members], covers)


def collinearity_triples(L: Lattice) -> list[frozenset]:
    """Triples of pairwise incomparable join-irreducibles with equal pairwise joins."""
    if not is_modular(L):
        raise NotModular("collinearity is defined on modular lattices")
    jn = L.jn
    out = []
    for p, q, r in combinations(L.ji, 3):
        if L.le(p, q) or L.le(q, p) or L.le(p, r) or L.le(r, p) or L.le(q, r) or L.le(r, q):
            continue
        if jn[p][q] == jn[q][r] == jn[r][p]:
            out.append(frozenset(L.names((p, q, r))))
    return out


def maximal_chains(L: Lattice, a: int, b: int):
    """Every maximal chain from position ``a`` to ``b`` as a tuple of positions."""
    if not L.le(a, b):
        return
    stack = [(a,)]
    while stack:
        chain = stack.pop()
        last = chain[-1]
        if last == b:
            yield chain
            continue
        for nxt in reversed(L.upper_covers[last]):
            if L.le(nxt, b):
                stack.append(chain + (nxt,))
