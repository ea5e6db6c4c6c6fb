"""Axiom systems for supermatroids and conversions between them.

A supermatroid is represented four ways: as an ideal ``I`` (independent
elements), its maximal elements (bases), its rank function
``r(X) = max{|I| : I ∈ I, I ≤ X}`` and its complement (dependent elements).
Each representation has a checker returning an :class:`AxiomReport`.

Internally a family of elements is a Python int used as a bitset over
element positions; the public types wrap such a mask.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from typing import Iterable, Iterator

from . import drsubmod
from .core import AxiomReport, LatticeFn, RankFn
from .errors import NotAnIdeal, NotOrderReversing, PreconditionViolated, RankAxiomViolated, TooLarge
from .lattice import Lattice, bits, classify, is_modular

RANK_VARIANTS = ("R3_downward", "R3u_upward", "R3b_bidirectional", "R3s_prime", "R3p_sano")
INDEPENDENCE_VARIANTS = ("I2", "I2l", "I2w")
ENUMERATION_LIMIT = 24


class _Family:
    """A set of elements of one lattice, stored as a bitset."""

    def __init__(self, lattice: Lattice, members: Iterable[str] = (), *, mask: int | None = None):
        self.lattice = lattice
        self.mask = lattice.mask_of(members) if mask is None else mask

    @property
    def members(self) -> tuple[str, ...]:
        return self.lattice.members(self.mask)

    def __contains__(self, x) -> bool:
        return (self.mask >> self.lattice.index(x)) & 1 == 1

    def __iter__(self):
        return iter(self.members)

    def __len__(self) -> int:
        return bin(self.mask).count("1")

    def __eq__(self, other) -> bool:
        if not isinstance(other, _Family):
            return NotImplemented
        return type(self) is type(other) and self.lattice == other.lattice and self.mask == other.mask

    def __hash__(self) -> int:
        return hash((type(self).__name__, self.mask, len(self.lattice)))

    def __repr__(self) -> str:
        return f"{type(self).__name__}({list(self.members)})"

    def to_json(self) -> list[str]:
        return list(self.members)


def is_ideal_mask(L: Lattice, m: int) -> bool:
    if not (m >> L.bot) & 1:
        return False
    return all(L.down[i] & ~m == 0 for i in bits(m))


def is_filter_mask(L: Lattice, m: int) -> bool:
    return all(L.up[i] & ~m == 0 for i in bits(m))


class IdealSet(_Family):
    """A non-empty downward-closed family (validated)."""

    def __init__(self, lattice: Lattice, members: Iterable[str] = (), *, mask: int | None = None):
        super().__init__(lattice, members, mask=mask)
        if not is_ideal_mask(lattice, self.mask):
            if not (self.mask >> lattice.bot) & 1:
                raise NotAnIdeal("an ideal must contain the bottom element")
            bad = next(
                (i, j) for i in bits(self.mask) for j in bits(lattice.down[i] & ~self.mask)
            )
            raise NotAnIdeal(
                f"not downward closed: {lattice.elements[bad[1]]!r} ≤ "
                f"{lattice.elements[bad[0]]!r} is missing"
            )


class BaseFamily(_Family):
    """Candidate base family; (B1) is checked by :func:`check_base`, not here."""


class DependentSet(_Family):
    """Candidate dependent family; (D1) is checked by :func:`check_dependence`."""


def _mask(L: Lattice, fam) -> int:
    if isinstance(fam, _Family):
        return fam.mask
    if isinstance(fam, int):
        return fam
    return L.mask_of(fam)


def _ideal_mask(L: Lattice, I) -> int:
    m = _mask(L, I)
    if not isinstance(I, IdealSet) and not is_ideal_mask(L, m):
        raise NotAnIdeal("not a non-empty downward-closed family")
    return m


def downward_closure(L: Lattice, m: int) -> int:
    out = 0
    for i in bits(m):
        out |= L.down[i]
    return out


def upward_closure(L: Lattice, m: int) -> int:
    out = 0
    for i in bits(m):
        out |= L.up[i]
    return out


def maximal_mask(L: Lattice, m: int) -> int:
    out = 0
    for i in bits(m):
        if not L.strict_up[i] & m:
            out |= 1 << i
    return out


# ----------------------------------------------------------------------
# height axiom


def _h2_violation(L: Lattice, m: int):
    hgt, su = L.hgt, L.strict_up
    for x in range(L.n):
        s = m & L.down[x]
        first = None
        for i in bits(s):
            if su[i] & s:
                continue
            if first is None:
                first = i
            elif hgt[i] != hgt[first]:
                return x, first, i
    return None


def is_supermatroid_mask(L: Lattice, m: int) -> bool:
    return is_ideal_mask(L, m) and _h2_violation(L, m) is None


def check_height(L: Lattice, I) -> AxiomReport:
    """(H1) ``I`` is a non-empty ideal; (H2) below every ``X`` the maximal
    members of ``I`` share one height."""
    m = _mask(L, I)
    rep = AxiomReport("height")
    if not is_ideal_mask(L, m):
        rep.add("H1", False, **_ideal_failure(L, m))
        return rep
    rep.add("H1", True)
    hit = _h2_violation(L, m)
    if hit is None:
        return rep.add("H2", True)
    x, i, j = hit
    e = L.elements
    return rep.add("H2", False, X=e[x], I1=e[i], I2=e[j], height_I1=L.hgt[i], height_I2=L.hgt[j])


def _ideal_failure(L: Lattice, m: int) -> dict:
    if not (m >> L.bot) & 1:
        return {"missing": L.bottom}
    for i in bits(m):
        miss = L.down[i] & ~m
        if miss:
            return {"member": L.elements[i], "missing": L.elements[next(bits(miss))]}
    return {}


# ----------------------------------------------------------------------
# independence axiom


def _augmentation_violation(L: Lattice, m: int, variant: str):
    hgt, jn, cov = L.hgt, L.jn, L.cover_set
    targets = maximal_mask(L, m) if variant == "I2w" else m
    for i1 in bits(m):
        above = m & L.strict_up[i1]
        for i2 in bits(targets):
            if variant == "I2l":
                if hgt[i1] + 1 != hgt[i2] or (i2, jn[i1][i2]) not in cov:
                    continue
            elif hgt[i1] >= hgt[i2]:
                continue
            if not above & L.down[jn[i1][i2]]:
                return i1, i2
    return None


def check_independence(L: Lattice, I, variant: str = "I2") -> AxiomReport:
    """(I1) plus the chosen augmentation clause.

    ``I2``: ``|I1| < |I2|`` gives ``J ∈ I`` with ``I1 < J ≤ I1 ∨ I2``.
    ``I2l``: only pairs with ``|I1| + 1 = |I2|`` and ``I2 ≺ I1 ∨ I2``.
    ``I2w``: only pairs where ``I2`` is maximal in ``I``.
    """
    if variant not in INDEPENDENCE_VARIANTS:
        raise ValueError(f"unknown independence variant {variant!r}")
    m = _mask(L, I)
    rep = AxiomReport(f"independence-{variant}")
    if not is_ideal_mask(L, m):
        return rep.add("I1", False, **_ideal_failure(L, m))
    rep.add("I1", True)
    hit = _augmentation_violation(L, m, variant)
    if hit is None:
        return rep.add(variant, True)
    e = L.elements
    return rep.add(variant, False, I1=e[hit[0]], I2=e[hit[1]], join=e[L.jn[hit[0]][hit[1]]])


# ----------------------------------------------------------------------
# rank


def rank_values(L: Lattice, m: int) -> list[int]:
    hgt = L.hgt
    return [max(hgt[i] for i in bits(m & L.down[x])) for x in range(L.n)]


def rank_of(L: Lattice, I) -> RankFn:
    """``r(X)`` = the largest height of a member of ``I`` below ``X``."""
    m = _ideal_mask(L, I)
    return RankFn.from_list(L, rank_values(L, m))


def _values(L: Lattice, r) -> list[Fraction]:
    return drsubmod._fn(L, r)


def _r12(L: Lattice, v, rep: AxiomReport) -> bool:
    e = L.elements
    if v[L.bot] != 0:
        rep.add("R1", False, X=L.bottom, value=v[L.bot])
        ok = False
    else:
        rep.add("R1", True)
        ok = True
    for i, j in sorted(L.cover_pairs):
        d = v[j] - v[i]
        if d != 0 and d != 1:
            rep.add("R2", False, X_lower=e[i], X=e[j], increment=d)
            return False
    rep.add("R2", True)
    return ok


def _sano_violation(L: Lattice, v):
    hgt, jn = L.hgt, L.jn
    for x in range(L.n):
        if v[x] != hgt[x]:
            continue
        for y in bits(L.strict_up[x]):
            if not v[x] < v[y]:
                continue
            if not any(L.le(p, y) and v[jn[x][p]] == v[x] + 1 for p in L.coex_idx[x]):
                return x, y
    return None


def check_rank(L: Lattice, r, variant: str = "R3_downward") -> AxiomReport:
    """(R1) ``r(⊥) = 0``, (R2) increments along covers in {0, 1}, then the
    chosen third clause:

    ``R3_downward`` downward DR-submodular, ``R3u_upward`` upward,
    ``R3b_bidirectional`` both, ``R3s_prime`` the co-extreme variant, and
    ``R3p_sano``: for ``X ≤ Y`` with ``r(X) = |X| < r(Y)`` some
    ``e ∈ coex(X)`` below ``Y`` has ``r(X ∨ e) = r(X) + 1``.
    """
    if variant not in RANK_VARIANTS:
        raise ValueError(f"unknown rank variant {variant!r}")
    v = _values(L, r)
    rep = AxiomReport(f"rank-{variant}")
    _r12(L, v, rep)
    if variant == "R3_downward":
        sub = drsubmod.check_downward_dr(L, v)
    elif variant == "R3u_upward":
        sub = drsubmod.check_upward_dr(L, v)
    elif variant == "R3b_bidirectional":
        sub = drsubmod.check_bidirectional_dr(L, v)
    elif variant == "R3s_prime":
        sub = drsubmod.check_downward_dr_prime(L, v)
    else:
        sub = AxiomReport("sano")
        hit = _sano_violation(L, v)
        if hit is None:
            sub.add("R3p", True)
        else:
            sub.add("R3p", False, X=L.elements[hit[0]], Y=L.elements[hit[1]])
    return rep.extend(sub)


def ideal_from_rank(L: Lattice, r) -> IdealSet:
    """``{X : r(X) = |X|}``; requires (R1) and (R2)."""
    v = _values(L, r)
    rep = AxiomReport("rank-R12")
    if not _r12(L, v, rep):
        bad = rep.failing()
        raise RankAxiomViolated(f"{bad.id} fails: {bad.witness}")
    m = 0
    for i in range(L.n):
        if v[i] == L.hgt[i]:
            m |= 1 << i
    return IdealSet(L, mask=m)


# ----------------------------------------------------------------------
# bases


def bases_of(L: Lattice, I) -> BaseFamily:
    return BaseFamily(L, mask=maximal_mask(L, _mask(L, I)))


def ideal_from_bases(L: Lattice, B) -> IdealSet:
    m = _mask(L, B)
    if not m:
        raise NotAnIdeal("the empty base family generates no ideal")
    return IdealSet(L, mask=downward_closure(L, m))


def _middle_violation(L: Lattice, m: int):
    low = downward_closure(L, m)
    high = upward_closure(L, m)
    for x in bits(low):
        for y in bits(high & L.up[x]):
            if not m & L.up[x] & L.down[y]:
                return x, y
    return None


def check_base(L: Lattice, B) -> AxiomReport:
    """(B0) non-empty, (B1) pairwise incomparable, (B2) for ``X ≤ B1`` and
    ``B2 ≤ Y`` with ``X ≤ Y`` some base lies in ``[X, Y]``.  On lower
    semimodular lattices the equal-height property of bases is reported too."""
    m = _mask(L, B)
    e = L.elements
    rep = AxiomReport("base")
    rep.add("B0", m != 0)
    for i in bits(m):
        above = L.strict_up[i] & m
        if above:
            rep.add("B1", False, B1=e[i], B2=e[next(bits(above))])
            break
    else:
        rep.add("B1", True)
    hit = _middle_violation(L, m)
    if hit is None:
        rep.add("B2", True)
    else:
        rep.add("B2", False, X=e[hit[0]], Y=e[hit[1]])
    if m and classify(L).lower_semimodular:
        hs = {L.hgt[i] for i in bits(m)}
        if len(hs) == 1:
            rep.add("same-height", True)
        else:
            i = next(bits(m))
            j = next(k for k in bits(m) if L.hgt[k] != L.hgt[i])
            rep.add("same-height", False, B1=e[i], B2=e[j])
    return rep


# ----------------------------------------------------------------------
# dependence


def _d2_violation(L: Lattice, d: int):
    jn, mt, cov = L.jn, L.mt, L.cover_set
    for d1 in bits(d):
        for d2 in bits(d):
            if d2 <= d1:
                continue
            t = jn[d1][d2]
            if (d1, t) not in cov or (d2, t) not in cov:
                continue
            mm = mt[d1][d2]
            if (d >> mm) & 1:
                continue  # clause (2)
            # clause (3) does not depend on Z
            if any(not (d >> i) & 1 and (mm, i) in cov and (i, t) in cov for i in range(L.n)):
                continue
            for z in L.lower_covers[t]:
                if z in (d1, d2) or L.le(mm, z) or (d >> z) & 1:
                    continue
                return d1, d2, z
    return None


def _d3_violation(L: Lattice, d: int, reading: str):
    jn, cov = L.jn, L.cover_set
    for x in range(L.n):
        if (d >> x) & 1:
            continue
        for w in range(L.n):
            if (d >> w) & 1:
                continue
            t = jn[x][w]
            if (w, t) not in cov:
                continue
            between = L.strict_up[x] & L.strict_down[t]
            if reading == "interval":
                if between == 0 or between & (between - 1):
                    continue
                y = next(bits(between))
                if not ((d >> y) & 1 and (x, y) in cov and (y, t) in cov):
                    continue
            else:
                ys = [y for y in bits(between & d) if (x, y) in cov and (y, t) in cov]
                if len(ys) != 1:
                    continue
                y = ys[0]
            return x, w, y
    return None


def check_dependence(L: Lattice, D, d3_reading: str = "interval") -> AxiomReport:
    """(D1) proper up-set, (D2) elimination with the double-cover clause as
    stated, (D3) replacement.

    ``d3_reading="interval"`` applies (D3) when ``Y`` is the only element
    strictly between ``X`` and ``X ∨ W`` (and ``X ≺ Y ≺ X ∨ W``, ``Y ∈ D``);
    ``"literal"`` when exactly one dependent ``Y`` satisfies
    ``X ≺ Y ≺ X ∨ W``.
    """
    if d3_reading not in ("interval", "literal"):
        raise ValueError("d3_reading must be 'interval' or 'literal'")
    d = _mask(L, D)
    e = L.elements
    rep = AxiomReport("dependence")
    if (d >> L.bot) & 1:
        rep.add("D1", False, reason="not proper", member=L.bottom)
    elif not is_filter_mask(L, d):
        i = next(i for i in bits(d) if L.up[i] & ~d)
        rep.add("D1", False, reason="not upward closed", member=e[i],
                missing=e[next(bits(L.up[i] & ~d))])
    else:
        rep.add("D1", True)
    hit = _d2_violation(L, d)
    if hit is None:
        rep.add("D2", True)
    else:
        rep.add("D2", False, D1=e[hit[0]], D2=e[hit[1]], Z=e[hit[2]])
    hit = _d3_violation(L, d, d3_reading)
    if hit is None:
        rep.add("D3", True)
    else:
        rep.add("D3", False, X=e[hit[0]], W=e[hit[1]], Y=e[hit[2]])
    return rep


def complement(L: Lattice, fam) -> int:
    return ((1 << L.n) - 1) & ~_mask(L, fam)


def dependent_of(L: Lattice, I) -> DependentSet:
    return DependentSet(L, mask=complement(L, I))


def ideal_from_dependent(L: Lattice, D) -> IdealSet:
    return IdealSet(L, mask=complement(L, D))


# ----------------------------------------------------------------------
# duality


def _check_bar(L: Lattice, bar: dict) -> dict[int, int]:
    try:
        idx = {L.index(x): L.index(y) for x, y in bar.items()}
    except Exception as ex:
        raise NotOrderReversing(str(ex)) from None
    if len(idx) != L.n or set(idx.values()) != set(range(L.n)):
        raise NotOrderReversing("bar must be a bijection of the elements")
    for i in range(L.n):
        for j in range(L.n):
            if L.le(i, j) != L.le(idx[j], idx[i]):
                raise NotOrderReversing(
                    f"order not reversed at {L.elements[i]!r}, {L.elements[j]!r}"
                )
    return idx


def dual_supermatroid(L: Lattice, B, bar: dict | None = None):
    """``B* = {bar(B)}``.

    Without ``bar`` the identity is used and the dual lives on the order
    reversal ``L*``.  A given ``bar`` must be an order-reversing bijection
    of ``L`` onto itself (set complement, orthogonal complement); the dual
    then lives on ``L``.  Returns ``(lattice, BaseFamily)``.
    """
    m = _mask(L, B)
    if bar is None:
        D = L.dual
        return D, BaseFamily(D, L.members(m))
    idx = _check_bar(L, bar)
    out = 0
    for i in bits(m):
        out |= 1 << idx[i]
    return L, BaseFamily(L, mask=out)


def dual_rank_formula(L: Lattice, r, bar: dict | None = None) -> tuple[Lattice, RankFn]:
    """``r*(bar X) = r(X) + (|⊤| − |X|) − r(⊤)`` on the lattice carrying the
    dual.  Requires ``L`` modular."""
    if not is_modular(L):
        raise PreconditionViolated("modular", "the dual rank formula needs a modular lattice")
    v = _values(L, r)
    if bar is None:
        target = L.dual
        idx = {i: i for i in range(L.n)}
    else:
        target = L
        idx = _check_bar(L, bar)
    top_h, r_top = L.hgt[L.tp], v[L.tp]
    out = [Fraction(0)] * L.n
    for i in range(L.n):
        out[idx[i]] = v[i] + (top_h - L.hgt[i]) - r_top
    return target, RankFn.from_list(target, out)


# ----------------------------------------------------------------------
# enumeration


def iter_supermatroid_masks(L: Lattice, force: bool = False) -> Iterator[int]:
    """Bitsets of every supermatroid on ``L`` in canonical order.

    The maximal elements of a supermatroid lie below ``⊤`` and so share one
    height; elements of equal height are incomparable.  Candidates are
    therefore the non-empty subsets of each height level, taken by level,
    then size, then position.  Each ideal has exactly one family of
    maximal elements, so nothing is produced twice.
    """
    if L.n > ENUMERATION_LIMIT and not force:
        raise TooLarge(f"{L.n} elements exceeds the enumeration guard {ENUMERATION_LIMIT}")
    for _h, level in L.by_height.items():
        for k in range(1, len(level) + 1):
            for fam in combinations(level, k):
                m = 0
                for i in fam:
                    m |= L.down[i]
                if _h2_violation(L, m) is None:
                    yield m


def enumerate_supermatroids(L: Lattice, force: bool = False) -> Iterator[IdealSet]:
    for m in iter_supermatroid_masks(L, force):
        yield IdealSet(L, mask=m)


def iter_ideal_masks(L: Lattice, force: bool = False) -> Iterator[int]:
    """Every non-empty ideal (downward-closed set containing ``⊥``) as a bitset."""
    if L.n > ENUMERATION_LIMIT and not force:
        raise TooLarge(f"{L.n} elements exceeds the enumeration guard {ENUMERATION_LIMIT}")
    # antichains of L, generated by extending with later positions only;
    # distinct antichains have distinct downward closures
    order = sorted(range(L.n), key=lambda i: (L.hgt[i], i))
    comparable = [L.up[i] | L.down[i] for i in range(L.n)]

    def extend(start, chosen_mask, blocked):
        yield chosen_mask
        for k in range(start, len(order)):
            i = order[k]
            if (blocked >> i) & 1:
                continue
            yield from extend(k + 1, chosen_mask | 1 << i, blocked | comparable[i])

    for anti in extend(0, 0, 0):
        if anti:
            yield downward_closure(L, anti)


def uniform_ideal(L: Lattice, k: int) -> IdealSet:
    """``{X : |X| ≤ k}``."""
    m = 0
    for i in range(L.n):
        if L.hgt[i] <= k:
            m |= 1 << i
    return IdealSet(L, mask=m)


def free_ideal(L: Lattice) -> IdealSet:
    return IdealSet(L, mask=(1 << L.n) - 1)


__all__ = [
    "BaseFamily",
    "DependentSet",
    "IdealSet",
    "LatticeFn",
    "RankFn",
    "bases_of",
    "check_base",
    "check_dependence",
    "check_height",
    "check_independence",
    "check_rank",
    "dual_rank_formula",
    "dual_supermatroid",
    "enumerate_supermatroids",
    "ideal_from_bases",
    "ideal_from_rank",
    "rank_of",
]


def iter_r12_functions(L: Lattice) -> Iterator[list[int]]:
    """Every integer function with (R1) and (R2), as value lists by position.

    Values are assigned level by level; an element's value is pinned to
    ``[max, min + 1]`` of its lower covers' values.
    """
    order = sorted(range(L.n), key=lambda i: (L.hgt[i], i))
    vals = [0] * L.n

    def rec(k):
        if k == len(order):
            yield list(vals)
            return
        i = order[k]
        if i == L.bot:
            vals[i] = 0
            yield from rec(k + 1)
            return
        lows = [vals[j] for j in L.lower_covers[i]]
        for v in range(max(lows), min(lows) + 2):
            vals[i] = v
            yield from rec(k + 1)

    yield from rec(0)
