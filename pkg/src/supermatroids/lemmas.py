"""Exhaustive checks of the structural lemmas behind the main theorems.

Each check returns an :class:`AxiomReport` with one clause; a failing
clause names the first counterexample.  Checks whose statement needs a
class of lattices raise :class:`PreconditionViolated` on other inputs, so
a suite can skip them cleanly.
"""

from __future__ import annotations

from itertools import combinations

from .core import AxiomReport
from .drsubmod import _fn
from .errors import PreconditionViolated
from .exchange import check_matching_chain
from .lattice import Lattice, bits, classify, maximal_chains
from .supermatroid import iter_supermatroid_masks, maximal_mask


def _need(L: Lattice, flag: str, label: str):
    if not getattr(classify(L), flag):
        raise PreconditionViolated(label, f"the lattice is not {label}")


def check_subadm(L: Lattice) -> AxiomReport:
    """For ``a ∈ adm(Y)`` with ``a ≰ X`` some ``b ∈ adm(X)`` lies below ``a``."""
    rep = AxiomReport("subadm")
    e = L.elements
    adm_mask = [sum(1 << a for a in L.adm_idx[x]) for x in range(L.n)]
    for x in range(L.n):
        for y in range(L.n):
            for a in L.adm_idx[y]:
                if L.le(a, x):
                    continue
                if not L.down[a] & adm_mask[x]:
                    return rep.add("subadm", False, X=e[x], Y=e[y], a=e[a])
    return rep.add("subadm", True)


def check_prec(L: Lattice) -> AxiomReport:
    """Lower semimodular ``L``: ``X ≺ Y``, ``Z ≤ Y``, ``Z ≰ X`` give ``X ∧ Z ≺ Z``."""
    _need(L, "lower_semimodular", "lower semimodular")
    rep = AxiomReport("prec")
    e = L.elements
    for x, y in sorted(L.cover_pairs):
        for z in bits(L.down[y]):
            if not L.le(z, x) and not L.is_cov(L.mt[x][z], z):
                return rep.add("prec", False, X=e[x], Y=e[y], Z=e[z])
    return rep.add("prec", True)


def check_prec_height(L: Lattice) -> AxiomReport:
    """Semimodular ``L``: ``X ≺ Y`` exactly when ``X ≤ Y`` and ``|Y| = |X| + 1``."""
    f = classify(L)
    if not (f.lower_semimodular or f.upper_semimodular):
        raise PreconditionViolated("semimodular", "the lattice is neither lower nor upper semimodular")
    rep = AxiomReport("prec-height")
    for x in range(L.n):
        for y in bits(L.up[x]):
            if L.is_cov(x, y) != (L.hgt[y] == L.hgt[x] + 1):
                return rep.add("prec-height", False, X=L.elements[x], Y=L.elements[y])
    return rep.add("prec-height", True)


def check_prec_usm(L: Lattice) -> AxiomReport:
    """Upper semimodular ``L``: ``X ≺ Y`` gives ``X ∨ Z ⪯ Y ∨ Z``."""
    _need(L, "upper_semimodular", "upper semimodular")
    rep = AxiomReport("prec-usm")
    e, jn = L.elements, L.jn
    for x, y in sorted(L.cover_pairs):
        for z in range(L.n):
            a, b = jn[x][z], jn[y][z]
            if a != b and not L.is_cov(a, b):
                return rep.add("prec-usm", False, X=e[x], Y=e[y], Z=e[z])
    return rep.add("prec-usm", True)


def check_existence_of_ji(L: Lattice) -> AxiomReport:
    """``X < Y`` gives some ``q ≤ Y`` in ``coex(X)``."""
    rep = AxiomReport("existence-of-join-irreducibles")
    for x in range(L.n):
        coex = sum(1 << p for p in L.coex_idx[x])
        for y in bits(L.strict_up[x]):
            if not coex & L.down[y]:
                return rep.add("existence", False, X=L.elements[x], Y=L.elements[y])
    return rep.add("existence", True)


def ladder_index(L: Lattice, chain, z: int) -> int | None:
    """The ``l`` of the ladder for a chain of positions and ``Z ≺ X_m``:
    ``X_i ≤ Z`` for ``i ≤ l``, ``X_i ∧ Z ≺ X_i`` for ``i > l``, and the rungs
    ``X_{i-1} ∧ Z ≺ X_i ∧ Z`` for ``i > l + 1``.  ``l = -1`` when no
    chain element lies below ``Z``.  None if no such ``l`` exists."""
    mt = L.mt
    m = len(chain) - 1
    below = [L.le(c, z) for c in chain]
    l = -1
    while l + 1 <= m and below[l + 1]:
        l += 1
    for i in range(l + 1, m + 1):
        if below[i] or not L.is_cov(mt[chain[i]][z], chain[i]):
            return None
    for i in range(l + 2, m + 1):
        if not L.is_cov(mt[chain[i - 1]][z], mt[chain[i]][z]):
            return None
    return l


def check_ladder(L: Lattice) -> AxiomReport:
    """Lower locally modular ``L``: every maximal chain ``X_0 ≺ … ≺ X_m`` and
    every ``Z ≺ X_m`` admit a ladder index."""
    _need(L, "lower_locally_modular", "lower locally modular")
    rep = AxiomReport("ladder")
    e = L.elements
    count = 0
    for a in range(L.n):
        for b in bits(L.strict_up[a]):
            for ch in maximal_chains(L, a, b):
                for z in L.lower_covers[b]:
                    count += 1
                    if ladder_index(L, ch, z) is None:
                        return rep.add("ladder", False, chain=list(L.names(ch)), Z=e[z])
    return rep.add("ladder", True, cases=count)


def check_chernoff(L: Lattice) -> AxiomReport:
    """Lower semimodular ``L``: for ``X ≤ Y``, ``Y̊ ≺ Y = Y̊ ∨ y`` with
    ``y ≤ X``, also ``X ∧ Y̊ ≺ X = (X ∧ Y̊) ∨ y``."""
    _need(L, "lower_semimodular", "lower semimodular")
    rep = AxiomReport("chernoff")
    e, jn, mt = L.elements, L.jn, L.mt
    for y in range(L.n):
        for yo in L.lower_covers[y]:
            for p in L.ji:
                if jn[yo][p] != y:
                    continue
                for x in bits(L.down[y]):
                    if not L.le(p, x):
                        continue
                    xo = mt[x][yo]
                    if not (L.is_cov(xo, x) and jn[xo][p] == x):
                        return rep.add("chernoff", False, X=e[x], Y=e[y], y=e[p], Y_ring=e[yo])
    return rep.add("chernoff", True)


def check_regularity(L: Lattice) -> AxiomReport:
    """Modular ``L``: for collinear ``(p, q, r)`` and a join-irreducible
    ``r̲ ≤ r`` below neither ``p`` nor ``q``, some ``p̲ ≤ p`` and ``q̲ ≤ q``
    make ``(p̲, q̲, r̲)`` collinear."""
    _need(L, "modular", "modular")
    rep = AxiomReport("regularity")
    jn, e = L.jn, L.elements

    def incomparable(a, b):
        return not L.le(a, b) and not L.le(b, a)

    def collinear(a, b, c):
        return (incomparable(a, b) and incomparable(b, c) and incomparable(a, c)
                and jn[a][b] == jn[b][c] == jn[c][a])

    ji = L.ji
    count = 0
    for p, q, r in combinations(ji, 3):
        if not collinear(p, q, r):
            continue
        for pp, qq, rr in ((p, q, r), (q, r, p), (r, p, q)):
            for ru in ji:
                if not L.le(ru, rr) or L.le(ru, pp) or L.le(ru, qq):
                    continue
                count += 1
                ok = any(
                    collinear(pu, qu, ru)
                    for pu in ji if L.le(pu, pp)
                    for qu in ji if L.le(qu, qq)
                )
                if not ok:
                    return rep.add("regularity", False, p=e[pp], q=e[qq], r=e[rr], r_under=e[ru])
    return rep.add("regularity", True, cases=count)


def check_strengthened_dr(L: Lattice, f) -> AxiomReport:
    """Modular ``L``, downward DR-submodular ``f``: for ``x ∈ adm(X) ∩
    adm(X ∨ Y)`` some ``x′ ∈ adm(X)`` with ``x′ ≡ x mod X`` has
    ``f(X∨Y∨x) − f(X∨Y) ≤ f(Y∨x̲′) − f(Y)`` for every ``x̲′ ≤ x′`` in ``adm(Y)``."""
    _need(L, "modular", "modular")
    v = _fn(L, f)
    rep = AxiomReport("strengthened-dr")
    jn, e = L.jn, L.elements
    for x in range(L.n):
        adm_x = L.adm_idx[x]
        for y in range(L.n):
            xy = jn[x][y]
            adm_xy = set(L.adm_idx[xy])
            for a in adm_x:
                if a not in adm_xy:
                    continue
                lhs = v[jn[xy][a]] - v[xy]
                target = jn[x][a]
                ok = False
                for ap in adm_x:
                    if jn[x][ap] != target:
                        continue
                    if all(lhs <= v[jn[y][au]] - v[y] for au in L.adm_idx[y] if L.le(au, ap)):
                        ok = True
                        break
                if not ok:
                    return rep.add("strengthened", False, X=e[x], Y=e[y], x=e[a], lhs=lhs)
    return rep.add("strengthened", True)


def check_matching_suite(L: Lattice, force: bool = False) -> AxiomReport:
    """Build the chain matching for every supermatroid, every ordered pair of
    bases and every maximal chain below the first base (atomic modular ``L``)."""
    f = classify(L)
    if not (f.modular and f.atomic):
        raise PreconditionViolated("atomic modular", "the lattice is not atomic modular")
    rep = AxiomReport("matching")
    count = 0
    for m in iter_supermatroid_masks(L, force):
        bm = maximal_mask(L, m)
        for x in bits(bm):
            for o in bits(bm):
                for ch in maximal_chains(L, L.bot, x):
                    check_matching_chain(L, m, L.elements[x], L.elements[o], L.names(ch))
                    count += 1
    return rep.add("matching", True, cases=count)


LATTICE_LEMMAS = {
    "subadm": check_subadm,
    "prec": check_prec,
    "prec-height": check_prec_height,
    "prec-usm": check_prec_usm,
    "existence-of-join-irreducibles": check_existence_of_ji,
    "ladder": check_ladder,
    "chernoff": check_chernoff,
    "regularity": check_regularity,
}


def run_lattice_lemmas(L: Lattice) -> dict[str, AxiomReport | None]:
    """Every lattice-only lemma; None marks a lemma whose hypothesis fails."""
    out: dict[str, AxiomReport | None] = {}
    for name, fn in LATTICE_LEMMAS.items():
        try:
            out[name] = fn(L)
        except PreconditionViolated:
            out[name] = None
    return out


__all__ = [
    "LATTICE_LEMMAS",
    "check_chernoff",
    "check_existence_of_ji",
    "check_ladder",
    "check_matching_suite",
    "check_prec",
    "check_prec_height",
    "check_prec_usm",
    "check_regularity",
    "check_strengthened_dr",
    "check_subadm",
    "ladder_index",
    "run_lattice_lemmas",
]
