"""Strong exchange for bases on modular lattices and the chain matchings
built from it.

The exchange statement nests five quantifiers::

    ∃ w ∈ adm(X̊), X̊ ∨ w = X
      ∀ w̲ ≤ w, w̲ ∈ adm(Y)
        ∃ Y′ in the family, (X ∧ Y) ∨ w̲ ≤ Y′ ≺ Y ∨ w̲
          ∀ y ∈ adm(Y′), y ≤ Y, Y′ ∨ y = Y ∨ w̲
            ∃ join-irreducible y̲ ≤ y and v with y̲ ≡ v mod Y ∧ Y′,
              V = {v̲ ∈ adm(X̊) : v̲ ≤ v} non-empty and acceptable

:func:`exchange_search` runs it for any family and acceptance test; the
base version accepts when ``X̊ ∨ v̲`` is a base for every ``v̲ ∈ V`` and
the valuated version (in :mod:`supermatroids.optimize`) compares values.
Every existential takes the first candidate in canonical order.

The universal over ``y`` is restricted to ``y ≤ Y``.  Without it the
statement already fails on ``M_3`` with bases ``{a, b}``: for ``X = a``,
``Y = b``, ``X̊ = ⊥`` the atom ``y = c`` forces ``v = c``, which is not a
base.  ``literal=True`` drops the restriction.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

from .core import AxiomReport
from .errors import ConstructionFailed, NoWitness, PreconditionViolated, StrongExchangeRefuted
from .lattice import Lattice, bits, classify
from .supermatroid import _middle_violation, _mask, maximal_mask


@dataclass
class YRecord:
    y: str
    y_under: str
    v: str
    v_under: tuple[str, ...]

    def to_json(self) -> dict:
        return {"y": self.y, "y_under": self.y_under, "v": self.v, "v_under": list(self.v_under)}


@dataclass
class WUnderRecord:
    w_under: str
    Y_prime: str
    per_y: list[YRecord] = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "w_under": self.w_under,
            "Y_prime": self.Y_prime,
            "per_y": [r.to_json() for r in self.per_y],
        }


@dataclass
class ExchangeWitness:
    X: str
    Y: str
    X_ring: str
    w: str
    per_underline_w: list[WUnderRecord] = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "X": self.X,
            "Y": self.Y,
            "X_ring": self.X_ring,
            "w": self.w,
            "per_underline_w": [r.to_json() for r in self.per_underline_w],
        }


def exchange_search(
    L: Lattice,
    x: int,
    y: int,
    xo: int,
    family: Callable[[int], bool],
    accept: Callable[[int, int], bool],
    literal: bool = False,
) -> ExchangeWitness | None:
    """The nested search on positions.  ``family(Y′)`` says whether ``Y′``
    may be chosen; ``accept(v̲, Y′)`` is the final condition on each ``v̲``."""
    jn, mt = L.jn, L.mt
    e = L.elements
    xy = mt[x][y]
    adm_xo = L.adm_idx[xo]
    below_y = not literal
    for w in adm_xo:
        if jn[xo][w] != x:
            continue
        records = []
        for wu in L.adm_idx[y]:
            if not L.le(wu, w):
                continue
            lo, hi = jn[xy][wu], jn[y][wu]
            rec = None
            for yp in L.lower_covers[hi]:
                if not L.le(lo, yp) or not family(yp):
                    continue
                per_y = _per_y(L, y, yp, hi, adm_xo, accept, below_y)
                if per_y is not None:
                    rec = WUnderRecord(e[wu], e[yp], per_y)
                    break
            if rec is None:
                break
            records.append(rec)
        else:
            return ExchangeWitness(e[x], e[y], e[xo], e[w], records)
    return None


def _per_y(L: Lattice, y: int, yp: int, hi: int, adm_xo, accept, below_y: bool):
    jn, mt, down = L.jn, L.mt, L.down
    e = L.elements
    m = mt[y][yp]
    out = []
    for yy in L.adm_idx[yp]:
        if jn[yp][yy] != hi or (below_y and not L.le(yy, y)):
            continue
        found = None
        for yu in L.ji:
            if not L.le(yu, yy):
                continue
            target = jn[yu][m]
            for v in L.ji:
                if jn[v][m] != target:
                    continue
                vs = [vu for vu in adm_xo if (down[v] >> vu) & 1]
                if vs and all(accept(vu, yp) for vu in vs):
                    found = YRecord(e[yy], e[yu], e[v], L.names(vs))
                    break
            if found:
                break
        if found is None:
            return None
        out.append(found)
    return out


def _exchange_preconditions(L: Lattice, bmask: int, X, Y, X_ring, *, atomic: bool = False):
    x, y, xo = L.index(X), L.index(Y), L.index(X_ring)
    flags = classify(L)
    if not flags.modular:
        raise PreconditionViolated("modular", "the lattice is not modular")
    if atomic and not flags.atomic:
        raise PreconditionViolated("atomic", "the lattice is not atomic")
    if not bmask:
        raise PreconditionViolated("bases", "the base family is empty")
    if any(L.strict_up[i] & bmask for i in bits(bmask)) or _middle_violation(L, bmask):
        raise PreconditionViolated("bases", "the family fails the base axiom")
    if not (bmask >> x) & 1:
        raise PreconditionViolated("X ∈ B", f"{X!r} is not a base")
    if not (bmask >> y) & 1:
        raise PreconditionViolated("Y ∈ B", f"{Y!r} is not a base")
    if not L.is_cov(xo, x):
        raise PreconditionViolated("X̊ ≺ X", f"{X_ring!r} is not covered by {X!r}")
    if not L.le(L.mt[x][y], xo):
        raise PreconditionViolated("X̊ ≥ X∧Y", f"{X_ring!r} is not above {L.meet(X, Y)!r}")
    return x, y, xo


def verify_strong_exchange(L: Lattice, B, X, Y, X_ring, *, literal: bool = False) -> ExchangeWitness:
    """Find the first witness of the strong exchange property for bases
    ``X, Y`` and ``X̊ ≺ X`` with ``X̊ ≥ X ∧ Y``.

    Raises :class:`PreconditionViolated` naming the failed hypothesis and
    :class:`StrongExchangeRefuted` if the search comes back empty.
    """
    bmask = _mask(L, B)
    x, y, xo = _exchange_preconditions(L, bmask, X, Y, X_ring)
    jn = L.jn
    wit = exchange_search(
        L, x, y, xo,
        family=lambda i: (bmask >> i) & 1 == 1,
        accept=lambda vu, yp: (bmask >> jn[xo][vu]) & 1 == 1,
        literal=literal,
    )
    if wit is None:
        raise StrongExchangeRefuted(f"no exchange witness for X={X!r}, Y={Y!r}, X̊={X_ring!r}")
    return wit


def _atomic_search(L: Lattice, bmask: int, x: int, y: int, xo: int):
    jn, mt = L.jn, L.mt
    xy = mt[x][y]
    for w in L.adm_idx[xo]:
        if jn[xo][w] != x:
            continue
        lo, hi = jn[w][xy], jn[y][w]
        for yp in L.lower_covers[hi]:
            if not (bmask >> yp) & 1 or not L.le(lo, yp):
                continue
            for v in L.ji:
                if L.le(v, y) and jn[yp][v] == hi and (bmask >> jn[xo][v]) & 1:
                    return w, yp, v
    return None


def verify_strong_exchange_atomic(L: Lattice, B, X, Y, X_ring) -> tuple[str, str, str]:
    """The atomic form: ``(w, Y′, v)`` with ``X̊ ∨ w = X``,
    ``w ∨ (X ∧ Y) ≤ Y′ ≺ Y ∨ w``, ``v ≤ Y``, ``Y′ ∨ v = Y ∨ w`` and both
    ``X̊ ∨ v`` and ``Y′`` bases."""
    bmask = _mask(L, B)
    x, y, xo = _exchange_preconditions(L, bmask, X, Y, X_ring, atomic=True)
    hit = _atomic_search(L, bmask, x, y, xo)
    if hit is None:
        raise StrongExchangeRefuted(f"no atomic exchange for X={X!r}, Y={Y!r}, X̊={X_ring!r}")
    return L.names(hit)


def exchange_triples(L: Lattice, B):
    """Every ``(X, Y, X̊)`` meeting the exchange hypotheses, as identifiers."""
    bmask = _mask(L, B)
    for x in bits(bmask):
        for y in bits(bmask):
            xy = L.mt[x][y]
            for xo in L.lower_covers[x]:
                if L.le(xy, xo):
                    yield L.elements[x], L.elements[y], L.elements[xo]


# ----------------------------------------------------------------------
# matchings along chains


@dataclass
class MatchingChain:
    """Result of the chain matching between bases ``X`` and ``O``.

    ``W`` runs from ``X`` to ``X ∨ O`` by covers with ``W[i] = W[i-1] ∨ w[i-1]``;
    ``j[i]`` is an index into the input chain with ``X_{j} ∨ w ∈ I``.
    """

    W: list[str]
    w: list[str]
    j: list[int]
    Y: list[str]
    report: AxiomReport

    def to_json(self) -> dict:
        return {"W": self.W, "w": self.w, "j": self.j, "Y": self.Y, "report": self.report.to_json()}


def _diamond_matching(L: Lattice, imask: int, x: int, o: int, zchain: list[int]):
    """Chain ``X ∧ O = Y_0 ≺ … ≺ Y_α = O`` with atoms ``y_i``,
    ``Y_i = Y_{i-1} ∨ y_i`` and ``Z_{i-1} ∨ y_i ∈ I``; recursion on α
    through the atomic exchange in truncated supermatroids."""
    alpha = len(zchain) - 1
    if alpha == 0:
        return [o], []
    k = L.hgt[x]
    bmask = 0
    for i in bits(imask):
        if L.hgt[i] == k:
            bmask |= 1 << i
    zo = zchain[-2]
    hit = _atomic_search(L, bmask, x, o, zo)
    if hit is None:
        raise ConstructionFailed(
            f"no atomic exchange for {L.elements[x]!r}, {L.elements[o]!r}, {L.elements[zo]!r}"
        )
    _w, op, v = hit
    y_prev = L.mt[op][o]
    trunc = 0
    for i in bits(imask):
        if L.hgt[i] < k:
            trunc |= 1 << i
    ys, atoms = _diamond_matching(L, trunc, zo, y_prev, zchain[:-1])
    return ys + [o], atoms + [v]


def check_matching_chain(L: Lattice, I, X, O, chain) -> MatchingChain:
    """Build the matching of the chain ``⊥ = X_0 ≺ … ≺ X_k = X`` against the
    base ``O`` and verify every stated relation."""
    imask = _mask(L, I)
    flags = classify(L)
    if not (flags.modular and flags.atomic):
        raise PreconditionViolated("atomic modular", "the lattice must be atomic and modular")
    bmask = maximal_mask(L, imask)
    x, o = L.index(X), L.index(O)
    if not (bmask >> x) & 1 or not (bmask >> o) & 1:
        raise PreconditionViolated("bases", "X and O must be bases of I")
    xs = [L.index(c) for c in chain]
    if not xs or xs[0] != L.bot or xs[-1] != x or any(
        not L.is_cov(a, b) for a, b in zip(xs, xs[1:])
    ):
        raise PreconditionViolated("chain", "need a maximal chain from the bottom to X")
    jn, mt = L.jn, L.mt
    xo = mt[x][o]
    # split the chain steps into those that grow X ∧ O and the rest
    n_idx, xatoms = [], []
    for i in range(1, len(xs)):
        if mt[xs[i]][o] == mt[xs[i - 1]][o]:
            a = next(
                (a for a in L.upper_covers[L.bot] if L.le(a, xs[i]) and not L.le(a, xs[i - 1])),
                None,
            )
            if a is None:
                raise ConstructionFailed("no atom separates consecutive chain elements")
            n_idx.append(i)
            xatoms.append(a)
    zchain = [xo]
    for a in xatoms:
        nxt = jn[zchain[-1]][a]
        if not L.is_cov(zchain[-1], nxt):
            raise ConstructionFailed("the Z chain does not step by covers")
        zchain.append(nxt)
    if zchain[-1] != x:
        raise ConstructionFailed("the Z chain does not reach X")
    ys, yatoms = _diamond_matching(L, imask, x, o, zchain)
    js = [i - 1 for i in n_idx]
    W = [jn[x][yy] for yy in ys]

    e = L.elements
    rep = AxiomReport("matching-chain")
    alpha = len(yatoms)
    rep.add("alpha", alpha == L.hgt[jn[x][o]] - L.hgt[x], alpha=alpha)
    rep.add("W-ends", W[0] == x and W[-1] == jn[x][o])
    bad = next(
        (i for i in range(1, len(W)) if not (L.is_cov(W[i - 1], W[i]) and jn[W[i - 1]][yatoms[i - 1]] == W[i])),
        None,
    )
    rep.add("W-steps", bad is None, **({} if bad is None else {"i": bad, "W": e[W[bad]]}))
    bad = next(
        (i for i in range(alpha) if not (imask >> jn[xs[js[i]]][yatoms[i]]) & 1), None
    )
    rep.add("membership", bad is None,
            **({} if bad is None else {"i": bad + 1, "X_j": e[xs[js[bad]]], "w": e[yatoms[bad]]}))
    rep.add("injective", len(set(js)) == len(js))
    # the intermediate chain X ∧ O = Y_0 ≺ … ≺ Y_α = O
    bad = next(
        (i for i in range(1, len(ys)) if not (
            L.is_cov(ys[i - 1], ys[i]) and jn[ys[i - 1]][yatoms[i - 1]] == ys[i]
            and (imask >> jn[zchain[i - 1]][yatoms[i - 1]]) & 1
        )),
        None,
    )
    rep.add("diamond", ys[0] == xo and ys[-1] == o and bad is None,
            **({} if bad is None else {"i": bad, "Y": e[ys[bad]]}))
    if not rep.verdict:
        raise ConstructionFailed(f"matching chain failed: {rep.failing().to_json()}")
    return MatchingChain(
        W=[e[i] for i in W],
        w=[e[i] for i in yatoms],
        j=js,
        Y=[e[i] for i in ys],
        report=rep,
    )


def check_strong_exchange_family(L: Lattice, B, *, literal: bool = False) -> AxiomReport:
    """Run :func:`verify_strong_exchange` on every admissible triple."""
    rep = AxiomReport("strong-exchange")
    bad = None
    count = 0
    for X, Y, Xo in exchange_triples(L, B):
        count += 1
        try:
            verify_strong_exchange(L, B, X, Y, Xo, literal=literal)
        except NoWitness:
            bad = (X, Y, Xo)
            break
    if bad:
        return rep.add("exchange", False, X=bad[0], Y=bad[1], X_ring=bad[2])
    return rep.add("exchange", True, triples=count)


__all__ = [
    "ExchangeWitness",
    "MatchingChain",
    "check_matching_chain",
    "check_strong_exchange_family",
    "exchange_search",
    "exchange_triples",
    "verify_strong_exchange",
    "verify_strong_exchange_atomic",
]
