"""Diminishing-returns properties of lattice functions.

Every check is exhaustive and exact.  The quantifier sweeps work on
positions and bitsets: for a fixed lower element ``X`` and threshold ``t``
the set of admissible ``a`` whose gain ``f(X ∨ a) − f(X)`` falls below ``t``
is a bitmask, so "every admissible ``a ≤ b′`` has gain ≥ t" becomes a
single ``down[b′] & bad == 0`` test.

Counterexamples are the first failing tuple when the outer variables run
through the canonical element order, ``X`` outermost.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np

from .core import AxiomReport, LatticeFn
from .errors import NotMonotone
from .lattice import Lattice, bits


def _fn(L: Lattice, f) -> list[Fraction]:
    if isinstance(f, LatticeFn):
        if f.lattice is L or f.lattice.elements == L.elements:
            return f.v
        return f.on(L).v
    if isinstance(f, dict):
        return LatticeFn(L, f).v
    return LatticeFn.from_list(L, f).v


def _adm_masks(L: Lattice) -> list[int]:
    out = []
    for x in range(L.n):
        m = 0
        for a in L.adm_idx[x]:
            m |= 1 << a
        out.append(m)
    return out


def _coex_masks(L: Lattice) -> list[int]:
    out = []
    for x in range(L.n):
        m = 0
        for p in L.coex_idx[x]:
            m |= 1 << p
        out.append(m)
    return out


def _gains(L: Lattice, v, x: int, cands) -> list[tuple[int, Fraction]]:
    jn = L.jn[x]
    base = v[x]
    return [(a, v[jn[a]] - base) for a in cands]


def _bad_mask(gains, t) -> int:
    m = 0
    for a, g in gains:
        if g < t:
            m |= 1 << a
    return m


# ----------------------------------------------------------------------
# downward / upward / bidirectional


def _steps(L: Lattice, y: int, literal: bool) -> tuple[int, ...]:
    """Admissible ``b`` for ``Y``; unless ``literal``, only those with ``Y ≺ Y ∨ b``."""
    if literal:
        return L.adm_idx[y]
    cov, jy = L.cover_set, L.jn[y]
    return tuple(b for b in L.adm_idx[y] if (y, jy[b]) in cov)


def _downward_violation(L: Lattice, v, strict: bool, literal: bool = False):
    """First (X, Y, b, lhs) violating the downward inequality, or ``None``."""
    jn, down = L.jn, L.down
    adm_m = _adm_masks(L)
    ji = L.ji
    # reroutes b′ ≡ b mod Y, grouped by the join they must reach
    for x in range(L.n):
        gains = _gains(L, v, x, L.adm_idx[x])
        cache: dict[Fraction, int] = {}
        for y in bits(L.up[x]):
            vy = v[y]
            jy = jn[y]
            for b in _steps(L, y, literal):
                yb = jy[b]
                lhs = v[yb] - vy
                bad = cache.get(lhs)
                if bad is None:
                    bad = cache[lhs] = _bad_mask(gains, lhs)
                ok = False
                for c in ji:
                    if jy[c] != yb:
                        continue
                    below = down[c]
                    if below & bad:
                        continue
                    if strict and not below & adm_m[x]:
                        continue
                    ok = True
                    break
                if not ok:
                    return x, y, b, lhs
    return None


def downward_dr_holds_at(
    L: Lattice, f, X, Y, b, *, strict_nonvacuous: bool = False, literal: bool = False
) -> bool:
    """Whether the downward inequality can be met for this one ``(X, Y, b)``."""
    v = _fn(L, f)
    x, y, bb = L.index(X), L.index(Y), L.index(b)
    if not L.le(x, y) or bb not in _steps(L, y, literal):
        raise ValueError("need X ≤ Y and b admissible for Y")
    yb = L.jn[y][bb]
    lhs = v[yb] - v[y]
    adm_x = L.adm_idx[x]
    for c in L.ji:
        if L.jn[y][c] != yb:
            continue
        below = [a for a in adm_x if L.le(a, c)]
        if strict_nonvacuous and not below:
            continue
        if all(lhs <= v[L.jn[x][a]] - v[x] for a in below):
            return True
    return False


def check_downward_dr(
    L: Lattice, f, strict_nonvacuous: bool = False, literal: bool = False
) -> AxiomReport:
    """For all ``X ≤ Y`` and ``b ∈ adm(Y)`` with ``Y ≺ Y∨b``, some
    join-irreducible ``b′ ≡ b mod Y`` satisfies
    ``f(Y∨b) − f(Y) ≤ f(X∨a) − f(X)`` for every ``a ∈ adm(X)`` below it.

    With ``strict_nonvacuous`` the chosen ``b′`` must have at least one such
    ``a``.  ``literal=True`` also quantifies over admissible ``b`` whose join
    with ``Y`` is not a cover; the two coincide on modular lattices, but on
    lower semimodular ones the literal form rejects genuine rank functions.
    """
    v = _fn(L, f)
    rep = AxiomReport("downward-dr")
    hit = _downward_violation(L, v, strict_nonvacuous, literal)
    if hit is None:
        return rep.add("downward", True)
    x, y, b, lhs = hit
    e = L.elements
    return rep.add("downward", False, X=e[x], Y=e[y], b=e[b], lhs=lhs)


def check_upward_dr(
    L: Lattice, f, strict_nonvacuous: bool = False, literal: bool = False
) -> AxiomReport:
    """Downward DR-submodularity on the order-reversed lattice.  Witness
    elements refer to that reversed order (``X`` is the larger element in
    the original lattice)."""
    D = L.dual
    rep = check_downward_dr(D, _fn(L, f), strict_nonvacuous, literal)
    rep.axiom = "upward-dr"
    rep.clauses[0].id = "upward"
    return rep


def check_bidirectional_dr(
    L: Lattice, f, strict_nonvacuous: bool = False, literal: bool = False
) -> AxiomReport:
    rep = AxiomReport("bidirectional-dr")
    rep.extend(check_downward_dr(L, f, strict_nonvacuous, literal))
    rep.extend(check_upward_dr(L, f, strict_nonvacuous, literal))
    return rep


# ----------------------------------------------------------------------
# other submodularity notions


def check_lattice_submodular(L: Lattice, f) -> AxiomReport:
    """``f(X ∨ Y) + f(X ∧ Y) ≤ f(X) + f(Y)`` for every pair."""
    v = _fn(L, f)
    jn, mt = L.jn, L.mt
    rep = AxiomReport("lattice-submodular")
    for x in range(L.n):
        for y in range(x + 1, L.n):
            lhs = v[x] + v[y]
            rhs = v[jn[x][y]] + v[mt[x][y]]
            if rhs > lhs:
                e = L.elements
                return rep.add("submodular", False, X=e[x], Y=e[y], sum=lhs, join_plus_meet=rhs)
    return rep.add("submodular", True)


def check_strong_dr(L: Lattice, f) -> AxiomReport:
    """``f(Y∨a) − f(Y) ≤ f(X∨a̲) − f(X)`` for all ``X ≤ Y``, ``a ∈ adm(Y)``
    and every ``a̲ ≤ a`` admissible for ``X``."""
    v = _fn(L, f)
    jn, down = L.jn, L.down
    rep = AxiomReport("strong-dr")
    for x in range(L.n):
        gains = _gains(L, v, x, L.adm_idx[x])
        for y in bits(L.up[x]):
            for a in L.adm_idx[y]:
                lhs = v[jn[y][a]] - v[y]
                bad = _bad_mask(gains, lhs) & down[a]
                if bad:
                    au = next(bits(bad))
                    e = L.elements
                    return rep.add("strong", False, X=e[x], Y=e[y], a=e[a], a_under=e[au], lhs=lhs,
                                   rhs=v[jn[x][au]] - v[x])
    return rep.add("strong", True)


def _prime_violation(L: Lattice, v, require_leq: bool):
    jn, down = L.jn, L.down
    coex_m = _coex_masks(L)
    for x in range(L.n):
        gains = _gains(L, v, x, L.coex_idx[x])
        ys = bits(L.up[x]) if require_leq else range(L.n)
        for y in ys:
            for q in L.coex_idx[y]:
                yq = jn[y][q]
                lhs = v[yq] - v[y]
                bad = _bad_mask(gains, lhs)
                ok = False
                for z in range(L.n):
                    if jn[z][y] != yq:
                        continue
                    below = down[z]
                    if below & coex_m[x] and not below & bad:
                        ok = True
                        break
                if not ok:
                    return x, y, q, lhs, bad & down[yq]
    return None


def check_downward_dr_prime(L: Lattice, f, require_leq: bool = True) -> AxiomReport:
    """The co-extreme variant: for ``X ≤ Y`` and ``q ∈ coex(Y)``,
    ``f(Y∨q) − f(Y)`` is at most the max over ``Z ≡ q mod Y`` (with some
    ``p ∈ coex(X)`` below ``Z``) of the min of ``f(X∨p) − f(X)`` over those
    ``p``.  ``require_leq=False`` drops the ``X ≤ Y`` restriction."""
    v = _fn(L, f)
    rep = AxiomReport("downward-dr-prime")
    hit = _prime_violation(L, v, require_leq)
    if hit is None:
        return rep.add("downward-prime", True)
    x, y, q, lhs, bad = hit
    e = L.elements
    w = dict(X=e[x], Y=e[y], q=e[q], lhs=lhs, coex_X=list(L.names(L.coex_idx[x])))
    if bad:
        p = next(bits(bad))
        w["p"] = e[p]
        w["gain_p"] = v[L.jn[x][p]] - v[x]
    return rep.add("downward-prime", False, **w)


def check_monotone(L: Lattice, f) -> AxiomReport:
    v = _fn(L, f)
    rep = AxiomReport("monotone")
    for i, j in sorted(L.cover_pairs):
        if v[i] > v[j]:
            return rep.add("monotone", False, X=L.elements[i], Y=L.elements[j])
    return rep.add("monotone", True)


def curvature(L: Lattice, f) -> Fraction:
    """Least ``c ∈ [0, 1]`` with ``f(X∨a) − f(X) ≥ (1 − c) f(a̲)`` for every
    ``X``, ``a ∈ adm(X)`` and atom ``a̲ ≤ a``.  Constraints with
    ``f(a̲) = 0`` say nothing and are skipped."""
    v = _fn(L, f)
    mono = check_monotone(L, v)
    if not mono:
        w = mono.clauses[0].witness
        raise NotMonotone(f"f decreases from {w['X']!r} to {w['Y']!r}")
    atoms = L.upper_covers[L.bot]
    base = v[L.bot]
    best: Fraction | None = None
    for x in range(L.n):
        for a in L.adm_idx[x]:
            gain = v[L.jn[x][a]] - v[x]
            for au in atoms:
                if not L.le(au, a):
                    continue
                w = v[au] - base
                if w <= 0:
                    continue
                ratio = gain / w
                if best is None or ratio < best:
                    best = ratio
    if best is None:
        return Fraction(0)
    c = 1 - best
    return min(max(c, Fraction(0)), Fraction(1))


# ----------------------------------------------------------------------
# batch checks for many integer-valued functions at once


class BatchDR:
    """Downward DR-submodularity of many integer functions on one lattice.

    ``check(F)`` takes an ``(m, n)`` integer array of function values and
    returns a boolean vector.  The quantifier structure is unrolled once
    per lattice into index arrays, so each function costs a few vector
    operations.
    """

    def __init__(self, L: Lattice, strict_nonvacuous: bool = False, literal: bool = False):
        self.L = L
        groups = []  # (x, y, b, candidate b′ list)
        for x in range(L.n):
            for y in bits(L.up[x]):
                for b in _steps(L, y, literal):
                    yb = L.jn[y][b]
                    cands = []
                    for c in L.ji:
                        if L.jn[y][c] != yb:
                            continue
                        under = [a for a in L.adm_idx[x] if L.le(a, c)]
                        if strict_nonvacuous and not under:
                            continue
                        cands.append(under)
                    groups.append((x, y, b, yb, cands))
        self.groups = groups
        # flattened: every (group, candidate, a) triple
        c_idx, xa, xs = [], [], []
        cand_group = []
        k = 0
        empty_cands = []
        for gi, (x, y, b, yb, cands) in enumerate(groups):
            for under in cands:
                cand_group.append(gi)
                if not under:
                    empty_cands.append(k)
                for a in under:
                    c_idx.append(k)
                    xa.append(L.jn[x][a])
                    xs.append(x)
                k += 1
        self.n_cands = k
        self.cand_group = np.array(cand_group, dtype=np.intp)
        self.c_idx = np.array(c_idx, dtype=np.intp)
        self.xa = np.array(xa, dtype=np.intp)
        self.xs = np.array(xs, dtype=np.intp)
        self.g_y = np.array([g[1] for g in groups], dtype=np.intp)
        self.g_yb = np.array([g[3] for g in groups], dtype=np.intp)

    def check(self, F) -> np.ndarray:
        F = np.asarray(F, dtype=np.int64)
        m = F.shape[0]
        if not len(self.groups):
            return np.ones(m, dtype=bool)
        lhs = F[:, self.g_yb] - F[:, self.g_y]  # (m, groups)
        gains = F[:, self.xa] - F[:, self.xs]  # (m, triples)
        need = lhs[:, self.cand_group[self.c_idx]]  # lhs of the triple's group
        bad = gains < need
        cand_bad = np.zeros((m, self.n_cands), dtype=bool)
        if bad.size:
            rows, cols = np.nonzero(bad)
            cand_bad[rows, self.c_idx[cols]] = True
        cand_ok = ~cand_bad
        group_ok = np.zeros((m, len(self.groups)), dtype=bool)
        if self.n_cands:
            rows, cols = np.nonzero(cand_ok)
            group_ok[rows, self.cand_group[cols]] = True
        # a group with no admissible reroute fails outright
        return np.all(group_ok, axis=1)
