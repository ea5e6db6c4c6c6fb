"""Slow, independent reference implementations used to grade the library.

Nothing here touches the package's precomputed tables: orders come from
a transitive closure of the raw cover list, joins from scanning upper
bounds, and matroids from plain set systems.
"""

from itertools import combinations, product


def order_from_covers(elements, covers):
    up = {x: {x} for x in elements}
    changed = True
    while changed:
        changed = False
        for a, b in covers:
            for x in elements:
                if a in up[x] and not up[b] <= up[x]:
                    up[x] |= up[b]
                    changed = True
    return {(x, y) for x in elements for y in up[x]}


class Poset:
    def __init__(self, elements, covers):
        self.elements = list(elements)
        self.le = order_from_covers(self.elements, list(covers))

    def leq(self, x, y):
        return (x, y) in self.le

    def join(self, x, y):
        ubs = [z for z in self.elements if self.leq(x, z) and self.leq(y, z)]
        least = [z for z in ubs if all(self.leq(z, w) for w in ubs)]
        assert len(least) == 1
        return least[0]

    def meet(self, x, y):
        lbs = [z for z in self.elements if self.leq(z, x) and self.leq(z, y)]
        most = [z for z in lbs if all(self.leq(w, z) for w in lbs)]
        assert len(most) == 1
        return most[0]

    def height(self, x):
        # longest chain from the bottom, by recursion over strict lower elements
        below = [z for z in self.elements if self.leq(z, x) and z != x]
        return 0 if not below else 1 + max(self.height(z) for z in below)

    def covers(self, x, y):
        return (self.leq(x, y) and x != y and not any(
            z not in (x, y) and self.leq(x, z) and self.leq(z, y) for z in self.elements))

    def is_ideal(self, S):
        # a non-empty down-set; join closure is not required
        if not S:
            return False
        for x in S:
            for z in self.elements:
                if self.leq(z, x) and z not in S:
                    return False
        return True

    def is_supermatroid(self, S):
        if not self.is_ideal(S):
            return False
        for x in self.elements:
            below = [s for s in S if self.leq(s, x)]
            maxl = [s for s in below if not any(t != s and self.leq(s, t) for t in below)]
            if len({self.height(s) for s in maxl}) > 1:
                return False
        return True


def supermatroids_brute(P: Poset):
    """Every supermatroid, by scanning all subsets (fine up to ~16 elements)."""
    out = []
    els = P.elements
    for bitsel in product((0, 1), repeat=len(els)):
        S = {e for e, b in zip(els, bitsel) if b}
        if P.is_supermatroid(S):
            out.append(frozenset(S))
    return out


def set_matroids(n):
    """Classical matroids on {0..n-1} as independence families (I1-I3)."""
    ground = range(n)
    subsets = [frozenset(c) for k in range(n + 1) for c in combinations(ground, k)]
    out = []
    for pick in product((0, 1), repeat=len(subsets)):
        fam = {s for s, b in zip(subsets, pick) if b}
        if frozenset() not in fam:
            continue
        if any(t not in fam for s in fam for t in subsets if t <= s):
            continue
        ok = all(
            any(a | {e} in fam for e in b - a)
            for a in fam for b in fam if len(a) < len(b)
        )
        if ok:
            out.append(frozenset(fam))
    return out


def gf2_rank(vectors):
    rows = [int("".join(map(str, v)), 2) for v in vectors]
    rank = 0
    while rows:
        pivot = max(rows)
        if pivot == 0:
            break
        rows.remove(pivot)
        top = pivot.bit_length() - 1
        rows = [r ^ pivot if (r >> top) & 1 else r for r in rows]
        rank += 1
    return rank


def span_gf2(vectors, n):
    out = {tuple([0] * n)}
    for v in vectors:
        out |= {tuple((a + b) % 2 for a, b in zip(u, v)) for u in out}
    return frozenset(out)


def gaussian_count(n, k, q):
    """Number of k-subspaces of F_q^n, counted as ordered bases / GL_k."""
    num = den = 1
    for i in range(k):
        num *= q ** n - q ** i
        den *= q ** k - q ** i
    return num // den
