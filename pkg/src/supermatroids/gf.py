"""Arithmetic in GF(2), GF(3) and GF(4), and row reduction over them.

GF(4) is {0, 1, w, w+1} encoded as 0, 1, 2, 3; addition is XOR on that
encoding and multiplication uses the explicit table below.
"""

from __future__ import annotations

from itertools import product as iproduct

from .errors import NotPrimePower

_GF4_MUL = (
    (0, 0, 0, 0),
    (0, 1, 2, 3),
    (0, 2, 3, 1),
    (0, 3, 1, 2),
)


class GF:
    """One of the three supported small fields."""

    def __init__(self, q: int):
        if q not in (2, 3, 4):
            raise NotPrimePower(f"unsupported field order {q}; expected 2, 3 or 4")
        self.q = q
        if q == 4:
            self.add = lambda a, b: a ^ b
            self.sub = self.add
            self.mul = lambda a, b: _GF4_MUL[a][b]
        else:
            self.add = lambda a, b: (a + b) % q
            self.sub = lambda a, b: (a - b) % q
            self.mul = lambda a, b: (a * b) % q
        self.inv = {a: b for a in range(1, q) for b in range(1, q) if self.mul(a, b) == 1}

    def __repr__(self) -> str:
        return f"GF({self.q})"

    def rref(self, rows):
        """Reduced row echelon form with zero rows dropped."""
        m = [list(r) for r in rows]
        if not m:
            return []
        ncols = len(m[0])
        out = []
        r = 0
        for c in range(ncols):
            piv = next((i for i in range(r, len(m)) if m[i][c]), None)
            if piv is None:
                continue
            m[r], m[piv] = m[piv], m[r]
            s = self.inv[m[r][c]]
            m[r] = [self.mul(s, v) for v in m[r]]
            for i in range(len(m)):
                if i != r and m[i][c]:
                    f = m[i][c]
                    m[i] = [self.sub(a, self.mul(f, b)) for a, b in zip(m[i], m[r])]
            r += 1
            if r == len(m):
                break
        for row in m[:r]:
            out.append(tuple(row))
        return out

    def rank(self, rows) -> int:
        return len(self.rref(rows))

    def span(self, rows, n: int) -> frozenset:
        """Every vector in the row space of ``rows`` (length-``n`` tuples)."""
        rows = [tuple(r) for r in rows]
        vecs = set()
        for coeffs in iproduct(range(self.q), repeat=len(rows)):
            v = [0] * n
            for c, row in zip(coeffs, rows):
                if c:
                    v = [self.add(a, self.mul(c, b)) for a, b in zip(v, row)]
            vecs.add(tuple(v))
        return frozenset(vecs)

    def matvec(self, A, v):
        """``A v`` for a matrix given as a list of rows."""
        out = []
        for row in A:
            s = 0
            for a, b in zip(row, v):
                s = self.add(s, self.mul(a, b))
            out.append(s)
        return tuple(out)

    def dot(self, u, v) -> int:
        s = 0
        for a, b in zip(u, v):
            s = self.add(s, self.mul(a, b))
        return s


def rref_matrices(field: GF, k: int, n: int):
    """Every k×n matrix in reduced row echelon form with full row rank."""
    from itertools import combinations

    q = field.q
    for pivots in combinations(range(n), k):
        free = [(i, c) for i in range(k) for c in range(pivots[i] + 1, n) if c not in pivots]
        for vals in iproduct(range(q), repeat=len(free)):
            m = [[0] * n for _ in range(k)]
            for i, p in enumerate(pivots):
                m[i][p] = 1
            for (i, c), v in zip(free, vals):
                m[i][c] = v
            yield tuple(tuple(r) for r in m)


def gaussian_binomial(n: int, k: int, q: int) -> int:
    if k < 0 or k > n:
        return 0
    num = den = 1
    for i in range(k):
        num *= q ** (n - i) - 1
        den *= q ** (i + 1) - 1
    return num // den
