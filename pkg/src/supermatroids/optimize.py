"""Greedy maximization over lattices, the valuated-supermatroid check and
the exact oracles used to grade the greedy output."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterator, Sequence

from .core import AxiomReport, LatticeFn, fmt_fraction
from .drsubmod import _fn, check_bidirectional_dr, check_monotone, check_strong_dr, curvature
from .errors import EmptyFeasibleSet, PreconditionViolated
from .exchange import exchange_search
from .lattice import Lattice, classify
from .supermatroid import _ideal_mask, iter_supermatroid_masks, rank_values


@dataclass
class GreedyStep:
    chosen: str
    candidates: int
    value: Fraction

    def to_json(self) -> dict:
        return {"chosen": self.chosen, "candidates": self.candidates, "value": fmt_fraction(self.value)}


@dataclass
class GreedyTrace:
    steps: list[GreedyStep] = field(default_factory=list)
    final: str = ""
    final_value: Fraction = Fraction(0)

    def to_json(self) -> dict:
        return {
            "steps": [s.to_json() for s in self.steps],
            "final": self.final,
            "final_value": fmt_fraction(self.final_value),
        }


def _greedy(L: Lattice, v, allowed: Callable[[int], bool], k: int | None) -> GreedyTrace:
    x = L.bot
    trace = GreedyTrace()
    while k is None or len(trace.steps) < k:
        best = None
        count = 0
        for a in L.adm_idx[x]:
            xa = L.jn[x][a]
            if not allowed(xa):
                continue
            count += 1
            # strict comparison keeps the canonically least maximizer
            if best is None or v[xa] > v[best[1]]:
                best = (a, xa)
        if best is None:
            if k is None:
                break
            raise PreconditionViolated("adm(X) non-empty", f"no admissible element at {L.elements[x]!r}")
        x = best[1]
        trace.steps.append(GreedyStep(L.elements[best[0]], count, v[x]))
    trace.final = L.elements[x]
    trace.final_value = v[x]
    return trace


def greedy_valuated(L: Lattice, omega, k: int) -> GreedyTrace:
    """``k`` steps of ``X ← X ∨ a`` with ``a`` maximizing ``ω(X ∨ a)`` over
    ``adm(X)``, starting from ``⊥``."""
    flags = classify(L)
    if not (flags.modular and flags.atomic):
        raise PreconditionViolated("atomic modular", "greedy_valuated needs an atomic modular lattice")
    if not 0 <= k <= L.hgt[L.tp]:
        raise PreconditionViolated("k ≤ height", f"k = {k} outside [0, {L.hgt[L.tp]}]")
    return _greedy(L, _fn(L, omega), lambda _x: True, k)


def greedy_constrained(L: Lattice, f, I) -> GreedyTrace:
    """Grow from ``⊥`` by the best admissible ``a`` with ``X ∨ a ∈ I`` until
    no feasible extension is left; the result is a base of ``I``."""
    m = _ideal_mask(L, I)
    return _greedy(L, _fn(L, f), lambda x: (m >> x) & 1 == 1, None)


def brute_force_max(L: Lattice, f, feasible: Callable[[str], bool] | None = None) -> tuple[str, Fraction]:
    """Exact maximizer over the feasible elements, least in canonical order on ties."""
    v = _fn(L, f)
    best = None
    for i, x in enumerate(L.elements):
        if feasible is not None and not feasible(x):
            continue
        if best is None or v[i] > v[best]:
            best = i
    if best is None:
        raise EmptyFeasibleSet("no feasible element")
    return L.elements[best], v[best]


def check_valuated(L: Lattice, omega, k: int | None = None, *, permissive: bool = False,
                   literal: bool = False) -> AxiomReport:
    """The valuated exchange condition for every ``X, Y`` of height ``k``
    (every height when ``k`` is None) and ``X̊ ≺ X`` above ``X ∧ Y``.

    Atomic modular lattices only unless ``permissive``; the universal over
    ``y`` follows :func:`supermatroids.exchange.exchange_search`.
    """
    flags = classify(L)
    if not flags.modular or (not flags.atomic and not permissive):
        raise PreconditionViolated("atomic modular", "check_valuated needs an atomic modular lattice")
    v = _fn(L, omega)
    rep = AxiomReport("valuated")
    ks = [k] if k is not None else sorted(L.by_height)
    e = L.elements
    for h in ks:
        level = L.by_height.get(h, [])
        in_level = set(level)
        for x in level:
            for y in level:
                xy = L.mt[x][y]
                for xo in L.lower_covers[x]:
                    if not L.le(xy, xo):
                        continue
                    lhs = v[x] + v[y]
                    wit = exchange_search(
                        L, x, y, xo,
                        family=in_level.__contains__,
                        accept=lambda vu, yp, xo=xo, lhs=lhs: lhs <= v[L.jn[xo][vu]] + v[yp],
                        literal=literal,
                    )
                    if wit is None:
                        return rep.add("valuated", False, k=h, X=e[x], Y=e[y], X_ring=e[xo])
    return rep.add("valuated", True)


@dataclass
class ApproxReport:
    greedy: str
    greedy_value: Fraction
    optimum: str
    optimum_value: Fraction
    ratio: Fraction
    curvature: Fraction | None = None

    def to_json(self) -> dict:
        return {
            "greedy": self.greedy,
            "greedy_value": fmt_fraction(self.greedy_value),
            "optimum": self.optimum,
            "optimum_value": fmt_fraction(self.optimum_value),
            "ratio": fmt_fraction(self.ratio),
            "curvature": None if self.curvature is None else fmt_fraction(self.curvature),
        }


def approximation_report(L: Lattice, f, I, *, with_curvature: bool = True) -> ApproxReport:
    """Greedy value against the exact optimum over ``I``.  The ratio is 1
    when both are zero.  Curvature is filled in only for monotone
    bidirectional DR-submodular ``f``."""
    m = _ideal_mask(L, I)
    v = _fn(L, f)
    tr = greedy_constrained(L, v, m)
    opt, opt_v = brute_force_max(L, v, lambda x: (m >> L.index(x)) & 1 == 1)
    g = tr.final_value
    if opt_v == 0:
        ratio = Fraction(1) if g == 0 else Fraction(0)
    else:
        ratio = g / opt_v
    c = None
    if with_curvature and check_monotone(L, v) and check_bidirectional_dr(L, v):
        c = curvature(L, v)
    return ApproxReport(tr.final, g, opt, opt_v, ratio, c)


# ----------------------------------------------------------------------
# test-function generators


def concave_of_height(L: Lattice, increments: Sequence) -> LatticeFn:
    """``g(|X|)`` where ``g(0) = 0`` and ``g(h) − g(h−1) = increments[h−1]``;
    the increments must be non-negative and non-increasing (the last one is
    repeated if the lattice is taller)."""
    inc = [Fraction(x) for x in increments]
    if not inc:
        raise ValueError("need at least one increment")
    if any(a < 0 for a in inc) or any(a < b for a, b in zip(inc, inc[1:])):
        raise ValueError("increments must be non-negative and non-increasing")
    g = [Fraction(0)]
    for h in range(L.hgt[L.tp]):
        g.append(g[-1] + inc[min(h, len(inc) - 1)])
    return LatticeFn.from_list(L, [g[h] for h in L.hgt])


def _random_concave(rng: random.Random, top: int) -> list[int]:
    inc = sorted((rng.randint(0, 4) for _ in range(top)), reverse=True)
    g = [0]
    for a in inc:
        g.append(g[-1] + a)
    return g


def random_strong_dr_functions(L: Lattice, count: int, seed: int = 0, *, terms: int = 3,
                               max_tries: int = 100_000) -> Iterator[LatticeFn]:
    """Seeded rejection sampling of monotone strong DR-submodular integer
    functions.

    Each candidate is a sum of ``g_i(r_i(X))`` with ``r_i`` the rank of a
    random supermatroid (the free one gives the height) and ``g_i`` a
    random concave increment sequence.  Candidates are kept only when
    :func:`check_monotone` and :func:`check_strong_dr` pass, and duplicates
    are dropped.
    """
    rng = random.Random(seed)
    masks = list(iter_supermatroid_masks(L, force=True))
    ranks = [rank_values(L, m) for m in masks]
    top = L.hgt[L.tp]
    seen = set()
    made = tries = 0
    while made < count:
        tries += 1
        if tries > max_tries:
            raise RuntimeError(f"only {made} of {count} functions accepted after {max_tries} tries")
        vals = [0] * L.n
        for _ in range(rng.randint(1, terms)):
            r = rng.choice(ranks)
            g = _random_concave(rng, top)
            for i in range(L.n):
                vals[i] += g[r[i]]
        key = tuple(vals)
        if key in seen:
            continue
        if not check_monotone(L, vals) or not check_strong_dr(L, vals):
            continue
        seen.add(key)
        made += 1
        yield LatticeFn.from_list(L, vals)


__all__ = [
    "ApproxReport",
    "GreedyStep",
    "GreedyTrace",
    "approximation_report",
    "brute_force_max",
    "check_valuated",
    "concave_of_height",
    "greedy_constrained",
    "greedy_valuated",
    "random_strong_dr_functions",
]
