"""Round-robin verification of the main theorems on whole lattices.

Each suite enumerates every relevant object on a lattice (ideals, rank
candidates, supermatroids, functions) and records a discrepancy whenever
a theorem's conclusion fails under its hypotheses.  Suites never stop at
the first discrepancy; the first few are kept as witnesses.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations_with_replacement
from typing import Any, Callable

from .builders import corpus
from .core import fmt_fraction
from .drsubmod import (
    check_bidirectional_dr,
    check_downward_dr_prime,
    check_lattice_submodular,
    check_monotone,
    check_upward_dr,
    curvature,
)
from .errors import NoWitness, PreconditionViolated
from .exchange import exchange_triples, verify_strong_exchange, verify_strong_exchange_atomic
from .lattice import Lattice, bits, classify
from .lemmas import check_matching_suite, check_strengthened_dr, run_lattice_lemmas
from .optimize import (
    approximation_report,
    brute_force_max,
    check_valuated,
    concave_of_height,
    greedy_valuated,
    random_strong_dr_functions,
)
from .supermatroid import (
    RANK_VARIANTS,
    BaseFamily,
    check_base,
    check_dependence,
    check_height,
    check_independence,
    check_rank,
    complement,
    downward_closure,
    dual_rank_formula,
    dual_supermatroid,
    is_supermatroid_mask,
    iter_ideal_masks,
    iter_r12_functions,
    iter_supermatroid_masks,
    maximal_mask,
    rank_values,
)

MAX_KEPT = 20


@dataclass
class SuiteResult:
    suite: str
    lattice: str
    checked: int = 0
    discrepancies: list[dict[str, Any]] = field(default_factory=list)
    stats: dict[str, Any] = field(default_factory=dict)
    total_discrepancies: int = 0

    @property
    def passed(self) -> bool:
        return self.total_discrepancies == 0

    def note(self, theorem: str, **detail) -> None:
        self.total_discrepancies += 1
        if len(self.discrepancies) < MAX_KEPT:
            self.discrepancies.append({"theorem": theorem, **detail})

    def to_json(self) -> dict:
        stats = {k: fmt_fraction(v) if isinstance(v, Fraction) else v for k, v in self.stats.items()}
        return {
            "suite": self.suite,
            "lattice": self.lattice,
            "passed": self.passed,
            "checked": self.checked,
            "total_discrepancies": self.total_discrepancies,
            "discrepancies": self.discrepancies,
            "stats": stats,
        }


def _label(L: Lattice, name: str | None) -> str:
    return name or f"lattice({L.n} elements)"


def _ideal_from_values(L: Lattice, v) -> int:
    m = 0
    for i in range(L.n):
        if v[i] == L.hgt[i]:
            m |= 1 << i
    return m


# ----------------------------------------------------------------------
# axiom systems


def modular_equivalence(L: Lattice, name: str | None = None, force: bool = False) -> SuiteResult:
    """On a modular lattice, for every non-empty ideal: height axiom ⇔ I2 ⇔
    I2l ⇔ I2w ⇔ base axiom on its maximal elements ⇔ dependence axiom on its
    complement; every supermatroid rank passes every rank variant; and every
    integer function with (R1), (R2) passes a rank variant exactly when its
    independent elements form a supermatroid whose rank is that function."""
    if not classify(L).modular:
        raise PreconditionViolated("modular", "modular-equivalence needs a modular lattice")
    res = SuiteResult("modular-equivalence", _label(L, name))
    e = L.elements
    n_ideals = n_super = 0
    for m in iter_ideal_masks(L, force):
        n_ideals += 1
        h = is_supermatroid_mask(L, m)
        n_super += h
        verdicts = {
            "I2": check_independence(L, m, "I2").verdict,
            "I2l": check_independence(L, m, "I2l").verdict,
            "I2w": check_independence(L, m, "I2w").verdict,
            "base": check_base(L, maximal_mask(L, m)).verdict,
            "dependence": check_dependence(L, complement(L, m)).verdict,
        }
        for k, val in verdicts.items():
            if val != h:
                res.note(f"height ⇔ {k}", ideal=list(L.names(bits(m))), height=h, other=val)
        if h:
            r = rank_values(L, m)
            for var in RANK_VARIANTS:
                if not check_rank(L, r, var).verdict:
                    res.note(f"supermatroid rank satisfies {var}", ideal=list(L.names(bits(m))))
        res.checked += 1
    n_fns = 0
    for v in iter_r12_functions(L):
        n_fns += 1
        im = _ideal_from_values(L, v)
        target = is_supermatroid_mask(L, im) and rank_values(L, im) == v
        for var in RANK_VARIANTS:
            got = check_rank(L, v, var).verdict
            if got != target:
                res.note(f"{var} ⇔ supermatroid rank", values=dict(zip(e, v)), rank_axiom=got,
                         supermatroid_rank=target)
        res.checked += 1
    res.stats.update(ideals=n_ideals, supermatroids=n_super, r12_functions=n_fns)
    return res


def lattice_theorems(L: Lattice, name: str | None = None, force: bool = False) -> SuiteResult:
    """The theorems that need less than modularity, each applied when its
    hypothesis holds: height ⇔ I2 and I1+I2w ⇒ B1+B2 (any lattice);
    B1+B2 ⇒ I1+I2w, equal-height bases and supermatroid rank ⇒ R3 (lower
    semimodular); R1+R2+R3 ⇒ supermatroid (upper semimodular); the Sano
    rank variant in both directions, R3s ⇒ supermatroid and the dependence
    theorem (lower locally modular)."""
    fl = classify(L)
    res = SuiteResult("lattice-theorems", _label(L, name))
    e = L.elements
    for m in iter_ideal_masks(L, force):
        ideal = list(L.names(bits(m)))
        h = is_supermatroid_mask(L, m)
        if check_independence(L, m, "I2").verdict != h:
            res.note("height ⇔ I2", ideal=ideal, height=h)
        i2w = check_independence(L, m, "I2w").verdict
        b2 = check_base(L, maximal_mask(L, m)).clause("B2").verdict
        if i2w and not b2:
            res.note("I1+I2w ⇒ B1+B2", ideal=ideal)
        if b2 and not i2w and fl.lower_semimodular:
            res.note("B1+B2 ⇒ I1+I2w", ideal=ideal)
        if h and fl.lower_semimodular:
            r = rank_values(L, m)
            if not check_base(L, maximal_mask(L, m)).verdict:
                res.note("bases share one height", ideal=ideal)
            if not check_rank(L, r, "R3_downward").verdict:
                res.note("supermatroid rank satisfies R3", ideal=ideal)
        if fl.lower_locally_modular:
            if h:
                if not check_rank(L, rank_values(L, m), "R3p_sano").verdict:
                    res.note("supermatroid rank satisfies R3p", ideal=ideal)
                if not check_dependence(L, complement(L, m)).verdict:
                    res.note("supermatroid ⇒ dependence axiom", ideal=ideal)
            if check_dependence(L, complement(L, m)).verdict and not check_independence(L, m, "I2l").verdict:
                res.note("dependence axiom ⇒ I2l", ideal=ideal)
        res.checked += 1
    if fl.lower_locally_modular or fl.upper_semimodular:
        for v in iter_r12_functions(L):
            im = _ideal_from_values(L, v)
            sup = is_supermatroid_mask(L, im)
            vals = dict(zip(e, v))
            if fl.lower_locally_modular:
                if check_rank(L, v, "R3p_sano").verdict and not check_independence(L, im, "I2").verdict:
                    res.note("R3p ⇒ I1+I2", values=vals)
                if check_rank(L, v, "R3s_prime").verdict and not sup:
                    res.note("R3s ⇒ supermatroid", values=vals)
            if fl.upper_semimodular and check_rank(L, v, "R3_downward").verdict and not sup:
                res.note("R3 ⇒ supermatroid", values=vals)
            res.checked += 1
    res.stats.update(flags=fl.as_dict())
    return res


def dual_rank(L: Lattice, name: str | None = None, bar: dict | None = None,
              force: bool = False) -> SuiteResult:
    """The dual rank formula against the rank of the dual supermatroid, at
    every element, for every supermatroid."""
    res = SuiteResult("dual-rank", _label(L, name))
    for m in iter_supermatroid_masks(L, force):
        r = rank_values(L, m)
        target, rstar = dual_rank_formula(L, r, bar)
        D, Bstar = dual_supermatroid(L, BaseFamily(L, mask=maximal_mask(L, m)), bar)
        if not check_base(D, Bstar).verdict:
            res.note("dual bases satisfy the base axiom", bases=list(L.names(bits(maximal_mask(L, m)))))
        direct = rank_values(D, downward_closure(D, Bstar.mask))
        formula = [rstar(x) for x in D.elements]
        if direct != formula:
            x = next(D.elements[i] for i in range(D.n) if direct[i] != formula[i])
            res.note("r*(bar X) = r(X) + |⊤| − |X| − r(⊤)", element=x,
                     bases=list(L.names(bits(maximal_mask(L, m)))))
        res.checked += 1
    return res


# ----------------------------------------------------------------------
# exchange and optimization


def _boolean_reduction(L: Lattice, bm: int, wit) -> bool:
    """On a Boolean lattice the witness is the classical exchange:
    ``w = X − X̊``, and each record has ``v = y``, ``X − w + v`` and
    ``Y + w − v`` bases."""
    x, y, xo = L.index(wit.X), L.index(wit.Y), L.index(wit.X_ring)
    w = L.index(wit.w)
    jn = L.jn
    for rec in wit.per_underline_w:
        yp = L.index(rec.Y_prime)
        if L.index(rec.w_under) != w:
            return False
        for r in rec.per_y:
            v = L.index(r.v)
            if r.v != r.y or not L.le(v, y) or L.le(v, x):
                return False
            if not (bm >> jn[xo][v]) & 1 or not (bm >> yp) & 1:
                return False
            if jn[yp][v] != jn[y][w] or L.le(v, yp) or not L.le(w, yp):
                return False
    return True


def strong_exchange(L: Lattice, name: str | None = None, force: bool = False) -> SuiteResult:
    """The exchange witness exists for every admissible triple of every
    supermatroid; the atomic form on atomic lattices; the base axiom holds
    whenever every triple has a witness; classical form on Boolean lattices."""
    fl = classify(L)
    if not fl.modular:
        raise PreconditionViolated("modular", "strong exchange needs a modular lattice")
    boolean = fl.distributive and fl.atomic
    res = SuiteResult("strong-exchange", _label(L, name))
    triples = 0
    for m in iter_supermatroid_masks(L, force):
        bm = maximal_mask(L, m)
        bases = list(L.names(bits(bm)))
        all_ok = True
        for X, Y, Xo in exchange_triples(L, bm):
            triples += 1
            try:
                wit = verify_strong_exchange(L, bm, X, Y, Xo)
            except NoWitness:
                all_ok = False
                res.note("strong exchange", bases=bases, X=X, Y=Y, X_ring=Xo)
                continue
            if fl.atomic:
                try:
                    verify_strong_exchange_atomic(L, bm, X, Y, Xo)
                except NoWitness:
                    res.note("atomic strong exchange", bases=bases, X=X, Y=Y, X_ring=Xo)
            if boolean and not _boolean_reduction(L, bm, wit):
                res.note("classical exchange on Boolean lattices", bases=bases, X=X, Y=Y, X_ring=Xo)
        if all_ok and not check_base(L, bm).verdict:
            res.note("strong exchange ⇒ base axiom", bases=bases)
        res.checked += 1
    res.stats.update(triples=triples, boolean=boolean)
    return res


def greedy_valuated_suite(L: Lattice, name: str | None = None, force: bool = False) -> SuiteResult:
    """Every supermatroid rank is valuated and the greedy reaches the best
    value on each height slice."""
    res = SuiteResult("greedy-valuated", _label(L, name))
    top = L.hgt[L.tp]
    for m in iter_supermatroid_masks(L, force):
        r = rank_values(L, m)
        bases = list(L.names(bits(maximal_mask(L, m))))
        if not check_valuated(L, r).verdict:
            res.note("supermatroid rank is valuated", bases=bases)
        for k in range(top + 1):
            tr = greedy_valuated(L, r, k)
            _, best = brute_force_max(L, r, lambda x, k=k: L.height(x) == k)
            if tr.final_value != best:
                res.note("greedy finds a maximizer", bases=bases, k=k,
                         greedy=fmt_fraction(tr.final_value), optimum=fmt_fraction(best))
            res.checked += 1
    return res


def concave_height_functions(L: Lattice, max_increment: int = 3):
    """Every concave-of-height function with integer increments in
    ``[0, max_increment]``, non-increasing, not all zero."""
    top = L.hgt[L.tp]
    for inc in combinations_with_replacement(range(max_increment, -1, -1), top):
        if any(inc):
            yield inc, concave_of_height(L, inc)


def greedy_constrained_suite(L: Lattice, name: str | None = None, n_functions: int = 100,
                             seed: int = 0, force: bool = False) -> SuiteResult:
    """Ratio ≥ 1/2 for sampled monotone strong DR-submodular functions
    under every supermatroid; ratio ≥ 1 − c for every function with a
    curvature (the sampled ones and concave-of-height ones)."""
    fl = classify(L)
    if not fl.modular:
        raise PreconditionViolated("modular", "greedy-constrained needs a modular lattice")
    res = SuiteResult("greedy-constrained", _label(L, name))
    masks = list(iter_supermatroid_masks(L, force))
    worst_half = Fraction(1)
    worst_margin = None
    half = Fraction(1, 2)
    fns = list(random_strong_dr_functions(L, n_functions, seed)) if fl.atomic else []
    for f in fns:
        c = curvature(L, f)
        for m in masks:
            rep = approximation_report(L, f, m, with_curvature=False)
            worst_half = min(worst_half, rep.ratio)
            if rep.ratio < half:
                res.note("ratio ≥ 1/2", values={x: fmt_fraction(y) for x, y in f.values.items()},
                         bases=list(L.names(bits(maximal_mask(L, m)))), ratio=fmt_fraction(rep.ratio))
            if rep.ratio < 1 - c:
                res.note("ratio ≥ 1 − c", curvature=fmt_fraction(c), ratio=fmt_fraction(rep.ratio))
            res.checked += 1
    n_concave = 0
    for inc, f in concave_height_functions(L):
        if not (check_monotone(L, f) and check_bidirectional_dr(L, f)):
            res.note("concave-of-height is monotone bidirectional DR", increments=list(inc))
            continue
        n_concave += 1
        c = curvature(L, f)
        for m in masks:
            rep = approximation_report(L, f, m, with_curvature=False)
            margin = rep.ratio - (1 - c)
            worst_margin = margin if worst_margin is None else min(worst_margin, margin)
            if margin < 0:
                res.note("ratio ≥ 1 − c", increments=list(inc), curvature=fmt_fraction(c),
                         ratio=fmt_fraction(rep.ratio))
            res.checked += 1
    res.stats.update(functions=len(fns), supermatroids=len(masks), seed=seed,
                     worst_ratio=worst_half, concave_functions=n_concave,
                     worst_curvature_margin=worst_margin if worst_margin is not None else "n/a")
    return res


def lemma_suite(L: Lattice, name: str | None = None, force: bool = False) -> SuiteResult:
    """The structural lemmas whose hypotheses hold on ``L``; on modular
    lattices the strengthened DR inequality for every supermatroid rank and
    on atomic modular lattices the chain matchings."""
    fl = classify(L)
    res = SuiteResult("lemmas", _label(L, name))
    ran = []
    for lname, rep in run_lattice_lemmas(L).items():
        if rep is None:
            continue
        ran.append(lname)
        res.checked += 1
        if not rep.verdict:
            res.note(lname, witness=rep.failing().witness)
    if fl.modular:
        ran.append("strengthened-dr")
        for m in iter_supermatroid_masks(L, force):
            rep = check_strengthened_dr(L, rank_values(L, m))
            res.checked += 1
            if not rep.verdict:
                res.note("strengthened-dr", bases=list(L.names(bits(maximal_mask(L, m)))),
                         witness=rep.failing().witness)
    if fl.modular and fl.atomic:
        ran.append("matching")
        try:
            rep = check_matching_suite(L, force)
            res.stats["matching_cases"] = rep.clauses[0].witness["cases"]
        except Exception as ex:  # ConstructionFailed carries the failing relation
            res.note("matching", error=str(ex))
        res.checked += 1
    res.stats["lemmas"] = ran
    return res


# ----------------------------------------------------------------------
# corpus annotations


def _witness_matches(expected: dict, got: dict) -> bool:
    return all(got.get(k) == v for k, v in expected.items())


def verify_corpus(name: str) -> SuiteResult:
    """Recompute every annotation stored with a corpus entry."""
    entry = corpus(name)
    L = entry.lattice
    fl = classify(L)
    res = SuiteResult("corpus", entry.name)
    imask = L.mask_of(entry.ideal) if entry.ideal is not None else None
    if entry.rank is not None:
        r = [entry.rank[x] for x in L.elements]
    elif imask is not None:
        r = rank_values(L, imask)
    else:
        r = None

    def rank_report(var):
        return check_rank(L, r, var)

    checks: dict[str, Callable[[], Any]] = {
        "is_modular": lambda: fl.modular,
        "is_distributive": lambda: fl.distributive,
        "is_atomic": lambda: fl.atomic,
        "is_LLD": lambda: fl.lower_locally_distributive,
        "is_supermatroid": lambda: check_height(L, imask).verdict,
        "satisfies_H": lambda: check_height(L, imask).verdict,
        "satisfies_I2": lambda: check_independence(L, imask, "I2").verdict,
        "satisfies_I2l": lambda: check_independence(L, imask, "I2l").verdict,
        "satisfies_I2w": lambda: check_independence(L, imask, "I2w").verdict,
        "failing_height_clause": lambda: check_height(L, imask).failing().id,
        "height_witness": lambda: check_height(L, imask).failing().witness,
        "I2_witness": lambda: check_independence(L, imask, "I2").failing().witness,
        "rank_values": lambda: dict(zip(L.elements, r)),
        "rank_is_lattice_submodular": lambda: check_lattice_submodular(L, r).verdict,
        "lattice_submodular_witness": lambda: check_lattice_submodular(L, r).failing().witness,
        "rank_satisfies_R3_downward": lambda: rank_report("R3_downward").verdict,
        "rank_is_upward_DR": lambda: check_upward_dr(L, r).verdict,
        "bases": lambda: list(L.names(bits(maximal_mask(L, imask)))),
        "heights": lambda: {x: L.height(x) for x in L.elements},
        "rank_ideal": lambda: list(L.names(bits(_ideal_from_values(L, r)))),
        "rank_ideal_is_supermatroid": lambda: is_supermatroid_mask(L, _ideal_from_values(L, r)),
        "rank_ideal_maximal_heights": lambda: sorted(
            {L.hgt[i] for i in bits(maximal_mask(L, _ideal_from_values(L, r)))}),
        "rank_is_downward_DR_prime": lambda: check_downward_dr_prime(L, r).verdict,
        "downward_DR_prime_witness": lambda: check_downward_dr_prime(L, r).failing().witness,
    }
    for key, expected in entry.annotations.items():
        res.checked += 1
        if key not in checks:
            res.note("unverifiable annotation", key=key)
            continue
        got = checks[key]()
        if isinstance(expected, dict) and isinstance(got, dict):
            ok = _witness_matches(expected, got)
        else:
            ok = got == expected
        if not ok:
            res.note("annotation", key=key, expected=expected,
                     got=got if not isinstance(got, dict) else {k: str(v) for k, v in got.items()})
    return res


SUITES = {
    "modular-equivalence": modular_equivalence,
    "lattice-theorems": lattice_theorems,
    "dual-rank": dual_rank,
    "strong-exchange": strong_exchange,
    "greedy-valuated": greedy_valuated_suite,
    "greedy-constrained": greedy_constrained_suite,
    "lemmas": lemma_suite,
}


def run_suite(suite: str, L: Lattice, name: str | None = None, **kw) -> SuiteResult:
    if suite not in SUITES:
        raise ValueError(f"unknown suite {suite!r}; choose from {sorted(SUITES)}")
    return SUITES[suite](L, name, **kw)


def applicable_suites(L: Lattice) -> list[str]:
    fl = classify(L)
    out = ["lattice-theorems", "lemmas"]
    if fl.modular:
        out += ["modular-equivalence", "dual-rank", "strong-exchange", "greedy-constrained"]
        if fl.atomic:
            out.append("greedy-valuated")
    return out


__all__ = [
    "SUITES",
    "SuiteResult",
    "applicable_suites",
    "concave_height_functions",
    "dual_rank",
    "greedy_constrained_suite",
    "greedy_valuated_suite",
    "lattice_theorems",
    "lemma_suite",
    "modular_equivalence",
    "run_suite",
    "strong_exchange",
    "verify_corpus",
]
