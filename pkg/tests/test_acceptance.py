"""The ten end-to-end acceptance checks.  Each prints one PASS/FAIL line."""

import time
from fractions import Fraction

import pytest

from supermatroids import (
    bases_of,
    boolean_lattice,
    check_downward_dr_prime,
    check_height,
    check_independence,
    check_lattice_submodular,
    check_rank,
    check_upward_dr,
    diamond,
    ideal_from_rank,
    product,
    chain,
    rank_of,
    subspace_lattice,
)
from supermatroids.builders import CORPUS_NAMES, corpus
from supermatroids.lattice import classify
from supermatroids.theorems import (
    dual_rank,
    greedy_constrained_suite,
    greedy_valuated_suite,
    lemma_suite,
    modular_equivalence,
    strong_exchange,
)


@pytest.fixture
def report(capsys):
    def emit(n, ok, detail):
        with capsys.disabled():
            print(f"\ncriterion {n}: {'PASS' if ok else 'FAIL'} - {detail}")
        assert ok, detail
    return emit


@pytest.fixture(scope="module")
def s23():
    return subspace_lattice(2, 3)


def test_criterion_01_diamond_rank_not_lattice_submodular(report):
    t = time.perf_counter()
    e = corpus("fig2_diamond")
    r = rank_of(e.lattice, e.ideal)
    sub = check_lattice_submodular(e.lattice, r)
    w = sub.failing().witness if not sub.verdict else {}
    ok = (not sub.verdict and (w["X"], w["Y"]) == ("b", "c")
          and w["sum"] == Fraction(0) and w["join_plus_meet"] == Fraction(1)
          and check_rank(e.lattice, r, "R3_downward").verdict)
    dt = time.perf_counter() - t
    report(1, ok and dt < 1, f"not lattice-submodular at (b, c): 0 < 1; rank axiom holds ({dt:.3f}s)")


def test_criterion_02_local_augmentation_gap(report):
    t = time.perf_counter()
    e = corpus("fig3_i2l_gap")
    L, I = e.lattice, e.ideal
    i2l = check_independence(L, I, "I2l")
    i2 = check_independence(L, I, "I2")
    h = check_height(L, I)
    ok = (i2l.verdict and i2l.clause("I1").verdict and not i2.verdict and not h.verdict
          and i2.failing().witness["I1"] == "a1" and i2.failing().witness["I2"] == "c2"
          and h.failing().id == "H2" and h.failing().witness["X"] == "top")
    dt = time.perf_counter() - t
    report(2, ok and dt < 1,
           f"I1+I2l hold; I2 fails at {i2.failing().witness}; height fails at {h.failing().witness} ({dt:.3f}s)")


def test_criterion_03_rank_without_supermatroid(report):
    t = time.perf_counter()
    e = corpus("fig4_lld_rank_gap")
    L, r = e.lattice, e.rank
    rk = check_rank(L, r, "R3_downward")
    ideal = ideal_from_rank(L, r)
    heights = sorted({L.height(b) for b in bases_of(L, ideal).members})
    prime = check_downward_dr_prime(L, r)
    w = prime.failing().witness if not prime.verdict else {}
    ok = (rk.verdict and heights == [2, 3] and not check_height(L, ideal).verdict
          and (w.get("X"), w.get("Y"), w.get("p"), w.get("q")) == ("g", "h", "e", "a")
          and L.coextreme("g") == ("e",) and r[L.join("g", "e")] - r["g"] == 0)
    dt = time.perf_counter() - t
    report(3, ok and dt < 1, f"R1,R2,R3 hold; maximal heights {heights}; DR' fails at {w} ({dt:.3f}s)")


def test_criterion_04_rank_not_upward_dr(report):
    t = time.perf_counter()
    e = corpus("fig6_upward_gap")
    h = check_height(e.lattice, e.ideal)
    up = check_upward_dr(e.lattice, rank_of(e.lattice, e.ideal))
    dt = time.perf_counter() - t
    report(4, h.verdict and not up.verdict and dt < 1,
           f"height axiom holds; upward DR fails at {up.failing().witness if not up.verdict else None} ({dt:.3f}s)")


def test_criterion_05_modular_equivalence(report, s23):
    lattices = {
        "M3": diamond(3),
        "B3": boolean_lattice(3),
        "subspace_2_3": s23,
        "M3 x 2-chain": product(diamond(3), chain(2)),
    }
    parts, ok = [], True
    for name, L in lattices.items():
        t = time.perf_counter()
        res = modular_equivalence(L, name)
        dt = time.perf_counter() - t
        ok &= res.passed and res.checked > 0 and (name != "subspace_2_3" or dt < 300)
        parts.append(f"{name} {res.checked} cases/{res.total_discrepancies} off ({dt:.1f}s)")
    report(5, ok, "; ".join(parts))


def test_criterion_06_dual_rank(report):
    m3 = dual_rank(diamond(3), "M3")
    B2 = boolean_lattice(2)
    bar = {x: "{" + ",".join(sorted({"1", "2"} - set(x.strip("{}").split(",")) - {""})) + "}" for x in B2.elements}
    b2 = dual_rank(B2, "B2", bar)
    ok = m3.passed and b2.passed and m3.checked == 9 and b2.checked == 5
    report(6, ok, f"M3 identity bar: {m3.checked} supermatroids exact; B2 complement bar: {b2.checked} exact")


def test_criterion_07_strong_exchange(report, s23):
    parts, ok = [], True
    for name, L in (("subspace_2_3", s23), ("B3", boolean_lattice(3))):
        res = strong_exchange(L, name)
        ok &= res.passed and res.stats["triples"] > 0
        parts.append(f"{name}: {res.checked} supermatroids, {res.stats['triples']} triples, "
                     f"{res.total_discrepancies} failures")
    report(7, ok, "; ".join(parts) + " (classical reduction and base cross-check included)")


def test_criterion_08_greedy_valuated(report, s23):
    res = greedy_valuated_suite(s23, "subspace_2_3")
    report(8, res.passed and res.checked > 0, f"{res.checked} (rank, k) pairs equal the brute-force optimum")


def test_criterion_09_greedy_constrained(report, s23):
    t = time.perf_counter()
    res = greedy_constrained_suite(s23, "subspace_2_3", n_functions=100, seed=0)
    dt = time.perf_counter() - t
    st = res.stats
    ok = (res.passed and st["functions"] >= 100 and st["worst_ratio"] >= Fraction(1, 2)
          and st["concave_functions"] > 0 and st["worst_curvature_margin"] >= 0 and dt < 600)
    report(9, ok, f"{st['functions']} functions x {st['supermatroids']} constraints, worst ratio "
                  f"{st['worst_ratio']}, worst ratio-(1-c) {st['worst_curvature_margin']} ({dt:.1f}s)")


def test_criterion_10_lemmas(report, s23):
    t = time.perf_counter()
    targets = {name: corpus(name).lattice for name in CORPUS_NAMES}
    targets["subspace_2_3"] = s23
    parts, ok = [], True
    for name, L in targets.items():
        res = lemma_suite(L, name)
        ok &= res.passed and res.checked > 0
        parts.append(f"{name} {res.checked}")
    matched = classify(corpus("fig2_diamond").lattice)
    ok &= matched.modular and matched.atomic  # so the matching construction ran there
    dt = time.perf_counter() - t
    report(10, ok and dt < 120, "lemma checks per lattice: " + ", ".join(parts) + f" ({dt:.1f}s)")
