from fractions import Fraction

import pytest

from oracles import Poset, set_matroids, supermatroids_brute
from conftest import SMALL
from supermatroids import (
    BaseFamily,
    DependentSet,
    IdealSet,
    bases_of,
    boolean_lattice,
    check_base,
    check_dependence,
    check_height,
    check_independence,
    check_rank,
    classify,
    dependent_of,
    diamond,
    dual_rank_formula,
    dual_supermatroid,
    enumerate_supermatroids,
    free_ideal,
    ideal_from_bases,
    ideal_from_dependent,
    ideal_from_rank,
    rank_of,
    subspace_lattice,
    uniform_ideal,
)
from supermatroids.builders import corpus
from supermatroids.errors import NotAnIdeal, NotOrderReversing, PreconditionViolated, RankAxiomViolated, TooLarge

# counts frozen from tests/oracles.py::supermatroids_brute (scan of all subsets)
FROZEN_COUNTS = {
    "chain_2": 2,
    "chain_3": 3,
    "boolean_2": 5,
    "boolean_3": 16,
    "diamond_3": 9,
    "pentagon": 6,
    "m3_x_chain2": 32,
    "fig2_diamond": 9,
    "fig3_i2l_gap": 19,
    "fig4_lld_rank_gap": 19,
    "fig6_upward_gap": 18,
}


@pytest.mark.parametrize("name", sorted(FROZEN_COUNTS))
def test_enumeration_count(name):
    assert sum(1 for _ in enumerate_supermatroids(SMALL[name])) == FROZEN_COUNTS[name]


@pytest.mark.parametrize("name", ["diamond_3", "pentagon", "fig3_i2l_gap", "m3_x_chain2"])
def test_enumeration_matches_oracle(name):
    L = SMALL[name]
    got = [frozenset(I.members) for I in enumerate_supermatroids(L)]
    assert len(got) == len(set(got))
    assert set(got) == set(supermatroids_brute(Poset(L.elements, L.covers)))


def test_subspace_2_3_count(s23):
    assert sum(1 for _ in enumerate_supermatroids(s23)) == 256


def _as_sets(name):
    return frozenset(int(c) - 1 for c in name.strip("{}").split(",") if c)


@pytest.mark.parametrize("n", [2, 3])
def test_boolean_supermatroids_are_classical_matroids(n):
    L = boolean_lattice(n)
    ours = {frozenset(_as_sets(x) for x in I.members) for I in enumerate_supermatroids(L)}
    assert ours == set(set_matroids(n))


def test_enumeration_guard():
    with pytest.raises(TooLarge):
        next(enumerate_supermatroids(subspace_lattice(2, 4)))


def test_m3_contains_expected_families():
    got = {frozenset(I.members) for I in enumerate_supermatroids(diamond(3))}
    for fam in ({"bot"}, {"bot", "a"}, {"bot", "a", "b", "c"}, {"bot", "a", "b", "c", "top"}):
        assert frozenset(fam) in got


def test_fig2_height_and_independence():
    e = corpus("fig2_diamond")
    assert check_height(e.lattice, e.ideal).verdict
    assert check_independence(e.lattice, e.ideal, "I2").verdict


def test_fig3_witnesses():
    e = corpus("fig3_i2l_gap")
    h = check_height(e.lattice, e.ideal)
    assert not h.verdict
    c = h.failing()
    assert c.id == "H2" and c.witness["X"] == "top"
    assert {c.witness["height_I1"], c.witness["height_I2"]} == {1, 2}
    assert check_independence(e.lattice, e.ideal, "I2l").verdict
    i2 = check_independence(e.lattice, e.ideal, "I2")
    assert (i2.failing().witness["I1"], i2.failing().witness["I2"]) == ("a1", "c2")


def test_h1_failures():
    L = diamond(3)
    rep = check_height(L, L.mask_of(["a"]))
    assert rep.failing().id == "H1" and rep.failing().witness["missing"] == "bot"
    with pytest.raises(NotAnIdeal):
        IdealSet(L, ["bot", "top"])


def test_fig2_rank_values():
    e = corpus("fig2_diamond")
    r = rank_of(e.lattice, e.ideal)
    assert {k: int(v) for k, v in r.values.items()} == {"bot": 0, "a": 1, "b": 0, "c": 0, "top": 1}
    assert set(ideal_from_rank(e.lattice, r).members) == set(e.ideal)


def test_fig4_rank_passes_downward_but_ideal_is_not_a_supermatroid():
    e = corpus("fig4_lld_rank_gap")
    L, r = e.lattice, e.rank
    assert L.height("c") == 3 and L.height("top") == 4
    assert check_rank(L, r, "R3_downward").verdict
    ideal = ideal_from_rank(L, r)
    assert set(ideal.members) == {"bot", "a", "d", "f", "b", "e", "g", "c"}
    rep = check_height(L, ideal)
    assert not rep.verdict
    heights = sorted(L.height(x) for x in bases_of(L, ideal).members)
    assert set(heights) == {2, 3}


def test_fig6_rank_fails_upward():
    e = corpus("fig6_upward_gap")
    r = rank_of(e.lattice, e.ideal)
    assert check_height(e.lattice, e.ideal).verdict
    assert check_rank(e.lattice, r, "R3_downward").verdict
    assert not check_rank(e.lattice, r, "R3u_upward").verdict


def test_rank_r1_r2_failures():
    L = diamond(3)
    rep = check_rank(L, {"bot": 1, "a": 1, "b": 1, "c": 1, "top": 1})
    assert rep.clause("R1").verdict is False
    rep = check_rank(L, {"bot": 0, "a": 2, "b": 0, "c": 0, "top": 2})
    assert rep.clause("R2").verdict is False
    with pytest.raises(RankAxiomViolated):
        ideal_from_rank(L, {"bot": 0, "a": 2, "b": 0, "c": 0, "top": 2})
    with pytest.raises(ValueError):
        check_rank(L, rank_of(L, free_ideal(L)), "R9")


def test_round_trips(small):
    _, L = small
    semimodular = classify(L).lower_semimodular or classify(L).upper_semimodular
    for I in enumerate_supermatroids(L):
        assert ideal_from_bases(L, bases_of(L, I)) == I
        assert ideal_from_dependent(L, dependent_of(L, I)) == I
        r = rank_of(L, I)
        rep = check_rank(L, r)
        if semimodular:
            assert rep.clause("R2").verdict
        if rep.clause("R2").verdict:
            assert ideal_from_rank(L, r) == I


def test_pentagon_rank_can_jump_two_across_a_cover():
    from supermatroids import pentagon
    P = pentagon()
    r = rank_of(P, free_ideal(P))
    assert P.is_cover("y", "top") and r["top"] - r["y"] == 2
    with pytest.raises(RankAxiomViolated):
        ideal_from_rank(P, r)


def test_rank_matches_definition(small):
    _, L = small
    P = Poset(L.elements, L.covers)
    for I in enumerate_supermatroids(L):
        r = rank_of(L, I)
        for x in L.elements:
            assert r[x] == max(P.height(s) for s in I.members if P.leq(s, x))


def test_uniform_planes_on_subspace_lattice(s23):
    I = uniform_ideal(s23, 2)
    B = bases_of(s23, I)
    assert sorted(B.members) == sorted(s23.members(s23.mask_of(x for x in s23.elements if s23.height(x) == 2)))
    assert len(B) == 7
    assert check_base(s23, B).verdict


def test_base_axiom_failures():
    L = diamond(3)
    rep = check_base(L, BaseFamily(L, ["a", "top"]))
    assert rep.clause("B1").verdict is False
    assert not check_base(L, BaseFamily(L, [])).clause("B0").verdict
    B3 = boolean_lattice(3)
    rep = check_base(B3, BaseFamily(B3, ["{1}", "{2,3}"]))
    assert rep.clause("B2").verdict is False
    assert rep.clause("B2").witness == {"X": "{2}", "Y": "{1,2}"}
    # nothing of the family lies in [{2}, {1,2}]
    assert not any(B3.leq("{2}", b) and B3.leq(b, "{1,2}") for b in ("{1}", "{2,3}"))


def test_pentagon_antichain_passes_b1_b2_but_is_no_supermatroid():
    from supermatroids import pentagon
    P = pentagon()
    B = BaseFamily(P, ["z", "y"])
    assert check_base(P, B).clause("B2").verdict
    assert not check_height(P, ideal_from_bases(P, B)).verdict


def test_dependence_examples():
    L = corpus("fig2_diamond").lattice
    assert check_dependence(L, DependentSet(L, ["b", "c", "top"])).verdict
    assert check_dependence(L, DependentSet(L, [])).verdict
    rep = check_dependence(L, DependentSet(L, L.elements))
    assert rep.clause("D1").verdict is False
    e = corpus("fig3_i2l_gap")
    assert check_dependence(e.lattice, dependent_of(e.lattice, e.ideal)).verdict


def test_fig2_dual_rank_values():
    e = corpus("fig2_diamond")
    L = e.lattice
    D, Bs = dual_supermatroid(L, bases_of(L, e.ideal))
    rstar = rank_of(D, ideal_from_bases(D, Bs))
    assert {x: int(rstar[x]) for x in ("top", "b", "a", "bot")} == {"top": 0, "b": 0, "a": 1, "bot": 1}
    D2, formula = dual_rank_formula(L, rank_of(L, e.ideal))
    assert D2 == D and formula == rstar
    assert formula["bot"] == Fraction(1)


def test_boolean_complement_duality():
    L = boolean_lattice(2)
    bar = {"{}": "{1,2}", "{1}": "{2}", "{2}": "{1}", "{1,2}": "{}"}
    I = uniform_ideal(L, 1)
    _, Bs = dual_supermatroid(L, bases_of(L, I), bar)
    assert Bs == bases_of(L, I)
    with pytest.raises(NotOrderReversing):
        dual_supermatroid(L, bases_of(L, I), {x: x for x in L.elements})


def test_dual_rank_needs_modular():
    from supermatroids import pentagon
    P = pentagon()
    with pytest.raises(PreconditionViolated):
        dual_rank_formula(P, rank_of(P, free_ideal(P)))
