import pytest

from oracles import Poset
from conftest import SMALL
from supermatroids import (
    boolean_lattice,
    build_lattice,
    chain,
    classify,
    collinearity_triples,
    diamond,
    dualize,
    interval,
    is_modular,
    pentagon,
    product,
)
from supermatroids.builders import corpus
from supermatroids.errors import (
    CycleDetected,
    DuplicateElement,
    NoUniqueBottom,
    NoUniqueTop,
    NotALattice,
    UnknownElement,
)


def test_operations_match_brute_force(small):
    name, L = small
    P = Poset(L.elements, L.covers)
    for x in L.elements:
        assert L.height(x) == P.height(x)
        for y in L.elements:
            assert L.leq(x, y) == P.leq(x, y)
            assert L.join(x, y) == P.join(x, y)
            assert L.meet(x, y) == P.meet(x, y)
            assert L.is_cover(x, y) == P.covers(x, y)


def test_join_irreducibles_have_one_lower_cover(small):
    _, L = small
    for x in L.elements:
        assert (x in L.join_irreducibles()) == (len(L.lower_covers_of(x)) == 1)


def test_admissible_and_coextreme_definitions(small):
    _, L = small
    for x in L.elements:
        adm = {a for a in L.join_irreducibles() if L.is_cover(L.meet(x, a), a)}
        coex = {p for p in L.join_irreducibles() if L.is_cover(x, L.join(x, p))}
        assert set(L.admissible(x)) == adm
        assert set(L.coextreme(x)) == coex


def test_diamond_basics():
    L = diamond(3)
    assert L.bottom == "bot" and L.top == "top"
    assert L.join("a", "b") == "top" and L.meet("a", "b") == "bot"
    assert L.admissible("a") == ("b", "c")
    assert collinearity_triples(L) == [frozenset("abc")]


def test_numpy_views_agree():
    L = diamond(3)
    J = L.join_table
    assert J.shape == (5, 5)
    assert L.elements[J[1, 2]] == "top"
    assert L.leq_matrix.sum() == 5 + 3 * 2 + 1  # comparable ordered pairs
    assert list(L.height_vector) == [0, 1, 1, 1, 2]


@pytest.mark.parametrize("L, flags", [
    (diamond(3), {"modular": True, "distributive": False, "atomic": True}),
    (boolean_lattice(3), {"modular": True, "distributive": True, "atomic": True}),
    (pentagon(), {"modular": False, "lower_semimodular": False, "upper_semimodular": False}),
    (chain(3), {"modular": True, "distributive": True, "atomic": False}),
])
def test_classification(L, flags):
    got = classify(L).as_dict()
    for k, v in flags.items():
        assert got[k] is v, k
    assert is_modular(L) == got["modular"]


def test_corpus_counterexamples_are_lower_locally_distributive():
    for name in ("fig3_i2l_gap", "fig4_lld_rank_gap", "fig6_upward_gap"):
        f = classify(corpus(name).lattice)
        assert f.lower_locally_distributive and not f.modular


def test_interval_of_fig4_has_seven_elements():
    L = corpus("fig4_lld_rank_gap").lattice
    sub = interval(L, "d", "top")
    assert sorted(sub.elements) == sorted(["d", "b", "e", "g", "c", "h", "top"])


def test_dual_reverses_order(small):
    _, L = small
    D = dualize(L)
    assert D.bottom == L.top and D.top == L.bottom
    for x in L.elements:
        for y in L.elements:
            assert D.leq(x, y) == L.leq(y, x)
            assert D.join(x, y) == L.meet(x, y)
    assert dualize(D) == L


def test_product_of_diamond_and_chain():
    L = product(diamond(3), chain(2))
    assert len(L) == 10
    assert L.top == "(top,top)"
    assert classify(L).modular and classify(L).atomic


@pytest.mark.parametrize("elements, covers, err", [
    (["a", "a"], [], DuplicateElement),
    (["a", "b"], [("a", "b"), ("b", "a")], CycleDetected),
    (["a", "b", "c"], [("a", "b"), ("a", "c")], NoUniqueTop),
    (["a", "b", "c"], [("a", "c"), ("b", "c")], NoUniqueBottom),
    (["a", "b"], [("a", "z")], UnknownElement),
])
def test_malformed_inputs(elements, covers, err):
    with pytest.raises(err):
        build_lattice(elements, covers)


def test_two_minimal_upper_bounds_is_not_a_lattice():
    # bowtie: a, b both below c and d
    els = ["0", "a", "b", "c", "d", "1"]
    cov = [("0", "a"), ("0", "b"), ("a", "c"), ("a", "d"), ("b", "c"), ("b", "d"), ("c", "1"), ("d", "1")]
    with pytest.raises(NotALattice):
        build_lattice(els, cov)


def test_unknown_element_lookup():
    with pytest.raises(UnknownElement):
        diamond(3).join("a", "zz")


def test_every_small_lattice_is_bounded():
    for L in SMALL.values():
        assert all(L.leq(L.bottom, x) and L.leq(x, L.top) for x in L.elements)
