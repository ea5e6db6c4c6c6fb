import pytest

from conftest import SMALL
from supermatroids import boolean_lattice, classify, diamond, pentagon
from supermatroids.builders import corpus
from supermatroids.errors import PreconditionViolated
from supermatroids.lemmas import (
    check_chernoff,
    check_existence_of_ji,
    check_ladder,
    check_matching_suite,
    check_prec,
    check_prec_usm,
    check_regularity,
    check_strengthened_dr,
    check_subadm,
    ladder_index,
    run_lattice_lemmas,
)
from supermatroids.supermatroid import enumerate_supermatroids, rank_of


def test_lattice_lemmas_hold_where_they_apply(small):
    name, L = small
    for lemma, rep in run_lattice_lemmas(L).items():
        if rep is not None:
            assert rep.verdict, (name, lemma, rep.failing())


def test_lemma_gating_follows_classification():
    f = classify(pentagon())
    assert not f.lower_semimodular
    res = run_lattice_lemmas(pentagon())
    assert res["prec"] is None and res["prec-usm"] is None and res["regularity"] is None
    assert res["subadm"].verdict and res["existence-of-join-irreducibles"].verdict
    with pytest.raises(PreconditionViolated):
        check_prec(pentagon())


def test_corpus_lld_lattices_run_ladder():
    for name in ("fig3_i2l_gap", "fig4_lld_rank_gap", "fig6_upward_gap"):
        rep = check_ladder(corpus(name).lattice)
        assert rep.verdict and rep.clause("ladder").witness["cases"] > 0


def test_ladder_index_on_boolean():
    L = boolean_lattice(3)
    ch = [L.index(x) for x in ("{}", "{1}", "{1,2}", "{1,2,3}")]
    assert ladder_index(L, ch, L.index("{1,2}")) == 2
    assert ladder_index(L, ch, L.index("{2,3}")) == 0
    assert ladder_index(L, ch, L.index("{1,3}")) == 1


def test_regularity_counts_cases(s23):
    rep = check_regularity(s23)
    assert rep.verdict and rep.clause("regularity").witness["cases"] > 0
    assert check_regularity(diamond(3)).verdict


def test_other_lemmas_on_subspace(s23):
    for chk in (check_subadm, check_prec, check_prec_usm, check_existence_of_ji, check_chernoff, check_ladder):
        assert chk(s23).verdict


def test_strengthened_dr_on_modular_ranks():
    L = SMALL["m3_x_chain2"]
    for I in enumerate_supermatroids(L):
        assert check_strengthened_dr(L, rank_of(L, I)).verdict


def test_matching_suite_counts():
    assert check_matching_suite(diamond(3)).clause("matching").witness["cases"] == 28
    assert check_matching_suite(boolean_lattice(3)).clause("matching").witness["cases"] == 79
