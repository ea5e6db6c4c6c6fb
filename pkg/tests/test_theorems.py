import json

import pytest

from conftest import SMALL
from supermatroids import boolean_lattice, diamond
from supermatroids.builders import CORPUS_NAMES
from supermatroids.theorems import SUITES, applicable_suites, dual_rank, run_suite, verify_corpus

FAST = ["chain_3", "boolean_2", "boolean_3", "diamond_3", "pentagon", "m3_x_chain2"] + list(CORPUS_NAMES)


@pytest.mark.parametrize("name", FAST)
def test_applicable_suites_pass(name):
    L = SMALL[name]
    for suite in applicable_suites(L):
        kw = {"n_functions": 10} if suite == "greedy-constrained" else {}
        res = run_suite(suite, L, name, **kw)
        assert res.passed, (suite, res.discrepancies[:3])
        assert res.checked > 0, suite


@pytest.mark.parametrize("name", CORPUS_NAMES)
def test_corpus_annotations_recompute(name):
    res = verify_corpus(name)
    assert res.passed, res.discrepancies
    assert res.checked >= 5


def test_modular_suites_on_non_modular_are_skipped():
    assert applicable_suites(SMALL["pentagon"]) == ["lattice-theorems", "lemmas"]
    assert "greedy-valuated" in applicable_suites(diamond(3))


def test_dual_rank_with_complement_bar():
    L = boolean_lattice(2)
    bar = {"{}": "{1,2}", "{1}": "{2}", "{2}": "{1}", "{1,2}": "{}"}
    res = dual_rank(L, "B2", bar)
    assert res.passed and res.checked == 5


def test_suite_result_json():
    res = run_suite("modular-equivalence", diamond(3), "M3")
    doc = json.loads(json.dumps(res.to_json()))
    assert doc["suite"] == "modular-equivalence" and doc["passed"] is True
    assert doc["checked"] == res.checked


def test_unknown_suite():
    with pytest.raises(ValueError):
        run_suite("nope", diamond(3))
    assert set(SUITES) >= {"modular-equivalence", "strong-exchange", "lemmas"}
