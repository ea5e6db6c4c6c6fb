from fractions import Fraction

import pytest

from supermatroids import (
    LatticeFn,
    approximation_report,
    bases_of,
    boolean_lattice,
    brute_force_max,
    check_monotone,
    check_strong_dr,
    check_valuated,
    concave_of_height,
    enumerate_supermatroids,
    greedy_constrained,
    greedy_valuated,
    linear_rank_function,
    pentagon,
    rank_of,
    uniform_ideal,
)
from supermatroids.builders import corpus
from supermatroids.errors import EmptyFeasibleSet, PreconditionViolated
from supermatroids.optimize import random_strong_dr_functions


def test_greedy_valuated_uniform(s23):
    r = rank_of(s23, uniform_ideal(s23, 2))
    tr = greedy_valuated(s23, r, 2)
    assert len(tr.steps) == 2 and tr.final_value == 2
    best, val = brute_force_max(s23, r, lambda x: s23.height(x) == 2)
    assert val == tr.final_value


def test_greedy_valuated_linear_projection(s23):
    A = [[1, 0, 0], [0, 1, 0]]
    r = linear_rank_function(s23, A)
    assert check_valuated(s23, r).verdict
    tr = greedy_valuated(s23, r, 2)
    assert tr.final_value == 2 == r[s23.top]


def test_greedy_matches_brute_force_on_every_rank(s23):
    for I in enumerate_supermatroids(s23):
        r = rank_of(s23, I)
        for k in range(4):
            tr = greedy_valuated(s23, r, k)
            _, opt = brute_force_max(s23, r, lambda x, k=k: s23.height(x) == k)
            assert tr.final_value == opt


def test_planted_valuated_violation():
    B4 = boolean_lattice(4)
    f = {x: 0 for x in B4.elements}
    f["{1,2}"] = f["{3,4}"] = 1
    rep = check_valuated(B4, f, 2)
    assert not rep.verdict
    assert rep.failing().witness == {"k": 2, "X": "{1,2}", "Y": "{3,4}", "X_ring": "{1}"}
    assert check_valuated(B4, rank_of(B4, uniform_ideal(B4, 2)), 2).verdict


def test_valuated_preconditions():
    P = pentagon()
    with pytest.raises(PreconditionViolated):
        check_valuated(P, LatticeFn.height(P))
    B = boolean_lattice(2)
    with pytest.raises(PreconditionViolated):
        greedy_valuated(B, LatticeFn.height(B), 3)


def test_greedy_constrained_min_height(s23):
    f = concave_of_height(s23, [1, 0])
    I = uniform_ideal(s23, 2)
    rep = approximation_report(s23, f, I)
    assert rep.greedy_value == 1 and rep.optimum_value == 1 and rep.ratio == 1


def test_greedy_constrained_ends_on_a_base(s23):
    f = LatticeFn.height(s23)
    for I in enumerate_supermatroids(s23):
        tr = greedy_constrained(s23, f, I)
        assert tr.final in bases_of(s23, I)


def test_zero_curvature_forces_optimality(s23):
    f = LatticeFn.height(s23)
    for I in enumerate_supermatroids(s23):
        rep = approximation_report(s23, f, I)
        assert rep.curvature == 0 and rep.ratio == 1


def test_brute_force_max_fig2():
    e = corpus("fig2_diamond")
    r = rank_of(e.lattice, e.ideal)
    assert brute_force_max(e.lattice, r, lambda x: x in e.ideal) == ("a", Fraction(1))
    with pytest.raises(EmptyFeasibleSet):
        brute_force_max(e.lattice, r, lambda x: False)


def test_concave_of_height_validation(s23):
    with pytest.raises(ValueError):
        concave_of_height(s23, [0, 1])
    with pytest.raises(ValueError):
        concave_of_height(s23, [-1])
    f = concave_of_height(s23, [2, 1])
    assert [f[x] for x in ("span()", "span(001)", "span(010,001)", "span(100,010,001)")] == [0, 2, 3, 4]


def test_random_functions_are_seeded_and_valid(s23):
    a = list(random_strong_dr_functions(s23, 5, seed=3))
    b = list(random_strong_dr_functions(s23, 5, seed=3))
    assert a == b
    assert len({tuple(f.values.values()) for f in a}) == 5
    for f in a:
        assert check_monotone(s23, f).verdict and check_strong_dr(s23, f).verdict


def test_sampled_ratio_at_least_half(s23):
    masks = list(enumerate_supermatroids(s23))
    for f in random_strong_dr_functions(s23, 10, seed=11):
        for I in masks:
            assert approximation_report(s23, f, I, with_curvature=False).ratio >= Fraction(1, 2)
