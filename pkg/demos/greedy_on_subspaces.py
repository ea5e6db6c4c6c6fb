"""Greedy maximization on the subspace lattice of GF(2)^3.

First the valuated greedy on a linear rank function, then the constrained
greedy on sampled functions, hunting for the worst ratio."""

from fractions import Fraction

from supermatroids import (
    approximation_report,
    enumerate_supermatroids,
    greedy_valuated,
    linear_rank_function,
    random_strong_dr_functions,
    subspace_lattice,
)

L = subspace_lattice(2, 3)
A = [[1, 0, 0], [0, 1, 0]]  # projection onto the first two coordinates
r = linear_rank_function(L, A)
for k in range(4):
    tr = greedy_valuated(L, r, k)
    print(f"k={k}: picked {[s.chosen for s in tr.steps]} -> {tr.final} value {tr.final_value}")

constraints = list(enumerate_supermatroids(L))
worst = (Fraction(2), None, None)
for f in random_strong_dr_functions(L, 40, seed=7):
    for I in constraints:
        rep = approximation_report(L, f, I, with_curvature=False)
        if rep.ratio < worst[0]:
            worst = (rep.ratio, rep, f)
ratio, rep, f = worst
print(f"\n{len(constraints)} constraints x 40 functions; worst ratio {ratio}")
print(f"  greedy {rep.greedy} = {rep.greedy_value}, optimum {rep.optimum} = {rep.optimum_value}")
