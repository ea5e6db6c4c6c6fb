"""Walk through the four stored counterexample lattices and show, with
machine-produced witnesses, which axiom each one separates."""

from supermatroids import (
    bases_of,
    check_downward_dr_prime,
    check_height,
    check_independence,
    check_lattice_submodular,
    check_rank,
    check_upward_dr,
    ideal_from_rank,
    rank_of,
)
from supermatroids.builders import corpus


def show(label, rep):
    bad = rep.failing()
    print(f"  {label:<32} {'holds' if rep.verdict else 'fails'}", end="")
    print(f"  {bad.id}: {bad.witness}" if bad else "")


e = corpus("fig2_diamond")
L, r = e.lattice, rank_of(e.lattice, e.ideal)
print("diamond M3 with I = {bot, a}")
print("  rank:", {x: int(v) for x, v in r.values.items()})
show("lattice-submodular", check_lattice_submodular(L, r))
show("rank axiom (downward DR)", check_rank(L, r))

e = corpus("fig3_i2l_gap")
print("\nlower locally distributive lattice, 5 marked points")
for var in ("I2l", "I2", "I2w"):
    show(f"independence {var}", check_independence(e.lattice, e.ideal, var))
show("height axiom", check_height(e.lattice, e.ideal))

e = corpus("fig4_lld_rank_gap")
L, r = e.lattice, e.rank
ideal = ideal_from_rank(L, r)
print("\nrank values that pass the rank axiom but induce no supermatroid")
show("rank axiom", check_rank(L, r))
print("  maximal elements:", {b: L.height(b) for b in bases_of(L, ideal).members})
show("height axiom", check_height(L, ideal))
show("co-extreme DR variant", check_downward_dr_prime(L, r))

e = corpus("fig6_upward_gap")
r = rank_of(e.lattice, e.ideal)
print("\na supermatroid whose rank is not upward DR-submodular")
show("height axiom", check_height(e.lattice, e.ideal))
show("upward DR", check_upward_dr(e.lattice, r))
