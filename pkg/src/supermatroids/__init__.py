"""Exact checkers and greedy optimizers for supermatroids on finite lattices."""

from .errors import *  # noqa: F401,F403
from .lattice import (
    ClassificationFlags,
    Lattice,
    build_lattice,
    classify,
    collinearity_triples,
    dualize,
    interval,
    is_modular,
    product,
)
from .builders import (
    CORPUS_NAMES,
    CorpusEntry,
    boolean_lattice,
    chain,
    corpus,
    diamond,
    linear_rank_function,
    load_lattice,
    named_lattice,
    orthogonal_complement_map,
    pentagon,
    save_lattice,
    subspace_lattice,
)
from .core import AxiomReport, Clause, LatticeFn, RankFn
from .supermatroid import (
    BaseFamily,
    DependentSet,
    IdealSet,
    bases_of,
    check_base,
    check_dependence,
    check_height,
    check_independence,
    check_rank,
    dependent_of,
    dual_rank_formula,
    dual_supermatroid,
    enumerate_supermatroids,
    free_ideal,
    ideal_from_bases,
    ideal_from_dependent,
    ideal_from_rank,
    rank_of,
    uniform_ideal,
)
from .drsubmod import (
    check_bidirectional_dr,
    check_downward_dr,
    check_downward_dr_prime,
    check_lattice_submodular,
    check_monotone,
    check_strong_dr,
    check_upward_dr,
    curvature,
)
from .exchange import (
    ExchangeWitness,
    MatchingChain,
    check_matching_chain,
    verify_strong_exchange,
    verify_strong_exchange_atomic,
)
from .optimize import (
    GreedyTrace,
    approximation_report,
    brute_force_max,
    check_valuated,
    concave_of_height,
    greedy_constrained,
    greedy_valuated,
    random_strong_dr_functions,
)

__version__ = "0.1.0"
