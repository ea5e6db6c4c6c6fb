import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from supermatroids import boolean_lattice, chain, diamond, pentagon, product, subspace_lattice  # noqa: E402
from supermatroids.builders import CORPUS_NAMES, corpus  # noqa: E402


def small_lattices():
    out = {
        "chain_2": chain(2),
        "chain_3": chain(3),
        "boolean_2": boolean_lattice(2),
        "boolean_3": boolean_lattice(3),
        "diamond_3": diamond(3),
        "diamond_4": diamond(4),
        "pentagon": pentagon(),
        "m3_x_chain2": product(diamond(3), chain(2)),
    }
    for name in CORPUS_NAMES:
        out[name] = corpus(name).lattice
    return out


SMALL = small_lattices()


@pytest.fixture(scope="session")
def s23():
    return subspace_lattice(2, 3)


@pytest.fixture(params=sorted(SMALL), scope="module")
def small(request):
    return request.param, SMALL[request.param]
