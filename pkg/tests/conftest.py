"""
Pytest configuration file for the cograph toolkit tests.
Defines fixtures, test settings, and common test utilities.
"""

import os
import random

import pytest

# Set test environment variables before importing toolkit modules
os.environ["COGRAPH_SEARCH_NODE_BUDGET"] = "2000000"
os.environ["COGRAPH_CHAIN_STEP_BUDGET"] = "200000"
os.environ["COGRAPH_DEFAULT_SEED"] = "7"
os.environ["LOG_LEVEL"] = "DEBUG"

from chains import QuasiOrder, RegularChain
from cotree import ValuedMeetTree, decomposition_tree
from family import anchored_prefix
from siblings import LEAF, clique, csum, dsum, independent
from structures import OMEGA, Graph, complete_sum, direct_sum


@pytest.fixture
def rng() -> random.Random:
    """Seeded generator so random instances are reproducible."""
    return random.Random(20240229)


@pytest.fixture
def p4() -> Graph:
    """The path 0-1-2-3."""
    return Graph.path(4)


@pytest.fixture
def c4() -> Graph:
    """The cycle 0-1-2-3-0."""
    return Graph.cycle(4)


@pytest.fixture
def two_k2() -> Graph:
    """K_2 + K_2 with parts {0, 1} and {2, 3}."""
    return direct_sum([Graph.complete(2), Graph.complete(2)])


@pytest.fixture
def k3() -> Graph:
    return Graph.complete(3)


@pytest.fixture
def two_k2_tree(two_k2: Graph) -> ValuedMeetTree:
    return decomposition_tree(two_k2)


@pytest.fixture
def sample_cograph() -> Graph:
    """(K_2 + K_1) joined to an independent pair: a cograph with three levels."""
    return complete_sum([direct_sum([Graph.complete(2), Graph.empty(1)]), Graph.empty(2)])


@pytest.fixture
def antichain_ab() -> QuasiOrder:
    return QuasiOrder.antichain(["a", "b"])


@pytest.fixture
def a_below_b() -> QuasiOrder:
    return QuasiOrder.from_pairs(["a", "b"], [("a", "b")])


@pytest.fixture
def binary_labels() -> QuasiOrder:
    return QuasiOrder.antichain(["0", "1", "x", "y", "z"])


@pytest.fixture
def omega_01() -> RegularChain:
    return RegularChain.omega_star(["0", "1"])


@pytest.fixture
def omega_k2_term():
    """omega copies of K_2 side by side."""
    return dsum((clique(2), OMEGA))


@pytest.fixture
def k_omega_term():
    return clique(OMEGA)


@pytest.fixture
def mixed_term():
    """An infinite independent set beside an infinite clique."""
    return dsum((LEAF, OMEGA), (csum((LEAF, OMEGA)), 1))


@pytest.fixture
def finite_term():
    """(K_2 + K_1) joined to an independent pair, as a term."""
    return csum((dsum((clique(2), 1), (LEAF, 1)), 1), (independent(2), 1))


@pytest.fixture
def base_prefix():
    """Four repeated anchor blocks."""
    return anchored_prefix(4)


@pytest.fixture
def write_file(tmp_path):
    """Write text to a temporary file and return its path as a string."""

    def _write(name: str, text: str) -> str:
        path = tmp_path / name
        path.write_text(text, encoding="utf-8")
        return str(path)

    return _write
