"""
Modules of binary structures.

Computes the laminar family of strong modules by recursive Gallai decomposition,
the robust modules, their components and the typed quotients.
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Union

import networkx as nx
from networkx.utils import UnionFind

import config
from errors import BudgetExceededError, InvalidInputError, NotRobustError
from structures import BinaryStructure, Graph, Structure, Symbol

logger: logging.Logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Constant:
    """Every pair of distinct classes carries the symbol in both directions."""

    symbol: Symbol

    def describe(self) -> str:
        return f"constant({self.symbol})"


@dataclass(frozen=True)
class Linear:
    """
    Classes form a chain; d(earlier, later) = first and d(later, earlier) = second.

    Normalized so that first precedes second in the alphabet.
    """

    first: Symbol
    second: Symbol

    def __post_init__(self) -> None:
        if self.first == self.second:
            raise InvalidInputError("a linear type needs two distinct symbols")

    def describe(self) -> str:
        return f"linear({self.first},{self.second})"


@dataclass(frozen=True)
class Prime:
    def describe(self) -> str:
        return "prime"


GallaiType = Union[Constant, Linear, Prime]


@dataclass(frozen=True)
class StrongModuleNode:
    vertices: frozenset[int]
    parent: int | None
    gallai_type: GallaiType | None
    children: tuple[int, ...]


@dataclass(frozen=True)
class StrongFamily:
    """
    All strong modules of a finite structure as a rooted laminar forest.

    Nodes are stored in preorder (root first); children are ordered by their
    least vertex. Singletons carry no type.
    """

    n: int
    nodes: tuple[StrongModuleNode, ...]

    @property
    def members(self) -> list[frozenset[int]]:
        return [node.vertices for node in self.nodes]

    def index_of(self, vertices: Iterable[int]) -> int | None:
        target = frozenset(vertices)
        for i, node in enumerate(self.nodes):
            if node.vertices == target:
                return i
        return None

    def smallest_containing(self, vertices: Iterable[int]) -> int:
        """Index of the least member containing the given non-empty set."""
        wanted = frozenset(vertices)
        if not wanted:
            raise InvalidInputError("the vertex set must be non-empty")
        if not wanted <= frozenset(range(self.n)):
            raise InvalidInputError(f"vertices {sorted(wanted)} leave the vertex range")
        current = 0
        while True:
            for child in self.nodes[current].children:
                if wanted <= self.nodes[child].vertices:
                    current = child
                    break
            else:
                return current


def _check_subset(m: Structure, a: Iterable[int]) -> frozenset[int]:
    subset = frozenset(a)
    for v in subset:
        if not 0 <= v < m.n:
            raise InvalidInputError(f"vertex {v} is not in the structure")
    return subset


def _splits(m: Structure, x: int, block: Iterable[int]) -> bool:
    """True when x sees two members of block differently."""
    iterator = iter(block)
    first = next(iterator)
    out_label, in_label = m.label(x, first), m.label(first, x)
    return any(m.label(x, y) != out_label or m.label(y, x) != in_label for y in iterator)


def is_module(m: Structure, a: Iterable[int]) -> bool:
    subset = _check_subset(m, a)
    if len(subset) <= 1:
        return True
    return not any(_splits(m, x, subset) for x in range(m.n) if x not in subset)


def module_closure(
    m: Structure, seed: Iterable[int], universe: Iterable[int] | None = None
) -> frozenset[int]:
    """
    Least module containing seed, by absorbing splitters.

    With a universe that is itself a module, the search stays inside it.
    """
    closure = set(_check_subset(m, seed))
    if not closure:
        return frozenset()
    outside = set(range(m.n) if universe is None else universe) - closure
    changed = True
    while changed:
        changed = False
        for x in sorted(outside):
            if _splits(m, x, closure):
                closure.add(x)
                outside.discard(x)
                changed = True
    return frozenset(closure)


def _label_components(m: Structure, block: list[int], symbol: Symbol) -> list[list[int]]:
    """Components of the relation 'x, y do not carry symbol in both directions'."""
    graph = nx.Graph()
    graph.add_nodes_from(block)
    graph.add_edges_from(
        (x, y)
        for x, y in itertools.combinations(block, 2)
        if not (m.label(x, y) == symbol and m.label(y, x) == symbol)
    )
    return [sorted(c) for c in nx.connected_components(graph)]


def _ordered_components(
    m: Structure, block: list[int], first: Symbol, second: Symbol
) -> list[list[int]]:
    """Strong components of 'x is not strictly before y', earliest class first."""
    graph = nx.DiGraph()
    graph.add_nodes_from(block)
    for x, y in itertools.permutations(block, 2):
        if (m.label(x, y), m.label(y, x)) != (first, second):
            graph.add_edge(x, y)
    components = [frozenset(c) for c in nx.strongly_connected_components(graph)]
    if len(components) < 2:
        return [sorted(block)]
    condensed = nx.condensation(graph, scc=components)
    order = list(nx.topological_sort(condensed))
    # edges point from later classes to earlier ones
    return [sorted(components[i]) for i in reversed(order)]


def _symbol_rank(m: Structure, symbol: Symbol) -> int:
    return m.alphabet.symbols.index(symbol)


def _linear_type(m: Structure, first: Symbol, second: Symbol) -> Linear:
    if _symbol_rank(m, first) > _symbol_rank(m, second):
        first, second = second, first
    return Linear(first=first, second=second)


def _decompose(m: Structure, block: list[int]) -> tuple[GallaiType, list[list[int]]]:
    """Type and components (maximal strong proper submodules) of a strong module."""
    for symbol in m.alphabet.symbols:
        pieces = _label_components(m, block, symbol)
        if len(pieces) > 1:
            return Constant(symbol), sorted(pieces, key=min)
    asymmetric = {
        (m.label(x, y), m.label(y, x))
        for x, y in itertools.permutations(block, 2)
        if m.label(x, y) != m.label(y, x)
    }
    for first, second in sorted(asymmetric, key=lambda p: (_symbol_rank(m, p[0]), _symbol_rank(m, p[1]))):
        if _symbol_rank(m, first) > _symbol_rank(m, second):
            continue
        pieces = _ordered_components(m, block, first, second)
        if len(pieces) > 1:
            return _linear_type(m, first, second), sorted(pieces, key=min)
    # prime: x and y share a component iff their closure stays proper
    classes = UnionFind(block)
    whole = frozenset(block)
    for x, y in itertools.combinations(block, 2):
        if classes[x] == classes[y]:
            continue
        if module_closure(m, (x, y), block) != whole:
            classes.union(x, y)
    return Prime(), sorted((sorted(c) for c in classes.to_sets()), key=min)


@lru_cache(maxsize=256)
def strong_modules(m: Structure) -> StrongFamily:
    """Build the strong-module family of m by recursive Gallai decomposition."""
    if m.n == 0:
        return StrongFamily(n=0, nodes=())
    nodes: list[dict] = []
    stack: list[tuple[list[int], int | None]] = [(list(range(m.n)), None)]
    while stack:
        block, parent = stack.pop()
        index = len(nodes)
        nodes.append({"vertices": frozenset(block), "parent": parent, "type": None, "children": []})
        if parent is not None:
            nodes[parent]["children"].append(index)
        if len(block) == 1:
            continue
        gallai_type, pieces = _decompose(m, block)
        nodes[index]["type"] = gallai_type
        # pushed in reverse so preorder visits the least piece first
        stack.extend((piece, index) for piece in reversed(pieces))
    logger.debug(f"strong module family of {m.n} vertices has {len(nodes)} members")
    return StrongFamily(
        n=m.n,
        nodes=tuple(
            StrongModuleNode(
                vertices=node["vertices"],
                parent=node["parent"],
                gallai_type=node["type"],
                children=tuple(node["children"]),
            )
            for node in nodes
        ),
    )


def is_strong_module(m: Structure, a: Iterable[int]) -> bool:
    """
    True when a is a module that no other module overlaps.

    A module a is overlapped exactly when the closure of some inside/outside pair
    fails to contain a, so the search runs over those pairs.

    Raises:
        BudgetExceededError: When the structure exceeds the search vertex limit.
    """
    subset = _check_subset(m, a)
    if m.n > config.MODULE_SEARCH_LIMIT:
        raise BudgetExceededError("is_strong_module", config.MODULE_SEARCH_LIMIT)
    if not is_module(m, subset):
        return False
    if len(subset) <= 1 or len(subset) == m.n:
        return True
    for x in sorted(subset):
        for y in range(m.n):
            if y in subset:
                continue
            if not subset <= module_closure(m, (x, y)):
                return False
    return True


def least_strong_module(m: Structure, a: Iterable[int]) -> frozenset[int]:
    family = strong_modules(m)
    return family.nodes[family.smallest_containing(a)].vertices


def robust_modules(m: Structure) -> list[frozenset[int]]:
    """
    Singletons plus every least strong module of a pair of distinct vertices.

    Ordered by reverse inclusion: larger sets first, ties by sorted vertices.
    """
    family = strong_modules(m)
    found: set[frozenset[int]] = {frozenset({v}) for v in range(m.n)}
    for x, y in itertools.combinations(range(m.n), 2):
        found.add(family.nodes[family.smallest_containing((x, y))].vertices)
    return sorted(found, key=lambda s: (-len(s), sorted(s)))


def _robust_node(m: Structure, a: Iterable[int]) -> tuple[StrongFamily, int]:
    subset = _check_subset(m, a)
    family = strong_modules(m)
    index = family.index_of(subset)
    if index is None or len(subset) < 2:
        raise NotRobustError(f"{sorted(subset)} is not a robust module with at least two vertices")
    return family, index


def components_of(m: Structure, a: Iterable[int]) -> list[frozenset[int]]:
    """Maximal strong modules properly inside the robust module a, by least vertex."""
    family, index = _robust_node(m, a)
    return [family.nodes[child].vertices for child in family.nodes[index].children]


def gallai_quotient(m: Structure, a: Iterable[int]) -> tuple[Structure, GallaiType]:
    """
    Quotient of m restricted to a on its components, with the recorded type.

    Quotient vertex i stands for the i-th component by least vertex; a graph
    yields a graph quotient.
    """
    family, index = _robust_node(m, a)
    node = family.nodes[index]
    representatives = [min(family.nodes[child].vertices) for child in node.children]
    if isinstance(m, Graph):
        quotient: Structure = m.induced(representatives)
    else:
        quotient = BinaryStructure(
            alphabet=m.alphabet,
            rows=tuple(
                tuple(
                    m.alphabet.diagonal if x == y else m.label(x, y) for y in representatives
                )
                for x in representatives
            ),
        )
    assert node.gallai_type is not None
    return quotient, node.gallai_type


def quotient_type(q: Structure) -> GallaiType:
    """Classify a structure on at least two vertices as constant, linear or prime."""
    if q.n < 2:
        raise InvalidInputError("a quotient needs at least two vertices")
    pairs = {(q.label(x, y), q.label(y, x)) for x, y in itertools.permutations(range(q.n), 2)}
    if len(pairs) == 1:
        (first, second), = pairs
        if first == second:
            return Constant(first)
    if len(pairs) == 2:
        (first, second), (third, fourth) = sorted(
            pairs, key=lambda p: (_symbol_rank(q, p[0]), _symbol_rank(q, p[1]))
        )
        if first != second and (first, second) == (fourth, third):
            # transitive tournament: win counts are 0..n-1
            wins = sorted(
                sum(1 for y in range(q.n) if y != x and q.label(x, y) == first)
                for x in range(q.n)
            )
            if wins == list(range(q.n)):
                return _linear_type(q, first, second)
    return Prime()
