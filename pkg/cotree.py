"""
Valued meet-trees and the decomposition tree of a cograph.

A tree is stored as parallel tuples indexed by node: parent links, the 0/1
value of internal nodes and the vertex carried by each leaf.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Iterator

from errors import InvalidInputError, InvalidTreeError, NotACographError
from modular import Constant, strong_modules
from schemas import TreeNodePayload
from structures import Graph, find_induced_p4

logger: logging.Logger = logging.getLogger(__name__)

MEET = "meet"
RAMIFIED = "ramified"
DENSE = "dense"


@dataclass(frozen=True)
class ValuedMeetTree:
    parents: tuple[int | None, ...]
    values: tuple[int | None, ...]
    leaves: tuple[int | None, ...]

    @property
    def size(self) -> int:
        return len(self.parents)

    @property
    def root(self) -> int:
        return self.parents.index(None)

    def children(self) -> tuple[tuple[int, ...], ...]:
        found: list[list[int]] = [[] for _ in self.parents]
        for node, parent in enumerate(self.parents):
            if parent is not None and 0 <= parent < self.size:
                found[parent].append(node)
        return tuple(tuple(c) for c in found)

    def is_leaf(self, node: int) -> bool:
        return self.leaves[node] is not None

    @property
    def vertex_count(self) -> int:
        return sum(1 for leaf in self.leaves if leaf is not None)


@dataclass(frozen=True)
class ValidationReport:
    """Outcome of validate(); invariant is None when the tree is valid."""

    invariant: str | None = None
    message: str = "ok"
    witness: tuple[int, ...] = ()

    @property
    def ok(self) -> bool:
        return self.invariant is None

    def __str__(self) -> str:
        if self.ok:
            return "ok"
        nodes = " ".join(str(w) for w in self.witness)
        return f"{self.invariant} violation: {self.message} (nodes {nodes})"


def _check_meet(t: ValuedMeetTree) -> ValidationReport | None:
    if not (len(t.parents) == len(t.values) == len(t.leaves)):
        return ValidationReport(MEET, "node tables have different lengths")
    if t.size == 0:
        return ValidationReport(MEET, "the tree has no node")
    for node, parent in enumerate(t.parents):
        if parent is not None and not 0 <= parent < t.size:
            return ValidationReport(MEET, f"parent {parent} does not exist", (node,))
    roots = [node for node, parent in enumerate(t.parents) if parent is None]
    if len(roots) != 1:
        return ValidationReport(MEET, f"{len(roots)} roots, pairs across them have no meet", tuple(roots[:2]))
    for start in range(t.size):
        node: int | None = start
        steps = 0
        while node is not None:
            steps += 1
            if steps > t.size:
                return ValidationReport(MEET, "parent links form a cycle", (start,))
            node = t.parents[node]
    return None


def _check_ramified(t: ValuedMeetTree) -> ValidationReport | None:
    children = t.children()
    for node in range(t.size):
        if t.is_leaf(node):
            if children[node]:
                return ValidationReport(RAMIFIED, "a leaf has children", (node,) + children[node][:1])
            if t.values[node] is not None:
                return ValidationReport(RAMIFIED, "a leaf carries a value", (node,))
        else:
            if len(children[node]) < 2:
                return ValidationReport(RAMIFIED, "an internal node has fewer than two children", (node,))
            if t.values[node] not in (0, 1):
                return ValidationReport(RAMIFIED, f"internal value {t.values[node]!r} is not 0 or 1", (node,))
    ids = sorted(leaf for leaf in t.leaves if leaf is not None)
    if ids != list(range(len(ids))):
        return ValidationReport(RAMIFIED, "leaf vertices are not 0..n-1 without repeats")
    return None


def _check_dense(t: ValuedMeetTree) -> ValidationReport | None:
    for node, parent in enumerate(t.parents):
        if parent is None or t.is_leaf(node):
            continue
        if t.values[node] == t.values[parent]:
            return ValidationReport(DENSE, f"parent and child both carry {t.values[node]}", (parent, node))
    return None


def validate(t: ValuedMeetTree) -> ValidationReport:
    """Check the meet, ramified and dense invariants, in that order."""
    for check in (_check_meet, _check_ramified, _check_dense):
        report = check(t)
        if report is not None:
            return report
    return ValidationReport()


def _require_valid(t: ValuedMeetTree) -> None:
    report = validate(t)
    if not report.ok:
        raise InvalidTreeError(report)


def postorder(t: ValuedMeetTree) -> Iterator[int]:
    """Nodes with every child before its parent."""
    children = t.children()
    stack: list[tuple[int, bool]] = [(t.root, False)]
    while stack:
        node, expanded = stack.pop()
        if expanded:
            yield node
            continue
        stack.append((node, True))
        stack.extend((child, False) for child in reversed(children[node]))


def leaf_sets(t: ValuedMeetTree) -> list[frozenset[int]]:
    """Vertices below each node."""
    children = t.children()
    below: list[frozenset[int]] = [frozenset()] * t.size
    for node in postorder(t):
        leaf = t.leaves[node]
        if leaf is not None:
            below[node] = frozenset({leaf})
        else:
            below[node] = frozenset().union(*(below[c] for c in children[node]))
    return below


def decomposition_tree(g: Graph) -> ValuedMeetTree:
    """
    Tree of the robust modules of a cograph, ordered by reverse inclusion.

    Raises:
        InvalidInputError: If the graph is empty.
        NotACographError: If the graph contains an induced P4 (the witness is attached).
    """
    if g.n == 0:
        raise InvalidInputError("the empty graph has no decomposition tree")
    witness = find_induced_p4(g)
    if witness is not None:
        raise NotACographError(witness)
    family = strong_modules(g)
    values: list[int | None] = []
    leaves: list[int | None] = []
    for node in family.nodes:
        if len(node.vertices) == 1:
            values.append(None)
            leaves.append(next(iter(node.vertices)))
        else:
            assert isinstance(node.gallai_type, Constant)
            values.append(int(node.gallai_type.symbol))
            leaves.append(None)
    logger.debug(f"decomposition tree of {g.n} vertices has {len(family.nodes)} nodes")
    return ValuedMeetTree(
        parents=tuple(node.parent for node in family.nodes),
        values=tuple(values),
        leaves=tuple(leaves),
    )


def graph_of(t: ValuedMeetTree) -> Graph:
    """
    The cograph on the leaves: x, y adjacent iff the meet of x and y has value 1.

    Raises:
        InvalidTreeError: If the tree fails validation; the report names the invariant.
    """
    _require_valid(t)
    children = t.children()
    below = leaf_sets(t)
    edges: list[tuple[int, int]] = []
    for node in range(t.size):
        if t.values[node] != 1:
            continue
        groups = [sorted(below[c]) for c in children[node]]
        for i, group in enumerate(groups):
            for other in groups[i + 1:]:
                edges.extend((u, v) for u in group for v in other)
    return Graph.from_edges(t.vertex_count, edges)


def _ancestors(t: ValuedMeetTree, node: int) -> list[int]:
    chain = [node]
    while t.parents[chain[-1]] is not None:
        chain.append(t.parents[chain[-1]])  # type: ignore[arg-type]
    return chain


def meet(t: ValuedMeetTree, x: int, y: int) -> int:
    """Greatest common ancestor of nodes x and y."""
    for node in (x, y):
        if not 0 <= node < t.size:
            raise InvalidInputError(f"node {node} is not in the tree")
    above_x = set(_ancestors(t, x))
    for node in _ancestors(t, y):
        if node in above_x:
            return node
    raise InvalidTreeError(validate(t))


def leaf_node(t: ValuedMeetTree, vertex: int) -> int:
    try:
        return t.leaves.index(vertex)
    except ValueError:
        raise InvalidInputError(f"vertex {vertex} is not a leaf of the tree")


def ball(t: ValuedMeetTree, x: int, y: int) -> frozenset[int]:
    """Vertices below the meet of the leaves carrying x and y."""
    top = meet(t, leaf_node(t, x), leaf_node(t, y))
    return leaf_sets(t)[top]


def value_of_least_robust(t: ValuedMeetTree, x: int, y: int) -> int:
    if x == y:
        raise InvalidInputError("value_of_least_robust needs two distinct vertices")
    value = t.values[meet(t, leaf_node(t, x), leaf_node(t, y))]
    assert value is not None
    return value


def canonical_code(t: ValuedMeetTree) -> bytes:
    """
    Canonical form of the tree with vertex names erased.

    Leaves are coded b"L"; an internal node is its value followed by the sorted
    codes of its children, in parentheses.
    """
    _require_valid(t)
    children = t.children()
    codes: dict[int, bytes] = {}
    for node in postorder(t):
        if t.is_leaf(node):
            codes[node] = b"L"
        else:
            inner = b"".join(sorted(codes[c] for c in children[node]))
            codes[node] = b"(" + str(t.values[node]).encode() + inner + b")"
    return codes[t.root]


def is_cograph_isomorphic(g: Graph, h: Graph) -> bool:
    """Isomorphism test for cographs through their decomposition trees."""
    if g.n != h.n:
        return False
    if g.n == 0:
        return True
    return canonical_code(decomposition_tree(g)) == canonical_code(decomposition_tree(h))


def to_dot(t: ValuedMeetTree, name: str = "T") -> str:
    """DOT rendering; internal nodes show their value, leaves their vertex."""
    _require_valid(t)
    lines = [f"digraph {name} {{"]
    for node in range(t.size):
        text = t.leaves[node] if t.is_leaf(node) else t.values[node]
        shape = "box" if t.is_leaf(node) else "ellipse"
        lines.append(f'  n{node} [label="{text}", shape={shape}];')
    for node, parent in enumerate(t.parents):
        if parent is not None:
            lines.append(f"  n{parent} -> n{node};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def tree_to_payload(t: ValuedMeetTree) -> TreeNodePayload:
    _require_valid(t)
    children = t.children()
    below = leaf_sets(t)
    built: dict[int, TreeNodePayload] = {}
    for node in postorder(t):
        if t.is_leaf(node):
            built[node] = TreeNodePayload(value=None, children=[], leaf=t.leaves[node])
        else:
            ordered = sorted(children[node], key=lambda c: min(below[c]))
            built[node] = TreeNodePayload(
                value=t.values[node], children=[built[c] for c in ordered], leaf=None
            )
    return built[t.root]


def tree_from_payload(payload: TreeNodePayload) -> ValuedMeetTree:
    """Flatten a nested payload in preorder; the result is not validated here."""
    parents: list[int | None] = []
    values: list[int | None] = []
    leaves: list[int | None] = []
    stack: list[tuple[TreeNodePayload, int | None]] = [(payload, None)]
    while stack:
        item, parent = stack.pop()
        index = len(parents)
        parents.append(parent)
        values.append(item.value)
        leaves.append(item.leaf)
        stack.extend((child, index) for child in reversed(item.children))
    return ValuedMeetTree(parents=tuple(parents), values=tuple(values), leaves=tuple(leaves))
