"""
Countable cographs presented as terms, and the one-versus-infinite sibling classifier.

A term is a Leaf (one vertex) or a direct/complete sum of children, each with a
multiplicity that is a positive integer or omega.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, Sequence, Union

import config
from cotree import ValuedMeetTree, decomposition_tree
from errors import BudgetExceededError, InvalidInputError
from modular import is_module
from schemas import TermChildPayload, TermPayload
from structures import (
    OMEGA,
    Graph,
    Omega,
    complete_sum,
    direct_sum,
    embeds,
)

logger: logging.Logger = logging.getLogger(__name__)

Multiplicity = Union[int, Omega]

DSUM = "dsum"
CSUM = "csum"


@dataclass(frozen=True)
class Leaf:
    pass


@dataclass(frozen=True)
class Sum:
    kind: str
    children: tuple[tuple["CographTerm", Multiplicity], ...]

    def __post_init__(self) -> None:
        if self.kind not in (DSUM, CSUM):
            raise InvalidInputError(f"unknown sum kind {self.kind!r}")
        if not self.children:
            raise InvalidInputError("a sum needs at least one child")
        for _, mult in self.children:
            if mult is not OMEGA and (not isinstance(mult, int) or mult < 1):
                raise InvalidInputError(f"multiplicity {mult!r} is not a positive integer or omega")


CographTerm = Union[Leaf, Sum]

LEAF = Leaf()


def dsum(*children: tuple[CographTerm, Multiplicity]) -> Sum:
    return Sum(DSUM, tuple(children))


def csum(*children: tuple[CographTerm, Multiplicity]) -> Sum:
    return Sum(CSUM, tuple(children))


def clique(size: Multiplicity) -> CographTerm:
    return normalize(csum((LEAF, size)))


def independent(size: Multiplicity) -> CographTerm:
    return normalize(dsum((LEAF, size)))


# Multiplicity arithmetic, omega absorbing


def mult_add(a: Multiplicity, b: Multiplicity) -> Multiplicity:
    return OMEGA if a is OMEGA or b is OMEGA else a + b  # type: ignore[operator]


def mult_mul(a: Multiplicity, b: Multiplicity) -> Multiplicity:
    return OMEGA if a is OMEGA or b is OMEGA else a * b  # type: ignore[operator]


def mult_str(m: Multiplicity) -> str:
    return "w" if m is OMEGA else str(m)


def term_key(t: CographTerm) -> str:
    """Canonical text of a normalized term; also its sort key."""
    if isinstance(t, Leaf):
        return "L"
    inner = ",".join(f"{term_key(child)}*{mult_str(mult)}" for child, mult in t.children)
    return f"{t.kind}[{inner}]"


def normalize(t: CographTerm) -> CographTerm:
    """Flatten same-kind nesting, merge equal children, sort children; idempotent."""
    if isinstance(t, Leaf):
        return t
    merged: dict[str, tuple[CographTerm, Multiplicity]] = {}
    for child, mult in t.children:
        child = normalize(child)
        if isinstance(child, Sum) and child.kind == t.kind:
            expanded = [(grandchild, mult_mul(mult, inner)) for grandchild, inner in child.children]
        else:
            expanded = [(child, mult)]
        for term, count in expanded:
            key = term_key(term)
            if key in merged:
                merged[key] = (term, mult_add(merged[key][1], count))
            else:
                merged[key] = (term, count)
    children = tuple(merged[key] for key in sorted(merged))
    if len(children) == 1 and children[0][1] == 1:
        return children[0][0]
    return Sum(t.kind, children)


def dual(t: CographTerm) -> CographTerm:
    """Swap direct and complete sums everywhere."""
    if isinstance(t, Leaf):
        return t
    kind = CSUM if t.kind == DSUM else DSUM
    return Sum(kind, tuple((dual(child), mult) for child, mult in t.children))


def denote(t: CographTerm, cap: int) -> Graph:
    """Finite graph of a term with omega replaced by cap."""
    if cap < 1:
        raise InvalidInputError("cap must be at least 1")
    if isinstance(t, Leaf):
        return Graph.empty(1)
    parts: list[Graph] = []
    for child, mult in t.children:
        part = denote(child, cap)
        parts.extend([part] * (cap if mult is OMEGA else mult))  # type: ignore[list-item]
    return direct_sum(parts) if t.kind == DSUM else complete_sum(parts)


def truncate(t: CographTerm, cap: int) -> CographTerm:
    """Replace every omega multiplicity by cap."""
    if cap < 1:
        raise InvalidInputError("cap must be at least 1")
    if isinstance(t, Leaf):
        return t
    return normalize(
        Sum(t.kind, tuple((truncate(child, cap), cap if mult is OMEGA else mult) for child, mult in t.children))
    )


def term_size(t: CographTerm) -> Multiplicity:
    if isinstance(t, Leaf):
        return 1
    total: Multiplicity = 0
    for child, mult in t.children:
        total = mult_add(total, mult_mul(mult, term_size(child)))
    return total


def _size_exceeds(a: Multiplicity, b: Multiplicity) -> bool:
    if a is OMEGA:
        return b is not OMEGA
    return b is not OMEGA and a > b  # type: ignore[operator]


def term_of_tree(t: ValuedMeetTree) -> CographTerm:
    """Term of the cograph a decomposition tree describes."""
    children = t.children()

    def build(node: int) -> CographTerm:
        if t.is_leaf(node):
            return LEAF
        kind = CSUM if t.values[node] == 1 else DSUM
        return Sum(kind, tuple((build(child), 1) for child in children[node]))

    return normalize(build(t.root))


def term_of_graph(g: Graph) -> CographTerm:
    return term_of_tree(decomposition_tree(g))


def term_from_payload(payload: TermPayload) -> CographTerm:
    if payload.op == "leaf":
        if payload.children:
            raise InvalidInputError("a leaf term has no children")
        return LEAF
    return Sum(
        payload.op,
        tuple(
            (term_from_payload(child.term), OMEGA if child.mult == "omega" else child.mult)
            for child in payload.children
        ),
    )


def term_to_payload(t: CographTerm) -> TermPayload:
    if isinstance(t, Leaf):
        return TermPayload(op="leaf", children=[])
    return TermPayload(
        op=t.kind,
        children=[
            TermChildPayload(term=term_to_payload(child), mult="omega" if mult is OMEGA else mult)
            for child, mult in t.children
        ],
    )


# Monomorphic decomposition of finite graphs


@dataclass(frozen=True)
class MonomorphicPartition:
    """Blocks ordered by least vertex; kinds[i] is "clique" or "independent"."""

    blocks: tuple[frozenset[int], ...]
    kinds: tuple[str, ...]

    def block_of(self, vertex: int) -> int:
        for i, block in enumerate(self.blocks):
            if vertex in block:
                return i
        raise InvalidInputError(f"vertex {vertex} is in no block")


def canonical_monomorphic_decomposition(g: Graph) -> MonomorphicPartition:
    """
    Coarsest monomorphic decomposition of a finite graph: its twin classes.

    True twins share their closed neighbourhood and form clique blocks; false
    twins share their open neighbourhood and form independent blocks.
    Singletons are tagged as cliques.
    """
    closed: dict[frozenset[int], list[int]] = {}
    open_: dict[frozenset[int], list[int]] = {}
    for v in range(g.n):
        closed.setdefault(g.adjacency[v] | {v}, []).append(v)
        open_.setdefault(g.adjacency[v], []).append(v)
    assigned: dict[int, tuple[frozenset[int], str]] = {}
    for group in closed.values():
        if len(group) > 1:
            for v in group:
                assigned[v] = (frozenset(group), "clique")
    for group in open_.values():
        if len(group) > 1:
            for v in group:
                assigned[v] = (frozenset(group), "independent")
    for v in range(g.n):
        assigned.setdefault(v, (frozenset({v}), "clique"))
    unique = sorted(set(assigned.values()), key=lambda item: min(item[0]))
    return MonomorphicPartition(
        blocks=tuple(block for block, _ in unique), kinds=tuple(kind for _, kind in unique)
    )


def block_quotient(g: Graph, partition: Sequence[Iterable[int]]) -> Graph:
    """
    Index graph of g as a lexicographic sum over the blocks of partition.

    Raises:
        InvalidInputError: If a block is empty or is not a module of g.
    """
    blocks = [frozenset(block) for block in partition]
    representatives: list[int] = []
    for block in blocks:
        if not block:
            raise InvalidInputError("blocks must be non-empty")
        if not is_module(g, block):
            raise InvalidInputError(f"block {sorted(block)} is not a module")
        representatives.append(min(block))
    return Graph.from_edges(
        len(blocks),
        [
            (i, j)
            for i in range(len(blocks))
            for j in range(i + 1, len(blocks))
            if g.has_edge(representatives[i], representatives[j])
        ],
    )


@dataclass(frozen=True)
class MonoConstraintReport:
    """Result of check_mono_embedding_constraint; violated_block is None when ok."""

    embeds: bool
    violated_block: frozenset[int] | None = None

    @property
    def ok(self) -> bool:
        return self.violated_block is None


def check_mono_embedding_constraint(g: Graph, a: Iterable[int]) -> MonoConstraintReport:
    """If g embeds into g restricted to a, a must contain every canonical block."""
    subset = frozenset(a)
    if not subset <= frozenset(range(g.n)):
        raise InvalidInputError("the vertex set leaves the graph")
    if not embeds(g, g.induced(subset)):
        return MonoConstraintReport(embeds=False)
    for block in canonical_monomorphic_decomposition(g).blocks:
        if len(block & subset) != len(block):
            return MonoConstraintReport(embeds=True, violated_block=block)
    return MonoConstraintReport(embeds=True)


# Classification


class VerdictTag(str, Enum):
    ONE = "One"
    INFINITE = "Infinite"


class Reason(str, Enum):
    EQUIMORPHIC_TO_COMPONENT = "EquimorphicToComponent"
    COMPONENT_WITH_INFINITELY_MANY_SIBLINGS = "ComponentWithInfinitelyManySiblings"
    INCREASING_COMPONENT_CHAIN = "IncreasingComponentChain"
    INFINITE_CANONICAL_CLASSES = "InfiniteCanonicalClasses"


@dataclass(frozen=True)
class SiblingVerdict:
    tag: VerdictTag
    class_count: Multiplicity
    reason: Reason | None = None

    def __post_init__(self) -> None:
        if (self.reason is None) != (self.tag is VerdictTag.ONE):
            raise InvalidInputError("a reason is given exactly for infinite verdicts")

    def __str__(self) -> str:
        if self.reason is None:
            return self.tag.value
        return f"{self.tag.value}: {self.reason.value}"


def class_count(t: CographTerm) -> Multiplicity:
    """Number of canonical monomorphic classes of the denoted countable cograph."""
    t = normalize(t)
    if isinstance(t, Leaf):
        return 1
    total: Multiplicity = 1 if any(isinstance(child, Leaf) for child, _ in t.children) else 0
    for child, mult in t.children:
        if isinstance(child, Leaf):
            continue
        total = mult_add(total, mult_mul(mult, class_count(child)))
    return total


def classify_siblings(t: CographTerm) -> SiblingVerdict:
    """One sibling iff the canonical decomposition is finite; otherwise diagnose why."""
    t = normalize(t)
    count = class_count(t)
    if count is not OMEGA:
        return SiblingVerdict(tag=VerdictTag.ONE, class_count=count)
    return SiblingVerdict(tag=VerdictTag.INFINITE, class_count=count, reason=diagnose(t))


def _disconnected_view(t: Sum) -> Sum:
    return t if t.kind == DSUM else normalize(dual(t))  # type: ignore[return-value]


def diagnose(t: CographTerm) -> Reason:
    """
    Why a term has infinitely many siblings, first matching case wins.

    The cases run over the components of t, or of its dual when t is connected.

    Raises:
        InvalidInputError: If the term has exactly one sibling.
    """
    t = normalize(t)
    if class_count(t) is not OMEGA or isinstance(t, Leaf):
        raise InvalidInputError("the term has a finite canonical decomposition and one sibling")
    view = _disconnected_view(t)
    components = [(child, mult) for child, mult in view.children if not isinstance(child, Leaf)]
    for child, _ in components:
        if term_embeds(view, child):
            return Reason.EQUIMORPHIC_TO_COMPONENT
    for child, _ in components:
        if class_count(child) is OMEGA:
            return Reason.COMPONENT_WITH_INFINITELY_MANY_SIBLINGS
    for _, mult in components:
        if mult is OMEGA:
            return Reason.INCREASING_COMPONENT_CHAIN
    return Reason.INFINITE_CANONICAL_CLASSES


@dataclass(frozen=True)
class ComponentDiagnostics:
    term: CographTerm
    multiplicity: Multiplicity
    trivial: bool
    class_count: Multiplicity
    verdict: SiblingVerdict


def component_report(t: CographTerm) -> list[ComponentDiagnostics]:
    """Per-component view of the classifier for a term or, when connected, its dual."""
    t = normalize(t)
    if isinstance(t, Leaf):
        return [ComponentDiagnostics(t, 1, True, 1, classify_siblings(t))]
    view = _disconnected_view(t)
    return [
        ComponentDiagnostics(
            term=child,
            multiplicity=mult,
            trivial=isinstance(child, Leaf),
            class_count=class_count(child),
            verdict=classify_siblings(child),
        )
        for child, mult in view.children
    ]


# Embedding between terms


@dataclass
class _Slot:
    host: CographTerm
    bundle: list[tuple[CographTerm, Multiplicity]] = field(default_factory=list)


class _TermEmbedder:
    """Memoized recursive embedding test between normalized terms."""

    def __init__(self, budget: int, unit_limit: int) -> None:
        self.budget = budget
        self.unit_limit = unit_limit
        self.nodes = 0
        self.memo: dict[tuple[str, str], bool] = {}

    def _tick(self) -> None:
        self.nodes += 1
        if self.nodes > self.budget:
            raise BudgetExceededError("term_embeds", self.budget)

    def embeds(self, s: CographTerm, t: CographTerm) -> bool:
        key = (term_key(s), term_key(t))
        if key not in self.memo:
            self._tick()
            self.memo[key] = self._compute(s, t)
        return self.memo[key]

    def _compute(self, s: CographTerm, t: CographTerm) -> bool:
        if isinstance(s, Leaf):
            return True
        if isinstance(t, Leaf):
            return False
        if _size_exceeds(term_size(s), term_size(t)):
            return False
        if s.kind == DSUM and t.kind == CSUM:
            # a disconnected pattern lies inside one part of a join
            return any(self.embeds(s, part) for part, _ in t.children)
        if s.kind == CSUM and t.kind == DSUM:
            return any(self.embeds(s, part) for part, _ in t.children)
        if s.kind == CSUM:
            return self.embeds(normalize(dual(s)), normalize(dual(t)))
        return self._components_into_components(s, t)

    def _units(self, mult: Multiplicity) -> int:
        if mult is not OMEGA and mult > self.unit_limit:  # type: ignore[operator]
            raise BudgetExceededError("term_embeds", self.unit_limit)
        return mult  # type: ignore[return-value]

    def _fits(self, bundle: list[tuple[CographTerm, Multiplicity]], host: CographTerm) -> bool:
        if len(bundle) == 1 and bundle[0][1] == 1:
            return self.embeds(bundle[0][0], host)
        return self.embeds(normalize(Sum(DSUM, tuple(bundle))), host)

    def _components_into_components(self, s: Sum, t: Sum) -> bool:
        """
        Map the components of s into the components of t.

        Several components may share one host copy when their direct sum fits
        it. Omega hosts supply fresh copies without limit, so an omega demand
        spreads over them for free when one copy fits.
        """
        omega_hosts = [child for child, mult in t.children if mult is OMEGA]
        finite_hosts: dict[str, tuple[CographTerm, int]] = {}
        items: list[tuple[CographTerm, Multiplicity]] = []
        for child, mult in s.children:
            if mult is OMEGA:
                if not any(self.embeds(child, host) for host in omega_hosts):
                    items.append((child, OMEGA))
            else:
                items.extend([(child, 1)] * self._units(mult))
        for child, mult in t.children:
            if mult is not OMEGA:
                finite_hosts[term_key(child)] = (child, min(mult, len(items)))  # type: ignore[type-var]
        items.sort(key=lambda item: (item[1] is not OMEGA, -_sort_size(item[0]), term_key(item[0])))
        spare = {key: count for key, (_, count) in finite_hosts.items()}
        slots: list[_Slot] = []

        def place(i: int, first_slot: int) -> bool:
            if i == len(items):
                return True
            self._tick()
            item = items[i]
            same_as_next = i + 1 < len(items) and items[i + 1] == item
            for index in range(first_slot, len(slots)):
                slot = slots[index]
                slot.bundle.append(item)
                if self._fits(slot.bundle, slot.host) and place(i + 1, index if same_as_next else 0):
                    return True
                slot.bundle.pop()
            openings: list[tuple[str | None, CographTerm]] = [
                (key, host) for key, (host, _) in finite_hosts.items() if spare[key] > 0
            ]
            openings.extend((None, host) for host in omega_hosts)
            for key, host in openings:
                if not self._fits([item], host):
                    continue
                if key is not None:
                    spare[key] -= 1
                slots.append(_Slot(host=host, bundle=[item]))
                if place(i + 1, len(slots) - 1 if same_as_next else 0):
                    return True
                slots.pop()
                if key is not None:
                    spare[key] += 1
            return False

        return place(0, 0)


def _sort_size(t: CographTerm) -> int:
    size = term_size(t)
    return 1 << 30 if size is OMEGA else size  # type: ignore[return-value]


def term_embeds(s: CographTerm, t: CographTerm, budget: int | None = None) -> bool:
    """
    True when the cograph denoted by s embeds as an induced subgraph into that of t.

    Raises:
        BudgetExceededError: If the search runs past its node budget or a finite
            multiplicity is too large to expand.
    """
    embedder = _TermEmbedder(
        config.SEARCH_NODE_BUDGET if budget is None else budget, config.TERM_UNIT_LIMIT
    )
    result = embedder.embeds(normalize(s), normalize(t))
    logger.debug(f"term_embeds {term_key(normalize(s))} into {term_key(normalize(t))}: {result}")
    return result


def embeds_both_ways(s: CographTerm, t: CographTerm) -> bool:
    """Equimorphy of two terms."""
    return term_embeds(s, t) and term_embeds(t, s)
