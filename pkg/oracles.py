"""
Brute-force oracles and seeded random instances.

Each oracle answers a question straight from its definition, so the production
algorithms can be cross-checked on small inputs.
"""

from __future__ import annotations

import itertools
import logging
import random
from typing import Iterable, Sequence

import networkx as nx

import config
from chains import Finite, OmegaStar, QuasiOrder, RegularChain, q_embedding, truncate_word
from cotree import ValuedMeetTree
from errors import BudgetExceededError, UndecidedError
from family import PrefixEntry, ReducedChainPrefix
from modular import strong_modules
from schemas import OracleReport
from siblings import (
    CSUM,
    DSUM,
    LEAF,
    CographTerm,
    Multiplicity,
    Sum,
    canonical_monomorphic_decomposition,
    clique,
    independent,
    normalize,
)
from structures import (
    OMEGA,
    BinaryStructure,
    Graph,
    LabelAlphabet,
    Structure,
    complement,
    complete_sum,
    direct_sum,
    is_cograph,
)

logger: logging.Logger = logging.getLogger(__name__)


# Modules


def _is_module_by_definition(m: Structure, subset: frozenset[int]) -> bool:
    return all(
        m.label(x, y) == m.label(x, z) and m.label(y, x) == m.label(z, x)
        for x in range(m.n)
        if x not in subset
        for y in subset
        for z in subset
    )


def enumerate_modules(m: Structure) -> set[frozenset[int]]:
    """
    Every module of m, the empty set included, by scanning all subsets.

    Raises:
        BudgetExceededError: If m has more vertices than the oracle limit.
    """
    if m.n > config.MODULE_ORACLE_LIMIT:
        raise BudgetExceededError("enumerate_modules", config.MODULE_ORACLE_LIMIT)
    found: set[frozenset[int]] = set()
    for size in range(m.n + 1):
        for subset in itertools.combinations(range(m.n), size):
            candidate = frozenset(subset)
            if _is_module_by_definition(m, candidate):
                found.add(candidate)
    return found


def overlaps(a: frozenset[int], b: frozenset[int]) -> bool:
    return bool(a & b) and not a <= b and not b <= a


def strong_modules_by_enumeration(m: Structure) -> set[frozenset[int]]:
    """Non-empty modules that no module overlaps."""
    modules = enumerate_modules(m)
    return {a for a in modules if a and not any(overlaps(a, b) for b in modules)}


# Graphs


def has_induced_p4_by_scan(g: Graph) -> bool:
    for quad in itertools.combinations(range(g.n), 4):
        sub = g.induced(quad)
        if sub.edge_count() == 3 and sorted(sub.degree(v) for v in range(4)) == [1, 1, 2, 2]:
            return True
    return False


def definition_monomorphic_check(g: Graph, partition: Sequence[Iterable[int]]) -> bool:
    """
    True when any two vertex sets meeting every block in equally many vertices
    induce isomorphic subgraphs.

    Raises:
        BudgetExceededError: If g has more vertices than the oracle limit.
    """
    if g.n > config.MONOMORPHIC_ORACLE_LIMIT:
        raise BudgetExceededError("definition_monomorphic_check", config.MONOMORPHIC_ORACLE_LIMIT)
    blocks = [frozenset(block) for block in partition]
    representatives: dict[tuple[int, ...], nx.Graph] = {}
    for size in range(g.n + 1):
        for subset in itertools.combinations(range(g.n), size):
            chosen = frozenset(subset)
            profile = tuple(len(chosen & block) for block in blocks)
            induced = g.induced(chosen).to_networkx()
            if profile not in representatives:
                representatives[profile] = induced
            elif not nx.is_isomorphic(representatives[profile], induced):
                return False
    return True


# Chains


def _longest_period(c: RegularChain) -> int:
    return max((len(s.letters) for s in c.segments if isinstance(s, OmegaStar)), default=1)


def _finite_letters(c: RegularChain) -> int:
    return sum(len(s.letters) for s in c.segments if isinstance(s, Finite))


def _omega_segments(c: RegularChain) -> int:
    return sum(1 for s in c.segments if isinstance(s, OmegaStar))


def word_embeds(word: Sequence, target: Sequence, q: QuasiOrder) -> bool:
    """Subsequence embedding with non-decreasing labels, by dynamic programming."""
    # reach[i]: the first i letters of word fit into the target prefix read so far
    reach = [True] + [False] * len(word)
    for letter in target:
        for i in range(len(word), 0, -1):
            if reach[i - 1] and q.le(word[i - 1], letter):
                reach[i] = True
    return reach[len(word)]


def truncation_embedding(
    c: RegularChain, d: RegularChain, q: QuasiOrder, n: int, slack: int | None = None
) -> bool:
    """
    Whether the last n letters of c embed into the last m letters of d.

    By default m leaves one period of d for every letter and every omega-star
    segment, plus all finite letters of d.
    """
    if slack is None:
        m = (n + _omega_segments(d)) * _longest_period(d) + _finite_letters(d)
    else:
        m = n + slack
    return word_embeds(truncate_word(c, n), truncate_word(d, m), q)


# Random instances


def random_graph(rng: random.Random, n: int, p: float = 0.5) -> Graph:
    return Graph.from_edges(n, [pair for pair in itertools.combinations(range(n), 2) if rng.random() < p])


def random_cograph(rng: random.Random, n: int) -> Graph:
    """A random cograph on n vertices with shuffled vertex names."""
    if n <= 1:
        return Graph.empty(n)

    def build(size: int) -> Graph:
        if size == 1:
            return Graph.empty(1)
        cut = rng.randint(1, size - 1)
        parts = [build(cut), build(size - cut)]
        return complete_sum(parts) if rng.random() < 0.5 else direct_sum(parts)

    g = build(n)
    names = list(range(n))
    rng.shuffle(names)
    return Graph.from_edges(n, [(names[u], names[v]) for u, v in g.edges()])


def random_structure(rng: random.Random, n: int, alphabet_size: int = 3) -> BinaryStructure:
    """
    A random structure over symbols 0..alphabet_size-1, diagonal 0.

    Built by substituting random structures into random structures, so that
    non-trivial modules are common.
    """
    alphabet = LabelAlphabet(symbols=tuple(range(alphabet_size)), diagonal=0)

    def uniform(size: int) -> list[list[int]]:
        return [
            [0 if x == y else rng.randrange(alphabet_size) for y in range(size)] for x in range(size)
        ]

    def build(size: int) -> list[list[int]]:
        if size <= 2 or rng.random() < 0.3:
            return uniform(size)
        outer_size = rng.randint(2, min(size, 4))
        sizes = [1] * outer_size
        for _ in range(size - outer_size):
            sizes[rng.randrange(outer_size)] += 1
        outer = uniform(outer_size)
        inner = [build(s) for s in sizes]
        owner = [i for i, s in enumerate(sizes) for _ in range(s)]
        local = [k for s in sizes for k in range(s)]
        return [
            [
                inner[owner[x]][local[x]][local[y]] if owner[x] == owner[y] else outer[owner[x]][owner[y]]
                for y in range(size)
            ]
            for x in range(size)
        ]

    rows = build(n) if n > 0 else []
    order = list(range(n))
    rng.shuffle(order)
    return BinaryStructure(
        alphabet=alphabet,
        rows=tuple(tuple(rows[order[x]][order[y]] for y in range(n)) for x in range(n)),
    )


def random_valued_tree(rng: random.Random, leaves: int) -> ValuedMeetTree:
    """
    A random valid tree with the given number of leaves.

    Values alternate along every root-to-leaf path, which keeps the valuation dense.
    """
    parents: list[int | None] = []
    values: list[int | None] = []
    marks: list[int | None] = []
    names = list(range(leaves))
    rng.shuffle(names)

    def grow(size: int, parent: int | None, value: int) -> None:
        index = len(parents)
        parents.append(parent)
        if size == 1:
            values.append(None)
            marks.append(names.pop())
            return
        values.append(value)
        marks.append(None)
        arity = rng.randint(2, min(size, 4))
        sizes = [1] * arity
        for _ in range(size - arity):
            sizes[rng.randrange(arity)] += 1
        for s in sizes:
            grow(s, index, 1 - value)

    grow(leaves, None, rng.randint(0, 1))
    return ValuedMeetTree(parents=tuple(parents), values=tuple(values), leaves=tuple(marks))


def random_term(rng: random.Random, depth: int = 3, omega_rate: float = 0.3) -> CographTerm:
    """A random normalized term; omega multiplicities appear with the given rate."""

    def mult() -> Multiplicity:
        return OMEGA if rng.random() < omega_rate else rng.randint(1, 3)

    def build(level: int) -> CographTerm:
        if level == 0 or rng.random() < 0.3:
            return LEAF
        kind = DSUM if rng.random() < 0.5 else CSUM
        children = tuple((build(level - 1), mult()) for _ in range(rng.randint(1, 3)))
        if len(children) == 1 and children[0][1] == 1:
            children = children + ((LEAF, 1),)
        return Sum(kind, children)

    return normalize(build(depth))


def random_chain(rng: random.Random, labels: Sequence, infinite: bool | None = None) -> RegularChain:
    """A finite chain, or an omega-star power followed by a finite word."""
    if infinite is None:
        infinite = rng.random() < 0.5
    tail = [rng.choice(labels) for _ in range(rng.randint(0, 3))]
    if not infinite:
        return RegularChain.finite([rng.choice(labels) for _ in range(rng.randint(0, 5))])
    period = [rng.choice(labels) for _ in range(rng.randint(1, 3))]
    return RegularChain.omega_star(period, tail)


def random_prefix(rng: random.Random, anchors: int) -> ReducedChainPrefix:
    """
    A random valid prefix whose bits alternate, with `anchors` anchors among the bit-1 entries.

    Parts are odd cliques or odd independent sets, single vertices or omega sets,
    so no even block is present before coding.
    """
    entries: list[PrefixEntry] = []
    anchored = 0
    while anchored < anchors:
        odd = rng.choice([1, 3, 5, OMEGA])
        anchor = rng.random() < 0.7
        entries.append(PrefixEntry(part=clique(odd), bit=1, anchor=anchor))
        anchored += int(anchor)
        entries.append(PrefixEntry(part=independent(rng.choice([1, 3, OMEGA])), bit=0))
    return ReducedChainPrefix(entries=tuple(entries))


# Cross-checks


def _report(operation: str, instance: str, oracle: object, production: object) -> OracleReport:
    oracle_text, production_text = str(oracle), str(production)
    return OracleReport(
        operation=operation,
        instance=instance,
        oracle_result=oracle_text,
        production_result=production_text,
        agreement=oracle_text == production_text,
    )


def _describe_rows(m: BinaryStructure) -> str:
    return "/".join("".join(str(s) for s in row) for row in m.rows)


def cross_check(seed: int, count: int) -> list[OracleReport]:
    """
    Compare production algorithms with their oracles on `count` seeded instances
    of each kind.
    """
    rng = random.Random(seed)
    reports: list[OracleReport] = []
    for _ in range(count):
        m = random_structure(rng, rng.randint(1, 7), rng.randint(2, 3))
        production = sorted(sorted(s) for s in strong_modules(m).members)
        oracle = sorted(sorted(s) for s in strong_modules_by_enumeration(m))
        reports.append(_report("strong_modules", _describe_rows(m), oracle, production))

        g = random_graph(rng, rng.randint(1, 7), rng.random())
        instance = g.to_edgelist().strip().replace("\n", ";")
        reports.append(_report("is_cograph", instance, not has_induced_p4_by_scan(g), is_cograph(g)))
        reports.append(
            _report("is_cograph_complement", instance, is_cograph(g), is_cograph(complement(g)))
        )
        blocks = canonical_monomorphic_decomposition(g).blocks
        reports.append(
            _report("canonical_monomorphic_decomposition", instance, True, definition_monomorphic_check(g, blocks))
        )

        labels = ["a", "b", "c"]
        order = QuasiOrder.from_pairs(labels, [("a", "b")] if rng.random() < 0.5 else [])
        c = random_chain(rng, labels)
        d = random_chain(rng, labels)
        try:
            accepted = q_embedding(c, d, order)
        except UndecidedError:
            logger.warning(f"q_embedding undecided on {c} into {d}")
            continue
        if accepted:
            truncations = all(truncation_embedding(c, d, order, n) for n in range(1, 17))
        else:
            truncations = not all(truncation_embedding(c, d, order, n) for n in range(1, 17))
        reports.append(_report("q_embedding", f"{c} into {d}", True, truncations))
    logger.info(f"cross-check with seed {seed} produced {len(reports)} reports")
    return reports
