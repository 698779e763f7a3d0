"""
Finite binary structures and graphs.
Holds the sum constructors, cograph recognition and the induced embedding search.
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass
from enum import Enum
from typing import Hashable, Iterable, Mapping, Protocol, Sequence

import networkx as nx

import config
from errors import BudgetExceededError, InvalidInputError

logger: logging.Logger = logging.getLogger(__name__)

Symbol = Hashable


class Omega(Enum):
    """The countably infinite size, used for multiplicities and chain lengths."""

    OMEGA = "omega"

    def __str__(self) -> str:
        return "omega"


OMEGA = Omega.OMEGA


@dataclass(frozen=True)
class LabelAlphabet:
    """Finite set of labels with the symbol reserved for the pairs (x, x)."""

    symbols: tuple[Symbol, ...]
    diagonal: Symbol

    def __post_init__(self) -> None:
        if not self.symbols:
            raise InvalidInputError("a label alphabet needs at least one symbol")
        if self.diagonal not in self.symbols:
            raise InvalidInputError(
                f"diagonal symbol {self.diagonal!r} is not in the alphabet"
            )

    def __contains__(self, symbol: object) -> bool:
        return symbol in self.symbols


GRAPH_ALPHABET = LabelAlphabet(symbols=(0, 1), diagonal=0)


class Structure(Protocol):
    """Anything with vertices 0..n-1 and a label on every ordered pair."""

    @property
    def n(self) -> int: ...

    @property
    def alphabet(self) -> LabelAlphabet: ...

    def label(self, x: int, y: int) -> Symbol: ...


@dataclass(frozen=True)
class BinaryStructure:
    """
    A finite vertex set 0..n-1 with a label matrix over an alphabet.

    rows[x][y] is the label of the ordered pair (x, y); the diagonal always
    carries alphabet.diagonal and plays no part in module computations.
    """

    alphabet: LabelAlphabet
    rows: tuple[tuple[Symbol, ...], ...]

    def __post_init__(self) -> None:
        n = len(self.rows)
        for x, row in enumerate(self.rows):
            if len(row) != n:
                raise InvalidInputError(f"row {x} has {len(row)} labels, expected {n}")
            for y, symbol in enumerate(row):
                if symbol not in self.alphabet:
                    raise InvalidInputError(f"label {symbol!r} at ({x}, {y}) is not in the alphabet")
            if row[x] != self.alphabet.diagonal:
                raise InvalidInputError(f"diagonal label at ({x}, {x}) must be {self.alphabet.diagonal!r}")

    @classmethod
    def from_rows(
        cls, rows: Sequence[Sequence[Symbol]], alphabet: LabelAlphabet | None = None
    ) -> BinaryStructure:
        """Build a structure, inferring the alphabet from the rows when none is given."""
        frozen = tuple(tuple(row) for row in rows)
        if alphabet is None:
            if not frozen:
                alphabet = GRAPH_ALPHABET
            else:
                used = {symbol for row in frozen for symbol in row}
                alphabet = LabelAlphabet(
                    symbols=tuple(sorted(used, key=repr)), diagonal=frozen[0][0]
                )
        return cls(alphabet=alphabet, rows=frozen)

    @property
    def n(self) -> int:
        return len(self.rows)

    @property
    def vertices(self) -> range:
        return range(self.n)

    def label(self, x: int, y: int) -> Symbol:
        return self.rows[x][y]

    def induced(self, vertices: Iterable[int]) -> BinaryStructure:
        """Restriction to the given vertices, renumbered in increasing order."""
        kept = sorted(set(vertices))
        return BinaryStructure(
            alphabet=self.alphabet,
            rows=tuple(tuple(self.rows[x][y] for y in kept) for x in kept),
        )


@dataclass(frozen=True)
class Graph:
    """A finite simple undirected graph on the vertices 0..n-1."""

    n: int
    adjacency: tuple[frozenset[int], ...]

    def __post_init__(self) -> None:
        if len(self.adjacency) != self.n:
            raise InvalidInputError(
                f"adjacency has {len(self.adjacency)} rows for {self.n} vertices"
            )
        for v, neighbours in enumerate(self.adjacency):
            if v in neighbours:
                raise InvalidInputError(f"loop at vertex {v}")
            for u in neighbours:
                if not 0 <= u < self.n:
                    raise InvalidInputError(f"edge {v}-{u} leaves the vertex range")
                if v not in self.adjacency[u]:
                    raise InvalidInputError(f"edge {v}-{u} is not symmetric")

    # Constructors

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> Graph:
        if n < 0:
            raise InvalidInputError("vertex count must be non-negative")
        neighbours: list[set[int]] = [set() for _ in range(n)]
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise InvalidInputError(f"edge {u}-{v} leaves the vertex range 0..{n - 1}")
            if u == v:
                raise InvalidInputError(f"loop at vertex {u}")
            neighbours[u].add(v)
            neighbours[v].add(u)
        return cls(n=n, adjacency=tuple(frozenset(s) for s in neighbours))

    @classmethod
    def empty(cls, n: int) -> Graph:
        """The independent set on n vertices."""
        return cls.from_edges(n, [])

    @classmethod
    def complete(cls, n: int) -> Graph:
        return cls.from_edges(n, itertools.combinations(range(n), 2))

    @classmethod
    def path(cls, n: int) -> Graph:
        return cls.from_edges(n, [(i, i + 1) for i in range(n - 1)])

    @classmethod
    def cycle(cls, n: int) -> Graph:
        if n < 3:
            raise InvalidInputError("a cycle needs at least three vertices")
        return cls.from_edges(n, [(i, (i + 1) % n) for i in range(n)])

    @classmethod
    def from_networkx(cls, graph: nx.Graph) -> Graph:
        nodes = sorted(graph.nodes)
        index = {node: i for i, node in enumerate(nodes)}
        return cls.from_edges(len(nodes), ((index[u], index[v]) for u, v in graph.edges))

    # Structure protocol

    @property
    def alphabet(self) -> LabelAlphabet:
        return GRAPH_ALPHABET

    @property
    def vertices(self) -> range:
        return range(self.n)

    def label(self, x: int, y: int) -> int:
        return 1 if y in self.adjacency[x] else 0

    # Queries

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adjacency[u]

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def edges(self) -> list[tuple[int, int]]:
        """Edges as (u, v) with u < v, sorted."""
        return sorted((u, v) for u in range(self.n) for v in self.adjacency[u] if u < v)

    def edge_count(self) -> int:
        return sum(len(s) for s in self.adjacency) // 2

    def induced(self, vertices: Iterable[int]) -> Graph:
        """Induced subgraph, renumbered in increasing vertex order."""
        kept = sorted(set(vertices))
        index = {v: i for i, v in enumerate(kept)}
        return Graph(
            n=len(kept),
            adjacency=tuple(
                frozenset(index[u] for u in self.adjacency[v] if u in index) for v in kept
            ),
        )

    def as_structure(self) -> BinaryStructure:
        return BinaryStructure(
            alphabet=GRAPH_ALPHABET,
            rows=tuple(tuple(self.label(x, y) for y in range(self.n)) for x in range(self.n)),
        )

    def to_networkx(self) -> nx.Graph:
        graph = nx.Graph()
        graph.add_nodes_from(range(self.n))
        graph.add_edges_from(self.edges())
        return graph

    # Text formats

    def to_edgelist(self) -> str:
        lines = [f"{self.n} {self.edge_count()}"]
        lines.extend(f"{u} {v}" for u, v in self.edges())
        return "\n".join(lines) + "\n"

    @classmethod
    def from_edgelist(cls, text: str) -> Graph:
        """Parse the `n m` header followed by m lines `u v`."""
        rows = [line.split() for line in text.splitlines() if line.strip()]
        if not rows or len(rows[0]) != 2:
            raise InvalidInputError("edge list must start with a line `n m`")
        try:
            n, m = int(rows[0][0]), int(rows[0][1])
            edges = [(int(u), int(v)) for u, v in rows[1:]]
        except ValueError as e:
            raise InvalidInputError(f"malformed edge list: {str(e)}")
        if len(edges) != m:
            raise InvalidInputError(f"edge list announces {m} edges but holds {len(edges)}")
        return cls.from_edges(n, edges)

    def to_dot(self, name: str = "G") -> str:
        lines = [f"graph {name} {{"]
        lines.extend(f"  {v};" for v in range(self.n))
        lines.extend(f"  {u} -- {v};" for u, v in self.edges())
        lines.append("}")
        return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class LabelledChainSpec:
    """
    A finite chain of positions, each carrying a non-empty graph and a bit.

    Entries are listed in chain order; the bit of a position decides whether its
    graph is joined to every graph at a later position.
    """

    entries: tuple[tuple[Graph, int], ...]

    def __post_init__(self) -> None:
        for position, (part, bit) in enumerate(self.entries):
            if part.n == 0:
                raise InvalidInputError(f"position {position} carries an empty graph")
            if bit not in (0, 1):
                raise InvalidInputError(f"position {position} carries bit {bit!r}")

    @property
    def positions(self) -> range:
        return range(len(self.entries))


def complement(g: Graph) -> Graph:
    everything = frozenset(range(g.n))
    return Graph(
        n=g.n,
        adjacency=tuple(everything - g.adjacency[v] - {v} for v in range(g.n)),
    )


def _union(parts: Sequence[Graph], joined: bool) -> Graph:
    if not parts:
        raise InvalidInputError("a sum needs at least one part")
    if any(part.n == 0 for part in parts):
        raise InvalidInputError("sum parts must be non-empty")
    if len(parts) == 1:
        return parts[0]
    edges: list[tuple[int, int]] = []
    offsets: list[int] = []
    total = 0
    for part in parts:
        offsets.append(total)
        edges.extend((u + total, v + total) for u, v in part.edges())
        total += part.n
    if joined:
        for i, j in itertools.combinations(range(len(parts)), 2):
            edges.extend(
                (offsets[i] + u, offsets[j] + v)
                for u in range(parts[i].n)
                for v in range(parts[j].n)
            )
    return Graph.from_edges(total, edges)


def direct_sum(parts: Sequence[Graph]) -> Graph:
    """Disjoint union with no edge between distinct parts."""
    return _union(list(parts), joined=False)


def complete_sum(parts: Sequence[Graph]) -> Graph:
    """Disjoint union with every edge between distinct parts."""
    return _union(list(parts), joined=True)


def labelled_sum(spec: LabelledChainSpec) -> Graph:
    """
    Sum over a labelled chain.

    For x in the part at position i and y in the part at a later position j,
    x and y are adjacent exactly when the bit of i is 1.
    """
    offsets: list[int] = []
    total = 0
    edges: list[tuple[int, int]] = []
    for part, _ in spec.entries:
        offsets.append(total)
        edges.extend((u + total, v + total) for u, v in part.edges())
        total += part.n
    for i, (part_i, bit) in enumerate(spec.entries):
        if bit != 1:
            continue
        start_i = offsets[i]
        for j in range(i + 1, len(spec.entries)):
            part_j = spec.entries[j][0]
            edges.extend(
                (start_i + u, offsets[j] + v) for u in range(part_i.n) for v in range(part_j.n)
            )
    return Graph.from_edges(total, edges)


def lex_sum(index: Graph, parts: Mapping[int, Graph]) -> Graph:
    """Lexicographic sum: replace index vertex i by parts[i]."""
    for i in range(index.n):
        if i not in parts:
            raise InvalidInputError(f"index vertex {i} has no part")
        if parts[i].n == 0:
            raise InvalidInputError(f"index vertex {i} has an empty part")
    offsets: list[int] = []
    total = 0
    edges: list[tuple[int, int]] = []
    for i in range(index.n):
        offsets.append(total)
        edges.extend((u + total, v + total) for u, v in parts[i].edges())
        total += parts[i].n
    for i, j in index.edges():
        edges.extend(
            (offsets[i] + u, offsets[j] + v) for u in range(parts[i].n) for v in range(parts[j].n)
        )
    return Graph.from_edges(total, edges)


def _split(g: Graph, vertices: Sequence[int], complemented: bool) -> list[list[int]]:
    """Connected components of g (or of its complement) restricted to vertices."""
    graph = g.to_networkx().subgraph(vertices)
    if complemented:
        graph = nx.complement(graph)
    return sorted((sorted(c) for c in nx.connected_components(graph)), key=min)


def _prime_part(g: Graph, vertices: list[int]) -> list[int] | None:
    """A vertex set inducing a connected and co-connected subgraph on >= 4 vertices."""
    if len(vertices) < 4:
        return None
    for complemented in (False, True):
        pieces = _split(g, vertices, complemented)
        if len(pieces) > 1:
            for piece in pieces:
                found = _prime_part(g, piece)
                if found is not None:
                    return found
            return None
    return vertices


def _as_path(g: Graph, quad: Sequence[int]) -> tuple[int, int, int, int] | None:
    inside = set(quad)
    degree = {v: len(g.adjacency[v] & inside) for v in quad}
    if sorted(degree.values()) != [1, 1, 2, 2]:
        return None
    start = min(v for v in quad if degree[v] == 1)
    path = [start]
    while len(path) < 4:
        step = [u for u in g.adjacency[path[-1]] & inside if u not in path]
        if len(step) != 1:
            return None
        path.append(step[0])
    return (path[0], path[1], path[2], path[3])


def find_induced_p4(g: Graph) -> tuple[int, int, int, int] | None:
    """
    Return an induced path on four vertices, in path order, or None for cographs.

    The witness is the lexicographically first P4 inside the first node of the
    decomposition that is neither disconnected nor co-disconnected.
    """
    prime = _prime_part(g, list(range(g.n)))
    if prime is None:
        return None
    for quad in itertools.combinations(prime, 4):
        path = _as_path(g, quad)
        if path is not None:
            return path
    raise AssertionError("a connected, co-connected graph always contains an induced P4")


def is_cograph(g: Graph) -> bool:
    return _prime_part(g, list(range(g.n))) is None


def connected_components(g: Graph) -> list[frozenset[int]]:
    """Vertex sets of the components, ordered by least vertex."""
    components = nx.connected_components(g.to_networkx())
    return sorted((frozenset(c) for c in components), key=min)


def is_isomorphic(g: Graph, h: Graph) -> bool:
    if g.n != h.n or g.edge_count() != h.edge_count():
        return False
    return bool(nx.is_isomorphic(g.to_networkx(), h.to_networkx()))


class _EmbeddingSearch:
    """Backtracking search for an induced embedding with degree pruning."""

    def __init__(self, pattern: Graph, target: Graph, budget: int) -> None:
        self.pattern = pattern
        self.target = target
        self.budget = budget
        self.nodes = 0
        self.order = self._pattern_order()
        self.mapping: dict[int, int] = {}
        self.used: set[int] = set()

    def _pattern_order(self) -> list[int]:
        p = self.pattern
        order: list[int] = []
        placed: set[int] = set()
        while len(order) < p.n:
            best = max(
                (v for v in range(p.n) if v not in placed),
                key=lambda v: (len(p.adjacency[v] & placed), p.degree(v), -v),
            )
            order.append(best)
            placed.add(best)
        return order

    def _candidates(self, u: int) -> Iterable[int]:
        p, t = self.pattern, self.target
        degree = p.degree(u)
        codegree = p.n - 1 - degree
        for v in range(t.n):
            if v in self.used:
                continue
            if t.degree(v) < degree or t.n - 1 - t.degree(v) < codegree:
                continue
            if all(
                (w in p.adjacency[u]) == (image in t.adjacency[v])
                for w, image in self.mapping.items()
            ):
                yield v

    def run(self, depth: int = 0) -> bool:
        if depth == len(self.order):
            return True
        u = self.order[depth]
        for v in self._candidates(u):
            self.nodes += 1
            if self.nodes > self.budget:
                raise BudgetExceededError("embeds", self.budget)
            self.mapping[u] = v
            self.used.add(v)
            if self.run(depth + 1):
                return True
            del self.mapping[u]
            self.used.discard(v)
        return False


def find_embedding(
    pattern: Graph, target: Graph, budget: int | None = None
) -> dict[int, int] | None:
    """An injective map preserving edges and non-edges, or None when there is none."""
    if pattern.n > target.n:
        return None
    pattern_pairs = pattern.n * (pattern.n - 1) // 2
    target_pairs = target.n * (target.n - 1) // 2
    if pattern.edge_count() > target.edge_count():
        return None
    if pattern_pairs - pattern.edge_count() > target_pairs - target.edge_count():
        return None
    search = _EmbeddingSearch(
        pattern, target, config.SEARCH_NODE_BUDGET if budget is None else budget
    )
    found = search.run()
    logger.debug(f"embedding search on {pattern.n} into {target.n} used {search.nodes} nodes")
    return dict(search.mapping) if found else None


def embeds(pattern: Graph, target: Graph, budget: int | None = None) -> bool:
    return find_embedding(pattern, target, budget) is not None
