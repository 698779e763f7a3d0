"""
Labelled chains over a finite quasi-order.

A RegularChain is a finite sequence of segments: a finite word, or the
omega-star power ...ppp of a non-empty period p. Embeddings are decided by
reading both chains right to left, where they become well-ordered and the
earliest-feasible greedy matching is exact.
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass
from typing import Hashable, Iterable, Sequence, Union

from networkx.utils import UnionFind

import config
from errors import InvalidInputError, UndecidedError, UnsupportedChainError
from structures import OMEGA, Omega

logger: logging.Logger = logging.getLogger(__name__)

Label = Hashable


@dataclass(frozen=True)
class QuasiOrder:
    """A reflexive, transitive relation on a finite label set."""

    elements: tuple[Label, ...]
    leq: frozenset[tuple[Label, Label]]

    def __post_init__(self) -> None:
        if len(set(self.elements)) != len(self.elements):
            raise InvalidInputError("quasi-order elements must be distinct")
        known = set(self.elements)
        for a, b in self.leq:
            if a not in known or b not in known:
                raise InvalidInputError(f"pair ({a!r}, {b!r}) uses an unknown element")
        for a in self.elements:
            if (a, a) not in self.leq:
                raise InvalidInputError(f"relation is not reflexive at {a!r}")
        for (a, b), (c, d) in itertools.product(self.leq, repeat=2):
            if b == c and (a, d) not in self.leq:
                raise InvalidInputError(f"relation is not transitive at {a!r} <= {b!r} <= {d!r}")

    @classmethod
    def antichain(cls, elements: Iterable[Label]) -> QuasiOrder:
        items = tuple(elements)
        return cls(elements=items, leq=frozenset((a, a) for a in items))

    @classmethod
    def from_pairs(cls, elements: Iterable[Label], pairs: Iterable[tuple[Label, Label]]) -> QuasiOrder:
        """Reflexive-transitive closure of the given pairs."""
        items = tuple(elements)
        relation = {(a, a) for a in items} | set(pairs)
        for k in items:
            for i in items:
                if (i, k) not in relation:
                    continue
                for j in items:
                    if (k, j) in relation:
                        relation.add((i, j))
        return cls(elements=items, leq=frozenset(relation))

    @classmethod
    def linear(cls, elements: Iterable[Label]) -> QuasiOrder:
        """Total order in the given sequence, least first."""
        items = tuple(elements)
        return cls(
            elements=items,
            leq=frozenset((items[i], items[j]) for i in range(len(items)) for j in range(i, len(items))),
        )

    def le(self, a: Label, b: Label) -> bool:
        return (a, b) in self.leq


@dataclass(frozen=True)
class Finite:
    letters: tuple[Label, ...]


@dataclass(frozen=True)
class OmegaStar:
    letters: tuple[Label, ...]

    def __post_init__(self) -> None:
        if not self.letters:
            raise InvalidInputError("an omega-star period must be non-empty")


Segment = Union[Finite, OmegaStar]


@dataclass(frozen=True)
class RegularChain:
    segments: tuple[Segment, ...]

    @classmethod
    def build(cls, segments: Iterable[Segment]) -> RegularChain:
        """Drop empty words and merge neighbouring finite words."""
        merged: list[Segment] = []
        for segment in segments:
            if isinstance(segment, Finite):
                if not segment.letters:
                    continue
                if merged and isinstance(merged[-1], Finite):
                    merged[-1] = Finite(merged[-1].letters + segment.letters)
                    continue
            merged.append(segment)
        return cls(segments=tuple(merged))

    @classmethod
    def finite(cls, letters: Iterable[Label]) -> RegularChain:
        return cls.build([Finite(tuple(letters))])

    @classmethod
    def omega_star(cls, period: Iterable[Label], tail: Iterable[Label] = ()) -> RegularChain:
        return cls.build([OmegaStar(tuple(period)), Finite(tuple(tail))])

    @property
    def is_finite(self) -> bool:
        return all(isinstance(s, Finite) for s in self.segments)

    @property
    def letters(self) -> set[Label]:
        return {letter for s in self.segments for letter in s.letters}

    def word(self) -> tuple[Label, ...]:
        if not self.is_finite:
            raise UnsupportedChainError("only finite chains have a word")
        return tuple(letter for s in self.segments for letter in s.letters)

    def __str__(self) -> str:
        parts = []
        for s in self.segments:
            text = "".join(str(letter) for letter in s.letters)
            parts.append(f"w*({text})" if isinstance(s, OmegaStar) else text)
        return " + ".join(parts) if parts else "empty"


def length(c: RegularChain) -> int | Omega:
    return len(c.word()) if c.is_finite else OMEGA


def _check_labels(q: QuasiOrder, *chains: RegularChain) -> None:
    known = set(q.elements)
    for chain in chains:
        unknown = chain.letters - known
        if unknown:
            raise InvalidInputError(f"labels {sorted(map(str, unknown))} are not in the quasi-order")


def chain_sum(c: RegularChain, d: RegularChain) -> RegularChain:
    """c followed by d."""
    return RegularChain.build(c.segments + d.segments)


def ordinal_product(n: int, c: RegularChain) -> RegularChain:
    """Replace every element of c by n consecutive copies of itself."""
    if n < 1:
        raise InvalidInputError("ordinal product needs n >= 1")
    segments: list[Segment] = []
    for s in c.segments:
        repeated = tuple(letter for letter in s.letters for _ in range(n))
        segments.append(OmegaStar(repeated) if isinstance(s, OmegaStar) else Finite(repeated))
    return RegularChain.build(segments)


def truncate_word(c: RegularChain, n: int) -> tuple[Label, ...]:
    """The last n letters of c, unrolling periods; shorter when c is finite and short."""
    collected: list[Label] = []
    for s in reversed(c.segments):
        if len(collected) >= n:
            break
        if isinstance(s, OmegaStar):
            period = s.letters
            i = 0
            while len(collected) < n:
                collected.append(period[len(period) - 1 - i % len(period)])
                i += 1
        else:
            for letter in reversed(s.letters):
                if len(collected) >= n:
                    break
                collected.append(letter)
    return tuple(reversed(collected))


# Positions in a reversed target are (segment, offset); offsets inside an
# omega segment are kept modulo its period.
Position = tuple[int, int]


class _GreedyMatcher:
    def __init__(self, target: RegularChain, q: QuasiOrder, budget: int) -> None:
        self.segments = [
            (isinstance(s, OmegaStar), tuple(reversed(s.letters)))
            for s in reversed(target.segments)
            if s.letters
        ]
        self.q = q
        self.budget = budget
        self.steps = 0

    def _tick(self) -> None:
        self.steps += 1
        if self.steps > self.budget:
            raise UndecidedError("q_embedding", self.budget)

    def place(self, letter: Label, start: Position) -> Position | None:
        """Earliest position at or after start whose label is above letter."""
        j, k = start
        while j < len(self.segments):
            omega, word = self.segments[j]
            if omega:
                for step in range(len(word)):
                    self._tick()
                    offset = (k + step) % len(word)
                    if self.q.le(letter, word[offset]):
                        return (j, offset)
            else:
                while k < len(word):
                    self._tick()
                    if self.q.le(letter, word[k]):
                        return (j, k)
                    k += 1
            j, k = j + 1, 0
        return None

    def after(self, position: Position) -> Position:
        j, k = position
        omega, word = self.segments[j]
        if omega:
            return (j, (k + 1) % len(word))
        if k + 1 >= len(word):
            return (j + 1, 0)
        return (j, k + 1)

    def place_word(self, word: Sequence[Label], start: Position) -> Position | None:
        position = start
        for letter in word:
            image = self.place(letter, position)
            if image is None:
                return None
            position = self.after(image)
        return position

    def place_omega(self, period: Sequence[Label], start: Position) -> Position | None:
        """
        Place infinitely many copies of period.

        Once a period starts twice from the same residue of the same omega
        segment the matching repeats forever inside it, and the next free
        position is the start of the following segment.
        """
        seen: set[Position] = set()
        position = start
        while position[0] < len(self.segments):
            j, _ = position
            if self.segments[j][0]:
                if position in seen:
                    return (j + 1, 0)
                seen.add(position)
            next_position = self.place_word(period, position)
            if next_position is None:
                return None
            position = next_position
        return None


def q_embedding(
    c: RegularChain, d: RegularChain, q: QuasiOrder, budget: int | None = None
) -> bool:
    """
    Decide whether c embeds into d by an order embedding that never lowers labels.

    Raises:
        InvalidInputError: If a label is not an element of q.
        UndecidedError: If the greedy matching runs past the step budget.
    """
    _check_labels(q, c, d)
    matcher = _GreedyMatcher(d, q, config.CHAIN_STEP_BUDGET if budget is None else budget)
    position: Position | None = (0, 0)
    for s in reversed(c.segments):
        if not s.letters:
            continue
        reversed_letters = tuple(reversed(s.letters))
        if isinstance(s, OmegaStar):
            position = matcher.place_omega(reversed_letters, position)
        else:
            position = matcher.place_word(reversed_letters, position)
        if position is None:
            logger.debug(f"{c} does not embed into {d} ({matcher.steps} steps)")
            return False
    logger.debug(f"{c} embeds into {d} ({matcher.steps} steps)")
    return True


def _shape(c: RegularChain) -> tuple[tuple[Label, ...], tuple[Label, ...]] | None:
    """(period, tail) for omega-star(period) + tail; None for finite chains."""
    if c.is_finite:
        return None
    segments = c.segments
    if isinstance(segments[0], OmegaStar) and (
        len(segments) == 1 or (len(segments) == 2 and isinstance(segments[1], Finite))
    ):
        tail = segments[1].letters if len(segments) == 2 else ()
        return segments[0].letters, tail
    raise UnsupportedChainError(
        f"{c}: only finite chains and an omega-star power followed by a finite word are supported"
    )


def _initial_parts(period: tuple[Label, ...], tail: tuple[Label, ...]) -> list[RegularChain]:
    """Every proper initial segment of w*(period) + tail, up to isomorphism."""
    parts = [RegularChain.omega_star(period, period[:i]) for i in range(len(period))]
    parts.extend(RegularChain.omega_star(period, tail[:j]) for j in range(1, len(tail)))
    return parts


def is_indecomposable(c: RegularChain, q: QuasiOrder) -> bool:
    """
    True when c embeds into one side of every split into initial and final part.

    An infinite chain never embeds into a finite final part, so only the
    initial parts need checking.
    """
    _check_labels(q, c)
    shape = _shape(c)
    if shape is None:
        return len(c.word()) <= 1
    period, tail = shape
    return all(q_embedding(c, part, q) for part in _initial_parts(period, tail))


def is_left_indecomposable(c: RegularChain, q: QuasiOrder) -> bool:
    """
    True when c embeds into every non-empty initial segment of itself.

    Final parts of the supported shapes are finite, so an infinite chain never
    embeds into one and both notions check the same initial parts.
    """
    return is_indecomposable(c, q)


def indecomposable_decomposition(c: RegularChain, q: QuasiOrder) -> list[RegularChain]:
    """
    Split c into indecomposable parts, keeping the longest indecomposable head.

    Finite chains split into singletons; letters after the head are singletons.
    """
    _check_labels(q, c)
    shape = _shape(c)
    if shape is None:
        return [RegularChain.finite((letter,)) for letter in c.word()]
    period, tail = shape
    for keep in range(len(tail), -1, -1):
        head = RegularChain.omega_star(period, tail[:keep])
        if keep == 0 or is_indecomposable(head, q):
            return [head] + [RegularChain.finite((letter,)) for letter in tail[keep:]]
    raise AssertionError("an omega-star power alone is always indecomposable")


def left_indec_initial_segment(c: RegularChain, q: QuasiOrder) -> RegularChain:
    """
    A left-indecomposable initial segment of a chain without least element.

    Raises:
        UnsupportedChainError: If c has a least element (starts with a finite word or is empty).
    """
    _check_labels(q, c)
    if not c.segments or not isinstance(c.segments[0], OmegaStar):
        raise UnsupportedChainError(f"{c} has a least element")
    return RegularChain(segments=(c.segments[0],))


def equivalence_classes(c: RegularChain, q: QuasiOrder) -> list[list[int]]:
    """
    Positions of a finite chain grouped by x ~ y iff c does not embed strictly between them.

    Every proper interval of a finite chain is shorter, so non-empty chains form one class.
    """
    _check_labels(q, c)
    if not c.is_finite:
        raise UnsupportedChainError("equivalence classes are computed for finite chains only")
    word = c.word()
    classes = UnionFind(range(len(word)))
    for x, y in itertools.combinations(range(len(word)), 2):
        between = RegularChain.finite(word[x + 1:y])
        if not q_embedding(c, between, q):
            classes.union(x, y)
    return sorted((sorted(s) for s in classes.to_sets()), key=min)
