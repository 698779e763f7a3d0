"""
Finite prefixes of reduced labelled chains and the coded sibling family built on them.

Prefix entries are indexed from the right: entry 0 is the rightmost position
and larger indices lie further left, so a prefix models the head of a chain
with no least element.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Iterable, Sequence

from chains import QuasiOrder, RegularChain, q_embedding
from errors import AnchorShortageError, InvalidInputError, MalformedPrefixError
from schemas import PrefixEntryPayload, PrefixPayload
from siblings import (
    CSUM,
    DSUM,
    CographTerm,
    Leaf,
    Sum,
    clique,
    denote,
    independent,
    normalize,
    term_embeds,
    term_from_payload,
    term_key,
    term_to_payload,
    truncate,
)
from structures import OMEGA, Graph, LabelledChainSpec, labelled_sum

logger: logging.Logger = logging.getLogger(__name__)

FBits = tuple[int, ...]


@dataclass(frozen=True)
class PrefixEntry:
    part: CographTerm
    bit: int
    anchor: bool = False


def _even_block(part: CographTerm) -> tuple[str, int] | None:
    """(kind, size) when part is a clique or independent set of even finite size."""
    if isinstance(part, Leaf) or len(part.children) != 1:
        return None
    child, mult = part.children[0]
    if isinstance(child, Leaf) and mult is not OMEGA and mult % 2 == 0:  # type: ignore[operator]
        return part.kind, mult  # type: ignore[return-value]
    return None


@dataclass(frozen=True)
class ReducedChainPrefix:
    """
    Entries from the right, each with a cograph term, a bit and an anchor flag.

    Anchors carry bit 1. Parts with bit 0 are not complete sums and parts with
    bit 1 are not direct sums. Any three consecutive entries show both bits.
    """

    entries: tuple[PrefixEntry, ...]

    def __post_init__(self) -> None:
        for i, entry in enumerate(self.entries):
            if entry.bit not in (0, 1):
                raise InvalidInputError(f"entry {i} has bit {entry.bit!r}")
            if entry.anchor and entry.bit != 1:
                raise InvalidInputError(f"anchor entry {i} must carry bit 1")
            part = normalize(entry.part)
            if isinstance(part, Sum) and part.kind == (CSUM if entry.bit == 0 else DSUM):
                raise InvalidInputError(f"entry {i} with bit {entry.bit} has a {part.kind} part")
        for i in range(len(self.entries) - 2):
            bits = {entry.bit for entry in self.entries[i:i + 3]}
            if len(bits) < 2:
                raise InvalidInputError(f"entries {i}..{i + 2} all carry bit {bits.pop()}")

    @property
    def anchors(self) -> list[int]:
        """Anchor positions from the right."""
        return [i for i, entry in enumerate(self.entries) if entry.anchor]

    def __len__(self) -> int:
        return len(self.entries)


def parse_bits(text: str) -> FBits:
    if any(ch not in "01" for ch in text):
        raise InvalidInputError(f"bit word {text!r} may only hold 0 and 1")
    return tuple(int(ch) for ch in text)


def repeated_prefix(block: Sequence[PrefixEntry], copies: int) -> ReducedChainPrefix:
    """A prefix made of copies of block, each copy further left than the last."""
    if copies < 1 or not block:
        raise InvalidInputError("a repeated prefix needs a non-empty block and at least one copy")
    return ReducedChainPrefix(entries=tuple(block) * copies)


def extend_prefix(prefix: ReducedChainPrefix, block: Sequence[PrefixEntry], copies: int = 1) -> ReducedChainPrefix:
    """Add copies of block to the left end of prefix."""
    return ReducedChainPrefix(entries=prefix.entries + tuple(block) * copies)


def leftmost_anchor_block(prefix: ReducedChainPrefix) -> tuple[PrefixEntry, ...]:
    anchors = prefix.anchors
    if not anchors:
        raise AnchorShortageError("the prefix has no anchor")
    return prefix.entries[anchors[-1]:]


def _extend_even(part: CographTerm) -> CographTerm:
    block = _even_block(normalize(part))
    if block is None:
        return part
    kind, size = block
    return clique(size + 1) if kind == CSUM else independent(size + 1)


def build_Cf(prefix: ReducedChainPrefix, f: Sequence[int]) -> ReducedChainPrefix:
    """
    Insert the blocks coding f next to the first len(f) anchors from the right.

    Right after anchor n comes an independent set of size 2 f[n] + 2 with bit 0,
    then a clique of the same size with bit 1. Every original even clique or
    independent set gains one vertex.

    Raises:
        AnchorShortageError: If f is longer than the anchor list.
    """
    bits = tuple(f)
    if any(bit not in (0, 1) for bit in bits):
        raise InvalidInputError("f may only hold bits 0 and 1")
    anchors = prefix.anchors
    if len(bits) > len(anchors):
        raise AnchorShortageError(f"f has {len(bits)} bits but the prefix has {len(anchors)} anchors")
    coded = {anchors[n]: bits[n] for n in range(len(bits))}
    entries: list[PrefixEntry] = []
    for i, entry in enumerate(prefix.entries):
        if i in coded:
            size = 2 * coded[i] + 2
            entries.append(PrefixEntry(part=clique(size), bit=1))
            entries.append(PrefixEntry(part=independent(size), bit=0))
        entries.append(PrefixEntry(part=_extend_even(entry.part), bit=entry.bit, anchor=entry.anchor))
    logger.debug(f"built prefix of {len(entries)} entries for f={''.join(map(str, bits))}")
    return ReducedChainPrefix(entries=tuple(entries))


def decode_f(prefix: ReducedChainPrefix) -> FBits:
    """
    Read back f from the inserted blocks of a built prefix.

    Raises:
        MalformedPrefixError: If an even clique or independent set is not part of
            an inserted pair covering the anchors in order.
    """
    entries = prefix.entries
    anchors = prefix.anchors
    paired: set[int] = set()
    decoded: list[int] = []
    for i, entry in enumerate(entries):
        block = _even_block(normalize(entry.part))
        if block is None or entry.bit != 0 or block[0] != DSUM:
            continue
        size = block[1]
        if i + 1 >= len(entries) or not entries[i + 1].anchor:
            raise MalformedPrefixError(f"independent block at {i} does not follow an anchor")
        if i == 0 or entries[i - 1].bit != 1 or _even_block(normalize(entries[i - 1].part)) != (CSUM, size):
            raise MalformedPrefixError(f"independent block at {i} is not followed by a clique of size {size}")
        if size not in (2, 4):
            raise MalformedPrefixError(f"inserted size {size} does not code a bit")
        expected = anchors[len(decoded)] if len(decoded) < len(anchors) else None
        if expected != i + 1:
            raise MalformedPrefixError(f"inserted blocks at {i} skip an anchor")
        decoded.append((size - 2) // 2)
        paired.update((i - 1, i))
    for i, entry in enumerate(entries):
        if i not in paired and _even_block(normalize(entry.part)) is not None:
            raise MalformedPrefixError(f"even block at {i} is not an inserted pair")
    return tuple(decoded)


def materialize(prefix: ReducedChainPrefix, cap: int) -> Graph:
    """Labelled sum of the denoted parts, leftmost entry first."""
    spec = LabelledChainSpec(
        entries=tuple((denote(entry.part, cap), entry.bit) for entry in reversed(prefix.entries))
    )
    return labelled_sum(spec)


def prefix_term(prefix: ReducedChainPrefix, cap: int | None = None) -> CographTerm:
    """
    The labelled sum as a cograph term, optionally with omega truncated to cap.

    A leftmost part with bit 1 is joined to the rest; with bit 0 it sits beside it.
    """
    if not prefix.entries:
        raise InvalidInputError("the empty prefix has no term")
    term: CographTerm | None = None
    for entry in prefix.entries:
        part = entry.part if cap is None else truncate(entry.part, cap)
        if term is None:
            term = part
        else:
            term = Sum(CSUM if entry.bit == 1 else DSUM, ((part, 1), (term, 1)))
    assert term is not None
    return normalize(term)


def _chain_certificate(built: ReducedChainPrefix, target: ReducedChainPrefix, cap: int) -> bool:
    """Position-wise embedding: equal bits and embeddable parts, order kept."""
    left = [(truncate(e.part, cap), e.bit) for e in reversed(built.entries)]
    right = [(truncate(e.part, cap + 1), e.bit) for e in reversed(target.entries)]
    labels: dict[tuple[str, int], CographTerm] = {}
    for part, bit in left + right:
        labels.setdefault((term_key(part), bit), part)
    pairs = [
        (a, b)
        for a in labels
        for b in labels
        if a[1] == b[1] and term_embeds(labels[a], labels[b])
    ]
    order = QuasiOrder(elements=tuple(labels), leq=frozenset(pairs))
    return q_embedding(
        RegularChain.finite((term_key(part), bit) for part, bit in left),
        RegularChain.finite((term_key(part), bit) for part, bit in right),
        order,
    )


def prefix_sibling_check(
    base: ReducedChainPrefix, built: ReducedChainPrefix, cap: int, extension: int
) -> bool:
    """
    Whether the built prefix at cap embeds into the base, extended leftward by
    `extension` copies of its leftmost anchor block, at cap + 1.

    Raises:
        BudgetExceededError: If the exact term search runs out of budget.
    """
    if cap < 1 or extension < 0:
        raise InvalidInputError("cap must be positive and extension non-negative")
    target = extend_prefix(base, leftmost_anchor_block(base), extension) if extension else base
    if _chain_certificate(built, target, cap):
        return True
    return term_embeds(prefix_term(built, cap), prefix_term(target, cap + 1))


def base_set(n: int) -> list[int]:
    """First n elements of 0, 1, 3, 6, ...: gaps 1, 2, 3, ... strictly increasing."""
    if n < 1:
        raise InvalidInputError("base_set needs n >= 1")
    values = [0]
    for k in range(n - 1):
        values.append(values[-1] + k + 1)
    return values


def word_code(word: str) -> int:
    """Level-order index of a binary word in the infinite binary tree."""
    code = 0
    for ch in word:
        code = 2 * code + (1 if ch == "0" else 2)
    return code


def _base_element(index: int) -> int:
    return index * (index + 1) // 2


@dataclass(frozen=True)
class ADFamilyMember:
    seed: str
    support: tuple[int, ...]


def ad_member(seed: str, length: int) -> ADFamilyMember:
    parse_bits(seed)
    count = min(length, len(seed))
    support = sorted({_base_element(word_code(seed[:k])) for k in range(1, count + 1)})
    return ADFamilyMember(seed=seed, support=tuple(support))


def distinguishes(a: ADFamilyMember, b: ADFamilyMember, shift: int, window: int) -> bool:
    """True when a and b shifted by shift differ somewhere in [0, window)."""
    if shift < 0:
        raise InvalidInputError("shift must be non-negative")
    seen_a = {x for x in a.support if x < window}
    seen_b = {x + shift for x in b.support if x + shift < window}
    return seen_a != seen_b


def witness_window(a: ADFamilyMember, b: ADFamilyMember) -> int:
    """A window holding both supports entirely, with room for small shifts."""
    return 2 * max(a.support + b.support + (0,)) + 2


def prefix_to_payload(prefix: ReducedChainPrefix) -> PrefixPayload:
    return PrefixPayload(
        positions=[
            PrefixEntryPayload(part=term_to_payload(e.part), bit=e.bit, anchor=e.anchor)
            for e in prefix.entries
        ]
    )


def prefix_from_payload(payload: PrefixPayload) -> ReducedChainPrefix:
    return ReducedChainPrefix(
        entries=tuple(
            PrefixEntry(part=normalize(term_from_payload(p.part)), bit=p.bit, anchor=p.anchor)
            for p in payload.positions
        )
    )


def prefix_to_dot(prefix: ReducedChainPrefix, name: str = "P") -> str:
    """Positions left to right; anchors drawn doubled."""
    lines = [f"digraph {name} {{", "  rankdir=LR;"]
    ordered = list(reversed(list(enumerate(prefix.entries))))
    for i, entry in ordered:
        shape = "doublecircle" if entry.anchor else "circle"
        lines.append(f'  p{i} [label="{term_key(normalize(entry.part))} | {entry.bit}", shape={shape}];')
    for (i, _), (j, _) in zip(ordered, ordered[1:]):
        lines.append(f"  p{i} -> p{j};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def sample_block() -> tuple[PrefixEntry, ...]:
    """An anchor clique K_omega followed, to its left, by an independent K_omega-bar."""
    return (
        PrefixEntry(part=clique(OMEGA), bit=1, anchor=True),
        PrefixEntry(part=independent(OMEGA), bit=0),
    )


def anchored_prefix(anchors: int) -> ReducedChainPrefix:
    return repeated_prefix(sample_block(), anchors)


def family_members(prefix: ReducedChainPrefix, words: Iterable[Sequence[int]]) -> list[ReducedChainPrefix]:
    return [build_Cf(prefix, word) for word in words]
