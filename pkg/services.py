"""
Service layer behind the command line.
Parses input documents, runs the library operations and renders their results.
"""

import json
import logging
from typing import List, Optional, Tuple

from pydantic import TypeAdapter

from chains import (
    Finite,
    OmegaStar,
    QuasiOrder,
    RegularChain,
    chain_sum,
    equivalence_classes,
    indecomposable_decomposition,
    is_indecomposable,
    is_left_indecomposable,
    left_indec_initial_segment,
    length,
    ordinal_product,
    q_embedding,
)
from cotree import decomposition_tree, graph_of, to_dot, tree_from_payload, tree_to_payload
from errors import InvalidInputError
from family import anchored_prefix, build_Cf, decode_f, materialize, parse_bits, prefix_to_dot, prefix_to_payload
from modular import strong_modules
from oracles import cross_check
from schemas import (
    ChainDocument,
    ChainPayload,
    GraphPayload,
    OracleReport,
    SegmentPayload,
    StrongFamilyPayload,
    StrongModulePayload,
    TermPayload,
    TreeNodePayload,
    VerdictResponse,
)
from siblings import CographTerm, classify_siblings, denote, normalize, term_embeds, term_from_payload
from structures import OMEGA, Graph, embeds, find_induced_p4

logger: logging.Logger = logging.getLogger(__name__)

GRAPH_FORMATS = ("edgelist", "json")


class GraphService:
    """Service class for graph recognition, decomposition and embedding."""

    @staticmethod
    def load_graph(text: str, input_format: str = "edgelist") -> Graph:
        """
        Parse a graph document.

        Args:
            text: Document contents
            input_format: "edgelist" or "json"

        Returns:
            Parsed graph

        Raises:
            InvalidInputError: If the edge list is malformed or the format unknown
            ValidationError: If the JSON is malformed or does not match the graph schema
        """
        if input_format == "edgelist":
            return Graph.from_edgelist(text)
        if input_format == "json":
            payload = GraphPayload.model_validate_json(text)
            return Graph.from_edges(payload.n, [(u, v) for u, v in payload.edges])
        raise InvalidInputError(f"unknown graph format {input_format!r}")

    @staticmethod
    def render_graph(g: Graph, output_format: str = "edgelist") -> str:
        if output_format == "edgelist":
            return g.to_edgelist()
        if output_format == "json":
            return GraphPayload(n=g.n, edges=[[u, v] for u, v in g.edges()]).model_dump_json() + "\n"
        if output_format == "dot":
            return g.to_dot()
        raise InvalidInputError(f"unknown graph format {output_format!r}")

    @staticmethod
    def recognize(g: Graph) -> Optional[Tuple[int, int, int, int]]:
        """
        Test whether a graph is a cograph.

        Args:
            g: Graph to test

        Returns:
            None for a cograph, otherwise an induced P4 in path order
        """
        witness = find_induced_p4(g)
        logger.info(f"recognize on {g.n} vertices: {'cograph' if witness is None else 'not a cograph'}")
        return witness

    @staticmethod
    def decompose(g: Graph, output_format: str = "json") -> str:
        """
        Render the decomposition tree of a cograph.

        Args:
            g: A non-empty cograph
            output_format: "json" or "dot"

        Returns:
            The rendered tree

        Raises:
            NotACographError: If g contains an induced P4
        """
        tree = decomposition_tree(g)
        logger.info(f"decompose on {g.n} vertices: {tree.size} tree nodes")
        if output_format == "dot":
            return to_dot(tree)
        if output_format == "json":
            return tree_to_payload(tree).model_dump_json(exclude_none=False) + "\n"
        raise InvalidInputError(f"unknown tree format {output_format!r}")

    @staticmethod
    def strong_family(g: Graph) -> StrongFamilyPayload:
        """Strong-module family of any graph as a JSON-ready payload."""
        family = strong_modules(g)
        logger.info(f"strong family on {g.n} vertices: {len(family.nodes)} members")
        return StrongFamilyPayload(
            n=family.n,
            nodes=[
                StrongModulePayload(
                    vertex_subset=sorted(node.vertices),
                    parent=node.parent,
                    gallai_type=None if node.gallai_type is None else node.gallai_type.describe(),
                )
                for node in family.nodes
            ],
        )

    @staticmethod
    def rebuild(text: str) -> Graph:
        """
        Rebuild a cograph from a JSON decomposition tree.

        Raises:
            InvalidTreeError: If the tree violates an invariant
        """
        payload = TreeNodePayload.model_validate_json(text)
        g = graph_of(tree_from_payload(payload))
        logger.info(f"rebuild produced {g.n} vertices and {g.edge_count()} edges")
        return g

    @staticmethod
    def embed(pattern: Graph, target: Graph) -> bool:
        result = embeds(pattern, target)
        logger.info(f"embed {pattern.n} into {target.n} vertices: {result}")
        return result


class TermService:
    """Service class for cograph terms and sibling classification."""

    @staticmethod
    def load_term(text: str) -> CographTerm:
        payload = TermPayload.model_validate_json(text)
        return normalize(term_from_payload(payload))

    @staticmethod
    def classify(t: CographTerm) -> VerdictResponse:
        """
        Classify a term by its number of siblings.

        Args:
            t: Term to classify

        Returns:
            Verdict with its reason and the number of canonical classes
        """
        verdict = classify_siblings(t)
        logger.info(f"classify: {verdict}")
        return VerdictResponse(
            verdict=verdict.tag.value,
            reason=None if verdict.reason is None else verdict.reason.value,
            class_count="omega" if verdict.class_count is OMEGA else verdict.class_count,
        )

    @staticmethod
    def embed(pattern: CographTerm, target: CographTerm) -> bool:
        result = term_embeds(pattern, target)
        logger.info(f"term embed: {result}")
        return result

    @staticmethod
    def materialize(t: CographTerm, cap: int) -> Graph:
        return denote(t, cap)


CHAIN_OPERATIONS = (
    "embed",
    "sum",
    "product",
    "indecomposable",
    "left-indecomposable",
    "decompose",
    "initial-segment",
    "classes",
    "length",
)

CHAIN_LIST_ADAPTER: TypeAdapter[List[ChainPayload]] = TypeAdapter(List[ChainPayload])


def _chain_of(payload: ChainPayload) -> RegularChain:
    segments = [
        OmegaStar(tuple(s.word)) if s.kind == "omegastar" else Finite(tuple(s.word))
        for s in payload.segments
    ]
    return RegularChain.build(segments)


def _payload_of(c: RegularChain) -> ChainPayload:
    return ChainPayload(
        segments=[
            SegmentPayload(
                kind="omegastar" if isinstance(s, OmegaStar) else "finite",
                word=[str(letter) for letter in s.letters],
            )
            for s in c.segments
        ]
    )


class ChainService:
    """Service class for the labelled chain operations."""

    @staticmethod
    def load_document(text: str) -> Tuple[QuasiOrder, RegularChain, Optional[RegularChain]]:
        document = ChainDocument.model_validate_json(text)
        pairs = []
        for pair in document.order.relation:
            if len(pair) != 2:
                raise InvalidInputError(f"relation entry {pair} is not a pair")
            pairs.append((pair[0], pair[1]))
        order = QuasiOrder.from_pairs(document.order.elements, pairs)
        target = None if document.target is None else _chain_of(document.target)
        return order, _chain_of(document.chain), target

    @staticmethod
    def run(operation: str, text: str, factor: int = 2) -> Tuple[bool, str]:
        """
        Run one chain operation on a chain document.

        Args:
            operation: One of CHAIN_OPERATIONS
            text: Chain document (order, chain and, for embed and sum, target)
            factor: Multiplier of the ordinal product

        Returns:
            Tuple of (affirmative, rendered result)

        Raises:
            InvalidInputError: If the operation needs a target that is missing
            UndecidedError: If an embedding search runs out of steps
        """
        order, chain, target = ChainService.load_document(text)
        if operation in ("embed", "sum") and target is None:
            raise InvalidInputError(f"chain operation {operation!r} needs a target chain")
        if operation == "embed":
            result = q_embedding(chain, target, order)  # type: ignore[arg-type]
            rendered = "embeds" if result else "does not embed"
        elif operation == "sum":
            result, rendered = True, _payload_of(chain_sum(chain, target)).model_dump_json()  # type: ignore[arg-type]
        elif operation == "product":
            result, rendered = True, _payload_of(ordinal_product(factor, chain)).model_dump_json()
        elif operation == "indecomposable":
            result = is_indecomposable(chain, order)
            rendered = "indecomposable" if result else "decomposable"
        elif operation == "left-indecomposable":
            result = is_left_indecomposable(chain, order)
            rendered = "left-indecomposable" if result else "not left-indecomposable"
        elif operation == "decompose":
            parts = indecomposable_decomposition(chain, order)
            result = True
            rendered = CHAIN_LIST_ADAPTER.dump_json([_payload_of(p) for p in parts]).decode()
        elif operation == "initial-segment":
            result, rendered = True, _payload_of(left_indec_initial_segment(chain, order)).model_dump_json()
        elif operation == "classes":
            result, rendered = True, json.dumps(equivalence_classes(chain, order))
        elif operation == "length":
            result, rendered = True, str(length(chain))
        else:
            raise InvalidInputError(f"unknown chain operation {operation!r}")
        logger.info(f"chain {operation} on {chain}: {rendered}")
        return result, rendered + "\n"


class FamilyService:
    """Service class for coded prefixes of the sibling family."""

    @staticmethod
    def build(anchors: int, bits: str, emit: str = "json", cap: int = 4) -> str:
        """
        Build the coded prefix for a bit word on a repeated anchor base.

        Args:
            anchors: Number of anchor blocks of the base
            bits: The word f, as 0/1 characters
            emit: "json", "dot" or "graph" (edge list of the materialized graph)
            cap: Truncation of omega when materializing

        Returns:
            The rendered prefix

        Raises:
            AnchorShortageError: If bits is longer than the anchor count
        """
        f = parse_bits(bits)
        built = build_Cf(anchored_prefix(anchors), f)
        if decode_f(built) != f:
            raise InvalidInputError("the built prefix does not decode to its bit word")
        logger.info(f"family build for f={bits} on {anchors} anchors: {len(built)} positions")
        if emit == "json":
            return prefix_to_payload(built).model_dump_json() + "\n"
        if emit == "dot":
            return prefix_to_dot(built)
        if emit == "graph":
            return materialize(built, cap).to_edgelist()
        raise InvalidInputError(f"unknown family output {emit!r}")


class OracleService:
    """Service class for the oracle cross-check mode."""

    @staticmethod
    def run(seed: int, count: int) -> Tuple[bool, List[OracleReport]]:
        reports = cross_check(seed, count)
        disagreements = [r for r in reports if not r.agreement]
        for report in disagreements:
            logger.warning(f"oracle disagreement on {report.operation}: {report.instance}")
        return not disagreements, reports

    @staticmethod
    def render(reports: List[OracleReport]) -> str:
        return "".join(r.model_dump_json(by_alias=True) + "\n" for r in reports)
