"""
Tests for services.py - Service layer behind the command line.
Tests document parsing, operation dispatch and result rendering.
"""

import json

import pytest
from pydantic import ValidationError

from chains import RegularChain
from errors import AnchorShortageError, InvalidInputError, InvalidTreeError, NotACographError
from family import anchored_prefix, build_Cf, prefix_to_payload
from schemas import ChainPayload, PrefixPayload
from services import CHAIN_OPERATIONS, ChainService, FamilyService, GraphService, OracleService, TermService
from siblings import LEAF, clique, dsum, term_to_payload
from structures import Graph, is_cograph


def chain_document(chain, target=None, relation=(), elements=("a", "b")):
    """A chain document, by default over the labels a and b."""
    document = {
        "order": {"elements": list(elements), "relation": [list(pair) for pair in relation]},
        "chain": chain,
    }
    if target is not None:
        document["target"] = target
    return json.dumps(document)


def segments(*parts):
    return {"segments": [{"kind": kind, "word": list(word)} for kind, word in parts]}


@pytest.mark.services
class TestGraphService:
    """Test suite for GraphService class."""

    def test_load_edgelist_and_json_agree(self):
        """
        Test both graph input formats.

        Verifies:
        - Edge list and JSON documents describe the same graph
        - Unknown formats are rejected
        """
        from_edgelist = GraphService.load_graph("3 2\n0 1\n1 2\n")
        from_json = GraphService.load_graph('{"n": 3, "edges": [[0, 1], [1, 2]]}', "json")

        assert from_edgelist == from_json
        with pytest.raises(InvalidInputError):
            GraphService.load_graph("3 0\n", "adjacency")

    def test_load_malformed_json(self):
        with pytest.raises(ValidationError) as exc_info:
            GraphService.load_graph("{not json", "json")

        assert exc_info.value.errors()[0]["type"] == "json_invalid"

    def test_load_json_against_schema(self):
        with pytest.raises(ValidationError):
            GraphService.load_graph('{"n": 3, "edges": [[0]]}', "json")

    def test_render_formats(self, p4):
        assert GraphService.render_graph(p4) == "4 3\n0 1\n1 2\n2 3\n"
        assert json.loads(GraphService.render_graph(p4, "json")) == {"n": 4, "edges": [[0, 1], [1, 2], [2, 3]]}
        assert GraphService.render_graph(p4, "dot").startswith("graph G {")

    def test_recognize(self, p4, sample_cograph):
        assert GraphService.recognize(sample_cograph) is None
        assert GraphService.recognize(p4) == (0, 1, 2, 3)

    def test_decompose_json_round_trips_through_rebuild(self, sample_cograph):
        """
        Test decompose followed by rebuild.

        Verifies:
        - The JSON tree rebuilds the original graph
        - The DOT rendering is produced for the same tree
        """
        rendered = GraphService.decompose(sample_cograph)

        assert GraphService.rebuild(rendered) == sample_cograph
        assert GraphService.decompose(sample_cograph, "dot").startswith("digraph")

    def test_decompose_rejects_non_cographs(self, p4):
        with pytest.raises(NotACographError):
            GraphService.decompose(p4)

    def test_rebuild_rejects_invalid_trees(self):
        unary = json.dumps({"value": 1, "children": [{"leaf": 0}]})

        with pytest.raises(InvalidTreeError):
            GraphService.rebuild(unary)

    def test_strong_family(self, p4):
        """
        Test the strong-module family payload.

        Verifies:
        - The root covers every vertex and carries the prime type
        - Singletons are listed without a type
        """
        payload = GraphService.strong_family(p4)
        root = [node for node in payload.nodes if node.parent is None]

        assert payload.n == 4
        assert len(root) == 1
        assert root[0].vertex_subset == [0, 1, 2, 3]
        assert root[0].gallai_type == "prime"
        assert len(payload.nodes) == 5

    def test_embed(self, p4, c4, k3):
        assert GraphService.embed(Graph.path(3), c4)
        assert not GraphService.embed(k3, c4)
        assert not GraphService.embed(p4, k3)


@pytest.mark.services
class TestTermService:
    """Test suite for TermService class."""

    def test_load_and_classify(self, omega_k2_term, k_omega_term):
        """
        Test term documents through classification.

        Verifies:
        - A loaded term is normalized
        - Verdicts carry reason and class count
        """
        text = term_to_payload(omega_k2_term).model_dump_json()
        loaded = TermService.load_term(text)
        verdict = TermService.classify(loaded)

        assert verdict.verdict == "Infinite"
        assert verdict.reason == "IncreasingComponentChain"
        assert verdict.class_count == "omega"

        one = TermService.classify(k_omega_term)
        assert one.verdict == "One"
        assert one.reason is None
        assert one.class_count == 1

    def test_load_rejects_leaf_children(self):
        text = json.dumps({"op": "leaf", "children": [{"term": {"op": "leaf"}}]})

        with pytest.raises(InvalidInputError):
            TermService.load_term(text)

    def test_embed_and_materialize(self, mixed_term):
        assert TermService.embed(clique(3), mixed_term)
        assert not TermService.embed(dsum((clique(2), 2)), mixed_term)

        g = TermService.materialize(mixed_term, 3)
        assert g.n == 6
        assert is_cograph(g)

    def test_materialize_finite_term(self):
        g = TermService.materialize(dsum((LEAF, 2)), 5)

        assert g == Graph.empty(2)


@pytest.mark.services
class TestChainService:
    """Test suite for ChainService class."""

    def test_load_document(self):
        order, chain, target = ChainService.load_document(
            chain_document(segments(("omegastar", "a"), ("finite", "b")), relation=[("a", "b")])
        )

        assert order.le("a", "b")
        assert not order.le("b", "a")
        assert chain == RegularChain.omega_star(["a"], ["b"])
        assert target is None

    def test_embed(self):
        """
        Test the embed operation in both directions.

        Verifies:
        - The result flag follows the embedding
        - The rendered text names the outcome
        """
        assert ChainService.run(
            "embed", chain_document(segments(("finite", "aa")), segments(("finite", "ab")), [("a", "b")])
        ) == (True, "embeds\n")
        assert ChainService.run(
            "embed", chain_document(segments(("finite", "ba")), segments(("finite", "ab")))
        ) == (False, "does not embed\n")

    def test_embed_needs_target(self):
        with pytest.raises(InvalidInputError) as exc_info:
            ChainService.run("embed", chain_document(segments(("finite", "a"))))

        assert "needs a target" in str(exc_info.value)

    def test_sum_and_product(self):
        ok, rendered = ChainService.run(
            "sum", chain_document(segments(("omegastar", "a")), segments(("finite", "b")))
        )
        assert ok
        assert ChainPayload.model_validate_json(rendered) == ChainPayload.model_validate(
            segments(("omegastar", "a"), ("finite", "b"))
        )

        ok, rendered = ChainService.run("product", chain_document(segments(("finite", "ab"))), factor=3)
        assert ok
        assert json.loads(rendered)["segments"][0]["word"] == list("aaabbb")

    def test_indecomposability(self):
        assert ChainService.run("indecomposable", chain_document(segments(("finite", "a")))) == (
            True,
            "indecomposable\n",
        )
        assert ChainService.run("indecomposable", chain_document(segments(("finite", "ab")))) == (
            False,
            "decomposable\n",
        )
        assert ChainService.run("left-indecomposable", chain_document(segments(("finite", "ab")))) == (
            False,
            "not left-indecomposable\n",
        )

    def test_decompose_and_initial_segment(self):
        ok, rendered = ChainService.run("decompose", chain_document(segments(("finite", "aba"))))
        assert ok
        assert [part["segments"][0]["word"] for part in json.loads(rendered)] == [["a"], ["b"], ["a"]]

        ok, rendered = ChainService.run(
            "initial-segment",
            chain_document(segments(("omegastar", "ab"), ("finite", "c")), elements=("a", "b", "c")),
        )
        assert json.loads(rendered) == segments(("omegastar", "ab"))

    def test_classes_and_length(self):
        assert ChainService.run("classes", chain_document(segments(("finite", "ab")))) == (True, "[[0, 1]]\n")
        assert ChainService.run("length", chain_document(segments(("finite", "abb")))) == (True, "3\n")
        assert ChainService.run("length", chain_document(segments(("omegastar", "a")))) == (True, "omega\n")

    def test_unknown_operation(self):
        assert "classes" in CHAIN_OPERATIONS
        with pytest.raises(InvalidInputError):
            ChainService.run("reverse", chain_document(segments(("finite", "a"))))

    def test_relation_entry_must_be_pair(self):
        text = json.dumps(
            {"order": {"elements": ["a"], "relation": [["a"]]}, "chain": segments(("finite", "a"))}
        )

        with pytest.raises(InvalidInputError):
            ChainService.load_document(text)


@pytest.mark.services
class TestFamilyService:
    """Test suite for FamilyService class."""

    def test_build_json(self):
        rendered = FamilyService.build(4, "10")
        expected = prefix_to_payload(build_Cf(anchored_prefix(4), (1, 0)))

        assert PrefixPayload.model_validate_json(rendered) == expected

    def test_build_dot_and_graph(self):
        assert FamilyService.build(3, "1", emit="dot").startswith("digraph")

        g = Graph.from_edgelist(FamilyService.build(3, "1", emit="graph", cap=2))
        assert g.n > 0
        assert is_cograph(g)

    def test_build_rejects_bad_input(self):
        with pytest.raises(InvalidInputError):
            FamilyService.build(3, "012")
        with pytest.raises(AnchorShortageError):
            FamilyService.build(1, "0101")
        with pytest.raises(InvalidInputError):
            FamilyService.build(3, "1", emit="svg")


@pytest.mark.services
class TestOracleService:
    """Test suite for OracleService class."""

    def test_run_reports_disagreements(self, mocker):
        """
        Test the cross-check summary.

        Verifies:
        - Any disagreeing report turns the summary negative
        - Reports are rendered one JSON object per line
        """
        from schemas import OracleReport

        reports = [
            OracleReport(operation="x", instance="1", oracle_result="a", production_result="a", agreement=True),
            OracleReport(operation="y", instance="2", oracle_result="a", production_result="b", agreement=False),
        ]
        mocker.patch("services.cross_check", return_value=reports)

        ok, returned = OracleService.run(seed=1, count=1)

        assert not ok
        assert returned == reports
        lines = OracleService.render(returned).splitlines()
        assert len(lines) == 2
        assert json.loads(lines[1])["productionResult"] == "b"

    def test_run_small_sample(self):
        ok, reports = OracleService.run(seed=5, count=2)

        assert ok
        assert reports
        assert all(report.agreement for report in reports)
