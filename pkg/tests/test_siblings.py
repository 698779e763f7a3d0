"""
Tests for siblings.py - cograph terms, monomorphic decompositions and the sibling classifier.
"""

import itertools

import pytest
from hypothesis import assume, given, settings

from errors import BudgetExceededError, InvalidInputError
from oracles import definition_monomorphic_check, random_cograph, random_term
from siblings import (
    DSUM,
    LEAF,
    Reason,
    Sum,
    VerdictTag,
    block_quotient,
    canonical_monomorphic_decomposition,
    check_mono_embedding_constraint,
    class_count,
    classify_siblings,
    clique,
    component_report,
    csum,
    denote,
    diagnose,
    dsum,
    dual,
    embeds_both_ways,
    independent,
    normalize,
    term_embeds,
    term_from_payload,
    term_key,
    term_of_graph,
    term_size,
    term_to_payload,
    truncate,
)
from structures import OMEGA, Graph, complement, embeds, is_isomorphic, lex_sum
from tests.strategies import cographs, largest_multiplicity, terms
from tests.term_corpus import TERM_CORPUS


@pytest.mark.unit
class TestTerms:
    """Test suite for building, normalizing and denoting terms."""

    def test_sum_validation(self):
        with pytest.raises(InvalidInputError):
            Sum("join", ((LEAF, 1),))
        with pytest.raises(InvalidInputError):
            Sum(DSUM, ())
        with pytest.raises(InvalidInputError):
            Sum(DSUM, ((LEAF, 0),))

    def test_normalize_examples(self):
        """
        Test normalization.

        Verifies:
        - Nested sums of the same kind flatten
        - Equal children merge their multiplicities
        - Omega absorbs finite multiplicities
        """
        a, b = clique(2), clique(3)
        assert normalize(dsum((dsum((a, 1), (b, 1)), 1))) == normalize(dsum((a, 1), (b, 1)))
        assert normalize(dsum((a, 2), (a, 3))) == dsum((a, 5))
        assert normalize(dsum((a, OMEGA), (a, 1))) == dsum((a, OMEGA))

    def test_normalize_unwraps_single_child(self):
        assert normalize(csum((LEAF, 1))) == LEAF

    def test_nested_multiplicities_multiply(self):
        assert normalize(dsum((independent(2), 3))) == independent(6)

    def test_term_key(self):
        assert term_key(LEAF) == "L"
        assert term_key(clique(OMEGA)) == "csum[L*w]"

    def test_denote_examples(self, two_k2):
        assert denote(LEAF, 3) == Graph.empty(1)
        assert denote(clique(OMEGA), 3) == Graph.complete(3)
        assert denote(dsum((clique(2), 2)), 3) == two_k2

    def test_denote_needs_positive_cap(self):
        with pytest.raises(InvalidInputError):
            denote(LEAF, 0)

    def test_dual_examples(self):
        assert dual(clique(OMEGA)) == independent(OMEGA)
        assert dual(dsum((clique(2), 2))) == csum((independent(2), 2))

    @pytest.mark.property
    @given(terms())
    @settings(max_examples=100, deadline=None)
    def test_dual_is_an_involution(self, t):
        assert dual(dual(t)) == t

    @pytest.mark.property
    @given(terms(allow_omega=False))
    @settings(max_examples=60, deadline=None)
    def test_dual_denotes_the_complement(self, t):
        assume(term_size(t) <= 60)
        assert denote(dual(t), 1) == complement(denote(t, 1))

    @pytest.mark.property
    @given(terms())
    @settings(max_examples=100, deadline=None)
    def test_normalize_is_idempotent(self, t):
        assert normalize(normalize(t)) == normalize(t)

    def test_term_size(self):
        assert term_size(dsum((clique(2), 3))) == 6
        assert term_size(dsum((clique(2), OMEGA))) is OMEGA

    def test_truncate(self):
        assert truncate(dsum((clique(OMEGA), OMEGA)), 2) == dsum((clique(2), 2))

    def test_payload_round_trip(self, mixed_term):
        assert normalize(term_from_payload(term_to_payload(mixed_term))) == normalize(mixed_term)

    @pytest.mark.property
    @given(cographs(max_vertices=7))
    @settings(max_examples=60, deadline=None)
    def test_term_of_graph_denotes_the_graph(self, g):
        assert is_isomorphic(denote(term_of_graph(g), 1), g)


@pytest.mark.unit
class TestMonomorphicDecomposition:
    """Test suite for the canonical monomorphic decomposition of finite graphs."""

    def test_examples(self, c4, p4):
        """
        Test canonical blocks of small graphs.

        Verifies:
        - C_4 splits into its two independent diagonals
        - P_4 has four singleton blocks
        - K_n is one clique block
        """
        c4_blocks = canonical_monomorphic_decomposition(c4)
        assert c4_blocks.blocks == (frozenset({0, 2}), frozenset({1, 3}))
        assert c4_blocks.kinds == ("independent", "independent")

        assert canonical_monomorphic_decomposition(p4).blocks == tuple(frozenset({v}) for v in range(4))

        k5 = canonical_monomorphic_decomposition(Graph.complete(5))
        assert k5.blocks == (frozenset(range(5)),)
        assert k5.kinds == ("clique",)

    def test_block_of(self, c4):
        partition = canonical_monomorphic_decomposition(c4)

        assert partition.block_of(2) == 0
        with pytest.raises(InvalidInputError):
            partition.block_of(9)

    @pytest.mark.oracle
    def test_blocks_satisfy_the_definition(self, rng):
        for _ in range(40):
            g = random_cograph(rng, rng.randint(1, 6))
            assert definition_monomorphic_check(g, canonical_monomorphic_decomposition(g).blocks)

    @pytest.mark.oracle
    def test_no_two_blocks_can_merge(self, rng):
        for _ in range(20):
            g = random_cograph(rng, rng.randint(2, 6))
            blocks = list(canonical_monomorphic_decomposition(g).blocks)
            for i, j in itertools.combinations(range(len(blocks)), 2):
                merged = [b for k, b in enumerate(blocks) if k not in (i, j)] + [blocks[i] | blocks[j]]
                assert not definition_monomorphic_check(g, merged)

    @pytest.mark.oracle
    def test_lex_sum_reconstruction(self, rng):
        for _ in range(30):
            g = random_cograph(rng, rng.randint(1, 8))
            partition = canonical_monomorphic_decomposition(g)
            index = block_quotient(g, partition.blocks)
            parts = {i: g.induced(block) for i, block in enumerate(partition.blocks)}
            assert is_isomorphic(lex_sum(index, parts), g)

    def test_block_quotient_rejects_non_modules(self, p4):
        with pytest.raises(InvalidInputError):
            block_quotient(p4, [[0, 2], [1], [3]])

    @pytest.mark.oracle
    def test_self_embedding_keeps_every_vertex(self, rng):
        for _ in range(15):
            g = random_cograph(rng, rng.randint(1, 6))
            for size in range(g.n):
                for subset in itertools.combinations(range(g.n), size):
                    assert not embeds(g, g.induced(subset))

    def test_mono_constraint_examples(self, c4):
        assert check_mono_embedding_constraint(c4, range(4)).ok
        partial = check_mono_embedding_constraint(c4, [0, 1, 2])
        assert partial.ok and not partial.embeds
        assert check_mono_embedding_constraint(Graph.complete(4), [0, 1, 2]).ok


@pytest.mark.unit
class TestClassification:
    """Test suite for class counts and the sibling classifier."""

    def test_class_count_examples(self, mixed_term, omega_k2_term):
        assert class_count(mixed_term) == 2
        assert class_count(omega_k2_term) is OMEGA
        assert class_count(LEAF) == 1

    def test_k_omega_has_one_sibling(self, k_omega_term):
        verdict = classify_siblings(k_omega_term)

        assert verdict.tag is VerdictTag.ONE
        assert verdict.class_count == 1
        assert str(verdict) == "One"

    def test_omega_copies_of_k2(self, omega_k2_term):
        verdict = classify_siblings(omega_k2_term)

        assert verdict.tag is VerdictTag.INFINITE
        assert verdict.reason is Reason.INCREASING_COMPONENT_CHAIN
        assert str(verdict) == "Infinite: IncreasingComponentChain"

    def test_component_with_infinitely_many_siblings(self, omega_k2_term):
        component = csum((LEAF, 1), (omega_k2_term, 1))
        t = dsum((component, 1), (LEAF, 1))

        assert diagnose(t) is Reason.COMPONENT_WITH_INFINITELY_MANY_SIBLINGS

    def test_equimorphic_to_component(self, mocker, omega_k2_term):
        mocker.patch("siblings.term_embeds", return_value=True)

        assert diagnose(omega_k2_term) is Reason.EQUIMORPHIC_TO_COMPONENT

    def test_infinite_canonical_classes(self, mocker):
        t = normalize(dsum((clique(2), 2), (clique(3), 1)))
        mocker.patch("siblings.class_count", side_effect=lambda term: OMEGA if term == t else 1)
        mocker.patch("siblings.term_embeds", return_value=False)

        assert diagnose(t) is Reason.INFINITE_CANONICAL_CLASSES

    def test_diagnose_rejects_one_sibling(self, finite_term):
        with pytest.raises(InvalidInputError):
            diagnose(finite_term)

    @pytest.mark.property
    @given(terms(allow_omega=False))
    @settings(max_examples=100, deadline=None)
    def test_finite_terms_have_one_sibling(self, t):
        assert classify_siblings(t).tag is VerdictTag.ONE

    @pytest.mark.property
    @given(terms(max_leaves=6))
    @settings(max_examples=150, deadline=None)
    def test_classification_is_self_dual(self, t):
        assume(largest_multiplicity(t) <= 12)
        assert classify_siblings(t) == classify_siblings(dual(t))

    @pytest.mark.oracle
    def test_class_count_matches_denotations(self, rng):
        """
        Test class counts against the twin blocks of truncations.

        Verifies:
        - For one-sibling terms the block count is stable from cap 2 on
        - It equals class_count
        """
        checked = 0
        while checked < 25:
            t = random_term(rng, depth=3)
            count = class_count(t)
            if count is OMEGA or term_size(truncate(t, 3)) > 40:
                continue
            blocks = [len(canonical_monomorphic_decomposition(denote(t, cap)).blocks) for cap in (2, 3)]
            assert blocks == [count, count]
            checked += 1

    def test_component_report(self, mixed_term):
        report = component_report(mixed_term)

        assert [entry.trivial for entry in report] == [True, False]
        assert report[1].class_count == 1
        assert report[1].verdict.tag is VerdictTag.ONE


@pytest.mark.unit
class TestTermEmbedding:
    """Test suite for embeddability between terms."""

    def test_examples(self, omega_k2_term):
        """
        Test term embeddings.

        Verifies:
        - K_2 embeds into K_omega
        - K_omega does not embed into a finite clique
        - omega K_2 plus a vertex embeds into omega K_2
        """
        assert term_embeds(clique(2), clique(OMEGA))
        assert not term_embeds(clique(OMEGA), clique(5))
        assert term_embeds(dsum((clique(2), OMEGA), (LEAF, 1)), omega_k2_term)

    def test_vertex_does_not_fit_beside_finite_components(self):
        assert not term_embeds(dsum((clique(2), 2), (LEAF, 1)), dsum((clique(2), 2)))

    def test_components_can_share_a_host(self):
        p3 = csum((LEAF, 1), (independent(2), 1))
        host = dsum((p3, 1), (clique(2), 1))

        assert term_embeds(independent(3), host)
        assert not term_embeds(independent(4), host)

    def test_disconnected_pattern_lies_in_one_part(self):
        assert term_embeds(independent(2), csum((independent(2), 1), (LEAF, 1)))
        assert not term_embeds(independent(3), csum((independent(2), 1), (LEAF, 1)))

    def test_equimorphy(self, omega_k2_term):
        assert embeds_both_ways(dsum((clique(2), OMEGA), (LEAF, 1)), omega_k2_term)
        assert not embeds_both_ways(clique(2), clique(3))

    def test_unit_limit(self, monkeypatch):
        monkeypatch.setattr("config.TERM_UNIT_LIMIT", 4)
        with pytest.raises(BudgetExceededError):
            term_embeds(independent(6), dsum((clique(2), 9)))

    @pytest.mark.property
    @given(terms(max_leaves=4, allow_omega=False), terms(max_leaves=4, allow_omega=False))
    @settings(max_examples=80, deadline=None)
    def test_agrees_with_graph_search_on_finite_terms(self, s, t):
        assume(term_size(s) <= 9 and term_size(t) <= 12)
        small, large = denote(s, 1), denote(t, 1)
        assert term_embeds(s, t) == embeds(small, large)



@pytest.mark.unit
class TestTermCorpus:
    """Test suite for the fixed corpus of hand-derived verdicts."""

    def test_corpus_shape(self):
        names = [entry.name for entry in TERM_CORPUS]

        assert len(names) == 30
        assert len(set(names)) == 30
        assert {entry.verdict.tag for entry in TERM_CORPUS} == {VerdictTag.ONE, VerdictTag.INFINITE}

    @pytest.mark.parametrize("entry", TERM_CORPUS, ids=lambda entry: entry.name)
    def test_verdict(self, entry):
        assert classify_siblings(entry.term) == entry.verdict
        assert classify_siblings(dual(entry.term)) == entry.verdict

    @pytest.mark.slow
    def test_random_terms_are_self_dual(self, rng):
        checked = 0
        while checked < 500:
            t = random_term(rng, depth=3)
            if largest_multiplicity(t) > 12:
                continue
            assert classify_siblings(t) == classify_siblings(dual(t))
            checked += 1
