import math
import random

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from oracles import (
    brute_bleu,
    brute_one_hot_prf,
    brute_rouge_l,
    brute_rouge_n,
)
from qgforge.metrics import (
    EvalPair,
    MetricConfig,
    bertscore,
    corpus_bleu,
    evaluate_corpus,
    meteor,
    rouge_l,
    rouge_lsum,
    rouge_n,
    tokenize,
)

VOCAB = ["the", "cat", "sat", "on", "a", "mat", "dog", "ran", "fast", "big", "red", "hat"]


def pair(hyp: str, *refs: str) -> EvalPair:
    return EvalPair("p", hyp, tuple(refs))


def random_text(rng: random.Random, max_len: int = 12) -> str:
    return " ".join(rng.choice(VOCAB) for _ in range(rng.randint(0, max_len)))


class TestTokenize:
    def test_punctuation_isolated(self):
        assert tokenize("The cat's mat.") == ["the", "cat", "'", "s", "mat", "."]

    def test_empty(self):
        assert tokenize("") == []

    def test_hyphen(self):
        assert tokenize("A-B") == ["a", "-", "b"]

    def test_as_is_mode(self):
        assert tokenize("The cat's mat.", mode="as_is") == ["The", "cat's", "mat."]

    def test_unknown_mode_rejected(self):
        with pytest.raises(ValueError):
            tokenize("x", mode="fancy")

    @given(st.text(max_size=100))
    def test_tokens_non_empty_and_lowercased(self, text):
        for token in tokenize(text):
            assert token
            assert token == token.lower()


def test_eval_pair_requires_references():
    with pytest.raises(ValueError):
        EvalPair("p", "hyp", ())


class TestBleu:
    def test_identity_corpus_is_one(self):
        pairs = [EvalPair(str(i), t, (t,)) for i, t in enumerate(["the cat sat", "a dog ran fast", "the big red hat sat"])]
        assert corpus_bleu(pairs) == pytest.approx(1.0, abs=1e-12)

    def test_clipped_repetition_scores_zero_unsmoothed(self):
        # clipped 1-gram precision 1/3, no bigram overlap -> 0
        assert corpus_bleu([pair("the the the", "the cat")]) == 0.0

    def test_hand_computed_single_pair(self):
        score = corpus_bleu([pair("the cat sat on the mat", "the cat sat on a mat")])
        # p1..p4 = 5/6, 3/5, 2/4, 1/3 with BP = 1
        assert score == pytest.approx((5 / 6 * 3 / 5 * 2 / 4 * 1 / 3) ** 0.25, abs=1e-12)

    def test_brevity_penalty(self):
        score = corpus_bleu([pair("the cat sat on", "the cat sat on the mat")])
        assert score == pytest.approx(math.exp(1 - 6 / 4), abs=1e-12)

    def test_multi_reference_clipping_and_closest_length(self):
        # 1-gram matches all 3; bigram (a b) only; tie on ref lengths 2/4 -> 2
        score = corpus_bleu([pair("a b a", "a b", "a a a a")], max_n=2)
        assert score == pytest.approx(math.sqrt(0.5), abs=1e-12)

    def test_smoothing_gives_small_nonzero(self):
        score = corpus_bleu([pair("the the the", "the cat")], max_n=2, smooth=True)
        assert 0.0 < score < 1e-3

    def test_matches_brute_force_on_random_corpus(self):
        rng = random.Random(94)
        pairs = []
        token_pairs = []
        for i in range(50):
            hyp = random_text(rng) or "the"
            refs = tuple(random_text(rng) or "cat" for _ in range(rng.randint(1, 3)))
            pairs.append(EvalPair(str(i), hyp, refs))
            token_pairs.append((tokenize(hyp), [tokenize(r) for r in refs]))
        assert corpus_bleu(pairs) == pytest.approx(brute_bleu(token_pairs), abs=1e-12)

    def test_order_independent(self):
        rng = random.Random(7)
        pairs = [
            EvalPair(str(i), random_text(rng) or "the", (random_text(rng) or "cat",))
            for i in range(20)
        ]
        shuffled = pairs[:]
        rng.shuffle(shuffled)
        assert corpus_bleu(pairs) == corpus_bleu(shuffled)

    def test_empty_hypotheses_warn_to_zero(self):
        assert corpus_bleu([pair("", "the cat")]) == 0.0


class TestRougeN:
    def test_identity(self):
        assert rouge_n(pair("the cat sat", "the cat sat"), 1).f1 == 1.0

    def test_disjoint(self):
        assert rouge_n(pair("dog ran", "the cat"), 1).f1 == 0.0

    def test_hand_bigram_case(self):
        score = rouge_n(pair("a b c", "a b d"), 2)
        assert score == (0.5, 0.5, 0.5)

    def test_multi_reference_takes_best(self):
        score = rouge_n(pair("the cat", "dog ran", "the cat"), 1)
        assert score.f1 == 1.0

    def test_against_oracle_200_random_pairs(self):
        rng = random.Random(1234)
        for _ in range(200):
            hyp, ref = random_text(rng), random_text(rng)
            for n in (1, 2):
                got = rouge_n(pair(hyp, ref), n)
                expected = brute_rouge_n(tokenize(hyp), tokenize(ref), n)
                assert got == expected, (hyp, ref, n)


class TestRougeL:
    def test_hand_case(self):
        score = rouge_l(pair("a b c d", "a c b d"))
        assert score == (0.75, 0.75, 0.75)

    def test_identity(self):
        assert rouge_l(pair("the cat sat", "the cat sat")).f1 == 1.0

    def test_empty_hypothesis(self):
        assert rouge_l(pair("", "the cat")).f1 == 0.0

    def test_against_oracle_200_random_pairs(self):
        rng = random.Random(4321)
        for _ in range(200):
            hyp, ref = random_text(rng), random_text(rng)
            got = rouge_l(pair(hyp, ref))
            expected = brute_rouge_l(tokenize(hyp), tokenize(ref))
            assert got == expected, (hyp, ref)

    @given(st.lists(st.sampled_from(VOCAB), min_size=1, max_size=10))
    def test_self_similarity_is_one(self, tokens):
        text = " ".join(tokens)
        assert rouge_l(pair(text, text)).f1 == 1.0


class TestRougeLsum:
    def test_single_sentence_equals_rouge_l(self):
        p = pair("the cat sat on a mat", "the cat ran on a mat")
        assert rouge_lsum(p) == rouge_l(p)

    def test_identical_two_line_texts(self):
        p = pair("a b\nc d", "a b\nc d")
        assert rouge_lsum(p).f1 == 1.0

    def test_hand_union_lcs_case(self):
        # per ref line union-LCS sizes {2, 1} -> P = R = 3/4
        score = rouge_lsum(pair("a b\nc d", "a b\nc e"))
        assert score == (0.75, 0.75, 0.75)

    def test_sentence_splitter_fallback(self):
        p = pair("The cat sat. A dog ran.", "The cat sat. A dog ran.")
        assert rouge_lsum(p).f1 == 1.0

    def test_union_across_hypothesis_sentences(self):
        # ref sentence "a b c d": LCS with "a b" covers {a,b}, with "c d" covers {c,d}
        score = rouge_lsum(pair("a b\nc d", "a b c d"))
        assert score.recall == 1.0


class TestMeteor:
    def test_identity_three_tokens(self):
        assert meteor(pair("the cat sat", "the cat sat")) == pytest.approx(
            1 - 0.5 * (1 / 3) ** 3, abs=1e-9
        )

    def test_zero_matches(self):
        assert meteor(pair("dog", "cat")) == 0.0

    def test_stem_match_single_token(self):
        assert meteor(pair("cats", "cat")) == pytest.approx(0.5, abs=1e-9)

    def test_reordering_penalty(self):
        # perfect unigram overlap in 2 chunks
        assert meteor(pair("sat the cat", "the cat sat")) == pytest.approx(
            1 - 0.5 * (2 / 3) ** 3, abs=1e-9
        )

    def test_partial_overlap_hand_case(self):
        p, r = 1.0, 2 / 3
        f_mean = 10 * p * r / (r + 9 * p)
        expected = f_mean * (1 - 0.5 * (1 / 2) ** 3)
        assert meteor(pair("the cat", "the cat sat")) == pytest.approx(expected, abs=1e-9)

    def test_exact_and_stem_stages_combine(self):
        assert meteor(pair("the cats sat", "the cat sat")) == pytest.approx(
            1 - 0.5 * (1 / 3) ** 3, abs=1e-9
        )

    def test_multi_reference_takes_best(self):
        best = meteor(pair("the cat sat", "dog", "the cat sat"))
        assert best == pytest.approx(1 - 0.5 * (1 / 3) ** 3, abs=1e-9)

    @given(st.lists(st.sampled_from(VOCAB), min_size=1, max_size=8))
    def test_self_similarity_closed_form(self, tokens):
        text = " ".join(tokens)
        n = len(tokens)
        assert meteor(pair(text, text)) == pytest.approx(1 - 0.5 / n**3, abs=1e-12)

    @given(
        st.lists(st.sampled_from(VOCAB), min_size=1, max_size=8),
        st.lists(st.sampled_from(VOCAB), min_size=1, max_size=8),
    )
    def test_bounded(self, hyp, ref):
        score = meteor(pair(" ".join(hyp), " ".join(ref)))
        assert 0.0 <= score <= 1.0


def one_hot(tokens: list[str]) -> np.ndarray:
    dim = len(VOCAB)
    rows = np.zeros((len(tokens), dim))
    for i, t in enumerate(tokens):
        rows[i, VOCAB.index(t)] = 1.0
    return rows


class TestBertscore:
    def test_identical_sequences(self):
        emb = one_hot(["the", "cat", "sat"])
        assert bertscore(emb, emb) == (1.0, 1.0, 1.0)

    def test_hand_case_half_overlap(self):
        score = bertscore(one_hot(["the", "cat"]), one_hot(["the", "dog"]))
        assert score == (0.5, 0.5, 0.5)

    def test_orthogonal_sides(self):
        assert bertscore(one_hot(["the"]), one_hot(["cat"])).f1 == 0.0

    def test_empty_side_scores_zero(self):
        assert bertscore(np.zeros((0, 4)), np.ones((2, 4))) == (0.0, 0.0, 0.0)

    def test_dimension_mismatch_raises(self):
        with pytest.raises(ValueError, match="dimension"):
            bertscore(np.ones((2, 3)), np.ones((2, 4)))

    def test_unnormalized_magnitudes_do_not_matter(self):
        emb = one_hot(["the", "cat"])
        assert bertscore(emb * 7.0, emb * 0.1) == (1.0, 1.0, 1.0)

    def test_idf_weights(self):
        hyp = one_hot(["the", "cat"])
        ref = one_hot(["the", "dog"])
        # all weight on the matching token
        score = bertscore(hyp, ref, idf_hyp=[1.0, 0.0], idf_ref=[1.0, 0.0])
        assert score == (1.0, 1.0, 1.0)

    def test_one_hot_equals_overlap_oracle_100_random(self):
        rng = random.Random(99)
        for _ in range(100):
            hyp = [rng.choice(VOCAB) for _ in range(rng.randint(1, 8))]
            ref = [rng.choice(VOCAB) for _ in range(rng.randint(1, 8))]
            got = bertscore(one_hot(hyp), one_hot(ref))
            expected = brute_one_hot_prf(hyp, ref)
            assert got.precision == pytest.approx(expected[0], abs=1e-12)
            assert got.recall == pytest.approx(expected[1], abs=1e-12)
            assert got.f1 == pytest.approx(expected[2], abs=1e-12)
            assert 0.0 <= got.f1 <= 1.0


class _StubEmbedder:
    def embed(self, texts):
        class _E:
            def __init__(self, text):
                tokens = tokenize(text)
                self.tokens = tokens
                self.vectors = one_hot(tokens)

        return [_E(t) for t in texts]


class _DownEmbedder:
    def embed(self, texts):
        raise RuntimeError("connection refused")


class TestEvaluateCorpus:
    def identity_pairs(self):
        return [EvalPair(str(i), "the cat sat on a mat", ("the cat sat on a mat",)) for i in range(10)]

    def test_identity_corpus_table_values(self):
        report = evaluate_corpus(self.identity_pairs(), MetricConfig(embedder=_StubEmbedder()))
        row = report.table_row()
        for col in ("R1", "R2", "RL", "RLsum"):
            assert row[col] == pytest.approx(100.0, abs=1e-9)
        assert report.aggregates["bleu"] == pytest.approx(1.0, abs=1e-12)
        assert row["BERTScore"] == pytest.approx(1.0, abs=1e-12)

    def test_all_columns_present(self):
        report = evaluate_corpus(self.identity_pairs(), MetricConfig(embedder=_StubEmbedder()))
        for row in report.pair_scores:
            assert set(row) == {"id", "bleu", "r1", "r2", "rl", "rlsum", "meteor", "bertscore"}

    def test_deterministic_serialization(self):
        pairs = [
            EvalPair("a", "the cat sat", ("the cat sat on a mat",)),
            EvalPair("b", "a dog ran", ("the dog ran fast", "a dog ran")),
        ]
        one = evaluate_corpus(pairs, MetricConfig(embedder=_StubEmbedder())).to_json()
        two = evaluate_corpus(pairs, MetricConfig(embedder=_StubEmbedder())).to_json()
        assert one == two

    def test_embedding_outage_degrades_gracefully(self):
        report = evaluate_corpus(self.identity_pairs(), MetricConfig(embedder=_DownEmbedder()))
        assert report.aggregates["bertscore"] is None
        assert "bertscore" in report.unavailable
        for col in ("bleu", "r1", "r2", "rl", "rlsum", "meteor"):
            assert report.aggregates[col] is not None

    def test_no_embedder_marks_unavailable(self):
        report = evaluate_corpus(self.identity_pairs(), MetricConfig())
        assert report.aggregates["bertscore"] is None
        assert "bertscore" in report.unavailable

    def test_aggregates_are_means_except_bleu(self):
        pairs = [
            EvalPair("a", "the cat", ("the cat",)),
            EvalPair("b", "dog", ("cat",)),
        ]
        report = evaluate_corpus(pairs, MetricConfig(columns=("r1", "bleu")))
        per_pair = [row["r1"] for row in report.pair_scores]
        assert report.aggregates["r1"] == pytest.approx(sum(per_pair) / 2)
        assert report.aggregates["bleu"] == corpus_bleu(pairs)

    def test_csv_column_order(self):
        report = evaluate_corpus(self.identity_pairs(), MetricConfig(embedder=_StubEmbedder()))
        header = report.to_csv().splitlines()[0]
        assert header == "BLEU,R1,R2,RL,RLsum,METEOR,BERTScore"

    def test_scores_in_unit_interval(self):
        rng = random.Random(5)
        pairs = [
            EvalPair(str(i), random_text(rng) or "the", (random_text(rng) or "cat",))
            for i in range(25)
        ]
        report = evaluate_corpus(pairs, MetricConfig(embedder=_StubEmbedder()))
        for row in report.pair_scores:
            for col, value in row.items():
                if col == "id":
                    continue
                assert 0.0 <= value <= 1.0, (col, value)
