import math

import pytest
from hypothesis import given, strategies as st

from ontoforge import (
    CommonCorpusList,
    DomainError,
    ExtractionConfig,
    MissingCommonCorpusError,
    build_dtm,
    corpus_from_texts,
    expand_synonyms,
    extract_lexicon,
    filter_common,
    load_synonym_lexicon,
    select_candidates,
    tf_idf,
)


class TestTfIdf:
    def test_worked_example(self):
        # tf=3, df=2 over 4 documents, base 2: 3 * log2(4/2) = 3
        assert tf_idf(3, 2, 4) == pytest.approx(3.0, abs=1e-12)

    def test_term_in_every_document_scores_zero(self):
        assert tf_idf(5, 7, 7) == pytest.approx(0.0, abs=1e-12)

    def test_rare_term(self):
        assert tf_idf(2, 1, 8) == pytest.approx(6.0, abs=1e-12)

    def test_other_bases(self):
        assert tf_idf(1, 1, 10, log_base=10.0) == pytest.approx(1.0, abs=1e-12)
        assert tf_idf(2, 1, math.e) == pytest.approx(2 * math.log2(math.e), abs=1e-12)

    def test_df_zero_rejected(self):
        with pytest.raises(DomainError):
            tf_idf(1, 0, 4)

    def test_df_above_doc_count_rejected(self):
        with pytest.raises(DomainError):
            tf_idf(1, 5, 4)

    @given(
        tf=st.integers(min_value=0, max_value=100),
        df=st.integers(min_value=1, max_value=20),
        extra=st.integers(min_value=0, max_value=20),
    )
    def test_never_negative(self, tf, df, extra):
        assert tf_idf(tf, df, df + extra) >= 0.0


class TestExtractionConfig:
    def test_defaults_valid(self):
        cfg = ExtractionConfig()
        assert cfg.theta == 0.90 and cfg.max_ngram == 5

    @pytest.mark.parametrize("theta", [-0.1, 1.0, 1.5])
    def test_theta_range(self, theta):
        with pytest.raises(DomainError):
            ExtractionConfig(theta=theta)

    @pytest.mark.parametrize("n", [0, 1, 6])
    def test_ngram_range(self, n):
        with pytest.raises(DomainError):
            ExtractionConfig(max_ngram=n)

    @pytest.mark.parametrize("base", [0.0, 1.0, -2.0])
    def test_log_base(self, base):
        with pytest.raises(DomainError):
            ExtractionConfig(log_base=base)


def test_build_dtm_counts_ngrams_within_paragraphs():
    corpus = corpus_from_texts(["data model rules\n\ndata model"], ids=["d"])
    dtm = build_dtm(corpus, max_ngram=2)
    assert dtm.total_count("data model") == 2
    # the paragraph break prevents a "rules data" bigram
    assert "rules data" not in dtm.terms
    assert dtm.df("data") == 1


def test_build_dtm_df_spans_documents():
    corpus = corpus_from_texts(["data here", "more data"])
    dtm = build_dtm(corpus, max_ngram=2)
    assert dtm.df("data") == 2
    assert dtm.tf("data", 0) == 1


class TestSelectCandidates:
    def make_dtm(self, *texts):
        return build_dtm(corpus_from_texts(list(texts)), max_ngram=2)

    def test_theta_zero_keeps_everything(self):
        dtm = self.make_dtm("w1 w2 w2 w3 w3 w3 w4 w4 w4 w4", "w1")
        cfg = ExtractionConfig(theta=0.0, max_ngram=2)
        assert {t for t, _ in select_candidates(dtm, cfg)} == set(dtm.terms)

    def test_half_quantile_keeps_strictly_above(self):
        # unigram scores come out 0 (w1, in both docs), 2, 3, 4; the 0.5
        # quantile is 2.5, so only w3 and w4 survive
        dtm = self.make_dtm("w1 w2 w2 w3 w3 w3 w4 w4 w4 w4", "w1")
        cfg = ExtractionConfig(theta=0.5, max_ngram=2)
        unigrams = [t for t, _ in select_candidates(dtm, cfg) if " " not in t]
        assert sorted(unigrams) == ["w3", "w4"]

    def test_high_quantile_keeps_top_one_of_ten(self):
        doc = " ".join(f"t{i} " * i for i in range(1, 11))
        dtm = self.make_dtm(doc, "t1")
        cfg = ExtractionConfig(theta=0.90, max_ngram=2)
        unigrams = [t for t, _ in select_candidates(dtm, cfg) if " " not in t]
        assert unigrams == ["t10"]

    def test_sorted_by_score_then_term(self):
        dtm = self.make_dtm("b b a a c", "x")
        out = select_candidates(dtm, ExtractionConfig(theta=0.0, max_ngram=2))
        scores = [s for _, s in out]
        assert scores == sorted(scores, reverse=True)
        pairs = list(zip(out, out[1:]))
        assert all(t1 < t2 for (t1, s1), (t2, s2) in pairs if s1 == s2)

    def test_classes_cut_independently(self):
        # a dominant unigram should not push bigrams out of their own class
        dtm = self.make_dtm("big big big big small pair one pair one", "filler")
        cfg = ExtractionConfig(theta=0.5, max_ngram=2)
        selected = {t for t, _ in select_candidates(dtm, cfg)}
        assert any(" " in t for t in selected)

    @given(theta=st.floats(min_value=0.01, max_value=0.99))
    def test_survivors_beat_their_class_cutoff(self, theta):
        import numpy as np

        dtm = self.make_dtm("w1 w2 w2 w3 w3 w3 w4 w4 w4 w4 w5", "w1 z")
        cfg = ExtractionConfig(theta=theta, max_ngram=2)
        by_len: dict[int, list[float]] = {}
        for t in dtm.terms:
            by_len.setdefault(t.count(" ") + 1, []).append(dtm.max_tf_idf(t))
        for term, score in select_candidates(dtm, cfg):
            cutoff = float(np.quantile(by_len[term.count(" ") + 1], theta))
            assert score > cutoff


class TestCommonCorpusFilter:
    def test_absent_term_retained(self):
        common = CommonCorpusList({})
        kept = filter_common([("database", 9.0)], common, 1000, {"database": 9})
        assert kept == [("database", 9.0)]

    def test_everyday_word_dropped(self):
        # "the": 50000/M in everyday text vs 30 per 1000 corpus tokens = 30000/M
        common = CommonCorpusList({"the": 50000.0})
        kept = filter_common([("the", 1.0)], common, 1000, {"the": 30})
        assert kept == []

    def test_subject_word_retained_when_corpus_rate_higher(self):
        # "table" at 120/M everyday but 900/M in the corpus stays
        common = CommonCorpusList({"table": 120.0})
        kept = filter_common([("table", 5.0)], common, 10_000, {"table": 9})
        assert kept == [("table", 5.0)]

    def test_equal_rates_drop(self):
        common = CommonCorpusList({"word": 1000.0})
        assert filter_common([("word", 2.0)], common, 1000, {"word": 1}) == []

    def test_order_preserved(self):
        common = CommonCorpusList({"b": 1e9})
        cands = [("a", 3.0), ("b", 2.0), ("c", 1.0)]
        kept = filter_common(cands, common, 100, {"a": 1, "b": 1, "c": 1})
        assert kept == [("a", 3.0), ("c", 1.0)]

    def test_zero_total_rejected(self):
        with pytest.raises(DomainError):
            filter_common([("a", 1.0)], CommonCorpusList({}), 0, {})

    def test_load_tsv(self, tmp_path):
        p = tmp_path / "common.tsv"
        p.write_text("# comment\nthe\t60000\nData Model\t12.5\n")
        common = CommonCorpusList.load(p)
        assert common.frequency("the") == 60000.0
        assert common.frequency("data model") == 12.5
        assert common.frequency("missing") is None

    def test_load_missing_file(self, tmp_path):
        with pytest.raises(MissingCommonCorpusError):
            CommonCorpusList.load(tmp_path / "nope.tsv")

    @pytest.mark.parametrize("line", ["just-one-field", "word\tnot-a-number", "word\t-3"])
    def test_load_bad_lines(self, tmp_path, line):
        p = tmp_path / "common.tsv"
        p.write_text(line + "\n")
        with pytest.raises(MissingCommonCorpusError):
            CommonCorpusList.load(p)


class TestSynonyms:
    def test_ids_follow_input_order(self):
        terms = [
            "root", "data", "data file", "data independence", "data item",
            "data model", "data types", "data warehouse", "database",
            "database application", "database management",
        ]
        lex = expand_synonyms(terms)
        assert [c.id for c in lex] == list(range(1, 12))
        assert [c.canonical for c in lex] == terms

    def test_synonym_attached(self):
        lex = expand_synonyms(["data"], synonym_map={"data": ["information"]})
        assert lex.concepts[0].synonyms == ("information",)

    def test_synonym_colliding_with_canonical_discarded(self):
        lex = expand_synonyms(
            ["data", "information"], synonym_map={"data": ["information"]}
        )
        assert lex.concepts[0].synonyms == ()
        assert lex.concepts[1].canonical == "information"

    def test_synonym_claimed_once(self):
        lex = expand_synonyms(
            ["a", "b"], synonym_map={"a": ["shared"], "b": ["shared"]}
        )
        assert lex.concepts[0].synonyms == ("shared",)
        assert lex.concepts[1].synonyms == ()

    def test_overlong_synonym_dropped(self):
        lex = expand_synonyms(
            ["x"], synonym_map={"x": ["one two three four five six"]}
        )
        assert lex.concepts[0].synonyms == ()

    def test_missing_synonym_file_is_soft(self, tmp_path, caplog):
        with caplog.at_level("WARNING"):
            lex = expand_synonyms(["x"], lexicon_path=tmp_path / "absent.txt")
        assert lex.concepts[0].synonyms == ()

    def test_load_synonym_lexicon_normalizes(self, tmp_path):
        p = tmp_path / "syn.txt"
        p.write_text("# note\nDBMS: Database Management System\nsql: SQL!, structured query language\n")
        mapping = load_synonym_lexicon(p)
        assert mapping == {
            "dbms": ["database management system"],
            "sql": ["sql", "structured query language"],
        }


def test_extract_lexicon_end_to_end():
    corpus = corpus_from_texts(
        [
            "data model data model data model rules. data model wins",
            "plain filler text with nothing shared",
        ]
    )
    cfg = ExtractionConfig(theta=0.5, max_ngram=2)
    lex = extract_lexicon(corpus, cfg, synonym_map={"data model": ["dm"]})
    by_name = {c.canonical: c for c in lex}
    assert "data model" in by_name
    assert by_name["data model"].synonyms == ("dm",)
    assert [c.id for c in lex] == list(range(1, len(lex.concepts) + 1))
