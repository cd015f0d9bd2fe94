"""Estimator-style wrappers with the fit/transform surface.

These bundle the pipeline primitives for in-memory use; the CLI pipeline
remains the artifact-oriented way to run the same steps.
"""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator
from sklearn.utils.validation import check_is_fitted

from .corpus import corpus_from_texts, normalize
from .lexer import StateTable
from .lsa import similarity as lsa_similarity
from .lsa import train_lsa
from .mining import AssociationMatrix, FpTree, TransactionDb
from .taxonomy import build_hierarchy
from .terms import CommonCorpusList, ExtractionConfig, extract_lexicon
from .validation import check_texts


class OntologyLearner(BaseEstimator):
    """Learn a concept lexicon, association matrix, and hierarchy from texts.

    Parameters
    ----------
    theta : tf-idf quantile cut per n-gram class, in [0, 1).
    max_ngram : longest candidate phrase, 1..5 words.
    log_base : idf logarithm base.
    min_support : mining threshold; kept sets need support strictly above it.
    common_corpus : optional CommonCorpusList for everyday-language filtering.
    synonym_map : optional {canonical: [synonyms]} mapping.

    After fit: concepts_, state_table_, transactions_, tree_, association_,
    hierarchy_.
    """

    def __init__(
        self,
        theta: float = 0.90,
        max_ngram: int = 5,
        log_base: float = 2.0,
        min_support: int = 0,
        common_corpus: CommonCorpusList | None = None,
        synonym_map: dict[str, list[str]] | None = None,
    ):
        self.theta = theta
        self.max_ngram = max_ngram
        self.log_base = log_base
        self.min_support = min_support
        self.common_corpus = common_corpus
        self.synonym_map = synonym_map

    def fit(self, X, y=None):
        texts = check_texts(X)
        corpus = corpus_from_texts(texts)
        cfg = ExtractionConfig(theta=self.theta, max_ngram=self.max_ngram, log_base=self.log_base)
        self.concepts_ = extract_lexicon(
            corpus, cfg, common=self.common_corpus, synonym_map=self.synonym_map
        )
        self.state_table_ = StateTable.build(self.concepts_)
        self.transactions_ = TransactionDb.from_corpus(corpus, self.state_table_)
        self.tree_ = FpTree.from_transactions(self.transactions_, self.min_support)
        self.association_ = AssociationMatrix.from_transactions(self.transactions_)
        self.hierarchy_ = build_hierarchy(self.tree_, self.association_)
        return self

    def transform(self, X) -> list[set[int]]:
        """Concept ids mentioned by each text."""
        check_is_fitted(self, "state_table_")
        return [self.state_table_.concept_ids(normalize(t)) for t in check_texts(X)]

    def fit_transform(self, X, y=None) -> list[set[int]]:
        return self.fit(X).transform(X)


class LsaSimilarity(BaseEstimator):
    """Latent-space text encoder; k is the retained rank (None: min(50, rank))."""

    def __init__(self, k: int | None = None):
        self.k = k

    def fit(self, X, y=None):
        texts = check_texts(X)
        self.model_ = train_lsa(corpus_from_texts(texts), self.k)
        return self

    def transform(self, X) -> np.ndarray:
        """Mean word vector per text; all-out-of-vocabulary rows are zero."""
        check_is_fitted(self, "model_")
        texts = check_texts(X)
        out = np.zeros((len(texts), self.model_.k))
        for i, text in enumerate(texts):
            vectors = [
                v for v in (self.model_.word_vector(t) for t in normalize(text)) if v is not None
            ]
            if vectors:
                out[i] = np.mean(vectors, axis=0)
        return out

    def fit_transform(self, X, y=None) -> np.ndarray:
        return self.fit(X).transform(X)

    def similarity(self, text_a: str, text_b: str) -> float:
        check_is_fitted(self, "model_")
        return lsa_similarity(self.model_, text_a, text_b)
