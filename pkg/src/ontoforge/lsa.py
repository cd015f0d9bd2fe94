"""Answer quality measurement: latent semantic similarity and rating
correlation, plus the batch report that aggregates both views."""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass

import numpy as np

from .corpus import Corpus, normalize
from .errors import DegenerateVarianceError, DomainError, EmptyCorpusError, RankTooLargeError
from .terms import tf_idf

log = logging.getLogger(__name__)

_ZERO_SV = 1e-12


@dataclass
class LsaModel:
    term_index: dict[str, int]
    doc_count: int
    t_k: np.ndarray
    s_k: np.ndarray
    d_k: np.ndarray
    k: int

    def word_vector(self, term: str) -> np.ndarray | None:
        row = self.term_index.get(term)
        if row is None:
            return None
        return self.t_k[row] * self.s_k

    def reconstruction(self) -> np.ndarray:
        return (self.t_k * self.s_k) @ self.d_k.T


def term_document_matrix(corpus: Corpus) -> tuple[list[str], np.ndarray]:
    """Unigram tf-idf matrix, rows sorted by term, one column per document."""
    doc_tokens = list(corpus.doc_tokens().values())
    if len(doc_tokens) < 2:
        raise EmptyCorpusError("latent analysis needs at least two documents")
    counts: dict[str, dict[int, int]] = {}
    for d, tokens in enumerate(doc_tokens):
        for tok in tokens:
            per_doc = counts.setdefault(tok, {})
            per_doc[d] = per_doc.get(d, 0) + 1
    terms = sorted(counts)
    n_docs = len(doc_tokens)
    matrix = np.zeros((len(terms), n_docs))
    for i, term in enumerate(terms):
        per_doc = counts[term]
        df = len(per_doc)
        for d, tf in per_doc.items():
            matrix[i, d] = tf_idf(tf, df, n_docs)
    return terms, matrix


def train_lsa(corpus: Corpus, k: int | None = None) -> LsaModel:
    """Factor the term-document matrix and keep the top k singular triplets.

    k = None keeps min(50, positive rank). An explicit k above min(rows,
    cols) is an error; one above the positive rank is clamped with a warning
    so the retained singular values stay strictly positive.
    """
    terms, matrix = term_document_matrix(corpus)
    max_k = min(matrix.shape)
    u, s, vt = np.linalg.svd(matrix, full_matrices=False)
    rank = int(np.sum(s > _ZERO_SV * max(1.0, float(s[0]) if s.size else 1.0)))
    if rank == 0:
        raise DomainError("term-document matrix is all zeros")
    if k is None:
        k = min(50, rank)
    else:
        if k < 1:
            raise DomainError(f"k must be >= 1, got {k}")
        if k > max_k:
            raise RankTooLargeError(f"k={k} exceeds min(terms, docs)={max_k}")
        if k > rank:
            log.warning("k=%d exceeds the positive rank %d; clamping", k, rank)
            k = rank
    return LsaModel(
        term_index={t: i for i, t in enumerate(terms)},
        doc_count=matrix.shape[1],
        t_k=u[:, :k],
        s_k=s[:k],
        d_k=vt[:k].T,
        k=k,
    )


def _text_vector(model: LsaModel, text: str) -> np.ndarray | None:
    vectors = [v for v in (model.word_vector(t) for t in normalize(text)) if v is not None]
    if not vectors:
        return None
    return np.mean(vectors, axis=0)


def similarity(model: LsaModel, text_a: str, text_b: str) -> float:
    """Cosine of the two texts' mean word vectors; 0 when either text has no
    vocabulary overlap with the model."""
    va = _text_vector(model, text_a)
    vb = _text_vector(model, text_b)
    if va is None or vb is None:
        log.warning("text with no in-vocabulary words; similarity defaults to 0")
        return 0.0
    na = float(np.linalg.norm(va))
    nb = float(np.linalg.norm(vb))
    if na == 0.0 or nb == 0.0:
        log.warning("zero-magnitude text vector; similarity defaults to 0")
        return 0.0
    return float(np.dot(va, vb) / (na * nb))


def pearson(x, y) -> float:
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if x.ndim != 1 or y.ndim != 1 or len(x) != len(y):
        raise DomainError("rating vectors must be 1-d and of equal length")
    if len(x) < 2:
        raise DomainError("correlation needs at least two paired ratings")
    dx = x - x.mean()
    dy = y - y.mean()
    sx = float(np.dot(dx, dx))
    sy = float(np.dot(dy, dy))
    if sx == 0.0 or sy == 0.0:
        raise DegenerateVarianceError("a rating vector has zero variance")
    return float(np.dot(dx, dy) / np.sqrt(sx * sy))


N_BINS = 10


def evaluate_batch(questions: list[dict], engine, model: LsaModel) -> dict:
    """Run every question through the engine and score answered ones against
    their key answers.

    The report carries the answered rate and a ten-bin histogram of
    similarities over [0, 1]; the last bin includes 1.0. Cosines below zero
    clamp to 0 for binning.
    """
    records = []
    bins = [0] * N_BINS
    answered = 0
    for q in questions:
        text = q["question"]
        result = engine.answer(text)
        record: dict = {"question": text}
        if "id" in q:
            record["id"] = q["id"]
        if result.items:
            answered += 1
            answer_text = " ".join(item.feedback for item in result.items)
            sim = similarity(model, answer_text, q["key_answer"])
            record["answered"] = True
            record["similarity"] = sim
            clamped = min(max(sim, 0.0), 1.0)
            bins[min(int(clamped * N_BINS), N_BINS - 1)] += 1
        else:
            record["answered"] = False
            record["similarity"] = None
        records.append(record)
    total = len(records)
    return {
        "total": total,
        "answered": answered,
        "answered_rate": answered / total if total else 0.0,
        "bins": bins,
        "questions": records,
    }


def report_to_json(report: dict) -> str:
    return json.dumps(report, sort_keys=True, ensure_ascii=False, indent=1)


def report_to_text(report: dict) -> str:
    lines = [
        f"questions: {report['total']}",
        f"answered: {report['answered']} ({report['answered_rate'] * 100:.1f}%)",
        "",
        "similarity range   answers",
    ]
    for i, count in enumerate(report["bins"]):
        lo = i / N_BINS
        hi = (i + 1) / N_BINS
        bracket = "]" if i == N_BINS - 1 else ")"
        lines.append(f"[{lo:.1f}, {hi:.1f}{bracket}         {count}")
    return "\n".join(lines) + "\n"
