"""Candidate term mining: n-gram counting, tf-idf scoring, everyday-language
filtering, and synonym attachment into a concept lexicon."""

from __future__ import annotations

import json
import logging
import math
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .corpus import Corpus, normalize
from .errors import DomainError, EmptyCorpusError, MissingCommonCorpusError

log = logging.getLogger(__name__)


def tf_idf(tf: float, df: int, n_docs: int, log_base: float = 2.0) -> float:
    """Weight a term by tf * log(n_docs / df).

    A term present in every document weighs zero regardless of tf.
    """
    if df <= 0 or df > n_docs:
        raise DomainError(f"df must satisfy 1 <= df <= n_docs, got df={df}, n_docs={n_docs}")
    return tf * math.log(n_docs / df, log_base)


class DocumentTermMatrix:
    """Raw occurrence counts of every 1..max_ngram word sequence per document.

    N-grams never cross paragraph boundaries.
    """

    def __init__(self, doc_ids: list[str], counts: dict[str, dict[int, int]]):
        self.doc_ids = doc_ids
        self.doc_count = len(doc_ids)
        # counts[term][doc_index] -> occurrences of term in that document
        self.counts = counts

    @property
    def terms(self) -> list[str]:
        return sorted(self.counts)

    def tf(self, term: str, doc_index: int) -> int:
        return self.counts.get(term, {}).get(doc_index, 0)

    def df(self, term: str) -> int:
        return len(self.counts.get(term, {}))

    def total_count(self, term: str) -> int:
        """Occurrences of a term summed over the whole corpus."""
        return sum(self.counts.get(term, {}).values())

    def max_tf_idf(self, term: str, log_base: float = 2.0) -> float:
        """Best tf-idf the term achieves in any single document."""
        per_doc = self.counts[term]
        df = len(per_doc)
        return max(tf_idf(tf, df, self.doc_count, log_base) for tf in per_doc.values())


def build_dtm(corpus: Corpus, max_ngram: int = 5) -> DocumentTermMatrix:
    """Count every contiguous n-gram (1 <= n <= max_ngram) per document."""
    if not corpus.documents or not corpus.paragraphs:
        raise EmptyCorpusError("cannot build a document-term matrix from an empty corpus")
    doc_ids = [d.id for d in corpus.documents]
    doc_index = {doc_id: i for i, doc_id in enumerate(doc_ids)}
    counts: dict[str, dict[int, int]] = {}
    for para in corpus.paragraphs:
        d = doc_index[para.doc_id]
        tokens = para.tokens
        for n in range(1, max_ngram + 1):
            for start in range(len(tokens) - n + 1):
                term = " ".join(tokens[start : start + n])
                per_doc = counts.setdefault(term, {})
                per_doc[d] = per_doc.get(d, 0) + 1
    return DocumentTermMatrix(doc_ids, counts)


@dataclass
class ExtractionConfig:
    theta: float = 0.90
    max_ngram: int = 5
    log_base: float = 2.0
    common_corpus_path: str | Path | None = None
    synonyms_path: str | Path | None = None

    def __post_init__(self):
        if not 0 <= self.theta < 1:
            raise DomainError(f"theta must be in [0, 1), got {self.theta}")
        if not 2 <= self.max_ngram <= 5:
            raise DomainError(f"max_ngram must be in 2..5, got {self.max_ngram}")
        if self.log_base <= 0 or self.log_base == 1:
            raise DomainError(f"log_base must be positive and != 1, got {self.log_base}")


def select_candidates(
    dtm: DocumentTermMatrix, cfg: ExtractionConfig
) -> list[tuple[str, float]]:
    """Pick terms whose best per-document tf-idf beats the theta quantile of
    their own n-gram length class.

    theta = 0 disables the cut and returns every term. Output is sorted by
    score descending, ties by term.
    """
    scored: dict[int, list[tuple[str, float]]] = {}
    for term in dtm.terms:
        n = term.count(" ") + 1
        scored.setdefault(n, []).append((term, dtm.max_tf_idf(term, cfg.log_base)))

    selected: list[tuple[str, float]] = []
    for n, entries in scored.items():
        if cfg.theta == 0:
            selected.extend(entries)
            continue
        cutoff = float(np.quantile([s for _, s in entries], cfg.theta))
        selected.extend((t, s) for t, s in entries if s > cutoff)
    selected.sort(key=lambda ts: (-ts[1], ts[0]))
    return selected


@dataclass
class CommonCorpusList:
    """Everyday-language relative frequencies, in occurrences per million tokens."""

    entries: dict[str, float]

    @classmethod
    def load(cls, path: str | Path) -> "CommonCorpusList":
        """Read tab-separated ``term<TAB>freq_per_million`` lines."""
        try:
            text = Path(path).read_text(encoding="utf-8")
        except OSError as exc:
            raise MissingCommonCorpusError(f"cannot read common-corpus list {path}: {exc}") from exc
        entries: dict[str, float] = {}
        for lineno, line in enumerate(text.splitlines(), start=1):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            parts = line.split("\t")
            if len(parts) != 2:
                raise MissingCommonCorpusError(f"{path}:{lineno}: expected 'term<TAB>freq'")
            term = " ".join(normalize(parts[0]))
            try:
                freq = float(parts[1])
            except ValueError as exc:
                raise MissingCommonCorpusError(f"{path}:{lineno}: bad frequency {parts[1]!r}") from exc
            if freq < 0:
                raise MissingCommonCorpusError(f"{path}:{lineno}: negative frequency")
            entries[term] = freq
        return cls(entries)

    def frequency(self, term: str) -> float | None:
        return self.entries.get(term)


def filter_common(
    candidates: list[tuple[str, float]],
    common: CommonCorpusList,
    corpus_token_total: int,
    term_counts: dict[str, int],
) -> list[tuple[str, float]]:
    """Drop candidates used at least as often in everyday language as in the
    subject corpus; both sides compared as occurrences per million tokens.

    Terms missing from the everyday list always survive. Order is preserved.
    """
    if corpus_token_total <= 0:
        raise DomainError("corpus_token_total must be positive")
    kept = []
    for term, score in candidates:
        common_freq = common.frequency(term)
        if common_freq is None:
            kept.append((term, score))
            continue
        corpus_freq = term_counts.get(term, 0) / corpus_token_total * 1_000_000
        if common_freq >= corpus_freq:
            continue
        kept.append((term, score))
    return kept


@dataclass(frozen=True)
class Concept:
    id: int
    canonical: str
    synonyms: tuple[str, ...] = ()


@dataclass
class ConceptLexicon:
    concepts: list[Concept] = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.concepts)

    def __iter__(self):
        return iter(self.concepts)

    def by_id(self, concept_id: int) -> Concept:
        concept = self._id_map().get(concept_id)
        if concept is None:
            raise KeyError(f"no concept with id {concept_id}")
        return concept

    def canonical_of(self, concept_id: int) -> str:
        return self.by_id(concept_id).canonical

    def _id_map(self) -> dict[int, Concept]:
        return {c.id: c for c in self.concepts}

    def phrases(self) -> list[tuple[str, int]]:
        """All (phrase, concept id) pairs, canonicals first per concept."""
        out = []
        for c in self.concepts:
            out.append((c.canonical, c.id))
            out.extend((syn, c.id) for syn in c.synonyms)
        return out

    def to_json(self) -> str:
        payload = {
            "concepts": [
                {"id": c.id, "canonical": c.canonical, "synonyms": list(c.synonyms)}
                for c in self.concepts
            ]
        }
        return json.dumps(payload, sort_keys=True, ensure_ascii=False, indent=1)

    @classmethod
    def from_json(cls, text: str) -> "ConceptLexicon":
        payload = json.loads(text)
        return cls(
            [
                Concept(c["id"], c["canonical"], tuple(c["synonyms"]))
                for c in payload["concepts"]
            ]
        )

    def save(self, path: str | Path) -> None:
        Path(path).write_text(self.to_json(), encoding="utf-8")

    @classmethod
    def load(cls, path: str | Path) -> "ConceptLexicon":
        return cls.from_json(Path(path).read_text(encoding="utf-8"))


def load_synonym_lexicon(path: str | Path) -> dict[str, list[str]]:
    """Parse ``canonical: syn1, syn2`` lines into a mapping.

    Phrases are normalized with the corpus tokenizer.
    """
    mapping: dict[str, list[str]] = {}
    for line in Path(path).read_text(encoding="utf-8").splitlines():
        line = line.strip()
        if not line or line.startswith("#") or ":" not in line:
            continue
        head, _, tail = line.partition(":")
        canonical = " ".join(normalize(head))
        if not canonical:
            continue
        syns = []
        for chunk in tail.split(","):
            phrase = " ".join(normalize(chunk))
            if phrase:
                syns.append(phrase)
        mapping.setdefault(canonical, []).extend(syns)
    return mapping


def expand_synonyms(
    terms: list[str],
    lexicon_path: str | Path | None = None,
    synonym_map: dict[str, list[str]] | None = None,
) -> ConceptLexicon:
    """Turn an ordered term list into a lexicon, attaching file-provided synonyms.

    Ids are assigned in input order starting at 1. A synonym that collides
    with any concept's canonical form, or that an earlier concept already
    claimed, is discarded so every phrase maps to exactly one concept.
    Synonyms longer than five words are dropped.
    """
    if synonym_map is None:
        synonym_map = {}
        if lexicon_path is not None:
            try:
                synonym_map = load_synonym_lexicon(lexicon_path)
            except OSError:
                log.warning("synonym lexicon %s not readable; continuing without synonyms", lexicon_path)

    canonicals = set(terms)
    claimed: set[str] = set(terms)
    concepts: list[Concept] = []
    for i, term in enumerate(terms, start=1):
        syns = []
        for syn in synonym_map.get(term, []):
            if syn in canonicals or syn in claimed or syn == term:
                continue
            if len(syn.split()) > 5:
                log.warning("dropping synonym %r of %r: longer than five words", syn, term)
                continue
            syns.append(syn)
            claimed.add(syn)
        concepts.append(Concept(id=i, canonical=term, synonyms=tuple(syns)))
    return ConceptLexicon(concepts)


def extract_lexicon(
    corpus: Corpus,
    cfg: ExtractionConfig,
    common: CommonCorpusList | None = None,
    synonym_map: dict[str, list[str]] | None = None,
) -> ConceptLexicon:
    """Full extraction pass: count, score, filter, and attach synonyms."""
    dtm = build_dtm(corpus, cfg.max_ngram)
    candidates = select_candidates(dtm, cfg)
    if common is None and cfg.common_corpus_path is not None:
        common = CommonCorpusList.load(cfg.common_corpus_path)
    if common is not None:
        term_counts = {t: dtm.total_count(t) for t, _ in candidates}
        candidates = filter_common(candidates, common, corpus.token_total(), term_counts)
    terms = [t for t, _ in candidates]
    if synonym_map is not None:
        return expand_synonyms(terms, synonym_map=synonym_map)
    return expand_synonyms(terms, lexicon_path=cfg.synonyms_path)
