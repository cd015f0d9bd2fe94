"""ontoforge: build a subject ontology from plain-text course material and
answer questions over it."""

from .corpus import (
    Corpus,
    Document,
    Paragraph,
    corpus_from_texts,
    load_corpus,
    normalize,
    split_paragraphs,
)
from .errors import (
    ConceptAbsentError,
    ConfigError,
    CorpusIOError,
    DegenerateVarianceError,
    DomainError,
    DuplicatePhraseError,
    EmptyCorpusError,
    MissingCommonCorpusError,
    MissingUpstreamArtifactError,
    OntoforgeError,
    RankTooLargeError,
    TripleParseError,
)
from .estimators import LsaSimilarity, OntologyLearner
from .lexer import ACCEPT, NO_TERM, RESET, START, Match, StateTable
from .lsa import LsaModel, evaluate_batch, pearson, similarity, train_lsa
from .mining import AssociationMatrix, FpTree, TransactionDb
from .ontology import (
    KnowledgeBase,
    PropertySchema,
    Triple,
    export_owl,
    parse_owl,
)
from .pipeline import STAGES, PipelineConfig, StageResult, run_all, run_stage
from .qa import (
    ANSWERED,
    NO_ANSWER,
    NO_ANSWER_MESSAGE,
    Answer,
    AnswerItem,
    QaEngine,
    Question,
    answer,
    parse_question,
)
from .taxonomy import ConceptHierarchy, build_hierarchy
from .terms import (
    CommonCorpusList,
    Concept,
    ConceptLexicon,
    DocumentTermMatrix,
    ExtractionConfig,
    build_dtm,
    expand_synonyms,
    extract_lexicon,
    filter_common,
    load_synonym_lexicon,
    select_candidates,
    tf_idf,
)

__version__ = "0.1.0"

__all__ = [
    "ACCEPT",
    "ANSWERED",
    "NO_ANSWER",
    "NO_ANSWER_MESSAGE",
    "NO_TERM",
    "RESET",
    "START",
    "Answer",
    "AnswerItem",
    "AssociationMatrix",
    "CommonCorpusList",
    "Concept",
    "ConceptAbsentError",
    "ConceptHierarchy",
    "ConceptLexicon",
    "ConfigError",
    "Corpus",
    "CorpusIOError",
    "DegenerateVarianceError",
    "Document",
    "DocumentTermMatrix",
    "DomainError",
    "DuplicatePhraseError",
    "EmptyCorpusError",
    "ExtractionConfig",
    "FpTree",
    "KnowledgeBase",
    "LsaModel",
    "LsaSimilarity",
    "Match",
    "MissingCommonCorpusError",
    "MissingUpstreamArtifactError",
    "OntoforgeError",
    "OntologyLearner",
    "Paragraph",
    "PipelineConfig",
    "PropertySchema",
    "QaEngine",
    "Question",
    "RankTooLargeError",
    "STAGES",
    "StageResult",
    "StateTable",
    "TransactionDb",
    "Triple",
    "TripleParseError",
    "answer",
    "build_dtm",
    "build_hierarchy",
    "corpus_from_texts",
    "evaluate_batch",
    "expand_synonyms",
    "export_owl",
    "extract_lexicon",
    "load_synonym_lexicon",
    "filter_common",
    "load_corpus",
    "normalize",
    "parse_owl",
    "parse_question",
    "pearson",
    "run_all",
    "run_stage",
    "select_candidates",
    "similarity",
    "split_paragraphs",
    "tf_idf",
    "train_lsa",
]
