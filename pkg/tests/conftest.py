import shutil
from pathlib import Path

import pytest

from ontoforge import (
    Concept,
    ConceptLexicon,
    StateTable,
    TransactionDb,
)

DATA_DIR = Path(__file__).resolve().parent.parent / "src" / "ontoforge" / "data"
TOY_DIR = DATA_DIR / "toy"

# The sample lexicon used throughout the state-table examples: eleven
# concepts whose insertion order fixes the state numbering.
SAMPLE_TERMS = [
    "root",
    "data",
    "data file",
    "data independence",
    "data item",
    "data model",
    "data types",
    "data warehouse",
    "database",
    "database application",
    "database management",
]


@pytest.fixture
def sample_lexicon() -> ConceptLexicon:
    return ConceptLexicon([Concept(i + 1, t) for i, t in enumerate(SAMPLE_TERMS)])


@pytest.fixture
def sample_table(sample_lexicon) -> StateTable:
    return StateTable.build(sample_lexicon)


# Five-transaction mining fixture; supports by hand: C1:4, C2:3, C4:3, C3:2, C5:1.
SAMPLE_TRANSACTIONS = [
    frozenset({1, 2, 3}),
    frozenset({2, 4, 5}),
    frozenset({1, 2, 4}),
    frozenset({1, 4}),
    frozenset({1, 3}),
]


@pytest.fixture
def sample_db() -> TransactionDb:
    return TransactionDb(list(SAMPLE_TRANSACTIONS))


@pytest.fixture
def toy_fixture(tmp_path) -> Path:
    """Writable copy of the bundled toy project (corpus, config, KB, questions)."""
    dest = tmp_path / "toy"
    shutil.copytree(TOY_DIR, dest)
    return dest


@pytest.fixture(scope="session")
def toy_artifacts(tmp_path_factory) -> Path:
    """Toy pipeline run once per session; stages ingest through export-owl."""
    from ontoforge import PipelineConfig, run_all

    out = tmp_path_factory.mktemp("toy-artifacts")
    cfg = PipelineConfig(
        corpus_dir=str(TOY_DIR / "corpus"),
        output_dir=str(out),
        common_corpus_path=str(TOY_DIR / "common_corpus.tsv"),
        synonyms_path=str(TOY_DIR / "synonyms.txt"),
        triples_path=str(TOY_DIR / "triples.jsonl"),
        theta=0.94,
        max_ngram=2,
    )
    run_all(cfg)
    return out
