"""Question answering over (concept, property, feedback) triples.

A question is split into sentences; each sentence is scanned for concepts
with the phrase automaton and for property cues with the schema. Every
(concept, property) pair found in the same sentence is looked up in the
knowledge base; pairs without stored feedback are skipped silently.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from pathlib import Path

from .corpus import normalize
from .lexer import StateTable
from .ontology import DEFAULT_PROPERTY, KnowledgeBase, PropertySchema
from .taxonomy import ConceptHierarchy
from .terms import ConceptLexicon

_SENTENCE_BREAK = re.compile(r"[.?!;\n]+")

ANSWERED = "answered"
NO_ANSWER = "no_answer"
NO_ANSWER_MESSAGE = "no answer"


@dataclass(frozen=True)
class Question:
    raw: str
    sentences: tuple[tuple[str, ...], ...]

    @classmethod
    def from_text(cls, raw: str) -> "Question":
        sentences = tuple(
            tuple(tokens)
            for part in _SENTENCE_BREAK.split(raw)
            if (tokens := normalize(part))
        )
        return cls(raw=raw, sentences=sentences)


@dataclass(frozen=True)
class AnswerItem:
    concept_id: int
    canonical: str
    property: str
    feedback: str


@dataclass(frozen=True)
class Answer:
    status: str
    items: tuple[AnswerItem, ...]

    @property
    def answered(self) -> bool:
        return self.status == ANSWERED


def parse_question(
    q: str, table: StateTable, schema: PropertySchema
) -> list[tuple[int, str]]:
    """(concept id, property) pairs, the per-sentence cross-product.

    A sentence with concepts but no property cue asks for the definition; a
    cue with no concept contributes nothing. Pairs are deduplicated keeping
    first occurrence order.
    """
    pairs: list[tuple[int, str]] = []
    seen: set[tuple[int, str]] = set()
    for tokens in Question.from_text(q).sentences:
        concept_ids = []
        for match in table.scan(list(tokens)):
            if match.concept_id not in concept_ids:
                concept_ids.append(match.concept_id)
        if not concept_ids:
            continue
        props = schema.match_all(tokens) or [DEFAULT_PROPERTY]
        for cid in concept_ids:
            for prop in props:
                if (cid, prop) not in seen:
                    seen.add((cid, prop))
                    pairs.append((cid, prop))
    return pairs


def answer(
    q: str,
    kb: KnowledgeBase,
    table: StateTable,
    schema: PropertySchema,
    lexicon: ConceptLexicon,
) -> Answer:
    """Resolve each parsed pair against the knowledge base.

    Pairs lacking a triple are dropped, so a multi-concept question can come
    back partially answered; nothing resolved means no answer.
    """
    items = []
    for cid, prop in parse_question(q, table, schema):
        feedback = kb.feedback(cid, prop)
        if feedback is None:
            continue
        items.append(AnswerItem(cid, lexicon.canonical_of(cid), prop, feedback))
    return Answer(ANSWERED if items else NO_ANSWER, tuple(items))


class QaEngine:
    """Immutable bundle of the artifacts a question needs to be answered."""

    def __init__(
        self,
        table: StateTable,
        kb: KnowledgeBase,
        schema: PropertySchema,
        lexicon: ConceptLexicon,
        hierarchy: ConceptHierarchy | None = None,
    ):
        self.table = table
        self.kb = kb
        self.schema = schema
        self.lexicon = lexicon
        self.hierarchy = hierarchy

    @classmethod
    def from_artifacts(
        cls,
        artifacts_dir: str | Path,
        triples_path: str | Path,
        properties_path: str | Path | None = None,
    ) -> "QaEngine":
        artifacts_dir = Path(artifacts_dir)
        schema = (
            PropertySchema.load(properties_path)
            if properties_path is not None
            else PropertySchema.default()
        )
        lexicon = ConceptLexicon.load(artifacts_dir / "lexicon.json")
        table = StateTable.load(artifacts_dir / "state_table.json")
        hierarchy = ConceptHierarchy.load(artifacts_dir / "hierarchy.json")
        kb = KnowledgeBase.load_jsonl(triples_path, lexicon, schema)
        return cls(table, kb, schema, lexicon, hierarchy)

    def parse(self, q: str) -> list[tuple[int, str]]:
        return parse_question(q, self.table, self.schema)

    def answer(self, q: str) -> Answer:
        return answer(q, self.kb, self.table, self.schema, self.lexicon)
