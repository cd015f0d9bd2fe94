"""Plain-text corpus loading, normalization, and paragraph segmentation.

Every downstream stage works on the token streams produced here, so the
tokenizer is deliberately tiny and deterministic: lowercase, and anything
outside [a-z0-9] separates tokens.
"""

from __future__ import annotations

import json
import logging
import re
from dataclasses import dataclass, field
from pathlib import Path

from .errors import CorpusIOError, EmptyCorpusError

log = logging.getLogger(__name__)

_TOKEN = re.compile(r"[a-z0-9]+")


def normalize(raw: str) -> list[str]:
    """Tokenize text: lowercase, split on any non-alphanumeric character."""
    return _TOKEN.findall(raw.lower())


def split_paragraphs(raw_text: str) -> list[str]:
    """Split text into paragraphs on runs of blank lines.

    A line is blank when it is empty after trimming. Each paragraph is
    stripped of leading/trailing whitespace; empty segments are dropped.
    """
    paragraphs: list[str] = []
    current: list[str] = []
    for line in raw_text.splitlines():
        if line.strip():
            current.append(line)
        elif current:
            paragraphs.append("\n".join(current).strip())
            current = []
    if current:
        paragraphs.append("\n".join(current).strip())
    return paragraphs


@dataclass(frozen=True)
class Document:
    id: str
    source_path: str
    raw_text: str


@dataclass(frozen=True)
class Paragraph:
    doc_id: str
    index: int
    tokens: tuple[str, ...]


@dataclass
class Corpus:
    documents: list[Document] = field(default_factory=list)
    paragraphs: list[Paragraph] = field(default_factory=list)

    @property
    def doc_count(self) -> int:
        return len(self.documents)

    def token_total(self) -> int:
        """Total number of word tokens across all paragraphs."""
        return sum(len(p.tokens) for p in self.paragraphs)

    def doc_tokens(self) -> dict[str, list[str]]:
        """Concatenated token stream per document id, in paragraph order."""
        out: dict[str, list[str]] = {d.id: [] for d in self.documents}
        for p in self.paragraphs:
            out[p.doc_id].extend(p.tokens)
        return out

    def to_json(self) -> str:
        payload = {
            "documents": [
                {"id": d.id, "source_path": d.source_path, "raw_text": d.raw_text}
                for d in self.documents
            ],
            "paragraphs": [
                {"doc_id": p.doc_id, "index": p.index, "tokens": list(p.tokens)}
                for p in self.paragraphs
            ],
        }
        return json.dumps(payload, sort_keys=True, ensure_ascii=False, indent=1)

    @classmethod
    def from_json(cls, text: str) -> "Corpus":
        payload = json.loads(text)
        docs = [Document(d["id"], d["source_path"], d["raw_text"]) for d in payload["documents"]]
        paras = [
            Paragraph(p["doc_id"], p["index"], tuple(p["tokens"]))
            for p in payload["paragraphs"]
        ]
        return cls(docs, paras)

    def save(self, path: str | Path) -> None:
        Path(path).write_text(self.to_json(), encoding="utf-8")

    @classmethod
    def load(cls, path: str | Path) -> "Corpus":
        return cls.from_json(Path(path).read_text(encoding="utf-8"))


def load_corpus(directory: str | Path) -> Corpus:
    """Load every ``.txt`` file under ``directory`` into a Corpus.

    Files are taken in sorted-name order so repeated runs are byte-identical.
    Files that are empty or contain no text are skipped with a warning.
    """
    directory = Path(directory)
    files = sorted(directory.glob("*.txt"))
    if not files:
        raise EmptyCorpusError(f"no .txt files in {directory}")

    documents: list[Document] = []
    paragraphs: list[Paragraph] = []
    for path in files:
        try:
            raw = path.read_text(encoding="utf-8")
        except OSError as exc:
            raise CorpusIOError(f"cannot read {path}: {exc}") from exc
        if not raw.strip():
            log.warning("skipping empty corpus file %s", path.name)
            continue
        doc = Document(id=path.name, source_path=path.name, raw_text=raw)
        documents.append(doc)
        for index, block in enumerate(split_paragraphs(raw)):
            tokens = tuple(normalize(block))
            if tokens:
                paragraphs.append(Paragraph(doc_id=doc.id, index=index, tokens=tokens))

    if not documents:
        raise EmptyCorpusError(f"all .txt files in {directory} are empty")
    return Corpus(documents, paragraphs)


def corpus_from_texts(texts: list[str], ids: list[str] | None = None) -> Corpus:
    """Build an in-memory corpus, one document per text."""
    if ids is None:
        ids = [f"doc{i}" for i in range(len(texts))]
    documents: list[Document] = []
    paragraphs: list[Paragraph] = []
    for doc_id, raw in zip(ids, texts):
        if not raw.strip():
            log.warning("skipping empty text %s", doc_id)
            continue
        documents.append(Document(id=doc_id, source_path="", raw_text=raw))
        for index, block in enumerate(split_paragraphs(raw)):
            tokens = tuple(normalize(block))
            if tokens:
                paragraphs.append(Paragraph(doc_id=doc_id, index=index, tokens=tokens))
    if not documents:
        raise EmptyCorpusError("all texts are empty")
    return Corpus(documents, paragraphs)
