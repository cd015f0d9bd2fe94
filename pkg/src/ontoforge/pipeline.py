"""Resumable pipeline: each stage reads persisted artifacts, writes its own
atomically, and records input digests so an unchanged rerun is a no-op.

Stage order: ingest -> extract -> compile-dfa -> mine -> taxonomy ->
export-owl; eval and serve sit on top of export-owl plus the triples file.
"""

from __future__ import annotations

import dataclasses
import hashlib
import json
import logging
import os
from dataclasses import dataclass, field
from pathlib import Path

from .corpus import Corpus, load_corpus
from .errors import ConfigError, DomainError, MissingUpstreamArtifactError
from .lexer import StateTable
from .lsa import evaluate_batch, report_to_json, report_to_text, train_lsa
from .mining import AssociationMatrix, FpTree, TransactionDb
from .ontology import KnowledgeBase, PropertySchema, export_owl
from .qa import QaEngine
from .taxonomy import build_hierarchy
from .terms import (
    CommonCorpusList,
    ConceptLexicon,
    ExtractionConfig,
    extract_lexicon,
)

log = logging.getLogger(__name__)

STAGES = ("ingest", "extract", "compile-dfa", "mine", "taxonomy", "export-owl", "eval", "serve")

MANIFEST_NAME = "manifest.json"

STAGE_OUTPUTS: dict[str, tuple[str, ...]] = {
    "ingest": ("corpus.json",),
    "extract": ("lexicon.json",),
    "compile-dfa": ("state_table.json",),
    "mine": ("transactions.json", "fp_tree.json", "association.json", "association.tsv"),
    "taxonomy": ("hierarchy.json", "hierarchy.txt"),
    "export-owl": ("ontology.owl",),
    "eval": ("eval_report.json", "eval_report.txt"),
    "serve": (),
}

STAGE_UPSTREAM: dict[str, tuple[str, ...]] = {
    "ingest": (),
    "extract": ("corpus.json",),
    "compile-dfa": ("lexicon.json",),
    "mine": ("corpus.json", "state_table.json", "lexicon.json"),
    "taxonomy": ("fp_tree.json", "association.json", "lexicon.json"),
    "export-owl": ("hierarchy.json", "lexicon.json"),
    "eval": ("corpus.json", "lexicon.json", "state_table.json", "hierarchy.json"),
    "serve": ("lexicon.json", "state_table.json", "hierarchy.json"),
}

_PATH_FIELDS = (
    "corpus_dir",
    "output_dir",
    "common_corpus_path",
    "synonyms_path",
    "triples_path",
    "questions_path",
    "properties_path",
    "ui_dir",
)


@dataclass
class PipelineConfig:
    output_dir: str | Path
    corpus_dir: str | Path | None = None
    common_corpus_path: str | Path | None = None
    synonyms_path: str | Path | None = None
    triples_path: str | Path | None = None
    questions_path: str | Path | None = None
    properties_path: str | Path | None = None
    ui_dir: str | Path | None = None
    theta: float = 0.90
    max_ngram: int = 5
    log_base: float = 2.0
    min_support: int = 0
    lsa_k: int | None = None
    host: str = "127.0.0.1"
    port: int = 8000

    def __post_init__(self):
        if not self.output_dir:
            raise ConfigError("output_dir is required")
        try:
            ExtractionConfig(theta=self.theta, max_ngram=self.max_ngram, log_base=self.log_base)
        except DomainError as exc:
            raise ConfigError(str(exc)) from exc
        if not isinstance(self.min_support, int) or self.min_support < 0:
            raise ConfigError(f"min_support must be a non-negative integer, got {self.min_support!r}")
        if self.lsa_k is not None and (not isinstance(self.lsa_k, int) or self.lsa_k < 1):
            raise ConfigError(f"lsa_k must be a positive integer, got {self.lsa_k!r}")
        if not isinstance(self.port, int) or not 1 <= self.port <= 65535:
            raise ConfigError(f"port must be in 1..65535, got {self.port!r}")

    @classmethod
    def from_file(cls, path: str | Path) -> "PipelineConfig":
        path = Path(path)
        try:
            payload = json.loads(path.read_text(encoding="utf-8"))
        except OSError as exc:
            raise ConfigError(f"cannot read config {path}: {exc}") from exc
        except json.JSONDecodeError as exc:
            raise ConfigError(f"config {path} is not valid JSON: {exc}") from exc
        if not isinstance(payload, dict):
            raise ConfigError(f"config {path} must hold a JSON object")
        known = {f.name for f in dataclasses.fields(cls)}
        unknown = sorted(set(payload) - known)
        if unknown:
            raise ConfigError(f"unknown config keys: {', '.join(unknown)}")
        base = path.parent
        for key in _PATH_FIELDS:
            value = payload.get(key)
            if isinstance(value, str) and value:
                payload[key] = str((base / value).resolve()) if not os.path.isabs(value) else value
        try:
            return cls(**payload)
        except TypeError as exc:
            raise ConfigError(f"bad config value: {exc}") from exc


@dataclass
class StageResult:
    stage: str
    ran: bool
    outputs: list[Path] = field(default_factory=list)


def _digest_bytes(data: bytes) -> str:
    return "sha256:" + hashlib.sha256(data).hexdigest()


def _digest_file(path: Path) -> str:
    return _digest_bytes(path.read_bytes())


def _digest_params(params: dict) -> str:
    return _digest_bytes(json.dumps(params, sort_keys=True).encode("utf-8"))


def atomic_write_text(path: Path, text: str) -> None:
    tmp = path.with_name(f"{path.name}.tmp.{os.getpid()}")
    tmp.write_text(text, encoding="utf-8")
    os.replace(tmp, path)


def _load_manifest(out_dir: Path) -> dict:
    path = out_dir / MANIFEST_NAME
    if not path.exists():
        return {"stages": {}}
    try:
        manifest = json.loads(path.read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError):
        log.warning("manifest unreadable; stages will rerun")
        return {"stages": {}}
    if not isinstance(manifest, dict) or not isinstance(manifest.get("stages"), dict):
        return {"stages": {}}
    return manifest


def _save_manifest(out_dir: Path, manifest: dict) -> None:
    atomic_write_text(out_dir / MANIFEST_NAME, json.dumps(manifest, sort_keys=True, indent=1))


def _require_config_path(value, name: str) -> Path:
    if value is None:
        raise ConfigError(f"{name} is required for this stage")
    return Path(value)


def _optional_file_digests(pairs: list[tuple[str, Path | None]]) -> dict[str, str]:
    digests = {}
    for name, path in pairs:
        if path is None:
            continue
        path = Path(path)
        if not path.is_file():
            raise DomainError(f"input file not found: {path}")
        digests[f"file:{name}"] = _digest_file(path)
    return digests


def _stage_inputs(stage: str, cfg: PipelineConfig, out_dir: Path) -> dict[str, str]:
    inputs: dict[str, str] = {}
    for name in STAGE_UPSTREAM[stage]:
        path = out_dir / name
        if not path.is_file():
            raise MissingUpstreamArtifactError(Path(name).stem)
        inputs[name] = _digest_file(path)

    if stage == "ingest":
        if cfg.corpus_dir is None:
            raise ConfigError("corpus_dir is required for ingest")
        corpus_dir = Path(cfg.corpus_dir)
        if not corpus_dir.is_dir():
            raise DomainError(f"corpus directory not found: {corpus_dir}")
        for doc in sorted(corpus_dir.glob("*.txt")):
            inputs[f"corpus:{doc.name}"] = _digest_file(doc)
    elif stage == "extract":
        inputs.update(
            _optional_file_digests(
                [("common_corpus", cfg.common_corpus_path), ("synonyms", cfg.synonyms_path)]
            )
        )
        inputs["params"] = _digest_params(
            {"theta": cfg.theta, "max_ngram": cfg.max_ngram, "log_base": cfg.log_base}
        )
    elif stage == "mine":
        inputs["params"] = _digest_params({"min_support": cfg.min_support})
    elif stage == "export-owl":
        inputs.update(
            _optional_file_digests(
                [("triples", cfg.triples_path), ("properties", cfg.properties_path)]
            )
        )
    elif stage == "eval":
        triples = _require_config_path(cfg.triples_path, "triples_path")
        questions = _require_config_path(cfg.questions_path, "questions_path")
        inputs.update(
            _optional_file_digests(
                [("triples", triples), ("questions", questions), ("properties", cfg.properties_path)]
            )
        )
        inputs["params"] = _digest_params({"lsa_k": cfg.lsa_k})
    elif stage == "serve":
        triples = _require_config_path(cfg.triples_path, "triples_path")
        inputs.update(
            _optional_file_digests([("triples", triples), ("properties", cfg.properties_path)])
        )
    return inputs


def _load_questions(path: Path) -> list[dict]:
    questions = []
    for lineno, line in enumerate(path.read_text(encoding="utf-8").splitlines(), start=1):
        line = line.strip()
        if not line:
            continue
        try:
            record = json.loads(line)
        except json.JSONDecodeError as exc:
            raise DomainError(f"{path}:{lineno}: invalid JSON: {exc}") from exc
        if not isinstance(record, dict) or "question" not in record or "key_answer" not in record:
            raise DomainError(f"{path}:{lineno}: expected keys 'question' and 'key_answer'")
        questions.append(record)
    return questions


def _schema(cfg: PipelineConfig) -> PropertySchema:
    if cfg.properties_path is not None:
        return PropertySchema.load(cfg.properties_path)
    return PropertySchema.default()


def _execute(stage: str, cfg: PipelineConfig, out_dir: Path) -> dict[str, str]:
    if stage == "ingest":
        corpus = load_corpus(cfg.corpus_dir)
        return {"corpus.json": corpus.to_json()}

    if stage == "extract":
        corpus = Corpus.load(out_dir / "corpus.json")
        ecfg = ExtractionConfig(
            theta=cfg.theta,
            max_ngram=cfg.max_ngram,
            log_base=cfg.log_base,
            common_corpus_path=cfg.common_corpus_path,
            synonyms_path=cfg.synonyms_path,
        )
        common = (
            CommonCorpusList.load(cfg.common_corpus_path)
            if cfg.common_corpus_path is not None
            else None
        )
        lexicon = extract_lexicon(corpus, ecfg, common=common)
        if not len(lexicon):
            log.warning("extraction produced an empty lexicon; downstream stages will be empty")
        return {"lexicon.json": lexicon.to_json()}

    if stage == "compile-dfa":
        lexicon = ConceptLexicon.load(out_dir / "lexicon.json")
        table = StateTable.build(lexicon)
        return {"state_table.json": table.to_json()}

    if stage == "mine":
        corpus = Corpus.load(out_dir / "corpus.json")
        table = StateTable.load(out_dir / "state_table.json")
        lexicon = ConceptLexicon.load(out_dir / "lexicon.json")
        db = TransactionDb.from_corpus(corpus, table)
        tree = FpTree.from_transactions(db, cfg.min_support)
        assoc = AssociationMatrix.from_transactions(db)
        names = {c.id: c.canonical for c in lexicon}
        return {
            "transactions.json": db.to_json(),
            "fp_tree.json": tree.to_json(),
            "association.json": assoc.to_json(),
            "association.tsv": assoc.to_tsv(names),
        }

    if stage == "taxonomy":
        tree = FpTree.load(out_dir / "fp_tree.json")
        assoc = AssociationMatrix.load(out_dir / "association.json")
        lexicon = ConceptLexicon.load(out_dir / "lexicon.json")
        stats: dict = {}
        hierarchy = build_hierarchy(tree, assoc, stats)
        log.info("taxonomy: %(merges)d merges, %(promotions)d promotions", stats)
        names = {c.id: c.canonical for c in lexicon}
        return {
            "hierarchy.json": hierarchy.to_json(),
            "hierarchy.txt": hierarchy.to_text(names),
        }

    if stage == "export-owl":
        from .taxonomy import ConceptHierarchy

        hierarchy = ConceptHierarchy.load(out_dir / "hierarchy.json")
        lexicon = ConceptLexicon.load(out_dir / "lexicon.json")
        kb = None
        if cfg.triples_path is not None:
            kb = KnowledgeBase.load_jsonl(cfg.triples_path, lexicon, _schema(cfg))
        names = {c.id: c.canonical for c in lexicon}
        return {"ontology.owl": export_owl(hierarchy, names, kb)}

    if stage == "eval":
        corpus = Corpus.load(out_dir / "corpus.json")
        engine = QaEngine.from_artifacts(out_dir, cfg.triples_path, cfg.properties_path)
        model = train_lsa(corpus, cfg.lsa_k)
        questions = _load_questions(Path(cfg.questions_path))
        report = evaluate_batch(questions, engine, model)
        return {
            "eval_report.json": report_to_json(report),
            "eval_report.txt": report_to_text(report),
        }

    raise DomainError(f"unknown stage: {stage}")


def run_stage(stage: str, cfg: PipelineConfig) -> StageResult:
    """Run one stage, skipping work when the manifest proves nothing changed."""
    if stage not in STAGES:
        raise ConfigError(f"unknown stage {stage!r}; expected one of {', '.join(STAGES)}")
    out_dir = Path(cfg.output_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    inputs = _stage_inputs(stage, cfg, out_dir)

    if stage == "serve":
        from .server import serve

        serve(
            out_dir,
            cfg.triples_path,
            host=cfg.host,
            port=cfg.port,
            properties_path=cfg.properties_path,
            static_dir=cfg.ui_dir,
        )
        return StageResult(stage, ran=True)

    manifest = _load_manifest(out_dir)
    recorded = manifest["stages"].get(stage)
    output_paths = [out_dir / name for name in STAGE_OUTPUTS[stage]]
    if recorded is not None and recorded.get("inputs") == inputs:
        recorded_outputs = recorded.get("outputs", {})
        if all(
            p.is_file() and recorded_outputs.get(p.name) == _digest_file(p)
            for p in output_paths
        ):
            log.info("%s: inputs unchanged, skipping", stage)
            return StageResult(stage, ran=False, outputs=output_paths)

    contents = _execute(stage, cfg, out_dir)
    outputs_digests = {}
    for name, text in contents.items():
        path = out_dir / name
        atomic_write_text(path, text)
        outputs_digests[name] = _digest_file(path)
    manifest["stages"][stage] = {"inputs": inputs, "outputs": outputs_digests}
    _save_manifest(out_dir, manifest)
    return StageResult(stage, ran=True, outputs=output_paths)


def run_all(cfg: PipelineConfig, with_eval: bool | None = None) -> list[StageResult]:
    """Run ingest through export-owl, then eval when question/triple inputs
    are configured (or explicitly requested)."""
    stages = ["ingest", "extract", "compile-dfa", "mine", "taxonomy", "export-owl"]
    if with_eval is None:
        with_eval = cfg.questions_path is not None and cfg.triples_path is not None
    if with_eval:
        stages.append("eval")
    return [run_stage(stage, cfg) for stage in stages]
