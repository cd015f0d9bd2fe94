"""Command line interface for the pipeline stages.

Exit codes: 0 success (including up-to-date no-ops), 1 usage or configuration
problem, 2 missing upstream artifact, 3 corpus or knowledge-base data error.
"""

from __future__ import annotations

import argparse
import dataclasses
import logging
import sys
from pathlib import Path

from .errors import ConfigError, MissingUpstreamArtifactError, OntoforgeError
from .pipeline import STAGES, PipelineConfig, run_all, run_stage

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_MISSING_ARTIFACT = 2
EXIT_DATA = 3

log = logging.getLogger(__name__)


class _Parser(argparse.ArgumentParser):
    # argparse exits with status 2 on bad arguments; the CLI contract wants 1
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


_OVERRIDE_FIELDS = (
    "corpus_dir",
    "output_dir",
    "common_corpus_path",
    "synonyms_path",
    "triples_path",
    "questions_path",
    "properties_path",
    "ui_dir",
    "theta",
    "max_ngram",
    "log_base",
    "min_support",
    "lsa_k",
    "host",
    "port",
)


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--config", type=Path, help="JSON config file; flags override its values")
    common.add_argument("--corpus-dir", dest="corpus_dir", help="directory of *.txt corpus files")
    common.add_argument(
        "--output-dir",
        "--artifacts",
        dest="output_dir",
        help="directory holding pipeline artifacts",
    )
    common.add_argument("--common-corpus", dest="common_corpus_path", help="everyday-frequency TSV")
    common.add_argument("--synonyms", dest="synonyms_path", help="synonym lexicon file")
    common.add_argument("--triples", dest="triples_path", help="knowledge-base triples JSONL")
    common.add_argument("--questions", dest="questions_path", help="evaluation questions JSONL")
    common.add_argument("--properties", dest="properties_path", help="property cue file")
    common.add_argument("--ui", dest="ui_dir", help="static browser bundle to serve at /")
    common.add_argument("--theta", type=float, help="tf-idf quantile cut in [0, 1)")
    common.add_argument("--max-ngram", dest="max_ngram", type=int, help="longest phrase length (1..5)")
    common.add_argument("--log-base", dest="log_base", type=float, help="idf logarithm base")
    common.add_argument("--min-support", dest="min_support", type=int, help="mining support threshold")
    common.add_argument("--lsa-k", "--k", dest="lsa_k", type=int, help="retained singular values")
    common.add_argument("--host", help="bind address for serve")
    common.add_argument("--port", type=int, help="port for serve")
    common.add_argument("-v", "--verbose", action="store_true", help="debug logging")

    parser = _Parser(prog="ontoforge", description="corpus to ontology pipeline")
    sub = parser.add_subparsers(dest="stage", required=True, metavar="stage")
    help_by_stage = {
        "ingest": "load and tokenize the corpus",
        "extract": "select concept terms and synonyms",
        "compile-dfa": "compile the phrase state table",
        "mine": "mine frequent concept sets and associations",
        "taxonomy": "build the concept hierarchy",
        "export-owl": "write the OWL document",
        "eval": "answer fixture questions and score them",
        "serve": "run the question-answering HTTP service",
        "all": "run ingest through export-owl (and eval when configured)",
    }
    for stage in (*STAGES, "all"):
        sub.add_parser(stage, parents=[common], help=help_by_stage[stage])
    return parser


def _build_config(args: argparse.Namespace) -> PipelineConfig:
    overrides = {
        name: getattr(args, name)
        for name in _OVERRIDE_FIELDS
        if getattr(args, name) is not None
    }
    if args.config is not None:
        cfg = PipelineConfig.from_file(args.config)
        if overrides:
            cfg = dataclasses.replace(cfg, **overrides)
        return cfg
    if "output_dir" not in overrides:
        raise ConfigError("either --config or --output-dir is required")
    return PipelineConfig(**overrides)


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.INFO,
        format="%(levelname)s %(name)s: %(message)s",
    )
    try:
        cfg = _build_config(args)
        if args.stage == "all":
            results = run_all(cfg)
        else:
            results = [run_stage(args.stage, cfg)]
        for result in results:
            state = "ok" if result.ran else "up to date"
            names = ", ".join(p.name for p in result.outputs)
            print(f"{result.stage}: {state}" + (f" ({names})" if names else ""))
        return EXIT_OK
    except ConfigError as exc:
        print(f"ontoforge: config error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except MissingUpstreamArtifactError as exc:
        print(f"ontoforge: {exc}", file=sys.stderr)
        return EXIT_MISSING_ARTIFACT
    except (OntoforgeError, OSError) as exc:
        print(f"ontoforge: {exc}", file=sys.stderr)
        return EXIT_DATA


if __name__ == "__main__":
    sys.exit(main())
