"""Batch front end: every layout and report the service offers, computed
headlessly from files.  Output is bit-reproducible for a fixed --seed."""

from __future__ import annotations

import argparse
import json
import sys
import traceback
from pathlib import Path

from .corpus import BibtexParseError, canonicalize_references, parse_bibtex, resolve_citations
from .bundles import BundleParams
from .network import ForceParams
from .pipeline import Project, ProjectConfig
from .projection import ProjectionConfig
from .session import compute_metrics, load_gold, load_session
from .textpipe import EmptyVocabularyError, PipelineConfig

__all__ = ["main"]


class _Parser(argparse.ArgumentParser):
    """Flag mistakes are input errors: usage + exit 1 (argparse defaults to 2)."""

    def error(self, message: str) -> None:  # noqa: D401 - argparse hook
        self.print_usage(sys.stderr)
        sys.stderr.write(f"{self.prog}: error: {message}\n")
        sys.exit(1)


def _build_parser() -> _Parser:
    parser = _Parser(prog="slrviz", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    def add_corpus_args(p: argparse.ArgumentParser) -> None:
        p.add_argument("bibfile", help="bibtex corpus file")
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--min-df", type=int, default=2, help="minimum document frequency")
        p.add_argument("-o", "--output", default=None, help="output path (default stdout)")

    p_ingest = sub.add_parser("ingest", help="parse a corpus and report on it")
    add_corpus_args(p_ingest)

    p_map = sub.add_parser("map", help="export the document map")
    add_corpus_args(p_map)
    p_map.add_argument("--format", choices=("json", "svg"), default="json")
    p_map.add_argument("--control-count", type=int, default=None)
    p_map.add_argument("--neighborhood-k", type=int, default=10)

    p_bundles = sub.add_parser("bundles", help="export bundled citation edges")
    add_corpus_args(p_bundles)
    p_bundles.add_argument("--format", choices=("json", "svg"), default="json")
    p_bundles.add_argument("--beta", type=float, default=0.85)
    p_bundles.add_argument("--samples", type=int, default=50)

    p_network = sub.add_parser("network", help="export the citation network")
    add_corpus_args(p_network)
    p_network.add_argument("--format", choices=("json", "svg"), default="json")
    p_network.add_argument("--iterations", type=int, default=300)

    p_overlay = sub.add_parser("overlay", help="export an overlay payload")
    add_corpus_args(p_overlay)
    p_overlay.add_argument(
        "--kind", choices=("clusters", "expression", "knn"), required=True
    )
    p_overlay.add_argument("--expression", default=None)
    p_overlay.add_argument("--focus", default=None)
    p_overlay.add_argument("--k", type=int, default=None)
    p_overlay.add_argument("--cluster-k", type=int, default=None)

    p_metrics = sub.add_parser("metrics", help="score a session log against a gold standard")
    p_metrics.add_argument("--log", required=True, help="session JSONL file")
    p_metrics.add_argument("--gold", required=True, help="gold standard id list")
    p_metrics.add_argument("--format", choices=("json", "csv"), default="json")
    p_metrics.add_argument("-o", "--output", default=None)

    p_serve = sub.add_parser("serve", help="run the HTTP service")
    p_serve.add_argument("--host", default="127.0.0.1")
    p_serve.add_argument("--port", type=int, default=8000)
    p_serve.add_argument("--static", default=None, help="directory of UI files to serve")

    return parser


def _emit(text: str, output: str | None) -> None:
    if output is None:
        sys.stdout.write(text)
    else:
        Path(output).write_text(text, encoding="utf-8")


def _load_project(args: argparse.Namespace, **config_kwargs) -> Project:
    text = Path(args.bibfile).read_text(encoding="utf-8")
    corpus = parse_bibtex(text, source=args.bibfile)
    pipeline = PipelineConfig(min_document_frequency=args.min_df)
    config = ProjectConfig(pipeline=pipeline, seed=args.seed, **config_kwargs)
    return Project(corpus, config)


def _json(payload: dict) -> str:
    return json.dumps(payload, indent=2) + "\n"


def _cmd_ingest(args: argparse.Namespace) -> None:
    text = Path(args.bibfile).read_text(encoding="utf-8")
    corpus = parse_bibtex(text, source=args.bibfile)
    refs = canonicalize_references(corpus)
    links = resolve_citations(corpus, refs)
    report = {
        "studies": len(corpus.studies),
        "corpus_hash": corpus.content_hash(),
        "references": len(refs),
        "citation_edges": len(links.edges),
        "warnings": corpus.warnings + links.warnings,
    }
    _emit(_json(report), args.output)


def _cmd_map(args: argparse.Namespace) -> None:
    project = _load_project(
        args,
        projection=ProjectionConfig(
            control_count=args.control_count, neighborhood_k=args.neighborhood_k
        ),
    )
    if args.format == "svg":
        _emit(project.view_svg("map"), args.output)
    else:
        _emit(_json(project.view_json("map")), args.output)


def _cmd_bundles(args: argparse.Namespace) -> None:
    project = _load_project(
        args, bundle=BundleParams(beta=args.beta, samples=args.samples)
    )
    if args.format == "svg":
        _emit(project.view_svg("bundles"), args.output)
    else:
        _emit(_json(project.view_json("bundles")), args.output)


def _cmd_network(args: argparse.Namespace) -> None:
    project = _load_project(args, force=ForceParams(iterations=args.iterations))
    if args.format == "svg":
        _emit(project.view_svg("network"), args.output)
    else:
        _emit(_json(project.view_json("network")), args.output)


def _cmd_overlay(args: argparse.Namespace) -> None:
    project = _load_project(args, cluster_k=args.cluster_k)
    if args.kind == "clusters":
        payload = project.cluster_model.to_json_dict()
    elif args.kind == "expression":
        if not args.expression:
            raise ValueError("--kind expression requires --expression")
        payload = project.view_json("map", overlay="expression", expression=args.expression)[
            "overlay"
        ]
    else:
        if not args.focus:
            raise ValueError("--kind knn requires --focus")
        payload = project.view_json("map", overlay="knn", focus=args.focus, k=args.k)[
            "overlay"
        ]
    _emit(_json(payload), args.output)


def _cmd_metrics(args: argparse.Namespace) -> None:
    session = load_session(args.log)
    gold = load_gold(args.gold)
    metrics = compute_metrics(session, gold)
    if args.format == "csv":
        rows = ["metric,value"]
        for name, value in metrics.to_json_dict().items():
            rows.append(f"{name},{value}")
        _emit("\r\n".join(rows) + "\r\n", args.output)
    else:
        _emit(_json(metrics.to_json_dict()), args.output)


def _cmd_serve(args: argparse.Namespace) -> None:
    import uvicorn

    from .service import create_app

    uvicorn.run(create_app(static_dir=args.static), host=args.host, port=args.port)


_COMMANDS = {
    "ingest": _cmd_ingest,
    "map": _cmd_map,
    "bundles": _cmd_bundles,
    "network": _cmd_network,
    "overlay": _cmd_overlay,
    "metrics": _cmd_metrics,
    "serve": _cmd_serve,
}

_INPUT_ERRORS = (
    BibtexParseError,
    EmptyVocabularyError,
    FileNotFoundError,
    IsADirectoryError,
    KeyError,
    UnicodeDecodeError,
    ValueError,
)


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        _COMMANDS[args.command](args)
    except _INPUT_ERRORS as exc:
        message = exc.args[0] if exc.args else str(exc)
        sys.stderr.write(f"slrviz {args.command}: error: {message}\n")
        return 1
    except Exception:
        traceback.print_exc()
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
