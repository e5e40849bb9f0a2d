"""Command-line interface: harvest, audit, detect, gen, report.

Stages compose through files: harvest writes a record ledger, audit writes
JSON-lines results, report renders those results.  Exit codes are stable:
0 success, 1 partial or empty results, 2 configuration or input errors.
Logs go to stderr; stdout carries data only.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

from .audit import AuditConfig, audit_path
from .config import ENV_APIKEY, RunConfig, build_config
from .errors import ConfigError, EmptyInputError, InvalidSpecError, OntoAuditError
from .generator import GenerationSpec, MANIFEST_FILENAME, emit_ntriples, generate
from .harvester import (
    AuthError,
    OfflineTransport,
    OnlineTransport,
    TransportError,
    read_ledger,
    run_bioportal_pipeline,
    run_lov_pipeline,
    write_ledger,
)
from .metrics import AuditResult
from .reports import REPORT_KINDS, emit

log = logging.getLogger("ontoaudit")

EXIT_OK = 0
EXIT_PARTIAL = 1
EXIT_CONFIG = 2


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--config", help="key=value configuration file")
    parser.add_argument("--cache-dir", help="cache directory (env ONTOAUDIT_CACHE_DIR)")
    parser.add_argument("--offline", action="store_true", default=None,
                        help="replay recorded exchanges; no network access")
    parser.add_argument("--threshold", type=float, default=None,
                        help="completeness threshold in percent (default 5)")
    parser.add_argument("--label-properties", default=None,
                        help="comma-separated label property IRIs")
    parser.add_argument("--watchlist", default=None,
                        help="linguistic namespace watchlist file (prefix IRI lines)")
    parser.add_argument("--tie-epsilon", type=float, default=None,
                        help="primary-language tie window in percentage points")
    parser.add_argument("--dominance-threshold", type=float, default=None,
                        help="identifier/language dominance ratio for variant detection")
    parser.add_argument("--concurrency", type=int, default=None)
    strictness = parser.add_mutually_exclusive_group()
    strictness.add_argument("--strict", dest="strict_parsing", action="store_true", default=None)
    strictness.add_argument("--lenient", dest="strict_parsing", action="store_false", default=None)
    parser.add_argument("-v", "--verbose", action="store_true")


def _config_from(args: argparse.Namespace) -> RunConfig:
    return build_config(
        config_file=args.config,
        cache_dir=args.cache_dir,
        offline=args.offline,
        threshold=args.threshold,
        label_properties=args.label_properties,
        watchlist=args.watchlist,
        tie_epsilon=args.tie_epsilon,
        concurrency=args.concurrency,
        strict_parsing=args.strict_parsing,
        dominance_threshold=args.dominance_threshold,
    )


def _audit_config(config: RunConfig) -> AuditConfig:
    thresholds = (0.0, 5.0)
    if config.threshold not in thresholds:
        thresholds = tuple(sorted({*thresholds, config.threshold}))
    return AuditConfig(
        label_properties=config.label_properties,
        tie_epsilon=config.tie_epsilon,
        thresholds=thresholds,
        detector=config.detector(),
    )


def _transport(config: RunConfig, exchanges: str | None):
    if config.offline:
        directory = Path(exchanges) if exchanges else config.cache_dir / "exchanges"
        if not directory.is_dir():
            raise ConfigError(f"offline mode needs a recorded exchange directory at {directory}")
        return OfflineTransport(directory)
    return OnlineTransport()


def cmd_harvest(args: argparse.Namespace) -> int:
    config = _config_from(args)
    transport = _transport(config, args.exchanges)
    cache_dir = config.cache_dir
    cache_dir.mkdir(parents=True, exist_ok=True)
    if args.repository == "bioportal":
        api_key = args.api_key or os.environ.get(ENV_APIKEY, "")
        if not api_key:
            raise ConfigError(
                f"harvesting BioPortal requires an API key via {ENV_APIKEY} or --api-key"
            )
        result = run_bioportal_pipeline(
            transport, api_key, cache_dir,
            concurrency=config.concurrency, per_host=config.per_host,
            delay=config.politeness_delay,
            retry_delay=0.0 if config.offline else 0.5,
        )
    else:
        result = run_lov_pipeline(
            transport, cache_dir,
            concurrency=config.concurrency, per_host=config.per_host,
            delay=config.politeness_delay,
        )
    ledger_path = Path(args.ledger) if args.ledger else cache_dir / f"{args.repository}-records.jsonl"
    write_ledger(result.records, ledger_path)
    summary = {
        "repository": args.repository,
        "pipeline": [
            {"name": s.name, "description": s.description, "in": s.in_count, "out": s.out_count}
            for s in result.steps
        ],
        "status_buckets": result.bucket_histogram(),
        "survivors": len(result.survivors),
        "ledger": str(ledger_path),
    }
    sys.stdout.write(json.dumps(summary, indent=2, sort_keys=True) + "\n")
    failures = sum(1 for r in result.records if r.status_bucket not in ("", "2xx"))
    if failures:
        log.warning("%d records failed or were excluded during fetch", failures)
    return EXIT_OK


def _collect_audit_inputs(paths: list[str], config: RunConfig) -> list[tuple[str, Path, str]]:
    """Expand CLI inputs to (ontology id, path, dataset) work items."""
    items: list[tuple[str, Path, str]] = []
    for raw in paths:
        path = Path(raw)
        if path.suffix in (".jsonl", ".ndjson") and path.is_file():
            for record in read_ledger(path):
                if record.cached_path and not record.excluded_reason:
                    items.append(
                        (record.id, config.cache_dir / record.cached_path, record.repository)
                    )
            continue
        if path.is_dir():
            if (path / MANIFEST_FILENAME).exists():
                items.append((path.name, path, ""))
            else:
                for child in sorted(path.iterdir()):
                    if child.suffix in (".nt", ".ttl", ".turtle", ".rdf", ".owl", ".xml"):
                        items.append((child.stem, child, ""))
            continue
        items.append((path.stem, path, ""))
    return items


def cmd_audit(args: argparse.Namespace) -> int:
    config = _config_from(args)
    audit_config = _audit_config(config)
    items = _collect_audit_inputs(args.inputs, config)
    dataset = args.dataset or ""

    def work(item: tuple[str, Path, str]) -> dict:
        ontology_id, path, item_dataset = item
        try:
            result = audit_path(path, audit_config, dataset=dataset or item_dataset)
            payload = result.to_dict()
            payload["id"] = ontology_id
            return payload
        except (OntoAuditError, OSError) as exc:
            log.warning("audit failed for %s: %s", path, exc)
            return {"id": ontology_id, "dataset": dataset or item_dataset, "error": str(exc)}

    with ThreadPoolExecutor(max_workers=config.concurrency) as pool:
        payloads = list(pool.map(work, items))
    payloads.sort(key=lambda p: (p.get("dataset", ""), p["id"]))
    out = open(args.out, "w", encoding="utf-8") if args.out else sys.stdout
    try:
        for payload in payloads:
            out.write(json.dumps(payload, sort_keys=True) + "\n")
    finally:
        if args.out:
            out.close()
    succeeded = sum(1 for p in payloads if "error" not in p)
    if succeeded == 0:
        log.error("no input produced an audit result")
        return EXIT_PARTIAL
    return EXIT_OK


def cmd_detect(args: argparse.Namespace) -> int:
    config = _config_from(args)
    audit_config = _audit_config(config)
    items = _collect_audit_inputs(args.inputs, config)
    succeeded = 0
    for ontology_id, path, _dataset in items:
        try:
            result = audit_path(path, audit_config)
        except (OntoAuditError, OSError) as exc:
            log.warning("detection failed for %s: %s", path, exc)
            sys.stdout.write(json.dumps({"id": ontology_id, "error": str(exc)}) + "\n")
            continue
        payload = {"id": ontology_id, **result.approach.to_dict()}
        sys.stdout.write(json.dumps(payload, sort_keys=True) + "\n")
        succeeded += 1
    return EXIT_OK if succeeded else EXIT_PARTIAL


def cmd_gen(args: argparse.Namespace) -> int:
    spec_path = Path(args.spec)
    try:
        payload = json.loads(spec_path.read_text("utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise InvalidSpecError(f"cannot read spec file {spec_path}: {exc}") from exc
    entries = payload.get("corpora", [payload]) if isinstance(payload, dict) else payload
    if not isinstance(entries, list) or not entries:
        raise InvalidSpecError("spec file must hold one spec object or a 'corpora' list")
    out_dir = Path(args.out_dir)
    emitted: list[str] = []
    for entry in entries:
        if args.seed is not None:
            entry = {**entry, "seed": args.seed}
        spec = GenerationSpec.from_dict(entry)
        corpus = generate(spec)
        target = out_dir / corpus.name if len(entries) > 1 else out_dir
        for path in emit_ntriples(corpus, target):
            emitted.append(str(path))
    sys.stdout.write("\n".join(emitted) + "\n")
    return EXIT_OK


def _read_results(path: Path) -> list[AuditResult]:
    results = []
    with path.open("r", encoding="utf-8") as fh:
        for line_no, line in enumerate(fh, start=1):
            line = line.strip()
            if not line:
                continue
            payload = json.loads(line)
            if "error" in payload:
                log.warning("%s:%d: skipping failed audit of %s", path, line_no, payload.get("id"))
                continue
            results.append(AuditResult.from_dict(payload))
    return results


def cmd_report(args: argparse.Namespace) -> int:
    config = _config_from(args)
    path = Path(args.results)
    try:
        results = _read_results(path)
    except (OSError, json.JSONDecodeError, KeyError, ValueError) as exc:
        raise ConfigError(f"cannot read results file {path}: {exc}") from exc
    threshold = config.threshold
    try:
        payload = emit(
            results, args.kind, args.format, threshold, timestamp=not args.no_timestamp
        )
    except EmptyInputError as exc:
        raise ConfigError(str(exc)) from exc
    if args.out:
        Path(args.out).write_bytes(payload)
    else:
        sys.stdout.buffer.write(payload)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ontoaudit",
        description="Audit OWL/RDF ontologies for multilingualism.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_harvest = sub.add_parser("harvest", help="fetch repository inventories and documents")
    p_harvest.add_argument("repository", choices=("bioportal", "lov"))
    p_harvest.add_argument("--api-key", default=None, help=f"BioPortal key (env {ENV_APIKEY})")
    p_harvest.add_argument("--exchanges", default=None,
                           help="recorded exchange directory for --offline")
    p_harvest.add_argument("--ledger", default=None, help="output ledger path")
    _add_common(p_harvest)
    p_harvest.set_defaults(func=cmd_harvest)

    p_audit = sub.add_parser("audit", help="audit files, corpus dirs, or a harvest ledger")
    p_audit.add_argument("inputs", nargs="+")
    p_audit.add_argument("--out", default=None, help="write JSON-lines results here")
    p_audit.add_argument("--dataset", default=None, help="dataset tag for the results")
    _add_common(p_audit)
    p_audit.set_defaults(func=cmd_audit)

    p_detect = sub.add_parser("detect", help="report the modelling approach only")
    p_detect.add_argument("inputs", nargs="+")
    _add_common(p_detect)
    p_detect.set_defaults(func=cmd_detect)

    p_gen = sub.add_parser("gen", help="generate reference corpora from a spec file")
    p_gen.add_argument("spec", help="JSON spec (one object or {'corpora': [...]})")
    p_gen.add_argument("out_dir")
    p_gen.add_argument("--seed", type=int, default=None, help="override all corpus seeds")
    _add_common(p_gen)
    p_gen.set_defaults(func=cmd_gen)

    p_report = sub.add_parser("report", help="render audit results as a table")
    p_report.add_argument("results", help="JSON-lines audit results")
    p_report.add_argument("--kind", choices=REPORT_KINDS, default="dataset-comparison")
    p_report.add_argument("--format", choices=("json", "csv", "markdown"), default="json")
    p_report.add_argument("--out", default=None)
    p_report.add_argument("--no-timestamp", action="store_true",
                          help="omit the generation timestamp (golden-file friendly)")
    _add_common(p_report)
    p_report.set_defaults(func=cmd_report)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        stream=sys.stderr,
        level=logging.INFO if args.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
    )
    try:
        return args.func(args)
    except (ConfigError, InvalidSpecError, AuthError) as exc:
        log.error("%s", exc)
        return EXIT_CONFIG
    except (TransportError, OntoAuditError) as exc:
        log.error("%s", exc)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
