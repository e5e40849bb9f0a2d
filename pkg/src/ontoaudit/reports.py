"""Render audit results as JSON, CSV, and Markdown tables.

Five report kinds: per-ontology classification, per-language completeness
matrix, dataset comparison, language-count distribution, and boxplot
summary data.  Output is deterministic (stable row and column order); the
timestamp can be suppressed for golden-file comparisons.  JSON and CSV
carry identical cell values; missing cells are null in JSON and "-" in
CSV/Markdown.  Percentages follow the metrics rounding rules: one decimal
in per-ontology tables, two decimals in dataset tables.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass
from datetime import datetime, timezone
from typing import Sequence

from .errors import EmptyInputError
from .metrics import AuditResult, DatasetSummary, aggregate, round_half_up

__all__ = ["REPORT_KINDS", "ReportDocument", "build_report", "emit"]

TOOL_VERSION = "ontoaudit 0.1.0"

KIND_CLASSIFICATION = "per-ontology-classification"
KIND_COMPLETENESS = "completeness-matrix"
KIND_DATASET = "dataset-comparison"
KIND_LANGUAGES = "language-distribution"
KIND_BOXPLOT = "boxplot-summary"

REPORT_KINDS = (
    KIND_CLASSIFICATION,
    KIND_COMPLETENESS,
    KIND_DATASET,
    KIND_LANGUAGES,
    KIND_BOXPLOT,
)

_FAMILY_TITLES = {
    "labels": "Multilingual Labels",
    "linguistic-model": "Linguistic Model",
    "mapping-model": "Mapping Model",
    "none": "None Detected",
}

# Quartiles use linear interpolation between closest ranks.
QUARTILE_METHOD = "linear interpolation between closest ranks"


@dataclass(frozen=True)
class ReportDocument:
    kind: str
    threshold: float
    columns: tuple[str, ...]
    rows: tuple[dict, ...]
    generated_at: str | None
    tool_version: str = TOOL_VERSION
    notes: tuple[str, ...] = ()


def _datasets(results: Sequence[AuditResult]) -> list[str]:
    return sorted({r.dataset for r in results})


def _fmt_number(value: float | int | None, decimals: int | None = None) -> float | int | None:
    if value is None:
        return None
    if decimals is not None:
        value = round_half_up(float(value), decimals)
    if isinstance(value, float) and value.is_integer():
        return int(value)
    return value


def _classification_rows(results: Sequence[AuditResult], threshold: float) -> tuple[tuple[str, ...], list[dict]]:
    columns = ("dataset", "ontology", "primary_languages", "other_languages",
               "modelling_option", "variant", "needs_review")
    rows = []
    for r in sorted(results, key=lambda r: (r.dataset, r.ontology_id)):
        if not r.multilingual_at_threshold(threshold):
            continue
        rows.append(
            {
                "dataset": r.dataset,
                "ontology": r.ontology_id,
                "primary_languages": ", ".join(sorted(t.normalized for t in r.primary_languages)),
                "other_languages": ", ".join(sorted(t.normalized for t in r.other_languages)) or None,
                "modelling_option": _FAMILY_TITLES.get(r.approach.family, r.approach.family),
                "variant": r.approach.variant,
                "needs_review": r.needs_review,
            }
        )
    return columns, rows


def _completeness_rows(results: Sequence[AuditResult], threshold: float) -> tuple[tuple[str, ...], list[dict]]:
    selected = [
        r for r in sorted(results, key=lambda r: (r.dataset, r.ontology_id))
        if r.multilingual_at_threshold(threshold)
    ]
    languages = sorted(
        {t.normalized for r in selected for t in r.profile.per_language if not t.is_untagged}
    )
    columns = ("dataset", "ontology", "cov", *languages)
    rows = []
    for r in selected:
        lcom = {t.normalized: p for t, p in r.profile.per_language.items() if not t.is_untagged}
        row: dict = {"dataset": r.dataset, "ontology": r.ontology_id, "cov": r.profile.cov}
        for lang in languages:
            row[lang] = _fmt_number(lcom.get(lang), 1)
        rows.append(row)
    return columns, rows


def _dataset_rows(results: Sequence[AuditResult], threshold: float) -> tuple[tuple[str, ...], list[dict]]:
    columns = ("dataset", "ontologies", "multilingual", "percent_multilingual",
               "total_cov", "mean_cov", "median_cov")
    rows = []
    for dataset in _datasets(results):
        subset = [r for r in results if r.dataset == dataset]
        summary = aggregate(subset, threshold, dataset=dataset)
        rows.append(
            {
                "dataset": dataset,
                "ontologies": summary.total_results,
                "multilingual": summary.count_multilingual,
                "percent_multilingual": _fmt_number(summary.percent_multilingual, 2),
                "total_cov": summary.total_cov,
                "mean_cov": _fmt_number(summary.mean_cov, 2),
                "median_cov": _fmt_number(summary.median_cov),
            }
        )
    return columns, rows


def _language_rows(results: Sequence[AuditResult], threshold: float) -> tuple[tuple[str, ...], list[dict]]:
    datasets = _datasets(results)
    summaries = {
        d: aggregate([r for r in results if r.dataset == d], threshold, dataset=d)
        for d in datasets
    }
    max_k = max(
        (k for s in summaries.values() for k in s.languages_per_ontology), default=1
    )
    columns = ("languages", *(f"vocabs_{d}" if d else "vocabs" for d in datasets))
    rows = []
    for k in range(2, max_k + 1):
        row: dict = {"languages": k}
        for d in datasets:
            key = f"vocabs_{d}" if d else "vocabs"
            row[key] = summaries[d].languages_per_ontology.get(k, 0)
        rows.append(row)
    return columns, rows


def _quartiles(values: Sequence[int]) -> tuple[float, float, float]:
    def q(p: float) -> float:
        if len(values) == 1:
            return float(values[0])
        rank = p * (len(values) - 1)
        lo = int(rank)
        hi = min(lo + 1, len(values) - 1)
        frac = rank - lo
        return values[lo] * (1 - frac) + values[hi] * frac

    return q(0.25), q(0.5), q(0.75)


def _boxplot_rows(results: Sequence[AuditResult], threshold: float) -> tuple[tuple[str, ...], list[dict]]:
    columns = ("dataset", "count", "min", "q1", "median", "q3", "max", "mean")
    rows = []
    for dataset in _datasets(results):
        summary = aggregate([r for r in results if r.dataset == dataset], threshold, dataset=dataset)
        if not summary.covs:
            rows.append({"dataset": dataset, "count": 0, "min": None, "q1": None,
                         "median": None, "q3": None, "max": None, "mean": None})
            continue
        q1, q2, q3 = _quartiles(summary.covs)
        rows.append(
            {
                "dataset": dataset,
                "count": summary.count_multilingual,
                "min": summary.covs[0],
                "q1": _fmt_number(q1, 2),
                "median": _fmt_number(q2, 2),
                "q3": _fmt_number(q3, 2),
                "max": summary.covs[-1],
                "mean": _fmt_number(summary.mean_cov, 2),
            }
        )
    return columns, rows


_BUILDERS = {
    KIND_CLASSIFICATION: _classification_rows,
    KIND_COMPLETENESS: _completeness_rows,
    KIND_DATASET: _dataset_rows,
    KIND_LANGUAGES: _language_rows,
    KIND_BOXPLOT: _boxplot_rows,
}

_AGGREGATE_KINDS = {KIND_DATASET, KIND_LANGUAGES, KIND_BOXPLOT}


def build_report(
    results: Sequence[AuditResult],
    kind: str,
    threshold: float,
    timestamp: bool = True,
) -> ReportDocument:
    if kind not in _BUILDERS:
        raise ValueError(f"unknown report kind {kind!r}; expected one of {REPORT_KINDS}")
    if not results and kind in _AGGREGATE_KINDS:
        raise EmptyInputError(f"report kind {kind!r} requires at least one result")
    columns, rows = _BUILDERS[kind](results, threshold)
    if kind == KIND_BOXPLOT:
        notes: tuple[str, ...] = (f"quartile method: {QUARTILE_METHOD}",)
    elif kind == KIND_CLASSIFICATION:
        notes = (
            "identifier-style variants are separated by a configurable dominance "
            "threshold; rows marked needs_review require human inspection",
        )
    else:
        notes = ()
    return ReportDocument(
        kind=kind,
        threshold=threshold,
        columns=columns,
        rows=tuple(rows),
        generated_at=datetime.now(timezone.utc).isoformat(timespec="seconds") if timestamp else None,
        notes=notes,
    )


def _render_json(doc: ReportDocument) -> bytes:
    meta = {"tool_version": doc.tool_version}
    if doc.generated_at:
        meta["generated_at"] = doc.generated_at
    if doc.notes:
        meta["notes"] = list(doc.notes)
    payload = {
        "kind": doc.kind,
        "threshold": doc.threshold,
        "columns": list(doc.columns),
        "rows": [dict(r) for r in doc.rows],
        "meta": meta,
    }
    return (json.dumps(payload, indent=2, sort_keys=True, ensure_ascii=False) + "\n").encode("utf-8")


def _csv_cell(value) -> str:
    if value is None:
        return "-"
    if isinstance(value, bool):
        return "true" if value else "false"
    return str(value)


def _render_csv(doc: ReportDocument) -> bytes:
    buf = io.StringIO()
    writer = csv.writer(buf)  # RFC 4180: CRLF line endings, quoted as needed
    writer.writerow(doc.columns)
    for row in doc.rows:
        writer.writerow([_csv_cell(row.get(col)) for col in doc.columns])
    return buf.getvalue().encode("utf-8")


def _group_thousands(text: str) -> str:
    # Thin-space grouping of the integer part, presentation only.
    if "." in text:
        head, tail = text.split(".", 1)
        tail = "." + tail
    else:
        head, tail = text, ""
    if not head.lstrip("-").isdigit() or len(head.lstrip("-")) <= 3:
        return text
    sign = "-" if head.startswith("-") else ""
    digits = head.lstrip("-")
    groups = []
    while digits:
        groups.append(digits[-3:])
        digits = digits[:-3]
    return sign + " ".join(reversed(groups)) + tail


def _md_cell(value, numeric_grouping: bool) -> str:
    if value is None:
        return "-"
    if isinstance(value, bool):
        return "yes" if value else "no"
    if isinstance(value, (int, float)) and numeric_grouping:
        return _group_thousands(str(value))
    return str(value).replace("|", "\\|")


def _render_markdown(doc: ReportDocument) -> bytes:
    lines = [f"# {doc.kind} (threshold >{doc.threshold:g}%)", ""]
    if doc.generated_at:
        lines.append(f"Generated {doc.generated_at} by {doc.tool_version}.")
        lines.append("")
    for note in doc.notes:
        lines.append(f"_{note}_")
        lines.append("")
    lines.append("| " + " | ".join(doc.columns) + " |")
    lines.append("| " + " | ".join("---" for _ in doc.columns) + " |")
    for row in doc.rows:
        lines.append(
            "| " + " | ".join(_md_cell(row.get(col), True) for col in doc.columns) + " |"
        )
    return ("\n".join(lines) + "\n").encode("utf-8")


def emit(
    results: Sequence[AuditResult],
    kind: str,
    format: str = "json",
    threshold: float = 0.0,
    *,
    timestamp: bool = True,
) -> bytes:
    """Render a report; output is byte-stable when the timestamp is off."""
    doc = build_report(results, kind, threshold, timestamp=timestamp)
    if format == "json":
        return _render_json(doc)
    if format == "csv":
        return _render_csv(doc)
    if format == "markdown":
        return _render_markdown(doc)
    raise ValueError(f"unknown format {format!r}; expected json, csv, or markdown")
