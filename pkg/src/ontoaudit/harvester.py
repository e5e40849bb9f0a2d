"""Harvest ontology inventories and documents from BioPortal and LOV.

Every network interaction goes through a Transport.  The online transport
speaks HTTP; the offline transport replays a directory of recorded
request/response exchanges, which makes whole pipeline runs reproducible
without any network access.  Failures never abort a harvest: each record
ends in exactly one terminal state (cached, excluded-with-reason, or
failed-with-bucket).
"""

from __future__ import annotations

import hashlib
import json
import logging
import threading
import time
from base64 import b64decode, b64encode
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace
from datetime import datetime, timezone
from pathlib import Path
from typing import Callable, Iterable, Mapping, Protocol
from urllib.parse import urljoin, urlsplit

from .errors import MalformedPayloadError, OntoAuditError, TransportError
from .formats import detect_format, parse_document

log = logging.getLogger(__name__)

__all__ = [
    "AuthError",
    "RateLimitError",
    "TransportResponse",
    "OnlineTransport",
    "OfflineTransport",
    "write_exchange",
    "HarvestRecord",
    "FilterStep",
    "bioportal_list",
    "lov_list",
    "fetch_document",
    "fetch_documents",
    "filter_pipeline",
    "run_bioportal_pipeline",
    "run_lov_pipeline",
    "PipelineResult",
    "write_ledger",
    "read_ledger",
    "BIOPORTAL_BASE",
    "LOV_LIST_URL",
]

BIOPORTAL_BASE = "https://data.bioontology.org"
LOV_LIST_URL = "https://lov.linkeddata.es/dataset/lov/api/v2/vocabulary/list"
RDF_XML_MEDIA_TYPE = "application/rdf+xml"

DEFAULT_TIMEOUT = 30.0
MAX_REDIRECT_HOPS = 5
METADATA_BATCH_SIZE = 30


class AuthError(OntoAuditError):
    """Repository rejected the API key (401/403)."""


class RateLimitError(OntoAuditError):
    """Still rate-limited after exhausting the retry budget."""


@dataclass(frozen=True)
class TransportResponse:
    status: int
    headers: dict[str, str]
    body: bytes

    def header(self, name: str) -> str | None:
        for key, value in self.headers.items():
            if key.lower() == name.lower():
                return value
        return None


class Transport(Protocol):
    def request(self, method: str, url: str, headers: Mapping[str, str] | None = None) -> TransportResponse:
        ...


class OnlineTransport:
    """requests-backed transport; redirects are handled by the caller."""

    def __init__(self, timeout: float = DEFAULT_TIMEOUT):
        import requests

        self.timeout = timeout
        self._session = requests.Session()

    def request(self, method: str, url: str, headers: Mapping[str, str] | None = None) -> TransportResponse:
        import requests

        try:
            resp = self._session.request(
                method, url, headers=dict(headers or {}), timeout=self.timeout,
                allow_redirects=False,
            )
        except requests.RequestException as exc:
            raise TransportError(f"{method} {url}: {exc}") from exc
        return TransportResponse(resp.status_code, dict(resp.headers), resp.content)


def _exchange_key(method: str, url: str) -> str:
    return hashlib.sha256(f"{method.upper()} {url}".encode("utf-8")).hexdigest()[:24]


def write_exchange(
    directory: str | Path,
    url: str,
    *,
    method: str = "GET",
    status: int = 200,
    headers: Mapping[str, str] | None = None,
    body: bytes | str = b"",
    error: str | None = None,
    responses: list[dict] | None = None,
) -> Path:
    """Record one exchange (or an ordered response sequence) for offline replay."""
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    if responses is None:
        responses = [
            {"status": status, "headers": dict(headers or {}), "body": body, "error": error}
        ]
    encoded = []
    for resp in responses:
        raw = resp.get("body", b"")
        if isinstance(raw, str):
            raw = raw.encode("utf-8")
        encoded.append(
            {
                "status": int(resp.get("status", 200)),
                "headers": dict(resp.get("headers") or {}),
                "body_b64": b64encode(raw).decode("ascii"),
                "error": resp.get("error"),
            }
        )
    payload = {"method": method.upper(), "url": url, "responses": encoded}
    path = directory / f"{_exchange_key(method, url)}.json"
    path.write_text(json.dumps(payload, sort_keys=True), "utf-8")
    return path


class OfflineTransport:
    """Replay recorded exchanges; raises TransportError for unknown URLs.

    Response sequences are consumed in order (the final response repeats),
    which lets fixtures model retry-after-429 behaviour.  The transport
    also tracks in-flight requests per host so tests can verify the
    politeness limits.
    """

    def __init__(self, directory: str | Path):
        self.directory = Path(directory)
        self._lock = threading.Lock()
        self._cursor: dict[str, int] = {}
        self._inflight: dict[str, int] = {}
        self.max_inflight: dict[str, int] = {}
        self.request_log: list[tuple[str, float, float]] = []

    def request(self, method: str, url: str, headers: Mapping[str, str] | None = None) -> TransportResponse:
        key = _exchange_key(method, url)
        path = self.directory / f"{key}.json"
        host = urlsplit(url).netloc
        start = time.monotonic()
        with self._lock:
            self._inflight[host] = self._inflight.get(host, 0) + 1
            self.max_inflight[host] = max(self.max_inflight.get(host, 0), self._inflight[host])
        try:
            if not path.exists():
                raise TransportError(f"no recorded exchange for {method} {url}")
            payload = json.loads(path.read_text("utf-8"))
            responses = payload["responses"]
            with self._lock:
                idx = min(self._cursor.get(key, 0), len(responses) - 1)
                self._cursor[key] = idx + 1
            resp = responses[idx]
            if resp.get("error"):
                raise TransportError(f"{method} {url}: {resp['error']}")
            return TransportResponse(
                status=int(resp["status"]),
                headers=dict(resp.get("headers") or {}),
                body=b64decode(resp.get("body_b64", "")),
            )
        finally:
            end = time.monotonic()
            with self._lock:
                self._inflight[host] -= 1
                self.request_log.append((host, start, end))


@dataclass(frozen=True)
class HarvestRecord:
    repository: str  # bioportal | lov
    id: str
    uri: str = ""
    metadata: dict = field(default_factory=dict)
    declared_format: str = ""
    status_bucket: str = ""
    http_code: int | None = None
    cached_path: str | None = None
    fetched_at: str | None = None
    excluded_reason: str | None = None
    retry_count: int = 0

    def to_dict(self) -> dict:
        return {
            "repository": self.repository,
            "id": self.id,
            "uri": self.uri,
            "metadata": self.metadata,
            "declared_format": self.declared_format,
            "status_bucket": self.status_bucket,
            "http_code": self.http_code,
            "cached_path": self.cached_path,
            "fetched_at": self.fetched_at,
            "excluded_reason": self.excluded_reason,
            "retry_count": self.retry_count,
        }

    @classmethod
    def from_dict(cls, payload: Mapping) -> "HarvestRecord":
        return cls(
            repository=payload["repository"],
            id=payload["id"],
            uri=payload.get("uri", ""),
            metadata=dict(payload.get("metadata", {})),
            declared_format=payload.get("declared_format", ""),
            status_bucket=payload.get("status_bucket", ""),
            http_code=payload.get("http_code"),
            cached_path=payload.get("cached_path"),
            fetched_at=payload.get("fetched_at"),
            excluded_reason=payload.get("excluded_reason"),
            retry_count=int(payload.get("retry_count", 0)),
        )


@dataclass(frozen=True)
class FilterStep:
    name: str
    description: str
    in_count: int
    out_count: int


def _now() -> str:
    return datetime.now(timezone.utc).isoformat(timespec="seconds")


def _get_json(
    transport: Transport,
    url: str,
    headers: Mapping[str, str] | None = None,
    *,
    max_retries: int = 5,
    retry_delay: float = 0.5,
) -> tuple[object, int]:
    """GET a JSON payload with exponential backoff on 429; returns (payload, retries)."""
    retries = 0
    while True:
        resp = transport.request("GET", url, headers)
        if resp.status in (401, 403):
            raise AuthError(f"repository rejected credentials for {url} (HTTP {resp.status})")
        if resp.status == 429:
            if retries >= max_retries:
                raise RateLimitError(f"rate limited on {url} after {retries} retries")
            delay = retry_delay * (2 ** retries)
            retries += 1
            if delay > 0:
                time.sleep(delay)
            continue
        if resp.status != 200:
            raise MalformedPayloadError(f"unexpected HTTP {resp.status} for {url}")
        try:
            return json.loads(resp.body.decode("utf-8")), retries
        except (UnicodeDecodeError, json.JSONDecodeError) as exc:
            raise MalformedPayloadError(f"invalid JSON from {url}: {exc}") from exc


def _bioportal_headers(api_key: str, mode: str) -> dict[str, str]:
    if mode == "header":
        return {"Authorization": f"apikey token={api_key}"}
    return {}


def _with_api_key(url: str, api_key: str, mode: str) -> str:
    if mode == "query":
        sep = "&" if "?" in url else "?"
        return f"{url}{sep}apikey={api_key}"
    return url


def bioportal_list(
    transport: Transport,
    api_key: str,
    *,
    base_url: str = BIOPORTAL_BASE,
    api_key_mode: str = "header",
    batch_size: int = METADATA_BATCH_SIZE,
    concurrency: int = 4,
    retry_delay: float = 0.5,
) -> list[HarvestRecord]:
    """Inventory of BioPortal ontologies, enriched with submission metadata.

    Metadata is retrieved in batches of ``batch_size`` acronyms via the
    latest_submission and categories endpoints.
    """
    if not api_key:
        raise AuthError("a BioPortal API key is required")
    headers = _bioportal_headers(api_key, api_key_mode)

    listing, _ = _get_json(
        transport, _with_api_key(f"{base_url}/ontologies", api_key, api_key_mode),
        headers, retry_delay=retry_delay,
    )
    if not isinstance(listing, list):
        raise MalformedPayloadError("ontology listing is not a JSON array")
    # The categories inventory is fetched alongside the ontology listing.
    categories_listing, _ = _get_json(
        transport, _with_api_key(f"{base_url}/categories", api_key, api_key_mode),
        headers, retry_delay=retry_delay,
    )
    log.info("bioportal: %d ontologies, %d categories listed",
             len(listing), len(categories_listing) if isinstance(categories_listing, list) else 0)

    def enrich(entry: Mapping) -> HarvestRecord:
        acronym = str(entry.get("acronym", ""))
        metadata = {"name": entry.get("name", ""), "listing": dict(entry)}
        retries = 0
        declared = ""
        try:
            submission, r1 = _get_json(
                transport,
                _with_api_key(f"{base_url}/ontologies/{acronym}/latest_submission", api_key, api_key_mode),
                headers, retry_delay=retry_delay,
            )
            retries += r1
            if isinstance(submission, Mapping):
                declared = str(submission.get("hasOntologyLanguage", "") or "")
                metadata["status"] = submission.get("status")
                metadata["description"] = submission.get("description")
        except (MalformedPayloadError, TransportError) as exc:
            log.warning("bioportal %s: latest_submission unavailable: %s", acronym, exc)
        try:
            cats, r2 = _get_json(
                transport,
                _with_api_key(f"{base_url}/ontologies/{acronym}/categories", api_key, api_key_mode),
                headers, retry_delay=retry_delay,
            )
            retries += r2
            if isinstance(cats, list):
                metadata["categories"] = [c.get("name", c) if isinstance(c, Mapping) else c for c in cats]
        except (MalformedPayloadError, TransportError) as exc:
            log.warning("bioportal %s: categories unavailable: %s", acronym, exc)
        return HarvestRecord(
            repository="bioportal",
            id=acronym,
            uri=_with_api_key(f"{base_url}/ontologies/{acronym}/download", api_key, api_key_mode),
            metadata=metadata,
            declared_format=declared,
            retry_count=retries,
        )

    records: list[HarvestRecord] = []
    entries = [e for e in listing if isinstance(e, Mapping)]
    with ThreadPoolExecutor(max_workers=max(1, concurrency)) as pool:
        for start in range(0, len(entries), batch_size):
            batch = entries[start : start + batch_size]
            records.extend(pool.map(enrich, batch))
    records.sort(key=lambda r: r.id)
    return records


def lov_list(transport: Transport, *, list_url: str = LOV_LIST_URL) -> list[HarvestRecord]:
    """Inventory of LOV vocabularies with their namespace URIs."""
    listing, _ = _get_json(transport, list_url)
    if not isinstance(listing, list):
        raise MalformedPayloadError("vocabulary listing is not a JSON array")
    records: list[HarvestRecord] = []
    seen: set[str] = set()
    for entry in listing:
        if not isinstance(entry, Mapping):
            continue
        prefix = str(entry.get("prefix", ""))
        if prefix in seen:
            log.warning("lov: duplicate vocabulary prefix %r dropped", prefix)
            continue
        seen.add(prefix)
        records.append(
            HarvestRecord(
                repository="lov",
                id=prefix,
                uri=str(entry.get("uri", "")),
                metadata={"listing": dict(entry)},
            )
        )
    records.sort(key=lambda r: r.id)
    return records


_HTML_MARKERS = (b"<!doctype html", b"<html")


def _sniff_html(body: bytes) -> bool:
    head = body[:1024].lstrip().lower()
    return head.startswith(_HTML_MARKERS)


_EXT_BY_TYPE = {
    "application/rdf+xml": ".rdf",
    "application/xml": ".rdf",
    "text/xml": ".rdf",
    "text/turtle": ".ttl",
    "application/x-turtle": ".ttl",
    "application/n-triples": ".nt",
    "text/plain": ".nt",
}


def fetch_document(
    record: HarvestRecord,
    transport: Transport,
    cache_dir: str | Path,
    *,
    accept: str = RDF_XML_MEDIA_TYPE,
    headers: Mapping[str, str] | None = None,
    max_redirects: int = MAX_REDIRECT_HOPS,
    clock: Callable[[], str] = _now,
) -> HarvestRecord:
    """Resolve a record's URI; every failure becomes a status bucket.

    The negotiation media type travels in the Accept request header.
    Redirects are followed up to ``max_redirects`` hops; an exhausted or
    Location-less redirect keeps the first response's code under the 3xx
    bucket.  2xx bodies are cached under a content-addressed name; HTML
    bodies are cached but excluded as not-RDF.
    """
    if not record.uri:
        return replace(record, status_bucket="code-0", http_code=0,
                       fetched_at=clock(), excluded_reason="no-uri")
    request_headers = {"Accept": accept, **dict(headers or {})}
    url = record.uri
    first_code: int | None = None
    seen_urls = {url}
    response: TransportResponse | None = None
    for _hop in range(max_redirects + 1):
        try:
            response = transport.request("GET", url, request_headers)
        except TransportError as exc:
            log.debug("fetch %s: %s", record.id, exc)
            return replace(record, status_bucket="code-0", http_code=0, fetched_at=clock())
        if first_code is None:
            first_code = response.status
        if 300 <= response.status < 400:
            location = response.header("Location")
            if not location:
                break
            url = urljoin(url, location)
            if url in seen_urls:
                break
            seen_urls.add(url)
            continue
        break
    assert response is not None and first_code is not None
    status = response.status
    if 300 <= status < 400:
        return replace(record, status_bucket="3xx", http_code=first_code, fetched_at=clock())
    bucket = f"{status // 100}xx"
    if not 200 <= status < 300:
        return replace(record, status_bucket=bucket, http_code=status, fetched_at=clock())

    body = response.body
    if not body:
        return replace(
            record, status_bucket="2xx", http_code=status, fetched_at=clock(),
            excluded_reason="empty-body",
        )
    content_type = (response.header("Content-Type") or "").split(";")[0].strip().lower()
    ext = _EXT_BY_TYPE.get(content_type, ".dat")
    digest = hashlib.sha256(body).hexdigest()
    rel_path = Path(record.repository) / record.id / f"{digest}{ext}"
    full_path = Path(cache_dir) / rel_path
    full_path.parent.mkdir(parents=True, exist_ok=True)
    if not full_path.exists():
        full_path.write_bytes(body)
    excluded = "html-not-rdf" if _sniff_html(body) else None
    metadata = dict(record.metadata)
    metadata["content_type"] = content_type
    return replace(
        record, status_bucket="2xx", http_code=status, cached_path=str(rel_path),
        fetched_at=clock(), excluded_reason=excluded, metadata=metadata,
    )


class _HostPolicy:
    """At most N in-flight requests per host plus an inter-request delay."""

    def __init__(self, per_host: int = 4, delay: float = 0.0):
        self.per_host = per_host
        self.delay = delay
        self._lock = threading.Lock()
        self._semaphores: dict[str, threading.Semaphore] = {}
        self._last: dict[str, float] = {}

    def _semaphore(self, host: str) -> threading.Semaphore:
        with self._lock:
            if host not in self._semaphores:
                self._semaphores[host] = threading.Semaphore(self.per_host)
            return self._semaphores[host]

    def run(self, host: str, fn: Callable[[], HarvestRecord]) -> HarvestRecord:
        sem = self._semaphore(host)
        with sem:
            if self.delay > 0:
                with self._lock:
                    wait = self._last.get(host, 0.0) + self.delay - time.monotonic()
                    self._last[host] = max(time.monotonic(), self._last.get(host, 0.0)) + self.delay
                if wait > 0:
                    time.sleep(wait)
            return fn()


def fetch_documents(
    records: Iterable[HarvestRecord],
    transport: Transport,
    cache_dir: str | Path,
    *,
    accept: str = RDF_XML_MEDIA_TYPE,
    headers: Mapping[str, str] | None = None,
    concurrency: int = 4,
    per_host: int = 4,
    delay: float = 0.0,
    clock: Callable[[], str] = _now,
) -> list[HarvestRecord]:
    """Concurrent fetch with per-host politeness; result order is stable."""
    records = list(records)
    policy = _HostPolicy(per_host=per_host, delay=delay)

    def work(record: HarvestRecord) -> HarvestRecord:
        host = urlsplit(record.uri).netloc or "(none)"
        return policy.run(
            host,
            lambda: fetch_document(
                record, transport, cache_dir, accept=accept, headers=headers, clock=clock
            ),
        )

    with ThreadPoolExecutor(max_workers=max(1, concurrency)) as pool:
        return list(pool.map(work, records))


# ---------------------------------------------------------------------------
# Filtering

def format_is_owl(record: HarvestRecord) -> bool:
    return record.declared_format.upper() == "OWL"


def status_is_production(record: HarvestRecord) -> bool:
    return record.metadata.get("status") == "production"


def body_nonempty(record: HarvestRecord) -> bool:
    return record.cached_path is not None and record.excluded_reason != "empty-body"


def bucket_is_2xx(record: HarvestRecord) -> bool:
    return record.status_bucket == "2xx"


def make_body_is_rdf(cache_dir: str | Path) -> Callable[[HarvestRecord], bool]:
    """True when the cached body parses as RDF with at least one triple."""

    def body_is_rdf(record: HarvestRecord) -> bool:
        if record.cached_path is None or record.excluded_reason:
            return False
        path = Path(cache_dir) / record.cached_path
        try:
            data = path.read_bytes()
            fmt = detect_format(
                filename=path.name,
                media_type=record.metadata.get("content_type"),
                head=data[:512],
            )
            return len(parse_document(data, fmt)) > 0
        except OntoAuditError:
            return False
        except OSError:
            return False

    return body_is_rdf


def filter_pipeline(
    records: list[HarvestRecord],
    steps: list[tuple[str, str, Callable[[HarvestRecord], bool]]],
) -> tuple[list[HarvestRecord], list[FilterStep]]:
    """Apply predicates in order, recording in/out counts per step."""
    current = list(records)
    recorded: list[FilterStep] = []
    for name, description, predicate in steps:
        survivors = [r for r in current if predicate(r)]
        recorded.append(FilterStep(name, description, len(current), len(survivors)))
        current = survivors
    return current, recorded


@dataclass(frozen=True)
class PipelineResult:
    records: list[HarvestRecord]  # every listed record, in terminal state
    survivors: list[HarvestRecord]
    steps: list[FilterStep]

    def bucket_histogram(self) -> dict[str, int]:
        hist: dict[str, int] = {}
        for r in self.records:
            if r.status_bucket:
                hist[r.status_bucket] = hist.get(r.status_bucket, 0) + 1
        return dict(sorted(hist.items()))


def run_bioportal_pipeline(
    transport: Transport,
    api_key: str,
    cache_dir: str | Path,
    *,
    base_url: str = BIOPORTAL_BASE,
    api_key_mode: str = "header",
    concurrency: int = 4,
    per_host: int = 4,
    delay: float = 0.0,
    retry_delay: float = 0.5,
    clock: Callable[[], str] = _now,
) -> PipelineResult:
    """List, filter to production OWL, download, drop empty bodies."""
    records = bioportal_list(
        transport, api_key, base_url=base_url, api_key_mode=api_key_mode,
        concurrency=concurrency, retry_delay=retry_delay,
    )
    owl, step_owl = filter_pipeline(
        records, [("format-is-OWL", "ontology language is OWL", format_is_owl)]
    )
    production, step_prod = filter_pipeline(
        owl, [("status-is-production", "latest submission status is production", status_is_production)]
    )
    headers = _bioportal_headers(api_key, api_key_mode)
    fetched = fetch_documents(
        production, transport, cache_dir, headers=headers,
        concurrency=concurrency, per_host=per_host, delay=delay, clock=clock,
    )
    survivors, step_body = filter_pipeline(
        fetched, [("body-nonempty", "downloaded document is non-empty", body_nonempty)]
    )
    fetched_by_id = {r.id: r for r in fetched}
    final_records = [fetched_by_id.get(r.id, r) for r in records]
    return PipelineResult(
        records=final_records,
        survivors=survivors,
        steps=step_owl + step_prod + step_body,
    )


def run_lov_pipeline(
    transport: Transport,
    cache_dir: str | Path,
    *,
    list_url: str = LOV_LIST_URL,
    concurrency: int = 4,
    per_host: int = 4,
    delay: float = 0.0,
    clock: Callable[[], str] = _now,
) -> PipelineResult:
    """List vocabularies, negotiate RDF for each, keep parseable documents."""
    records = lov_list(transport, list_url=list_url)
    fetched = fetch_documents(
        records, transport, cache_dir,
        concurrency=concurrency, per_host=per_host, delay=delay, clock=clock,
    )
    survivors, steps = filter_pipeline(
        fetched,
        [
            ("bucket-is-2xx", "document URI answered with a 2xx status", bucket_is_2xx),
            ("body-is-rdf", "served body parses as non-empty RDF", make_body_is_rdf(cache_dir)),
        ],
    )
    return PipelineResult(records=fetched, survivors=survivors, steps=steps)


def write_ledger(records: Iterable[HarvestRecord], path: str | Path) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", encoding="utf-8") as fh:
        for record in records:
            fh.write(json.dumps(record.to_dict(), sort_keys=True) + "\n")


def read_ledger(path: str | Path) -> list[HarvestRecord]:
    records = []
    with Path(path).open("r", encoding="utf-8") as fh:
        for line in fh:
            line = line.strip()
            if line:
                records.append(HarvestRecord.from_dict(json.loads(line)))
    return records
