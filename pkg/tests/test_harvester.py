from __future__ import annotations

import json
import threading
import time
from pathlib import Path

import pytest

from harvest_fixtures import RDF_BODY, RDF_HEADERS, build_lov_exchanges, lov_vocab_uri
from ontoaudit.errors import TransportError
from ontoaudit.harvester import (
    AuthError,
    HarvestRecord,
    OfflineTransport,
    bioportal_list,
    body_nonempty,
    bucket_is_2xx,
    fetch_document,
    fetch_documents,
    filter_pipeline,
    format_is_owl,
    make_body_is_rdf,
    read_ledger,
    run_lov_pipeline,
    write_exchange,
    write_ledger,
)

BASE = "https://data.bioontology.org"


def _record(uri: str, id: str = "X") -> HarvestRecord:
    return HarvestRecord(repository="lov", id=id, uri=uri)


def test_offline_transport_replays_and_fails_on_unknown(tmp_path):
    write_exchange(tmp_path, "http://x.example/doc", body="hello", status=200)
    transport = OfflineTransport(tmp_path)
    resp = transport.request("GET", "http://x.example/doc")
    assert resp.status == 200 and resp.body == b"hello"
    with pytest.raises(TransportError):
        transport.request("GET", "http://x.example/missing")


def test_fetch_buckets_and_cache(tmp_path, no_network):
    exchanges = tmp_path / "ex"
    write_exchange(exchanges, "http://a.example/ok", body=RDF_BODY.format(ns="http://a.example/ns#"),
                   headers=RDF_HEADERS)
    write_exchange(exchanges, "http://a.example/gone", status=404)
    write_exchange(exchanges, "http://a.example/boom", status=503)
    write_exchange(exchanges, "http://a.example/down", error="dns failure")
    transport = OfflineTransport(exchanges)
    cache = tmp_path / "cache"

    ok = fetch_document(_record("http://a.example/ok"), transport, cache)
    assert ok.status_bucket == "2xx" and ok.cached_path
    assert (cache / ok.cached_path).exists()
    assert ok.cached_path.endswith(".rdf")

    gone = fetch_document(_record("http://a.example/gone"), transport, cache)
    assert gone.status_bucket == "4xx" and gone.cached_path is None

    boom = fetch_document(_record("http://a.example/boom"), transport, cache)
    assert boom.status_bucket == "5xx"

    down = fetch_document(_record("http://a.example/down"), transport, cache)
    assert down.status_bucket == "code-0" and down.http_code == 0


def test_fetch_follows_redirects_and_records_terminal_loops(tmp_path):
    exchanges = tmp_path / "ex"
    write_exchange(exchanges, "http://r.example/start", status=302,
                   headers={"Location": "http://r.example/mid"})
    write_exchange(exchanges, "http://r.example/mid", status=301,
                   headers={"Location": "/final"})
    write_exchange(exchanges, "http://r.example/final",
                   body=RDF_BODY.format(ns="http://r.example/ns#"), headers=RDF_HEADERS)
    write_exchange(exchanges, "http://r.example/loop", status=301,
                   headers={"Location": "http://r.example/loop"})
    transport = OfflineTransport(exchanges)

    followed = fetch_document(_record("http://r.example/start"), transport, tmp_path / "c")
    assert followed.status_bucket == "2xx" and followed.cached_path

    loop = fetch_document(_record("http://r.example/loop"), transport, tmp_path / "c")
    assert loop.status_bucket == "3xx" and loop.http_code == 301


def test_fetch_empty_and_html_bodies_are_excluded(tmp_path):
    exchanges = tmp_path / "ex"
    write_exchange(exchanges, "http://b.example/empty", body="")
    write_exchange(exchanges, "http://b.example/html",
                   body="<!DOCTYPE html><html><body>docs</body></html>",
                   headers={"Content-Type": "text/html"})
    transport = OfflineTransport(exchanges)
    empty = fetch_document(_record("http://b.example/empty"), transport, tmp_path / "c")
    assert empty.status_bucket == "2xx" and empty.excluded_reason == "empty-body"
    assert empty.cached_path is None
    html = fetch_document(_record("http://b.example/html"), transport, tmp_path / "c")
    assert html.excluded_reason == "html-not-rdf"
    assert not body_nonempty(empty)


def test_cached_path_invariant(tmp_path):
    exchanges = tmp_path / "ex"
    write_exchange(exchanges, "http://c.example/ok", body="x y z")
    write_exchange(exchanges, "http://c.example/gone", status=410)
    transport = OfflineTransport(exchanges)
    for uri in ("http://c.example/ok", "http://c.example/gone"):
        record = fetch_document(_record(uri), transport, tmp_path / "c")
        assert (record.cached_path is not None) == (
            record.status_bucket == "2xx" and record.excluded_reason != "empty-body"
        )


def test_bioportal_list_requires_key_and_retries_on_429(tmp_path):
    exchanges = tmp_path / "ex"
    listing = [{"acronym": "ONLY", "name": "Only"}]
    write_exchange(exchanges, f"{BASE}/ontologies", body=json.dumps(listing))
    write_exchange(exchanges, f"{BASE}/categories", body=json.dumps([]))
    write_exchange(
        exchanges, f"{BASE}/ontologies/ONLY/latest_submission",
        responses=[
            {"status": 429},
            {"status": 200, "body": json.dumps({"hasOntologyLanguage": "OWL", "status": "production"})},
        ],
    )
    write_exchange(exchanges, f"{BASE}/ontologies/ONLY/categories", body=json.dumps([]))
    transport = OfflineTransport(exchanges)
    with pytest.raises(AuthError):
        bioportal_list(transport, "")
    records = bioportal_list(transport, "k", retry_delay=0.0)
    assert len(records) == 1
    assert records[0].declared_format == "OWL"
    assert records[0].retry_count == 1


def test_bioportal_auth_error_bubbles(tmp_path):
    exchanges = tmp_path / "ex"
    write_exchange(exchanges, f"{BASE}/ontologies", status=401)
    with pytest.raises(AuthError):
        bioportal_list(OfflineTransport(exchanges), "bad-key")


def test_filter_pipeline_counts_monotone(tmp_path):
    records = [
        HarvestRecord(repository="bioportal", id=f"r{i}", declared_format="OWL" if i % 2 else "OBO")
        for i in range(10)
    ]
    survivors, steps = filter_pipeline(
        records, [("owl", "is OWL", format_is_owl), ("none", "nothing", lambda r: False)]
    )
    assert [s.in_count for s in steps] == [10, 5]
    assert [s.out_count for s in steps] == [5, 0]
    assert survivors == []
    for step in steps:
        assert step.out_count <= step.in_count


def test_lov_pipeline_is_deterministic_across_reruns(tmp_path, no_network):
    exchanges = build_lov_exchanges(tmp_path / "ex")
    cache = tmp_path / "cache"
    first = run_lov_pipeline(OfflineTransport(exchanges), cache)
    second = run_lov_pipeline(OfflineTransport(exchanges), cache)
    strip = lambda rs: [
        (r.id, r.status_bucket, r.http_code, r.cached_path, r.excluded_reason) for r in rs
    ]
    assert strip(first.records) == strip(second.records)
    assert first.bucket_histogram() == second.bucket_histogram()


def test_politeness_limits_concurrent_requests_per_host(tmp_path):
    class SlowTransport:
        def __init__(self):
            self.lock = threading.Lock()
            self.inflight = 0
            self.max_inflight = 0

        def request(self, method, url, headers=None):
            with self.lock:
                self.inflight += 1
                self.max_inflight = max(self.max_inflight, self.inflight)
            time.sleep(0.005)
            with self.lock:
                self.inflight -= 1
            from ontoaudit.harvester import TransportResponse
            return TransportResponse(200, {"Content-Type": "text/plain"}, b"data")

    transport = SlowTransport()
    records = [_record(f"http://one.example/doc{i}", id=f"v{i}") for i in range(24)]
    fetch_documents(records, transport, tmp_path / "c", concurrency=12, per_host=4)
    assert 2 <= transport.max_inflight <= 4


def test_inter_request_delay_visible_in_exchange_timestamps(tmp_path):
    exchanges = tmp_path / "ex"
    for i in range(5):
        write_exchange(exchanges, f"http://slow.example/d{i}", body="x")
    transport = OfflineTransport(exchanges)
    records = [_record(f"http://slow.example/d{i}", id=f"v{i}") for i in range(5)]
    fetch_documents(records, transport, tmp_path / "c", concurrency=4, per_host=4, delay=0.02)
    starts = sorted(start for host, start, _ in transport.request_log if host == "slow.example")
    gaps = [b - a for a, b in zip(starts, starts[1:])]
    assert all(gap >= 0.015 for gap in gaps), gaps


def test_bioportal_query_mode_puts_key_in_url(tmp_path):
    listing = [{"acronym": "Q", "name": "Q"}]
    exchanges = tmp_path / "ex"
    write_exchange(exchanges, f"{BASE}/ontologies?apikey=sekrit", body=json.dumps(listing))
    write_exchange(exchanges, f"{BASE}/categories?apikey=sekrit", body=json.dumps([]))
    write_exchange(exchanges, f"{BASE}/ontologies/Q/latest_submission?apikey=sekrit",
                   body=json.dumps({"hasOntologyLanguage": "OWL", "status": "production"}))
    write_exchange(exchanges, f"{BASE}/ontologies/Q/categories?apikey=sekrit",
                   body=json.dumps([]))
    records = bioportal_list(OfflineTransport(exchanges), "sekrit",
                             api_key_mode="query", retry_delay=0.0)
    assert len(records) == 1 and records[0].declared_format == "OWL"
    assert "apikey=sekrit" in records[0].uri


def test_ledger_roundtrip(tmp_path):
    records = [
        HarvestRecord(repository="lov", id="a", uri="http://x/a", status_bucket="2xx",
                      http_code=200, cached_path="lov/a/abc.rdf", metadata={"k": "v"}),
        HarvestRecord(repository="lov", id="b", uri="http://x/b", status_bucket="4xx",
                      http_code=404),
    ]
    path = tmp_path / "ledger.jsonl"
    write_ledger(records, path)
    assert read_ledger(path) == records


def test_body_is_rdf_rejects_namespace_only_documents(tmp_path, no_network):
    exchanges = build_lov_exchanges(tmp_path / "ex")
    transport = OfflineTransport(exchanges)
    cache = tmp_path / "cache"
    rdf_ok = fetch_document(_record(lov_vocab_uri(300), id="v300"), transport, cache)
    ns_only = fetch_document(_record(lov_vocab_uri(250), id="v250"), transport, cache)
    predicate = make_body_is_rdf(cache)
    assert predicate(rdf_ok) is True
    assert bucket_is_2xx(ns_only) and predicate(ns_only) is False
