from __future__ import annotations

import json
from pathlib import Path

import pytest

from harvest_fixtures import RDF_BODY, RDF_HEADERS
from ontoaudit.cli import main
from ontoaudit.generator import GenerationSpec, emit_ntriples, generate
from ontoaudit.harvester import LOV_LIST_URL, write_exchange

EXAMPLE_SPEC = {
    "variant": "labels-primary-descriptive",
    "languages": ["en", "fr", "de"],
    "class_count": 50,
    "object_property_count": 10,
    "data_property_count": 5,
    "completeness": {"en": 60 / 65, "fr": 50 / 65, "de": 30 / 65},
    "seed": 42,
    "name": "example-audit",
}


def _write_spec(tmp_path: Path, payload) -> Path:
    path = tmp_path / "spec.json"
    path.write_text(json.dumps(payload), "utf-8")
    return path


def test_gen_is_byte_identical_for_equal_seeds(tmp_path, capsys):
    spec = _write_spec(tmp_path, EXAMPLE_SPEC)
    assert main(["gen", str(spec), str(tmp_path / "one")]) == 0
    assert main(["gen", str(spec), str(tmp_path / "two")]) == 0
    capsys.readouterr()
    ones = sorted((tmp_path / "one").iterdir())
    twos = sorted((tmp_path / "two").iterdir())
    assert [p.name for p in ones] == [p.name for p in twos]
    for a, b in zip(ones, twos):
        assert a.read_bytes() == b.read_bytes()


def test_gen_unknown_variant_exits_2(tmp_path, capsys):
    spec = _write_spec(tmp_path, {"variant": "bogus", "languages": ["en"]})
    assert main(["gen", str(spec), str(tmp_path / "out")]) == 2


def test_gen_batch_specs(tmp_path, capsys):
    batch = {
        "corpora": [
            {"variant": "labels-language-independent", "languages": ["en", "nl"], "class_count": 2},
            {"variant": "mapping-ili", "languages": ["en", "fr"], "class_count": 2},
        ]
    }
    spec = _write_spec(tmp_path, batch)
    assert main(["gen", str(spec), str(tmp_path / "out"), "--seed", "7"]) == 0
    out = capsys.readouterr().out
    assert (tmp_path / "out" / "labels-language-independent" / "manifest.json").exists()
    assert (tmp_path / "out" / "mapping-ili" / "manifest.json").exists()
    assert "manifest.json" in out


def test_audit_corpus_directory_reproduces_expected_metrics(tmp_path, capsys):
    spec = _write_spec(tmp_path, EXAMPLE_SPEC)
    main(["gen", str(spec), str(tmp_path / "corpus")])
    capsys.readouterr()
    out_file = tmp_path / "results.jsonl"
    assert main(["audit", str(tmp_path / "corpus"), "--out", str(out_file)]) == 0
    (line,) = [l for l in out_file.read_text().splitlines() if l]
    payload = json.loads(line)
    assert payload["cov"] == 65
    assert round(payload["lcom"]["en"], 1) == 92.3
    assert round(payload["lcom"]["fr"], 1) == 76.9
    assert round(payload["lcom"]["de"], 1) == 46.2
    assert payload["primary_languages"] == ["en"]
    assert payload["multilingual_at"]["0"] is True


def test_audit_single_file_stdout(tmp_path, capsys):
    corpus = generate(GenerationSpec(variant="labels-language-independent",
                                     languages=("en", "nl"), class_count=3, seed=5))
    emit_ntriples(corpus, tmp_path / "c")
    nt_file = tmp_path / "c" / "labels-language-independent.nt"
    assert main(["audit", str(nt_file)]) == 0
    payload = json.loads(capsys.readouterr().out.strip())
    assert payload["cov"] == 3
    assert payload["multilingual_at"]["0"] is True


def test_audit_empty_directory_exits_1(tmp_path, capsys):
    empty = tmp_path / "empty"
    empty.mkdir()
    assert main(["audit", str(empty)]) == 1


def test_audit_records_per_file_failures_without_aborting(tmp_path, capsys):
    good = tmp_path / "good.nt"
    good.write_text('<http://x/s> <http://www.w3.org/2000/01/rdf-schema#subClassOf> <http://www.w3.org/2002/07/owl#Thing> .\n')
    bad = tmp_path / "bad.nt"
    bad.write_text("not a triple at all\n")
    out_file = tmp_path / "results.jsonl"
    assert main(["audit", str(good), str(bad), "--out", str(out_file)]) == 0
    lines = [json.loads(l) for l in out_file.read_text().splitlines()]
    assert len(lines) == 2
    by_id = {p["id"]: p for p in lines}
    assert "error" in by_id["bad"] and "cov" in by_id["good"]


def test_detect_prints_approach_evidence(tmp_path, capsys):
    corpus = generate(GenerationSpec(variant="mapping-ili", languages=("en", "fr"),
                                     class_count=3, seed=5))
    emit_ntriples(corpus, tmp_path / "c")
    assert main(["detect", str(tmp_path / "c")]) == 0
    payload = json.loads(capsys.readouterr().out.strip())
    assert payload["family"] == "mapping-model"
    assert payload["variant"] == "mapping-ili"


def test_report_pipeline_and_no_timestamp_determinism(tmp_path, capsys):
    spec = _write_spec(tmp_path, EXAMPLE_SPEC)
    main(["gen", str(spec), str(tmp_path / "corpus")])
    results = tmp_path / "results.jsonl"
    main(["audit", str(tmp_path / "corpus"), "--out", str(results), "--dataset", "demo"])
    capsys.readouterr()
    out1 = tmp_path / "r1.json"
    out2 = tmp_path / "r2.json"
    assert main(["report", str(results), "--kind", "completeness-matrix", "--format", "json",
                 "--no-timestamp", "--out", str(out1), "--threshold", "0"]) == 0
    assert main(["report", str(results), "--kind", "completeness-matrix", "--format", "json",
                 "--no-timestamp", "--out", str(out2), "--threshold", "0"]) == 0
    assert out1.read_bytes() == out2.read_bytes()
    row = json.loads(out1.read_text())["rows"][0]
    assert row["cov"] == 65 and row["en"] == 92.3 and row["de"] == 46.2


def test_report_over_empty_results_exits_2(tmp_path, capsys):
    results = tmp_path / "none.jsonl"
    results.write_text("")
    assert main(["report", str(results), "--kind", "dataset-comparison"]) == 2


def test_harvest_bioportal_without_key_exits_2(tmp_path, monkeypatch, capsys):
    monkeypatch.delenv("ONTOAUDIT_BIOPORTAL_APIKEY", raising=False)
    exchanges = tmp_path / "ex"
    exchanges.mkdir()
    code = main(["harvest", "bioportal", "--offline", "--exchanges", str(exchanges),
                 "--cache-dir", str(tmp_path / "cache")])
    assert code == 2


def test_harvest_lov_empty_fixture_dir_exits_2(tmp_path, capsys):
    exchanges = tmp_path / "ex"
    exchanges.mkdir()
    code = main(["harvest", "lov", "--offline", "--exchanges", str(exchanges),
                 "--cache-dir", str(tmp_path / "cache")])
    assert code == 2


def _small_lov_fixture(exchanges: Path, count: int = 6) -> None:
    listing = [
        {"prefix": f"v{i}", "uri": f"http://host{i % 2}.example/v{i}"} for i in range(count)
    ]
    write_exchange(exchanges, LOV_LIST_URL, body=json.dumps(listing))
    for i in range(count):
        uri = f"http://host{i % 2}.example/v{i}"
        if i == 0:
            write_exchange(exchanges, uri, status=404)
        else:
            write_exchange(exchanges, uri, body=RDF_BODY.format(ns=uri + "#"),
                           headers=RDF_HEADERS)


def test_harvest_audit_report_stages_compose(tmp_path, capsys, no_network):
    exchanges = tmp_path / "ex"
    _small_lov_fixture(exchanges)
    cache = tmp_path / "cache"
    ledger = tmp_path / "lov.jsonl"
    assert main(["harvest", "lov", "--offline", "--exchanges", str(exchanges),
                 "--cache-dir", str(cache), "--ledger", str(ledger)]) == 0
    summary = json.loads(capsys.readouterr().out)
    assert summary["pipeline"][0]["in"] == 6 and summary["pipeline"][0]["out"] == 5
    results = tmp_path / "results.jsonl"
    assert main(["audit", str(ledger), "--cache-dir", str(cache),
                 "--out", str(results)]) == 0
    capsys.readouterr()
    assert main(["report", str(results), "--kind", "dataset-comparison",
                 "--format", "csv", "--threshold", "0"]) == 0
    table = capsys.readouterr().out
    assert "lov" in table and "5" in table


def test_harvest_lov_full_fixture_writes_773_record_ledger(tmp_path, capsys, no_network):
    from harvest_fixtures import build_lov_exchanges
    from ontoaudit.harvester import read_ledger

    exchanges = build_lov_exchanges(tmp_path / "ex")
    ledger = tmp_path / "lov.jsonl"
    assert main(["harvest", "lov", "--offline", "--exchanges", str(exchanges),
                 "--cache-dir", str(tmp_path / "cache"), "--ledger", str(ledger)]) == 0
    summary = json.loads(capsys.readouterr().out)
    assert [(s["in"], s["out"]) for s in summary["pipeline"]] == [(773, 523), (523, 521)]
    assert summary["status_buckets"] == {"2xx": 523, "3xx": 23, "4xx": 125,
                                         "5xx": 27, "code-0": 75}
    assert len(read_ledger(ledger)) == 773


def test_detect_with_custom_watchlist(tmp_path, capsys):
    watch = tmp_path / "watch.txt"
    watch.write_text("mylex http://my.example/lex#\n")
    doc = tmp_path / "custom.ttl"
    doc.write_text(
        "@prefix rdfs: <http://www.w3.org/2000/01/rdf-schema#> .\n"
        "@prefix owl: <http://www.w3.org/2002/07/owl#> .\n"
        "@prefix mylex: <http://my.example/lex#> .\n"
        "<http://x/A> rdfs:subClassOf owl:Thing ;\n"
        "    rdfs:label \"a\"@en ;\n"
        "    mylex:denotedBy <http://my.example/lex#entry1> .\n"
    )
    assert main(["detect", str(doc), "--watchlist", str(watch)]) == 0
    payload = json.loads(capsys.readouterr().out.strip())
    assert payload["family"] == "linguistic-model"
    assert "http://my.example/lex#" in payload["matched_namespaces"]


def test_config_file_values_and_flag_override(tmp_path, capsys):
    cfg = tmp_path / "ontoaudit.conf"
    cfg.write_text("threshold=0\nconcurrency=2\n")
    corpus = generate(GenerationSpec(variant="labels-language-independent",
                                     languages=("en", "nl"), class_count=3, seed=5))
    emit_ntriples(corpus, tmp_path / "c")
    results = tmp_path / "results.jsonl"
    main(["audit", str(tmp_path / "c"), "--config", str(cfg), "--out", str(results),
          "--dataset", "d"])
    capsys.readouterr()
    assert main(["report", str(results), "--config", str(cfg), "--kind",
                 "dataset-comparison", "--format", "json", "--no-timestamp"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["threshold"] == 0.0  # config file applied
