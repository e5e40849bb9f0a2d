from __future__ import annotations

import pytest

from ontoaudit.config import (
    ENV_CACHE_DIR,
    build_config,
    load_config_file,
    load_watchlist,
    parse_label_properties,
)
from ontoaudit.errors import ConfigError
from ontoaudit.vocab import RDFS_LABEL, SKOS_PREFLABEL


def test_defaults():
    config = build_config()
    assert config.threshold == 5.0
    assert config.concurrency == 4
    assert config.strict_parsing is True
    assert RDFS_LABEL in config.label_properties


def test_env_cache_dir(monkeypatch, tmp_path):
    monkeypatch.setenv(ENV_CACHE_DIR, str(tmp_path / "cachehome"))
    config = build_config()
    assert config.cache_dir == tmp_path / "cachehome"


def test_config_file_and_flag_precedence(tmp_path):
    cfg = tmp_path / "run.conf"
    cfg.write_text("# comment\nthreshold=0\ntie-epsilon=2.5\nconcurrency=8\n")
    from_file = build_config(config_file=str(cfg))
    assert from_file.threshold == 0.0 and from_file.tie_epsilon == 2.5
    overridden = build_config(config_file=str(cfg), threshold=5.0)
    assert overridden.threshold == 5.0  # flag wins
    assert overridden.concurrency == 8


def test_config_file_syntax_error(tmp_path):
    cfg = tmp_path / "bad.conf"
    cfg.write_text("threshold 5\n")
    with pytest.raises(ConfigError):
        load_config_file(cfg)


def test_threshold_and_concurrency_validation():
    with pytest.raises(ConfigError):
        build_config(threshold=150.0)
    with pytest.raises(ConfigError):
        build_config(concurrency=0)


def test_label_property_shorthand():
    props = parse_label_properties("rdfs:label, skos:prefLabel,http://example.org/p")
    assert props == (RDFS_LABEL, SKOS_PREFLABEL, "http://example.org/p")
    with pytest.raises(ConfigError):
        parse_label_properties(" , ")


def test_watchlist_parsing(tmp_path):
    path = tmp_path / "watch.txt"
    path.write_text("# linguistic models\nontolex http://www.w3.org/ns/lemon/ontolex#\nmylex=http://my.example/lex#\n")
    namespaces = load_watchlist(path)
    assert namespaces == {
        "ontolex": "http://www.w3.org/ns/lemon/ontolex#",
        "mylex": "http://my.example/lex#",
    }
    empty = tmp_path / "empty.txt"
    empty.write_text("# nothing\n")
    with pytest.raises(ConfigError):
        load_watchlist(empty)
