from __future__ import annotations

import json

import pytest
from hypothesis import given
from hypothesis import strategies as st

from kgsemcom.corpus import (
    Corpus,
    CorpusError,
    load_corpus,
    normalize_label,
    save_corpus,
)


class TestNormalizeLabel:
    def test_underscores_become_single_spaces(self):
        assert normalize_label("Aarhus_Airport") == "Aarhus Airport"

    def test_whitespace_runs_collapse(self):
        assert normalize_label("  Aarhus \t Airport\n") == "Aarhus Airport"

    def test_case_preserved(self):
        assert normalize_label("AArhus_aIRPORT") == "AArhus aIRPORT"

    @given(st.text(max_size=60))
    def test_idempotent(self, raw):
        once = normalize_label(raw)
        assert normalize_label(once) == once

    @given(st.text(alphabet="ab _\t", max_size=30))
    def test_never_leaves_runs_or_underscores(self, raw):
        out = normalize_label(raw)
        assert "_" not in out and "  " not in out
        assert out == out.strip()


def _write_lines(path, objs):
    with open(path, "w", encoding="utf-8") as fh:
        for obj in objs:
            fh.write(json.dumps(obj) + "\n")


def _sample_obj(i=0, **over):
    obj = {
        "id": f"x{i}",
        "triples": [["Aarhus_Airport", "runway_length", "2702.0"]],
        "texts": ["The runway length of Aarhus Airport is 2702.0."],
    }
    obj.update(over)
    return obj


class TestLoadCorpus:
    def test_loads_and_normalizes(self, tmp_path):
        path = tmp_path / "c.jsonl"
        _write_lines(path, [_sample_obj()])
        corpus = load_corpus(path, "test")
        (sample,) = corpus.samples
        assert sample.triples[0].head == "Aarhus Airport"
        assert sample.triples[0].relation == "runway length"
        assert corpus.split == "test"

    def test_sample_count_large_file(self, tmp_path):
        path = tmp_path / "big.jsonl"
        _write_lines(path, [_sample_obj(i) for i in range(4464)])
        assert len(load_corpus(path, "test").samples) == 4464

    def test_invalid_json_names_line(self, tmp_path):
        path = tmp_path / "c.jsonl"
        path.write_text(json.dumps(_sample_obj()) + "\n{oops\n", encoding="utf-8")
        with pytest.raises(CorpusError, match="line 2"):
            load_corpus(path, "test")

    def test_duplicate_id_rejected(self, tmp_path):
        path = tmp_path / "c.jsonl"
        _write_lines(path, [_sample_obj(), _sample_obj()])
        with pytest.raises(CorpusError, match="duplicate sample id"):
            load_corpus(path, "test")

    def test_empty_label_after_normalization_rejected(self, tmp_path):
        path = tmp_path / "c.jsonl"
        _write_lines(path, [_sample_obj(triples=[["_ _", "r", "t"]])])
        with pytest.raises(CorpusError, match="empty label"):
            load_corpus(path, "test")

    def test_missing_texts_rejected(self, tmp_path):
        path = tmp_path / "c.jsonl"
        _write_lines(path, [_sample_obj(texts=[])])
        with pytest.raises(CorpusError, match="texts"):
            load_corpus(path, "test")

    def test_malformed_triple_rejected(self, tmp_path):
        path = tmp_path / "c.jsonl"
        _write_lines(path, [_sample_obj(triples=[["h", "r"]])])
        with pytest.raises(CorpusError, match="triple 0"):
            load_corpus(path, "test")

    def test_empty_file_rejected(self, tmp_path):
        path = tmp_path / "c.jsonl"
        path.write_text("", encoding="utf-8")
        with pytest.raises(CorpusError, match="empty"):
            load_corpus(path, "test")

    def test_unknown_split_rejected(self, tmp_path):
        path = tmp_path / "c.jsonl"
        _write_lines(path, [_sample_obj()])
        with pytest.raises(CorpusError, match="split"):
            load_corpus(path, "dev")

    def test_blank_lines_skipped(self, tmp_path):
        path = tmp_path / "c.jsonl"
        path.write_text(json.dumps(_sample_obj()) + "\n\n", encoding="utf-8")
        assert len(load_corpus(path, "test").samples) == 1

    def test_round_trip_through_save(self, tmp_path, tiny_corpus):
        path = tmp_path / "out.jsonl"
        save_corpus(tiny_corpus, path)
        again = load_corpus(path, "test")
        assert again == tiny_corpus


def test_synthetic_corpora_shape(train_corpus, test_corpus):
    assert train_corpus.split == "train" and test_corpus.split == "test"
    assert len(test_corpus.samples) >= 200
    ids = [s.id for s in test_corpus.samples]
    assert len(set(ids)) == len(ids)
    assert all(s.texts for s in test_corpus.samples)
    assert all(text.isascii() for text in test_corpus.texts())


def test_synthetic_generation_is_deterministic():
    from kgsemcom.synthdata import generate_corpora

    a = generate_corpora(seed=11, train_samples=40, test_samples=40)
    b = generate_corpora(seed=11, train_samples=40, test_samples=40)
    assert a == b
