import numpy as np
import pytest

from conftest import random_graph
from ddikg.errors import DdiKgError
from ddikg.kge import (
    DrugEmbedding,
    KgeConfig,
    export_embeddings,
    init_params,
    load_embeddings,
    load_kge_model,
    save_kge_model,
    train,
)


class TestEmbeddingsTsv:
    def test_empty_export(self, tmp_path):
        path = tmp_path / "e.tsv"
        assert export_embeddings([], path) == 0
        assert path.read_text() == ""

    def test_shape(self, tmp_path):
        rng = np.random.default_rng(0)
        embs = [DrugEmbedding(f"d{i}", rng.normal(size=4)) for i in range(3)]
        path = tmp_path / "e.tsv"
        assert export_embeddings(embs, path) == 3
        lines = path.read_text().strip().split("\n")
        assert len(lines) == 3
        assert all(len(line.split()) == 5 for line in lines)

    def test_round_trip_exact(self, tmp_path):
        rng = np.random.default_rng(1)
        embs = [DrugEmbedding(f"d{i}", rng.normal(size=6)) for i in range(4)]
        path = tmp_path / "e.tsv"
        export_embeddings(embs, path)
        loaded = load_embeddings(path)
        for emb in embs:
            np.testing.assert_array_equal(loaded[emb.entity], emb.vector)

    def test_write_read_write_byte_stable(self, tmp_path):
        rng = np.random.default_rng(2)
        embs = [DrugEmbedding(f"d{i}", rng.normal(size=3)) for i in range(5)]
        p1, p2 = tmp_path / "a.tsv", tmp_path / "b.tsv"
        export_embeddings(embs, p1)
        loaded = load_embeddings(p1)
        export_embeddings(
            [DrugEmbedding(k, v) for k, v in loaded.items()], p2
        )
        assert p1.read_bytes() == p2.read_bytes()

    def test_inconsistent_dims_rejected(self, tmp_path):
        embs = [DrugEmbedding("a", np.zeros(3)), DrugEmbedding("b", np.zeros(4))]
        with pytest.raises(DdiKgError, match="dimension"):
            export_embeddings(embs, tmp_path / "e.tsv")


class TestModelFiles:
    @pytest.mark.parametrize("model", ["transe", "transr", "rescal", "distmult"])
    def test_save_load_round_trip(self, tmp_path, model):
        g = random_graph(seed=4)
        config = KgeConfig(model=model, dim=6, epochs=2, learning_rate=0.05, seed=0)
        params = train(g, config)
        path = tmp_path / "model.npz"
        save_kge_model(path, params, model, config.norm, g)
        saved = load_kge_model(path)
        assert saved.model == model
        assert saved.norm == config.norm
        np.testing.assert_array_equal(saved.params.entities, params.entities)
        assert list(saved.entities) == list(g.entity_ids)
        assert saved.relation_signatures == g.relation_signatures

    def test_save_is_byte_deterministic(self, tmp_path):
        g = random_graph(seed=4)
        params = init_params(KgeConfig(model="transe", dim=4), g, seed=0)
        p1, p2 = tmp_path / "a.npz", tmp_path / "b.npz"
        save_kge_model(p1, params, "transe", "l2", g)
        save_kge_model(p2, params, "transe", "l2", g)
        assert p1.read_bytes() == p2.read_bytes()

    def test_reject_foreign_file(self, tmp_path):
        path = tmp_path / "x.npz"
        np.savez(path, a=np.zeros(3))
        with pytest.raises(DdiKgError, match="not a ddikg model"):
            load_kge_model(path)
