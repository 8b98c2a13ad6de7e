import numpy as np
import pytest

from conftest import random_graph
from ddikg.graph import KnowledgeGraph, Triple
from ddikg.kge import (
    KgeConfig,
    KgeParams,
    format_report,
    init_params,
    rank_triples,
    write_report_kv,
)


def line_graph():
    """Five drugs on a line; one relation meaning "next"."""
    entities = {f"d{i}": "drug" for i in range(5)}
    relations = {"next": ("drug", "drug")}
    triples = [Triple(f"d{i}", "next", f"d{i+1}") for i in range(4)]
    return KnowledgeGraph(entities, relations, triples)


def planted_params(graph, dim=4):
    """TransE params that place each entity at a known point so that every
    training triple scores strictly best for its true head and tail."""
    entities = np.zeros((graph.n_entities, dim))
    for i in range(graph.n_entities):
        entities[i, 0] = float(i)
        entities[i, 1] = 1.0
    relations = np.zeros((graph.n_relations, dim))
    relations[0, 0] = 1.0
    return KgeParams(entities=entities, relations=relations)


class TestRankTriples:
    def test_perfect_model_gives_mrr_one(self):
        g = line_graph()
        params = planted_params(g)
        report = rank_triples(params, "transe", g, g, mode="filtered")
        assert report.mrr == pytest.approx(1.0)
        assert report.hits_at[1] == pytest.approx(1.0)
        assert report.n_queries == 8

    def test_all_tied_gives_mean_rank(self):
        g = line_graph()
        params = KgeParams(
            entities=np.zeros((5, 4)), relations=np.zeros((1, 4))
        )  # every candidate scores 0
        report = rank_triples(params, "transe", g, g, mode="raw")
        # 5 tied candidates -> rank 3 -> reciprocal 1/3
        assert report.mrr == pytest.approx(1.0 / 3.0)
        assert report.hits_at[1] == 0.0
        assert report.hits_at[3] == 1.0

    def test_empty_test_set(self):
        g = line_graph()
        empty = g.with_triples([])
        params = planted_params(g)
        report = rank_triples(params, "transe", empty, g)
        assert report.n_queries == 0 and report.mrr == 0.0

    def test_filtered_rank_not_worse_than_raw(self):
        g = random_graph(n_drugs=8, n_targets=4, n_triples=30, seed=6)
        params = init_params(KgeConfig(model="distmult", dim=8), g, seed=0)
        raw = rank_triples(params, "distmult", g, g, mode="raw")
        filtered = rank_triples(params, "distmult", g, g, mode="filtered")
        assert filtered.mrr >= raw.mrr - 1e-12
        for k in (1, 3, 10):
            assert filtered.hits_at[k] >= raw.hits_at[k] - 1e-12

    def test_invariant_under_test_order_permutation(self):
        g = random_graph(n_drugs=8, n_targets=4, n_triples=30, seed=6)
        params = init_params(KgeConfig(model="transe", dim=8), g, seed=1)
        shuffled = g.with_triples(list(reversed(g.triples)))
        a = rank_triples(params, "transe", g, g)
        b = rank_triples(params, "transe", shuffled, g)
        assert a.mrr == pytest.approx(b.mrr, abs=1e-12)
        assert a.hits_at == b.hits_at

    def test_hits_monotone_in_k(self):
        g = random_graph(n_drugs=8, n_targets=4, n_triples=30, seed=8)
        params = init_params(KgeConfig(model="rescal", dim=6), g, seed=2)
        report = rank_triples(params, "rescal", g, g)
        assert report.hits_at[1] <= report.hits_at[3] <= report.hits_at[10]

    def test_bilinear_orientation_respected(self):
        # DistMult: higher score must rank first
        g = line_graph()
        entities = np.zeros((5, 2))
        entities[1] = (1.0, 0.0)  # true tail of (d0, next, d1)
        entities[0] = (1.0, 0.0)
        relations = np.array([[1.0, 0.0]])
        params = KgeParams(entities=entities, relations=relations)
        test = g.with_triples([Triple("d0", "next", "d1")])
        report = rank_triples(params, "distmult", test, g, mode="raw")
        # both queries: d0 and d1 tie at score 1, the rest at 0 -> rank 1.5;
        # had lower scores ranked first, the true entities would rank 4
        assert report.mrr == pytest.approx(1 / 1.5)


class TestReportOutput:
    def test_format_has_all_fields(self):
        g = line_graph()
        report = rank_triples(planted_params(g), "transe", g, g)
        text = format_report(report)
        for token in ("mrr", "hits@1", "hits@10", "n_queries"):
            assert token in text

    def test_kv_file_round_trip(self, tmp_path):
        g = line_graph()
        report = rank_triples(planted_params(g), "transe", g, g)
        path = tmp_path / "report.tsv"
        write_report_kv(report, path)
        values = dict(
            line.split("\t") for line in path.read_text().strip().split("\n")
        )
        assert float(values["mrr"]) == report.mrr
        assert int(values["n_queries"]) == report.n_queries
