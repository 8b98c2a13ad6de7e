import pathlib

import numpy as np
import pytest

from ddikg.graph import KnowledgeGraph, Triple

FIXTURES = pathlib.Path(__file__).parent / "fixtures"


@pytest.fixture
def fixtures_dir() -> pathlib.Path:
    return FIXTURES


@pytest.fixture
def tiny_graph() -> KnowledgeGraph:
    """Two drugs, one target, three edges across two relations."""
    entities = {"d1": "drug", "d2": "drug", "t1": "target"}
    relations = {"binds": ("drug", "target"), "interacts": ("drug", "drug")}
    triples = [
        Triple("d1", "binds", "t1"),
        Triple("d2", "binds", "t1"),
        Triple("d1", "interacts", "d2"),
    ]
    return KnowledgeGraph(entities, relations, triples)


def random_graph(n_drugs=6, n_targets=3, n_triples=30, seed=0) -> KnowledgeGraph:
    """Random well-typed graph used by scoring and training tests."""
    rng = np.random.default_rng(seed)
    entities = {f"d{i}": "drug" for i in range(n_drugs)}
    entities.update({f"t{i}": "target" for i in range(n_targets)})
    relations = {"interacts": ("drug", "drug"), "binds": ("drug", "target")}
    triples = set()
    while len(triples) < n_triples:
        if rng.random() < 0.5:
            triples.add(
                Triple(f"d{rng.integers(n_drugs)}", "interacts", f"d{rng.integers(n_drugs)}")
            )
        else:
            triples.add(
                Triple(f"d{rng.integers(n_drugs)}", "binds", f"t{rng.integers(n_targets)}")
            )
    return KnowledgeGraph(entities, relations, sorted(triples, key=str))


def pytest_runtest_logreport(report):
    """One visible PASS/FAIL line per acceptance criterion."""
    if report.when != "call" or "test_acceptance" not in report.nodeid:
        return
    name = report.nodeid.split("::")[-1]
    outcome = "PASS" if report.passed else "FAIL"
    print(f"\n[acceptance] {name}: {outcome}", flush=True)
