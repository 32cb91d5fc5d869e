import pytest

from src.algebra import algebra_am
from src.corpus import (
    NAMED_FILES,
    atlas_graphs,
    complete_graph,
    corpus_graphs,
    cycle_graph,
    edgeless_graph,
    named_graph,
    star_graph,
)
from src.errors import GraphError
from src.graph import is_connected
from src.verify import check_paranoid, run_suite

SLOW = {"K5", "C8"}


def _failures(results):
    return [(r.name, r.witness) for r in results if not r]


def test_atlas_holds_every_connected_graph_up_to_five_vertices():
    graphs = atlas_graphs(5)
    # 1 + 1 + 2 + 6 + 21 connected graphs on 1..5 vertices
    assert len(graphs) == 31
    assert all(is_connected(g) for _, g in graphs)


def test_named_graphs():
    assert named_graph("K5") == complete_graph(5)
    assert named_graph("C6").n_edges == 6
    assert named_graph("C8") == cycle_graph(8)
    bowtie = named_graph("bowtie")
    assert (bowtie.n_vertices, bowtie.n_edges) == (5, 6)
    assert named_graph("diamond").edges == ((0, 1), (0, 2), (1, 2), (1, 3), (2, 3))
    assert sorted(name for name, _ in corpus_graphs()[-len(NAMED_FILES):]) == sorted(NAMED_FILES)


def test_constructors():
    assert star_graph(3).edges == ((0, 1), (0, 2), (0, 3))
    assert edgeless_graph(4).n_edges == 0
    with pytest.raises(GraphError):
        cycle_graph(2)
    with pytest.raises(KeyError):
        named_graph("petersen")


@pytest.mark.parametrize(
    "name, g",
    [
        pytest.param(n, g, marks=pytest.mark.slow) if n in SLOW else (n, g)
        for n, g in corpus_graphs()
    ],
)
def test_suite_passes_on_corpus(name, g):
    results = run_suite(g, algebra_am(2))
    assert _failures(results) == []


@pytest.mark.parametrize("name", ["diamond", "bowtie", "atlas-7"])
def test_paranoid_suite(name):
    g = named_graph(name) if name in NAMED_FILES else dict(atlas_graphs())[name]
    results = run_suite(g, algebra_am(2), level="paranoid")
    assert _failures(results) == []
    names = {r.name for r in results}
    assert "BC complex is acyclic" in names
    assert "coloring independence" in names
    assert "BC is an upper order ideal" in names


@pytest.mark.parametrize("m", [1, 3])
def test_suite_over_other_algebras(diamond, m):
    assert _failures(run_suite(diamond, algebra_am(m))) == []


def test_edgeless_graph_passes_vacuously():
    results = run_suite(edgeless_graph(3), algebra_am(2), level="paranoid")
    assert _failures(results) == []
    skipped = {r.name for r in results if r.skipped}
    assert "support bound" in skipped


def test_corrupted_sign_table_fails_balance(k3, a2):
    results = run_suite(k3, a2, sign=lambda s, e: 1)
    failures = _failures(results)
    assert [name for name, _ in failures] == ["balanced coloring"]


def test_paranoid_oracle_respects_edge_cap(monkeypatch, a2):
    monkeypatch.setenv("CHROMHOM_PARANOID_MAX_EDGES", "3")
    results = check_paranoid(complete_graph(4), a2)
    skipped = [r for r in results if r.skipped]
    assert [r.name for r in skipped] == ["NBC membership against cycle enumeration"]


def test_check_results_serialise(k3, a2):
    rows = [r.to_dict() for r in run_suite(k3, a2)]
    assert all(row["status"] == "pass" for row in rows)
    assert {"property", "status"} <= set(rows[0])

