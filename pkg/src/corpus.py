import logging
from pathlib import Path
from typing import List, Tuple

import networkx as nx

from src.errors import GraphError
from src.graph import Graph, from_networkx, load_graph

logger = logging.getLogger(__name__)

GRAPHS_DIR = Path(__file__).resolve().parent.parent / "graphs"

NAMED_FILES = {
    "K5": "k5.txt",
    "C6": "c6.txt",
    "C8": "c8.txt",
    "bowtie": "bowtie.txt",
    "diamond": "diamond.txt",
}


def complete_graph(n: int) -> Graph:
    return Graph(n, tuple((u, v) for u in range(n) for v in range(u + 1, n)))


def cycle_graph(n: int) -> Graph:
    """Cycle with edges in cycle order: 0-1, 1-2, ..., (n-1)-0."""
    if n < 3:
        raise GraphError(f"a cycle needs at least 3 vertices, got {n}")
    return Graph(n, tuple((v, (v + 1) % n) for v in range(n)))


def path_graph(n: int) -> Graph:
    return Graph(n, tuple((v, v + 1) for v in range(n - 1)))


def star_graph(k: int) -> Graph:
    """K_{1,k}: centre 0 joined to 1..k."""
    return Graph(k + 1, tuple((0, v) for v in range(1, k + 1)))


def edgeless_graph(n: int) -> Graph:
    return Graph(n, ())


def named_graph(name: str) -> Graph:
    if name not in NAMED_FILES:
        raise KeyError(f"unknown corpus graph {name!r}; known: {sorted(NAMED_FILES)}")
    return load_graph(GRAPHS_DIR / NAMED_FILES[name])


def atlas_graphs(max_vertices=5) -> List[Tuple[str, Graph]]:
    """All connected graphs on 1..max_vertices vertices, one per isomorphism class."""
    found = []
    for index, nx_graph in enumerate(nx.graph_atlas_g()):
        n = nx_graph.number_of_nodes()
        if n > max_vertices:
            break
        if n == 0 or not nx.is_connected(nx_graph):
            continue
        found.append((f"atlas-{index}", from_networkx(nx_graph)))
    return found


def corpus_graphs(max_vertices=5, named=True) -> List[Tuple[str, Graph]]:
    """
    The verification corpus

    Args:
        max_vertices: size bound for the atlas part
        named: include the shipped graphs (K5, C6, C8, bowtie, diamond)

    Returns:
        list of (name, graph)
    """
    graphs = atlas_graphs(max_vertices)
    if named:
        graphs.extend((name, named_graph(name)) for name in NAMED_FILES)
    logger.debug("corpus holds %d graphs", len(graphs))
    return graphs
