import logging
import re
from dataclasses import dataclass
from pathlib import Path
from typing import Iterator, Optional, Tuple

import networkx as nx

from src.errors import ContractViolation, GraphError, GraphParseError

logger = logging.getLogger(__name__)

IntegerPartition = Tuple[int, ...]


@dataclass(frozen=True)
class Graph:
    """
    Simple graph with a fixed total order on its edges

    Args:
        n_vertices: number of vertices, labelled 0..n_vertices-1
        edges: edge list; position i is edge e_{i+1} of the order
    """

    n_vertices: int
    edges: Tuple[Tuple[int, int], ...]

    def __post_init__(self):
        if self.n_vertices < 0:
            raise GraphError("vertex count must be non-negative")
        normalized = []
        seen = set()
        for index, (u, v) in enumerate(self.edges):
            if u == v:
                raise GraphError(f"edge {index} is a loop at vertex {u}")
            for w in (u, v):
                if not 0 <= w < self.n_vertices:
                    raise GraphError(
                        f"edge {index} endpoint {w} outside [0, {self.n_vertices})"
                    )
            key = (min(u, v), max(u, v))
            if key in seen:
                raise GraphError(f"edge {index} duplicates {key}")
            seen.add(key)
            normalized.append((u, v))
        object.__setattr__(self, "edges", tuple(normalized))

    @property
    def n_edges(self):
        return len(self.edges)

    def __str__(self):
        return f"Graph(n={self.n_vertices}, m={self.n_edges})"


@dataclass(frozen=True, order=True)
class EdgeSubset:
    """A state of the Boolean lattice 2^E, stored as a bitmask over edge indices."""

    size: int
    mask: int = 0

    def __post_init__(self):
        if self.mask < 0 or self.mask >> self.size:
            raise GraphError(f"mask {self.mask:#x} does not fit {self.size} edges")

    @classmethod
    def empty(cls, size):
        return cls(size, 0)

    @classmethod
    def full(cls, size):
        return cls(size, (1 << size) - 1)

    @classmethod
    def from_indices(cls, size, indices):
        mask = 0
        for e in indices:
            if not 0 <= e < size:
                raise GraphError(f"edge index {e} outside [0, {size})")
            mask |= 1 << e
        return cls(size, mask)

    def __contains__(self, e):
        return bool(self.mask >> e & 1)

    def __iter__(self) -> Iterator[int]:
        mask = self.mask
        e = 0
        while mask:
            if mask & 1:
                yield e
            mask >>= 1
            e += 1

    def __len__(self):
        return self.mask.bit_count()

    def indices(self):
        return tuple(self)

    def _same_size(self, other):
        if self.size != other.size:
            raise GraphError(
                f"edge subsets of different graphs ({self.size} vs {other.size} edges)"
            )

    def __xor__(self, other):
        self._same_size(other)
        return EdgeSubset(self.size, self.mask ^ other.mask)

    def __or__(self, other):
        self._same_size(other)
        return EdgeSubset(self.size, self.mask | other.mask)

    def __and__(self, other):
        self._same_size(other)
        return EdgeSubset(self.size, self.mask & other.mask)

    def issubset(self, other):
        self._same_size(other)
        return self.mask & ~other.mask == 0

    def add(self, e):
        return EdgeSubset(self.size, self.mask | 1 << e)

    def remove(self, e):
        return EdgeSubset(self.size, self.mask & ~(1 << e))

    def toggle(self, e):
        return EdgeSubset(self.size, self.mask ^ 1 << e)

    def below(self, e):
        """Edges of this subset strictly smaller than e."""
        return EdgeSubset(self.size, self.mask & ((1 << e) - 1))

    def __str__(self):
        return "{" + ",".join(str(e) for e in self) + "}"


@dataclass(frozen=True)
class VertexPartition:
    """Blocks of a set partition of the vertices, sorted by minimum vertex."""

    blocks: Tuple[Tuple[int, ...], ...]

    def __len__(self):
        return len(self.blocks)

    def block_index(self):
        """Map vertex -> position of its block."""
        return {v: i for i, block in enumerate(self.blocks) for v in block}

    def sizes(self) -> IntegerPartition:
        return tuple(sorted((len(b) for b in self.blocks), reverse=True))


class UnionFind:
    """Disjoint sets over 0..n-1 with path halving and union by rank."""

    def __init__(self, n):
        self.parents = list(range(n))
        self.ranks = [0] * n
        self.count = n

    def find(self, x):
        parents = self.parents
        while parents[x] != x:
            parents[x] = parents[parents[x]]
            x = parents[x]
        return x

    def union(self, a, b):
        """Merge the sets of a and b; False if they were already joined."""
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        if self.ranks[ra] < self.ranks[rb]:
            ra, rb = rb, ra
        self.parents[rb] = ra
        if self.ranks[ra] == self.ranks[rb]:
            self.ranks[ra] += 1
        self.count -= 1
        return True

    def connected(self, a, b):
        return self.find(a) == self.find(b)


def _check_owner(g, s):
    if s.size != g.n_edges:
        raise GraphError(f"edge subset of size {s.size} used with {g}")


def _union_find(g, s):
    uf = UnionFind(g.n_vertices)
    for e in s:
        u, v = g.edges[e]
        uf.union(u, v)
    return uf


def components(g: Graph, s: EdgeSubset) -> VertexPartition:
    """Connected components of the spanning subgraph (V, s)."""
    _check_owner(g, s)
    uf = _union_find(g, s)
    groups = {}
    for v in range(g.n_vertices):
        groups.setdefault(uf.find(v), []).append(v)
    # vertices were visited in increasing order, so each block is sorted
    blocks = sorted((tuple(b) for b in groups.values()), key=lambda b: b[0])
    return VertexPartition(tuple(blocks))


def component_count(g: Graph, s: EdgeSubset) -> int:
    _check_owner(g, s)
    return _union_find(g, s).count


def size_partition(g: Graph, s: EdgeSubset) -> IntegerPartition:
    return components(g, s).sizes()


def completes_cycle(g: Graph, s: EdgeSubset, e: int) -> bool:
    """True iff adding edge e to s joins two vertices already connected in s."""
    _check_owner(g, s)
    if e in s:
        raise ContractViolation(f"edge {e} is already in {s}")
    u, v = g.edges[e]
    return _union_find(g, s).connected(u, v)


def is_cycle_space_member(g: Graph, s: EdgeSubset) -> bool:
    """Even degree at every vertex, i.e. s is a union of edge-disjoint cycles."""
    _check_owner(g, s)
    degree = [0] * g.n_vertices
    for e in s:
        u, v = g.edges[e]
        degree[u] ^= 1
        degree[v] ^= 1
    return not any(degree)


def spanning_forest_size(g: Graph, s: EdgeSubset) -> int:
    """Rank of s in the graphic matroid."""
    _check_owner(g, s)
    uf = UnionFind(g.n_vertices)
    return sum(1 for e in s if uf.union(*g.edges[e]))


def is_connected(g: Graph) -> bool:
    return g.n_vertices == 0 or component_count(g, EdgeSubset.full(g.n_edges)) == 1


def all_subsets(g: Graph) -> Iterator[EdgeSubset]:
    m = g.n_edges
    for mask in range(1 << m):
        yield EdgeSubset(m, mask)


# -- graph surgery -----------------------------------------------------------


def disjoint_union(g1: Graph, g2: Graph) -> Graph:
    shift = g1.n_vertices
    edges = g1.edges + tuple((u + shift, v + shift) for u, v in g2.edges)
    return Graph(g1.n_vertices + g2.n_vertices, edges)


def delete_edge(g: Graph, e: int) -> Graph:
    return Graph(g.n_vertices, g.edges[:e] + g.edges[e + 1:])


def contract_edge(g: Graph, e: int) -> Graph:
    """
    Contract edge e, merging its endpoints

    The larger endpoint is folded into the smaller one and vertices above it
    shift down by one. Edges that become parallel are kept once (first
    occurrence in the edge order).

    Args:
        g: graph
        e: edge index to contract

    Returns:
        Graph on n_vertices - 1 vertices
    """
    u, v = g.edges[e]
    keep, drop = min(u, v), max(u, v)

    def relabel(w):
        if w == drop:
            w = keep
        return w - 1 if w > drop else w

    edges = []
    seen = set()
    for index, (a, b) in enumerate(g.edges):
        if index == e:
            continue
        a, b = relabel(a), relabel(b)
        key = (min(a, b), max(a, b))
        if a == b or key in seen:
            continue
        seen.add(key)
        edges.append((a, b))
    return Graph(g.n_vertices - 1, tuple(edges))


# -- I/O ---------------------------------------------------------------------

_HEADER = re.compile(r"^n\s+(\d+)$")


def parse_edge_list(text: str) -> Graph:
    """
    Parse the edge-list text format

    The first meaningful line is "n <n_vertices>"; every following
    non-empty, non-comment line "u v" declares the next edge of the order.
    '#' starts a comment.

    Args:
        text: file contents

    Returns:
        Graph with edges in line order
    """
    n_vertices: Optional[int] = None
    edges = []
    seen = {}
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if n_vertices is None:
            match = _HEADER.match(line)
            if not match:
                raise GraphParseError(f"expected 'n <count>', got {line!r}", line_no)
            n_vertices = int(match.group(1))
            continue
        parts = line.split()
        if len(parts) != 2:
            raise GraphParseError(f"expected 'u v', got {line!r}", line_no)
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise GraphParseError(f"vertices must be integers, got {line!r}", line_no)
        if u == v:
            raise GraphParseError(f"loop at vertex {u}", line_no)
        for w in (u, v):
            if not 0 <= w < n_vertices:
                raise GraphParseError(f"vertex {w} outside [0, {n_vertices})", line_no)
        key = (min(u, v), max(u, v))
        if key in seen:
            raise GraphParseError(
                f"edge {u} {v} repeats the edge on line {seen[key]}", line_no
            )
        seen[key] = line_no
        edges.append((u, v))

    if n_vertices is None:
        raise GraphParseError("missing 'n <count>' header")
    logger.debug("parsed graph with %d vertices and %d edges", n_vertices, len(edges))
    return Graph(n_vertices, tuple(edges))


def load_graph(path) -> Graph:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except UnicodeDecodeError as e:
        raise GraphParseError(f"{path} is not UTF-8 text: {e.reason}")
    except OSError as e:
        raise GraphParseError(f"cannot read {path}: {e.strerror}")
    return parse_edge_list(text)


def format_edge_list(g: Graph, comment=None) -> str:
    lines = []
    if comment:
        lines.append(f"# {comment}")
    lines.append(f"n {g.n_vertices}")
    lines.extend(f"{u} {v}" for u, v in g.edges)
    return "\n".join(lines) + "\n"


def from_networkx(nx_graph) -> Graph:
    """
    Convert a networkx graph; node names are resolved here

    Nodes are relabelled 0..n-1 in sorted order and edges ordered by their
    relabelled (min, max) pairs.
    """
    nodes = sorted(nx_graph.nodes())
    label = {node: i for i, node in enumerate(nodes)}
    edges = sorted(
        (min(label[a], label[b]), max(label[a], label[b]))
        for a, b in nx_graph.edges()
    )
    return Graph(len(nodes), tuple(edges))


def to_networkx(g: Graph):
    nx_graph = nx.Graph()
    nx_graph.add_nodes_from(range(g.n_vertices))
    for index, (u, v) in enumerate(g.edges):
        nx_graph.add_edge(u, v, index=index)
    return nx_graph
