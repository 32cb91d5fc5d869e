import logging
from dataclasses import dataclass
from typing import Dict, Iterator, List, Optional, Tuple

import networkx as nx

from src.checks import CheckResult, failed, passed
from src.errors import ContractViolation, LinearExtensionError
from src.graph import (
    EdgeSubset,
    Graph,
    UnionFind,
    _check_owner,
    all_subsets,
    to_networkx,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Matching:
    """Pairs (S, T) of the Hasse diagram of 2^E with T covering S."""

    pairs: Tuple[Tuple[EdgeSubset, EdgeSubset], ...]

    def __len__(self):
        return len(self.pairs)

    def partner(self) -> Dict[EdgeSubset, EdgeSubset]:
        mate = {}
        for s, t in self.pairs:
            mate[s] = t
            mate[t] = s
        return mate

    def members(self):
        return {x for pair in self.pairs for x in pair}

    def is_vertex_disjoint(self):
        return len(self.members()) == 2 * len(self.pairs)


def pivot_edge(g: Graph, s: EdgeSubset) -> Optional[int]:
    """
    Largest edge e whose endpoints are joined by a path in s restricted to edges below e

    Such a path together with e contains a cycle whose maximum edge is e, so
    s contains the broken circuit of that cycle; conversely every broken
    circuit inside s is such a path. Edges are swept upward and s-edges are
    merged after their own test, so the last hit is the maximum.

    Returns:
        edge index, or None when s contains no broken circuit
    """
    _check_owner(g, s)
    uf = UnionFind(g.n_vertices)
    pivot = None
    for e, (u, v) in enumerate(g.edges):
        if uf.connected(u, v):
            pivot = e
        if e in s:
            uf.union(u, v)
    return pivot


def is_nbc(g: Graph, s: EdgeSubset) -> bool:
    return pivot_edge(g, s) is None


def involution(g: Graph, s: EdgeSubset) -> EdgeSubset:
    pivot = pivot_edge(g, s)
    if pivot is None:
        raise ContractViolation(f"{s} contains no broken circuit")
    return s.toggle(pivot)


def bc_sets(g: Graph) -> Iterator[EdgeSubset]:
    """Edge subsets containing a broken circuit, in increasing mask order."""
    for s in all_subsets(g):
        if not is_nbc(g, s):
            yield s


def nbc_sets(g: Graph) -> Iterator[EdgeSubset]:
    """
    Stream the NBC edge subsets, each once

    Depth-first over edge indices in increasing order, including an edge
    before excluding it. A branch is pruned as soon as it contains a broken
    circuit, since every extension of it does too.
    """
    m = g.n_edges

    def walk(index, mask):
        if index == m:
            yield EdgeSubset(m, mask)
            return
        with_edge = mask | 1 << index
        if is_nbc(g, EdgeSubset(m, with_edge)):
            yield from walk(index + 1, with_edge)
        yield from walk(index + 1, mask)

    yield from walk(0, 0)


def build_matching(g: Graph) -> Matching:
    """Orbits of the pivot-toggling involution on BC, as (lower, upper) pairs."""
    pairs = []
    for s in bc_sets(g):
        pivot = pivot_edge(g, s)
        if pivot not in s:
            pairs.append((s, s.add(pivot)))
    logger.debug("matching on %s has %d pairs", g, len(pairs))
    return Matching(tuple(pairs))


def _find_directed_cycle(nodes, successors):
    """A node lying on a directed cycle, or None."""
    white, grey, black = 0, 1, 2
    color = {node: white for node in nodes}
    for root in nodes:
        if color[root] != white:
            continue
        color[root] = grey
        stack = [(root, iter(successors(root)))]
        while stack:
            node, children = stack[-1]
            advanced = False
            for child in children:
                if color[child] == grey:
                    return child
                if color[child] == white:
                    color[child] = grey
                    stack.append((child, iter(successors(child))))
                    advanced = True
                    break
            if not advanced:
                color[node] = black
                stack.pop()
    return None


def verify_acyclic(g: Graph, m: Matching, states=None) -> CheckResult:
    """
    Check that reversing the matched cover relations leaves no directed cycle

    Args:
        g: graph
        m: matching on the Hasse diagram
        states: state family to build the cover digraph on; defaults to BC

    Returns:
        CheckResult, truthy iff the modified Hasse diagram is acyclic; the
        witness is a state on a directed cycle
    """
    if states is None:
        states = list(bc_sets(g))
    present = set(states)
    matched = {(s, t) for s, t in m.pairs}
    mates = {}
    for s, t in m.pairs:
        mates.setdefault(t, []).append(s)

    def successors(x):
        for e in range(g.n_edges):
            if e in x:
                continue
            y = x.add(e)
            if y in present and (x, y) not in matched:
                yield y
        for y in mates.get(x, ()):
            if y in present:
                yield y

    on_cycle = _find_directed_cycle(sorted(present), successors)
    if on_cycle is not None:
        return failed("matching acyclicity", f"directed cycle through {on_cycle}")
    return passed("matching acyclicity")


def _reverse_lex_key(s: EdgeSubset):
    # equal-size sets: lexicographically larger index tuples first
    return (len(s), tuple(-e for e in s.indices()))


def linear_extension(g: Graph, m: Matching) -> List[EdgeSubset]:
    """
    Order BC as S_1, T_1, S_2, T_2, ... and certify it extends inclusion

    Lower ends are ranked by size, and within a size in reverse
    lexicographic order; each upper end follows its lower end.

    Raises:
        LinearExtensionError: naming a pair U < V with V placed before U
    """
    order = []
    for s, t in sorted(m.pairs, key=lambda pair: _reverse_lex_key(pair[0])):
        order.extend((s, t))

    position = {x: i for i, x in enumerate(order)}
    for u in order:
        for v in order:
            if u != v and u.issubset(v) and position[u] > position[v]:
                raise LinearExtensionError(u, v)
    return order


def is_lower_ideal(states) -> bool:
    """True iff the family is closed under removing any edge."""
    present = set(states)
    return all(x.remove(e) in present for x in present for e in x)


def is_upper_ideal(g: Graph, states) -> bool:
    present = set(states)
    return all(
        x.add(e) in present
        for x in present
        for e in range(g.n_edges)
        if e not in x
    )


# -- independent oracle ------------------------------------------------------


def broken_circuits_oracle(g: Graph) -> List[EdgeSubset]:
    """Broken circuits from explicit cycle enumeration (networkx)."""
    nx_graph = to_networkx(g)
    index = {frozenset(edge): i for i, edge in enumerate(g.edges)}
    found = set()
    for cycle in nx.simple_cycles(nx_graph):
        if len(cycle) < 3:
            continue
        edges = [
            index[frozenset((cycle[k], cycle[(k + 1) % len(cycle)]))]
            for k in range(len(cycle))
        ]
        circuit = EdgeSubset.from_indices(g.n_edges, edges)
        found.add(circuit.remove(max(edges)))
    return sorted(found)


def is_nbc_oracle(g: Graph, s: EdgeSubset, circuits=None) -> bool:
    if circuits is None:
        circuits = broken_circuits_oracle(g)
    return not any(c.issubset(s) for c in circuits)
