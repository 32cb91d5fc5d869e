import itertools
import logging
from dataclasses import dataclass, field
from typing import Dict

import networkx as nx
from sympy import Poly, Symbol
from sympy.polys.domains import ZZ

from src.algebra import Q
from src.broken_circuits import Matching, bc_sets, build_matching, nbc_sets
from src.checks import CheckResult, failed, passed
from src.graph import (
    EdgeSubset,
    Graph,
    IntegerPartition,
    all_subsets,
    component_count,
    components,
    contract_edge,
    delete_edge,
    from_networkx,
    size_partition,
    to_networkx,
)

logger = logging.getLogger(__name__)

X = Symbol("x")


def _poly_from_counts(counts) -> Poly:
    return Poly(sum(c * X ** k for k, c in counts.items()), X, domain=ZZ)


def coefficients(p: Poly):
    """Coefficient list indexed by the power of x."""
    return [int(c) for c in reversed(p.all_coeffs())] if not p.is_zero else [0]


def evaluate(p: Poly, k: int) -> int:
    return int(p.eval(k))


def _signed_statesum(g, states) -> Poly:
    counts = {}
    for s in states:
        k = component_count(g, s)
        counts[k] = counts.get(k, 0) + (-1) ** len(s)
    return _poly_from_counts(counts)


def chromatic_statesum(g: Graph) -> Poly:
    """sum over all S of (-1)^|S| x^k(S)"""
    return _signed_statesum(g, all_subsets(g))


def chromatic_nbc(g: Graph) -> Poly:
    return _signed_statesum(g, nbc_sets(g))


def bc_cancellation(g: Graph) -> Poly:
    """The BC part of the state sum; identically zero."""
    return _signed_statesum(g, bc_sets(g))


class _DelconMemo:
    """Chromatic polynomials of graphs seen so far, bucketed by a WL hash."""

    def __init__(self):
        self.buckets = {}

    def _key(self, nx_graph):
        return (
            nx_graph.number_of_nodes(),
            nx_graph.number_of_edges(),
            nx.weisfeiler_lehman_graph_hash(nx_graph),
        )

    def get(self, nx_graph):
        for other, poly in self.buckets.get(self._key(nx_graph), ()):
            if nx.is_isomorphic(nx_graph, other):
                return poly
        return None

    def put(self, nx_graph, poly):
        self.buckets.setdefault(self._key(nx_graph), []).append((nx_graph, poly))


def chromatic_delcon(g: Graph, memo=None) -> Poly:
    """
    Deletion-contraction: chi(G) = chi(G - e) - chi(G / e)

    Disconnected graphs factor into their components; results are memoised
    on isomorphism classes.
    """
    if memo is None:
        memo = _DelconMemo()
    if g.n_edges == 0:
        return Poly(X ** g.n_vertices, X, domain=ZZ)

    parts = components(g, EdgeSubset.full(g.n_edges)).blocks
    if len(parts) > 1:
        nx_graph = to_networkx(g)
        result = Poly(1, X, domain=ZZ)
        for block in parts:
            result *= chromatic_delcon(from_networkx(nx_graph.subgraph(block)), memo)
        return result

    nx_graph = to_networkx(g)
    known = memo.get(nx_graph)
    if known is not None:
        return known
    e = g.n_edges - 1
    result = chromatic_delcon(delete_edge(g, e), memo) - chromatic_delcon(contract_edge(g, e), memo)
    memo.put(nx_graph, result)
    return result


def count_colorings(g: Graph, k: int) -> int:
    """Brute-force count of proper colorings with k colors."""
    count = 0
    for coloring in itertools.product(range(k), repeat=g.n_vertices):
        if all(coloring[u] != coloring[v] for u, v in g.edges):
            count += 1
    return count


@dataclass(frozen=True)
class PSymFun:
    """Symmetric function in the power-sum basis: partition -> coefficient."""

    terms: Dict[IntegerPartition, int] = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(
            self, "terms", {lam: c for lam, c in sorted(self.terms.items()) if c}
        )

    def __add__(self, other):
        out = dict(self.terms)
        for lam, c in other.terms.items():
            out[lam] = out.get(lam, 0) + c
        return PSymFun(out)

    def __neg__(self):
        return PSymFun({lam: -c for lam, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def is_zero(self):
        return not self.terms

    def to_json(self):
        return {",".join(str(p) for p in lam): c for lam, c in self.terms.items()}

    def __str__(self):
        if not self.terms:
            return "0"
        return " + ".join(
            f"{c}*p{list(lam)}" for lam, c in sorted(self.terms.items(), reverse=True)
        )


def _signed_p_sum(g, states) -> PSymFun:
    terms = {}
    for s in states:
        lam = size_partition(g, s)
        terms[lam] = terms.get(lam, 0) + (-1) ** len(s)
    return PSymFun(terms)


def csf_statesum(g: Graph) -> PSymFun:
    return _signed_p_sum(g, all_subsets(g))


def csf_nbc(g: Graph) -> PSymFun:
    return _signed_p_sum(g, nbc_sets(g))


def bc_csf_cancellation(g: Graph) -> PSymFun:
    return _signed_p_sum(g, bc_sets(g))


def specialize_csf(f: PSymFun, k: int) -> int:
    """Set the first k variables to 1 and the rest to 0: p_lambda -> k^len(lambda)."""
    return sum(c * k ** len(lam) for lam, c in f.terms.items())


def substitute_qrank(p: Poly, qr: Poly) -> Poly:
    """chi_G(qrank A) as a polynomial in q."""
    return Poly(p.as_expr().subs(X, qr.as_expr()), Q, domain=ZZ)


def chromatic_from_a2_euler(euler: Poly) -> Poly:
    """Recover chi_G(x) from the A_2 graded Euler characteristic via q = x - 1."""
    return Poly(euler.as_expr().subs(Q, X - 1), X, domain=ZZ)


def pairwise_cancellation(g: Graph, m: Matching = None) -> CheckResult:
    """
    Each matched pair must cancel on its own

    Sizes differ by one and the vertex partitions agree, so both
    (-1)^|S| x^k(S) and (-1)^|S| p_lambda(S) cancel pair by pair.
    """
    if m is None:
        m = build_matching(g)
    for s, t in m.pairs:
        if len(t) - len(s) != 1:
            return failed("pairwise cancellation", f"{s} and {t} differ by {len(t) - len(s)} edges")
        if components(g, s) != components(g, t):
            return failed("pairwise cancellation", f"{s} and {t} have different vertex partitions")
    return passed("pairwise cancellation")
