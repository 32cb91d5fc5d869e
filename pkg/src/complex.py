import logging
from dataclasses import dataclass
from typing import Dict, List, Tuple

from sympy import Poly
from sympy.polys.domains import ZZ
from sympy.polys.matrices import DomainMatrix

from src.algebra import (
    Q,
    GradedAlgebra,
    TensorBasisIndex,
    multiply_factors,
    tensor_basis,
    tensor_position,
)
from src.broken_circuits import Matching, bc_sets, nbc_sets, verify_acyclic
from src.checks import CheckResult, failed, passed
from src.errors import ChainComplexError, ContractViolation
from src.graph import (
    EdgeSubset,
    Graph,
    all_subsets,
    completes_cycle,
    components,
)
from src.sparse import accumulate, entries, from_rows, is_identity, zeros

logger = logging.getLogger(__name__)

MODELS = ("full", "nbc", "bc")
CONVENTIONS = ("below", "above")


def coloring_sign(s: EdgeSubset, e: int, convention="below") -> int:
    """
    Sign of the cover relation s < s + e

    "below" is (-1)^#{j in s : j < e}; "above" counts j > e instead. Both
    colorings are balanced.
    """
    if e in s:
        raise ContractViolation(f"edge {e} is already in {s}")
    if convention == "below":
        count = len(s.below(e))
    elif convention == "above":
        count = len(s) - len(s.below(e))
    else:
        raise ValueError(f"unknown sign convention {convention!r}")
    return -1 if count % 2 else 1


def diamonds(g: Graph):
    """Every (S, e, f) with e < f both outside S."""
    m = g.n_edges
    for s in all_subsets(g):
        free = [e for e in range(m) if e not in s]
        for a in range(len(free)):
            for b in range(a + 1, len(free)):
                yield s, free[a], free[b]


def verify_balanced(g: Graph, sign=coloring_sign) -> CheckResult:
    """Every diamond of 2^E must carry an odd number of -1 signs."""
    for s, e, f in diamonds(g):
        signs = (sign(s, e), sign(s.add(e), f), sign(s, f), sign(s.add(f), e))
        if signs.count(-1) % 2 == 0:
            return failed("balanced coloring", f"diamond S={s} e={e} f={f} signs={signs}")
    return passed("balanced coloring")


def _edge_images(g, a, s, e):
    """
    Per-basis-tensor images of the edge map for s < s + e

    Returns:
        (k_source, k_target, images) where images(factors) lists
        (target basis tuple, coefficient)
    """
    if e in s:
        raise ContractViolation(f"edge {e} is already in {s}")
    before = components(g, s)
    k = len(before)
    if completes_cycle(g, s, e):
        after = components(g, s.add(e))
        # same partition, so the min-vertex factor order is unchanged
        if after != before:
            raise ChainComplexError(len(s), None, f"cycle edge {e} changed the partition of {s}")
        return k, k, lambda factors: [(factors, 1)]

    u, v = g.edges[e]
    where = before.block_index()
    p, r = sorted((where[u], where[v]))
    after = components(g, s.add(e))
    merged = after.block_index()[u]
    if merged != p:
        raise ChainComplexError(len(s), None, f"merged component of {s}+{e} sits at {merged}, expected {p}")
    return k, k - 1, lambda factors: multiply_factors(a, factors, p, r, target=p)


def edge_map(g: Graph, a: GradedAlgebra, s: EdgeSubset, e: int) -> DomainMatrix:
    """
    Matrix of F(s < s + e): A^{(x)k(s)} -> A^{(x)k(s+e)}

    Identity when e completes a cycle, otherwise multiplication of the two
    tensor factors of the components e joins.
    """
    k_source, k_target, images = _edge_images(g, a, s, e)
    rows = {}
    for col, (factors, _) in enumerate(tensor_basis(a, k_source)):
        for image, c in images(factors):
            accumulate(rows, tensor_position(a, image), col, c)
    return from_rows(rows, (a.dim ** k_target, a.dim ** k_source))


def verify_diamond_commutativity(g: Graph, a: GradedAlgebra) -> CheckResult:
    cache = {}

    def cached(s, e):
        key = (s, e)
        if key not in cache:
            cache[key] = edge_map(g, a, s, e)
        return cache[key]

    for s, e, f in diamonds(g):
        via_e = cached(s.add(e), f).matmul(cached(s, e))
        via_f = cached(s.add(f), e).matmul(cached(s, f))
        if via_e != via_f:
            return failed("diamond commutativity", f"S={s} e={e} f={f}")
    return passed("diamond commutativity")


@dataclass(frozen=True)
class StateInfo:
    subset: EdgeSubset
    degree: int
    n_components: int
    graded_dims: Tuple[int, ...]


@dataclass(frozen=True, eq=False)
class BasedComplex:
    """
    Cochain complex of the chromatic functor over a family of states

    Args:
        states: states in enumeration order with their graded summand sizes
        bases: (i, j) -> ordered basis of C^{i,j} as (state position, tensor)
        differentials: (i, j) -> d^{i,j}: C^{i,j} -> C^{i+1,j}
    """

    graph: Graph
    algebra: GradedAlgebra
    model: str
    convention: str
    states: Tuple[StateInfo, ...]
    bases: Dict[Tuple[int, int], List[Tuple[int, TensorBasisIndex]]]
    differentials: Dict[Tuple[int, int], DomainMatrix]

    def dim(self, i, j):
        return len(self.bases.get((i, j), ()))

    def bigrades(self):
        return sorted(key for key, basis in self.bases.items() if basis)

    def internal_degrees(self):
        return sorted({j for _, j in self.bigrades()})

    def homological_degrees(self):
        return sorted({i for i, _ in self.bigrades()})

    def differential(self, i, j):
        matrix = self.differentials.get((i, j))
        if matrix is None:
            return zeros((self.dim(i + 1, j), self.dim(i, j)))
        return matrix


def model_states(g: Graph, model: str) -> List[EdgeSubset]:
    if model == "full":
        return list(all_subsets(g))
    if model == "nbc":
        return list(nbc_sets(g))
    if model == "bc":
        return list(bc_sets(g))
    raise ValueError(f"unknown model {model!r}; expected one of {MODELS}")


def build_complex(g: Graph, a: GradedAlgebra, model="full", convention="below") -> BasedComplex:
    """
    Assemble C*(F, c) over the chosen state family

    States of homological degree i are the chosen subsets of size i, in
    enumeration order; the basis of C^{i,j} lists, state by state, the
    degree-j basis tensors of A^{(x)k(S)} in lexicographic order. Each cover
    relation S < S+e inside the family contributes sign * edge map.

    Args:
        g: graph with its edge order
        a: graded algebra
        model: "full", "nbc" or "bc"
        convention: coloring sign convention

    Returns:
        BasedComplex
    """
    subsets = model_states(g, model)
    position = {s: n for n, s in enumerate(subsets)}

    states = []
    bases = {}
    # (state position, tensor) -> index within its C^{i,j}
    index = {}
    for n, s in enumerate(subsets):
        k = len(components(g, s))
        i = len(s)
        graded = {}
        for factors, j in tensor_basis(a, k):
            basis = bases.setdefault((i, j), [])
            index[(n, factors)] = len(basis)
            basis.append((n, factors))
            graded[j] = graded.get(j, 0) + 1
        top = max(graded) if graded else -1
        states.append(StateInfo(s, i, k, tuple(graded.get(j, 0) for j in range(top + 1))))

    entries_by_block = {key: {} for key in bases}

    for n, s in enumerate(subsets):
        i = len(s)
        for e in range(g.n_edges):
            if e in s:
                continue
            target = position.get(s.add(e))
            if target is None:
                continue
            sign = coloring_sign(s, e, convention)
            _, k_target, images = _edge_images(g, a, s, e)
            for factors, j in tensor_basis(a, states[n].n_components):
                col = index[(n, factors)]
                for image, c in images(factors):
                    row = index[(target, image)]
                    accumulate(entries_by_block[(i, j)], row, col, sign * c)

    differentials = {
        (i, j): from_rows(rows, (len(bases.get((i + 1, j), ())), len(bases[(i, j)])))
        for (i, j), rows in entries_by_block.items()
    }

    logger.debug(
        "built %s complex of %s over %s: %d states, %d bigrades",
        model, g, a, len(states), len(bases),
    )
    return BasedComplex(g, a, model, convention, tuple(states), bases, differentials)


def verify_d_squared(c: BasedComplex) -> CheckResult:
    for (i, j) in c.bigrades():
        square = c.differential(i + 1, j).matmul(c.differential(i, j))
        if not square.is_zero_matrix:
            return failed("d^2 = 0", f"({c.model}) bigrade i={i} j={j}")
    return passed("d^2 = 0")


def assert_d_squared(c: BasedComplex):
    for (i, j) in c.bigrades():
        square = c.differential(i + 1, j).matmul(c.differential(i, j))
        if not square.is_zero_matrix:
            raise ChainComplexError(i, j)


def verify_morse_hypothesis(g: Graph, a: GradedAlgebra, m: Matching) -> CheckResult:
    """
    The matching must cover BC perfectly, be acyclic, and match along isomorphisms

    Returns:
        CheckResult whose witness names the failing clause
    """
    name = "Morse hypothesis"
    bc = set(bc_sets(g))
    if not m.is_vertex_disjoint() or m.members() != bc:
        return failed(name, "(a) matching does not cover BC perfectly")
    for s, t in m.pairs:
        if not s.issubset(t) or len(t) != len(s) + 1:
            return failed(name, f"(a) pair {s}, {t} is not a cover relation")

    acyclic = verify_acyclic(g, m, states=bc)
    if not acyclic:
        return failed(name, f"(b) {acyclic.witness}")

    for s, t in m.pairs:
        (e,) = (t ^ s).indices()
        matrix = edge_map(g, a, s, e)
        n_rows, n_cols = matrix.shape
        if n_rows != n_cols:
            return failed(name, f"(c) edge map {s} -> {t} is not square")
        if not is_identity(matrix):
            det = matrix.to_dense().det()
            if det not in (1, -1):
                return failed(name, f"(c) edge map {s} -> {t} has determinant {det}")
    return passed(name)


def graded_euler_characteristic(c: BasedComplex) -> Poly:
    total = 0
    for (i, j) in c.bigrades():
        total += (-1) ** i * c.dim(i, j) * Q ** j
    return Poly(total, Q, domain=ZZ)


def ungraded_euler_characteristic(c: BasedComplex) -> int:
    return sum((-1) ** i * c.dim(i, j) for (i, j) in c.bigrades())


def dump_complex(c: BasedComplex) -> dict:
    """
    JSON-ready dump: states with degrees, differentials as coordinate lists

    Signs are folded into the entries; row/column indices refer to the
    bases in state-enumeration x tensor-basis order.
    """
    return {
        "graph": {"n": c.graph.n_vertices, "edges": [list(e) for e in c.graph.edges]},
        "algebra": {"name": c.algebra.name, "degrees": list(c.algebra.degrees)},
        "model": c.model,
        "states": [
            {
                "edges": list(st.subset.indices()),
                "i": st.degree,
                "components": st.n_components,
                "graded_dims": list(st.graded_dims),
            }
            for st in c.states
        ],
        "differentials": [
            {
                "i": i,
                "j": j,
                "shape": list(c.differential(i, j).shape),
                "entries": [[r, col, v] for r, col, v in entries(c.differential(i, j))],
            }
            for (i, j) in c.bigrades()
        ],
    }
