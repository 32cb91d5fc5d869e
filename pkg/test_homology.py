import random

import pytest
from sympy.polys.domains import ZZ
from sympy.polys.matrices import DomainMatrix
from sympy.polys.matrices.normalforms import invariant_factors

from src.algebra import Q, algebra_am, qrank
from src.complex import build_complex, graded_euler_characteristic
from src.corpus import complete_graph, corpus_graphs, cycle_graph, edgeless_graph, named_graph
from src.errors import ChainComplexError
from src.graph import disjoint_union
from src.homology import (
    T,
    HomologyGroup,
    HomologySummary,
    Support,
    _to_divisibility_chain,
    diff_summaries,
    euler_check,
    euler_of_homology,
    homology,
    homology_by_degree,
    poincare_polynomial,
    rank_mod_p,
    smith_normal_form,
    support,
    torsion_table,
)
from src.sparse import from_dense, from_rows, zeros
from src.symfun import chromatic_statesum, substitute_qrank


def test_smith_normal_form_examples():
    assert smith_normal_form([[2, 4], [6, 8]]).invariant_factors == (2, 4)
    assert smith_normal_form([[1, 0, 0], [0, 1, 0], [0, 0, 1]]).invariant_factors == (1, 1, 1)
    assert smith_normal_form([[0, 0], [0, 0]]).invariant_factors == ()
    assert smith_normal_form(zeros((0, 3))).invariant_factors == ()
    assert smith_normal_form(from_dense([[0, 2], [3, 0]])).invariant_factors == (1, 6)


def test_smith_normal_form_torsion():
    snf = smith_normal_form([[2, 0], [0, 3]])
    assert snf.invariant_factors == (1, 6)
    assert snf.rank == 2
    assert snf.torsion == (6,)


def _sympy_factors(dense):
    dm = DomainMatrix([[ZZ(v) for v in row] for row in dense], (len(dense), len(dense[0])), ZZ)
    # sympy may report zeros and an unnormalised diagonal
    return _to_divisibility_chain([abs(int(d)) for d in invariant_factors(dm) if d])


@pytest.mark.parametrize("seed", range(12))
def test_smith_normal_form_against_sympy(seed):
    rng = random.Random(seed)
    rows, cols = rng.randint(1, 6), rng.randint(1, 6)
    dense = [
        [rng.choice([0, 0, 0, 1, -1, 2, -2, 3, 4, 6]) for _ in range(cols)]
        for _ in range(rows)
    ]
    assert smith_normal_form(dense).invariant_factors == _sympy_factors(dense)


@pytest.mark.parametrize("seed", range(6))
def test_smith_normal_form_on_larger_sparse_matrices(seed):
    rng = random.Random(100 + seed)
    rows, cols = rng.randint(15, 30), rng.randint(15, 30)
    dense = [
        [rng.choice([0] * 8 + [1, -1, 2, 3]) for _ in range(cols)]
        for _ in range(rows)
    ]
    assert smith_normal_form(dense).invariant_factors == _sympy_factors(dense)


def test_unit_found_by_reduction():
    # no unit entry at the start; 3 mod 2 produces one
    assert smith_normal_form([[2, 3]]).invariant_factors == (1,)
    assert smith_normal_form([[4, 6], [6, 9]]).invariant_factors == (1,)


def test_smith_normal_form_matches_sympy_rank(k4, a3):
    c = build_complex(k4, a3, "nbc")
    for (i, j) in c.bigrades():
        d = c.differential(i, j)
        if 0 not in d.shape:
            assert smith_normal_form(d).rank == d.rank()


def test_divisibility_chain():
    assert _to_divisibility_chain([4, 6]) == (2, 12)
    assert _to_divisibility_chain([3, 1, 2]) == (1, 1, 6)
    assert _to_divisibility_chain([1] * 5 + [2, 2]) == (1, 1, 1, 1, 1, 2, 2)


def test_rank_mod_p():
    m = from_dense([[2, 4], [6, 8]])
    assert rank_mod_p(m) == 2
    assert rank_mod_p(m, p=2) == 0
    assert rank_mod_p([[1, 2], [2, 4]]) == 1


def test_k2_homology(k2, a2):
    for model in ("full", "nbc"):
        h = homology(build_complex(k2, a2, model))
        assert h.groups == {(0, 1): HomologyGroup(1), (0, 2): HomologyGroup(1)}
        assert support(h) == Support(0, 0, 1, 2)


@pytest.mark.parametrize("m", [1, 2, 3])
def test_single_vertex(m):
    h = homology(build_complex(edgeless_graph(1), algebra_am(m)))
    assert h.groups == {(0, j): HomologyGroup(1) for j in range(m)}


def test_euler_check(k2, k3, a2):
    for g in (k2, k3):
        c = build_complex(g, a2)
        assert euler_check(homology(c), c)
    assert euler_of_homology(homology(build_complex(k2, a2))).as_expr() == Q + Q ** 2


def test_poincare_polynomial(k2, a2):
    p = poincare_polynomial(homology(build_complex(k2, a2)))
    assert p.as_expr() == Q + Q ** 2
    assert p.gens == (T, Q)


def test_zero_summary():
    h = HomologySummary({})
    assert h.is_zero()
    assert support(h) is None
    assert h.group(3, 1) == HomologyGroup(0)


def test_group_rendering():
    assert str(HomologyGroup(2, (2,))) == "Z^2 + Z/2"
    assert str(HomologyGroup(1)) == "Z"
    assert str(HomologyGroup(0)) == "0"


def test_diff_and_torsion_table():
    first = HomologySummary({(0, 1): HomologyGroup(1), (1, 2): HomologyGroup(0, (2,))})
    second = HomologySummary({(0, 1): HomologyGroup(1)})
    assert torsion_table(first) == {(1, 2): (2,)}
    assert diff_summaries(first, second) == [{"i": 1, "j": 2, "first": "Z/2", "second": "0"}]
    assert diff_summaries(first, first) == []


def test_broken_differential_is_a_hard_failure(k3, a2):
    c = build_complex(k3, a2)
    c.differentials[(0, 0)] = from_rows({0: {0: 1}}, (c.dim(1, 0), c.dim(0, 0)))
    with pytest.raises(ChainComplexError) as info:
        homology(c)
    assert (info.value.i, info.value.j) == (0, 0)


def test_homology_by_degree_matches_total(k4, a2):
    c = build_complex(k4, a2, "nbc")
    total = homology(c, threads=1)
    for j in c.internal_degrees():
        part = homology_by_degree(c, j)
        assert part == {key: g for key, g in total.groups.items() if key[1] == j}


def test_threaded_homology_is_deterministic(k4, a2):
    c = build_complex(k4, a2)
    assert homology(c, threads=4) == homology(c, threads=1)


LARGE = {"K5", "C8"}


def _fast_corpus():
    return [(n, g) for n, g in corpus_graphs() if n not in LARGE]


@pytest.mark.parametrize("name, g", _fast_corpus())
@pytest.mark.parametrize("m", [2, 3])
def test_full_and_nbc_homology_agree(name, g, m):
    a = algebra_am(m)
    full = homology(build_complex(g, a, "full"))
    nbc = homology(build_complex(g, a, "nbc"))
    assert diff_summaries(full, nbc) == []


@pytest.mark.slow
@pytest.mark.parametrize("name", sorted(LARGE))
@pytest.mark.parametrize("m", [2, 3])
def test_full_and_nbc_homology_agree_on_large_graphs(name, m):
    g = named_graph(name)
    a = algebra_am(m)
    assert diff_summaries(homology(build_complex(g, a, "full")), homology(build_complex(g, a, "nbc"))) == []


@pytest.mark.parametrize("g", [complete_graph(4), cycle_graph(4), named_graph("bowtie")])
def test_support_bound(g, a2):
    h = homology(build_complex(g, a2))
    assert 0 <= support(h).i_min and support(h).i_max <= g.n_vertices - 1
    nbc = build_complex(g, a2, "nbc")
    assert max(st.degree for st in nbc.states) <= g.n_vertices - 1


def test_disjoint_union_euler_multiplies(k2, k3, a2):
    union = disjoint_union(k2, k3)
    product = graded_euler_characteristic(build_complex(k2, a2)) * graded_euler_characteristic(build_complex(k3, a2))
    assert graded_euler_characteristic(build_complex(union, a2, "nbc")) == product
    assert euler_of_homology(homology(build_complex(union, a2, "nbc"))) == product


def _corpus_params():
    return [
        pytest.param(n, g, marks=pytest.mark.slow) if n in LARGE else (n, g)
        for n, g in corpus_graphs()
    ]


@pytest.mark.parametrize("name, g", _corpus_params())
@pytest.mark.parametrize("m", [1, 2, 3])
def test_euler_identities_on_corpus(name, g, m):
    a = algebra_am(m)
    expected = substitute_qrank(chromatic_statesum(g), qrank(a))
    for model in ("full", "nbc"):
        c = build_complex(g, a, model)
        assert graded_euler_characteristic(c) == expected
        assert euler_of_homology(homology(c)) == expected
