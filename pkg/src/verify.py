import logging
from typing import List

from src.algebra import GradedAlgebra, qrank
from src.broken_circuits import (
    bc_sets,
    broken_circuits_oracle,
    build_matching,
    involution,
    is_lower_ideal,
    is_upper_ideal,
    is_nbc,
    is_nbc_oracle,
    linear_extension,
    nbc_sets,
    verify_acyclic,
)
from src.checks import CheckResult, failed, passed, skipped
from src.complex import (
    build_complex,
    coloring_sign,
    graded_euler_characteristic,
    verify_balanced,
    verify_d_squared,
    verify_diamond_commutativity,
    verify_morse_hypothesis,
)
from src.config import get_paranoid_max_edges
from src.errors import LinearExtensionError
from src.graph import Graph, components, is_connected
from src.homology import (
    diff_summaries,
    euler_check,
    homology,
    rank_mod_p,
    smith_normal_form,
    support,
)
from src.symfun import (
    bc_cancellation,
    bc_csf_cancellation,
    chromatic_delcon,
    chromatic_nbc,
    chromatic_statesum,
    count_colorings,
    csf_nbc,
    csf_statesum,
    evaluate,
    pairwise_cancellation,
    specialize_csf,
    substitute_qrank,
)

logger = logging.getLogger(__name__)

DIAMOND_MAX_EDGES = 10
MATCHING_MAX_EDGES = 10
COLORING_MAX_K = 5


def check_matching(g: Graph) -> List[CheckResult]:
    m = build_matching(g)
    bc = list(bc_sets(g))
    results = []

    if 2 * len(m) == len(bc) == 2 ** g.n_edges - sum(1 for _ in nbc_sets(g)) and m.is_vertex_disjoint():
        results.append(passed("matching perfection"))
    else:
        results.append(failed("matching perfection", f"{len(m)} pairs for {len(bc)} BC states"))

    witness = None
    for s in bc:
        t = involution(g, s)
        if involution(g, t) != s or components(g, s) != components(g, t):
            witness = s
            break
    if witness is None:
        results.append(passed("involution and partition preservation"))
    else:
        results.append(failed("involution and partition preservation", witness))

    results.append(verify_acyclic(g, m, states=bc))
    try:
        linear_extension(g, m)
        results.append(passed("linear extension"))
    except LinearExtensionError as e:
        results.append(failed("linear extension", e))
    results.append(pairwise_cancellation(g, m))
    return results


def check_chromatic(g: Graph) -> List[CheckResult]:
    results = []
    statesum = chromatic_statesum(g)
    nbc = chromatic_nbc(g)
    delcon = chromatic_delcon(g)
    if statesum == nbc == delcon:
        results.append(passed("chromatic three-way agreement"))
    else:
        results.append(failed(
            "chromatic three-way agreement",
            f"statesum={statesum.as_expr()} nbc={nbc.as_expr()} delcon={delcon.as_expr()}",
        ))

    bad = [k for k in range(COLORING_MAX_K + 1) if evaluate(statesum, k) != count_colorings(g, k)]
    if bad:
        results.append(failed("coloring counts", f"k={bad[0]}"))
    else:
        results.append(passed("coloring counts"))

    if bc_cancellation(g).is_zero:
        results.append(passed("Whitney cancellation (chromatic)"))
    else:
        results.append(failed("Whitney cancellation (chromatic)", bc_cancellation(g).as_expr()))

    csf = csf_statesum(g)
    if csf != csf_nbc(g) or not bc_csf_cancellation(g).is_zero():
        results.append(failed("Whitney cancellation (symmetric)", bc_csf_cancellation(g)))
    else:
        results.append(passed("Whitney cancellation (symmetric)"))

    bad = [k for k in range(COLORING_MAX_K + 1) if specialize_csf(csf, k) != evaluate(statesum, k)]
    if bad:
        results.append(failed("symmetric function specialization", f"k={bad[0]}"))
    else:
        results.append(passed("symmetric function specialization"))
    return results


def check_homology(g: Graph, a: GradedAlgebra, level="fast") -> List[CheckResult]:
    results = []
    full = build_complex(g, a, "full")
    nbc = build_complex(g, a, "nbc")
    results.append(verify_d_squared(full))
    results.append(verify_d_squared(nbc))

    h_full = homology(full)
    h_nbc = homology(nbc)
    diff = diff_summaries(h_full, h_nbc)
    if diff:
        results.append(failed("homology full = nbc", diff[0]))
    else:
        results.append(passed("homology full = nbc"))

    results.append(euler_check(h_full, full))
    results.append(euler_check(h_nbc, nbc))
    expected = substitute_qrank(chromatic_statesum(g), qrank(a))
    if graded_euler_characteristic(full) == graded_euler_characteristic(nbc) == expected:
        results.append(passed("Euler characteristic = chi_G(qrank A)"))
    else:
        results.append(failed("Euler characteristic = chi_G(qrank A)", expected.as_expr()))

    results.append(verify_morse_hypothesis(g, a, build_matching(g)))

    if is_connected(g) and g.n_vertices > 0:
        bound = g.n_vertices - 1
        span = support(h_full)
        too_big = [st.subset for st in nbc.states if st.degree > bound]
        if too_big:
            results.append(failed("support bound", f"NBC state {too_big[0]} has more than {bound} edges"))
        elif span is not None and (span.i_min < 0 or span.i_max > bound):
            results.append(failed("support bound", span))
        else:
            results.append(passed("support bound"))
    else:
        results.append(skipped("support bound", "graph is not connected"))

    if level == "paranoid":
        results.extend(check_paranoid(g, a, full))
    return results


def check_paranoid(g: Graph, a: GradedAlgebra, full=None) -> List[CheckResult]:
    results = []
    if g.n_edges <= get_paranoid_max_edges():
        circuits = broken_circuits_oracle(g)
        nbc = set(nbc_sets(g))
        witness = None
        for s in list(nbc) + list(bc_sets(g)):
            if is_nbc_oracle(g, s, circuits) != (s in nbc) or is_nbc(g, s) != (s in nbc):
                witness = s
                break
        if witness is None:
            results.append(passed("NBC membership against cycle enumeration"))
        else:
            results.append(failed("NBC membership against cycle enumeration", witness))
    else:
        results.append(skipped("NBC membership against cycle enumeration", f"more than {get_paranoid_max_edges()} edges"))

    results.append(CheckResult("NBC is a lower order ideal", is_lower_ideal(nbc_sets(g))))
    results.append(CheckResult("BC is an upper order ideal", is_upper_ideal(g, bc_sets(g))))

    bc_homology = homology(build_complex(g, a, "bc"))
    if bc_homology.is_zero():
        results.append(passed("BC complex is acyclic"))
    else:
        results.append(failed("BC complex is acyclic", bc_homology.bigrades()[0]))

    above = homology(build_complex(g, a, "full", convention="above"))
    if full is None:
        full = build_complex(g, a, "full")
    if diff_summaries(above, homology(full)):
        results.append(failed("coloring independence", "sign conventions give different homology"))
    else:
        results.append(passed("coloring independence"))

    witness = None
    for (i, j) in full.bigrades():
        d = full.differential(i, j)
        rank = d.rank() if 0 not in d.shape else 0
        if smith_normal_form(d).rank != rank or rank_mod_p(d) > rank:
            witness = (i, j)
            break
    if witness is None:
        results.append(passed("SNF rank = rational rank >= rank mod p"))
    else:
        results.append(failed("SNF rank = rational rank >= rank mod p", witness))
    return results


def run_suite(g: Graph, a: GradedAlgebra, level="fast", sign=coloring_sign) -> List[CheckResult]:
    """
    Run every certified property on one graph

    Args:
        g: graph
        a: algebra for the homological checks
        level: "fast" or "paranoid"
        sign: coloring used by the balanced-coloring check

    Returns:
        list of CheckResult, one per property
    """
    results = [verify_balanced(g, sign)]
    if g.n_edges <= DIAMOND_MAX_EDGES:
        results.append(verify_diamond_commutativity(g, a))
    else:
        results.append(skipped("diamond commutativity", f"more than {DIAMOND_MAX_EDGES} edges"))

    if g.n_edges <= MATCHING_MAX_EDGES:
        results.extend(check_matching(g))
    else:
        results.append(skipped("matching soundness", f"more than {MATCHING_MAX_EDGES} edges"))

    results.extend(check_chromatic(g))
    results.extend(check_homology(g, a, level))

    failures = [r for r in results if not r]
    logger.debug("%s over %s: %d checks, %d failures", g, a, len(results), len(failures))
    return results
