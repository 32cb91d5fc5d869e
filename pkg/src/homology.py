import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from math import gcd
from typing import Dict, Optional, Tuple

from sympy import Poly, Symbol
from sympy.polys.domains import ZZ
from sympy.polys.matrices import DomainMatrix

from src.algebra import Q
from src.checks import CheckResult, failed, passed
from src.complex import BasedComplex, assert_d_squared, graded_euler_characteristic
from src.config import get_threads
from src.sparse import from_dense, row_dict

logger = logging.getLogger(__name__)

T = Symbol("t")


@dataclass(frozen=True)
class SmithForm:
    invariant_factors: Tuple[int, ...]

    @property
    def rank(self):
        return len(self.invariant_factors)

    @property
    def torsion(self):
        return tuple(d for d in self.invariant_factors if d > 1)


@dataclass(frozen=True)
class HomologyGroup:
    free: int
    torsion: Tuple[int, ...] = ()

    def __str__(self):
        parts = []
        if self.free:
            parts.append("Z" if self.free == 1 else f"Z^{self.free}")
        parts.extend(f"Z/{d}" for d in self.torsion)
        return " + ".join(parts) or "0"


@dataclass(frozen=True)
class HomologySummary:
    """Nonzero groups keyed by (homological degree i, internal degree j)."""

    groups: Dict[Tuple[int, int], HomologyGroup]

    def group(self, i, j):
        return self.groups.get((i, j), HomologyGroup(0))

    def is_zero(self):
        return not self.groups

    def bigrades(self):
        return sorted(self.groups)


@dataclass(frozen=True)
class Support:
    i_min: int
    i_max: int
    j_min: int
    j_max: int


# -- Smith normal form -------------------------------------------------------

# unit entries inspected per pivot step when looking for low fill-in
UNIT_PIVOT_SAMPLE = 8


class _Elimination:
    """
    Working copy of an integer matrix during fraction-free elimination

    Keeps rows, a column index and the set of +-1 entries in sync, so that
    a unit pivot is found without scanning the matrix.
    """

    def __init__(self, rows):
        self.rows = rows
        self.cols = {}
        self.units = set()
        for i, row in rows.items():
            for j, value in row.items():
                self.cols.setdefault(j, set()).add(i)
                if value in (1, -1):
                    self.units.add((i, j))

    def _set(self, i, j, value):
        self.rows.setdefault(i, {})[j] = value
        self.cols.setdefault(j, set()).add(i)
        if value in (1, -1):
            self.units.add((i, j))
        else:
            self.units.discard((i, j))

    def _clear(self, i, j):
        del self.rows[i][j]
        self.cols[j].discard(i)
        self.units.discard((i, j))
        if not self.cols[j]:
            del self.cols[j]

    def axpy(self, target, source, t):
        """rows[target] += t * rows[source]"""
        row = self.rows[target]
        for j, value in self.rows[source].items():
            new = row.get(j, 0) + t * value
            if new:
                self._set(target, j, new)
            elif j in row:
                self._clear(target, j)
        if not row:
            del self.rows[target]

    def remove(self, r):
        for j in self.rows.pop(r):
            self.cols[j].discard(r)
            self.units.discard((r, j))
            if not self.cols[j]:
                del self.cols[j]

    def markowitz(self, i, j):
        return (len(self.rows[i]) - 1) * (len(self.cols[j]) - 1)

    def unit_pivot(self):
        """A +-1 entry of low Markowitz cost among the first few found."""
        best = None
        for n, (i, j) in enumerate(self.units):
            key = (self.markowitz(i, j), i, j)
            if best is None or key < best:
                best = key
            if key[0] == 0 or n + 1 >= UNIT_PIVOT_SAMPLE:
                break
        return best[1], best[2]

    def eliminate_unit(self, r, c):
        """
        Clear row r and column c around a +-1 pivot

        Column c is cleared by row operations; afterwards it holds the pivot
        alone, so the column operations that clear row r touch no other row
        and the row can simply be dropped.
        """
        v = self.rows[r][c]
        for k in list(self.cols[c] - {r}):
            self.axpy(k, r, -self.rows[k][c] * v)
        self.remove(r)

    def smallest_pivot(self):
        """Entry of minimal absolute value; ties broken by Markowitz cost, then position."""
        best = None
        for i, row in self.rows.items():
            for j, value in row.items():
                key = (abs(value), self.markowitz(i, j), i, j)
                if best is None or key < best:
                    best = key
        return best[2], best[3]

    def reduce(self, r, c):
        """
        Clear row r and column c around a general pivot (r, c)

        Remainders smaller than the pivot become the new pivot, so the loop
        ends after finitely many steps with a lone diagonal entry.

        Returns:
            the final pivot (row, col)
        """
        while True:
            v = self.rows[r][c]
            moved = False
            for k in sorted(self.cols[c] - {r}):
                self.axpy(k, r, -(self.rows[k][c] // v))
                if k in self.rows and c in self.rows[k]:
                    r = k
                    moved = True
                    break
            if moved:
                continue

            # column c now holds only the pivot, so column operations touch row r alone
            for j in sorted(self.rows[r]):
                if j == c:
                    continue
                remainder = self.rows[r][j] % v
                if remainder:
                    self._set(r, j, remainder)
                    c = j
                    moved = True
                    break
                self._clear(r, j)
            if not moved:
                return r, c


def _to_divisibility_chain(diagonal):
    """Unit factors pass through; the rest are exchanged pairwise by gcd and lcm."""
    ones = [d for d in diagonal if d == 1]
    d = sorted(x for x in diagonal if x != 1)
    for a in range(len(d)):
        for b in range(a + 1, len(d)):
            g = gcd(d[a], d[b])
            d[a], d[b] = g, d[a] // g * d[b]
    return tuple(sorted(ones + d))


def _as_domain_matrix(m) -> DomainMatrix:
    if isinstance(m, DomainMatrix):
        return m
    return from_dense(m)


def smith_normal_form(m) -> SmithForm:
    """
    Invariant factors of an integer matrix

    Fraction-free elimination on the sparse rows of a DomainMatrix. A +-1
    entry already has minimal absolute value and clears its row and column
    without remainder steps, so units are taken first; only when none is
    left does the pivot fall back to a scan for the smallest entry. The resulting diagonal is normalised into a divisibility
    chain with gcd/lcm exchanges.

    Args:
        m: DomainMatrix over ZZ or list of integer rows

    Returns:
        SmithForm with the nonzero invariant factors
    """
    work = _Elimination(row_dict(_as_domain_matrix(m)))
    diagonal = []
    while work.rows:
        if work.units:
            work.eliminate_unit(*work.unit_pivot())
            diagonal.append(1)
            continue
        r, c = work.reduce(*work.smallest_pivot())
        diagonal.append(abs(work.rows[r][c]))
        work.remove(r)
    return SmithForm(_to_divisibility_chain(diagonal))


def rank_mod_p(m, p=2_147_483_647) -> int:
    """Rank over GF(p); never exceeds the rational rank."""
    rows = [
        {j: v % p for j, v in row.items() if v % p}
        for row in row_dict(_as_domain_matrix(m)).values()
    ]
    rows = [row for row in rows if row]
    rank = 0
    while rows:
        pivot_row = rows.pop()
        if not pivot_row:
            continue
        c, v = min(pivot_row.items())
        inv = pow(v, -1, p)
        rank += 1
        remaining = []
        for row in rows:
            a = row.get(c)
            if a:
                factor = a * inv % p
                for j, b in pivot_row.items():
                    new = (row.get(j, 0) - factor * b) % p
                    if new:
                        row[j] = new
                    else:
                        row.pop(j, None)
            if row:
                remaining.append(row)
        rows = remaining
    return rank


# -- homology ----------------------------------------------------------------


def homology_by_degree(c: BasedComplex, j: int) -> Dict[Tuple[int, int], HomologyGroup]:
    """Homology in internal degree j; the differential preserves j."""
    degrees = [i for i in c.homological_degrees() if c.dim(i, j)]
    forms = {i: smith_normal_form(c.differential(i, j)) for i in degrees}
    groups = {}
    for i in degrees:
        incoming = forms.get(i - 1, SmithForm(()))
        free = c.dim(i, j) - forms[i].rank - incoming.rank
        if free or incoming.torsion:
            groups[(i, j)] = HomologyGroup(free, incoming.torsion)
    logger.debug("internal degree %d: %d nonzero groups", j, len(groups))
    return groups


def homology(c: BasedComplex, threads: Optional[int] = None) -> HomologySummary:
    """
    Bigraded integral homology of a based complex

    Raises:
        ChainComplexError: when d^2 != 0 at some bigrade
    """
    assert_d_squared(c)
    if threads is None:
        threads = get_threads()
    degrees = c.internal_degrees()
    groups = {}
    if threads > 1 and len(degrees) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            for part in pool.map(lambda j: homology_by_degree(c, j), degrees):
                groups.update(part)
    else:
        for j in degrees:
            groups.update(homology_by_degree(c, j))
    return HomologySummary(dict(sorted(groups.items())))


def euler_of_homology(h: HomologySummary) -> Poly:
    total = 0
    for (i, j), group in h.groups.items():
        total += (-1) ** i * group.free * Q ** j
    return Poly(total, Q, domain=ZZ)


def euler_check(h: HomologySummary, c: BasedComplex) -> CheckResult:
    ours = euler_of_homology(h)
    expected = graded_euler_characteristic(c)
    if ours != expected:
        return failed("Euler characteristic of homology", f"{ours.as_expr()} != {expected.as_expr()}")
    return passed("Euler characteristic of homology")


def support(h: HomologySummary) -> Optional[Support]:
    """Extreme nonzero bigrades, or None for the zero summary."""
    if h.is_zero():
        return None
    i_values = [i for i, _ in h.groups]
    j_values = [j for _, j in h.groups]
    return Support(min(i_values), max(i_values), min(j_values), max(j_values))


def poincare_polynomial(h: HomologySummary) -> Poly:
    total = 0
    for (i, j), group in h.groups.items():
        total += group.free * T ** i * Q ** j
    return Poly(total, T, Q, domain=ZZ)


def torsion_table(h: HomologySummary):
    return {key: group.torsion for key, group in h.groups.items() if group.torsion}


def diff_summaries(first: HomologySummary, second: HomologySummary):
    """Bigrades where the two summaries disagree, with both groups."""
    keys = sorted(set(first.groups) | set(second.groups))
    return [
        {"i": i, "j": j, "first": str(first.group(i, j)), "second": str(second.group(i, j))}
        for i, j in keys
        if first.group(i, j) != second.group(i, j)
    ]
