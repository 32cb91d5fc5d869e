"""
Sparse integer matrices as sympy DomainMatrix objects over ZZ.

Builders accumulate entries in a plain {row: {col: value}} dict and hand it
to sympy once. Zero entries are never stored.
"""

from typing import Dict, Iterator, Tuple

from sympy.polys.domains import ZZ
from sympy.polys.matrices import DomainMatrix

Rows = Dict[int, Dict[int, int]]


def accumulate(rows: Rows, i: int, j: int, value: int):
    """Add value into entry (i, j) of a row dict."""
    if not value:
        return
    row = rows.setdefault(i, {})
    total = row.get(j, 0) + value
    if total:
        row[j] = total
    else:
        del row[j]
        if not row:
            del rows[i]


def from_rows(rows: Rows, shape: Tuple[int, int]) -> DomainMatrix:
    n_rows, n_cols = shape
    data = {}
    for i, row in rows.items():
        kept = {}
        for j, value in row.items():
            if not (0 <= i < n_rows and 0 <= j < n_cols):
                raise IndexError(f"entry ({i}, {j}) outside shape {shape}")
            if value:
                kept[j] = ZZ(value)
        if kept:
            data[i] = kept
    return DomainMatrix(data, shape, ZZ)


def from_dense(data, n_cols=None) -> DomainMatrix:
    if n_cols is None:
        n_cols = len(data[0]) if data else 0
    rows = {i: dict(enumerate(row)) for i, row in enumerate(data)}
    return from_rows(rows, (len(data), n_cols))


def zeros(shape: Tuple[int, int]) -> DomainMatrix:
    return from_rows({}, shape)


def identity(n: int) -> DomainMatrix:
    return from_rows({i: {i: 1} for i in range(n)}, (n, n))


def row_dict(m: DomainMatrix) -> Rows:
    """Copy of the nonzero entries as python ints."""
    return {
        i: {j: int(v) for j, v in row.items() if v}
        for i, row in m.to_sparse().rep.items()
        if any(row.values())
    }


def entries(m: DomainMatrix) -> Iterator[Tuple[int, int, int]]:
    rows = row_dict(m)
    for i in sorted(rows):
        for j in sorted(rows[i]):
            yield i, j, rows[i][j]


def is_identity(m: DomainMatrix) -> bool:
    n_rows, n_cols = m.shape
    return n_rows == n_cols and m == identity(n_rows)


def to_dense(m: DomainMatrix):
    return [[int(v) for v in row] for row in m.to_Matrix().tolist()]
