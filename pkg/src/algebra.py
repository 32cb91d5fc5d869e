import itertools
import json
import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, List, Tuple

from sympy import Poly, Symbol
from sympy.polys.domains import ZZ

from src.errors import AlgebraError, ConfigError
from src.sparse import accumulate, from_rows

logger = logging.getLogger(__name__)

Q = Symbol("q")

TensorBasisIndex = Tuple[int, ...]


@dataclass(frozen=True, eq=False)
class GradedAlgebra:
    """
    Finite free graded commutative algebra over the integers

    Args:
        degrees: internal degree of each basis element
        unit: index of the identity basis element
        products: (i, j) -> ((k, c), ...) meaning b_i * b_j = sum c * b_k;
            missing pairs multiply to zero
        name: label used in reports
    """

    degrees: Tuple[int, ...]
    unit: int
    products: Dict[Tuple[int, int], Tuple[Tuple[int, int], ...]] = field(repr=False)
    name: str = "custom"

    @property
    def dim(self):
        return len(self.degrees)

    def multiply(self, i, j):
        return self.products.get((i, j), ())

    def __str__(self):
        return self.name


def _expand(a, terms, j):
    """(sum over terms of c * b_k) * b_j as a coefficient dict."""
    out = {}
    for k, c in terms:
        for n, d in a.multiply(k, j):
            out[n] = out.get(n, 0) + c * d
    return {n: v for n, v in out.items() if v}


def _expand_left(a, i, terms):
    out = {}
    for k, c in terms:
        for n, d in a.multiply(i, k):
            out[n] = out.get(n, 0) + c * d
    return {n: v for n, v in out.items() if v}


def validate_algebra(a: GradedAlgebra) -> GradedAlgebra:
    """
    Check the algebra axioms, raising AlgebraError naming the first one violated

    Returns:
        the algebra, for chaining
    """
    n = a.dim
    if n == 0:
        raise AlgebraError("basis", "algebra has no basis elements")
    if any(d < 0 for d in a.degrees):
        raise AlgebraError("grading", "basis degrees must be non-negative")
    if not 0 <= a.unit < n:
        raise AlgebraError("unit", f"unit index {a.unit} outside [0, {n})")

    for (i, j), terms in a.products.items():
        if not (0 <= i < n and 0 <= j < n):
            raise AlgebraError("basis", f"product key ({i}, {j}) outside [0, {n})")
        for k, c in terms:
            if not 0 <= k < n:
                raise AlgebraError("basis", f"b{i}*b{j} refers to b{k}")
            if c and a.degrees[k] != a.degrees[i] + a.degrees[j]:
                raise AlgebraError(
                    "grading",
                    f"b{i}*b{j} has a b{k} term of degree {a.degrees[k]}, "
                    f"expected {a.degrees[i] + a.degrees[j]}",
                )

    def as_dict(terms):
        out = {}
        for k, c in terms:
            out[k] = out.get(k, 0) + c
        return {k: c for k, c in out.items() if c}

    for i in range(n):
        for j in range(n):
            if as_dict(a.multiply(i, j)) != as_dict(a.multiply(j, i)):
                raise AlgebraError("commutativity", f"b{i}*b{j} != b{j}*b{i}")

    for j in range(n):
        if as_dict(a.multiply(a.unit, j)) != {j: 1}:
            raise AlgebraError("unit", f"1*b{j} != b{j}")

    for i, j, l in itertools.product(range(n), repeat=3):
        left = _expand(a, a.multiply(i, j), l)
        right = _expand_left(a, i, a.multiply(j, l))
        if left != right:
            raise AlgebraError(
                "associativity", f"(b{i}*b{j})*b{l} != b{i}*(b{j}*b{l})"
            )
    return a


def algebra_am(m: int) -> GradedAlgebra:
    """A_m = Z[x]/(x^m) with basis 1, x, ..., x^(m-1) in degrees 0..m-1."""
    if m < 1:
        raise AlgebraError("basis", f"A_m needs m >= 1, got {m}")
    products = {
        (i, j): ((i + j, 1),)
        for i in range(m)
        for j in range(m)
        if i + j < m
    }
    return GradedAlgebra(tuple(range(m)), 0, products, name=f"A_{m}")


def parse_algebra(data: dict, name="custom") -> GradedAlgebra:
    """
    Build an algebra from its JSON form

    Args:
        data: {"degrees": [...], "unit": k, "products": {"i,j": [[k, c], ...]}}

    Returns:
        validated GradedAlgebra
    """
    try:
        degrees = tuple(int(d) for d in data["degrees"])
        unit = int(data["unit"])
        products = {}
        for key, terms in data.get("products", {}).items():
            i, j = (int(part) for part in key.split(","))
            products[(i, j)] = tuple((int(k), int(c)) for k, c in terms)
    except (KeyError, ValueError, TypeError) as e:
        raise AlgebraError("format", f"malformed algebra description: {e}")
    return validate_algebra(GradedAlgebra(degrees, unit, products, name=name))


def load_algebra(path) -> GradedAlgebra:
    path = Path(path)
    try:
        data = json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as e:
        raise AlgebraError("format", f"{path}: {e}")
    except UnicodeDecodeError as e:
        raise AlgebraError("format", f"{path} is not UTF-8 text: {e.reason}")
    except OSError as e:
        raise AlgebraError("format", f"cannot read {path}: {e.strerror}")
    return parse_algebra(data, name=path.stem)


def parse_algebra_spec(spec: str) -> GradedAlgebra:
    """'am:<m>' for the truncated polynomial algebras, anything else is a JSON file."""
    if spec.startswith("am:"):
        try:
            m = int(spec[3:])
        except ValueError:
            raise ConfigError(f"bad algebra spec {spec!r}; expected am:<m>")
        return algebra_am(m)
    if not Path(spec).exists():
        raise ConfigError(f"algebra file {spec!r} not found")
    return load_algebra(spec)


def qrank(a: GradedAlgebra) -> Poly:
    return Poly(sum(Q ** d for d in a.degrees), Q, domain=ZZ)


def tensor_basis(a: GradedAlgebra, k: int) -> List[Tuple[TensorBasisIndex, int]]:
    """All basis tuples of A^{(x)k} in lexicographic order, with total degrees."""
    return [
        (factors, sum(a.degrees[f] for f in factors))
        for factors in itertools.product(range(a.dim), repeat=k)
    ]


def tensor_position(a: GradedAlgebra, factors: TensorBasisIndex) -> int:
    position = 0
    for f in factors:
        position = position * a.dim + f
    return position


def multiply_factors(a, factors, p, r, target=None):
    """
    Image of one basis tensor under multiplying factors p and r

    Args:
        a: algebra
        factors: basis tuple of length k
        p, r: distinct factor positions to multiply
        target: position of the product in the (k-1)-tuple; min(p, r) by default

    Returns:
        list of (basis tuple, coefficient)
    """
    if p == r:
        raise AlgebraError("tensor", "cannot multiply a factor with itself")
    if target is None:
        target = min(p, r)
    rest = [f for pos, f in enumerate(factors) if pos not in (p, r)]
    images = []
    for k, c in a.multiply(factors[p], factors[r]):
        if c:
            images.append((tuple(rest[:target] + [k] + rest[target:]), c))
    return images


def multiplication_matrix(a: GradedAlgebra, k: int, p: int, r: int, target=None):
    """
    Matrix of A^{(x)k} -> A^{(x)(k-1)} multiplying factors p and r

    The product lands at position target (min(p, r) by default, which is
    where the merged component sits when components are ordered by their
    minimum vertex); all other factors pass through unchanged.
    """
    if p == r:
        raise AlgebraError("tensor", "cannot multiply a factor with itself")
    if not (0 <= p < k and 0 <= r < k):
        raise AlgebraError("tensor", f"factor positions ({p}, {r}) outside [0, {k})")
    if target is not None and not 0 <= target < k - 1:
        raise AlgebraError("tensor", f"target position {target} outside [0, {k - 1})")

    rows = {}
    for col, (factors, _) in enumerate(tensor_basis(a, k)):
        for image, c in multiply_factors(a, factors, p, r, target):
            accumulate(rows, tensor_position(a, image), col, c)
    return from_rows(rows, (a.dim ** (k - 1), a.dim ** k))
