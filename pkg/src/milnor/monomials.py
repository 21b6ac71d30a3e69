"""Exponent vectors and graded monomial bases.

Monomials in ``num_vars`` variables x0, x1, ... are exponent tuples.  The
graded piece of degree k is enumerated in graded lexicographic order with
x0 > x1 > ... (largest first), and that order is the row/column order used
by every matrix in the package.
"""

from __future__ import annotations

from functools import lru_cache
from math import comb


class Monomial(tuple):
    """Exponent vector of a power product, e.g. (1, 0, 2) for x0*x2^2."""

    __slots__ = ()

    @property
    def degree(self) -> int:
        return sum(self)

    def __mul__(self, other):
        if len(self) != len(other):
            raise ValueError("monomials live in different rings")
        return Monomial(a + b for a, b in zip(self, other))

    def divides(self, other) -> bool:
        return all(a <= b for a, b in zip(self, other))

    def __repr__(self) -> str:
        return f"Monomial{tuple(self)!r}"


def unit_monomial(num_vars: int, i: int, e: int = 1) -> Monomial:
    """The monomial x_i^e."""
    if not 0 <= i < num_vars:
        raise ValueError(f"variable index {i} out of range for {num_vars} variables")
    return Monomial(e if j == i else 0 for j in range(num_vars))


@lru_cache(maxsize=None)
def monomials_of_degree(num_vars: int, degree: int) -> tuple[Monomial, ...]:
    """All monomials of the given total degree, graded-lex descending.

    The first element is x0^degree, the last is x_{num_vars-1}^degree.
    """
    if num_vars < 1:
        raise ValueError("need at least one variable")
    if degree < 0:
        return ()
    if num_vars == 1:
        return (Monomial((degree,)),)
    out = []
    for e in range(degree, -1, -1):
        for rest in monomials_of_degree(num_vars - 1, degree - e):
            out.append(Monomial((e,) + rest))
    return tuple(out)


@lru_cache(maxsize=None)
def monomial_index(num_vars: int, degree: int) -> dict[Monomial, int]:
    """Position of each degree-k monomial in monomials_of_degree(num_vars, k)."""
    return {m: i for i, m in enumerate(monomials_of_degree(num_vars, degree))}


def num_monomials(num_vars: int, degree: int) -> int:
    """dim of the degree-k graded piece, C(num_vars - 1 + k, k)."""
    if degree < 0:
        return 0
    return comb(num_vars - 1 + degree, degree)
