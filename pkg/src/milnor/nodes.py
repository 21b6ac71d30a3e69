"""Evaluation-based node oracle for Chebyshev hypersurfaces.

Independent second route to the defects: enumerate the nodes of CC(n,d)
with exact coordinates, evaluate monomials at them, and read the defect
off the rank of the evaluation matrix,

    defect S_k(N) = |N| - rank(ev at degree <= k),

using the dictionary between homogeneous degree-k forms and affine
polynomials of degree <= k at x_0 = 1 (every node of CC(n,d) is affine;
the top-degree part is a scaled Fermat form, smooth at infinity).

Node coordinates cos(j*pi/d) live in the cyclotomic field of order 2d as
(zeta^j + zeta^(2d-j))/2, so all arithmetic is exact. Ranks go through a
fast path over prime fields F_p with p = 1 (mod 2d), where the field
embeds by sending zeta to an element of exact multiplicative order 2d;
any modular rank is a lower bound on the true rank, and agreement across
independent primes certifies it. Small matrices are settled outright by
exact cyclotomic elimination, which is authoritative when it runs.

This module never touches the Jacobian-strand route, so agreement between
the two is a genuine end-to-end check.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from math import comb

import numpy as np

from .chebyshev import ChebyshevSpec, build, canonical_spec, critical_tuples
from .domains import CyclotomicElement, CyclotomicField, draw_distinct_primes
from .linalg import BadPrime, rank_dense_modp, rank_gaussian_field
from .monomials import monomials_of_degree
from .poly import SparsePolynomial, partial_derivatives

__all__ = [
    "EvaluationMatrix",
    "InjectivityResult",
    "ModularEmbedding",
    "OracleConfig",
    "affine_monomials",
    "defect_direct",
    "dump_nodes",
    "enumerate_nodes",
    "evaluation_matrix",
    "gradient_check",
    "injectivity_threshold",
    "modular_embedding",
]


def enumerate_nodes(n: int, d: int, k: int | None = None
                    ) -> list[tuple[CyclotomicElement, ...]]:
    """Affine node coordinates of C(n,d,k), canonical shift by default.

    Ordered lexicographically in the critical-index tuples, so the output
    is reproducible. Each coordinate is an exact element of Q(zeta_2d).
    """
    spec = ChebyshevSpec(n, d, k) if k is not None else canonical_spec(n, d)
    fld = CyclotomicField(2 * d)
    cos = {j: fld.cos_root(j, d) for j in range(1, d)}
    return [tuple(cos[j] for j in js)
            for js in critical_tuples(n, d, spec.k)]


def gradient_check(f: SparsePolynomial,
                   nodes: list[tuple[CyclotomicElement, ...]]) -> bool:
    """Exact check that every node annihilates all n+1 partials of f at x0=1."""
    if not nodes:
        return True
    fld = nodes[0][0].field
    one = fld.scalar(1)
    partials = partial_derivatives(f, f.degree)
    for node in nodes:
        point = [one, *node]
        for g in partials:
            if g.evaluate(point):
                return False
    return True


def affine_monomials(n: int, r: int) -> list[tuple[int, ...]]:
    """Exponent tuples of the monomials of degree <= r in n variables.

    Ordered by total degree, then the graded order used everywhere else;
    count is C(n+r, n).
    """
    out: list[tuple[int, ...]] = []
    for t in range(r + 1):
        out.extend(tuple(m) for m in monomials_of_degree(n, t))
    return out


class ModularEmbedding:
    """Ring homomorphism Q(zeta_m) -> F_p for p = 1 (mod m).

    zeta goes to omega, an element of exact multiplicative order m; the
    order is verified, not assumed.
    """

    def __init__(self, fld: CyclotomicField, p: int, rng: random.Random):
        if (p - 1) % fld.order:
            raise BadPrime(f"{p} is not 1 mod {fld.order}")
        self.field = fld
        self.p = p
        m = fld.order
        factors = _prime_factors(m)
        cofactor = (p - 1) // m
        omega = None
        for _ in range(64):
            g = rng.randrange(2, p - 1)
            w = pow(g, cofactor, p)
            if w != 1 and all(pow(w, m // q, p) != 1 for q in factors):
                omega = w
                break
        if omega is None:
            raise BadPrime(f"no element of order {m} found mod {p}")
        self.omega = omega
        # images of the basis powers zeta^0 .. zeta^(phi-1)
        self._basis = [pow(omega, i, p) for i in range(fld.phi)]

    def __call__(self, elem: CyclotomicElement) -> int:
        if elem.field.order != self.field.order:
            raise ValueError("element from a different field")
        p = self.p
        total = 0
        for c, w in zip(elem.coeffs, self._basis):
            if c:
                den = c.denominator % p
                if den == 0:
                    raise BadPrime(f"denominator divisible by {p}")
                total += c.numerator % p * pow(den, -1, p) % p * w
        return total % p


def modular_embedding(fld: CyclotomicField, p: int,
                      rng: random.Random | None = None) -> ModularEmbedding:
    return ModularEmbedding(fld, p, rng or random.Random(0))


def _prime_factors(m: int) -> list[int]:
    out = []
    q = 2
    while q * q <= m:
        if m % q == 0:
            out.append(q)
            while m % q == 0:
                m //= q
        q += 1
    if m > 1:
        out.append(m)
    return out


@dataclass
class EvaluationMatrix:
    """Monomials of degree <= r evaluated at the nodes of C(n,d,k).

    Rows are nodes (lex order in critical-index tuples), columns the
    affine monomials. Entries exist in two forms: exact cyclotomic rows,
    or the image mod a prime p = 1 (mod 2d).
    """

    n: int
    d: int
    k: int
    r: int
    node_tuples: list[tuple[int, ...]]
    field: CyclotomicField
    columns: list[tuple[int, ...]] = dc_field(repr=False, default_factory=list)

    @property
    def num_rows(self) -> int:
        return len(self.node_tuples)

    @property
    def num_cols(self) -> int:
        return len(self.columns)

    def rows_modp(self, p: int, rng: random.Random | None = None) -> np.ndarray:
        emb = modular_embedding(self.field, p, rng)
        cos_img = {j: emb(self.field.cos_root(j, self.d))
                   for j in range(1, self.d)}
        out = np.zeros((self.num_rows, self.num_cols), dtype=np.int64)
        for i, js in enumerate(self.node_tuples):
            powers = [[1] * (self.r + 1) for _ in range(self.n)]
            for v, j in enumerate(js):
                base = cos_img[j]
                for e in range(1, self.r + 1):
                    powers[v][e] = powers[v][e - 1] * base % p
            row = out[i]
            for c, exps in enumerate(self.columns):
                val = 1
                for v, e in enumerate(exps):
                    if e:
                        val = val * powers[v][e] % p
                row[c] = val
        return out

    def rows_exact(self) -> list[list[CyclotomicElement]]:
        cos = {j: self.field.cos_root(j, self.d) for j in range(1, self.d)}
        one = self.field.scalar(1)
        rows = []
        for js in self.node_tuples:
            powers = []
            for j in js:
                col = [one]
                for _ in range(self.r):
                    col.append(col[-1] * cos[j])
                powers.append(col)
            row = []
            for exps in self.columns:
                val = one
                for v, e in enumerate(exps):
                    if e:
                        val = val * powers[v][e]
                row.append(val)
            rows.append(row)
        return rows


def evaluation_matrix(n: int, d: int, r: int,
                      k: int | None = None) -> EvaluationMatrix:
    spec = ChebyshevSpec(n, d, k) if k is not None else canonical_spec(n, d)
    tuples = list(critical_tuples(n, d, spec.k))
    return EvaluationMatrix(n=n, d=d, k=spec.k, r=r, node_tuples=tuples,
                            field=CyclotomicField(2 * d),
                            columns=affine_monomials(n, r))


@dataclass
class OracleConfig:
    """Certification knobs for evaluation-matrix ranks."""

    primes: int = 2
    escalation_primes: int = 5
    seed: int | str = 0
    # exact elimination runs when both caps hold; it is then authoritative
    exact_cols: int = 500
    exact_cells: int = 4000


@dataclass
class OracleRank:
    rank: int
    primes: list[int]
    ranks: list[int]
    certified: bool
    exact_verified: bool


def _evaluation_rank(matrix: EvaluationMatrix, config: OracleConfig,
                     salt: str) -> OracleRank:
    if matrix.num_rows == 0 or matrix.num_cols == 0:
        return OracleRank(0, [], [], True, True)
    rng = random.Random(f"{config.seed}|{salt}")
    exact_ok = (matrix.num_cols <= config.exact_cols
                and matrix.num_rows * matrix.num_cols <= config.exact_cells)

    primes: list[int] = []
    ranks: list[int] = []

    def run_batch(count: int) -> None:
        fresh = draw_distinct_primes(rng, count, modulus=matrix.field.order,
                                     exclude=primes)
        for p in fresh:
            try:
                arr = matrix.rows_modp(p, random.Random(rng.randrange(1 << 62)))
                ranks.append(rank_dense_modp(arr, p))
                primes.append(p)
            except BadPrime:
                continue

    run_batch(config.primes)
    while len(primes) < config.primes:
        run_batch(config.primes - len(primes))
    agreement = len(set(ranks)) == 1
    if not agreement and len(primes) < config.escalation_primes:
        run_batch(config.escalation_primes - len(primes))
        agreement = len(set(ranks)) == 1

    rank = max(ranks)
    exact_verified = False
    if exact_ok:
        rank = rank_gaussian_field(matrix.rows_exact(),
                                   zero=matrix.field.scalar(0))
        exact_verified = True
    certified = exact_verified or (agreement and len(primes) >= 2)
    if not certified:
        raise ArithmeticError(
            f"evaluation rank uncertified: primes {primes} gave ranks {ranks} "
            "and the matrix is too large for exact elimination")
    return OracleRank(rank=rank, primes=primes, ranks=ranks,
                      certified=certified, exact_verified=exact_verified)


def defect_direct(n: int, d: int, degree: int,
                  config: OracleConfig | None = None,
                  k_shift: int | None = None) -> int:
    """defect S_degree(N(n,d)) from the evaluation matrix, certified.

    Canonical CC(n,d) by default; pass k_shift for another singular shift.
    Independent of the Jacobian-strand route.
    """
    if degree < 0:
        raise ValueError("degree must be non-negative")
    config = config or OracleConfig()
    matrix = evaluation_matrix(n, d, degree, k=k_shift)
    salt = f"eval-{n}-{d}-{degree}" if k_shift is None else \
        f"eval-{n}-{d}-{degree}-k{k_shift}"
    res = _evaluation_rank(matrix, config, salt=salt)
    return matrix.num_rows - res.rank


@dataclass
class InjectivityResult:
    """Largest degree r with an injective evaluation map, plus the witness.

    The witness is the x0-partial of the defining equation restricted to
    x0 = 1: degree d-2, vanishes on every node by the chain rule, so it
    certifies non-injectivity one degree above r_star.
    """

    r_star: int
    witness_degree: int
    witness_in_kernel: bool
    certified: bool


def injectivity_threshold(n: int, d: int,
                          config: OracleConfig | None = None) -> InjectivityResult:
    """r* for CC(n,d): evaluation on degree <= r is injective iff r <= r*.

    Injectivity at r* is certified by a full-column-rank witness mod one
    prime (modular rank never exceeds the true rank); failure above r* is
    certified by the exact witness polynomial in the kernel.
    """
    config = config or OracleConfig()
    r = d - 3
    matrix = evaluation_matrix(n, d, r)
    res = _evaluation_rank(matrix, config, salt=f"inj-{n}-{d}")
    if res.rank != matrix.num_cols:
        raise ArithmeticError(
            f"evaluation at degree {r} is not injective for CC({n},{d}); "
            f"rank {res.rank} of {matrix.num_cols} columns")

    f = build(canonical_spec(n, d))
    witness = f.partial_derivative(0).substitute({0: 1})
    nodes = enumerate_nodes(n, d)
    one = nodes[0][0].field.scalar(1) if nodes else None
    in_kernel = all(not witness.evaluate([one, *node]) for node in nodes)
    return InjectivityResult(r_star=r, witness_degree=witness.degree,
                             witness_in_kernel=in_kernel,
                             certified=res.certified)


def dump_nodes(nodes: list[tuple[CyclotomicElement, ...]], fh) -> None:
    """One node per line, coordinates as bracketed coefficient vectors."""
    for node in nodes:
        fh.write(" ".join(c.vector_text() for c in node) + "\n")
