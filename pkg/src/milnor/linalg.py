"""Exact rank computation for graded Jacobian strands.

The degree-k strand of a Jacobian ideal is the linear map
(h_0, ..., h_n) -> sum h_i * f_i from (n+1) copies of the degree k-d+1
graded piece into the degree-k piece.  Ranks are computed modulo several
random 31-bit primes; ranks mod p never exceed the rational rank, so the
maximum over primes is a certified lower bound, and agreement across
independent primes certifies the value (escalating to more primes and then
to exact fraction-free elimination on disagreement).

Engines:
  * dense mod-p elimination, blocked so the trailing updates run as
    16-bit-split float64 BLAS matmuls (exact for p < 2^31);
  * sparse Markowitz elimination that escapes to the dense kernel when the
    active submatrix fills in;
  * Wiedemann/Berlekamp-Massey blackbox for very large sparse inputs
    (Monte Carlo; still a lower bound, used beyond the nnz cutoff);
  * fraction-free Bareiss elimination over the integers (exact, authoritative).
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm

import numpy as np

from .domains import RATIONALS, draw_distinct_primes
from .monomials import monomial_index, monomials_of_degree, num_monomials

PRIME_LO = 1 << 30
PRIME_HI = 1 << 31


class BadPrime(Exception):
    """The prime divides a denominator; draw another one."""


# -- strand matrices -----------------------------------------------------------


@dataclass
class StrandMatrix:
    """Sparse exact matrix with its graded provenance (k, d, n) attached."""

    num_rows: int
    num_cols: int
    entries: list  # (row, col, value) with value int or Fraction
    k: int | None = None
    d: int | None = None
    n: int | None = None

    @property
    def nnz(self) -> int:
        return len(self.entries)

    def dense_modp(self, p: int) -> np.ndarray:
        out = np.zeros((self.num_rows, self.num_cols), dtype=np.int64)
        for r, c, v in self.entries:
            out[r, c] = (out[r, c] + _residue(v, p)) % p
        return out

    def triples_modp(self, p: int):
        rows = np.empty(len(self.entries), dtype=np.int64)
        cols = np.empty(len(self.entries), dtype=np.int64)
        vals = np.empty(len(self.entries), dtype=np.int64)
        for i, (r, c, v) in enumerate(self.entries):
            rows[i] = r
            cols[i] = c
            vals[i] = _residue(v, p)
        return rows, cols, vals


def _residue(value, p: int) -> int:
    if isinstance(value, int):
        return value % p
    if isinstance(value, Fraction):
        den = value.denominator % p
        if den == 0:
            raise BadPrime(f"{p} divides a denominator")
        return value.numerator % p * pow(den, -1, p) % p
    raise TypeError(f"unsupported entry type {type(value).__name__}")


def jacobian_strand_matrix(partials, k: int, domain=RATIONALS) -> StrandMatrix:
    """Matrix of the degree-k strand in the monomial bases.

    Rows are the degree-k monomials (graded-lex order).  Column i*M + j
    multiplies generator i by the j-th degree k-d+1 monomial.
    """
    if not partials:
        raise ValueError("no generators")
    num_vars = partials[0].num_vars
    degrees = {g.degree for g in partials if not g.is_zero}
    if not degrees:
        raise ValueError("all generators are zero")
    if len(degrees) > 1:
        raise ValueError(f"generators of mixed degrees {sorted(degrees)}")
    gen_degree = degrees.pop()
    d = gen_degree + 1
    n = num_vars - 1
    mult_degree = k - gen_degree
    multipliers = monomials_of_degree(num_vars, mult_degree) if mult_degree >= 0 else ()
    num_rows = num_monomials(num_vars, k)
    num_cols = len(partials) * len(multipliers)
    entries = []
    if num_cols:
        row_of = monomial_index(num_vars, k)
        for i, gen in enumerate(partials):
            base = i * len(multipliers)
            terms = [(tuple(m), domain.coerce(c)) for m, c in gen.sorted_terms()]
            for j, mult in enumerate(multipliers):
                col = base + j
                for mono, coeff in terms:
                    # plain tuple addition; the index dict accepts raw tuples
                    row = row_of[tuple(x + y for x, y in zip(mult, mono))]
                    entries.append((row, col, coeff))
    return StrandMatrix(num_rows, num_cols, entries, k=k, d=d, n=n)


# -- dump / load ----------------------------------------------------------------


def dump_matrix(matrix: StrandMatrix, fh, modulus: int = 0) -> None:
    """Text sparse-triple dump: header `rows cols nnz modulus`, 0-indexed triples."""
    fh.write(f"{matrix.num_rows} {matrix.num_cols} {matrix.nnz} {modulus}\n")
    for r, c, v in matrix.entries:
        value = _residue(v, modulus) if modulus else v
        fh.write(f"{r} {c} {value}\n")


def load_matrix(fh) -> tuple[StrandMatrix, int]:
    header = fh.readline().split()
    if len(header) != 4:
        raise ValueError("malformed header, expected `rows cols nnz modulus`")
    num_rows, num_cols, nnz, modulus = (int(x) for x in header)
    entries = []
    for _ in range(nnz):
        parts = fh.readline().split()
        if len(parts) != 3:
            raise ValueError("malformed triple line")
        r, c = int(parts[0]), int(parts[1])
        v = Fraction(parts[2]) if "/" in parts[2] else int(parts[2])
        if not 0 <= r < num_rows or not 0 <= c < num_cols:
            raise ValueError(f"index ({r}, {c}) out of bounds")
        entries.append((r, c, v))
    return StrandMatrix(num_rows, num_cols, entries), modulus


# -- dense mod-p kernel -----------------------------------------------------------


def matmul_modp(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    """Exact (a @ b) mod p for int64 inputs reduced mod p < 2^31.

    Splits each factor into 16-bit halves so the three float64 matmuls stay
    below 2^53; requires the inner dimension to be at most 2^20.
    """
    if a.shape[1] != b.shape[0]:
        raise ValueError("shape mismatch")
    if a.shape[1] == 0:
        return np.zeros((a.shape[0], b.shape[1]), dtype=np.int64)
    if a.shape[1] > 1 << 20:
        raise ValueError("inner dimension too large for the split trick")
    ah = (a >> 16).astype(np.float64)
    al = (a & 0xFFFF).astype(np.float64)
    bh = (b >> 16).astype(np.float64)
    bl = (b & 0xFFFF).astype(np.float64)
    hh = (ah @ bh).astype(np.int64)
    mid = (ah @ bl + al @ bh).astype(np.int64)
    ll = (al @ bl).astype(np.int64)
    out = (hh % p) * ((1 << 32) % p) % p
    out += (mid % p) * ((1 << 16) % p) % p
    out += ll % p
    return out % p


def rank_dense_modp(a: np.ndarray, p: int, block: int = 48,
                    chunk: int = 2048) -> int:
    """Rank of an int64 matrix mod p; entries must already lie in [0, p).

    Right-looking blocked elimination with full row pivot swaps; the panel is
    eliminated with vectorized row operations and the trailing block is
    updated with exact split-float64 matmuls.  The input array is destroyed.
    """
    m, n = a.shape
    r = 0
    c0 = 0
    while c0 < n and r < m:
        c1 = min(c0 + block, n)
        rs = r
        pivot_cols: list[int] = []
        for c in range(c0, c1):
            col = a[r:, c]
            nz = np.nonzero(col)[0]
            if nz.size == 0:
                continue
            i = r + int(nz[0])
            if i != r:
                a[[r, i]] = a[[i, r]]
            if pivot_cols:
                # bring the trailing part of the new pivot row up to date
                f = a[r, pivot_cols]
                if np.any(f):
                    a[r, c1:] = (a[r, c1:] - matmul_modp(
                        f[None, :], a[rs:r, c1:], p)[0]) % p
            inv = pow(int(a[r, c]), -1, p)
            a[r, c:] = a[r, c:] * inv % p
            if r + 1 < m:
                fcol = a[r + 1 :, c]
                nzr = np.nonzero(fcol)[0]
                if nzr.size:
                    rows_nz = nzr + r + 1
                    factors = fcol[nzr].copy()  # fcol is a view into a
                    a[rows_nz, c:c1] = (
                        a[rows_nz, c:c1] - factors[:, None] * a[r, c:c1][None, :]
                    ) % p
                    a[rows_nz, c] = factors  # keep factors for the block update
            pivot_cols.append(c)
            r += 1
        if pivot_cols and c1 < n and r < m:
            low = a[r:, pivot_cols]
            if np.any(low):
                for s0 in range(c1, n, chunk):
                    s1 = min(s0 + chunk, n)
                    prod = matmul_modp(low, a[rs:r, s0:s1], p)
                    a[r:, s0:s1] = (a[r:, s0:s1] - prod) % p
        c0 = c1
    return r


# -- sparse Markowitz elimination ---------------------------------------------------


def rank_sparse_modp(num_rows: int, num_cols: int, rows_idx, cols_idx, vals,
                     p: int, escape_density: float = 0.04,
                     escape_cols: int = 700) -> int:
    """Markowitz-pivoted sparse elimination mod p with a dense escape hatch.

    Pivots greedily by Markowitz cost (nnz_row - 1) * (nnz_col - 1) over the
    lightest columns, tie-broken by lowest (row, col).  When the active part
    fills in or shrinks it is handed to the dense kernel.
    """
    rows: list[dict[int, int] | None] = [dict() for _ in range(num_rows)]
    for r, c, v in zip(rows_idx, cols_idx, vals):
        r = int(r)
        c = int(c)
        v = int(v)
        row = rows[r]
        acc = (row.get(c, 0) + v) % p
        if acc:
            row[c] = acc
        else:
            row.pop(c, None)
    col_rows: list[set[int]] = [set() for _ in range(num_cols)]
    for r, row in enumerate(rows):
        for c in row:
            col_rows[c].add(r)
    alive_cols = set(c for c in range(num_cols) if col_rows[c])
    live_rows = sum(1 for row in rows if row)
    nnz = sum(len(row) for row in rows if row)
    rank = 0
    while alive_cols and live_rows:
        # drop columns emptied by cancellation, lazily
        min_count = min(len(col_rows[c]) for c in alive_cols)
        if min_count == 0:
            alive_cols = {c for c in alive_cols if col_rows[c]}
            continue
        density = nnz / (live_rows * len(alive_cols))
        if len(alive_cols) <= escape_cols or density > escape_density:
            rank += _dense_escape(rows, alive_cols, p)
            return rank
        # lightest columns first; among them pick the cheapest entry
        candidates = sorted(c for c in alive_cols if len(col_rows[c]) == min_count)
        best = None
        for c in candidates[:16]:
            for r in col_rows[c]:
                cost = (len(rows[r]) - 1) * (min_count - 1)
                key = (cost, r, c)
                if best is None or key < best:
                    best = key
        _, r0, c0 = best
        pivot_row = rows[r0]
        inv = pow(pivot_row[c0], -1, p)
        pivot_items = [(c, v * inv % p) for c, v in pivot_row.items()]
        for r in list(col_rows[c0]):
            if r == r0:
                continue
            row = rows[r]
            factor = row[c0]
            for c, v in pivot_items:
                acc = (row.get(c, 0) - factor * v) % p
                if acc:
                    if c not in row:
                        col_rows[c].add(r)
                        nnz += 1
                    row[c] = acc
                elif c in row:
                    del row[c]
                    col_rows[c].discard(r)
                    nnz -= 1
            if not row:
                rows[r] = None
                live_rows -= 1
        # retire the pivot row and column
        for c in pivot_row:
            col_rows[c].discard(r0)
        nnz -= len(pivot_row)
        rows[r0] = None
        live_rows -= 1
        alive_cols.discard(c0)
        rank += 1
    return rank


def _dense_escape(rows, alive_cols, p: int) -> int:
    col_list = sorted(alive_cols)
    col_pos = {c: i for i, c in enumerate(col_list)}
    live = [row for row in rows if row]
    a = np.zeros((len(live), len(col_list)), dtype=np.int64)
    for i, row in enumerate(live):
        for c, v in row.items():
            a[i, col_pos[c]] = v
    return rank_dense_modp(a, p)


# -- Wiedemann blackbox ---------------------------------------------------------------


def _csr_arrays(num_rows: int, rows_idx, cols_idx, vals):
    order = np.lexsort((cols_idx, rows_idx))
    rs = np.asarray(rows_idx, dtype=np.int64)[order]
    cs = np.asarray(cols_idx, dtype=np.int64)[order]
    vs = np.asarray(vals, dtype=np.int64)[order]
    indptr = np.searchsorted(rs, np.arange(num_rows + 1))
    return indptr, cs, vs


def _csr_matvec_modp(indptr, indices, data, v, p: int) -> np.ndarray:
    # products reduced before the segment sums so int64 never overflows
    t = data * v[indices] % p
    csum = np.concatenate((np.zeros(1, dtype=np.int64), np.cumsum(t)))
    return (csum[indptr[1:]] - csum[indptr[:-1]]) % p


def berlekamp_massey_modp(seq, p: int) -> np.ndarray:
    """Minimal LFSR connection polynomial of seq over F_p, low degree first."""
    s = np.asarray(seq, dtype=np.int64) % p
    cpoly = np.zeros(len(s) + 1, dtype=np.int64)
    bpoly = np.zeros(len(s) + 1, dtype=np.int64)
    cpoly[0] = bpoly[0] = 1
    length = 0
    m = 1
    b = 1
    for i in range(len(s)):
        if length:
            window = s[i - length : i][::-1]
            delta = (int(s[i]) + int(np.sum(cpoly[1 : length + 1] * window % p))) % p
        else:
            delta = int(s[i]) % p
        if delta == 0:
            m += 1
        elif 2 * length <= i:
            told = cpoly.copy()
            coef = delta * pow(b, -1, p) % p
            cpoly[m : len(s) + 1] = (cpoly[m : len(s) + 1] - coef * bpoly[: len(s) + 1 - m]) % p
            length = i + 1 - length
            bpoly = told
            b = delta
            m = 1
        else:
            coef = delta * pow(b, -1, p) % p
            cpoly[m : len(s) + 1] = (cpoly[m : len(s) + 1] - coef * bpoly[: len(s) + 1 - m]) % p
            m += 1
    return cpoly[: length + 1]


def rank_blackbox_modp(num_rows: int, num_cols: int, rows_idx, cols_idx, vals,
                       p: int, rng, trials: int = 2) -> int:
    """Monte Carlo Wiedemann rank mod p; never exceeds the true rank.

    Preconditions A to B = D2 A^T D1^2 A D2 with random diagonals; the degree
    of the minimal generating polynomial of u^T B^i v (minus one when x
    divides it) is, with high probability, rank(A).
    """
    indptr, idx, dat = _csr_arrays(num_rows, rows_idx, cols_idx, vals)
    indptr_t, idx_t, dat_t = _csr_arrays(num_cols, cols_idx, rows_idx, vals)
    size = num_cols
    best = 0
    for _ in range(trials):
        d1 = np.array([rng.randrange(1, p) for _ in range(num_rows)], dtype=np.int64)
        d2 = np.array([rng.randrange(1, p) for _ in range(num_cols)], dtype=np.int64)
        d1sq = d1 * d1 % p
        u = np.array([rng.randrange(p) for _ in range(size)], dtype=np.int64)
        v = np.array([rng.randrange(p) for _ in range(size)], dtype=np.int64)

        def apply_b(x):
            y = d2 * x % p
            y = _csr_matvec_modp(indptr, idx, dat, y, p)
            y = d1sq * y % p
            y = _csr_matvec_modp(indptr_t, idx_t, dat_t, y, p)
            return d2 * y % p

        seq = np.empty(2 * size + 2, dtype=np.int64)
        x = v
        for i in range(len(seq)):
            seq[i] = np.sum(u * x % p) % p
            x = apply_b(x)
        gen = berlekamp_massey_modp(seq, p)
        degree = len(gen) - 1
        # trailing coefficient of the reversed generator = constant term of minpoly
        estimate = degree - 1 if degree and gen[degree] == 0 else degree
        best = max(best, estimate)
    return best


# -- exact fraction-free elimination ---------------------------------------------------


def rank_exact(matrix: StrandMatrix) -> int:
    """Rank over the rationals by integer fraction-free (Bareiss) elimination."""
    m, n = matrix.num_rows, matrix.num_cols
    if m == 0 or n == 0 or not matrix.entries:
        return 0
    dense: list[list] = [[0] * n for _ in range(m)]
    for r, c, v in matrix.entries:
        dense[r][c] += v
    for r in range(m):
        row = dense[r]
        dens = [v.denominator for v in row if isinstance(v, Fraction)]
        if dens:
            scale = lcm(*dens)
            dense[r] = [int(v * scale) for v in row]
        else:
            dense[r] = [int(v) for v in row]
    rank = 0
    prev = 1
    for c in range(n):
        pivot = None
        for r in range(rank, m):
            if dense[r][c]:
                pivot = r
                break
        if pivot is None:
            continue
        if pivot != rank:
            dense[rank], dense[pivot] = dense[pivot], dense[rank]
        prow = dense[rank]
        pval = prow[c]
        for r in range(rank + 1, m):
            row = dense[r]
            rval = row[c]
            if rval:
                for j in range(c + 1, n):
                    q, rem = divmod(row[j] * pval - rval * prow[j], prev)
                    if rem:
                        raise ArithmeticError("fraction-free division failed")
                    row[j] = q
                row[c] = 0
            else:
                for j in range(c + 1, n):
                    q, rem = divmod(row[j] * pval, prev)
                    if rem:
                        raise ArithmeticError("fraction-free division failed")
                    row[j] = q
        prev = pval
        rank += 1
        if rank == m:
            break
    return rank


def rank_gaussian_field(rows: list[list], zero=None) -> int:
    """Rank of a dense matrix over any exact field via plain elimination.

    Entries need ring operators, truthiness as the zero test, and division.
    """
    rows = [list(r) for r in rows]
    if not rows:
        return 0
    n = len(rows[0])
    rank = 0
    for c in range(n):
        pivot = None
        for r in range(rank, len(rows)):
            if rows[r][c]:
                pivot = r
                break
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        prow = rows[rank]
        inv_items = [(j, prow[j] / prow[c]) for j in range(c + 1, n) if prow[j]]
        for r in range(rank + 1, len(rows)):
            factor = rows[r][c]
            if factor:
                row = rows[r]
                for j, q in inv_items:
                    row[j] = row[j] - factor * q
                row[c] = zero if zero is not None else factor - factor
        rank += 1
        if rank == len(rows):
            break
    return rank


# -- certified multi-prime rank ----------------------------------------------------------


@dataclass
class RankConfig:
    """Knobs for certified rank computation; defaults match the CLI defaults.

    Primes are drawn as 31-bit values: the dense kernel splits factors into
    16-bit halves and needs p < 2^31 for its float64 products to stay exact.
    """

    primes: int = 3
    escalation_primes: int = 7
    seed: int | str = 0
    salt: str = ""
    dense_threshold: int = 2000
    exact_verify_cols: int = 48
    blackbox_nnz: int = 200_000
    force_method: str | None = None

    def child(self, salt: str) -> RankConfig:
        return RankConfig(
            primes=self.primes,
            escalation_primes=self.escalation_primes,
            seed=self.seed,
            salt=salt,
            dense_threshold=self.dense_threshold,
            exact_verify_cols=self.exact_verify_cols,
            blackbox_nnz=self.blackbox_nnz,
            force_method=self.force_method,
        )


@dataclass
class RankResult:
    rank: int
    primes: list[int] = field(default_factory=list)
    ranks: list[int] = field(default_factory=list)
    agreement: bool = True
    certified: bool = True
    method: str = "sparse-elimination"
    exact_verified: bool = False


def rank_mod_p(matrix: StrandMatrix, p: int, rng=None, method: str | None = None) -> int:
    """Rank mod p, dispatching on size; raises BadPrime if p kills a denominator."""
    if matrix.num_rows == 0 or matrix.num_cols == 0 or not matrix.entries:
        return 0
    if method is None:
        method = "blackbox-iterative" if matrix.nnz > 200_000 else "sparse-elimination"
    if method == "blackbox-iterative":
        rows_idx, cols_idx, vals = matrix.triples_modp(p)
        if rng is None:
            rng = random.Random(f"blackbox|{p}|{matrix.num_rows}x{matrix.num_cols}")
        return rank_blackbox_modp(
            matrix.num_rows, matrix.num_cols, rows_idx, cols_idx, vals, p, rng
        )
    density = matrix.nnz / (matrix.num_rows * matrix.num_cols)
    if matrix.num_cols <= 700 or density > 0.02:
        return rank_dense_modp(matrix.dense_modp(p), p)
    rows_idx, cols_idx, vals = matrix.triples_modp(p)
    return rank_sparse_modp(matrix.num_rows, matrix.num_cols, rows_idx, cols_idx, vals, p)


def certified_rank(matrix: StrandMatrix, config: RankConfig | None = None) -> RankResult:
    """Multi-prime rank with certification.

    Draws `primes` distinct random 31-bit primes from the seeded stream; on
    per-prime disagreement escalates to `escalation_primes`, then falls back
    to exact fraction-free elimination when the matrix is small enough.  The
    exact path also runs unconditionally below exact_verify_cols, and its
    value is authoritative.
    """
    if config is None:
        config = RankConfig()
    if matrix.num_rows == 0 or matrix.num_cols == 0 or not matrix.entries:
        return RankResult(rank=0, method="sparse-elimination")
    rng = random.Random(f"{config.seed}|{config.salt}")
    method = config.force_method
    if method is None:
        method = "blackbox-iterative" if matrix.nnz > config.blackbox_nnz else "sparse-elimination"

    primes: list[int] = []
    ranks: list[int] = []
    seen: set[int] = set()

    def run_batch(count: int) -> None:
        while len(primes) < count:
            (p,) = draw_distinct_primes(rng, 1, exclude=seen)
            seen.add(p)
            try:
                r = rank_mod_p(matrix, p, method=method)
            except BadPrime:
                continue
            primes.append(p)
            ranks.append(r)

    run_batch(config.primes)
    agreement = len(set(ranks)) == 1
    if not agreement:
        run_batch(config.escalation_primes)
        agreement = len(set(ranks)) == 1

    rank = max(ranks)
    certified = agreement
    exact_verified = False
    need_exact = matrix.num_cols <= config.exact_verify_cols or (
        not agreement and matrix.num_cols <= config.dense_threshold
    )
    if need_exact and method != "blackbox-iterative":
        rank = rank_exact(matrix)
        method = "dense-fraction-free"
        certified = True
        exact_verified = True
    return RankResult(
        rank=rank,
        primes=primes,
        ranks=ranks,
        agreement=agreement,
        certified=certified,
        method=method,
        exact_verified=exact_verified,
    )
