"""Exact coefficient domains: rationals, prime fields, cyclotomic fields.

Every domain hands out elements whose ring operators are exact and whose
truthiness is the zero test, so they drop into SparsePolynomial and the
elimination routines unchanged.  Cyclotomic fields Q(zeta_m) are represented
as Q[x] modulo the m-th cyclotomic polynomial.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

# -- primality ----------------------------------------------------------------

_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_probable_prime(n: int) -> bool:
    """Miller-Rabin; deterministic for n < 3.3e24 with these witness bases."""
    if n < 2:
        return False
    for p in _MR_BASES:
        if n == p:
            return True
        if n % p == 0:
            return False
    d = n - 1
    s = 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def random_prime(rng, lo: int = 1 << 30, hi: int = 1 << 31) -> int:
    """A prime drawn uniformly-ish from [lo, hi) using the given RNG."""
    while True:
        candidate = rng.randrange(lo | 1, hi, 2)
        if is_probable_prime(candidate):
            return candidate


def random_prime_one_mod(rng, modulus: int, lo: int = 1 << 30, hi: int = 1 << 31) -> int:
    """A prime p with p = 1 (mod modulus), drawn from [lo, hi)."""
    t_lo = (lo - 1) // modulus + 1
    t_hi = (hi - 1) // modulus
    if t_hi <= t_lo:
        raise ValueError("window too small for the requested congruence")
    while True:
        p = modulus * rng.randrange(t_lo, t_hi) + 1
        if is_probable_prime(p):
            return p


def draw_distinct_primes(rng, count: int, modulus: int | None = None,
                         lo: int = 1 << 30, hi: int = 1 << 31,
                         exclude=()) -> list[int]:
    """Distinct primes from the RNG stream, optionally all = 1 mod modulus."""
    seen = set(exclude)
    out: list[int] = []
    while len(out) < count:
        p = (random_prime_one_mod(rng, modulus, lo, hi) if modulus
             else random_prime(rng, lo, hi))
        if p not in seen:
            seen.add(p)
            out.append(p)
    return out


@lru_cache(maxsize=None)
def euler_phi(m: int) -> int:
    result = m
    n = m
    p = 2
    while p * p <= n:
        if n % p == 0:
            while n % p == 0:
                n //= p
            result -= result // p
        p += 1
    if n > 1:
        result -= result // n
    return result


# -- rationals ----------------------------------------------------------------


class RationalDomain:
    """Characteristic-zero domain; elements are plain ints and Fractions."""

    name = "QQ"
    characteristic = 0

    def zero(self):
        return 0

    def one(self):
        return 1

    def coerce(self, x):
        if isinstance(x, int):
            return x
        value = Fraction(x)
        return int(value) if value.denominator == 1 else value

    def invert(self, x):
        value = Fraction(x)
        if not value:
            raise ZeroDivisionError("inverting zero")
        inv = 1 / value
        return int(inv) if inv.denominator == 1 else inv

    def __repr__(self):
        return "RationalDomain()"


RATIONALS = RationalDomain()


# -- prime fields ---------------------------------------------------------------


class GFElement:
    __slots__ = ("value", "p")

    def __init__(self, value: int, p: int):
        self.value = value % p
        self.p = p

    def _lift(self, other) -> GFElement:
        if isinstance(other, GFElement):
            if other.p != self.p:
                raise ValueError("mixed characteristics")
            return other
        if isinstance(other, int):
            return GFElement(other, self.p)
        if isinstance(other, Fraction):
            num = other.numerator % self.p
            den = other.denominator % self.p
            if den == 0:
                raise ZeroDivisionError(f"denominator divisible by {self.p}")
            return GFElement(num * pow(den, -1, self.p), self.p)
        return NotImplemented

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        return GFElement(self.value + other.value, self.p)

    __radd__ = __add__

    def __neg__(self):
        return GFElement(-self.value, self.p)

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        return GFElement(self.value - other.value, self.p)

    def __rsub__(self, other):
        return -(self - other)

    def __mul__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        return GFElement(self.value * other.value, self.p)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        return GFElement(self.value * pow(other.value, -1, self.p), self.p)

    def __pow__(self, e: int):
        if e < 0:
            return GFElement(pow(pow(self.value, -1, self.p), -e, self.p), self.p)
        return GFElement(pow(self.value, e, self.p), self.p)

    def __bool__(self):
        return self.value != 0

    def __eq__(self, other):
        if isinstance(other, GFElement):
            return self.p == other.p and self.value == other.value
        if isinstance(other, int):
            return self.value == other % self.p
        return NotImplemented

    def __hash__(self):
        return hash((self.value, self.p))

    def __repr__(self):
        return f"{self.value}"


class PrimeField:
    """F_p for an odd machine prime p."""

    characteristic: int

    def __init__(self, p: int):
        if not is_probable_prime(p):
            raise ValueError(f"{p} is not prime")
        self.p = p
        self.characteristic = p
        self.name = f"GF({p})"

    def zero(self) -> GFElement:
        return GFElement(0, self.p)

    def one(self) -> GFElement:
        return GFElement(1, self.p)

    def coerce(self, x) -> GFElement:
        if isinstance(x, GFElement):
            if x.p != self.p:
                raise ValueError("mixed characteristics")
            return x
        if isinstance(x, int):
            return GFElement(x, self.p)
        if isinstance(x, Fraction):
            den = x.denominator % self.p
            if den == 0:
                raise ZeroDivisionError(f"denominator divisible by {self.p}")
            return GFElement(x.numerator * pow(den, -1, self.p), self.p)
        raise TypeError(f"cannot coerce {type(x).__name__} into {self.name}")

    def invert(self, x) -> GFElement:
        return GFElement(pow(self.coerce(x).value, -1, self.p), self.p)

    def __repr__(self):
        return f"PrimeField({self.p})"


# -- cyclotomic fields -----------------------------------------------------------


@lru_cache(maxsize=None)
def cyclotomic_polynomial(m: int) -> tuple[int, ...]:
    """Integer coefficients of the m-th cyclotomic polynomial, low degree first.

    Computed as (x^m - 1) / prod of Phi_d over proper divisors d of m.
    """
    if m < 1:
        raise ValueError("order must be positive")
    num = [-1] + [0] * (m - 1) + [1]  # x^m - 1
    for d in range(1, m):
        if m % d == 0:
            num = _poly_exact_div_int(num, list(cyclotomic_polynomial(d)))
    while len(num) > 1 and num[-1] == 0:
        num.pop()
    return tuple(num)


def _poly_exact_div_int(num: list[int], den: list[int]) -> list[int]:
    # long division of integer polynomials known to divide exactly; den is monic
    num = list(num)
    out = [0] * (len(num) - len(den) + 1)
    for shift in range(len(out) - 1, -1, -1):
        q = num[shift + len(den) - 1]
        out[shift] = q
        if q:
            for i, c in enumerate(den):
                num[shift + i] -= q * c
    if any(num[: len(den) - 1]):
        raise ArithmeticError("division was not exact")
    return out


def _poly_divmod(num: list[Fraction], den: list[Fraction]):
    num = list(num)
    dn = len(den) - 1
    while len(den) > 1 and not den[-1]:
        den = den[:-1]
        dn -= 1
    if not any(den):
        raise ZeroDivisionError("polynomial division by zero")
    lead = den[-1]
    quot = [Fraction(0)] * max(len(num) - dn, 0)
    for shift in range(len(quot) - 1, -1, -1):
        q = num[shift + dn] / lead
        quot[shift] = q
        if q:
            for i, c in enumerate(den):
                num[shift + i] -= q * c
    rem = num[:dn]
    while rem and not rem[-1]:
        rem.pop()
    return quot, rem


def _poly_xgcd(a: list[Fraction], b: list[Fraction]):
    # extended Euclid over Q[x]: returns (g, s, t) with s*a + t*b = g
    r0, r1 = list(a), list(b)
    s0, s1 = [Fraction(1)], []
    t0, t1 = [], [Fraction(1)]
    while any(r1):
        q, r = _poly_divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, _poly_sub(s0, _poly_mul(q, s1))
        t0, t1 = t1, _poly_sub(t0, _poly_mul(q, t1))
    return r0, s0, t0


def _poly_mul(a, b):
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, ca in enumerate(a):
        if ca:
            for j, cb in enumerate(b):
                out[i + j] += ca * cb
    while out and not out[-1]:
        out.pop()
    return out


def _poly_sub(a, b):
    out = [Fraction(0)] * max(len(a), len(b))
    for i, c in enumerate(a):
        out[i] += c
    for i, c in enumerate(b):
        out[i] -= c
    while out and not out[-1]:
        out.pop()
    return out


class CyclotomicElement:
    """Element of Q(zeta_m) as a coefficient vector on 1, x, ..., x^(phi-1)."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field: CyclotomicField, coeffs):
        self.field = field
        vec = [Fraction(c) for c in coeffs]
        if len(vec) > field.phi:
            raise ValueError("coefficient vector too long")
        vec.extend([Fraction(0)] * (field.phi - len(vec)))
        self.coeffs = tuple(vec)

    def _lift(self, other):
        if isinstance(other, CyclotomicElement):
            if other.field.order != self.field.order:
                raise ValueError("mixed cyclotomic orders")
            return other
        if isinstance(other, (int, Fraction)):
            return self.field.scalar(other)
        return NotImplemented

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        return CyclotomicElement(
            self.field, [a + b for a, b in zip(self.coeffs, other.coeffs)]
        )

    __radd__ = __add__

    def __neg__(self):
        return CyclotomicElement(self.field, [-a for a in self.coeffs])

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        return CyclotomicElement(
            self.field, [a - b for a, b in zip(self.coeffs, other.coeffs)]
        )

    def __rsub__(self, other):
        return -(self - other)

    def __mul__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        phi = self.field.phi
        prod = [Fraction(0)] * (2 * phi - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    if b:
                        prod[i + j] += a * b
        # fold powers x^j, j >= phi, using the cached reduction rows
        out = prod[:phi]
        for j in range(phi, len(prod)):
            c = prod[j]
            if c:
                for i, r in enumerate(self.field.reduction_rows[j - phi]):
                    if r:
                        out[i] += c * r
        return CyclotomicElement(self.field, out)

    __rmul__ = __mul__

    def inverse(self) -> CyclotomicElement:
        if not self:
            raise ZeroDivisionError("inverting zero")
        modulus = [Fraction(c) for c in self.field.modulus]
        g, s, _ = _poly_xgcd(list(self.coeffs), modulus)
        if len(g) != 1:
            raise ArithmeticError("modulus is not irreducible over Q")
        inv = [c / g[0] for c in s]
        return CyclotomicElement(self.field, inv)

    def __truediv__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inverse()

    def __pow__(self, e: int):
        base = self if e >= 0 else self.inverse()
        e = abs(e)
        result = self.field.one()
        while e:
            if e & 1:
                result = result * base
            if e > 1:
                base = base * base
            e >>= 1
        return result

    def __bool__(self):
        return any(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, CyclotomicElement):
            return self.field.order == other.field.order and self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self == self.field.scalar(other)
        return NotImplemented

    def __hash__(self):
        return hash((self.field.order, self.coeffs))

    def vector_text(self) -> str:
        """Bracketed coefficient list, integers kept plain: [1, -1/2, 0, ...]."""
        parts = [str(int(c)) if c.denominator == 1 else str(c) for c in self.coeffs]
        return "[" + ", ".join(parts) + "]"

    def __repr__(self):
        return f"Cyclotomic({self.field.order}){self.vector_text()}"


class CyclotomicField:
    """Q(zeta_m) with zeta_m = exp(2*pi*i/m), as Q[x] mod the m-th cyclotomic polynomial."""

    def __init__(self, order: int):
        if order < 1:
            raise ValueError("order must be positive")
        self.order = order
        self.modulus = cyclotomic_polynomial(order)
        self.phi = len(self.modulus) - 1
        self.characteristic = 0
        self.name = f"QQ(zeta_{order})"
        # reduction_rows[j] expresses x^(phi+j) on the basis 1..x^(phi-1)
        rows: list[tuple[int, ...]] = []
        first = [-c for c in self.modulus[:-1]]  # modulus is monic
        rows.append(tuple(first))
        for _ in range(self.phi - 2):
            prev = rows[-1]
            shifted = [0] + list(prev[:-1])
            carry = prev[-1]
            if carry:
                for i, c in enumerate(first):
                    shifted[i] += carry * c
            rows.append(tuple(shifted))
        self.reduction_rows = tuple(rows)

    def zero(self) -> CyclotomicElement:
        return CyclotomicElement(self, [])

    def one(self) -> CyclotomicElement:
        return CyclotomicElement(self, [1])

    def scalar(self, c) -> CyclotomicElement:
        return CyclotomicElement(self, [c])

    def coerce(self, x) -> CyclotomicElement:
        if isinstance(x, CyclotomicElement):
            if x.field.order != self.order:
                raise ValueError("mixed cyclotomic orders")
            return x
        if isinstance(x, (int, Fraction)):
            return self.scalar(x)
        raise TypeError(f"cannot coerce {type(x).__name__} into {self.name}")

    def invert(self, x) -> CyclotomicElement:
        return self.coerce(x).inverse()

    def zeta(self, power: int = 1) -> CyclotomicElement:
        """zeta_m^power, reduced into the basis."""
        power %= self.order
        if power < self.phi:
            coeffs = [0] * power + [1]
            return CyclotomicElement(self, coeffs)
        x = CyclotomicElement(self, [0, 1]) if self.phi > 1 else self.scalar(
            -self.modulus[0]
        )
        return x**power

    def cos_root(self, j: int, denominator: int) -> CyclotomicElement:
        """cos(j*pi/denominator) inside Q(zeta_m); requires m divisible by 2*denominator."""
        if self.order % (2 * denominator):
            raise ValueError("field too small for this angle")
        step = self.order // (2 * denominator)
        z = self.zeta(step * j)
        zbar = self.zeta(self.order - step * j % self.order)
        return (z + zbar) / 2

    def __repr__(self):
        return f"CyclotomicField({self.order})"
