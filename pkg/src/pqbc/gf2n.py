"""Arithmetic in GF(2^n) for small n, plus the multiplicative XOR-universal hash.

Elements are plain ints < 2^n.  Multiplication is schoolbook carryless with
reduction by an irreducible polynomial; nothing here is constant-time and n is
capped at 64.
"""

from dataclasses import dataclass
from functools import lru_cache


class ZeroInverse(ZeroDivisionError):
    """Raised when inverting 0."""


# Fixed reduction polynomials, bitmask encoding (bit i = coefficient of x^i).
# n=8 is the AES polynomial; the others are the lexicographically least
# irreducible of their degree.
KNOWN_POLYNOMIALS = {
    3: 0xB,                    # x^3 + x + 1
    4: 0x13,                   # x^4 + x + 1
    8: 0x11B,                  # x^8 + x^4 + x^3 + x + 1
    16: 0x1002B,               # x^16 + x^5 + x^3 + x + 1
    32: 0x10000008D,           # x^32 + x^7 + x^3 + x^2 + 1
    64: 0x1000000000000001B,   # x^64 + x^4 + x^3 + x + 1
}


def _poly_mulmod(a: int, b: int, mod: int) -> int:
    # carryless multiply, then long division by mod
    prod = 0
    while b:
        if b & 1:
            prod ^= a
        a <<= 1
        b >>= 1
    d = mod.bit_length()
    for shift in range(prod.bit_length() - d, -1, -1):
        if prod >> (shift + d - 1) & 1:
            prod ^= mod << shift
    return prod


def _is_irreducible(poly: int) -> bool:
    n = poly.bit_length() - 1
    if n < 1 or poly & 1 == 0:
        # divisible by x
        return poly == 2
    if n <= 24:
        # trial division against every polynomial of degree 1..n//2
        for d in range(1, n // 2 + 1):
            for q in range(1 << d, 1 << (d + 1)):
                if _poly_divides(q, poly):
                    return False
        return True
    # Rabin's test: x^(2^n) = x mod poly, and gcd(x^(2^(n/p)) - x, poly) = 1
    # for each prime p | n.  Trial division is hopeless at this degree.
    def frob(times: int) -> int:
        t = 2  # the polynomial x
        for _ in range(times):
            t = _poly_mulmod(t, t, poly)
        return t

    if frob(n) != 2:
        return False
    for p in _prime_factors(n):
        if _poly_gcd(frob(n // p) ^ 2, poly) != 1:
            return False
    return True


def _poly_divides(q: int, p: int) -> bool:
    # remainder of p / q over GF(2)
    dq = q.bit_length()
    while p.bit_length() >= dq:
        p ^= q << (p.bit_length() - dq)
    return p == 0


def _poly_gcd(a: int, b: int) -> int:
    while b:
        da, db = a.bit_length(), b.bit_length()
        if da < db:
            a, b = b, a
            continue
        a ^= b << (da - db)
    return a


def _prime_factors(n: int) -> list[int]:
    out, d = [], 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


@dataclass(frozen=True)
class FieldSpec:
    """GF(2^n) description: bit width and reduction polynomial bitmask."""

    n: int
    reduction_poly: int

    def __post_init__(self):
        if not 1 <= self.n <= 64:
            raise ValueError(f"field width {self.n} outside [1, 64]")
        if self.reduction_poly.bit_length() - 1 != self.n:
            raise ValueError(
                f"reduction polynomial degree {self.reduction_poly.bit_length() - 1}"
                f" != n = {self.n}")
        if not _is_irreducible(self.reduction_poly):
            raise ValueError(f"polynomial {self.reduction_poly:#x} is reducible")

    @property
    def order(self) -> int:
        return 1 << self.n

    def contains(self, a: int) -> bool:
        return 0 <= a < (1 << self.n)

    def check(self, *elems: int) -> None:
        for a in elems:
            if not self.contains(a):
                raise ValueError(f"{a:#x} is not a {self.n}-bit field element")


# FieldElement is just an int; the alias documents intent in signatures.
FieldElement = int


@lru_cache(maxsize=None)
def field(n: int) -> FieldSpec:
    """The canonical field of width n (fixed polynomial table, else the
    lexicographically least irreducible, computed once and cached)."""
    if n in KNOWN_POLYNOMIALS:
        return FieldSpec(n, KNOWN_POLYNOMIALS[n])
    for poly in range(1 << n, 1 << (n + 1)):
        if _is_irreducible(poly):
            return FieldSpec(n, poly)
    raise AssertionError("unreachable: irreducibles exist for every degree")


def gf_mul(a: FieldElement, b: FieldElement, f: FieldSpec) -> FieldElement:
    f.check(a, b)
    return _poly_mulmod(a, b, f.reduction_poly)


def gf_pow(a: FieldElement, j: int, f: FieldSpec) -> FieldElement:
    """Square-and-multiply; j is any non-negative integer (range caps such as
    the 2^20 tweak limit belong to the callers)."""
    f.check(a)
    if j < 0:
        raise ValueError("negative exponent")
    acc = 1
    base = a
    while j:
        if j & 1:
            acc = gf_mul(acc, base, f)
        base = gf_mul(base, base, f)
        j >>= 1
    return acc


def gf_inv(a: FieldElement, f: FieldSpec) -> FieldElement:
    if a == 0:
        raise ZeroInverse("0 has no multiplicative inverse")
    f.check(a)
    # a^(2^n - 2) = a^{-1} in GF(2^n)
    return gf_pow(a, f.order - 2, f)


def hash_mul(k_prime: FieldElement, tweak: FieldElement, f: FieldSpec) -> FieldElement:
    """h_{k'}(tweak) = k' * tweak.

    XOR-universal with eps = 2^-n over distinct tweaks, and uniform in k' for
    tweak != 0.  Note h_{k'}(0) = 0 for every key: callers that need
    uniformity must keep 0 out of the tweak space.
    """
    return gf_mul(k_prime, tweak, f)
