"""Primitive solubility of z^2 = a*x^2 + b*y^2 over p-adic integers.

Two independent routes are provided.  count_primitive_solutions literally
counts solution triples modulo p^k (organized as an exact integer-encoded
convolution of value histograms, which is arithmetic bookkeeping over the
same finite enumeration).  conic_solvable_zp decides solubility for any p by
valuation descent whose base facts are residue-set enumerations; it is pinned
to the literal count on every feasible modulus by the test suite.
"""

from __future__ import annotations

from functools import lru_cache

_BLOCK = 64  # bits per histogram coefficient; products stay far below 2**63
_LITERAL_LIMIT = 30000  # largest modulus the literal counter accepts


class InfeasibleModulus(ValueError):
    pass


def standard_precision(a: int, b: int, p: int) -> int:
    """Exponent k = 3 + 2*v_p(4ab): enough that primitive solubility mod p^k
    matches solubility over the p-adic integers."""
    v = 0
    n = abs(4 * a * b)
    while n % p == 0:
        n //= p
        v += 1
    return 3 + 2 * v


@lru_cache(maxsize=None)
def _square_hist(n: int) -> tuple[int, ...]:
    h = [0] * n
    for x in range(n):
        h[x * x % n] += 1
    return tuple(h)


@lru_cache(maxsize=None)
def _encoded_scaled_hist(c: int, n: int) -> int:
    """Integer encoding sum_t #{x : c*x^2 = t mod n} << (t * BLOCK)."""
    sq = _square_hist(n)
    h = [0] * n
    for t in range(n):
        if sq[t]:
            h[c * t % n] += sq[t]
    out = 0
    for t in range(n - 1, -1, -1):
        out = (out << _BLOCK) | h[t]
    return out


def count_solutions(a: int, b: int, p: int, k: int) -> int:
    """#{(x, y, z) in [0, p^k)^3 : z^2 - a x^2 - b y^2 = 0 mod p^k}."""
    if k <= 0:
        return 1
    n = p**k
    if n > _LITERAL_LIMIT:
        raise InfeasibleModulus("modulus %d^%d too large to enumerate" % (p, k))
    prod = (
        _encoded_scaled_hist((-a) % n, n)
        * _encoded_scaled_hist((-b) % n, n)
        * _encoded_scaled_hist(1, n)
    )
    mask = (1 << _BLOCK) - 1
    total = 0
    for m in range(3):
        total += (prod >> (_BLOCK * m * n)) & mask
    return total


def count_primitive_solutions(a: int, b: int, p: int, k: int) -> int:
    """Like count_solutions but excluding triples with x, y, z all divisible
    by p.  A triple divisible by p corresponds, coordinate digit by digit, to
    a solution at precision k - 2."""
    if k < 1:
        raise ValueError("k must be >= 1")
    total = count_solutions(a, b, p, k)
    if k == 1:
        return total - 1
    return total - p**3 * count_solutions(a, b, p, k - 2)


def count_primitive_raw(a: int, b: int, p: int, k: int) -> int:
    """Reference triple loop; only for tiny moduli, used to anchor the
    histogram counter in tests."""
    n = p**k
    cnt = 0
    for x in range(n):
        for y in range(n):
            for z in range(n):
                if x % p == 0 and y % p == 0 and z % p == 0:
                    continue
                if (z * z - a * x * x - b * y * y) % n == 0:
                    cnt += 1
    return cnt


def solvable_mod(a: int, b: int, p: int, k: int) -> bool:
    return count_primitive_solutions(a, b, p, k) > 0


def _strip_square_part(c: int, p: int) -> int:
    """Divide out p^2 factors; a change of variables x -> p*x on the conic."""
    while c % (p * p) == 0:
        c //= p * p
    return c


def conic_solvable_zp(a: int, b: int, p: int) -> bool:
    """Does z^2 = a x^2 + b y^2 have a nontrivial p-adic solution?

    Decided by valuation descent.  Base facts are exhaustive residue
    enumerations: squares mod p for odd p, and the literal primitive count at
    full precision for p = 2.
    """
    if a == 0 or b == 0:
        raise ValueError("nonzero coefficients required")
    a = _strip_square_part(a, p)
    b = _strip_square_part(b, p)
    if p == 2:
        return solvable_mod(a, b, 2, standard_precision(a, b, 2))
    va = 1 if a % p == 0 else 0
    vb = 1 if b % p == 0 else 0
    if va > vb:
        a, b = b, a
        va, vb = vb, va
    squares = {x * x % p for x in range(1, p)}
    if (va, vb) == (0, 0):
        # a smooth solution mod p always exists; find one by enumeration
        for x in range(p):
            for y in range(p):
                if x == 0 and y == 0:
                    continue
                t = (a * x * x + b * y * y) % p
                if t == 0 or t in squares:
                    return True
        raise AssertionError("unit ternary form with no zero mod %d" % p)
    if (va, vb) == (0, 1):
        # any primitive solution forces z^2 = a x^2 mod p with x a unit
        return a % p in squares
    # both valuations 1: after z = p*z' the residue condition is
    # u x^2 + w y^2 = 0 mod p with a unit coordinate
    u = a // p
    w = b // p
    return (-u * w) % p in squares


def primitive_solubility(a: int, b: int, p: int) -> bool:
    """Primitive solubility at the standard precision: the literal count when
    the modulus is small enough to enumerate, otherwise the descent route."""
    k = standard_precision(a, b, p)
    if p**k <= 3000:
        return solvable_mod(a, b, p, k)
    return conic_solvable_zp(a, b, p)
