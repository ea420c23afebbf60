"""Exact scalar arithmetic: arbitrary-precision rationals, real quadratic
extensions Q(sqrt(d)), squarefree kernels, and small prime utilities.

Every value in this package is exact; floating point is never used.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, isqrt


Rational = Fraction


def rational(value) -> Fraction:
    """Parse a rational from an int, Fraction, or a string like "-3" or "7/2"."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError("cannot interpret %r as a rational" % (value,))


def rational_str(value) -> str:
    return str(rational(value))


# ---------------------------------------------------------------------------
# primes and factorization
# ---------------------------------------------------------------------------

_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin; the base set covers all n < 3.3e24."""
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def factorize(n: int) -> dict[int, int]:
    """Prime factorization of |n| by trial division (desk-scale inputs)."""
    n = abs(int(n))
    if n == 0:
        raise ValueError("cannot factor 0")
    out: dict[int, int] = {}
    for p in (2, 3):
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
    f = 5
    while f * f <= n:
        for p in (f, f + 2):
            while n % p == 0:
                out[p] = out.get(p, 0) + 1
                n //= p
        f += 6
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def squarefree_kernel(x) -> int:
    """The unique squarefree positive s with x = s * (nonzero rational square),
    up to sign.  The sign of x is discarded."""
    x = rational(x)
    if x == 0:
        raise ValueError("squarefree kernel of 0 is undefined")
    n = abs(x.numerator * x.denominator)
    s = 1
    for p, e in factorize(n).items():
        if e % 2:
            s *= p
    return s


def valuation(x, p: int) -> int:
    """p-adic valuation of a nonzero rational."""
    x = rational(x)
    if x == 0:
        raise ValueError("valuation of 0 is undefined")
    v = 0
    n = abs(x.numerator)
    while n % p == 0:
        n //= p
        v += 1
    d = x.denominator
    while d % p == 0:
        d //= p
        v -= 1
    return v


def floor_sqrt(x) -> int:
    """floor(sqrt(x)) for a nonnegative rational: isqrt(n*d) // d is exact."""
    x = rational(x)
    if x < 0:
        raise ValueError("negative argument")
    return isqrt(x.numerator * x.denominator) // x.denominator


def sqrt_exact(x) -> Fraction | None:
    """The exact rational square root of x, or None when x is not a square."""
    x = rational(x)
    if x < 0:
        return None
    rn, rd = isqrt(x.numerator), isqrt(x.denominator)
    if rn * rn == x.numerator and rd * rd == x.denominator:
        return Fraction(rn, rd)
    return None


def square_class_split(x) -> tuple[Fraction, int]:
    """Write a positive rational as q**2 * s with s squarefree; returns (q, s)."""
    x = rational(x)
    if x <= 0:
        raise ValueError("expected a positive rational")
    s = squarefree_kernel(x)
    q = sqrt_exact(x / s)
    assert q is not None
    return q, s


# ---------------------------------------------------------------------------
# real quadratic extensions
# ---------------------------------------------------------------------------


class QuadExt:
    """An element c0 + c1*sqrt(d) of a real quadratic field, d > 1 squarefree.

    Values with c1 == 0 are rationals carried inside the extension; two
    QuadExt values interoperate only when their d match or one side is
    rational.
    """

    __slots__ = ("d", "c0", "c1")

    def __init__(self, d: int, c0, c1):
        d = int(d)
        if d <= 1 or squarefree_kernel(d) != d:
            raise ValueError("d must be a squarefree integer > 1, got %r" % (d,))
        object.__setattr__(self, "d", d)
        object.__setattr__(self, "c0", rational(c0))
        object.__setattr__(self, "c1", rational(c1))

    def __setattr__(self, name, value):
        raise AttributeError("QuadExt values are immutable")

    # -- structure ----------------------------------------------------

    @property
    def is_rational(self) -> bool:
        return self.c1 == 0

    def rational_value(self) -> Fraction:
        if self.c1 != 0:
            raise ValueError("%r has a nonzero sqrt(%d) part" % (self, self.d))
        return self.c0

    def conjugate(self) -> "QuadExt":
        return QuadExt(self.d, self.c0, -self.c1)

    def norm(self) -> Fraction:
        return self.c0 * self.c0 - self.d * self.c1 * self.c1

    # -- coercion -----------------------------------------------------

    def _parts(self, other):
        if isinstance(other, QuadExt):
            if other.d == self.d or other.c1 == 0:
                return other.c0, other.c1
            if self.c1 == 0:
                return other.c0, other.c1
            raise ValueError(
                "incompatible extensions sqrt(%d) and sqrt(%d)" % (self.d, other.d)
            )
        if isinstance(other, (int, Fraction)):
            return rational(other), Fraction(0)
        return None

    def _common_d(self, other):
        if isinstance(other, QuadExt) and self.c1 == 0 and other.c1 != 0:
            return other.d
        return self.d

    # -- arithmetic ---------------------------------------------------

    def __add__(self, other):
        p = self._parts(other)
        if p is None:
            return NotImplemented
        return QuadExt(self._common_d(other), self.c0 + p[0], self.c1 + p[1])

    __radd__ = __add__

    def __sub__(self, other):
        p = self._parts(other)
        if p is None:
            return NotImplemented
        return QuadExt(self._common_d(other), self.c0 - p[0], self.c1 - p[1])

    def __rsub__(self, other):
        p = self._parts(other)
        if p is None:
            return NotImplemented
        return QuadExt(self._common_d(other), p[0] - self.c0, p[1] - self.c1)

    def __mul__(self, other):
        p = self._parts(other)
        if p is None:
            return NotImplemented
        d = self._common_d(other)
        return QuadExt(
            d,
            self.c0 * p[0] + d * self.c1 * p[1],
            self.c0 * p[1] + self.c1 * p[0],
        )

    __rmul__ = __mul__

    def _inverse(self) -> "QuadExt":
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("division by zero in Q(sqrt(%d))" % self.d)
        return QuadExt(self.d, self.c0 / n, -self.c1 / n)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            q = rational(other)
            if q == 0:
                raise ZeroDivisionError
            return QuadExt(self.d, self.c0 / q, self.c1 / q)
        if isinstance(other, QuadExt):
            p = self._parts(other)
            if p is None:
                return NotImplemented
            return self * QuadExt(self._common_d(other), p[0], p[1])._inverse()
        return NotImplemented

    def __rtruediv__(self, other):
        p = self._parts(other)
        if p is None:
            return NotImplemented
        return QuadExt(self._common_d(other), p[0], p[1]) * self._inverse()

    def __neg__(self):
        return QuadExt(self.d, -self.c0, -self.c1)

    def __pow__(self, k):
        if not isinstance(k, int) or k < 0:
            return NotImplemented
        out = QuadExt(self.d, 1, 0)
        for _ in range(k):
            out = out * self
        return out

    def __bool__(self):
        return bool(self.c0) or bool(self.c1)

    def __eq__(self, other):
        if isinstance(other, QuadExt):
            if self.c1 == 0 and other.c1 == 0:
                return self.c0 == other.c0
            return self.d == other.d and self.c0 == other.c0 and self.c1 == other.c1
        if isinstance(other, (int, Fraction)):
            return self.c1 == 0 and self.c0 == other
        return NotImplemented

    def __hash__(self):
        if self.c1 == 0:
            return hash(self.c0)
        return hash((self.d, self.c0, self.c1))

    def __repr__(self):
        return "QuadExt(%d, %s, %s)" % (self.d, self.c0, self.c1)

    def __str__(self):
        if self.c1 == 0:
            return str(self.c0)
        return "%s + %s*sqrt(%d)" % (self.c0, self.c1, self.d)


def sqrt_d(d: int) -> QuadExt:
    """The generator sqrt(d) of Q(sqrt(d))."""
    return QuadExt(d, 0, 1)


# -- helpers spanning both scalar kinds -------------------------------------


def as_scalar(x):
    if isinstance(x, (Fraction, QuadExt)):
        return x
    if isinstance(x, int):
        return Fraction(x)
    raise TypeError("not a scalar: %r" % (x,))


def scalar_is_rational(x) -> bool:
    if isinstance(x, QuadExt):
        return x.is_rational
    return isinstance(x, (int, Fraction))


def scalar_rational(x) -> Fraction:
    if isinstance(x, QuadExt):
        return x.rational_value()
    return rational(x)


def scalar_gcd(values) -> int:
    g = 0
    for v in values:
        g = gcd(g, int(v))
    return g
