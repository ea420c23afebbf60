"""Hilbert symbols of rational pairs at finite primes and the real place.

hilbert_symbol(a, b, v) is +1 exactly when z^2 = a*x^2 + b*y^2 has a
nontrivial solution over the completion at v, computed by the closed-form
criterion via p-adic valuations and quadratic residues.
"""

from __future__ import annotations

from fractions import Fraction

from .scalars import factorize, is_prime, rational, valuation


class Place:
    """A rational place: a finite prime or the single real place."""

    __slots__ = ("p",)

    def __init__(self, p: int | None):
        if p is not None:
            p = int(p)
            if not is_prime(p):
                raise ValueError("%r is not prime" % (p,))
        object.__setattr__(self, "p", p)

    def __setattr__(self, name, value):
        raise AttributeError("Place values are immutable")

    @classmethod
    def finite(cls, p: int) -> "Place":
        return cls(p)

    @classmethod
    def infinite(cls) -> "Place":
        return cls(None)

    @property
    def is_finite(self) -> bool:
        return self.p is not None

    def __eq__(self, other):
        return isinstance(other, Place) and self.p == other.p

    def __hash__(self):
        return hash(("place", self.p))

    def __lt__(self, other):
        # finite places sort by prime, the real place sorts last
        a = self.p if self.p is not None else float("inf")
        b = other.p if other.p is not None else float("inf")
        return a < b

    def __repr__(self):
        return "Place(inf)" if self.p is None else "Place(%d)" % self.p

    def __str__(self):
        return "inf" if self.p is None else str(self.p)


def legendre(a: int, p: int) -> int:
    """Legendre symbol (a|p) for an odd prime p and p-unit a."""
    a %= p
    if a == 0:
        raise ValueError("argument divisible by p")
    return 1 if pow(a, (p - 1) // 2, p) == 1 else -1


def _legendre_rational(u: Fraction, p: int) -> int:
    return legendre(u.numerator % p, p) * legendre(u.denominator % p, p)


def _unit_mod8(u: Fraction) -> int:
    inv_den = pow(u.denominator % 8, -1, 8)
    return (u.numerator % 8) * inv_den % 8


def hilbert_symbol(a, b, place: Place) -> int:
    a = rational(a)
    b = rational(b)
    if a == 0 or b == 0:
        raise ValueError("hilbert symbol requires nonzero arguments")
    if not isinstance(place, Place):
        raise TypeError("expected a Place")
    if not place.is_finite:
        return -1 if a < 0 and b < 0 else 1
    p = place.p
    alpha = valuation(a, p)
    beta = valuation(b, p)
    u = a / Fraction(p) ** alpha
    w = b / Fraction(p) ** beta
    if p != 2:
        sign = 1
        if (alpha * beta) % 2 and p % 4 == 3:
            sign = -sign
        if beta % 2 and _legendre_rational(u, p) == -1:
            sign = -sign
        if alpha % 2 and _legendre_rational(w, p) == -1:
            sign = -sign
        return sign
    u8 = _unit_mod8(u)
    w8 = _unit_mod8(w)
    eps_u = (u8 - 1) // 2 % 2
    eps_w = (w8 - 1) // 2 % 2
    om_u = (u8 * u8 - 1) // 8 % 2
    om_w = (w8 * w8 - 1) // 8 % 2
    e = eps_u * eps_w + alpha * om_w + beta * om_u
    return -1 if e % 2 else 1


def candidate_primes(a, b) -> list[int]:
    """Finite primes where the symbol of (a, b) can possibly be -1: the
    divisors of 2 and of the numerators and denominators of a and b."""
    a = rational(a)
    b = rational(b)
    primes = {2}
    for n in (a.numerator, a.denominator, b.numerator, b.denominator):
        primes.update(factorize(n).keys())
    return sorted(primes)
