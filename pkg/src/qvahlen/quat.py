"""Quaternion algebras (a,b/Q), their elements, and orthogonal involutions.

Elements live over the basis (1, i, j, ij) with i^2 = a, j^2 = b, ij = -ji.
Coordinates are exact rationals, or elements of a fixed real quadratic
extension when a computation genuinely needs one.
"""

from __future__ import annotations

from fractions import Fraction
from math import lcm

from .hilbert import Place, candidate_primes, hilbert_symbol
from .lattices import IntegerLattice, kernel_basis_int
from .linalg import invert, nullspace, symmetric_signature
from .scalars import (
    QuadExt,
    as_scalar,
    rational,
    scalar_is_rational,
    scalar_rational,
    squarefree_kernel,
)


class QuaternionAlgebra:
    __slots__ = ("a", "b")

    def __init__(self, a, b):
        a = rational(a)
        b = rational(b)
        if a == 0 or b == 0:
            raise ValueError("structure constants must be nonzero")
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)

    def __setattr__(self, name, value):
        raise AttributeError("QuaternionAlgebra values are immutable")

    def __eq__(self, other):
        return isinstance(other, QuaternionAlgebra) and self.a == other.a and self.b == other.b

    def __hash__(self):
        return hash((self.a, self.b))

    def __repr__(self):
        return "QuaternionAlgebra(%s, %s)" % (self.a, self.b)

    def quaternion(self, w, x=0, y=0, z=0) -> "Quaternion":
        return Quaternion(self, (w, x, y, z))

    def scalar(self, c) -> "Quaternion":
        return Quaternion(self, (c, 0, 0, 0))

    def one(self) -> "Quaternion":
        return self.scalar(1)

    def zero(self) -> "Quaternion":
        return self.scalar(0)

    def basis(self):
        one = self.one()
        return (
            one,
            self.quaternion(0, 1, 0, 0),
            self.quaternion(0, 0, 1, 0),
            self.quaternion(0, 0, 0, 1),
        )

    @property
    def is_definite(self) -> bool:
        """The norm form is positive definite exactly when a < 0 and b < 0."""
        return self.a < 0 and self.b < 0


class Quaternion:
    __slots__ = ("algebra", "coords")

    def __init__(self, algebra: QuaternionAlgebra, coords):
        if len(coords) != 4:
            raise ValueError("quaternions have four coordinates")
        object.__setattr__(self, "algebra", algebra)
        object.__setattr__(self, "coords", tuple(as_scalar(c) for c in coords))

    def __setattr__(self, name, value):
        raise AttributeError("Quaternion values are immutable")

    def _check_same(self, other: "Quaternion"):
        if self.algebra != other.algebra:
            raise ValueError("quaternions from different algebras")

    # -- ring operations -------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, Quaternion):
            return NotImplemented
        self._check_same(other)
        return Quaternion(self.algebra, tuple(p + q for p, q in zip(self.coords, other.coords)))

    def __sub__(self, other):
        if not isinstance(other, Quaternion):
            return NotImplemented
        self._check_same(other)
        return Quaternion(self.algebra, tuple(p - q for p, q in zip(self.coords, other.coords)))

    def __neg__(self):
        return Quaternion(self.algebra, tuple(-c for c in self.coords))

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, QuadExt)):
            return self.scale(other)
        if not isinstance(other, Quaternion):
            return NotImplemented
        self._check_same(other)
        a = self.algebra.a
        b = self.algebra.b
        p0, p1, p2, p3 = self.coords
        q0, q1, q2, q3 = other.coords
        return Quaternion(
            self.algebra,
            (
                p0 * q0 + a * p1 * q1 + b * p2 * q2 - a * b * p3 * q3,
                p0 * q1 + p1 * q0 - b * (p2 * q3 - p3 * q2),
                p0 * q2 + p2 * q0 + a * (p1 * q3 - p3 * q1),
                p0 * q3 + p3 * q0 + p1 * q2 - p2 * q1,
            ),
        )

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction, QuadExt)):
            return self.scale(other)
        return NotImplemented

    def scale(self, c) -> "Quaternion":
        c = as_scalar(c)
        return Quaternion(self.algebra, tuple(c * x for x in self.coords))

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction, QuadExt)):
            return self.scale(1 / as_scalar(other))
        return NotImplemented

    # -- involution, trace, norm ------------------------------------------

    def conjugate(self) -> "Quaternion":
        w, x, y, z = self.coords
        return Quaternion(self.algebra, (w, -x, -y, -z))

    def trace(self):
        return self.coords[0] + self.coords[0]

    def norm(self):
        a = self.algebra.a
        b = self.algebra.b
        w, x, y, z = self.coords
        return w * w - a * x * x - b * y * y + a * b * z * z

    def inverse(self) -> "Quaternion":
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("quaternion of norm 0")
        return self.conjugate().scale(1 / n)

    # -- predicates and views ----------------------------------------------

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coords)

    def is_scalar(self) -> bool:
        return all(c == 0 for c in self.coords[1:])

    def is_rational(self) -> bool:
        return all(scalar_is_rational(c) for c in self.coords)

    def rational_coords(self) -> tuple[Fraction, Fraction, Fraction, Fraction]:
        return tuple(scalar_rational(c) for c in self.coords)

    def __eq__(self, other):
        if not isinstance(other, Quaternion):
            return NotImplemented
        return self.algebra == other.algebra and all(
            p == q for p, q in zip(self.coords, other.coords)
        )

    def __hash__(self):
        return hash((self.algebra, self.coords))

    def __repr__(self):
        return "Quaternion(%s, %s, %s, %s)" % tuple(str(c) for c in self.coords)


# ---------------------------------------------------------------------------
# orthogonal involutions
# ---------------------------------------------------------------------------


def _primitive_direction(coords) -> tuple[Fraction, ...]:
    lat = IntegerLattice.from_rows([[rational(c) for c in coords]])
    row = lat.basis()[0]
    for c in row:
        if c != 0:
            if c < 0:
                row = [-x for x in row]
            break
    return tuple(row)


class Involution:
    """The orthogonal involution x -> mu * conj(x) * mu^(-1) attached to a
    pure invertible quaternion mu.  Fixes a 3-dimensional subspace (the plus
    part) pointwise and negates the line through mu."""

    __slots__ = (
        "algebra",
        "mu",
        "plus_basis",
        "minus_basis",
        "_eigen_to_std",
        "_std_to_eigen",
    )

    def __init__(self, algebra: QuaternionAlgebra, mu_coords):
        if isinstance(mu_coords, Quaternion):
            mu_coords = mu_coords.coords
        coords = _primitive_direction(mu_coords)
        mu = Quaternion(algebra, coords)
        if mu.trace() != 0:
            raise ValueError("mu must be a pure quaternion")
        if mu.norm() == 0:
            raise ValueError("mu must be invertible")
        object.__setattr__(self, "algebra", algebra)
        object.__setattr__(self, "mu", mu)
        self._derive_eigenspaces()

    def __setattr__(self, name, value):
        raise AttributeError("Involution values are immutable")

    def _raw_apply(self, q: Quaternion) -> Quaternion:
        return self.mu * q.conjugate() * self.mu.inverse()

    def _derive_eigenspaces(self):
        alg = self.algebra
        basis = alg.basis()
        # column k holds the image coordinates of the k-th basis vector
        A = [[Fraction(0)] * 4 for _ in range(4)]
        for k, e in enumerate(basis):
            img = self._raw_apply(e)
            for r in range(4):
                A[r][k] = scalar_rational(img.coords[r])
        # plus part: 1 together with the Hermite-reduced integer kernel of
        # (involution - id) on the trace-zero subspace; minus part: the
        # primitive negated line
        B = [[A[r][k] - (1 if r == k else 0) for k in range(1, 4)] for r in range(1, 4)]
        if len(nullspace(B)) != 2:
            raise ValueError("mu does not define an orthogonal involution")
        scaled = []
        for row in B:
            d = 1
            for x in row:
                d = lcm(d, x.denominator)
            scaled.append([int(x * d) for x in row])
        kernel_rows = kernel_basis_int([list(col) for col in zip(*scaled)])
        lat = IntegerLattice.from_rows(kernel_rows)
        pure_rows = lat.basis()
        plus = (
            alg.one(),
            Quaternion(alg, (0,) + tuple(pure_rows[0])),
            Quaternion(alg, (0,) + tuple(pure_rows[1])),
        )
        C = [[A[r][k] + (1 if r == k else 0) for k in range(4)] for r in range(4)]
        neg = nullspace(C)
        if len(neg) != 1:
            raise ValueError("mu does not define an orthogonal involution")
        minus = Quaternion(alg, _primitive_direction(neg[0]))
        object.__setattr__(self, "plus_basis", plus)
        object.__setattr__(self, "minus_basis", minus)
        eigen = [list(q.rational_coords()) for q in plus] + [list(minus.rational_coords())]
        object.__setattr__(self, "_eigen_to_std", eigen)
        object.__setattr__(self, "_std_to_eigen", invert([list(col) for col in zip(*eigen)]))

    # -- action ------------------------------------------------------------

    def apply(self, q: Quaternion) -> Quaternion:
        if q.algebra != self.algebra:
            raise ValueError("quaternion from a different algebra")
        return self._raw_apply(q)

    def eigen_coordinates(self, q: Quaternion):
        """Coordinates of q over plus_basis + (mu line): three plus one."""
        out = []
        for r in range(4):
            out.append(sum((self._std_to_eigen[r][k] * q.coords[k] for k in range(4)), Fraction(0)))
        return out[:3], out[3]

    def minus_coefficient(self, q: Quaternion):
        return self.eigen_coordinates(q)[1]

    def in_plus(self, q: Quaternion) -> bool:
        return self.minus_coefficient(q) == 0

    def plus_coordinates(self, q: Quaternion):
        plus, minus = self.eigen_coordinates(q)
        if minus != 0:
            raise ValueError("not in the plus subspace")
        return plus

    def from_plus_coordinates(self, coords) -> Quaternion:
        p1, p2, p3 = self.plus_basis
        c1, c2, c3 = (as_scalar(c) for c in coords)
        return p1.scale(c1) + p2.scale(c2) + p3.scale(c3)

    # -- invariants ----------------------------------------------------------

    def disc_class(self) -> int:
        """Squarefree representative of the square class of mu^2."""
        mu_sq = -self.mu.norm()
        return squarefree_kernel(scalar_rational(mu_sq))

    def gram_q_h(self):
        """Gram matrix of (s, t, z) -> s*t - nrm(z) on coordinates
        (s, t, z over plus_basis)."""
        G = [[Fraction(0)] * 5 for _ in range(5)]
        G[0][1] = G[1][0] = Fraction(1, 2)
        plus = self.plus_basis
        for i in range(3):
            for j in range(3):
                pairing = (plus[i] * plus[j].conjugate()).trace()
                G[2 + i][2 + j] = -scalar_rational(pairing) / 2
        return G

    def __eq__(self, other):
        return (
            isinstance(other, Involution)
            and self.algebra == other.algebra
            and self.mu == other.mu
        )

    def __hash__(self):
        return hash((self.algebra, self.mu))

    def __repr__(self):
        return "Involution(mu=%r)" % (self.mu,)


def eigenspaces(inv: Involution):
    """(plus_basis, minus_basis) of the involution as exact kernel bases."""
    return inv.plus_basis, inv.minus_basis


def involution_with_minus_line(algebra: QuaternionAlgebra, direction) -> Involution:
    """The involution whose negated line is spanned by the given pure
    quaternion, solved from the eigenspace data."""
    inv = Involution(algebra, direction)
    got = inv.minus_basis.rational_coords()
    want = _primitive_direction(direction if not isinstance(direction, Quaternion) else direction.coords)
    if got != tuple(want):
        raise ValueError("eigenspace solve disagrees with the requested line")
    return inv


# ---------------------------------------------------------------------------
# ramification
# ---------------------------------------------------------------------------


def ramified_places(algebra: QuaternionAlgebra) -> frozenset[Place]:
    """Places with Hilbert symbol -1; always an even number of them."""
    out = set()
    if hilbert_symbol(algebra.a, algebra.b, Place.infinite()) == -1:
        out.add(Place.infinite())
    for p in candidate_primes(algebra.a, algebra.b):
        if hilbert_symbol(algebra.a, algebra.b, Place.finite(p)) == -1:
            out.add(Place.finite(p))
    return frozenset(out)


def algebra_discriminant(algebra: QuaternionAlgebra) -> int:
    """Product of the finite ramified primes."""
    d = 1
    for place in ramified_places(algebra):
        if place.is_finite:
            d *= place.p
    return d


def algebras_isomorphic(h1: QuaternionAlgebra, h2: QuaternionAlgebra) -> bool:
    """Equal ramification sets classify rational quaternion algebras."""
    return ramified_places(h1) == ramified_places(h2)


def q_h_signature(inv: Involution) -> tuple[int, int, int]:
    return symmetric_signature(inv.gram_q_h())
