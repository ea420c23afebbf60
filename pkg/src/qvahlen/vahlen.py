"""The matrix group attached to a quaternion algebra with orthogonal
involution: 2x2 matrices (a, b; c, d) with a*b^# and c*d^# in the plus part
and a*d^# - b*c^# = 1, together with its unipotent generators, generator
decomposition, and the degree-5 orthogonal representation."""

from __future__ import annotations

from fractions import Fraction

from .linalg import determinant, solve_right
from .quat import Involution, Quaternion
from .scalars import (
    QuadExt,
    scalar_is_rational,
    scalar_rational,
    square_class_split,
)


class MembershipError(ValueError):
    def __init__(self, violations):
        super().__init__("not a group element: " + ", ".join(violations))
        self.violations = violations


def membership_violations(entries, inv: Involution) -> list[str]:
    """The defining conditions that fail for a 2x2 entry matrix."""
    (a, b), (c, d) = entries
    out = []
    if not inv.in_plus(a * inv.apply(b)):
        out.append("ab^sharp outside the plus part")
    if not inv.in_plus(c * inv.apply(d)):
        out.append("cd^sharp outside the plus part")
    if a * inv.apply(d) - b * inv.apply(c) != a.algebra.one():
        out.append("ad^sharp - bc^sharp != 1")
    return out


class VahlenMatrix:
    """A checked group element; construction validates the three defining
    conditions exactly."""

    __slots__ = ("involution", "entries")

    def __init__(self, inv: Involution, entries, _checked=False):
        entries = (
            (entries[0][0], entries[0][1]),
            (entries[1][0], entries[1][1]),
        )
        for row in entries:
            for q in row:
                if not isinstance(q, Quaternion) or q.algebra != inv.algebra:
                    raise ValueError("entries must be quaternions of the involution's algebra")
        if not _checked:
            bad = membership_violations(entries, inv)
            if bad:
                raise MembershipError(bad)
        object.__setattr__(self, "involution", inv)
        object.__setattr__(self, "entries", entries)

    def __setattr__(self, name, value):
        raise AttributeError("VahlenMatrix values are immutable")

    @classmethod
    def identity(cls, inv: Involution) -> "VahlenMatrix":
        alg = inv.algebra
        return cls(inv, ((alg.one(), alg.zero()), (alg.zero(), alg.one())), _checked=True)

    @property
    def a(self):
        return self.entries[0][0]

    @property
    def b(self):
        return self.entries[0][1]

    @property
    def c(self):
        return self.entries[1][0]

    @property
    def d(self):
        return self.entries[1][1]

    def is_rational(self) -> bool:
        return all(q.is_rational() for row in self.entries for q in row)

    def __mul__(self, other):
        if not isinstance(other, VahlenMatrix):
            return NotImplemented
        if self.involution != other.involution:
            raise ValueError("elements of different groups")
        (a1, b1), (c1, d1) = self.entries
        (a2, b2), (c2, d2) = other.entries
        return VahlenMatrix(
            self.involution,
            (
                (a1 * a2 + b1 * c2, a1 * b2 + b1 * d2),
                (c1 * a2 + d1 * c2, c1 * b2 + d1 * d2),
            ),
            _checked=True,
        )

    def inverse(self) -> "VahlenMatrix":
        inv = self.involution
        (a, b), (c, d) = self.entries
        return VahlenMatrix(
            inv,
            ((inv.apply(d), -inv.apply(b)), (-inv.apply(c), inv.apply(a))),
            _checked=True,
        )

    def __neg__(self):
        return VahlenMatrix(
            self.involution,
            tuple(tuple(-q for q in row) for row in self.entries),
            _checked=True,
        )

    def __eq__(self, other):
        if not isinstance(other, VahlenMatrix):
            return NotImplemented
        return self.involution == other.involution and self.entries == other.entries

    def __hash__(self):
        return hash((self.involution, self.entries))

    def __repr__(self):
        return "VahlenMatrix(%r, %r; %r, %r)" % (self.a, self.b, self.c, self.d)


def is_member(inv: Involution, entries) -> tuple[bool, list[str]]:
    bad = membership_violations(entries, inv)
    return not bad, bad


def gen_upper(inv: Involution, z: Quaternion) -> VahlenMatrix:
    if not inv.in_plus(z):
        raise ValueError("generator argument must lie in the plus part")
    alg = inv.algebra
    return VahlenMatrix(inv, ((alg.one(), z), (alg.zero(), alg.one())), _checked=True)


def gen_lower(inv: Involution, z: Quaternion) -> VahlenMatrix:
    if not inv.in_plus(z):
        raise ValueError("generator argument must lie in the plus part")
    alg = inv.algebra
    return VahlenMatrix(inv, ((alg.one(), alg.zero()), (z, alg.one())), _checked=True)


def word_product(inv: Involution, word) -> VahlenMatrix:
    out = VahlenMatrix.identity(inv)
    for kind, z in word:
        gen = gen_upper(inv, z) if kind == "U" else gen_lower(inv, z)
        out = out * gen
    return out


# ---------------------------------------------------------------------------
# unit factorization and generator decomposition
# ---------------------------------------------------------------------------


_SEARCH_RANGE = 8


def write_unit_as_one_plus_xy(inv: Involution, u: Quaternion):
    """x, y in the plus part with 1 + x*y = u, for invertible u.

    x ranges over the plane where the minus component of conj(x)*(u-1)
    vanishes; any x there with nonzero norm works with y = x^(-1)*(u-1).
    """
    alg = inv.algebra
    if u.norm() == 0:
        raise ValueError("u must be invertible")
    one = alg.one()
    w = u - one
    if w.is_zero():
        return alg.zero(), alg.zero()
    # linear condition on plus coordinates of x
    coeffs = [inv.minus_coefficient(inv.plus_basis[k].conjugate() * w) for k in range(3)]
    if all(c == 0 for c in coeffs):
        directions = [(1, 0, 0), (0, 1, 0), (0, 0, 1)]
    else:
        directions = _plane_basis(coeffs)
    for s, t in _spiral(_SEARCH_RANGE):
        if s == 0 and t == 0:
            continue
        if len(directions) == 3:
            combos = [
                tuple(s * a + t * b for a, b in zip(directions[m], directions[(m + 1) % 3]))
                for m in range(3)
            ]
        else:
            combos = [tuple(s * a + t * b for a, b in zip(directions[0], directions[1]))]
        for coords in combos:
            x = inv.from_plus_coordinates(coords)
            if x.norm() == 0:
                continue
            y = x.inverse() * w
            if not inv.in_plus(y):
                continue
            assert one + x * y == u
            return x, y
    raise ValueError("no unit factorization found within the search bound")


def _plane_basis(coeffs):
    rows = [[c for c in coeffs]]
    kernel = []
    from .linalg import nullspace

    for v in nullspace(rows):
        kernel.append(tuple(v))
    assert len(kernel) == 2
    return kernel


def _spiral(bound: int):
    for radius in range(0, bound + 1):
        for s in range(-radius, radius + 1):
            for t in range(-radius, radius + 1):
                if max(abs(s), abs(t)) == radius:
                    yield s, t


def _diag_word(inv: Involution, u: Quaternion):
    """Generator word for diag(u, (u^(-1))^#), via u = 1 + x*y."""
    alg = inv.algebra
    one = alg.one()
    if u == one:
        return []
    try:
        x, y = write_unit_as_one_plus_xy(inv, u)
    except ValueError:
        # factor u across two units that both admit a factorization
        for g in _fallback_factors(inv):
            try:
                left = _diag_word_direct(inv, u * g.inverse())
                right = _diag_word_direct(inv, g)
                return left + right
            except ValueError:
                continue
        raise
    return _word_from_xy(inv, u, x, y)


def _diag_word_direct(inv: Involution, u: Quaternion):
    if u == inv.algebra.one():
        return []
    x, y = write_unit_as_one_plus_xy(inv, u)
    return _word_from_xy(inv, u, x, y)


def _word_from_xy(inv, u, x, y):
    u_inv = u.inverse()
    word = [
        ("L", -(y * u_inv)),
        ("U", x),
        ("L", y),
        ("U", -(u_inv * x)),
    ]
    return [(k, z) for k, z in word if not z.is_zero()]


def _fallback_factors(inv: Involution):
    alg = inv.algebra
    one = alg.one()
    out = []
    for base in inv.plus_basis:
        out.append(one + base)
        out.append(one - base)
    out.append(alg.scalar(2))
    return out


def decompose(m: VahlenMatrix):
    """A word in the unipotent generators whose product equals m exactly."""
    inv = m.involution
    alg = inv.algebra
    word = _decompose_inner(m, allow_shift=True)
    assert word_product(inv, word) == m
    return word


def _decompose_inner(m: VahlenMatrix, allow_shift: bool):
    inv = m.involution
    d = m.d
    if d.norm() == 0:
        if not allow_shift:
            raise ValueError("degenerate lower-right entry persists")
        for z0 in _shift_candidates(inv):
            shifted_d = z0 * m.b + m.d
            if shifted_d.norm() != 0:
                shifted = gen_lower(inv, z0) * m
                word = _decompose_inner(shifted, allow_shift=False)
                return [("L", -z0)] + word
        raise ValueError("no shift makes the lower-right entry invertible: %r" % (m,))
    d_inv = d.inverse()
    bd = m.b * d_inv
    dc = d_inv * m.c
    u = m.a - m.b * d_inv * m.c
    word = []
    if not bd.is_zero():
        word.append(("U", bd))
    word += _diag_word(inv, u)
    if not dc.is_zero():
        word.append(("L", dc))
    return word


def _shift_candidates(inv: Involution):
    plus = inv.plus_basis
    out = []
    for p in plus:
        out.append(p)
        out.append(-p)
    for i in range(3):
        for j in range(i + 1, 3):
            out.append(plus[i] + plus[j])
            out.append(-(plus[i] + plus[j]))
    return out


# ---------------------------------------------------------------------------
# points of the hermitian model and the orthogonal representation
# ---------------------------------------------------------------------------


class HermitianPoint:
    """(s, t, z) with z in the plus part, carried by the matrix
    (s, z; conj(z), t); the quadratic value is s*t - nrm(z)."""

    __slots__ = ("involution", "s", "t", "z")

    def __init__(self, inv: Involution, s, t, z: Quaternion):
        if not inv.in_plus(z):
            raise ValueError("z must lie in the plus part")
        object.__setattr__(self, "involution", inv)
        object.__setattr__(self, "s", scalar_rational(s))
        object.__setattr__(self, "t", scalar_rational(t))
        object.__setattr__(self, "z", z)

    def __setattr__(self, name, value):
        raise AttributeError("HermitianPoint values are immutable")

    def q_value(self):
        return self.s * self.t - scalar_rational(self.z.norm())

    def matrix(self):
        alg = self.involution.algebra
        return (
            (alg.scalar(self.s), self.z),
            (self.z.conjugate(), alg.scalar(self.t)),
        )


def _transform_point(m: VahlenMatrix, pt: HermitianPoint) -> HermitianPoint:
    (a, b), (c, d) = m.entries
    (m11, m12), (m21, m22) = pt.matrix()
    # m * M * conjugate-transpose(m)
    r11 = (a * m11 + b * m21) * a.conjugate() + (a * m12 + b * m22) * b.conjugate()
    r12 = (a * m11 + b * m21) * c.conjugate() + (a * m12 + b * m22) * d.conjugate()
    r21 = (c * m11 + d * m21) * a.conjugate() + (c * m12 + d * m22) * b.conjugate()
    r22 = (c * m11 + d * m21) * c.conjugate() + (c * m12 + d * m22) * d.conjugate()
    if not (r11.is_scalar() and r22.is_scalar()):
        raise ValueError("transformed point has non-scalar diagonal")
    if r21 != r12.conjugate():
        raise ValueError("transformed point is not hermitian")
    inv = m.involution
    return HermitianPoint(inv, r11.coords[0], r22.coords[0], r12)


def spinor_matrix(m: VahlenMatrix):
    """The 5x5 rational matrix of M -> m M conj(m)^T in coordinates
    (s, t, plus coordinates of z); preserves the quadratic form exactly and
    has determinant 1."""
    if not m.is_rational():
        raise ValueError("the orthogonal representation is computed over the rationals")
    inv = m.involution
    alg = inv.algebra
    cols = []
    basis_points = [
        HermitianPoint(inv, 1, 0, alg.zero()),
        HermitianPoint(inv, 0, 1, alg.zero()),
        HermitianPoint(inv, 0, 0, inv.plus_basis[0]),
        HermitianPoint(inv, 0, 0, inv.plus_basis[1]),
        HermitianPoint(inv, 0, 0, inv.plus_basis[2]),
    ]
    for pt in basis_points:
        img = _transform_point(m, pt)
        zc = inv.plus_coordinates(img.z)
        cols.append([img.s, img.t, zc[0], zc[1], zc[2]])
    return [[scalar_rational(cols[j][i]) for j in range(5)] for i in range(5)]


def spinor_is_orthogonal(G, gram) -> bool:
    n = len(G)
    for i in range(n):
        for j in range(n):
            val = sum(G[r][i] * gram[r][c] * G[c][j] for r in range(n) for c in range(n))
            if val != gram[i][j]:
                return False
    return determinant(G) == 1


# ---------------------------------------------------------------------------
# diagonal conjugators
# ---------------------------------------------------------------------------


def build_diag_conjugator(inv: Involution, u: Quaternion) -> VahlenMatrix:
    """diag(u', (u'^(-1))^#) with u' = u / sqrt(nrm(u)), over Q when nrm(u)
    is a square and over Q(sqrt(squarefree part)) otherwise."""
    n = u.norm()
    n = scalar_rational(n)
    if n == 0:
        raise ValueError("conjugator must be invertible")
    if n < 0:
        raise ValueError("nrm(u) < 0 needs an imaginary extension, which is unsupported")
    q, s = square_class_split(n)
    if s == 1:
        factor = 1 / q
    else:
        # 1/sqrt(n) = sqrt(s) / (q*s)
        factor = QuadExt(s, 0, Fraction(1) / (q * s))
    u_prime = u.scale(factor)
    d_entry = inv.apply(u_prime.inverse())
    alg = inv.algebra
    return VahlenMatrix(inv, ((u_prime, alg.zero()), (alg.zero(), d_entry)))
