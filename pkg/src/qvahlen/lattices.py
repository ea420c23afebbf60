"""Integer lattices in Q^n with a unique canonical basis.

The canonical form is the row-style Hermite reduction of the basis scaled to
an integer matrix, with the scaling denominator stored separately and the
common content divided out; two lattices are equal iff their canonical forms
are identical tuples.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm

from .linalg import invert
from .scalars import rational


def xgcd(a: int, b: int) -> tuple[int, int, int]:
    """(g, s, t) with s*a + t*b = g = gcd(a, b), g >= 0."""
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r < 0:
        old_r, old_s, old_t = -old_r, -old_s, -old_t
    return old_r, old_s, old_t


def _hnf_core(rows, want_transform: bool):
    A = [[int(x) for x in row] for row in rows]
    m = len(A)
    n = len(A[0]) if m else 0
    U = [[1 if i == j else 0 for j in range(m)] for i in range(m)] if want_transform else None
    r = 0
    for c in range(n):
        if r == m:
            break
        # gcd-reduce column c below row r until a single pivot remains
        while True:
            nz = [i for i in range(r, m) if A[i][c]]
            if not nz:
                break
            k = min(nz, key=lambda i: abs(A[i][c]))
            if k != r:
                A[r], A[k] = A[k], A[r]
                if U is not None:
                    U[r], U[k] = U[k], U[r]
            done = True
            for i in range(r + 1, m):
                if A[i][c]:
                    q = A[i][c] // A[r][c]
                    A[i] = [x - q * y for x, y in zip(A[i], A[r])]
                    if U is not None:
                        U[i] = [x - q * y for x, y in zip(U[i], U[r])]
                    if A[i][c]:
                        done = False
            if done:
                break
        if A[r][c]:
            if A[r][c] < 0:
                A[r] = [-x for x in A[r]]
                if U is not None:
                    U[r] = [-x for x in U[r]]
            for i in range(r):
                q = A[i][c] // A[r][c]
                if q:
                    A[i] = [x - q * y for x, y in zip(A[i], A[r])]
                    if U is not None:
                        U[i] = [x - q * y for x, y in zip(U[i], U[r])]
            r += 1
    return A, U, r


def hnf(rows) -> list[list[int]]:
    """Canonical Hermite form of the row span; zero rows are dropped."""
    A, _, r = _hnf_core(rows, False)
    return A[:r]


def hnf_with_transform(rows):
    """(H, U, rank) with U unimodular, U*rows = H padded with zero rows."""
    A, U, r = _hnf_core(rows, True)
    return A[:r], U, r


def kernel_basis_int(rows) -> list[list[int]]:
    """Basis of the left integer kernel {c : c * rows = 0}."""
    _, U, r = hnf_with_transform(rows)
    return U[r:]


def smith_invariants(rows) -> list[int]:
    """Positive invariant factors d1 | d2 | ... of an integer matrix."""
    A = [[int(x) for x in row] for row in rows]
    m = len(A)
    n = len(A[0]) if m else 0
    out = []
    top = 0
    while top < min(m, n):
        # find the smallest nonzero entry in the remaining block
        best = None
        for i in range(top, m):
            for j in range(top, n):
                if A[i][j] and (best is None or abs(A[i][j]) < abs(A[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        bi, bj = best
        A[top], A[bi] = A[bi], A[top]
        for row in A:
            row[top], row[bj] = row[bj], row[top]
        p = A[top][top]
        dirty = False
        for i in range(top + 1, m):
            if A[i][top]:
                q = A[i][top] // p
                A[i] = [x - q * y for x, y in zip(A[i], A[top])]
                if A[i][top]:
                    dirty = True
        for j in range(top + 1, n):
            if A[top][j]:
                q = A[top][j] // p
                for i in range(m):
                    A[i][j] -= q * A[i][top]
                if A[top][j]:
                    dirty = True
        if dirty:
            continue
        # p must divide every remaining entry for the divisibility chain
        fix = None
        for i in range(top + 1, m):
            for j in range(top + 1, n):
                if A[i][j] % p:
                    fix = i
                    break
            if fix is not None:
                break
        if fix is not None:
            A[top] = [x + y for x, y in zip(A[top], A[fix])]
            continue
        out.append(abs(p))
        top += 1
    return out


class IntegerLattice:
    """A rank-r lattice in Q^n in canonical Hermite-reduced form."""

    __slots__ = ("ambient", "rank", "den", "mat")

    def __init__(self, ambient: int, rank: int, den: int, mat):
        object.__setattr__(self, "ambient", ambient)
        object.__setattr__(self, "rank", rank)
        object.__setattr__(self, "den", den)
        object.__setattr__(self, "mat", mat)

    def __setattr__(self, name, value):
        raise AttributeError("IntegerLattice values are immutable")

    @classmethod
    def from_rows(cls, rows) -> "IntegerLattice":
        rows = [[rational(x) for x in row] for row in rows]
        if not rows:
            raise ValueError("empty generating set")
        n = len(rows[0])
        if any(len(r) != n for r in rows):
            raise ValueError("ragged generating set")
        den = 1
        for row in rows:
            for x in row:
                den = lcm(den, x.denominator)
        imat = [[int(x * den) for x in row] for row in rows]
        H = hnf(imat)
        content = 0
        for row in H:
            for x in row:
                content = gcd(content, x)
        g = gcd(content, den)
        if g > 1:
            den //= g
            H = [[x // g for x in row] for row in H]
        return cls(n, len(H), den, tuple(tuple(row) for row in H))

    # -- views ----------------------------------------------------------

    def basis(self) -> list[list[Fraction]]:
        d = self.den
        return [[Fraction(x, d) for x in row] for row in self.mat]

    def determinant(self) -> Fraction:
        if self.rank != self.ambient:
            raise ValueError("determinant needs a full-rank lattice")
        det = 1
        for i in range(self.rank):
            det *= self.mat[i][i]
        return Fraction(det, self.den**self.ambient)

    # -- membership and coordinates --------------------------------------

    def _pivot_cols(self) -> list[int]:
        cols = []
        for row in self.mat:
            for j, x in enumerate(row):
                if x:
                    cols.append(j)
                    break
        return cols

    def coordinates(self, vec):
        """Integer coordinates of vec in the canonical basis, or None."""
        w = [rational(x) * self.den for x in vec]
        if any(x.denominator != 1 for x in w):
            return None
        w = [int(x) for x in w]
        coords = []
        for i, row in enumerate(self.mat):
            p = None
            for j, x in enumerate(row):
                if x:
                    p = j
                    break
            q, rem = divmod(w[p], row[p])
            if rem:
                return None
            coords.append(q)
            if q:
                w = [x - q * y for x, y in zip(w, row)]
        if any(w):
            return None
        return coords

    def rational_coordinates(self, vec):
        """Rational coordinates in the canonical basis, or None if off-span."""
        w = [rational(x) * self.den for x in vec]
        coords = []
        for row in self.mat:
            p = None
            for j, x in enumerate(row):
                if x:
                    p = j
                    break
            q = w[p] / row[p]
            coords.append(q)
            if q:
                w = [x - q * y for x, y in zip(w, row)]
        if any(w):
            return None
        return coords

    def contains(self, vec) -> bool:
        return self.coordinates(vec) is not None

    # -- constructions ----------------------------------------------------

    def with_extra_rows(self, rows) -> "IntegerLattice":
        return IntegerLattice.from_rows(self.basis() + [[rational(x) for x in r] for r in rows])

    def scaled(self, q) -> "IntegerLattice":
        q = rational(q)
        return IntegerLattice.from_rows([[x * q for x in row] for row in self.basis()])

    def __eq__(self, other):
        if not isinstance(other, IntegerLattice):
            return NotImplemented
        return (
            self.ambient == other.ambient
            and self.rank == other.rank
            and self.den == other.den
            and self.mat == other.mat
        )

    def __hash__(self):
        return hash((self.ambient, self.rank, self.den, self.mat))

    def __repr__(self):
        return "IntegerLattice(rank=%d, den=%d, mat=%r)" % (self.rank, self.den, self.mat)


def lattice_canonicalize(rows, ambient_rank: int) -> IntegerLattice:
    """Canonical form of the Z-span of the rows; requires full rank."""
    lat = IntegerLattice.from_rows(rows)
    if lat.ambient != ambient_rank:
        raise ValueError("ambient dimension %d != %d" % (lat.ambient, ambient_rank))
    if lat.rank != ambient_rank:
        raise ValueError("generators span rank %d < %d" % (lat.rank, ambient_rank))
    return lat


def lattice_index(sub: IntegerLattice, sup: IntegerLattice) -> Fraction:
    """|det(sub)| / |det(sup)|; an integer when sub is contained in sup."""
    if sub.ambient != sup.ambient or sub.rank != sup.rank:
        raise ValueError("rank mismatch")
    return sub.determinant() / sup.determinant()


def kernel_sublattice(lat: IntegerLattice, functionals) -> IntegerLattice:
    """The sublattice of vectors killed by every given rational functional."""
    vals = []
    den = 1
    for row in lat.basis():
        vrow = [sum((rational(f[k]) * row[k] for k in range(lat.ambient)), Fraction(0)) for f in functionals]
        for x in vrow:
            den = lcm(den, x.denominator)
        vals.append(vrow)
    imat = [[int(x * den) for x in row] for row in vals]
    coeffs = kernel_basis_int(imat)
    base = lat.basis()
    rows = [
        [sum((Fraction(c[i]) * base[i][k] for i in range(lat.rank)), Fraction(0)) for k in range(lat.ambient)]
        for c in coeffs
    ]
    if not rows:
        raise ValueError("trivial kernel sublattice")
    return IntegerLattice.from_rows(rows)


def invariant_factor_ratios(l1: IntegerLattice, l2: IntegerLattice) -> list[Fraction]:
    """Elementary divisors of l2 relative to l1 (both full rank): the d_i with
    suitable bases e_i of l1 and d_i*e_i of l2."""
    if l1.ambient != l2.ambient or l1.rank != l1.ambient or l2.rank != l2.ambient:
        raise ValueError("full-rank lattices of equal ambient dimension required")
    B1inv = invert(l1.basis())
    B2 = l2.basis()
    n = l1.ambient
    T = [[sum((B2[i][k] * B1inv[k][j] for k in range(n)), Fraction(0)) for j in range(n)] for i in range(n)]
    den = 1
    for row in T:
        for x in row:
            den = lcm(den, x.denominator)
    S = smith_invariants([[int(x * den) for x in row] for row in T])
    return sorted(Fraction(s, den) for s in S)
