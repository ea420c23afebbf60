"""Dense exact linear algebra over the rationals or a quadratic extension.

Matrices are lists of lists of field scalars (Fraction or QuadExt); nothing
here ever rounds.
"""

from __future__ import annotations

from fractions import Fraction


def mat_identity(n: int):
    return [[Fraction(1) if i == j else Fraction(0) for j in range(n)] for i in range(n)]


def mat_mul(A, B):
    n, k, m = len(A), len(B), len(B[0])
    assert len(A[0]) == k
    return [
        [sum((A[i][t] * B[t][j] for t in range(k)), Fraction(0)) for j in range(m)]
        for i in range(n)
    ]


def mat_vec(A, v):
    return [sum((A[i][t] * v[t] for t in range(len(v))), Fraction(0)) for i in range(len(A))]


def mat_transpose(A):
    return [list(col) for col in zip(*A)]


def _elim(A, rhs=None):
    """Row-reduce A in place (a copy), returning (rows, pivots, rhs rows)."""
    M = [list(row) for row in A]
    R = [list(row) for row in rhs] if rhs is not None else None
    nrows, ncols = len(M), len(M[0])
    pivots = []
    r = 0
    for c in range(ncols):
        pr = None
        for i in range(r, nrows):
            if M[i][c] != 0:
                pr = i
                break
        if pr is None:
            continue
        M[r], M[pr] = M[pr], M[r]
        if R is not None:
            R[r], R[pr] = R[pr], R[r]
        inv = 1 / M[r][c]
        M[r] = [x * inv for x in M[r]]
        if R is not None:
            R[r] = [x * inv for x in R[r]]
        for i in range(nrows):
            if i != r and M[i][c] != 0:
                f = M[i][c]
                M[i] = [x - f * y for x, y in zip(M[i], M[r])]
                if R is not None:
                    R[i] = [x - f * y for x, y in zip(R[i], R[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return M, pivots, R


def rank(A) -> int:
    _, pivots, _ = _elim(A)
    return len(pivots)


def solve_right(A, b):
    """One solution x of A x = b, or None when the system is inconsistent."""
    M, pivots, R = _elim(A, [[v] for v in b])
    ncols = len(A[0])
    for i in range(len(pivots), len(M)):
        if R[i][0] != 0:
            return None
    x = [Fraction(0)] * ncols
    for i, c in enumerate(pivots):
        x[c] = R[i][0]
    return x


def invert(A):
    n = len(A)
    M, pivots, R = _elim(A, mat_identity(n))
    if len(pivots) != n:
        raise ValueError("matrix is singular")
    return R


def determinant(A):
    """Exact determinant by fraction-free-ish elimination with pivoting."""
    M = [list(row) for row in A]
    n = len(M)
    det = Fraction(1)
    for c in range(n):
        pr = None
        for i in range(c, n):
            if M[i][c] != 0:
                pr = i
                break
        if pr is None:
            return Fraction(0)
        if pr != c:
            M[c], M[pr] = M[pr], M[c]
            det = -det
        det = det * M[c][c]
        inv = 1 / M[c][c]
        for i in range(c + 1, n):
            if M[i][c] != 0:
                f = M[i][c] * inv
                M[i] = [x - f * y for x, y in zip(M[i], M[c])]
    return det


def nullspace(A):
    """A basis of the right kernel of A, as a list of vectors."""
    M, pivots, _ = _elim(A)
    ncols = len(A[0])
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for i, c in enumerate(pivots):
            v[c] = -M[i][f]
        basis.append(v)
    return basis


def symmetric_signature(A) -> tuple[int, int, int]:
    """(positive, negative, zero) inertia of a rational symmetric matrix,
    by exact congruence diagonalization."""
    M = [list(map(Fraction, row)) for row in A]
    n = len(M)
    pos = neg = zero = 0
    for k in range(n):
        if M[k][k] == 0:
            swap = None
            for i in range(k + 1, n):
                if M[i][i] != 0:
                    swap = i
                    break
            if swap is not None:
                i = swap
                M[k], M[i] = M[i], M[k]
                for row in M:
                    row[k], row[i] = row[i], row[k]
            else:
                off = None
                for i in range(k + 1, n):
                    if M[k][i] != 0:
                        off = i
                        break
                if off is None:
                    zero += 1
                    continue
                # e_k += e_off turns the diagonal entry into 2*M[k][off] != 0
                i = off
                for j in range(n):
                    M[k][j] = M[k][j] + M[i][j]
                for row in M:
                    row[k] = row[k] + row[i]
        d = M[k][k]
        if d > 0:
            pos += 1
        else:
            neg += 1
        factors = [M[i][k] / d for i in range(k + 1, n)]
        for idx, i in enumerate(range(k + 1, n)):
            f = factors[idx]
            if f != 0:
                for j in range(n):
                    M[i][j] = M[i][j] - f * M[k][j]
        for idx, i in enumerate(range(k + 1, n)):
            f = factors[idx]
            if f != 0:
                for j in range(n):
                    M[j][i] = M[j][i] - f * M[j][k]
    return pos, neg, zero
