"""Orders of a quaternion algebra as rank-4 lattices: ring and involution
closure, reduced discriminants, the discriminant maximality criterion, a
brute-force superorder scan, unit groups of definite orders, trace ideals,
and conjugation."""

from __future__ import annotations

import os
from fractions import Fraction
from itertools import combinations, product
from math import floor, gcd, isqrt, lcm

from .lattices import IntegerLattice, kernel_sublattice, lattice_canonicalize
from .quat import Involution, Quaternion, QuaternionAlgebra, algebra_discriminant
from .scalars import factorize, floor_sqrt, rational, scalar_rational, squarefree_kernel


class OrderError(ValueError):
    pass


DEFAULT_SCAN_PRIME_BOUND = 100


def _scan_prime_bound() -> int:
    raw = os.environ.get("QVAHLEN_SCAN_PRIME_BOUND")
    return int(raw) if raw else DEFAULT_SCAN_PRIME_BOUND


class OrderLattice:
    """A full-rank lattice in (1, i, j, ij) coordinates that contains 1, is
    closed under multiplication, and has integral elements."""

    __slots__ = ("algebra", "lattice", "reduced_disc")

    def __init__(self, algebra: QuaternionAlgebra, lattice: IntegerLattice):
        ok, witness = _order_violation(algebra, lattice)
        if not ok:
            raise OrderError(witness)
        object.__setattr__(self, "algebra", algebra)
        object.__setattr__(self, "lattice", lattice)
        object.__setattr__(self, "reduced_disc", _reduced_discriminant(algebra, lattice))

    def __setattr__(self, name, value):
        raise AttributeError("OrderLattice values are immutable")

    @classmethod
    def from_basis(cls, algebra: QuaternionAlgebra, rows) -> "OrderLattice":
        return cls(algebra, lattice_canonicalize(rows, 4))

    def basis_quaternions(self) -> list[Quaternion]:
        return [Quaternion(self.algebra, row) for row in self.lattice.basis()]

    def contains(self, q: Quaternion) -> bool:
        if not q.is_rational():
            return False
        return self.lattice.contains(q.rational_coords())

    def __eq__(self, other):
        return (
            isinstance(other, OrderLattice)
            and self.algebra == other.algebra
            and self.lattice == other.lattice
        )

    def __hash__(self):
        return hash((self.algebra, self.lattice))

    def __repr__(self):
        return "OrderLattice(disc=%d, %r)" % (self.reduced_disc, self.lattice)


def _order_violation(algebra, lattice):
    if lattice.ambient != 4 or lattice.rank != 4:
        return False, "lattice is not full rank 4"
    basis = [Quaternion(algebra, row) for row in lattice.basis()]
    if not lattice.contains([1, 0, 0, 0]):
        return False, "1 is not in the lattice"
    for e in basis:
        tr = scalar_rational(e.trace())
        nm = scalar_rational(e.norm())
        if tr.denominator != 1 or nm.denominator != 1:
            return False, "non-integral basis vector %r (trace %s, norm %s)" % (e, tr, nm)
    for i, ei in enumerate(basis):
        for j, ej in enumerate(basis):
            prod = ei * ej
            if not lattice.contains(prod.rational_coords()):
                return False, "product of basis vectors %d and %d escapes: %r" % (i, j, prod)
    return True, None


def check_order(algebra: QuaternionAlgebra, rows):
    """(is_order, violation) for a candidate rank-4 lattice given by rows."""
    try:
        lattice = lattice_canonicalize(rows, 4)
    except ValueError as e:
        raise OrderError(str(e))
    ok, witness = _order_violation(algebra, lattice)
    return ok, witness


def _reduced_discriminant(algebra, lattice) -> int:
    basis = [Quaternion(algebra, row) for row in lattice.basis()]
    gram = [
        [scalar_rational((ei * ej.conjugate()).trace()) for ej in basis] for ei in basis
    ]
    det = _det4(gram)
    num = abs(det)
    if num.denominator != 1:
        raise OrderError("trace pairing determinant %s is not an integer" % (num,))
    n = num.numerator
    r = isqrt(n)
    if r * r != n:
        raise OrderError("trace pairing determinant %d is not a perfect square" % n)
    return r


def _det4(M):
    from .linalg import determinant

    return determinant(M)


def is_sharp_stable(order: OrderLattice, inv: Involution) -> bool:
    if order.algebra != inv.algebra:
        raise ValueError("order and involution live in different algebras")
    return all(order.contains(inv.apply(e)) for e in order.basis_quaternions())


def sharp_stable_closure_is_self(order: OrderLattice, inv: Involution) -> bool:
    """Whether the lattice meet of the order with its involution image is the
    order itself; equivalent to stability."""
    image_rows = [inv.apply(e).rational_coords() for e in order.basis_quaternions()]
    image = lattice_canonicalize(image_rows, 4)
    met = _lattice_meet(order.lattice, image)
    return met == order.lattice


def _lattice_meet(l1: IntegerLattice, l2: IntegerLattice) -> IntegerLattice:
    """Intersection of two full-rank lattices via the kernel of the stacked
    relation matrix."""
    from .lattices import kernel_basis_int

    b1 = l1.basis()
    b2 = l2.basis()
    den = 1
    for row in b1 + b2:
        for x in row:
            den = lcm(den, x.denominator)
    stacked = [[int(x * den) for x in row] for row in b1]
    stacked += [[-int(x * den) for x in row] for row in b2]
    kernel = kernel_basis_int(stacked)
    out = []
    for c in kernel:
        vec = [Fraction(0)] * 4
        for i in range(4):
            for k in range(4):
                vec[k] += Fraction(c[i]) * b1[i][k]
        out.append(vec)
    return lattice_canonicalize(out, 4)


def involution_ideal_generator(inv: Involution) -> int:
    """Squarefree generator of the ideal attached to the square class of
    mu^2."""
    return inv.disc_class()


def maximality_certificate(order: OrderLattice, inv: Involution) -> dict:
    """Discriminant criterion: a stable order is maximal among stable orders
    exactly when its reduced discriminant is lcm(disc of the algebra,
    squarefree class of mu^2).  The target is squarefree, so an order hitting
    it is hereditary; discriminant plus stability therefore suffices."""
    if order.algebra != inv.algebra:
        raise ValueError("order and involution live in different algebras")
    stable = is_sharp_stable(order, inv)
    disc_h = algebra_discriminant(order.algebra)
    iota = involution_ideal_generator(inv)
    target = lcm(disc_h, iota)
    verdict = stable and order.reduced_disc == target
    return {
        "is_maximal_sharp": verdict,
        "sharp_stable": stable,
        "algebra_discriminant": disc_h,
        "involution_ideal": iota,
        "target_discriminant": target,
        "order_discriminant": order.reduced_disc,
        "note": (
            "target is squarefree, so matching it makes the order hereditary;"
            " discriminant equality plus closure under the involution decides"
            " maximality"
        ),
    }


def is_maximal_sharp_order(order: OrderLattice, inv: Involution) -> bool:
    return maximality_certificate(order, inv)["is_maximal_sharp"]


# ---------------------------------------------------------------------------
# superorder scan
# ---------------------------------------------------------------------------


def _rref_coefficient_matrices(p: int, d: int, k: int):
    """Each k-dimensional subspace of (Z/p)^d exactly once, as a reduced
    row-echelon coefficient matrix."""
    for pivots in combinations(range(d), k):
        free = [
            (r, c)
            for r in range(k)
            for c in range(pivots[r] + 1, d)
            if c not in pivots
        ]
        for values in product(range(p), repeat=len(free)):
            M = [[0] * d for _ in range(k)]
            for r in range(k):
                M[r][pivots[r]] = 1
            for (r, c), v in zip(free, values):
                M[r][c] = v
            yield M


def _subspaces(p: int, gens):
    """All nonzero subspaces of dimension <= 3 of the span of gens inside
    (Z/p)^4, each as an echelonized basis of ambient vectors."""
    basis = _echelonize(gens, p)
    d = len(basis)
    for k in range(1, min(d, 3) + 1):
        for M in _rref_coefficient_matrices(p, d, k):
            vecs = []
            for row in M:
                v = [0, 0, 0, 0]
                for c, b in zip(row, basis):
                    if c:
                        v = [(x + c * y) % p for x, y in zip(v, b)]
                vecs.append(v)
            yield vecs


def _echelonize(vecs, p):
    rows = [list(v) for v in vecs]
    out = []
    for v in rows:
        for b in out:
            piv = next(i for i, x in enumerate(b) if x)
            if v[piv]:
                f = v[piv] * pow(b[piv], -1, p) % p
                v = [(x - f * y) % p for x, y in zip(v, b)]
        if any(v):
            piv = next(i for i, x in enumerate(v) if x)
            inv_ = pow(v[piv], -1, p)
            out.append([x * inv_ % p for x in v])
    out.sort(key=lambda b: next(i for i, x in enumerate(b) if x))
    # reduce above pivots for a canonical echelon form
    for idx in range(len(out) - 1, -1, -1):
        piv = next(i for i, x in enumerate(out[idx]) if x)
        for jdx in range(idx):
            f = out[jdx][piv]
            if f:
                out[jdx] = [(x - f * y) % p for x, y in zip(out[jdx], out[idx])]
    return out


def _qualifying_lines(order: OrderLattice, inv: Involution, p: int):
    """Lines v in (Z/p)^4 whose lift v/p could belong to a larger order:
    every element must stay integral, which pins down linear trace conditions
    mod p and a norm condition mod p^2."""
    basis = order.basis_quaternions()
    gram = [
        [int(scalar_rational((ei * ej.conjugate()).trace())) for ej in basis]
        for ei in basis
    ]
    traces = [int(scalar_rational(e.trace())) for e in basis]
    lines = []
    for vec in _line_representatives(p):
        if sum(t * v for t, v in zip(traces, vec)) % p:
            continue
        if any(sum(g * v for g, v in zip(row, vec)) % p for row in gram):
            continue
        w = _combine(basis, vec)
        n = scalar_rational(w.norm())
        if n % (p * p):
            continue
        lines.append(vec)
    return lines


def _line_representatives(p: int):
    for lead in range(4):
        head = [0] * lead + [1]
        for tail in product(range(p), repeat=3 - lead):
            yield head + list(tail)


def _combine(basis, vec) -> Quaternion:
    out = basis[0].scale(vec[0])
    for c, e in zip(vec[1:], basis[1:]):
        if c:
            out = out + e.scale(c)
    return out


def _step_superorders(order: OrderLattice, inv: Involution, p: int):
    """Strictly larger stable orders between the order and its p-division,
    found by enumerating subgroups of the quotient that pass integrality."""
    lines = _qualifying_lines(order, inv, p)
    if not lines:
        return []
    basis = order.basis_quaternions()
    found = []
    seen = set()
    for subgroup in _subspaces(p, lines):
        rows = [row[:] for row in order.lattice.basis()]
        for vec in subgroup:
            w = _combine(basis, vec)
            rows.append([c / p for c in w.rational_coords()])
        lattice = lattice_canonicalize(rows, 4)
        if lattice == order.lattice or lattice in seen:
            continue
        seen.add(lattice)
        ok, _ = _order_violation(order.algebra, lattice)
        if not ok:
            continue
        candidate = OrderLattice(order.algebra, lattice)
        if is_sharp_stable(candidate, inv):
            found.append(candidate)
    return found


def sharp_superorder_scan(order: OrderLattice, inv: Involution) -> list[OrderLattice]:
    """Exhaustively grow the order inside (1/p)-divisions at every prime of
    its discriminant, iterating to a fixpoint.  Returns the strictly larger
    stable orders at which growth stops; empty means no stable superorder
    exists in the scanned family."""
    if not is_sharp_stable(order, inv):
        raise OrderError("superorder scan expects an order closed under the involution")
    bound = _scan_prime_bound()
    terminal: dict[IntegerLattice, OrderLattice] = {}
    frontier = [order]
    visited = {order.lattice}
    while frontier:
        current = frontier.pop()
        primes = sorted(factorize(current.reduced_disc)) if current.reduced_disc > 1 else []
        for p in primes:
            if p > bound:
                raise OrderError(
                    "superorder scan refuses prime %d beyond the bound %d" % (p, bound)
                )
        grown = []
        for p in primes:
            grown.extend(_step_superorders(current, inv, p))
        if not grown:
            if current.lattice != order.lattice:
                terminal[current.lattice] = current
            continue
        for nxt in grown:
            if nxt.lattice not in visited:
                visited.add(nxt.lattice)
                frontier.append(nxt)
    return sorted(terminal.values(), key=lambda o: (o.reduced_disc, o.lattice.mat))


# ---------------------------------------------------------------------------
# unit groups, trace ideals, conjugation
# ---------------------------------------------------------------------------


def unit_group(order: OrderLattice) -> list[Quaternion]:
    """All norm-1 elements of a definite order, by exhaustive search inside
    the norm-form ellipsoid."""
    if not order.algebra.is_definite:
        raise OrderError("unit enumeration needs a definite algebra; the unit group is infinite")
    basis = order.basis_quaternions()
    gram = [
        [scalar_rational((ei * ej.conjugate()).trace()) / 2 for ej in basis]
        for ei in basis
    ]
    diag, upper = _ldl(gram)
    sols = []
    x = [0, 0, 0, 0]

    def recurse(level: int, remaining: Fraction):
        if level < 0:
            q = _combine(basis, x)
            if scalar_rational(q.norm()) == 1:
                sols.append(q)
            return
        center = sum((upper[level][j] * x[j] for j in range(level + 1, 4)), Fraction(0))
        budget = remaining / diag[level]
        s = floor_sqrt(budget) + 1
        lo = -center - s
        hi = -center + s
        k = floor(lo)
        while k <= hi:
            used = diag[level] * (k + center) ** 2
            if used <= remaining:
                x[level] = k
                recurse(level - 1, remaining - used)
            k += 1
        x[level] = 0

    recurse(3, Fraction(1))
    uniq = {q.rational_coords(): q for q in sols}
    return [uniq[c] for c in sorted(uniq)]


def _ldl(gram):
    n = len(gram)
    A = [[Fraction(x) for x in row] for row in gram]
    diag = []
    upper = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        d = A[i][i]
        if d <= 0:
            raise OrderError("norm form is not positive definite")
        diag.append(d)
        for j in range(i + 1, n):
            upper[i][j] = A[i][j] / d
        for r in range(i + 1, n):
            for c in range(i + 1, n):
                A[r][c] -= A[r][i] * A[i][c] / d
    return diag, upper


def plus_part_lattice(order: OrderLattice, inv: Involution) -> IntegerLattice:
    """The rank-3 lattice of order elements fixed by the involution."""
    functional = inv._std_to_eigen[3]
    return kernel_sublattice(order.lattice, [functional])


def trace_ideal_plus_part(order: OrderLattice, inv: Involution) -> int:
    """gcd of the traces over a basis of the fixed-part lattice."""
    if order.algebra != inv.algebra:
        raise ValueError("order and involution live in different algebras")
    lat = plus_part_lattice(order, inv)
    g = 0
    for row in lat.basis():
        tr = 2 * rational(row[0])
        if tr.denominator != 1:
            raise OrderError("non-integral trace in the fixed part")
        g = gcd(g, abs(tr.numerator))
    return g


def conjugate_order(u: Quaternion, order: OrderLattice) -> OrderLattice:
    """The order u O u^(-1), canonicalized.  The conjugator may live over a
    quadratic extension as long as every conjugated basis vector lands back
    over the rationals."""
    if u.norm() == 0:
        raise ValueError("conjugator must be invertible")
    u_inv = u.inverse()
    rows = []
    for e in order.basis_quaternions():
        img = u * e * u_inv
        if not img.is_rational():
            raise ValueError("conjugate of basis vector %r leaves the rational span" % (e,))
        rows.append(img.rational_coords())
    out = OrderLattice.from_basis(order.algebra, rows)
    if out.reduced_disc != order.reduced_disc:
        raise OrderError("conjugation changed the reduced discriminant")
    return out


def invariant_report(order: OrderLattice, inv: Involution) -> dict:
    """The isomorphism-sensitive record of an order with involution."""
    from .quat import ramified_places

    places = sorted(ramified_places(order.algebra))
    report = {
        "ramified_places": [str(v) for v in places],
        "reduced_discriminant": order.reduced_disc,
        "maximal_sharp": is_maximal_sharp_order(order, inv),
        "trace_ideal_plus_part": trace_ideal_plus_part(order, inv),
        "local_disc_valuations": {
            str(p): e for p, e in sorted(factorize(order.reduced_disc).items())
        }
        if order.reduced_disc > 1
        else {},
    }
    if order.algebra.is_definite:
        report["unit_group_order"] = len(unit_group(order))
    return report
