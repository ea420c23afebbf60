"""Arithmetic subgroups cut out by an order: integral membership, the
matrix-ring lattice generated by group elements, conjugacy and isomorphism
certificates, per-prime lattice comparison, and the plus-part conjugation
constraint."""

from __future__ import annotations

from fractions import Fraction
from math import lcm

from .lattices import IntegerLattice, invariant_factor_ratios
from .orders import OrderLattice
from .quat import (
    Involution,
    Quaternion,
    QuaternionAlgebra,
    algebra_discriminant,
    ramified_places,
)
from .scalars import factorize, rational, scalar_rational, valuation
from .vahlen import VahlenMatrix


Mat2 = tuple  # ((a, b), (c, d)) of quaternions; raw ring elements, not group elements


def mat2_mul(m1: Mat2, m2: Mat2) -> Mat2:
    (a1, b1), (c1, d1) = m1
    (a2, b2), (c2, d2) = m2
    return (
        (a1 * a2 + b1 * c2, a1 * b2 + b1 * d2),
        (c1 * a2 + d1 * c2, c1 * b2 + d1 * d2),
    )


def mat2_is_rational(m: Mat2) -> bool:
    return all(q.is_rational() for row in m for q in row)


def _flatten(m: Mat2):
    out = []
    for row in m:
        for q in row:
            out.extend(q.rational_coords())
    return out


def _unflatten(algebra: QuaternionAlgebra, vec) -> Mat2:
    qs = [Quaternion(algebra, vec[4 * k : 4 * k + 4]) for k in range(4)]
    return ((qs[0], qs[1]), (qs[2], qs[3]))


class MatrixRingLattice:
    """A multiplicatively generated lattice of 2x2 matrices over the algebra,
    canonical in 16 coordinates."""

    __slots__ = ("algebra", "lattice")

    def __init__(self, algebra: QuaternionAlgebra, lattice: IntegerLattice):
        if lattice.ambient != 16:
            raise ValueError("matrix lattices live in 16 coordinates")
        object.__setattr__(self, "algebra", algebra)
        object.__setattr__(self, "lattice", lattice)

    def __setattr__(self, name, value):
        raise AttributeError("MatrixRingLattice values are immutable")

    def contains(self, m: Mat2) -> bool:
        if not mat2_is_rational(m):
            return False
        return self.lattice.contains(_flatten(m))

    def basis_matrices(self) -> list[Mat2]:
        return [_unflatten(self.algebra, row) for row in self.lattice.basis()]

    def __eq__(self, other):
        return (
            isinstance(other, MatrixRingLattice)
            and self.algebra == other.algebra
            and self.lattice == other.lattice
        )

    def __hash__(self):
        return hash((self.algebra, self.lattice))


def mat2_order_lattice(order: OrderLattice) -> MatrixRingLattice:
    """Mat(2, O) as a rank-16 lattice."""
    rows = []
    zero = order.algebra.zero()
    for e in order.basis_quaternions():
        for slot in range(4):
            m = [[zero, zero], [zero, zero]]
            m[slot // 2][slot % 2] = e
            rows.append(_flatten((tuple(m[0]), tuple(m[1]))))
    return MatrixRingLattice(order.algebra, IntegerLattice.from_rows(rows))


def is_integral_member(m: VahlenMatrix, order: OrderLattice) -> bool:
    """Group membership with all four entries in the order."""
    if not m.is_rational():
        raise ValueError("integral membership is tested over the rationals")
    return all(order.contains(q) for row in m.entries for q in row)


def generate_matrix_ring(gens, order: OrderLattice):
    """Smallest multiplicatively closed lattice containing 1 and the
    generators, grown to a fixpoint; the verdict compares it to Mat(2, O).

    Generators may be group elements or raw 2x2 matrices; every generator
    must be integral for the order.
    """
    algebra = order.algebra
    mats: list[Mat2] = []
    for g in gens:
        m = g.entries if isinstance(g, VahlenMatrix) else g
        for row in m:
            for q in row:
                if not order.contains(q):
                    raise ValueError("generator entry %r is not integral for the order" % (q,))
        mats.append(m)
    one = order.algebra.one()
    zero = order.algebra.zero()
    ident: Mat2 = ((one, zero), (zero, one))
    rows = [_flatten(ident)] + [_flatten(m) for m in mats]
    lattice = IntegerLattice.from_rows(rows)
    while True:
        basis = [_unflatten(algebra, row) for row in lattice.basis()]
        new_rows = [list(row) for row in lattice.basis()]
        for x in basis:
            for y in basis:
                new_rows.append(_flatten(mat2_mul(x, y)))
        grown = IntegerLattice.from_rows(new_rows)
        if grown == lattice:
            break
        lattice = grown
    ring = MatrixRingLattice(algebra, lattice)
    verdict = ring == mat2_order_lattice(order)
    return ring, verdict


# ---------------------------------------------------------------------------
# conjugacy certificates
# ---------------------------------------------------------------------------


class ConjugacyCertificate:
    """An explicit matrix, possibly over a quadratic extension, asserted to
    conjugate the integral group of the source order onto that of the
    target."""

    __slots__ = ("gamma", "source", "target", "involution")

    def __init__(self, gamma: VahlenMatrix, source: OrderLattice, target: OrderLattice):
        inv = gamma.involution
        if source.algebra != inv.algebra or target.algebra != inv.algebra:
            raise ValueError("certificate pieces live in different algebras")
        object.__setattr__(self, "gamma", gamma)
        object.__setattr__(self, "source", source)
        object.__setattr__(self, "target", target)
        object.__setattr__(self, "involution", inv)

    def __setattr__(self, name, value):
        raise AttributeError("ConjugacyCertificate values are immutable")

    def inverse(self) -> "ConjugacyCertificate":
        return ConjugacyCertificate(self.gamma.inverse(), self.target, self.source)


def _conjugation_report(gamma: VahlenMatrix, source: OrderLattice, target: OrderLattice):
    g_inv = gamma.inverse()
    items = []
    all_ok = True
    for idx, gen in enumerate(mat2_order_lattice(source).basis_matrices()):
        img = mat2_mul(mat2_mul(gamma.entries, gen), g_inv.entries)
        ok = mat2_is_rational(img) and target.contains(img[0][0]) and target.contains(img[0][1]) and target.contains(img[1][0]) and target.contains(img[1][1])
        items.append({"generator": idx, "lands_in_target": ok})
        all_ok = all_ok and ok
    return all_ok, items


def verify_conjugacy_certificate(cert: ConjugacyCertificate):
    """Both-direction check: conjugating a generating set of Mat(2, source)
    lands in Mat(2, target), and symmetrically back.  Together with
    maximality of the integral groups this certifies the conjugation claim.
    """
    fwd_ok, fwd = _conjugation_report(cert.gamma, cert.source, cert.target)
    bwd_ok, bwd = _conjugation_report(cert.gamma.inverse(), cert.target, cert.source)
    verdict = fwd_ok and bwd_ok
    report = {
        "valid": verdict,
        "forward": fwd,
        "backward": bwd,
        "source_discriminant": cert.source.reduced_disc,
        "target_discriminant": cert.target.reduced_disc,
        "discriminants_equal": cert.source.reduced_disc == cert.target.reduced_disc,
    }
    return verdict, report


def fixes_base_group(cert: ConjugacyCertificate) -> bool:
    """Whether conjugation by gamma preserves the subgroup of scalar 2x2
    matrices, probed on two unipotents and a split torus element; those force
    the diagonal shape with centrally-paired entries."""
    inv = cert.involution
    alg = inv.algebra
    one, zero = alg.one(), alg.zero()
    two = alg.scalar(2)
    half = alg.scalar(Fraction(1, 2))
    probes = [
        ((one, one), (zero, one)),
        ((one, zero), (one, one)),
        ((two, zero), (zero, half)),
    ]
    gamma = cert.gamma
    g_inv = gamma.inverse()
    for probe in probes:
        img = mat2_mul(mat2_mul(gamma.entries, probe), g_inv.entries)
        for row in img:
            for q in row:
                if not q.is_scalar():
                    return False
                if not q.is_rational():
                    return False
    return True


# ---------------------------------------------------------------------------
# local comparison and the plus-part constraint
# ---------------------------------------------------------------------------


def local_invariant_report(o1: OrderLattice, o2: OrderLattice, inv: Involution) -> dict:
    """Per-prime comparison of two stable orders: discriminant valuations and
    the elementary divisors of one lattice against the other.  Agreement at
    every prime is necessary for the integral groups to be locally conjugate
    everywhere."""
    if o1.algebra != o2.algebra or o1.algebra != inv.algebra:
        raise ValueError("orders and involution must share an algebra")
    divisors = invariant_factor_ratios(o1.lattice, o2.lattice)
    support = o1.reduced_disc * o2.reduced_disc * algebra_discriminant(o1.algebra)
    primes = sorted(factorize(support)) if support > 1 else []
    for d in divisors:
        primes = sorted(set(primes) | set(factorize(d.numerator * d.denominator)) - {1})
    report = {"primes": {}, "all_agree": True}
    for p in primes:
        vals = [valuation(d, p) if d != 1 else 0 for d in divisors]
        agree = all(v == 0 for v in vals)
        report["primes"][str(p)] = {
            "disc_valuation_o1": _vp(o1.reduced_disc, p),
            "disc_valuation_o2": _vp(o2.reduced_disc, p),
            "elementary_divisor_valuations": vals,
            "lattices_agree_at_p": agree,
        }
        if not agree or _vp(o1.reduced_disc, p) != _vp(o2.reduced_disc, p):
            report["all_agree"] = False
    return report


def _vp(n: int, p: int) -> int:
    if n == 0:
        raise ValueError("valuation of 0")
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def plus_part_conjugation_constraint(
    v: Quaternion,
    o1: OrderLattice,
    o2: OrderLattice,
    inv: Involution,
    at_prime: int | None = None,
) -> bool:
    """Whether v * z * v^# lies in the target order for every basis vector z
    of the fixed part of the source; bilinearity over Z makes the basis check
    sufficient.  With at_prime set, containment is only required up to
    denominators coprime to that prime (the localized constraint)."""
    if o1.algebra != o2.algebra or o1.algebra != inv.algebra:
        raise ValueError("orders and involution must share an algebra")
    from .orders import plus_part_lattice

    v_sharp = inv.apply(v)
    for row in plus_part_lattice(o1, inv).basis():
        z = Quaternion(o1.algebra, row)
        img = v * z * v_sharp
        if not img.is_rational():
            return False
        if at_prime is None:
            if not o2.contains(img):
                return False
        else:
            coords = o2.lattice.rational_coordinates(img.rational_coords())
            if coords is None:
                return False
            if any(c.denominator % at_prime == 0 for c in coords):
                return False
    return True
