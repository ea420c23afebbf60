"""JSON schemas for every transported object.

Rationals travel as strings ("p/q" or "n"), extension scalars as
{"d": int, "c0": str, "c1": str}, quaternions as 4-arrays of scalars,
lattices as row-major arrays of rational strings.
"""

from __future__ import annotations

from fractions import Fraction

from .groups import ConjugacyCertificate
from .orders import OrderLattice
from .quat import Involution, Quaternion, QuaternionAlgebra
from .scalars import QuadExt, rational, rational_str
from .vahlen import VahlenMatrix


class SchemaError(ValueError):
    pass


def _expect(condition: bool, message: str):
    if not condition:
        raise SchemaError(message)


def load_rational(obj) -> Fraction:
    _expect(isinstance(obj, str), "rationals must be strings, got %r" % (obj,))
    try:
        return rational(obj)
    except (ValueError, ZeroDivisionError) as e:
        raise SchemaError("bad rational %r: %s" % (obj, e))


def load_scalar(obj):
    if isinstance(obj, str):
        return load_rational(obj)
    if isinstance(obj, dict):
        _expect(set(obj) == {"d", "c0", "c1"}, "extension scalars need d, c0, c1")
        try:
            return QuadExt(obj["d"], load_rational(obj["c0"]), load_rational(obj["c1"]))
        except ValueError as e:
            raise SchemaError(str(e))
    raise SchemaError("scalars are strings or extension objects, got %r" % (obj,))


def dump_scalar(x):
    if isinstance(x, QuadExt):
        if x.is_rational:
            return rational_str(x.c0)
        return {"d": x.d, "c0": rational_str(x.c0), "c1": rational_str(x.c1)}
    return rational_str(x)


def load_algebra(obj) -> QuaternionAlgebra:
    _expect(isinstance(obj, dict) and "a" in obj and "b" in obj, "algebra needs a and b")
    a = load_rational(obj["a"])
    b = load_rational(obj["b"])
    _expect(a != 0 and b != 0, "algebra constants must be nonzero")
    return QuaternionAlgebra(a, b)


def dump_algebra(alg: QuaternionAlgebra) -> dict:
    return {"a": rational_str(alg.a), "b": rational_str(alg.b)}


def load_quaternion(algebra: QuaternionAlgebra, obj) -> Quaternion:
    _expect(isinstance(obj, list) and len(obj) == 4, "quaternions are 4-arrays")
    return Quaternion(algebra, tuple(load_scalar(c) for c in obj))


def dump_quaternion(q: Quaternion) -> list:
    return [dump_scalar(c) for c in q.coords]


def load_involution(algebra: QuaternionAlgebra, obj) -> Involution:
    _expect(isinstance(obj, dict) and "mu" in obj, "involution needs mu")
    mu = load_quaternion(algebra, obj["mu"])
    try:
        return Involution(algebra, mu)
    except ValueError as e:
        raise SchemaError(str(e))


def dump_involution(inv: Involution) -> dict:
    return {"mu": dump_quaternion(inv.mu)}


def load_order(obj) -> OrderLattice:
    _expect(isinstance(obj, dict) and "algebra" in obj and "basis" in obj, "order needs algebra and basis")
    algebra = load_algebra(obj["algebra"])
    basis = obj["basis"]
    _expect(isinstance(basis, list) and len(basis) == 4, "order basis must have 4 rows")
    rows = []
    for row in basis:
        _expect(isinstance(row, list) and len(row) == 4, "order basis rows have 4 entries")
        rows.append([load_rational(x) for x in row])
    try:
        return OrderLattice.from_basis(algebra, rows)
    except ValueError as e:
        raise SchemaError("not an order: %s" % e)


def load_order_rows(obj):
    """Like load_order but without the order validation; for the checker."""
    _expect(isinstance(obj, dict) and "algebra" in obj and "basis" in obj, "order needs algebra and basis")
    algebra = load_algebra(obj["algebra"])
    basis = obj["basis"]
    _expect(isinstance(basis, list) and len(basis) == 4, "order basis must have 4 rows")
    rows = []
    for row in basis:
        _expect(isinstance(row, list) and len(row) == 4, "order basis rows have 4 entries")
        rows.append([load_rational(x) for x in row])
    return algebra, rows


def dump_order(order: OrderLattice) -> dict:
    return {
        "algebra": dump_algebra(order.algebra),
        "basis": [[rational_str(x) for x in row] for row in order.lattice.basis()],
    }


def load_vahlen(obj) -> VahlenMatrix:
    _expect(
        isinstance(obj, dict) and {"algebra", "involution", "entries"} <= set(obj),
        "matrix needs algebra, involution, entries",
    )
    algebra = load_algebra(obj["algebra"])
    inv = load_involution(algebra, obj["involution"])
    entries = obj["entries"]
    _expect(
        isinstance(entries, list) and len(entries) == 2 and all(len(r) == 2 for r in entries),
        "entries must be a 2x2 array",
    )
    rows = tuple(tuple(load_quaternion(algebra, q) for q in row) for row in entries)
    return VahlenMatrix(inv, rows)


def load_vahlen_unchecked(obj):
    algebra = load_algebra(obj["algebra"])
    inv = load_involution(algebra, obj["involution"])
    entries = obj["entries"]
    _expect(
        isinstance(entries, list) and len(entries) == 2 and all(len(r) == 2 for r in entries),
        "entries must be a 2x2 array",
    )
    rows = tuple(tuple(load_quaternion(algebra, q) for q in row) for row in entries)
    return inv, rows


def dump_vahlen(m: VahlenMatrix) -> dict:
    return {
        "algebra": dump_algebra(m.involution.algebra),
        "involution": dump_involution(m.involution),
        "entries": [[dump_quaternion(q) for q in row] for row in m.entries],
    }


def load_certificate(obj) -> ConjugacyCertificate:
    _expect(
        isinstance(obj, dict) and {"gamma", "source_order", "target_order"} <= set(obj),
        "certificate needs gamma, source_order, target_order",
    )
    gamma = load_vahlen(obj["gamma"])
    source = load_order(obj["source_order"])
    target = load_order(obj["target_order"])
    try:
        return ConjugacyCertificate(gamma, source, target)
    except ValueError as e:
        raise SchemaError(str(e))


def dump_certificate(cert: ConjugacyCertificate) -> dict:
    out = {
        "gamma": dump_vahlen(cert.gamma),
        "source_order": dump_order(cert.source),
        "target_order": dump_order(cert.target),
        "involution": dump_involution(cert.involution),
    }
    ds = {
        c.d
        for row in cert.gamma.entries
        for q in row
        for c in q.coords
        if isinstance(c, QuadExt) and not c.is_rational
    }
    if ds:
        out["field"] = {"d": sorted(ds)[0]}
    return out


def dump_matrix_rows(rows) -> list:
    return [[rational_str(x) for x in row] for row in rows]
