"""Command-line surface.

Exit codes: 0 success, 1 a requested predicate or verification is false,
2 malformed input.  Output is JSON with sorted keys, so identical inputs
produce byte-identical output.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import jsonio, paperchecks
from .groups import verify_conjugacy_certificate, fixes_base_group
from .hilbert import Place
from .orders import (
    OrderError,
    OrderLattice,
    check_order,
    is_sharp_stable,
    maximality_certificate,
    sharp_superorder_scan,
    unit_group,
)
from .quat import algebra_discriminant, ramified_places
from .scalars import rational_str
from .vahlen import MembershipError, VahlenMatrix, decompose, membership_violations, spinor_matrix, word_product
from .jsonio import SchemaError


def _emit(payload) -> None:
    sys.stdout.write(json.dumps(payload, indent=2, sort_keys=True) + "\n")


def _read_json(path: str):
    try:
        with open(path) as f:
            return json.load(f)
    except OSError as e:
        raise SchemaError("cannot read %s: %s" % (path, e))
    except json.JSONDecodeError as e:
        raise SchemaError("invalid JSON in %s: %s" % (path, e))


def _cmd_algebra_info(args) -> int:
    alg = jsonio.load_algebra(_read_json(args.file))
    places = sorted(ramified_places(alg))
    _emit(
        {
            "a": rational_str(alg.a),
            "b": rational_str(alg.b),
            "ramified": [p.p if p.is_finite else "inf" for p in places],
            "disc": algebra_discriminant(alg),
            "split": not places,
            "definite": Place.infinite() in places,
        }
    )
    return 0


def _cmd_order_check(args) -> int:
    algebra, rows = jsonio.load_order_rows(_read_json(args.file))
    inv = jsonio.load_involution(algebra, _read_json(args.involution))
    ok, witness = check_order(algebra, rows)
    report = {"is_order": ok}
    failed = not ok
    if not ok:
        report["violation"] = str(witness)
        _emit(report)
        return 1
    order = OrderLattice.from_basis(algebra, rows)
    report["reduced_discriminant"] = order.reduced_disc
    stable = is_sharp_stable(order, inv)
    report["is_sharp_stable"] = stable
    failed = failed or not stable
    if args.maximal:
        cert = maximality_certificate(order, inv)
        report["maximal"] = cert
        failed = failed or not cert["is_maximal_sharp"]
    if args.units:
        try:
            units = unit_group(order)
            report["units"] = {
                "order": len(units),
                "elements": [jsonio.dump_quaternion(u) for u in units],
            }
        except OrderError as e:
            report["units"] = {"error": str(e)}
            failed = True
    if args.scan:
        if stable:
            found = sharp_superorder_scan(order, inv)
            report["superorders"] = [jsonio.dump_order(o) for o in found]
            failed = failed or bool(found)
        else:
            report["superorders"] = {"error": "order is not closed under the involution"}
    _emit(report)
    return 1 if failed else 0


def _cmd_vahlen(args) -> int:
    sub = args.vahlen_command
    if sub == "member":
        inv, entries = jsonio.load_vahlen_unchecked(_read_json(args.file))
        bad = membership_violations(entries, inv)
        _emit({"member": not bad, "violations": bad})
        return 1 if bad else 0
    if sub == "mul":
        m1 = jsonio.load_vahlen(_read_json(args.file))
        m2 = jsonio.load_vahlen(_read_json(args.other))
        _emit(jsonio.dump_vahlen(m1 * m2))
        return 0
    if sub == "inv":
        m = jsonio.load_vahlen(_read_json(args.file))
        _emit(jsonio.dump_vahlen(m.inverse()))
        return 0
    if sub == "decompose":
        m = jsonio.load_vahlen(_read_json(args.file))
        word = decompose(m)
        verified = word_product(m.involution, word) == m
        _emit(
            {
                "word": [[kind, jsonio.dump_quaternion(z)] for kind, z in word],
                "verified": verified,
            }
        )
        return 0 if verified else 1
    if sub == "spin":
        m = jsonio.load_vahlen(_read_json(args.file))
        G = spinor_matrix(m)
        _emit({"matrix": jsonio.dump_matrix_rows(G)})
        return 0
    raise SchemaError("unknown vahlen subcommand %r" % sub)


def _cmd_group_certify(args) -> int:
    cert = jsonio.load_certificate(_read_json(args.file))
    ok, report = verify_conjugacy_certificate(cert)
    report["fixes_base_group"] = fixes_base_group(cert)
    _emit(report)
    return 0 if ok else 1


def _cmd_verify(args) -> int:
    results = paperchecks.run_checks()
    failed = [name for name, ok, _ in results if not ok]
    for name, ok, detail in results:
        print("%s %s — %s" % ("PASS" if ok else "FAIL", name, detail))
    print("%d/%d checks passed" % (len(results) - len(failed), len(results)))
    if failed:
        print("first failure: %s" % failed[0])
        return 1
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qvahlen",
        description="Exact computations with quaternion orders, involutions, and their matrix groups.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_algebra = sub.add_parser("algebra", help="algebra-level reports")
    algebra_sub = p_algebra.add_subparsers(dest="algebra_command", required=True)
    p_info = algebra_sub.add_parser("info", help="ramification and discriminant report")
    p_info.add_argument("file")
    p_info.set_defaults(func=_cmd_algebra_info)

    p_order = sub.add_parser("order", help="order-level predicates")
    order_sub = p_order.add_subparsers(dest="order_command", required=True)
    p_check = order_sub.add_parser("check", help="ring, stability, and maximality checks")
    p_check.add_argument("file")
    p_check.add_argument("--involution", required=True)
    p_check.add_argument("--maximal", action="store_true")
    p_check.add_argument("--units", action="store_true")
    p_check.add_argument("--scan", action="store_true")
    p_check.set_defaults(func=_cmd_order_check)

    p_vahlen = sub.add_parser("vahlen", help="matrix group operations")
    vahlen_sub = p_vahlen.add_subparsers(dest="vahlen_command", required=True)
    for name in ("member", "inv", "decompose", "spin"):
        p = vahlen_sub.add_parser(name)
        p.add_argument("file")
        p.set_defaults(func=_cmd_vahlen)
    p_mul = vahlen_sub.add_parser("mul")
    p_mul.add_argument("file")
    p_mul.add_argument("other")
    p_mul.set_defaults(func=_cmd_vahlen)

    p_group = sub.add_parser("group", help="arithmetic subgroup certificates")
    group_sub = p_group.add_subparsers(dest="group_command", required=True)
    p_certify = group_sub.add_parser("certify")
    p_certify.add_argument("file")
    p_certify.set_defaults(func=_cmd_group_certify)

    p_verify = sub.add_parser("verify", help="replay the bundled reference examples")
    verify_sub = p_verify.add_subparsers(dest="verify_command", required=True)
    p_paper = verify_sub.add_parser("paper-examples")
    p_paper.set_defaults(func=_cmd_verify)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except MembershipError as e:
        _emit({"member": False, "violations": e.violations})
        return 1
    except (SchemaError, OrderError, ValueError) as e:
        sys.stderr.write("error: %s\n" % e)
        return 2


if __name__ == "__main__":
    sys.exit(main())
