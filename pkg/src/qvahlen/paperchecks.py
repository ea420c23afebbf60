"""Registry of reference-example checks.

Each check replays one claim about the bundled fixtures: the two orders in
(-1,-23) with their unit groups, the Q(sqrt(3)) conjugacy certificate, the
trace-ideal pair in (-1,-7) with its Q(sqrt(2)) conjugator, the split-algebra
constraint at the prime 3, and the property sweeps for the orthogonal
representation, the generator decomposition, and the Hilbert symbol.
The CLI verifier runs all of them; the test suite asserts them one by one.
"""

from __future__ import annotations

import itertools
import json
import random
from fractions import Fraction
from importlib import resources

from . import jsonio
from .conic import primitive_solubility, solvable_mod
from .groups import (
    ConjugacyCertificate,
    fixes_base_group,
    generate_matrix_ring,
    is_integral_member,
    local_invariant_report,
    mat2_mul,
    mat2_order_lattice,
    plus_part_conjugation_constraint,
    verify_conjugacy_certificate,
)
from .hilbert import Place, candidate_primes, hilbert_symbol
from .orders import (
    OrderLattice,
    conjugate_order,
    invariant_report,
    is_maximal_sharp_order,
    is_sharp_stable,
    maximality_certificate,
    plus_part_lattice,
    sharp_superorder_scan,
    trace_ideal_plus_part,
    unit_group,
)
from .quat import Involution, Quaternion
from .vahlen import (
    VahlenMatrix,
    build_diag_conjugator,
    decompose,
    gen_lower,
    gen_upper,
    spinor_is_orthogonal,
    spinor_matrix,
    word_product,
    write_unit_as_one_plus_xy,
)

WORD_SEED = 40961
UNIT_SEED = 24001
RECIPROCITY_SEED = 53172


def fixture(name: str) -> dict:
    path = resources.files("qvahlen") / "fixtures" / "paper" / name
    return json.loads(path.read_text())


class _Context:
    """Lazily loaded fixture objects shared across checks."""

    def __init__(self):
        self._cache = {}

    def _get(self, key, build):
        if key not in self._cache:
            self._cache[key] = build()
        return self._cache[key]

    @property
    def ex32(self):
        def build():
            alg = jsonio.load_algebra(fixture("ex32_algebra.json"))
            return {
                "algebra": alg,
                "inv": jsonio.load_involution(alg, fixture("ex32_involution.json")),
                "inv_ij": jsonio.load_involution(alg, fixture("ex32_involution_mu_ij.json")),
                "o1": jsonio.load_order(fixture("ex32_order_o1.json")),
                "o2": jsonio.load_order(fixture("ex32_order_o2.json")),
                "std": jsonio.load_order(fixture("ex32_standard_order.json")),
            }

        return self._get("ex32", build)

    @property
    def ex62(self):
        return self._get("ex62", lambda: jsonio.load_certificate(fixture("ex62_certificate.json")))

    @property
    def ex73(self):
        def build():
            alg = jsonio.load_algebra(fixture("ex73_algebra.json"))
            return {
                "algebra": alg,
                "inv": jsonio.load_involution(alg, fixture("ex73_involution.json")),
                "o1": jsonio.load_order(fixture("ex73_order_o1.json")),
                "o2": jsonio.load_order(fixture("ex73_order_o2.json")),
                "cert": jsonio.load_certificate(fixture("ex73_certificate.json")),
            }

        return self._get("ex73", build)

    @property
    def local(self):
        def build():
            alg = jsonio.load_algebra(fixture("local_algebra.json"))
            inv = jsonio.load_involution(alg, fixture("local_involution.json"))
            o1 = jsonio.load_order(fixture("local_order_o1.json"))
            raw = fixture("local_conjugator_u.json")
            u = jsonio.load_quaternion(alg, raw["u"])
            return {"algebra": alg, "inv": inv, "o1": o1, "u": u, "prime": raw["prime"]}

        return self._get("local", build)


CTX = _Context()


def random_plus_vector(rng, inv: Involution) -> Quaternion:
    pool = [Fraction(0), Fraction(1), Fraction(-1), Fraction(1, 2), Fraction(-1, 2), Fraction(2)]
    while True:
        coords = [rng.choice(pool) for _ in range(3)]
        if any(coords):
            return inv.from_plus_coordinates(coords)


def random_word(rng, inv: Involution, max_len: int = 6):
    length = rng.randint(1, max_len)
    return [("U" if rng.random() < 0.5 else "L", random_plus_vector(rng, inv)) for _ in range(length)]


def degenerate_corner_words(inv: Involution):
    """Members with a lower-right entry of norm zero: U(a) L(1) U(-1)."""
    one = inv.from_plus_coordinates([1, 0, 0])
    out = []
    for coords in [(1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 0), (2, 0, 1)]:
        a = inv.from_plus_coordinates([Fraction(c) for c in coords])
        out.append([("U", a), ("L", one), ("U", -one)])
    return out


# ---------------------------------------------------------------------------
# individual checks; each returns (ok, detail)
# ---------------------------------------------------------------------------


def check_ex32_orders():
    c = CTX.ex32
    ok = c["o1"].reduced_disc == 23 and c["o2"].reduced_disc == 23
    return ok, "reduced discriminants %d, %d" % (c["o1"].reduced_disc, c["o2"].reduced_disc)


def check_ex32_sharp_stable():
    c = CTX.ex32
    ok = is_sharp_stable(c["o1"], c["inv"]) and is_sharp_stable(c["o2"], c["inv"])
    return ok, "both orders closed under the involution"


def check_ex32_maximal():
    c = CTX.ex32
    c1 = maximality_certificate(c["o1"], c["inv"])
    c2 = maximality_certificate(c["o2"], c["inv"])
    ok = c1["is_maximal_sharp"] and c2["is_maximal_sharp"] and c1["target_discriminant"] == 23
    return ok, "criterion target %d" % c1["target_discriminant"]


def check_ex32_units():
    c = CTX.ex32
    u1 = unit_group(c["o1"])
    u2 = unit_group(c["o2"])
    ok = len(u1) == 4 and len(u2) == 2
    return ok, "unit group orders %d and %d" % (len(u1), len(u2))


def check_ex32_reports_distinguish():
    c = CTX.ex32
    r1 = invariant_report(c["o1"], c["inv"])
    r2 = invariant_report(c["o2"], c["inv"])
    same_arith = (
        r1["reduced_discriminant"] == r2["reduced_discriminant"]
        and r1["ramified_places"] == r2["ramified_places"]
    )
    ok = same_arith and r1 != r2 and r1["unit_group_order"] != r2["unit_group_order"]
    return ok, "reports differ exactly in the unit group order"


def check_ex32_involution_line():
    c = CTX.ex32
    inv = c["inv"]
    minus = inv.minus_basis.rational_coords()
    ok = minus == (Fraction(0), Fraction(0), Fraction(1), Fraction(0)) and inv.disc_class() == 23
    return ok, "negated line j, ideal class (23)"


def check_scan_maximal_orders_empty():
    c32 = CTX.ex32
    c73 = CTX.ex73
    pairs = [
        (c32["o1"], c32["inv"]),
        (c32["o2"], c32["inv"]),
        (c73["o1"], c73["inv"]),
        (c73["o2"], c73["inv"]),
    ]
    leftovers = [len(sharp_superorder_scan(o, i)) for o, i in pairs]
    ok = all(n == 0 for n in leftovers)
    return ok, "superorder scans returned %r" % (leftovers,)


def check_scan_standard_order_grows():
    c = CTX.ex32
    verdict = is_maximal_sharp_order(c["std"], c["inv_ij"])
    found = sharp_superorder_scan(c["std"], c["inv_ij"])
    ok = (not verdict) and bool(found) and all(o.reduced_disc == 23 for o in found)
    return ok, "criterion false; scan found %d stable superorders of discriminant 23" % len(found)


def check_ex62_member():
    cert = CTX.ex62
    ident = VahlenMatrix.identity(cert.involution)
    ok = cert.gamma * cert.gamma.inverse() == ident
    return ok, "certificate matrix is a group element over Q(sqrt(3))"


def check_ex62_displayed_conjugates():
    cert = CTX.ex62
    c = CTX.ex32
    alg = c["algebra"]
    zero, one = alg.zero(), alg.one()
    half = Fraction(1, 2)
    listed = [
        one,
        alg.quaternion(0, 1, 0, 0),
        Quaternion(alg, (half, 0, half, 0)),
        Quaternion(alg, (0, half, 0, half)),
    ]
    mats = [((zero, q), (zero, zero)) for q in listed]
    mats.append(((zero, zero), (one, zero)))
    target = mat2_order_lattice(cert.target)
    g_inv = cert.gamma.inverse()
    oks = []
    for m in mats:
        img = mat2_mul(mat2_mul(cert.gamma.entries, m), g_inv.entries)
        oks.append(target.contains(img))
    ring, generates = generate_matrix_ring(mats, cert.source)
    ok = all(oks) and generates
    return ok, "five conjugates integral: %r; they generate Mat(2, source): %r" % (all(oks), generates)


def check_ex62_certificate():
    cert = CTX.ex62
    ok_fwd, _ = verify_conjugacy_certificate(cert)
    ok_bwd, _ = verify_conjugacy_certificate(cert.inverse())
    return ok_fwd and ok_bwd, "certificate valid in both directions"


def check_ex62_conclusion():
    cert = CTX.ex62
    c = CTX.ex32
    ok_cert, _ = verify_conjugacy_certificate(cert)
    r1 = invariant_report(c["o1"], c["inv"])
    r2 = invariant_report(c["o2"], c["inv"])
    ok = ok_cert and r1 != r2
    return ok, "groups conjugate over Q(sqrt(3)), orders non-isomorphic"


def check_ex73_trace_ideals():
    c = CTX.ex73
    t1 = trace_ideal_plus_part(c["o1"], c["inv"])
    t2 = trace_ideal_plus_part(c["o2"], c["inv"])
    return (t1, t2) == (1, 2), "trace ideals (%d), (%d)" % (t1, t2)


def check_ex73_maximal():
    c = CTX.ex73
    ok = is_maximal_sharp_order(c["o1"], c["inv"]) and is_maximal_sharp_order(c["o2"], c["inv"])
    return ok, "both orders maximal for the involution"


def check_ex73_conjugation():
    c = CTX.ex73
    u = c["algebra"].quaternion(1, 1, 0, 0)
    ok = conjugate_order(u, c["o1"]) == c["o2"]
    return ok, "conjugation by 1+i carries the first order onto the second"


def check_ex73_conjugator_matrix():
    c = CTX.ex73
    built = build_diag_conjugator(c["inv"], c["algebra"].quaternion(1, 1, 0, 0))
    ok = built == c["cert"].gamma
    return ok, "diagonal conjugator over Q(sqrt(2)) matches the bundled certificate"


def check_ex73_certificate():
    c = CTX.ex73
    ok_fwd, _ = verify_conjugacy_certificate(c["cert"])
    ok_bwd, _ = verify_conjugacy_certificate(c["cert"].inverse())
    return ok_fwd and ok_bwd, "certificate valid in both directions"


def check_ex73_base_group_probes():
    """The probe decision must agree with direct conjugation of the probes;
    here the trace ideals differ, so the conjugator cannot fix the base
    group."""
    c = CTX.ex73
    structural = fixes_base_group(c["cert"])
    u = c["cert"].gamma.a
    pairing = u * c["inv"].apply(u)
    direct = pairing.is_scalar() and pairing.is_rational()
    ok = structural == direct and structural is False
    return ok, "probe verdict %r matches direct computation" % structural


def check_local_reports():
    c32 = CTX.ex32
    r32 = local_invariant_report(c32["o1"], c32["o2"], c32["inv"])
    bad32 = [p for p, v in r32["primes"].items() if not v["lattices_agree_at_p"]]
    c73 = CTX.ex73
    r73 = local_invariant_report(c73["o1"], c73["o2"], c73["inv"])
    bad73 = [p for p, v in r73["primes"].items() if not v["lattices_agree_at_p"]]
    ok = bad32 == ["3"] and bad73 == ["2"]
    return ok, "lattice disagreement only at %s and %s" % (bad32, bad73)


def check_local_example_escape():
    c = CTX.local
    alg = c["algebra"]
    half = Fraction(1, 2)
    e11 = Quaternion(alg, (half, half, 0, 0))
    img = c["u"] * e11 * c["u"].inverse()
    ok = not c["o1"].contains(img)
    return ok, "u E11 u^-1 escapes the order"


def check_local_example_grid():
    c = CTX.local
    o1 = c["o1"]
    o2 = conjugate_order(c["u"], o1)
    p = c["prime"]
    basis = o1.basis_quaternions()
    total = fails = 0
    for coeffs in itertools.product(range(p), repeat=4):
        if not any(coeffs):
            continue
        total += 1
        coords = [
            sum((Fraction(cc, p) * b.coords[t] for cc, b in zip(coeffs, basis)), Fraction(0))
            for t in range(4)
        ]
        v = Quaternion(o1.algebra, coords)
        if not plus_part_conjugation_constraint(v, o1, o2, c["inv"], at_prime=p):
            fails += 1
    ok = fails == total == p**4 - 1
    return ok, "constraint fails on all %d fractional residue classes" % total


def check_local_example_congruent_samples():
    c = CTX.local
    o1 = c["o1"]
    o2 = conjugate_order(c["u"], o1)
    p = c["prime"]
    basis = o1.basis_quaternions()
    holds = checked = 0
    for v1, v2 in itertools.product(range(p), repeat=2):
        for l1, l2 in itertools.product(range(2), repeat=2):
            coeffs = (v1, v2, (-v1) % p + p * l1, (-v2) % p + p * l2)
            v = basis[0].scale(coeffs[0])
            for cc, b in zip(coeffs[1:], basis[1:]):
                v = v + b.scale(cc)
            checked += 1
            if plus_part_conjugation_constraint(v, o1, o2, c["inv"], at_prime=p):
                holds += 1
    return holds == checked, "constraint holds on %d/%d congruence-satisfying samples" % (holds, checked)


def check_spinor_kernel_minus_identity():
    c = CTX.ex32
    inv = c["inv_ij"]
    G = spinor_matrix(-VahlenMatrix.identity(inv))
    ok = all(G[r][t] == (1 if r == t else 0) for r in range(5) for t in range(5))
    return ok, "-identity maps to the identity rotation"


def check_spinor_sweep():
    c = CTX.ex32
    inv = c["inv_ij"]
    gram = inv.gram_q_h()
    rng = random.Random(WORD_SEED)
    ident = VahlenMatrix.identity(inv)
    kernel_hits = 0
    for _ in range(100):
        w1 = random_word(rng, inv, 3)
        w2 = random_word(rng, inv, 3)
        m1 = word_product(inv, w1)
        m2 = word_product(inv, w2)
        g1 = spinor_matrix(m1)
        g2 = spinor_matrix(m2)
        g12 = spinor_matrix(m1 * m2)
        prod = [[sum(g1[r][t] * g2[t][s] for t in range(5)) for s in range(5)] for r in range(5)]
        if prod != g12:
            return False, "representation is not multiplicative"
        if not spinor_is_orthogonal(g1, gram):
            return False, "image matrix fails orthogonality"
        is_id = all(g1[r][t] == (1 if r == t else 0) for r in range(5) for t in range(5))
        is_pm = m1 == ident or m1 == -ident
        if is_id != is_pm:
            return False, "kernel mismatch"
        if is_id:
            kernel_hits += 1
    return True, "100 words: multiplicative, orthogonal, kernel exactly +-identity"


def check_decompose_sweep():
    c = CTX.ex32
    inv = c["inv_ij"]
    rng = random.Random(WORD_SEED + 1)
    words = [random_word(rng, inv, 6) for _ in range(100)]
    words += degenerate_corner_words(inv)
    degenerate_seen = 0
    for w in words:
        m = word_product(inv, w)
        if m.d.norm() == 0:
            degenerate_seen += 1
        again = decompose(m)
        if word_product(inv, again) != m:
            return False, "round trip failed"
    ok = degenerate_seen >= 5
    return ok, "%d round trips, %d with a degenerate corner" % (len(words), degenerate_seen)


def check_unit_factorization_sweep():
    c = CTX.ex32
    inv = c["inv_ij"]
    alg = c["algebra"]
    rng = random.Random(UNIT_SEED)
    count = 0
    while count < 100:
        coords = [Fraction(rng.randint(-10, 10), rng.randint(1, 10)) for _ in range(4)]
        u = Quaternion(alg, coords)
        if u.norm() == 0:
            continue
        x, y = write_unit_as_one_plus_xy(inv, u)
        if alg.one() + x * y != u or not inv.in_plus(x) or not inv.in_plus(y):
            return False, "postcondition failed for %r" % (u,)
        count += 1
    return True, "100 random units factored with 1 + x*y = u exactly"


def check_hilbert_examples():
    cases = [
        ((1, 7), Place.finite(7), 1),
        ((-1, -1), Place.infinite(), -1),
        ((-1, -23), Place.finite(23), -1),
    ]
    for (a, b), place, expected in cases:
        if hilbert_symbol(a, b, place) != expected:
            return False, "symbol (%s, %s) at %s is wrong" % (a, b, place)
    literal_insoluble = not solvable_mod(-1, -23, 23, 3)
    return literal_insoluble, "closed form matches the literal count modulo 23^3"


def check_hilbert_oracle_sweep():
    primes = [p for p in range(2, 51) if all(p % q for q in range(2, p))]
    for p in primes:
        for a in range(-30, 31):
            if a == 0:
                continue
            for b in range(-30, 31):
                if b == 0:
                    continue
                closed = hilbert_symbol(a, b, Place.finite(p)) == 1
                oracle = primitive_solubility(a, b, p)
                if closed != oracle:
                    return False, "disagreement at (%d, %d, %d)" % (a, b, p)
    return True, "closed form agrees with the solubility oracle for all p <= 50, |a|,|b| <= 30"


def check_hilbert_reciprocity():
    rng = random.Random(RECIPROCITY_SEED)
    for _ in range(200):
        a = Fraction(rng.randint(-100, 100) or 1, rng.randint(1, 100))
        b = Fraction(rng.randint(-100, 100) or 1, rng.randint(1, 100))
        prod = hilbert_symbol(a, b, Place.infinite())
        for p in candidate_primes(a, b):
            prod *= hilbert_symbol(a, b, Place.finite(p))
        if prod != 1:
            return False, "reciprocity fails for (%s, %s)" % (a, b)
    return True, "product over all places is +1 on 200 random pairs"


def check_matrix_ring_witness():
    c = CTX.ex32
    inv = c["inv"]
    o1 = c["o1"]
    gens = []
    for row in plus_part_lattice(o1, inv).basis():
        z = Quaternion(o1.algebra, row)
        gens.append(gen_upper(inv, z))
        gens.append(gen_lower(inv, z))
    iu = o1.algebra.quaternion(0, 1, 0, 0)
    gens.append(VahlenMatrix(inv, ((iu, o1.algebra.zero()), (o1.algebra.zero(), inv.apply(iu.inverse())))))
    if not all(is_integral_member(g, o1) for g in gens):
        return False, "witness generators are not integral"
    _, verdict = generate_matrix_ring(gens, o1)
    return verdict, "unipotents over the fixed part plus one diagonal unit reach Mat(2, O)"


CHECKS = [
    ("010-ex32-discriminants", check_ex32_orders),
    ("011-ex32-sharp-stable", check_ex32_sharp_stable),
    ("012-ex32-maximality-criterion", check_ex32_maximal),
    ("013-ex32-unit-groups", check_ex32_units),
    ("014-ex32-reports-distinguish", check_ex32_reports_distinguish),
    ("015-ex32-involution-line", check_ex32_involution_line),
    ("020-scan-maximal-orders-empty", check_scan_maximal_orders_empty),
    ("021-scan-standard-order-grows", check_scan_standard_order_grows),
    ("030-ex62-gamma-member", check_ex62_member),
    ("031-ex62-displayed-conjugates", check_ex62_displayed_conjugates),
    ("032-ex62-certificate-both-ways", check_ex62_certificate),
    ("033-ex62-conjugate-not-isomorphic", check_ex62_conclusion),
    ("040-ex73-trace-ideals", check_ex73_trace_ideals),
    ("041-ex73-maximality", check_ex73_maximal),
    ("042-ex73-conjugation-by-1-plus-i", check_ex73_conjugation),
    ("043-ex73-diag-conjugator", check_ex73_conjugator_matrix),
    ("044-ex73-certificate-both-ways", check_ex73_certificate),
    ("045-ex73-base-group-probes", check_ex73_base_group_probes),
    ("050-spinor-minus-identity", check_spinor_kernel_minus_identity),
    ("051-spinor-sweep", check_spinor_sweep),
    ("060-decompose-sweep", check_decompose_sweep),
    ("061-unit-factorization-sweep", check_unit_factorization_sweep),
    ("070-hilbert-examples", check_hilbert_examples),
    ("071-hilbert-oracle-sweep", check_hilbert_oracle_sweep),
    ("072-hilbert-reciprocity", check_hilbert_reciprocity),
    ("080-matrix-ring-witness", check_matrix_ring_witness),
    ("090-local-example-escape", check_local_example_escape),
    ("091-local-example-grid", check_local_example_grid),
    ("092-local-example-congruences", check_local_example_congruent_samples),
    ("100-local-invariant-reports", check_local_reports),
]


def run_checks(names=None):
    """Run the registered checks in name order; returns (name, ok, detail)."""
    selected = sorted(CHECKS, key=lambda pair: pair[0])
    results = []
    for name, fn in selected:
        if names is not None and name not in names:
            continue
        try:
            ok, detail = fn()
        except Exception as e:  # a crash is a failure with the error as detail
            ok, detail = False, "error: %s" % e
        results.append((name, ok, detail))
    return results
