"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

Run with `pytest tests/test_acceptance.py -v -s` to see the per-criterion
report lines.
"""

import time
from fractions import Fraction
from math import isqrt

from doublepell import (
    MultiQuad,
    PellProblem,
    QuadPoint,
    SPrimeSet,
    SearchConfig,
    Verdict,
    box_search,
    canonical_representative,
    classify,
    compute_bounds,
    loci_from_invariants,
    loci_from_signs,
    pair_key,
    pell_classes,
    pell_fundamental,
    pell_iterate,
    search_exceptional,
    sunit_solutions,
    sym_invariants,
    validate_curve,
    verify_identities,
)


def _report(number: int, label: str, ok: bool, detail: str = ""):
    status = "PASS" if ok else "FAIL"
    tail = f" ({detail})" if detail else ""
    print(f"[criterion {number}] {label}: {status}{tail}")
    assert ok, f"criterion {number} failed: {label} {tail}"


def test_criterion_1_identity_suite(corpus):
    started = time.perf_counter()
    failures = 0
    for curve, point in corpus:
        if not verify_identities(curve, point).all_pass():
            failures += 1
    elapsed = time.perf_counter() - started
    curves = {c for c, _ in corpus}
    ok = (
        failures == 0
        and len(corpus) >= 1000
        and len(curves) >= 5
        and validate_curve(2, 3, 1, 1) in curves
        and elapsed < 60
    )
    _report(
        1,
        "exact identity suite over generated corpus",
        ok,
        f"{len(corpus)} points, {len(curves)} curves, {failures} failures, {elapsed:.1f}s",
    )


def test_criterion_2_worked_example_ledger():
    curve = validate_curve(2, 3, 1, 1)
    checks = []

    sym = sym_invariants(curve, QuadPoint.make(13, (2, 0), (3, 0), (0, 1)))
    checks.append(sym.ff == MultiQuad({1: 17, 2: 12}))
    checks.append(sym.gg == -1 and sym.hh == 1 and sym.gamma == 1)
    checks.append(
        classify(curve, QuadPoint.make(13, (2, 0), (3, 0), (0, 1))).verdict
        is Verdict.FAMILY_XY
    )

    sym = sym_invariants(curve, QuadPoint.make(33, (4, 0), (0, 1), (7, 0)))
    checks.append(sym.ff == -1 and sym.hh == -1 and sym.beta == 1)
    checks.append(
        classify(curve, QuadPoint.make(33, (4, 0), (0, 1), (7, 0))).verdict
        is Verdict.FAMILY_XZ
    )

    sym = sym_invariants(curve, QuadPoint.make(10, (0, 2), (9, 0), (11, 0)))
    checks.append(sym.ff == 1 and sym.gg == 1 and sym.alpha == 1)
    checks.append(
        classify(curve, QuadPoint.make(10, (0, 2), (9, 0), (11, 0))).verdict
        is Verdict.FAMILY_YZ
    )

    sym = sym_invariants(curve, QuadPoint.rational(0, 1, 1))
    checks.append(sym.alpha == 1)
    checks.append(sym.beta == MultiQuad({1: 5, 6: 2}))
    checks.append(sym.gamma == MultiQuad({1: -5, 6: -2}))

    _report(2, "worked-example ledger on the reference curve", all(checks))


def test_criterion_3_oracle_equivalence(corpus):
    disagreements = 0
    for curve, point in corpus:
        sym = sym_invariants(curve, point)
        if loci_from_invariants(curve, sym) != loci_from_signs(point):
            disagreements += 1
    _report(
        3,
        "invariant-based vs sign-pattern classification",
        disagreements == 0,
        f"{len(corpus)} points, {disagreements} disagreements",
    )


def _naive_box_oracle(curve, eps_bound, coeff_bound):
    """Independent triple-loop oracle over integer coefficient boxes."""

    def squarefree(n):
        f = 2
        m = abs(n)
        while f * f <= m:
            if m % (f * f) == 0:
                return False
            f += 1
        return True

    span = range(-coeff_bound, coeff_bound + 1)
    hits = set()
    for eps in range(-eps_bound, eps_bound + 1):
        if eps == 0 or not squarefree(eps):
            continue
        vx_span = span if eps != 1 else (0,)
        for ux in span:
            for vx in vx_span:
                ry = curve.a * (ux * ux + eps * vx * vx) + curve.c
                iy = 2 * curve.a * ux * vx
                ys = [
                    (uy, vy)
                    for uy in span
                    for vy in (span if eps != 1 else (0,))
                    if uy * uy + eps * vy * vy == ry and 2 * uy * vy == iy
                ]
                if not ys:
                    continue
                rz = curve.b * (ux * ux + eps * vx * vx) + curve.d
                iz = 2 * curve.b * ux * vx
                zs = [
                    (uz, vz)
                    for uz in span
                    for vz in (span if eps != 1 else (0,))
                    if uz * uz + eps * vz * vz == rz and 2 * uz * vz == iz
                ]
                for y_pair in ys:
                    for z_pair in zs:
                        point = QuadPoint.make(eps, (ux, vx), y_pair, z_pair)
                        hits.add(canonical_representative(point))
    return hits


def test_criterion_4_box_completeness():
    started = time.perf_counter()
    curve = validate_curve(2, 3, 1, 1)
    got = set(box_search(SearchConfig(curve, coeff_bound=5, eps_bound=15)))
    oracle = _naive_box_oracle(curve, 15, 5)
    elapsed = time.perf_counter() - started
    expected = {
        QuadPoint.rational(0, 1, 1),
        QuadPoint.make(13, (2, 0), (3, 0), (0, 1)),
        QuadPoint.make(3, (1, 0), (0, 1), (2, 0)),
    }
    ok = got == oracle == expected and elapsed < 120
    _report(
        4,
        "box completeness against the naive triple-loop oracle",
        ok,
        f"{len(got)} orbits, {elapsed:.1f}s",
    )


def test_criterion_5_exceptional_vacuity():
    curve = validate_curve(2, 3, 1, 1)
    found = search_exceptional(SearchConfig(curve, coeff_bound=1000))
    _report(
        5,
        "genus-1 locus search empty on the reference curve",
        found == [],
        f"coeff bound 1000, {len(found)} hits",
    )


def _brute_force_pell(D, N, bound):
    out = set()
    for y in range(bound + 1):
        x2 = N + D * y * y
        if x2 < 0:
            continue
        x = isqrt(x2)
        if x * x == x2:
            out.update({(x, y), (-x, y), (x, -y), (-x, -y)})
    return out


def test_criterion_6_pell_correctness():
    started = time.perf_counter()
    mismatches = []
    bound = 10**4
    nonsquare = [D for D in range(2, 31) if isqrt(D) ** 2 != D]
    for D in nonsquare + list(range(-10, 0)):
        for N in [n for n in range(-20, 21) if n != 0]:
            got = set(pell_iterate(pell_classes(PellProblem(D, N)), bound))
            if got != _brute_force_pell(D, N, bound):
                mismatches.append((D, N))
    minimality_ok = True
    for D in range(2, 51):
        if isqrt(D) ** 2 == D:
            continue
        x1, y1 = pell_fundamental(D)
        if x1 * x1 - D * y1 * y1 != 1:
            minimality_ok = False
        for y in range(1, y1):
            if isqrt(1 + D * y * y) ** 2 == 1 + D * y * y:
                minimality_ok = False
    elapsed = time.perf_counter() - started
    ok = not mismatches and minimality_ok
    _report(
        6,
        "solution sets equal brute force; fundamental solutions minimal",
        ok,
        f"{len(mismatches)} mismatches, {elapsed:.1f}s",
    )


def test_criterion_7_fiber_bound(corpus):
    fibers = {}
    for curve, point in corpus:
        sym = sym_invariants(curve, point)
        key = (curve, sym.alpha, sym.beta, sym.gamma)
        fibers.setdefault(key, set()).add(pair_key(point))
    worst = max(len(pairs) for pairs in fibers.values())
    _report(
        7,
        "no invariant triple shared by more than 4 conjugate pairs",
        worst <= 4,
        f"largest observed fiber {worst}",
    )


def _power_of_two_by_squaring(exponent):
    result, base = 1, 2
    while exponent:
        if exponent & 1:
            result *= base
        base *= base
        exponent >>= 1
    return result


def test_criterion_8_bound_arithmetic():
    n1, n2 = compute_bounds(1, 1)
    ok = (
        n1 == _power_of_two_by_squaring(2838)
        and n2 == 3 * _power_of_two_by_squaring(1122)
        and len(str(n1)) == 855
    )
    _report(8, "finiteness bounds exact with 855-digit first value", ok)


def test_criterion_9_sunit_oracle():
    f = Fraction
    sols = sunit_solutions(SPrimeSet.of(2, 3), 2)
    by_triple = {sol.triple: sol.degenerate for sol in sols}
    checks = [
        by_triple.get((f(4), f(-3, 2), f(-3, 2))) is False,
        by_triple.get((f(1), f(2), f(-2))) is True,
        all(sum(sol.triple) == 1 for sol in sols),
        all(sol.degenerate == (1 in sol.triple) for sol in sols),
    ]
    _report(
        9,
        "unit-equation enumeration with degeneracy flags",
        all(checks),
        f"{len(sols)} triples",
    )
