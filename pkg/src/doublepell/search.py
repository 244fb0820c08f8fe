"""Materializing point sets at desk scale.

The three family enumerators ride the Pell machinery; box_search is an
exhaustive independent oracle over a finite coefficient box; the genus-1
locus hunt rewrites each shape as a generalized Pell problem over the
finitely many admissible radicands; and the unit-equation enumerator
cross-checks the invariant triples of rational-valued points.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product

from .classify import classify, exceptional_eps_candidates
from .curve import (
    CurveParams,
    QuadPoint,
    SPrimeSet,
    canonical_representative,
    on_curve,
    sym_invariants,
)
from .errors import DomainError, PanicInvariant
from .exactmath import factorize, sqrt_fraction, squarefree_decompose
from .pell import PellProblem, PellSolutionSet, pell_classes, pell_iterate, solve_conic

_GROWTH_CAP = 10**30


@dataclass(frozen=True)
class SearchConfig:
    curve: CurveParams
    s_primes: SPrimeSet = SPrimeSet.empty()
    coeff_bound: int = 5
    eps_bound: int = 15
    family_count: int = 5

    def __post_init__(self):
        if min(self.coeff_bound, self.eps_bound, self.family_count) < 1:
            raise DomainError("all search bounds must be at least 1")


@dataclass(frozen=True)
class SUnitSolution:
    """Ordered triple of S-units summing to 1; degenerate iff some entry is 1
    (equivalently a proper subsum vanishes)."""

    triple: tuple[Fraction, Fraction, Fraction]
    degenerate: bool


def _rational_sqrts(q: Fraction) -> list[Fraction]:
    if q < 0:
        return []
    root = sqrt_fraction(q)
    if root is None:
        return []
    return [root] if root == 0 else [root, -root]


def _sqrt_in_quad(r: Fraction, i: Fraction, eps: int) -> list[tuple[Fraction, Fraction]]:
    """All (u, v) with (u + v*sqrt(eps))^2 = r + i*sqrt(eps)."""
    zero = Fraction(0)
    if i == 0:
        if r == 0:
            return [(zero, zero)]
        sols = [(u, zero) for u in _rational_sqrts(r)]
        sols.extend((zero, v) for v in _rational_sqrts(r / eps) if v != 0)
        return sols
    disc = r * r - eps * i * i
    if disc < 0:
        return []
    s = sqrt_fraction(disc)
    if s is None:
        return []
    sols = []
    for sgn in (1, -1):
        u2 = (r + sgn * s) / 2
        if u2 <= 0:
            continue
        u = sqrt_fraction(u2)
        if u is None:
            continue
        for uu in (u, -u):
            v = i / (2 * uu)
            if uu * uu + eps * v * v == r and 2 * uu * v == i:
                sols.append((uu, v))
    return sorted(set(sols))


def _squarefree_part_fraction(t: Fraction) -> tuple[Fraction, int]:
    """Write t = v^2 * eps with eps a squarefree integer and v > 0 rational."""
    sp, dp = squarefree_decompose(t.numerator)
    sq, dq = squarefree_decompose(t.denominator)
    return Fraction(sp, sq * dq), dp * dq


def _denominators(primes, cap: int) -> list[int]:
    dens = {1}
    for p in sorted(primes):
        extra = set()
        for base in dens:
            value = base * p
            while value <= cap:
                extra.add(value)
                value *= p
        dens |= extra
    return sorted(dens)


def _squarefree_eps_range(limit: int) -> list[int]:
    out = []
    for eps in range(-limit, limit + 1):
        if eps == 0:
            continue
        _, sf = squarefree_decompose(eps)
        if sf == eps:
            out.append(eps)
    return out


def _is_s_fraction(q: Fraction, primes) -> bool:
    return q.denominator == 1 or set(factorize(q.denominator)) <= set(primes)


def _point_key(p: QuadPoint):
    return (abs(p.eps), p.eps, p.flat())


def _iter_pell_pairs(sols: PellSolutionSet, want: int):
    """Distinct nonnegative solution pairs, ascending second entry.

    For the infinite case the emission bound grows geometrically until
    `want` pairs are available (or a safety cap is hit).
    """
    if sols.finite_complete:
        yield from sorted(
            {(abs(p), abs(q)) for p, q in sols.class_reps},
            key=lambda t: (t[1], t[0]),
        )
        return
    if not sols.class_reps:
        return
    bound = 16
    while True:
        pairs = sorted(
            {(abs(p), abs(q)) for p, q in pell_iterate(sols, bound)},
            key=lambda t: (t[1], t[0]),
        )
        if len(pairs) >= want or bound > _GROWTH_CAP:
            yield from pairs
            return
        bound *= 64


def _complete_square(t: int) -> tuple[Fraction, int]:
    """t as v^2 * eps with eps squarefree; (0, 1) for t = 0."""
    if t == 0:
        return Fraction(0), 1
    return _squarefree_part_fraction(Fraction(t))


def enumerate_family_xy(cfg: SearchConfig) -> list[QuadPoint]:
    """Points over integral solutions of y^2 = a x^2 + c, with z completed
    as sqrt(b x^2 + d); ascending |x|, canonical representatives."""
    curve = cfg.curve
    sols = pell_classes(PellProblem(curve.a, curve.c))
    points = []
    for y_abs, x_abs in _iter_pell_pairs(sols, cfg.family_count):
        v, eps = _complete_square(curve.b * x_abs * x_abs + curve.d)
        if eps == 1:
            pt = QuadPoint.rational(x_abs, y_abs, v)
        else:
            pt = QuadPoint.make(eps, (x_abs, 0), (y_abs, 0), (0, v))
        points.append(canonical_representative(pt))
        if len(points) == cfg.family_count:
            break
    return points


def enumerate_family_xz(cfg: SearchConfig) -> list[QuadPoint]:
    """Mirror of the xy family: integral (x, z) on z^2 = b x^2 + d with y
    completed as sqrt(a x^2 + c)."""
    curve = cfg.curve
    sols = pell_classes(PellProblem(curve.b, curve.d))
    points = []
    for z_abs, x_abs in _iter_pell_pairs(sols, cfg.family_count):
        v, eps = _complete_square(curve.a * x_abs * x_abs + curve.c)
        if eps == 1:
            pt = QuadPoint.rational(x_abs, v, z_abs)
        else:
            pt = QuadPoint.make(eps, (x_abs, 0), (0, v), (z_abs, 0))
        points.append(canonical_representative(pt))
        if len(points) == cfg.family_count:
            break
    return points


def enumerate_family_yz(cfg: SearchConfig) -> list[QuadPoint]:
    """Points over integral (y, z) with b y^2 - a z^2 = bc - ad, keeping the
    subsequence where (y^2 - c)/a is an S-integer; x completes the point."""
    curve = cfg.curve
    primes = cfg.s_primes.primes
    bound = 64
    while True:
        points = []
        seen = set()
        for y_val, z_val in solve_conic(curve.b, curve.a, curve.cross, bound):
            key = (abs(y_val), abs(z_val))
            if key in seen:
                continue
            seen.add(key)
            t = Fraction(key[0] ** 2 - curve.c, curve.a)
            if not _is_s_fraction(t, primes):
                continue
            if t == 0:
                pt = QuadPoint.rational(0, key[0], key[1])
            else:
                v, eps = _squarefree_part_fraction(t)
                if eps == 1:
                    pt = QuadPoint.rational(v, key[0], key[1])
                else:
                    pt = QuadPoint.make(eps, (0, v), (key[0], 0), (key[1], 0))
            points.append(canonical_representative(pt))
            if len(points) == cfg.family_count:
                return points
        if bound > _GROWTH_CAP:
            return points
        bound *= 64


def box_search(cfg: SearchConfig) -> list[QuadPoint]:
    """Exhaustive scan of every point whose radicand and coefficients fit the
    configured box; complete within the box by construction."""
    curve = cfg.curve
    bound = cfg.coeff_bound
    dens = _denominators(cfg.s_primes.primes, bound)
    den_set = set(dens)
    cands = sorted({Fraction(n, q) for q in dens for n in range(-bound, bound + 1)})

    def in_box(q: Fraction) -> bool:
        return abs(q.numerator) <= bound and q.denominator in den_set

    found: dict[tuple, QuadPoint] = {}

    def note(point: QuadPoint):
        if not on_curve(curve, point):
            raise PanicInvariant(f"box candidate {point} escaped the curve")
        rep = canonical_representative(point)
        found[(rep.eps,) + rep.flat()] = rep

    a, b, c, d = curve.a, curve.b, curve.c, curve.d
    for eps in _squarefree_eps_range(cfg.eps_bound):
        if eps == 1:
            for ux in cands:
                ys = [u for u in _rational_sqrts(a * ux * ux + c) if in_box(u)]
                if not ys:
                    continue
                zs = [u for u in _rational_sqrts(b * ux * ux + d) if in_box(u)]
                for uy in ys:
                    for uz in zs:
                        note(QuadPoint.rational(ux, uy, uz))
            continue
        for ux in cands:
            for vx in cands:
                rx = ux * ux + eps * vx * vx
                ix = 2 * ux * vx
                ys = [
                    (uy, vy)
                    for uy, vy in _sqrt_in_quad(a * rx + c, a * ix, eps)
                    if in_box(uy) and in_box(vy)
                ]
                if not ys:
                    continue
                zs = [
                    (uz, vz)
                    for uz, vz in _sqrt_in_quad(b * rx + d, b * ix, eps)
                    if in_box(uz) and in_box(vz)
                ]
                for y_pair in ys:
                    for z_pair in zs:
                        note(QuadPoint.make(eps, (ux, vx), y_pair, z_pair))
    return sorted(found.values(), key=_point_key)


def search_exceptional(cfg: SearchConfig) -> list[QuadPoint]:
    """Hunt the genus-1 locus shapes over every admissible radicand.

    Each shape puts one coordinate in the base field and the other two in
    sqrt(eps)*Q; the first curve equation becomes a generalized Pell problem
    and the second a companion square condition.

    The radicand candidates are supported on the primes of bc - ad together
    with S.  The shapes whose rational coordinate is y or z force eps to
    divide d or c instead, so the list is exhaustive only when S contains
    the primes of c*d, the standing admissibility hypothesis; box_search
    stays the unconditional oracle.
    """
    curve = cfg.curve
    bound = cfg.coeff_bound
    a, b, c, d = curve.a, curve.b, curve.c, curve.d
    dens = set(_denominators(cfg.s_primes.primes, bound))

    def in_box(q: Fraction) -> bool:
        return abs(q.numerator) <= bound and q.denominator in dens

    found: dict[tuple, QuadPoint] = {}

    def note(point: QuadPoint):
        if point.eps == 1:
            return
        if not on_curve(curve, point):
            raise PanicInvariant(f"exceptional candidate {point} escaped the curve")
        rep = canonical_representative(point)
        found[(rep.eps,) + rep.flat()] = rep

    for eps in exceptional_eps_candidates(curve, cfg.s_primes):
        # x rational: (eps*u)^2 - (a*eps) t^2 = c*eps with eps | eps*u,
        # companion eps*v^2 = b t^2 + d.
        for big_u, t in pell_iterate(pell_classes(PellProblem(a * eps, c * eps)), bound):
            if big_u % eps:
                continue
            u = big_u // eps
            if abs(u) > bound or abs(t) > bound:
                continue
            for v in _rational_sqrts(Fraction(b * t * t + d, eps)):
                if in_box(v):
                    note(QuadPoint.make(eps, (t, 0), (0, u), (0, v)))
        # y rational: t^2 - (a*eps) u^2 = c, companion eps*v^2 = b*eps*u^2 + d.
        for t, u in pell_iterate(pell_classes(PellProblem(a * eps, c)), bound):
            if abs(t) > bound:
                continue
            for v in _rational_sqrts(Fraction(b * eps * u * u + d, eps)):
                if in_box(v):
                    note(QuadPoint.make(eps, (0, u), (t, 0), (0, v)))
        # z rational: t^2 - (b*eps) u^2 = d, companion eps*v^2 = a*eps*u^2 + c.
        for t, u in pell_iterate(pell_classes(PellProblem(b * eps, d)), bound):
            if abs(t) > bound:
                continue
            for v in _rational_sqrts(Fraction(a * eps * u * u + c, eps)):
                if in_box(v):
                    note(QuadPoint.make(eps, (0, u), (0, v), (t, 0)))
    return sorted(found.values(), key=_point_key)


def sunit_solutions(s_primes: SPrimeSet, exp_bound: int) -> list[SUnitSolution]:
    """Every ordered triple of S-units with exponents bounded by exp_bound
    that sums to 1 exactly."""
    if exp_bound < 1:
        raise DomainError("exp_bound must be at least 1")
    primes = sorted(s_primes.primes)
    units: set[Fraction] = set()
    for exps in product(range(-exp_bound, exp_bound + 1), repeat=len(primes)):
        value = Fraction(1)
        for p, e in zip(primes, exps):
            value *= Fraction(p) ** e
        units.add(value)
        units.add(-value)
    ordered = sorted(units)
    unit_set = set(ordered)
    solutions = []
    for x1 in ordered:
        for x2 in ordered:
            x3 = 1 - x1 - x2
            if x3 in unit_set:
                triple = (x1, x2, x3)
                solutions.append(SUnitSolution(triple, degenerate=1 in triple))
    solutions.sort(key=lambda sol: sol.triple)
    return solutions


PASSED = "passed"
SKIPPED_IRRATIONAL = "skipped_irrational"
SKIPPED_EXPONENT = "skipped_exponent"
FAILED_NOT_S_UNIT = "failed_not_s_unit"
FAILED_MISSING = "failed_missing"
FAILED_FLAG_MISMATCH = "failed_flag_mismatch"


@dataclass(frozen=True)
class SUnitCheckEntry:
    point: QuadPoint
    status: str
    triple: tuple[Fraction, Fraction, Fraction] | None = None


@dataclass(frozen=True)
class SUnitCheckReport:
    entries: tuple[SUnitCheckEntry, ...]

    def counts(self) -> dict[str, int]:
        out: dict[str, int] = {}
        for entry in self.entries:
            out[entry.status] = out.get(entry.status, 0) + 1
        return out

    def failures(self) -> list[SUnitCheckEntry]:
        return [e for e in self.entries if e.status.startswith("failed")]


def _s_unit_exponents(q: Fraction, primes) -> dict[int, int] | None:
    """Exponent vector of q over `primes`, or None if q is not an S-unit."""
    out: dict[int, int] = {}
    for magnitude, sign in ((abs(q.numerator), 1), (q.denominator, -1)):
        if magnitude == 1:
            continue
        for p, e in factorize(magnitude).items():
            if p not in primes:
                return None
            out[p] = out.get(p, 0) + sign * e
    return out


def cross_check_sunit(
    cfg: SearchConfig, points, exp_bound: int
) -> SUnitCheckReport:
    """Verify that rational-valued invariant triples land in the unit-equation
    enumeration and that their degeneracy matches the classifier.

    Points whose triple is irrational (the generic case over Q) or whose
    exponents exceed the bound are reported as skipped, not failed.
    """
    curve = cfg.curve
    primes = set(cfg.s_primes.primes)
    enumerated = None
    entries = []
    for point in points:
        sym = sym_invariants(curve, point)
        values = (sym.alpha, sym.beta, sym.gamma)
        if not all(v.is_rational() for v in values):
            entries.append(SUnitCheckEntry(point, SKIPPED_IRRATIONAL))
            continue
        triple = tuple(v.rational_value() for v in values)
        flags = classify(curve, point).degenerate_flags
        if (1 in triple) != bool(flags):
            entries.append(SUnitCheckEntry(point, FAILED_FLAG_MISMATCH, triple))
            continue
        exponents = [_s_unit_exponents(t, primes) for t in triple]
        if any(e is None for e in exponents):
            entries.append(SUnitCheckEntry(point, FAILED_NOT_S_UNIT, triple))
            continue
        largest = max((abs(e) for vec in exponents for e in vec.values()), default=0)
        if largest > exp_bound:
            entries.append(SUnitCheckEntry(point, SKIPPED_EXPONENT, triple))
            continue
        if enumerated is None:
            enumerated = {sol.triple for sol in sunit_solutions(cfg.s_primes, exp_bound)}
        status = PASSED if triple in enumerated else FAILED_MISSING
        entries.append(SUnitCheckEntry(point, status, triple))
    return SUnitCheckReport(tuple(entries))
