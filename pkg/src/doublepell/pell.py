"""Exact solution of x^2 - D*y^2 = N over the integers.

Positive nonsquare D gives the classical structure: a fundamental unit of
x^2 - D*y^2 = 1 plus finitely many class representatives, every solution
being a representative composed with a power of the unit, up to sign.
D < 0 and square D collapse to finite enumerations.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import isqrt

from .errors import DomainError, PanicInvariant
from .exactmath import factorize


def is_square(n: int) -> bool:
    return n >= 0 and isqrt(n) ** 2 == n


def divisors(n: int) -> list[int]:
    """Positive divisors of |n|, ascending."""
    if n == 0:
        raise DomainError("0 has no divisor list")
    out = [1]
    for p, e in sorted(factorize(n).items()):
        out = [d * p**k for d in out for k in range(e + 1)]
    return sorted(out)


@dataclass(frozen=True)
class CFExpansion:
    """Periodic continued fraction of sqrt(d): [a0; period repeating]."""

    d: int
    a0: int
    period: tuple[int, ...]


@dataclass(frozen=True)
class PellProblem:
    D: int
    N: int

    def __post_init__(self):
        if self.N == 0:
            raise DomainError("N must be nonzero")


@dataclass(frozen=True)
class PellSolutionSet:
    """Solutions of x^2 - D*y^2 = N.

    If finite_complete, class_reps is the entire solution set.  Otherwise
    every solution is, up to sign, a class representative composed with a
    power of the fundamental unit.
    """

    problem: PellProblem
    fundamental: tuple[int, int] | None
    class_reps: tuple[tuple[int, int], ...]
    finite_complete: bool


def cf_sqrt(D: int) -> CFExpansion:
    """Minimal-period continued fraction of sqrt(D) for nonsquare D > 0."""
    if D <= 0:
        raise DomainError("D must be positive")
    a0 = isqrt(D)
    if a0 * a0 == D:
        raise DomainError("D must not be a perfect square")
    m, d, a = 0, 1, a0
    period = []
    while True:
        m = d * a - m
        d = (D - m * m) // d
        a = (a0 + m) // d
        period.append(a)
        if d == 1:
            break
    return CFExpansion(d=D, a0=a0, period=tuple(period))


def pell_fundamental(D: int) -> tuple[int, int]:
    """Minimal positive solution of x^2 - D*y^2 = 1, via CF convergents."""
    cf = cf_sqrt(D)
    p_prev, q_prev = 1, 0
    p, q = cf.a0, 1
    k = 0
    while p * p - D * q * q != 1:
        a = cf.period[k % len(cf.period)]
        p, p_prev = a * p + p_prev, p
        q, q_prev = a * q + q_prev, q
        k += 1
    return p, q


def pell_compose(p: tuple[int, int], q: tuple[int, int], D: int) -> tuple[int, int]:
    """Brahmagupta composition; norms multiply."""
    (x1, y1), (x2, y2) = p, q
    return x1 * x2 + D * y1 * y2, x1 * y2 + y1 * x2


def _le_plus_sqrt(y: int, D: int, r: int) -> bool:
    """Exact test of y*sqrt(D) <= r for integers y, r and D > 0."""
    if y <= 0:
        if r >= 0:
            return True
        return y * y * D >= r * r
    if r < 0:
        return False
    return y * y * D <= r * r


def _u_le(x: int, y: int, D: int, cap: int) -> bool:
    """Exact test of x + y*sqrt(D) <= cap."""
    return _le_plus_sqrt(y, D, cap - x)


def _branch_starts(rep: tuple[int, int], N: int):
    """Start values covering both directions of unit composition.

    rep has nonnegative entries.  Its conjugate, normalized to positive
    real value, seeds the descending half of the class; sign symmetry at
    emission supplies the rest.
    """
    x, y = rep
    yield x, y
    other = (x, -y) if N > 0 else (-x, y)
    if other != (x, y):
        yield other


def _iterate_class(rep, fund, D, N, bound):
    """All class elements x + y*sqrt(D) with positive value below the cap
    implied by |y| <= bound; no sign expansion."""
    x1, y1 = fund
    cap = isqrt(abs(N) + D * bound * bound) + bound * (isqrt(D) + 1) + 1
    for x0, y0 in _branch_starts(rep, N):
        x, y = x0, y0
        while _u_le(x, y, D, cap):
            yield x, y
            x, y = x * x1 + D * y * y1, x * y1 + y * x1


def pell_classes(problem: PellProblem) -> PellSolutionSet:
    """Class representatives (plus fundamental unit) for x^2 - D*y^2 = N.

    D > 0 nonsquare: representatives with nonnegative entries are found by
    exhausting the window y <= y1*sqrt(|N|(x1+1)/(2D)) for N > 0 and the
    mirrored x-window for N < 0; both windows contain the classical bounds,
    so the class list is complete.  D < 0 and square D are enumerated
    outright and marked finite_complete.
    """
    D, N = problem.D, problem.N
    if D == 0:
        # x^2 = N leaves y unconstrained, so no finite description exists.
        raise DomainError("D = 0 is degenerate: y would be unconstrained")
    if D < 0:
        sols: set[tuple[int, int]] = set()
        if N > 0:
            for y in range(isqrt(N // -D) + 1):
                x2 = N + D * y * y
                if x2 >= 0 and is_square(x2):
                    x = isqrt(x2)
                    sols.update({(x, y), (-x, y), (x, -y), (-x, -y)})
        return PellSolutionSet(problem, None, tuple(sorted(sols)), True)
    m = isqrt(D)
    if m * m == D:
        sols = set()
        for e in divisors(N):
            for e_signed in (e, -e):
                f = N // e_signed
                if (e_signed + f) % 2:
                    continue
                x = (e_signed + f) // 2
                t = (f - e_signed) // 2
                if t % m == 0:
                    sols.add((x, t // m))
        return PellSolutionSet(problem, None, tuple(sorted(sols)), True)

    x1, y1 = pell_fundamental(D)
    cands = []
    if N > 0:
        lim = y1 * y1 * N * (x1 + 1)
        y = 0
        while 2 * D * y * y <= lim:
            x2 = N + D * y * y
            if is_square(x2):
                cands.append((isqrt(x2), y))
            y += 1
    else:
        lim = x1 * x1 * (-N) * (x1 + 1)
        x = 0
        while 2 * D * x * x <= lim:
            rem = x * x - N
            if rem % D == 0 and is_square(rem // D):
                cands.append((x, isqrt(rem // D)))
            x += 1
    cands.sort(key=lambda t: (t[1], t[0]))
    ymax = max((y for _, y in cands), default=0)
    reps: list[tuple[int, int]] = []
    covered: set[tuple[int, int]] = set()
    for cand in cands:
        if cand in covered:
            continue
        reps.append(cand)
        for x, y in _iterate_class(cand, (x1, y1), D, N, ymax):
            covered.add((abs(x), abs(y)))
    return PellSolutionSet(problem, (x1, y1), tuple(reps), False)


def pell_iterate(sols: PellSolutionSet, bound: int) -> list[tuple[int, int]]:
    """All solutions with |y| <= bound, deduplicated, sorted by |y| then x."""
    if bound < 0:
        raise DomainError("bound must be nonnegative")
    D, N = sols.problem.D, sols.problem.N
    out: set[tuple[int, int]] = set()

    def emit(x: int, y: int):
        if x * x - D * y * y != N:
            raise PanicInvariant(f"emitted ({x},{y}) violates x^2-{D}y^2={N}")
        out.update({(x, y), (-x, y), (x, -y), (-x, -y)})

    if sols.finite_complete:
        for x, y in sols.class_reps:
            if abs(y) <= bound:
                emit(x, y)
    else:
        for rep in sols.class_reps:
            for x, y in _iterate_class(rep, sols.fundamental, D, N, bound):
                if abs(y) <= bound:
                    emit(x, y)
    return sorted(out, key=lambda t: (abs(t[1]), t[0], t[1]))


def solve_conic(A: int, B: int, C: int, bound: int) -> list[tuple[int, int]]:
    """All integer solutions of A*y^2 - B*z^2 = C with |z| <= bound.

    Substitutes u = A*y, solves u^2 - (A*B)*z^2 = A*C, and keeps u divisible
    by A.
    """
    if A == 0 or B == 0 or C == 0:
        raise DomainError("conic coefficients must be nonzero")
    sols = pell_classes(PellProblem(A * B, A * C))
    out = set()
    for u, z in pell_iterate(sols, bound):
        if u % A == 0:
            y = u // A
            if A * y * y - B * z * z != C:
                raise PanicInvariant("conic substitution produced a bad pair")
            out.add((y, z))
    return sorted(out, key=lambda t: (abs(t[1]), abs(t[0]), t[1], t[0]))
