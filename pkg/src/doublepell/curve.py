"""The double Pell curve y^2 = a*x^2 + c, z^2 = b*x^2 + d.

Holds the curve parameters, quadratic points u + v*sqrt(eps), the three
multiplicative functions f, g, h on the curve, their symmetric products at
a conjugate pair, the unit-sum invariants alpha, beta, gamma, and the exact
identity checks tying all of them together.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from .errors import (
    ABCD_ZERO,
    AD_EQUALS_BC,
    DegenerateCurve,
    DomainError,
    OffCurve,
    PanicInvariant,
)
from .exactmath import (
    MultiQuad,
    _is_probable_prime,
    factorize,
    squarefree_decompose,
)


@dataclass(frozen=True)
class CurveParams:
    a: int
    b: int
    c: int
    d: int

    def __post_init__(self):
        if self.a * self.b * self.c * self.d == 0:
            raise DegenerateCurve("a*b*c*d must be nonzero", ABCD_ZERO)
        if self.a * self.d - self.b * self.c == 0:
            raise DegenerateCurve("a*d - b*c must be nonzero", AD_EQUALS_BC)

    @property
    def cross(self) -> int:
        """b*c - a*d, the constant of the third conic."""
        return self.b * self.c - self.a * self.d


def validate_curve(a: int, b: int, c: int, d: int) -> CurveParams:
    return CurveParams(a, b, c, d)


@dataclass(frozen=True)
class SPrimeSet:
    """Finite set of rational primes; s counts the archimedean place too."""

    primes: frozenset[int]

    def __post_init__(self):
        for p in self.primes:
            if not _is_probable_prime(p):
                raise DomainError(f"{p} is not prime")

    @classmethod
    def of(cls, *primes: int) -> "SPrimeSet":
        return cls(frozenset(primes))

    @classmethod
    def empty(cls) -> "SPrimeSet":
        return cls(frozenset())

    @property
    def s(self) -> int:
        return len(self.primes) + 1

    def missing_primes_for(self, curve: CurveParams) -> frozenset[int]:
        """Primes of c*d*(bc-ad) not in the set; empty iff admissible."""
        needed = factorize(curve.c * curve.d * curve.cross)
        return frozenset(needed) - self.primes

    def is_admissible_for(self, curve: CurveParams) -> bool:
        return not self.missing_primes_for(curve)


Coord = tuple[Fraction, Fraction]


@dataclass(frozen=True)
class QuadPoint:
    """A point (x, y, z) with coordinates u + v*sqrt(eps), u, v rational.

    eps is squarefree; eps = 1 encodes rational points (all v = 0).
    Construct through make() so the representation is canonical.
    """

    eps: int
    x: Coord
    y: Coord
    z: Coord

    def __post_init__(self):
        if self.eps == 0:
            raise DomainError("eps must be nonzero")
        _, sf = squarefree_decompose(self.eps)
        if sf != self.eps:
            raise DomainError("eps must be squarefree; use QuadPoint.make")
        radical = False
        for u, v in (self.x, self.y, self.z):
            if not (isinstance(u, Fraction) and isinstance(v, Fraction)):
                raise DomainError("coordinates must be Fraction pairs")
            radical = radical or v != 0
        if self.eps == 1 and radical:
            raise DomainError("eps = 1 points must have zero radical parts")
        if self.eps != 1 and not radical:
            raise DomainError("all radical parts zero; use QuadPoint.make")

    @classmethod
    def make(cls, eps: int, x, y, z) -> "QuadPoint":
        """Canonicalize: fold square parts of eps into v, collapse to eps = 1
        when every radical part vanishes."""
        if eps == 0:
            raise DomainError("eps must be nonzero")
        s, sf = squarefree_decompose(eps)
        coords = []
        for u, v in (x, y, z):
            u, v = Fraction(u), Fraction(v) * s
            if sf == 1:
                u, v = u + v, Fraction(0)
            coords.append((u, v))
        if all(v == 0 for _, v in coords):
            sf = 1
            coords = [(u, Fraction(0)) for u, _ in coords]
        return cls(sf, *coords)

    @classmethod
    def rational(cls, x, y, z) -> "QuadPoint":
        return cls.make(1, (x, 0), (y, 0), (z, 0))

    def conjugate(self) -> "QuadPoint":
        u, v = self.x
        a, b = self.y
        p, q = self.z
        return QuadPoint.make(self.eps, (u, -v), (a, -b), (p, -q))

    def is_rational(self) -> bool:
        return self.eps == 1

    def coord_mqs(self) -> tuple[MultiQuad, MultiQuad, MultiQuad]:
        def mq(pair: Coord) -> MultiQuad:
            u, v = pair
            if self.eps == 1:
                # v vanishes by the invariant; a {1: u, 1: v} literal would
                # silently drop u.
                return MultiQuad({1: u})
            return MultiQuad({1: u, self.eps: v})

        return mq(self.x), mq(self.y), mq(self.z)

    def flat(self) -> tuple[Fraction, ...]:
        return (*self.x, *self.y, *self.z)


def on_curve(curve: CurveParams, point: QuadPoint) -> bool:
    """Exact check of both defining equations in Q(sqrt(eps))."""
    x, y, z = point.coord_mqs()
    eq1 = y * y - curve.a * (x * x) - curve.c
    eq2 = z * z - curve.b * (x * x) - curve.d
    return eq1.is_zero() and eq2.is_zero()


def eval_fgh(curve: CurveParams, point: QuadPoint):
    """f = y + sqrt(a)x, g = z + sqrt(b)x, h = sqrt(b)y - sqrt(a)z.

    All three are nonzero at affine points: f*(y - sqrt(a)x) = c,
    g*(z - sqrt(b)x) = d, h*(sqrt(b)y + sqrt(a)z) = bc - ad, and the curve
    is nondegenerate.
    """
    if not on_curve(curve, point):
        raise OffCurve(f"{point} is not on {curve}")
    x, y, z = point.coord_mqs()
    sa = MultiQuad.sqrt_int(curve.a)
    sb = MultiQuad.sqrt_int(curve.b)
    f = y + sa * x
    g = z + sb * x
    h = sb * y - sa * z
    if f.is_zero() or g.is_zero() or h.is_zero():
        raise PanicInvariant("f, g, h cannot vanish at an affine point")
    return f, g, h


@dataclass(frozen=True)
class SymPoint:
    """Symmetric data of the conjugate pair {P, P'}.

    ff, gg, hh are the products f(P)f(P'), g(P)g(P'), h(P)h(P'); alpha,
    beta, gamma the unit-equation coordinates built from them.
    """

    point: QuadPoint
    ff: MultiQuad
    gg: MultiQuad
    hh: MultiQuad
    alpha: MultiQuad
    beta: MultiQuad
    gamma: MultiQuad


def sym_invariants(curve: CurveParams, point: QuadPoint) -> SymPoint:
    """Evaluate ff, gg, hh by their symmetric bilinear expansions and derive
    alpha = cd/(ff*gg), beta = c(bc-ad)/(ff*hh), gamma = d(ad-bc)/(gg*hh).

    alpha + beta + gamma = 1 is asserted before returning.
    """
    if not on_curve(curve, point):
        raise OffCurve(f"{point} is not on {curve}")
    e = point.eps
    a, b, c, d = curve.a, curve.b, curve.c, curve.d

    def norm(pair: Coord) -> Fraction:
        u, v = pair
        return u * u - e * v * v

    def cross(p1: Coord, p2: Coord) -> Fraction:
        return 2 * (p1[0] * p2[0] - e * p1[1] * p2[1])

    sa = MultiQuad.sqrt_int(a)
    sb = MultiQuad.sqrt_int(b)
    sab = sa * sb
    xx, yy, zz = norm(point.x), norm(point.y), norm(point.z)
    ff = MultiQuad.from_rational(yy + a * xx) + sa * cross(point.x, point.y)
    gg = MultiQuad.from_rational(zz + b * xx) + sb * cross(point.x, point.z)
    hh = MultiQuad.from_rational(b * yy + a * zz) - sab * cross(point.y, point.z)
    alpha = (c * d) * (ff * gg).inverse()
    beta = (c * (b * c - a * d)) * (ff * hh).inverse()
    gamma = (d * (a * d - b * c)) * (gg * hh).inverse()
    if alpha + beta + gamma != MultiQuad.one():
        raise PanicInvariant(f"alpha+beta+gamma != 1 at {point}")
    return SymPoint(point, ff, gg, hh, alpha, beta, gamma)


@dataclass(frozen=True)
class IdentityReport:
    """Pass/fail record of the six exact identities at one point."""

    linear_fgh: bool        # sqrt(b)f - sqrt(a)g = h
    inverse_fgh: bool       # c*sqrt(b)/f - d*sqrt(a)/g = h
    product_linear: bool    # hh' = b ff' + a gg' - sqrt(ab)(f'g + fg')
    product_inverse: bool   # hh' = c^2 b/ff' + d^2 a/gg' - cd sqrt(ab)(1/f'g + 1/fg')
    unit_sum: bool          # alpha + beta + gamma = 1
    ff_square_ratio: bool   # (ff')^2 = -c^2 gamma / (alpha beta)

    def all_pass(self) -> bool:
        return all(self.as_dict().values())

    def as_dict(self) -> dict[str, bool]:
        return {
            "linear_fgh": self.linear_fgh,
            "inverse_fgh": self.inverse_fgh,
            "product_linear": self.product_linear,
            "product_inverse": self.product_inverse,
            "unit_sum": self.unit_sum,
            "ff_square_ratio": self.ff_square_ratio,
        }


def verify_identities(curve: CurveParams, point: QuadPoint) -> IdentityReport:
    """Evaluate every identity exactly at the conjugate pair of `point`."""
    if not on_curve(curve, point):
        raise OffCurve(f"{point} is not on {curve}")
    a, b, c, d = curve.a, curve.b, curve.c, curve.d
    sa = MultiQuad.sqrt_int(a)
    sb = MultiQuad.sqrt_int(b)
    sab = sa * sb
    conj = point.conjugate()
    f, g, h = eval_fgh(curve, point)
    f2, g2, h2 = eval_fgh(curve, conj)
    sym = sym_invariants(curve, point)

    linear = sb * f - sa * g == h
    inverse = c * sb * f.inverse() - d * sa * g.inverse() == h
    prod_lin = sym.hh == b * sym.ff + a * sym.gg - sab * (f2 * g + f * g2)
    prod_inv = sym.hh == (
        (c * c * b) * sym.ff.inverse()
        + (d * d * a) * sym.gg.inverse()
        - (c * d) * sab * ((f2 * g).inverse() + (f * g2).inverse())
    )
    unit_sum = sym.alpha + sym.beta + sym.gamma == MultiQuad.one()
    ff_sq = sym.ff * sym.ff == (
        (-c * c) * sym.gamma * (sym.alpha * sym.beta).inverse()
    )
    return IdentityReport(linear, inverse, prod_lin, prod_inv, unit_sum, ff_sq)


@dataclass(frozen=True)
class InfinityPoints:
    """The four projective points at infinity (1 : +-sqrt(a) : +-sqrt(b) : 0),
    as (X, Y, Z) MultiQuad triples in the fixed sign order ++, +-, -+, --."""

    points: tuple[tuple[MultiQuad, MultiQuad, MultiQuad], ...]

    def __post_init__(self):
        if len(self.points) != 4 or len(set(self.points)) != 4:
            raise PanicInvariant("expected four distinct points at infinity")


def points_at_infinity(curve: CurveParams) -> InfinityPoints:
    one = MultiQuad.one()
    sa = MultiQuad.sqrt_int(curve.a)
    sb = MultiQuad.sqrt_int(curve.b)
    return InfinityPoints(
        (
            (one, sa, sb),
            (one, sa, -sb),
            (one, -sa, sb),
            (one, -sa, -sb),
        )
    )


def compute_bounds(s: int, H: int) -> tuple[int, int]:
    """Exact values of the two finiteness bounds 2^(2835 s + 3) and
    3 * 2^(1121 (s + H - 1) + 1)."""
    if s < 1:
        raise DomainError("s must be at least 1")
    if H < 1:
        raise DomainError("H must be at least 1")
    n1 = 2 ** (2835 * s + 3)
    n2 = 3 * 2 ** (1121 * (s + H - 1) + 1)
    return n1, n2


def canonical_representative(point: QuadPoint) -> QuadPoint:
    """Deterministic representative of the orbit of `point` under coordinate
    sign flips and conjugation: the variant with lexicographically maximal
    (u, v) sequence, which puts nonnegative entries first."""
    best = None
    for sx in (1, -1):
        for sy in (1, -1):
            for sz in (1, -1):
                for tau in (1, -1):
                    cand = QuadPoint.make(
                        point.eps,
                        (sx * point.x[0], sx * tau * point.x[1]),
                        (sy * point.y[0], sy * tau * point.y[1]),
                        (sz * point.z[0], sz * tau * point.z[1]),
                    )
                    if best is None or cand.flat() > best.flat():
                        best = cand
    return best


def pair_key(point: QuadPoint):
    """Hashable key of the unordered conjugate pair {P, P'}."""
    k1 = point.flat()
    k2 = point.conjugate().flat()
    return (point.eps,) + tuple(sorted((k1, k2)))


def is_s_integral(point: QuadPoint, primes: Iterable[int]) -> bool:
    """True when every coordinate denominator is supported on `primes`."""
    allowed = set(primes)
    for u, v in (point.x, point.y, point.z):
        for q in (u, v):
            if q.denominator != 1 and not set(factorize(q.denominator)) <= allowed:
                return False
    return True
