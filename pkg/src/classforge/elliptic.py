"""Long Weierstrass curves, the chord-tangent group law, and E(F_q).

    y^2 + a1 x y + a3 y = x^3 + a2 x^2 + a4 x + a6

Coefficients and coordinates live in any field object following the
protocol of :mod:`classforge.algebra.fields` (F_q, Q, or a function field).
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache

from .algebra.fields import GF, QQ, finite_field
from .algebra.groups import FgAbelianGroup


class SingularCurveError(ValueError):
    pass


@dataclass(frozen=True)
class CurvePoint:
    """The point at infinity O when ``x is None``; otherwise affine (x, y)."""

    x: object = None
    y: object = None

    @property
    def is_infinity(self) -> bool:
        return self.x is None

    def __repr__(self):
        return "O" if self.x is None else f"({self.x}, {self.y})"


O = CurvePoint()


@dataclass(frozen=True, eq=False)
class WeierstrassCurve:
    field: object
    a1: object
    a2: object
    a3: object
    a4: object
    a6: object

    def __post_init__(self):
        if self.field.is_zero(self.discriminant):
            raise SingularCurveError(f"singular curve {self}")

    @classmethod
    def from_ints(cls, field, a1=0, a2=0, a3=0, a4=0, a6=0):
        f = field.from_int
        return cls(field, f(a1), f(a2), f(a3), f(a4), f(a6))

    @classmethod
    def short(cls, field, A, B):
        return cls.from_ints(field, 0, 0, 0, A, B)

    # equality by field and coefficients so curves can key caches
    def _key(self):
        return (id(self.field), self.a1, self.a2, self.a3, self.a4, self.a6)

    def __eq__(self, other):
        return isinstance(other, WeierstrassCurve) and self.field is other.field and self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    # -- invariants -------------------------------------------------------------

    @cached_property
    def b_invariants(self):
        F = self.field
        a1, a2, a3, a4, a6 = self.a1, self.a2, self.a3, self.a4, self.a6
        m, ad, c = F.mul, F.add, F.from_int
        b2 = ad(m(a1, a1), m(c(4), a2))
        b4 = ad(m(c(2), a4), m(a1, a3))
        b6 = ad(m(a3, a3), m(c(4), a6))
        b8 = F.sub(
            ad(ad(m(m(a1, a1), a6), m(m(c(4), a2), a6)), F.neg(m(m(a1, a3), a4))),
            F.sub(m(a4, a4), m(m(a2, a3), a3)),
        )
        return b2, b4, b6, b8

    @cached_property
    def c4(self):
        F = self.field
        b2, b4, _, _ = self.b_invariants
        return F.sub(F.mul(b2, b2), F.mul(F.from_int(24), b4))

    @cached_property
    def discriminant(self):
        F = self.field
        b2, b4, b6, b8 = self.b_invariants
        m, c = F.mul, F.from_int
        t1 = m(m(m(b2, b2), b8), c(-1))
        t2 = m(c(-8), m(m(b4, b4), b4))
        t3 = m(c(-27), m(b6, b6))
        t4 = m(c(9), m(m(b2, b4), b6))
        return F.add(F.add(t1, t2), F.add(t3, t4))

    def j_invariant(self):
        F = self.field
        c4 = self.c4
        return F.div(F.mul(F.mul(c4, c4), c4), self.discriminant)

    def __repr__(self):
        return f"E[{self.a1},{self.a2},{self.a3},{self.a4},{self.a6}]/{self.field}"

    # -- points and the group law ---------------------------------------------

    def lhs_minus_rhs(self, x, y):
        F = self.field
        m, ad = F.mul, F.add
        lhs = ad(ad(m(y, y), m(m(self.a1, x), y)), m(self.a3, y))
        rhs = ad(ad(m(m(x, x), x), m(self.a2, m(x, x))), ad(m(self.a4, x), self.a6))
        return F.sub(lhs, rhs)

    def contains(self, P: CurvePoint) -> bool:
        return P.is_infinity or self.field.is_zero(self.lhs_minus_rhs(P.x, P.y))

    def point(self, x, y) -> CurvePoint:
        P = CurvePoint(x, y)
        if not self.contains(P):
            raise ValueError(f"{P} is not on {self}")
        return P

    def neg(self, P: CurvePoint) -> CurvePoint:
        if P.is_infinity:
            return P
        F = self.field
        return CurvePoint(P.x, F.sub(F.neg(P.y), F.add(F.mul(self.a1, P.x), self.a3)))

    def add(self, P: CurvePoint, Q: CurvePoint) -> CurvePoint:
        if P.is_infinity:
            return Q
        if Q.is_infinity:
            return P
        F = self.field
        m, ad, sb = F.mul, F.add, F.sub
        x1, y1, x2, y2 = P.x, P.y, Q.x, Q.y
        if x1 == x2:
            # same x: either inverses or a doubling
            y1_plus = ad(ad(y1, y2), ad(m(self.a1, x2), self.a3))
            if F.is_zero(y1_plus):
                return O
            num = sb(ad(ad(m(F.from_int(3), m(x1, x1)), m(m(F.from_int(2), self.a2), x1)), self.a4), m(self.a1, y1))
            den = ad(ad(m(F.from_int(2), y1), m(self.a1, x1)), self.a3)
        else:
            num = sb(y2, y1)
            den = sb(x2, x1)
        lam = F.div(num, den)
        nu = sb(y1, m(lam, x1))
        x3 = sb(sb(sb(ad(m(lam, lam), m(self.a1, lam)), self.a2), x1), x2)
        y3 = sb(sb(F.neg(m(ad(lam, self.a1), x3)), nu), self.a3)
        return CurvePoint(x3, y3)

    def sub(self, P, Q):
        return self.add(P, self.neg(Q))

    def mul(self, n: int, P: CurvePoint) -> CurvePoint:
        """[n]P by double-and-add."""
        if n < 0:
            return self.mul(-n, self.neg(P))
        R = O
        while n:
            if n & 1:
                R = self.add(R, P)
            P = self.add(P, P)
            n >>= 1
        return R

    def base_change(self, field, embed):
        return WeierstrassCurve(field, *(embed(a) for a in (self.a1, self.a2, self.a3, self.a4, self.a6)))


# -- curves over F_q -------------------------------------------------------------


def _require_finite(E):
    if not isinstance(E.field, GF):
        raise TypeError("operation needs a curve over a finite field")
    return E.field


def _ys_over(E, F, x, roots2=None):
    """All y in F with (x, y) on E."""
    m, ad = F.mul, F.add
    b = ad(m(E.a1, x), E.a3)
    c = ad(ad(m(m(x, x), x), m(E.a2, m(x, x))), ad(m(E.a4, x), E.a6))
    if F.p != 2:
        # y = (-b +- sqrt(b^2 + 4c)) / 2
        disc = ad(m(b, b), m(F.from_int(4), c))
        roots = F.sqrt_table().get(disc, [])
        inv2 = F.inv(F.from_int(2))
        return sorted({m(F.sub(r, b), inv2) for r in roots})
    if b == 0:
        return F.sqrt_table().get(c, [])
    # char 2: y = b z with z^2 + z = c / b^2
    table = roots2 if roots2 is not None else _artin_schreier_table(F)
    w = F.div(c, m(b, b))
    return sorted(m(b, z) for z in table.get(w, []))


@lru_cache(maxsize=None)
def _artin_schreier_table(F):
    t: dict[int, list[int]] = {}
    for z in range(F.q):
        t.setdefault(F.add(F.mul(z, z), z), []).append(z)
    return t


@lru_cache(maxsize=None)
def enumerate_points(E: WeierstrassCurve) -> tuple[CurvePoint, ...]:
    """All of E(F_q): O first, then affine points in lexicographic order."""
    F = _require_finite(E)
    pts = [O]
    for x in range(F.q):
        for y in _ys_over(E, F, x):
            pts.append(CurvePoint(x, y))
    return tuple(pts)


def point_count(E) -> int:
    return len(enumerate_points(E))


def frobenius_trace(E) -> int:
    F = _require_finite(E)
    return F.q + 1 - point_count(E)


def hasse_interval(q: int) -> tuple[float, float]:
    r = 2 * math.sqrt(q)
    return q + 1 - r, q + 1 + r


def point_order(E, P, bound=None) -> int:
    n, R = 1, P
    while not R.is_infinity:
        R = E.add(R, P)
        n += 1
        if bound is not None and n > bound:
            raise ValueError("order exceeds bound")
    return n


@dataclass(frozen=True)
class MordellWeilGroup:
    """E(F_q) with generators and a discrete-log table.

    ``group`` is Z/n + Z/m (n | m, unit factors dropped); ``generators`` are
    listed in the same order as the group's invariant factors, and
    ``coords[P]`` gives P's coordinates in them.
    """

    curve: WeierstrassCurve
    group: FgAbelianGroup
    generators: tuple[CurvePoint, ...]
    coords: dict

    def point_of(self, coords) -> CurvePoint:
        E = self.curve
        R = O
        for c, g in zip(coords, self.generators):
            R = E.add(R, E.mul(c, g))
        return R


@lru_cache(maxsize=None)
def group_structure(E: WeierstrassCurve) -> MordellWeilGroup:
    """Brute-force structure of E(F_q) from element orders.

    The exponent m is the largest element order, n = #E / m; the first point
    of order m generates the big factor and the first point Q of order n
    with <Q> meeting <P> trivially generates the small one.
    """
    pts = enumerate_points(E)
    N = len(pts)
    orders = {P: point_order(E, P) for P in pts}
    m = max(orders.values())
    n = N // m
    P1 = next(P for P in pts if orders[P] == m)
    multiples_P1 = []
    R = O
    for _ in range(m):
        multiples_P1.append(R)
        R = E.add(R, P1)
    span1 = set(multiples_P1)
    if n == 1:
        gens = (P1,)
        group = FgAbelianGroup(0, (m,) if m > 1 else ())
        coords = {multiples_P1[i]: ((i,) if m > 1 else ()) for i in range(m)}
        if m == 1:
            gens = ()
        return MordellWeilGroup(E, group, gens, coords)
    for Q in pts:
        if orders[Q] != n:
            continue
        # <Q> meets <P1> only in O
        R, ok = Q, True
        for _ in range(1, n):
            if R in span1:
                ok = False
                break
            R = E.add(R, Q)
        if ok:
            break
    else:  # pragma: no cover - contradicts the structure theorem
        raise AssertionError("no complementary generator found")
    coords = {}
    Rq = O
    for j in range(n):
        for i in range(m):
            coords[E.add(Rq, multiples_P1[i])] = (j, i)
        Rq = E.add(Rq, Q)
    if len(coords) != N:  # pragma: no cover
        raise AssertionError("generators do not span E(F_q)")
    return MordellWeilGroup(E, FgAbelianGroup(0, (n, m)), (Q, P1), coords)


# -- text syntax shared with the CLI -------------------------------------------------

_LONG = re.compile(r"^\s*(a[12346]\s*=\s*-?\d+\s*)(,\s*a[12346]\s*=\s*-?\d+\s*)*$")


class CurveSyntaxError(ValueError):
    pass


def _parse_x_poly(s: str) -> dict[int, int]:
    """Parse an integer polynomial in x like ``x^3+1x-2`` into {degree: coeff}."""
    s = s.replace(" ", "").replace("*", "")
    if not s:
        raise CurveSyntaxError("empty polynomial")
    terms = re.findall(r"[+-]?[^+-]+", s)
    if "".join(terms) != s:
        raise CurveSyntaxError(f"cannot parse {s!r}")
    out: dict[int, int] = {}
    for t in terms:
        m = re.fullmatch(r"([+-]?)(\d*)(x(?:\^(\d+))?)?", t)
        if not m or (not m.group(2) and not m.group(3)):
            raise CurveSyntaxError(f"bad term {t!r}")
        sign = -1 if m.group(1) == "-" else 1
        coef = int(m.group(2)) if m.group(2) else 1
        deg = (int(m.group(4)) if m.group(4) else 1) if m.group(3) else 0
        out[deg] = out.get(deg, 0) + sign * coef
    return out


def parse_curve(text: str, field) -> WeierstrassCurve:
    """Parse ``a1=..,a2=..,a3=..,a4=..,a6=..`` or ``y^2=x^3+Ax+B``."""
    t = text.strip()
    if _LONG.match(t):
        vals = {k: 0 for k in ("a1", "a2", "a3", "a4", "a6")}
        for part in t.split(","):
            k, v = part.split("=")
            vals[k.strip()] = field.from_code(int(v))
        return WeierstrassCurve(field, **vals)
    m = re.fullmatch(r"\s*y\s*\^\s*2\s*=\s*(.+)", t)
    if not m:
        raise CurveSyntaxError(f"unrecognized curve {text!r}")
    poly = _parse_x_poly(m.group(1))
    if poly.get(3) != 1 or any(d > 3 or d < 0 for d in poly):
        raise CurveSyntaxError("right-hand side must be monic cubic in x")
    c = [field.from_code(poly.get(i, 0)) for i in range(3)]
    return WeierstrassCurve(field, field.zero, c[2], field.zero, c[1], c[0])


def curve_to_str(E) -> str:
    return ",".join(f"{k}={getattr(E, k)}" for k in ("a1", "a2", "a3", "a4", "a6"))


# -- the rank-zero curve over Q used as the tower base ---------------------------

def e0_curve() -> WeierstrassCurve:
    """y^2 + y = x^3 - 49x - 86 over Q."""
    return WeierstrassCurve(QQ, Fraction(0), Fraction(0), Fraction(1), Fraction(-49), Fraction(-86))


__all__ = [
    "CurvePoint",
    "O",
    "WeierstrassCurve",
    "SingularCurveError",
    "MordellWeilGroup",
    "enumerate_points",
    "point_count",
    "frobenius_trace",
    "group_structure",
    "hasse_interval",
    "parse_curve",
    "curve_to_str",
    "e0_curve",
    "finite_field",
]
