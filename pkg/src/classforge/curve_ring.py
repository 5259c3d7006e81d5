"""The affine coordinate ring F_q[E] = F_q[x] + F_q[x] y and its closed points.

With h(x) = a1 x + a3 and g(x) = x^3 + a2 x^2 + a4 x + a6 the defining
relation is y^2 = g - h y, so every element reduces to a(x) + b(x) y.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .algebra.fields import GF, extension
from .algebra.poly import Poly
from .elliptic import O, CurvePoint, WeierstrassCurve, _ys_over


@dataclass(frozen=True)
class RingElement:
    """a(x) + b(x) y."""

    a: Poly
    b: Poly

    def is_zero(self):
        return self.a.is_zero() and self.b.is_zero()

    def __repr__(self):
        if self.b.is_zero():
            return self.a.to_str()
        bs = self.b.to_str()
        ys = "y" if self.b.is_one() else f"({bs})y"
        return ys if self.a.is_zero() else f"{self.a.to_str()}+{ys}"


@lru_cache(maxsize=None)
def curve_polys(E: WeierstrassCurve) -> tuple[Poly, Poly]:
    """(h, g) with y^2 + h y = g."""
    F = E.field
    h = Poly(F, (E.a3, E.a1))
    g = Poly(F, (E.a6, E.a4, E.a2, F.one))
    return h, g


def element(E, a=(), b=()) -> RingElement:
    F = E.field
    a = a if isinstance(a, Poly) else Poly.from_ints(F, a)
    b = b if isinstance(b, Poly) else Poly.from_ints(F, b)
    return RingElement(a, b)


def x_elem(E):
    return RingElement(Poly.x(E.field), Poly.zero(E.field))


def y_elem(E):
    return RingElement(Poly.zero(E.field), Poly.one(E.field))


def one(E):
    return RingElement(Poly.one(E.field), Poly.zero(E.field))


def ring_add(E, f, g):
    return RingElement(f.a + g.a, f.b + g.b)


def ring_sub(E, f, g):
    return RingElement(f.a - g.a, f.b - g.b)


def ring_mul(E, f: RingElement, g: RingElement) -> RingElement:
    h, gg = curve_polys(E)
    bd = f.b * g.b
    return RingElement(f.a * g.a + bd * gg, f.a * g.b + f.b * g.a - bd * h)


def sigma(E, f: RingElement) -> RingElement:
    """The involution y -> -y - a1 x - a3 (x fixed)."""
    h, _ = curve_polys(E)
    return RingElement(f.a - f.b * h, -f.b)


def norm(E, f: RingElement) -> Poly:
    """N(a + b y) = (a + b y)(a + b sigma(y)) = a^2 - a b h - b^2 g."""
    if f.is_zero():
        raise ValueError("norm of zero")
    h, g = curve_polys(E)
    return f.a * f.a - f.a * f.b * h - f.b * f.b * g


def pole_order(f: RingElement) -> int:
    """Pole order at O: max(2 deg a, 2 deg b + 3), which is also deg N(f)."""
    if f.is_zero():
        raise ValueError("pole order of zero")
    da = 2 * f.a.deg if f.a else -1
    db = 2 * f.b.deg + 3 if f.b else -1
    return max(da, db)


def evaluate(E, f: RingElement, ext, x, y):
    """f(x, y) for a point with coordinates in ext.field."""
    L = ext.field
    a = Poly(L, [ext.embed[c] for c in f.a.coeffs])
    b = Poly(L, [ext.embed[c] for c in f.b.coeffs])
    return L.add(a(x), L.mul(b(x), y))


# -- closed points ---------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class ClosedPoint:
    """A Frobenius orbit of affine points of E over F_{q^degree}.

    ``rep`` is the lexicographically least orbit member, with coordinates
    encoded in extension(F_q, degree).  ``minpoly`` is the minimal
    polynomial of the x-coordinate over F_q; ``ytail`` expresses y as a
    polynomial in x modulo ``minpoly`` when y lies in F_q(x), and is None
    when the x-fibre is inert (y generates a further quadratic extension).
    """

    curve: WeierstrassCurve
    degree: int
    rep: tuple[int, int]
    orbit: tuple[tuple[int, int], ...]
    minpoly: Poly
    ytail: Poly | None

    @property
    def key(self):
        return (self.degree, self.rep)

    def __eq__(self, other):
        return isinstance(other, ClosedPoint) and self.curve == other.curve and self.key == other.key

    def __hash__(self):
        return hash(self.key)

    def __lt__(self, other):
        return self.key < other.key

    @property
    def ext(self):
        return extension(self.curve.field, self.degree)

    @property
    def is_inert(self):
        return self.ytail is None

    def as_point(self) -> CurvePoint:
        """The F_q-rational point of a degree-1 closed point."""
        if self.degree != 1:
            raise ValueError("only degree-1 closed points are rational points")
        return CurvePoint(*self.rep)

    def to_str(self) -> str:
        if self.degree == 1:
            return f"({self.rep[0]},{self.rep[1]})"
        tail = "inert" if self.ytail is None else "y=" + self.ytail.to_str()
        return f"[{self.minpoly.to_str()}; {tail}]"

    def __repr__(self):
        return f"ClosedPoint{self.to_str()}"


def _orbit(ext, pt):
    out = [pt]
    x, y = pt
    while True:
        x, y = ext.frobenius(x), ext.frobenius(y)
        if (x, y) == pt:
            return out
        out.append((x, y))


def _restrict_poly(ext, coeffs) -> Poly:
    return Poly(ext.base, [ext.down(c) for c in coeffs])


def closed_point_from(E, ext, pt) -> ClosedPoint:
    """The closed point through a geometric point with coordinates in ext.field.

    The orbit of ``pt`` under q-Frobenius must have size ext.degree.
    """
    orbit = _orbit(ext, pt)
    d = ext.degree
    if len(orbit) != d:
        raise ValueError(f"point has orbit of size {len(orbit)}, not {d}")
    L = ext.field
    rep = min(orbit)
    xs = sorted({p[0] for p in orbit})
    # minimal polynomial of x over F_q
    mp = Poly.one(L)
    for a in xs:
        mp = mp * Poly(L, (L.neg(a), L.one))
    minpoly = _restrict_poly(ext, mp.coeffs)
    ytail = None
    if len(xs) == d:
        # Lagrange interpolation of y over the x-orbit; Frobenius-invariant
        X = Poly.x(L)
        acc = Poly.zero(L)
        for xi, yi in orbit:
            term = Poly.const(L, yi)
            for xj, _ in orbit:
                if xj != xi:
                    term = term * (X - Poly.const(L, xj)).scale(L.inv(L.sub(xi, xj)))
            acc = acc + term
        ytail = _restrict_poly(ext, acc.coeffs)
    return ClosedPoint(E, d, rep, tuple(sorted(orbit)), minpoly, ytail)


@lru_cache(maxsize=None)
def closed_points_of_degree(E: WeierstrassCurve, d: int) -> tuple[ClosedPoint, ...]:
    F = E.field
    if not isinstance(F, GF):
        raise TypeError("closed points need a curve over a finite field")
    ext = extension(F, d)
    L = ext.field
    EL = E.base_change(L, lambda c: ext.embed[c])
    seen = set()
    out = []
    for x in range(L.q):
        for y in _ys_over(EL, L, x):
            if (x, y) in seen:
                continue
            orbit = _orbit(ext, (x, y))
            seen.update(orbit)
            if len(orbit) == d:
                out.append(closed_point_from(E, ext, (x, y)))
    out.sort()
    return tuple(out)


def closed_points_up_to_degree(E: WeierstrassCurve, D: int, max_degree: int = 4) -> list[ClosedPoint]:
    """All affine closed points of degree <= D, sorted by (degree, representative)."""
    if D > max_degree:
        raise ValueError(f"degree bound {D} exceeds configured maximum {max_degree}")
    out = []
    for d in range(1, D + 1):
        out.extend(closed_points_of_degree(E, d))
    return out


def degree_one_point(E, P: CurvePoint) -> ClosedPoint:
    if P.is_infinity:
        raise ValueError("O is not a prime of the affine ring")
    return closed_point_from(E, extension(E.field, 1), (P.x, P.y))


def class_of(E: WeierstrassCurve, P: ClosedPoint) -> CurvePoint:
    """Orbit sum of P under the group law, an F_q-rational point."""
    ext = P.ext
    if P.degree == 1:
        return CurvePoint(*P.rep)
    L = ext.field
    EL = E.base_change(L, lambda c: ext.embed[c])
    acc = O
    for x, y in P.orbit:
        acc = EL.add(acc, CurvePoint(x, y))
    if acc.is_infinity:
        return acc
    return CurvePoint(ext.down(acc.x), ext.down(acc.y))


def sigma_point(E, P: ClosedPoint) -> ClosedPoint:
    """Image of a closed point under y -> -y - a1 x - a3."""
    ext = P.ext
    L = ext.field
    EL = E.base_change(L, lambda c: ext.embed[c])
    x, y = P.rep
    Q = EL.neg(CurvePoint(x, y))
    return closed_point_from(E, ext, (Q.x, Q.y))


def parse_closed_point(E, text: str) -> ClosedPoint:
    """Parse ``(x0,y0)`` or ``[minpoly; y=poly]`` / ``[minpoly; inert]``."""
    from .elliptic import _parse_x_poly

    F = E.field
    t = text.strip()
    if t.startswith("(") and t.endswith(")"):
        xs, ys = t[1:-1].split(",")
        x, y = F.from_code(int(xs)), F.from_code(int(ys))
        if not E.contains(CurvePoint(x, y)):
            raise ValueError(f"{t} is not on the curve")
        return degree_one_point(E, CurvePoint(x, y))
    if not (t.startswith("[") and t.endswith("]")):
        raise ValueError(f"bad closed point syntax {text!r}")
    body = t[1:-1]
    mp_s, _, tail_s = body.partition(";")
    coeffs = _parse_x_poly(mp_s)
    minpoly = Poly(F, [F.from_code(coeffs.get(i, 0)) for i in range(max(coeffs) + 1)])
    if not minpoly.is_monic():
        raise ValueError("minimal polynomial must be monic")
    tail_s = tail_s.strip()
    if tail_s == "inert":
        d = 2 * minpoly.deg
        target_tail = None
    else:
        if not tail_s.startswith("y="):
            raise ValueError(f"bad y-expression {tail_s!r}")
        tc = _parse_x_poly(tail_s[2:])
        target_tail = Poly(F, [F.from_code(tc.get(i, 0)) for i in range(max(tc) + 1)]) % minpoly
        d = minpoly.deg
    for P in closed_points_of_degree(E, d):
        if P.minpoly == minpoly and P.ytail == target_tail:
            return P
    raise ValueError(f"no closed point {text!r} on the curve")
