"""Points of E over its own function field, and the symbolic tower E(K_n).

K(E) = k(x)[y]/(y^2 + h y - g) is given the field protocol used by
WeierstrassCurve, so the chord-tangent law runs over it unchanged.  Every
element is stored as (a + b y)/c with c monic and gcd(a, b, c) = 1, which
is a unique representative.

A point of E(K(E)) is a rational map E -> E.  Without extra endomorphisms
every such map is a translate of some [m], so a point P decomposes as
P = c + [m] G with G = (x, y) the generic point and c a constant point.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .algebra.fields import QQ
from .algebra.groups import FgAbelianGroup
from .algebra.poly import Poly, gcd
from .curve_ring import RingElement, curve_polys, norm, ring_mul
from .curve_ring import sigma as ring_sigma
from .elliptic import O, CurvePoint, WeierstrassCurve, e0_curve

# A point of E(K(E)) is a CurvePoint whose coordinates are FFElements.
FunctionFieldPoint = CurvePoint


class DecompositionError(ValueError):
    pass


class TowerBaseError(ValueError):
    pass


def _content_gcd(*polys: Poly) -> Poly:
    g = Poly.zero(polys[0].field)
    for p in polys:
        if p:
            g = gcd(g, p) if g else p.monic()
    return g


@dataclass(frozen=True)
class FFElement:
    """(a + b y) / c in lowest terms, c monic."""

    a: Poly
    b: Poly
    c: Poly

    @property
    def numerator(self) -> RingElement:
        return RingElement(self.a, self.b)

    def is_constant(self) -> bool:
        return not self.b and self.c.deg == 0 and self.a.deg <= 0

    def constant_value(self):
        if not self.is_constant():
            raise ValueError(f"{self} is not constant")
        return self.a[0]

    def __repr__(self):
        num = repr(self.numerator) if (self.a or self.b) else "0"
        if self.c.deg == 0:
            return num
        return f"({num})/({self.c.to_str()})"


class FunctionField:
    """K(E) for a curve over Q or over F_q with q odd."""

    def __init__(self, E: WeierstrassCurve):
        if E.field is not QQ and E.field.char == 2:
            raise ValueError("function-field arithmetic needs odd characteristic or Q")
        self.curve = E
        self.base = E.field
        self.char = E.field.char
        F = E.field
        self._zero = Poly.zero(F)
        self._one = Poly.one(F)
        self.zero = FFElement(self._zero, self._zero, self._one)
        self.one = FFElement(self._one, self._zero, self._one)

    def __repr__(self):
        return f"K({self.curve})"

    def make(self, a: Poly, b: Poly, c: Poly) -> FFElement:
        if not c:
            raise ZeroDivisionError("zero denominator in K(E)")
        if not a and not b:
            return self.zero
        g = _content_gcd(a, b, c)
        if g.deg > 0:
            a, b, c = a // g, b // g, c // g
        s = self.base.inv(c.lc)
        return FFElement(a.scale(s), b.scale(s), c.scale(s))

    def embed(self, v) -> FFElement:
        return self.make(Poly.const(self.base, v), self._zero, self._one)

    def from_int(self, n: int) -> FFElement:
        return self.embed(self.base.from_int(n))

    @property
    def x(self) -> FFElement:
        return FFElement(Poly.x(self.base), self._zero, self._one)

    @property
    def y(self) -> FFElement:
        return FFElement(self._zero, self._one, self._one)

    def is_zero(self, u: FFElement) -> bool:
        return not u.a and not u.b

    def add(self, u, v):
        return self.make(u.a * v.c + v.a * u.c, u.b * v.c + v.b * u.c, u.c * v.c)

    def neg(self, u):
        return FFElement(-u.a, -u.b, u.c)

    def sub(self, u, v):
        return self.add(u, self.neg(v))

    def mul(self, u, v):
        f = ring_mul(self.curve, u.numerator, v.numerator)
        return self.make(f.a, f.b, u.c * v.c)

    def inv(self, u):
        # 1/((a + b y)/c) = c sigma(a + b y) / N(a + b y)
        if self.is_zero(u):
            raise ZeroDivisionError("inverse of zero in K(E)")
        s = ring_sigma(self.curve, u.numerator)
        n = norm(self.curve, u.numerator)
        return self.make(u.c * s.a, u.c * s.b, n)

    def div(self, u, v):
        return self.mul(u, self.inv(v))

    def pow(self, u, n: int):
        if n < 0:
            return self.pow(self.inv(u), -n)
        r = self.one
        while n:
            if n & 1:
                r = self.mul(r, u)
            u = self.mul(u, u)
            n >>= 1
        return r

    def degree(self, u: FFElement) -> int:
        """Degree of u as a rational map E -> P^1 (0 for constants)."""
        if u.is_constant():
            return 0
        if not u.b:
            return 2 * max(u.a.deg, u.c.deg)
        # u is a root of c^2 t^2 - c T t + N over k[x]; its x-degree, after
        # removing content, is [K(E) : k(u)]
        h, _ = curve_polys(self.curve)
        T = u.a + u.a - u.b * h
        coeffs = [norm(self.curve, u.numerator), -(u.c * T), u.c * u.c]
        g = _content_gcd(*coeffs)
        return max((p // g).deg for p in coeffs if p)


@lru_cache(maxsize=None)
def function_field(E: WeierstrassCurve) -> FunctionField:
    return FunctionField(E)


@lru_cache(maxsize=None)
def generic_curve(E: WeierstrassCurve) -> WeierstrassCurve:
    """E viewed over K(E)."""
    K = function_field(E)
    return E.base_change(K, K.embed)


def generic_point(E) -> FunctionFieldPoint:
    K = function_field(E)
    return CurvePoint(K.x, K.y)


def constant_point(E, P: CurvePoint) -> FunctionFieldPoint:
    if P.is_infinity:
        return O
    K = function_field(E)
    return CurvePoint(K.embed(P.x), K.embed(P.y))


def ff_add(E, P: FunctionFieldPoint, Q: FunctionFieldPoint) -> FunctionFieldPoint:
    return generic_curve(E).add(P, Q)


def ff_neg(E, P):
    return generic_curve(E).neg(P)


def ff_mul(E, m: int, P):
    return generic_curve(E).mul(m, P)


def on_curve(E, P) -> bool:
    return generic_curve(E).contains(P)


def is_constant_point(P) -> bool:
    return P.is_infinity or (P.x.is_constant() and P.y.is_constant())


def _lower(P) -> CurvePoint:
    if P.is_infinity:
        return O
    return CurvePoint(P.x.constant_value(), P.y.constant_value())


# -- division polynomials: an independent route to x([m] G) ---------------------


def _division_tails(E, n: int) -> list[Poly]:
    """g_0..g_n with psi_m = g_m for m odd and psi_m = psi_2 g_m for m even."""
    F = E.field
    b2, b4, b6, b8 = E.b_invariants
    c = F.from_int
    m = F.mul
    P = lambda *cs: Poly(F, cs)  # noqa: E731
    f2 = P(b6, m(c(2), b4), b2, c(4))
    f22 = f2 * f2
    g = [Poly.zero(F), Poly.one(F), Poly.one(F)]
    g.append(P(b8, m(c(3), b6), m(c(3), b4), b2, c(3)))
    g.append(
        P(
            F.sub(m(b4, b8), m(b6, b6)),
            F.sub(m(b2, b8), m(b4, b6)),
            m(c(10), b8),
            m(c(10), b6),
            m(c(5), b4),
            b2,
            c(2),
        )
    )
    for k in range(5, n + 1):
        h = k // 2
        if k % 2:
            if h % 2 == 0:
                g.append(f22 * g[h + 2] * g[h] ** 3 - g[h - 1] * g[h + 1] ** 3)
            else:
                g.append(g[h + 2] * g[h] ** 3 - f22 * g[h - 1] * g[h + 1] ** 3)
        else:
            g.append((g[h + 2] * g[h - 1] ** 2 - g[h - 2] * g[h + 1] ** 2) * g[h])
    return g[: n + 1]


def multiplication_x(E, m: int) -> tuple[Poly, Poly]:
    """x([m] G) = num/den in lowest terms (den monic), from division polynomials."""
    if m == 0:
        raise ValueError("[0] G is the origin")
    m = abs(m)
    F = E.field
    X = Poly.x(F)
    if m == 1:
        return X, Poly.one(F)
    b2, b4, b6, _ = E.b_invariants
    f2 = Poly(F, (b6, F.mul(F.from_int(2), b4), b2, F.from_int(4)))
    g = _division_tails(E, m + 1)
    if m % 2 == 0:
        den = f2 * g[m] * g[m]
        cross = g[m - 1] * g[m + 1]
    else:
        den = g[m] * g[m]
        cross = f2 * g[m - 1] * g[m + 1]
    num = X * den - cross
    d = gcd(num, den)
    num, den = num // d, den // d
    s = F.inv(den.lc)
    return num.scale(s), den.scale(s)


def multiplication_degrees(E, m: int) -> tuple[int, int]:
    num, den = multiplication_x(E, m)
    return num.deg, den.deg


# -- decomposition P = c + [m] G -------------------------------------------------


def decompose(E, P: FunctionFieldPoint, bound: int) -> tuple[CurvePoint, int]:
    """Write P = c + [m] G with c constant and |m| <= bound.

    |m| is read off the degree of x(P), which is 2 m^2 for a translate of
    [m]; the sign is fixed by testing which of P - [+-m] G is constant.
    """
    if not on_curve(E, P):
        raise ValueError("point is not on the curve over K(E)")
    if is_constant_point(P):
        return _lower(P), 0
    K = function_field(E)
    d = K.degree(P.x)
    m = math.isqrt(d // 2)
    if d % 2 or m * m * 2 != d:
        raise DecompositionError(
            f"x-coordinate has degree {d}, not of the form 2m^2: possible complex multiplication"
        )
    if m > bound:
        raise DecompositionError(f"|m| = {m} exceeds the bound {bound}")
    G = generic_point(E)
    found = []
    for s in (m, -m):
        R = ff_add(E, P, ff_neg(E, ff_mul(E, s, G)))
        if is_constant_point(R):
            found.append((_lower(R), s))
    if not found:
        raise DecompositionError(
            f"no constant translate of [+-{m}] G matches: possible complex multiplication"
        )
    if len(found) > 1:
        # would force [2m] G to be constant
        raise DecompositionError("decomposition is not unique")
    return found[0]


def compose(E, c: CurvePoint, m: int) -> FunctionFieldPoint:
    """c + [m] G."""
    return ff_add(E, constant_point(E, c), ff_mul(E, m, generic_point(E)))


def generic_point_has_infinite_order(E, bound: int) -> bool:
    """[m] G differs from O for 1 <= m <= bound."""
    G = generic_point(E)
    R = O
    for _ in range(bound):
        R = ff_add(E, R, G)
        if R.is_infinity:
            return False
    return True


# -- the tower K_0 = Q, K_{i+1} = K_i(E_0) ----------------------------------------


def e0_descriptor() -> dict:
    E = e0_curve()
    return {
        "field": "Q",
        "equation": "y^2+y=x^3-49x-86",
        "coefficients": [str(c) for c in (E.a1, E.a2, E.a3, E.a4, E.a6)],
        "j_invariant": str(E.j_invariant()),
    }


def _require_e0(base):
    E0 = e0_curve()
    if isinstance(base, dict):
        ok = base.get("field") == "Q" and [Fraction(c) for c in base.get("coefficients", [])] == [
            E0.a1, E0.a2, E0.a3, E0.a4, E0.a6
        ]
    else:
        ok = base == E0
    if not ok:
        raise TowerBaseError("towers are only available over y^2+y=x^3-49x-86 over Q, whose rank-0 fact is known")


@dataclass(frozen=True)
class TowerGroupElement:
    """c + sum m_i Q_i in E(K_n); over the E_0 base c is always O."""

    coeffs: tuple[int, ...]
    constant: CurvePoint = O

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(int(c) for c in self.coeffs))
        if not self.constant.is_infinity:
            raise ValueError("E_0(Q) is trivial, so the constant part must be O")

    @property
    def height(self) -> int:
        return len(self.coeffs)

    def __add__(self, other):
        if self.height != other.height:
            raise ValueError("elements of different tower levels")
        return TowerGroupElement(tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self):
        return TowerGroupElement(tuple(-a for a in self.coeffs))

    def embed(self, n: int | None = None) -> "TowerGroupElement":
        """Image under E(K_h) -> E(K_n), n >= h (default h + 1)."""
        n = self.height + 1 if n is None else n
        if n < self.height:
            raise ValueError("cannot embed into a lower level")
        return TowerGroupElement(self.coeffs + (0,) * (n - self.height))

    def to_point(self) -> FunctionFieldPoint:
        """Concrete coordinates; only levels 0 and 1 are computed explicitly."""
        if self.height > 1:
            raise ValueError("explicit arithmetic in K_n for n >= 2 is not supported")
        if self.height == 0:
            return O
        return ff_mul(e0_curve(), self.coeffs[0], generic_point(e0_curve()))

    def __str__(self):
        terms = [f"{c}*Q{i + 1}" for i, c in enumerate(self.coeffs) if c]
        return " + ".join(terms) if terms else "O"


@dataclass
class TowerPresentation:
    height: int
    group: FgAbelianGroup
    generator_names: list[str]
    generators: list[TowerGroupElement]
    concrete_generators: list[FunctionFieldPoint]

    def to_json(self):
        return {
            "height": self.height,
            "group": self.group.to_json(),
            "generators": self.generator_names,
            "concrete": [f"({P.x}, {P.y})" for P in self.concrete_generators],
        }


def tower_group(base, n: int) -> TowerPresentation:
    """E_0(K_n) = Z^n with Q_i the generic point adjoined at stage i."""
    _require_e0(base)
    if n < 0:
        raise ValueError("tower height must be non-negative")
    gens = [TowerGroupElement(tuple(int(i == j) for j in range(n))) for i in range(n)]
    concrete = [generic_point(e0_curve())] if n == 1 else []
    return TowerPresentation(n, FgAbelianGroup(n, ()), [f"Q{i + 1}" for i in range(n)], gens, concrete)


__all__ = [
    "FFElement",
    "FunctionField",
    "FunctionFieldPoint",
    "DecompositionError",
    "TowerBaseError",
    "function_field",
    "generic_point",
    "constant_point",
    "ff_add",
    "ff_neg",
    "ff_mul",
    "on_curve",
    "multiplication_x",
    "multiplication_degrees",
    "decompose",
    "compose",
    "generic_point_has_infinite_order",
    "e0_descriptor",
    "TowerGroupElement",
    "TowerPresentation",
    "tower_group",
]
