"""Univariate polynomials and rational functions over a field object.

``Poly`` is generic over the field protocol of :mod:`fields`; over a
finite field it plays the role of F_q[x].  Coefficients are stored low
degree first with no trailing zeros, so the zero polynomial has an empty
coefficient tuple.
"""

from __future__ import annotations

import functools
import itertools
import random

from .fields import GF


class Poly:
    __slots__ = ("field", "coeffs")

    def __init__(self, field, coeffs=()):
        self.field = field
        c = list(coeffs)
        while c and field.is_zero(c[-1]):
            c.pop()
        self.coeffs = tuple(c)

    # -- constructors ---------------------------------------------------------

    @classmethod
    def zero(cls, field):
        return cls(field, ())

    @classmethod
    def one(cls, field):
        return cls(field, (field.one,))

    @classmethod
    def x(cls, field):
        return cls(field, (field.zero, field.one))

    @classmethod
    def const(cls, field, c):
        return cls(field, (c,))

    @classmethod
    def from_ints(cls, field, ints):
        return cls(field, [field.from_int(n) for n in ints])

    @classmethod
    def monomial(cls, field, n, c=None):
        c = field.one if c is None else c
        return cls(field, [field.zero] * n + [c])

    # -- basic properties ---------------------------------------------------

    @property
    def deg(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    @property
    def lc(self):
        return self.coeffs[-1] if self.coeffs else self.field.zero

    def is_zero(self):
        return not self.coeffs

    def is_one(self):
        return len(self.coeffs) == 1 and self.coeffs[0] == self.field.one

    def is_monic(self):
        return bool(self.coeffs) and self.coeffs[-1] == self.field.one

    def __getitem__(self, i):
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return self.field.zero

    def __eq__(self, other):
        if not isinstance(other, Poly):
            return NotImplemented
        return self.coeffs == other.coeffs and self.field is other.field

    def __hash__(self):
        return hash(self.coeffs)

    def __bool__(self):
        return bool(self.coeffs)

    def sortkey(self):
        # degree first, then coefficients from the top
        return (self.deg, tuple(reversed(self.coeffs)))

    def __lt__(self, other):
        return self.sortkey() < other.sortkey()

    # -- arithmetic ---------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, Poly):
            return other
        if isinstance(other, int):
            return Poly(self.field, (self.field.from_int(other),))
        return Poly(self.field, (other,))

    def __add__(self, other):
        other = self._coerce(other)
        F = self.field
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = F.add(out[i], c)
        return Poly(F, out)

    __radd__ = __add__

    def __neg__(self):
        F = self.field
        return Poly(F, [F.neg(c) for c in self.coeffs])

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        F = self.field
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return Poly(F, ())
        out = [F.zero] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            if F.is_zero(ai):
                continue
            for j, bj in enumerate(b):
                out[i + j] = F.add(out[i + j], F.mul(ai, bj))
        return Poly(F, out)

    __rmul__ = __mul__

    def scale(self, c):
        F = self.field
        return Poly(F, [F.mul(c, a) for a in self.coeffs])

    def __pow__(self, n: int):
        result = Poly.one(self.field)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __divmod__(self, other):
        other = self._coerce(other)
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        F = self.field
        rem = list(self.coeffs)
        db = other.deg
        if len(rem) <= db:
            return Poly(F, ()), self
        inv_lc = F.inv(other.lc)
        quo = [F.zero] * (len(rem) - db)
        bc = other.coeffs
        for i in range(len(rem) - 1, db - 1, -1):
            c = rem[i]
            if F.is_zero(c):
                continue
            t = F.mul(c, inv_lc)
            quo[i - db] = t
            for j in range(db + 1):
                rem[i - db + j] = F.sub(rem[i - db + j], F.mul(t, bc[j]))
        return Poly(F, quo), Poly(F, rem[:db])

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def exact_div(self, other):
        q, r = divmod(self, other)
        if r:
            raise ArithmeticError("inexact polynomial division")
        return q

    def divides(self, other) -> bool:
        return not (other % self)

    def monic(self):
        if self.is_zero():
            return self
        return self.scale(self.field.inv(self.lc))

    def __call__(self, x):
        F = self.field
        acc = F.zero
        for c in reversed(self.coeffs):
            acc = F.add(F.mul(acc, x), c)
        return acc

    def derivative(self):
        F = self.field
        return Poly(F, [F.mul(F.from_int(i), c) for i, c in enumerate(self.coeffs)][1:])

    def map_coeffs(self, field, fn):
        return Poly(field, [fn(c) for c in self.coeffs])

    def compose(self, other):
        acc = Poly(self.field, ())
        for c in reversed(self.coeffs):
            acc = acc * other + Poly(self.field, (c,))
        return acc

    def pow_mod(self, n: int, mod):
        result = Poly.one(self.field) % mod
        base = self % mod
        while n:
            if n & 1:
                result = (result * base) % mod
            base = (base * base) % mod
            n >>= 1
        return result

    def to_str(self, var="x", fmt=str):
        if not self.coeffs:
            return "0"
        F = self.field
        terms = []
        for i in range(self.deg, -1, -1):
            c = self.coeffs[i]
            if F.is_zero(c):
                continue
            cs = fmt(c)
            if i == 0:
                terms.append(cs)
            elif c == F.one:
                terms.append(var if i == 1 else f"{var}^{i}")
            else:
                terms.append(f"{cs}{var}" if i == 1 else f"{cs}{var}^{i}")
        return "+".join(terms).replace("+-", "-")

    def __repr__(self):
        return f"Poly({self.to_str()})"


def _qq_gcd(a: Poly, b: Poly) -> Poly:
    # Euclid over Q explodes coefficients; sympy's gcd works over Z instead
    from fractions import Fraction

    import sympy

    def to_sym(f):
        return sympy.Poly([sympy.Rational(c.numerator, c.denominator) for c in reversed(f.coeffs)], sympy.Symbol("x"), domain="QQ")

    g = to_sym(a).gcd(to_sym(b)).monic()
    return Poly(a.field, [Fraction(int(c.p), int(c.q)) for c in reversed(g.all_coeffs())])


def gcd(a: Poly, b: Poly) -> Poly:
    """Monic gcd (zero only if both inputs are zero)."""
    if a.field.char == 0 and a and b:
        return _qq_gcd(a, b)
    while b:
        a, b = b, a % b
    return a.monic()


def xgcd(a: Poly, b: Poly):
    """Return (g, s, t) with s*a + t*b = g monic."""
    F = a.field
    r0, r1 = a, b
    s0, s1 = Poly.one(F), Poly.zero(F)
    t0, t1 = Poly.zero(F), Poly.one(F)
    while r1:
        qt, r = divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - qt * s1
        t0, t1 = t1, t0 - qt * t1
    if r0.is_zero():
        return r0, s0, t0
    inv = F.inv(r0.lc)
    return r0.scale(inv), s0.scale(inv), t0.scale(inv)


def lcm(a: Poly, b: Poly) -> Poly:
    if a.is_zero() or b.is_zero():
        return Poly.zero(a.field)
    return (a * b // gcd(a, b)).monic()


# -- factorization over F_q --------------------------------------------------


def _pth_root(f: Poly) -> Poly:
    # f is a polynomial in x^p; take coefficientwise p-th roots
    F = f.field
    p = F.p
    root_exp = F.q // p
    return Poly(F, [F.pow(f.coeffs[i], root_exp) for i in range(0, len(f.coeffs), p)])


def squarefree_decomposition(f: Poly) -> list[tuple[Poly, int]]:
    """Yun-style decomposition of a monic f over F_q into (factor, multiplicity)."""
    F = f.field
    out: list[tuple[Poly, int]] = []
    if f.deg <= 0:
        return out

    def rec(g, mult):
        df = g.derivative()
        if df.is_zero():
            for h, m in squarefree_decomposition(_pth_root(g)):
                out.append((h, m * mult * F.p))
            return
        c = gcd(g, df)
        w = g.exact_div(c)
        i = 1
        while not w.is_one():
            y = gcd(w, c)
            z = w.exact_div(y)
            if z.deg > 0:
                out.append((z, i * mult))
            i += 1
            w = y
            c = c.exact_div(y)
        if c.deg > 0:
            for h, m in squarefree_decomposition(_pth_root(c)):
                out.append((h, m * mult * F.p))

    rec(f.monic(), 1)
    return out


def distinct_degree_factorization(f: Poly) -> list[tuple[Poly, int]]:
    """Split a squarefree monic f into products of irreducibles of equal degree."""
    F = f.field
    x = Poly.x(F)
    out = []
    h = x
    d = 0
    g = f
    while g.deg >= 2 * (d + 1):
        d += 1
        h = h.pow_mod(F.q, g)
        c = gcd(g, h - x)
        if c.deg > 0:
            out.append((c, d))
            g = g.exact_div(c)
            h = h % g
    if g.deg > 0:
        out.append((g, g.deg))
    return out


def equal_degree_factorization(f: Poly, d: int, rng: random.Random) -> list[Poly]:
    """Cantor-Zassenhaus splitting of f, a product of irreducibles of degree d."""
    F = f.field
    if f.deg == d:
        return [f.monic()]
    n = f.deg
    while True:
        a = Poly(F, [rng.randrange(F.q) for _ in range(n)])
        if a.deg <= 0:
            continue
        if F.p == 2:
            # trace map a + a^2 + ... + a^(2^(k d - 1))
            t = a % f
            acc = t
            for _ in range(F.k * d - 1):
                t = (t * t) % f
                acc = acc + t
            b = acc
        else:
            b = a.pow_mod((F.q**d - 1) // 2, f) - Poly.one(F)
        g = gcd(f, b)
        if 0 < g.deg < n:
            return equal_degree_factorization(g, d, rng) + equal_degree_factorization(
                f.exact_div(g), d, rng
            )


def factor(f: Poly) -> list[tuple[Poly, int]]:
    """Factor a nonzero polynomial over F_q into monic irreducibles.

    Returns (irreducible, multiplicity) pairs sorted by the Poly order; the
    leading coefficient is dropped.  Randomness is seeded from f so results
    are reproducible.
    """
    if f.is_zero():
        raise ValueError("cannot factor the zero polynomial")
    rng = random.Random(hash(f.coeffs) & 0xFFFFFFFF)
    counts: dict[Poly, int] = {}
    for part, m in squarefree_decomposition(f.monic()):
        for g, d in distinct_degree_factorization(part):
            for h in equal_degree_factorization(g, d, rng):
                counts[h] = counts.get(h, 0) + m
    return sorted(counts.items(), key=lambda t: t[0].sortkey())


def is_irreducible(f: Poly) -> bool:
    if f.deg <= 0:
        return False
    fs = factor(f)
    return len(fs) == 1 and fs[0][1] == 1


@functools.lru_cache(maxsize=None)
def monic_irreducibles(F: GF, d: int) -> tuple[Poly, ...]:
    """All monic irreducibles of degree d over F, in Poly order."""
    out = []
    for tail in itertools.product(range(F.q), repeat=d):
        f = Poly(F, list(tail) + [F.one])
        if d == 1 or (tail[0] != 0 and is_irreducible(f)):
            out.append(f)
    return tuple(sorted(out))


def roots_in(f: Poly, ext) -> list[int]:
    """Roots of f (over F_q) inside ext.field, f's coefficients embedded."""
    L = ext.field
    coeffs = [ext.embed[c] for c in f.coeffs]
    out = []
    for z in range(L.q):
        acc = 0
        for c in reversed(coeffs):
            acc = L.add(L.mul(acc, z), c)
        if acc == 0:
            out.append(z)
    return out


# -- Hermite form over F_q[x] --------------------------------------------------


class SingularMatrixError(ValueError):
    pass


def hermite_form(M):
    """Canonical column Hermite form of a 2 x n polynomial matrix.

    ``M`` is given as two rows.  The result [[h11, h12], [0, h22]] spans the
    same F[x]-module (columns as generators), has monic diagonal, and h12
    reduced modulo h11.  Raises SingularMatrixError if the column span has
    rank < 2.
    """
    top, bot = list(M[0]), list(M[1])
    if len(top) != len(bot):
        raise ValueError("ragged matrix")
    cols = [(t, b) for t, b in zip(top, bot) if t or b]
    # gcd of the bottom row by column operations
    while True:
        nz = [i for i, (_, b) in enumerate(cols) if b]
        if len(nz) <= 1:
            break
        piv = min(nz, key=lambda i: cols[i][1].deg)
        pt, pb = cols[piv]
        new = []
        for i, (t, b) in enumerate(cols):
            if i != piv and b:
                qt = b // pb
                t, b = t - qt * pt, b - qt * pb
            new.append((t, b))
        cols = [c for c in new if c[0] or c[1]]
    nz = [i for i, (_, b) in enumerate(cols) if b]
    if not nz:
        raise SingularMatrixError("column span has rank < 2")
    h12, h22 = cols[nz[0]]
    tops = [t for i, (t, _) in enumerate(cols) if i != nz[0]]
    h11 = None
    for t in tops:
        if t:
            h11 = t if h11 is None else gcd(h11, t)
    if h11 is None:
        raise SingularMatrixError("column span has rank < 2")
    h11 = h11.monic()
    F = h22.field
    inv = F.inv(h22.lc)
    h22 = h22.scale(inv)
    h12 = h12.scale(inv) % h11
    zero = Poly.zero(F)
    return [[h11, h12], [zero, h22]]


class FqRational:
    """Element of F(x) in lowest terms with monic denominator."""

    __slots__ = ("num", "den")

    def __init__(self, num: Poly, den: Poly | None = None):
        F = num.field
        if den is None:
            den = Poly.one(F)
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        g = gcd(num, den)
        num, den = num // g, den // g
        inv = F.inv(den.lc)
        self.num = num.scale(inv)
        self.den = den.scale(inv)

    def __add__(self, o):
        return FqRational(self.num * o.den + o.num * self.den, self.den * o.den)

    def __sub__(self, o):
        return FqRational(self.num * o.den - o.num * self.den, self.den * o.den)

    def __mul__(self, o):
        return FqRational(self.num * o.num, self.den * o.den)

    def __truediv__(self, o):
        if o.num.is_zero():
            raise ZeroDivisionError("division by zero rational function")
        return FqRational(self.num * o.den, self.den * o.num)

    def __neg__(self):
        return FqRational(-self.num, self.den)

    def __eq__(self, o):
        return isinstance(o, FqRational) and self.num == o.num and self.den == o.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __repr__(self):
        return f"({self.num.to_str()})/({self.den.to_str()})"
