"""Ideals of k[E] in Hermite form and an ideal-theoretic Picard group.

An integral ideal I is a rank-2 F_q[x]-submodule of k[E] = F_q[x] + F_q[x] y,
stored by the column Hermite form

    [[h11, h12],
     [0,   h22]]      columns  h11  and  h12 + h22*y,

with h11, h22 monic and deg h12 < deg h11.  Its norm is h11*h22.  A
fractional ideal carries an extra monic denominator.

Nothing here uses the chord-tangent group law; picard_bruteforce is an
independent route to Pic(k[E]).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

from .algebra.fields import FieldError, extension
from .algebra.groups import FgAbelianGroup, GroupQuotient, group_from_presentation
from .algebra.intmat import RowLattice
from .algebra.linalg import nullspace
from .algebra.poly import Poly, factor, gcd, hermite_form, roots_in
from .curve_ring import (
    ClosedPoint,
    RingElement,
    closed_point_from,
    closed_points_up_to_degree,
    curve_polys,
    norm,
    pole_order,
    ring_mul,
    sigma,
    y_elem,
)
from .elliptic import WeierstrassCurve, _ys_over


class CurveRequiredError(TypeError):
    """Raised when an ideal-class computation is asked for something other than an elliptic curve."""


class BudgetExhausted(RuntimeError):
    """Relation harvesting hit its candidate budget before the group stabilized."""


class FactorizationDegreeError(ValueError):
    """A prime factor exceeds the configured degree bound."""


@dataclass(frozen=True)
class FractionalIdeal:
    curve: WeierstrassCurve
    h11: Poly
    h12: Poly
    h22: Poly
    den: Poly = None

    def __post_init__(self):
        F = self.curve.field
        if self.den is None:
            object.__setattr__(self, "den", Poly.one(F))
        if not (self.h11.is_monic() and self.h22.is_monic() and self.den.is_monic()):
            raise ValueError("Hermite diagonal and denominator must be monic")
        if self.h12.deg >= self.h11.deg:
            raise ValueError("h12 must be reduced modulo h11")
        # closure under multiplication by y
        h, g = curve_polys(self.curve)
        y_col1 = RingElement(Poly.zero(F), self.h11)
        y_col2 = RingElement(self.h22 * g, self.h12 - self.h22 * h)
        if not (self._contains_num(y_col1) and self._contains_num(y_col2)):
            raise ValueError("module is not an ideal (not closed under y)")

    def _contains_num(self, f: RingElement) -> bool:
        if not self.h22.divides(f.b):
            return False
        c = f.b // self.h22
        return self.h11.divides(f.a - c * self.h12)

    def contains(self, f: RingElement) -> bool:
        """Membership of an element of k[E]."""
        if self.den.is_one():
            return self._contains_num(f)
        return self._contains_num(RingElement(f.a * self.den, f.b * self.den))

    @property
    def is_integral(self) -> bool:
        return self.den.is_one()

    def norm(self) -> Poly:
        """Monic norm polynomial (numerator); for fractional ideals see norm_pair."""
        if not self.is_integral:
            raise ValueError("norm of a fractional ideal is a rational function; use norm_pair")
        return self.h11 * self.h22

    def norm_pair(self) -> tuple[Poly, Poly]:
        return self.h11 * self.h22, self.den * self.den

    def is_unit_ideal(self) -> bool:
        return self.is_integral and self.h11.is_one() and self.h22.is_one()

    def generators(self) -> tuple[RingElement, RingElement]:
        F = self.curve.field
        return RingElement(self.h11, Poly.zero(F)), RingElement(self.h12, self.h22)

    def key(self):
        return (self.h11.coeffs, self.h12.coeffs, self.h22.coeffs, self.den.coeffs)

    def __repr__(self):
        s = f"[[{self.h11.to_str()}, {self.h12.to_str()}], [0, {self.h22.to_str()}]]"
        return s if self.is_integral else f"{s}/({self.den.to_str()})"


def _from_columns(E, cols, den=None) -> FractionalIdeal:
    """Ideal spanned over F_q[x] by the given elements (already y-closed)."""
    H = hermite_form([[c.a for c in cols], [c.b for c in cols]])
    return _normalize(E, H[0][0], H[0][1], H[1][1], den)


def _normalize(E, h11, h12, h22, den):
    F = E.field
    if den is not None and not den.is_one():
        c = gcd(gcd(gcd(h11, h22), h12 if h12 else h11), den)
        if not c.is_one():
            h11, h12, h22, den = h11 // c, h12 // c, h22 // c, den // c
    return FractionalIdeal(E, h11, h12 % h11, h22, den if den is not None else Poly.one(F))


def _y_closure(E, gens):
    y = y_elem(E)
    return list(gens) + [ring_mul(E, y, f) for f in gens]


def ideal_generated(E, *gens: RingElement) -> FractionalIdeal:
    """The ideal generated by elements of k[E]."""
    return _from_columns(E, _y_closure(E, gens))


def principal_ideal(E, f: RingElement) -> FractionalIdeal:
    if f.is_zero():
        raise ValueError("zero ideal")
    return ideal_generated(E, f)


def unit_ideal(E) -> FractionalIdeal:
    one = Poly.one(E.field)
    return FractionalIdeal(E, one, Poly.zero(E.field), one)


def ideal_from_closed_point(E, P: ClosedPoint) -> FractionalIdeal:
    """The prime (p(x), y - t(x)), or (p(x)) when the x-fibre is inert."""
    p = P.minpoly
    F = E.field
    if P.ytail is None:
        I = FractionalIdeal(E, p, Poly.zero(F), p)
    else:
        I = FractionalIdeal(E, p, (-P.ytail) % p, Poly.one(F))
    if I.norm().deg != P.degree:
        raise AssertionError("prime norm degree does not match closed point degree")
    return I


def ideal_mul(I: FractionalIdeal, J: FractionalIdeal) -> FractionalIdeal:
    E = I.curve
    prods = [ring_mul(E, u, v) for u in I.generators() for v in J.generators()]
    den = I.den * J.den
    return _from_columns(E, _y_closure(E, prods), den)


def ideal_sigma(I: FractionalIdeal) -> FractionalIdeal:
    E = I.curve
    gens = [sigma(E, f) for f in I.generators()]
    return _from_columns(E, _y_closure(E, gens), I.den)


def ideal_inverse(I: FractionalIdeal) -> FractionalIdeal:
    """I^{-1} = den * sigma(I) / N(I), using I * sigma(I) = (h11*h22)."""
    E = I.curve
    num = ideal_sigma(FractionalIdeal(E, I.h11, I.h12, I.h22))
    N = I.h11 * I.h22
    scaled = [RingElement(f.a * I.den, f.b * I.den) for f in num.generators()]
    return _from_columns(E, _y_closure(E, scaled), N)


def ideal_pow(I: FractionalIdeal, n: int) -> FractionalIdeal:
    if n < 0:
        return ideal_pow(ideal_inverse(I), -n)
    acc = unit_ideal(I.curve)
    base = I
    while n:
        if n & 1:
            acc = ideal_mul(acc, base)
        n >>= 1
        if n:
            base = ideal_mul(base, base)
    return acc


def _exact_divide(I: FractionalIdeal, c: Poly) -> FractionalIdeal:
    return FractionalIdeal(I.curve, I.h11.exact_div(c), I.h12.exact_div(c) % I.h11.exact_div(c), I.h22.exact_div(c), I.den)


def divide_by_prime(I: FractionalIdeal, P: ClosedPoint) -> FractionalIdeal:
    """I * P^{-1} for an integral I contained in P."""
    E = I.curve
    Pi = ideal_from_closed_point(E, P)
    prod = ideal_mul(I, ideal_sigma(Pi))
    return _exact_divide(prod, Pi.norm())


# -- principality -----------------------------------------------------------------


def norm_degree_space(n: int) -> tuple[int, int]:
    """Coefficient counts (for a, for b) of {a + b y : deg N <= n}."""
    na = n // 2 + 1
    nb = (n - 3) // 2 + 1 if n >= 3 else 0
    return na, nb


def is_principal(E, I: FractionalIdeal) -> RingElement | None:
    """A generator of the integral ideal I, or None.

    Any generator f has N(f) = N(I) up to a unit, so deg N(f) = n := deg N(I)
    and, by the norm-degree law, f lies in the finite-dimensional space
    V_n = {a + b y : 2 deg a <= n, 2 deg b + 3 <= n}.  Conversely any nonzero
    f in I with pole order <= n has N(I) | N(f) and deg N(f) <= n, so (f) = I.
    Searching V_n is therefore complete; the search is done as a kernel
    computation instead of enumeration.
    """
    if not I.is_integral:
        raise ValueError("is_principal expects an integral ideal")
    F = E.field
    n = I.norm().deg
    if n == 0:
        return RingElement(Poly.one(F), Poly.zero(F))
    na, nb = norm_degree_space(n)
    # b = c * h22 with deg c < nc
    nc = max(0, nb - I.h22.deg)
    m = I.h11.deg
    cols = []
    for i in range(na):
        r = Poly.monomial(F, i) % I.h11
        cols.append([r[j] for j in range(m)])
    for j in range(nc):
        r = (-(Poly.monomial(F, j) * I.h12)) % I.h11
        cols.append([r[k] for k in range(m)])
    nvars = na + nc
    rows = [[cols[v][k] for v in range(nvars)] for k in range(m)]
    kernel = nullspace(F, rows, nvars)
    if not kernel:
        return None
    # a nonzero f in I of pole order < n would have deg N(f) < deg N(I)
    # so every kernel vector has pole order n, and the kernel is a line
    vec = kernel[0]
    f = RingElement(Poly(F, vec[:na]), Poly(F, vec[na:]) * I.h22)
    if pole_order(f) != n:
        raise AssertionError("kernel element of unexpected pole order")
    inv = F.inv(f.a.lc if n % 2 == 0 else f.b.lc)
    return RingElement(f.a.scale(inv), f.b.scale(inv))


# -- factorization ---------------------------------------------------------------


@lru_cache(maxsize=None)
def primes_above(E: WeierstrassCurve, p: Poly) -> tuple[ClosedPoint, ...]:
    """Closed points in the fibre over the monic irreducible p(x)."""
    F = E.field
    e = p.deg
    ext = extension(F, e)
    L = ext.field
    EL = E.base_change(L, lambda c: ext.embed[c])
    alpha = roots_in(p, ext)[0]
    ys = _ys_over(EL, L, alpha)
    if ys:
        pts = {closed_point_from(E, ext, (alpha, y)) for y in ys}
        return tuple(sorted(pts))
    ext2 = extension(F, 2 * e)
    L2 = ext2.field
    EL2 = E.base_change(L2, lambda c: ext2.embed[c])
    alpha2 = roots_in(p, ext2)[0]
    y = _ys_over(EL2, L2, alpha2)[0]
    return (closed_point_from(E, ext2, (alpha2, y)),)


def fibre_type(E, p: Poly) -> str:
    P = primes_above(E, p)
    if len(P) == 2:
        return "split"
    return "inert" if P[0].ytail is None else "ramified"


def _in_prime(I: FractionalIdeal, Pi: FractionalIdeal) -> bool:
    return all(Pi._contains_num(f) for f in I.generators())


def factor_ideal(E, I: FractionalIdeal, max_degree: int | None = None) -> list[tuple[ClosedPoint, int]]:
    """Prime factorization of an integral ideal, sorted by closed point."""
    if not I.is_integral:
        raise ValueError("factor_ideal expects an integral ideal")
    out = []
    for p, _ in factor(I.norm()):
        try:
            fibre = primes_above(E, p)
        except FieldError as exc:
            raise FactorizationDegreeError(f"fibre over {p.to_str()} needs a field beyond the table bound: {exc}") from exc
        for P in fibre:
            if max_degree is not None and P.degree > max_degree:
                raise FactorizationDegreeError(f"prime of degree {P.degree} above {p.to_str()} exceeds bound {max_degree}")
            Pi = ideal_from_closed_point(E, P)
            k = 0
            while _in_prime(I, Pi):
                I = divide_by_prime(I, P)
                k += 1
            if k:
                out.append((P, k))
    if not I.is_unit_ideal():
        raise AssertionError("factorization did not terminate at the unit ideal")
    out.sort(key=lambda t: t[0].key)
    return out


def product_of_primes(E, factors) -> FractionalIdeal:
    acc = unit_ideal(E)
    for P, k in factors:
        acc = ideal_mul(acc, ideal_pow(ideal_from_closed_point(E, P), k))
    return acc


# -- the ideal-theoretic Picard group ---------------------------------------------


@dataclass
class PicardConfig:
    """Bounds for relation harvesting.

    ``degree_bound`` is D (generator primes have degree <= D).  Relations
    come from all f with deg N(f) <= ``relation_budget``; stability asks that
    two further increments of ``step`` leave the relation lattice unchanged.
    """

    degree_bound: int = 1
    relation_budget: int = 3
    step: int = 2
    stable_increments: int = 2
    max_candidates: int = 50_000_000
    max_norm_degree: int = 16
    max_closed_point_degree: int = 4


@dataclass
class IdealClassGroupResult:
    group: FgAbelianGroup
    generators: list[ClosedPoint]
    presentation: GroupQuotient
    relations: list[list[int]]
    stable: bool
    final_budget: int
    candidates: int
    history: list[tuple[int, str]] = field(default_factory=list)

    def dlog(self, P: ClosedPoint) -> tuple[int, ...]:
        """Group coordinates of the class of a generator prime."""
        i = self.index[P]
        return self.presentation.project([int(j == i) for j in range(len(self.generators))])

    @property
    def index(self):
        return {P: i for i, P in enumerate(self.generators)}

    def class_vector(self, factors) -> tuple[int, ...]:
        idx = self.index
        vec = [0] * len(self.generators)
        for P, k in factors:
            vec[idx[P]] += k
        return self.presentation.project(vec)


def _p_adic_split(N: Poly, p: Poly) -> tuple[int, Poly]:
    k = 0
    while True:
        Q, r = divmod(N, p)
        if r:
            return k, N
        N, k = Q, k + 1


def fast_relation_vector(E, f: RingElement, index: dict, allowed) -> list[int] | None:
    """Exponent vector of (f) using only norms and residues.

    Write f = c f' with c = gcd(a, b).  Then (c) factors fibre by fibre, and
    for f' no split fibre can contribute to both conjugate primes (that would
    put f' in (p)), so the norm exponent of p goes to the unique prime above
    p that contains f'.
    """
    F = E.field
    c = gcd(f.a, f.b) if f.b else f.a.monic()
    a1, b1 = f.a // c, f.b // c
    vec = [0] * len(index)
    rest_c = c
    rest_n = norm(E, RingElement(a1, b1))
    rest_n = rest_n.scale(F.inv(rest_n.lc))
    for p in allowed:
        kc, rest_c = _p_adic_split(rest_c, p)
        kn, rest_n = _p_adic_split(rest_n, p)
        if not (kc or kn):
            continue
        primes = primes_above(E, p)
        if any(P not in index for P in primes):
            return None
        if len(primes) == 2:
            for P in primes:
                vec[index[P]] += kc
            if kn:
                t = primes[0].ytail
                hit = primes[0] if ((a1 + b1 * t) % p).is_zero() else primes[1]
                vec[index[hit]] += kn
        elif primes[0].ytail is None:
            if kn:
                raise AssertionError("primitive element divisible by an inert prime")
            vec[index[primes[0]]] += kc
        else:
            vec[index[primes[0]]] += 2 * kc + kn
    if rest_c.deg > 0 or rest_n.deg > 0:
        return None
    return vec


def relation_vector(E, f: RingElement, index: dict, max_degree: int) -> list[int] | None:
    """Exponent vector of (f) over the generator primes, or None if not smooth."""
    try:
        fac = factor_ideal(E, principal_ideal(E, f), max_degree)
    except FactorizationDegreeError:
        return None
    vec = [0] * len(index)
    for P, k in fac:
        if P not in index:
            return None
        vec[index[P]] += k
    return vec


def harvest_relations(E, generators, n, lattice: RowLattice, cfg: PicardConfig, counter: list[int]) -> bool:
    """Add relations from all f with deg N(f) = n; report whether the lattice grew."""
    from .harvest import smooth_relations

    index = {P: i for i, P in enumerate(generators)}
    grew = False
    for vec in smooth_relations(E, n, cfg.degree_bound, index, counter, cfg.max_candidates):
        if vec is not None and any(vec):
            grew |= lattice.add(vec)
    return grew


def picard_bruteforce(E, D: int | None = None, B: int | None = None, config: PicardConfig | None = None) -> IdealClassGroupResult:
    """Pic(k[E]) from closed points of degree <= D and principal-ideal relations.

    Relations are harvested through norm degree B and then in increments of
    ``step``; the run is flagged stable once ``stable_increments`` successive
    increments leave the lattice unchanged.  Raises BudgetExhausted when the
    candidate budget or the degree cap is hit first.
    """
    if not isinstance(E, WeierstrassCurve):
        raise CurveRequiredError("curve required: the genus-0 ring F_q[x] is not supported")
    cfg = PicardConfig(**vars(config)) if config else PicardConfig()
    if D is not None:
        cfg.degree_bound = D
    if B is not None:
        cfg.relation_budget = B
    gens = closed_points_up_to_degree(E, cfg.degree_bound, cfg.max_closed_point_degree)
    lattice = RowLattice(len(gens))
    counter = [0]
    history = []

    def snapshot():
        return str(group_from_presentation(len(gens), lattice.basis()).group)

    for n in range(2, cfg.relation_budget + 1):
        harvest_relations(E, gens, n, lattice, cfg, counter)
    history.append((cfg.relation_budget, snapshot()))
    budget = cfg.relation_budget
    quiet = 0
    while quiet < cfg.stable_increments:
        if budget + cfg.step > cfg.max_norm_degree:
            raise BudgetExhausted(f"norm degree cap {cfg.max_norm_degree} reached before stability")
        before = lattice.copy()
        for n in range(budget + 1, budget + cfg.step + 1):
            harvest_relations(E, gens, n, lattice, cfg, counter)
        budget += cfg.step
        history.append((budget, snapshot()))
        quiet = quiet + 1 if lattice == before else 0
    pres = group_from_presentation(len(gens), lattice.basis())
    return IdealClassGroupResult(pres.group, gens, pres, lattice.basis(), True, budget, counter[0], history)
