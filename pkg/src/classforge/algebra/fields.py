"""Exact coefficient fields.

Every coefficient domain used in the package implements the same small
protocol (``zero``, ``one``, ``add``, ``sub``, ``neg``, ``mul``, ``inv``,
``div``, ``is_zero``, ``from_int``, ``char``), so curve and polynomial code
is written once and runs over F_q, Q and the function field K(E).

Finite field elements are plain ints: the element sum(c_i * t^i) with
c_i in F_p, relative to the field's defining modulus, is encoded as
sum(c_i * p^i).  Prime fields use modular arithmetic directly; proper
extensions use exp/log/Zech tables.
"""

from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass
from fractions import Fraction

# q = p^k above this is refused; tables are O(q).
MAX_FIELD_ORDER = 2**16


class FieldError(ValueError):
    pass


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def prime_power(q: int) -> tuple[int, int]:
    """Return (p, k) with q = p**k, or raise FieldError."""
    if q < 2:
        raise FieldError(f"{q} is not a prime power")
    p = next(d for d in range(2, q + 1) if q % d == 0)
    k, r = 0, q
    while r % p == 0:
        r //= p
        k += 1
    if r != 1 or not is_prime(p):
        raise FieldError(f"{q} is not a prime power")
    return p, k


# -- dense polynomials over F_p as tuples, low degree first; used only to
#    build extension fields


def _fp_polymulmod(a, b, mod, p):
    k = len(mod) - 1
    res = [0] * (2 * k - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                res[i + j] = (res[i + j] + ai * bj) % p
    for i in range(len(res) - 1, k - 1, -1):
        c = res[i]
        if c:
            for j in range(k + 1):
                res[i - k + j] = (res[i - k + j] - c * mod[j]) % p
    return res[:k]


def _fp_is_irreducible(mod, p):
    # Rabin-style check by brute force over monic divisors of degree <= k/2
    k = len(mod) - 1
    for d in range(1, k // 2 + 1):
        for tail in itertools.product(range(p), repeat=d):
            div = list(tail) + [1]
            # long division of mod by div
            rem = list(mod)
            for i in range(k, d - 1, -1):
                c = rem[i]
                if c:
                    for j in range(d + 1):
                        rem[i - d + j] = (rem[i - d + j] - c * div[j]) % p
            if not any(rem[:d]):
                return False
    return True


@functools.lru_cache(maxsize=None)
def least_irreducible(p: int, k: int) -> tuple[int, ...]:
    """Least monic irreducible of degree k over F_p.

    Order: the non-leading coefficients read as a base-p integer
    c_0 + c_1 p + ... , smallest first.
    """
    for code in range(p**k):
        tail = [(code // p**i) % p for i in range(k)]
        mod = tuple(tail + [1])
        if k == 1 or (mod[0] != 0 and _fp_is_irreducible(mod, p)):
            return mod
    raise FieldError(f"no irreducible of degree {k} over F_{p}")  # pragma: no cover


class GF:
    """The finite field F_q, q = p^k, elements encoded as ints in range(q)."""

    def __init__(self, p: int, k: int = 1):
        if not is_prime(p):
            raise FieldError(f"characteristic {p} is not prime")
        if k < 1:
            raise FieldError("extension degree must be positive")
        if p**k > MAX_FIELD_ORDER:
            raise FieldError(f"field order {p}^{k} exceeds bound {MAX_FIELD_ORDER}")
        self.p = p
        self.k = k
        self.q = p**k
        self.char = p
        self.order = self.q
        self.zero = 0
        self.one = 1
        self.modulus = least_irreducible(p, k)
        self._sqrt = None
        if k > 1:
            self._build_tables()
        self._minus_one = self.neg(1)

    # -- construction ---------------------------------------------------------

    def _digits(self, a):
        p = self.p
        return [(a // p**i) % p for i in range(self.k)]

    def _encode(self, digits):
        return sum(c * self.p**i for i, c in enumerate(digits))

    def _build_tables(self):
        q, p, mod = self.q, self.p, self.modulus
        for g in range(2, q):
            gd = self._digits(g)
            exp = [1]
            cur = [1] + [0] * (self.k - 1)
            while True:
                cur = _fp_polymulmod(cur, gd, mod, p)
                e = self._encode(cur)
                if e == 1:
                    break
                exp.append(e)
            if len(exp) == q - 1:
                break
        else:  # pragma: no cover
            raise FieldError("no primitive element found")
        self.generator = g
        self._exp = exp + exp
        log = [None] * q
        for i, e in enumerate(exp):
            log[e] = i
        self._log = log
        zech = [-1] * (q - 1)
        for n in range(q - 1):
            d = self._digits(exp[n])
            d[0] = (d[0] + 1) % p
            s = self._encode(d)
            zech[n] = log[s] if s else -1
        self._zech = zech

    # -- protocol -------------------------------------------------------------

    def is_zero(self, a):
        return a == 0

    def from_int(self, n: int) -> int:
        return n % self.p

    def from_code(self, n: int) -> int:
        """Element with integer code n; -n denotes its negation, and prime fields reduce mod p."""
        if self.k == 1:
            return n % self.p
        if not -self.q < n < self.q:
            raise FieldError(f"code {n} out of range for GF({self.q})")
        return n if n >= 0 else self.neg(-n)

    def add(self, a, b):
        if self.k == 1:
            return (a + b) % self.p
        if a == 0:
            return b
        if b == 0:
            return a
        la = self._log[a]
        z = self._zech[(self._log[b] - la) % (self.q - 1)]
        if z < 0:
            return 0
        return self._exp[la + z]

    def neg(self, a):
        if self.k == 1:
            return -a % self.p
        if a == 0 or self.p == 2:
            return a
        return self._exp[self._log[a] + (self.q - 1) // 2]

    def sub(self, a, b):
        if self.k == 1:
            return (a - b) % self.p
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        if self.k == 1:
            return a * b % self.p
        if a == 0 or b == 0:
            return 0
        return self._exp[self._log[a] + self._log[b]]

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero in F_%d" % self.q)
        if self.k == 1:
            return pow(a, self.p - 2, self.p)
        return self._exp[(-self._log[a]) % (self.q - 1)]

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def pow(self, a, n: int):
        if n == 0:
            return 1
        if a == 0:
            if n < 0:
                raise ZeroDivisionError("zero to a negative power")
            return 0
        if self.k == 1:
            return pow(a, n % (self.p - 1), self.p)
        return self._exp[(self._log[a] * n) % (self.q - 1)]

    def elements(self):
        return range(self.q)

    def coordinates(self, a) -> tuple[int, ...]:
        """Coordinates over F_p in the power basis of the defining modulus."""
        return tuple(self._digits(a))

    def from_coordinates(self, digits) -> int:
        if len(digits) != self.k:
            raise FieldError("wrong number of coordinates")
        return self._encode([c % self.p for c in digits])

    def sqrt_table(self) -> dict[int, list[int]]:
        """Map each square s to the sorted list of its square roots."""
        if self._sqrt is None:
            t: dict[int, list[int]] = {}
            for y in range(self.q):
                t.setdefault(self.mul(y, y), []).append(y)
            self._sqrt = t
        return self._sqrt

    def is_square(self, a) -> bool:
        return a in self.sqrt_table()

    def __call__(self, value) -> "FqElement":
        if isinstance(value, FqElement):
            if value.field is not self:
                raise FieldError("element of another field")
            return value
        return FqElement(self, self.from_int(value))

    def __repr__(self):
        return f"GF({self.q})"

    def __reduce__(self):
        return (finite_field, (self.q,))


@functools.lru_cache(maxsize=None)
def _gf(p: int, k: int) -> GF:
    return GF(p, k)


def finite_field(q: int) -> GF:
    """Cached F_q; the same object is returned for equal q."""
    p, k = prime_power(q)
    return _gf(p, k)


@dataclass(frozen=True)
class FqElement:
    """Operator-overloading view of an int-encoded element of a GF."""

    field: GF
    value: int

    def _lift(self, other):
        if isinstance(other, FqElement):
            if other.field is not self.field:
                raise FieldError("mixed fields")
            return other.value
        if isinstance(other, int):
            return self.field.from_int(other)
        return NotImplemented

    def __add__(self, other):
        o = self._lift(other)
        return FqElement(self.field, self.field.add(self.value, o))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._lift(other)
        return FqElement(self.field, self.field.sub(self.value, o))

    def __rsub__(self, other):
        o = self._lift(other)
        return FqElement(self.field, self.field.sub(o, self.value))

    def __mul__(self, other):
        o = self._lift(other)
        return FqElement(self.field, self.field.mul(self.value, o))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._lift(other)
        return FqElement(self.field, self.field.div(self.value, o))

    def __rtruediv__(self, other):
        o = self._lift(other)
        return FqElement(self.field, self.field.div(o, self.value))

    def __neg__(self):
        return FqElement(self.field, self.field.neg(self.value))

    def __pow__(self, n: int):
        return FqElement(self.field, self.field.pow(self.value, n))

    def __eq__(self, other):
        if isinstance(other, FqElement):
            return self.field is other.field and self.value == other.value
        if isinstance(other, int):
            return self.value == self.field.from_int(other)
        return NotImplemented

    def __hash__(self):
        return hash((self.field.q, self.value))

    def __bool__(self):
        return self.value != 0

    @property
    def coordinates(self):
        return self.field.coordinates(self.value)

    def __repr__(self):
        return f"{self.value}@F{self.field.q}"


class RationalField:
    """Q with Fraction elements."""

    char = 0
    order = None
    zero = Fraction(0)
    one = Fraction(1)

    def is_zero(self, a):
        return a == 0

    def from_int(self, n):
        return Fraction(n)

    from_code = from_int

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero in Q")
        return 1 / Fraction(a)

    def div(self, a, b):
        if b == 0:
            raise ZeroDivisionError("division by zero in Q")
        return Fraction(a) / b

    def pow(self, a, n):
        return Fraction(a) ** n

    def __repr__(self):
        return "QQ"

    def __reduce__(self):
        return (_qq, ())


QQ = RationalField()


def _qq():
    return QQ


@dataclass(frozen=True, eq=False)
class Extension:
    """F_{q^d} together with the embedding of F_q into it."""

    base: GF
    field: GF
    degree: int
    embed: tuple[int, ...]  # embed[a] = image of base element a
    restrict: dict  # inverse of embed on its image

    def frobenius(self, a, times: int = 1):
        """The q-power Frobenius, applied `times` times."""
        return self.field.pow(a, self.base.q**times) if a else 0

    def down(self, a):
        """Pull an element of the image of F_q back; KeyError if outside."""
        return self.restrict[a]


@functools.lru_cache(maxsize=None)
def extension(base: GF, d: int) -> Extension:
    """F_{q^d} as GF(p, k*d) with a deterministic embedding of F_q."""
    p, k = base.p, base.k
    big = _gf(p, k * d)
    if d == 1:
        ident = tuple(range(base.q))
        return Extension(base, big, 1, ident, {a: a for a in ident})
    if k == 1:
        embed = tuple(range(p))
    else:
        # least root of base.modulus inside the subfield of order q
        mod = base.modulus
        root = None
        for z in range(big.q):
            acc = 0
            for c in reversed(mod):
                acc = big.add(big.mul(acc, z), big.from_int(c))
            if acc == 0:
                root = z
                break
        if root is None:  # pragma: no cover
            raise FieldError("modulus has no root in extension")
        powers = [1]
        for _ in range(k - 1):
            powers.append(big.mul(powers[-1], root))
        embed = []
        for a in range(base.q):
            acc = 0
            for c, pw in zip(base.coordinates(a), powers):
                acc = big.add(acc, big.mul(big.from_int(c), pw))
            embed.append(acc)
        embed = tuple(embed)
    restrict = {v: i for i, v in enumerate(embed)}
    return Extension(base, big, d, embed, restrict)
