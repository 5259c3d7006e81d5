"""Finitely generated abelian groups as free rank plus invariant factors."""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field

from .intmat import smith_normal_form


@dataclass(frozen=True)
class FgAbelianGroup:
    """Z^rank + Z/d1 + ... + Z/dt with 2 <= d1 | d2 | ... | dt.

    Element coordinates are ordered free part first, then torsion part in
    invariant-factor order.
    """

    rank: int = 0
    invariants: tuple[int, ...] = ()

    def __post_init__(self):
        if self.rank < 0:
            raise ValueError("negative free rank")
        inv = tuple(self.invariants)
        if any(d < 2 for d in inv):
            raise ValueError(f"invariant factors must be >= 2, got {inv}")
        if any(b % a for a, b in zip(inv, inv[1:])):
            raise ValueError(f"invariant factors {inv} do not form a divisibility chain")
        object.__setattr__(self, "invariants", inv)

    @classmethod
    def from_orders(cls, rank: int, orders) -> "FgAbelianGroup":
        """Normalize an arbitrary list of cyclic orders (units and zeros allowed)."""
        orders = list(orders)
        rank += sum(1 for d in orders if d == 0)
        finite = [abs(d) for d in orders if d not in (0,)]
        if not finite:
            return cls(rank, ())
        D, _, _ = smith_normal_form([[d if i == j else 0 for j in range(len(finite))] for i, d in enumerate(finite)])
        diag = [D[i][i] for i in range(len(finite))]
        return cls(rank, tuple(d for d in diag if d > 1))

    @property
    def order(self):
        """Group order, or None when the group is infinite."""
        if self.rank:
            return None
        return math.prod(self.invariants)

    @property
    def exponent(self):
        if self.rank:
            return None
        return self.invariants[-1] if self.invariants else 1

    @property
    def is_trivial(self):
        return self.rank == 0 and not self.invariants

    @property
    def is_finite(self):
        return self.rank == 0

    @property
    def moduli(self) -> tuple[int, ...]:
        """Per-coordinate moduli, 0 for free coordinates."""
        return (0,) * self.rank + self.invariants

    def normalize(self, coords) -> tuple[int, ...]:
        return tuple(c % m if m else c for c, m in zip(coords, self.moduli))

    def add(self, a, b):
        return self.normalize([x + y for x, y in zip(a, b)])

    def neg(self, a):
        return self.normalize([-x for x in a])

    def zero(self):
        return (0,) * len(self.moduli)

    def elements(self):
        """Iterate all elements of a finite group in lexicographic order."""
        if self.rank:
            raise ValueError("cannot enumerate an infinite group")
        import itertools

        return itertools.product(*(range(d) for d in self.invariants))

    def element_order(self, a) -> int:
        if any(a[: self.rank]):
            return 0
        o = 1
        for c, d in zip(a[self.rank :], self.invariants):
            o = math.lcm(o, d // math.gcd(c, d))
        return o

    def __str__(self):
        parts = []
        if self.rank == 1:
            parts.append("Z")
        elif self.rank > 1:
            parts.append(f"Z^{self.rank}")
        parts += [f"Z/{d}" for d in self.invariants]
        return "+".join(parts) if parts else "0"

    def to_json(self):
        return {"rank": self.rank, "torsion": list(self.invariants)}

    @classmethod
    def from_json(cls, obj):
        return cls(int(obj["rank"]), tuple(int(d) for d in obj["torsion"]))


def is_isomorphic(G: FgAbelianGroup, H: FgAbelianGroup) -> bool:
    return G.rank == H.rank and G.invariants == H.invariants


@dataclass(frozen=True)
class GroupQuotient:
    """Z^n / (row span of a relation matrix) with the projection recorded.

    ``basis_images[j]`` are the group coordinates of the j-th standard basis
    vector of Z^n.
    """

    group: FgAbelianGroup
    basis_images: tuple[tuple[int, ...], ...]
    ngens: int = field(default=0)

    def project(self, vec) -> tuple[int, ...]:
        acc = [0] * len(self.group.moduli)
        for c, img in zip(vec, self.basis_images):
            if c:
                for i, v in enumerate(img):
                    acc[i] += c * v
        return self.group.normalize(acc)


def group_from_presentation(n: int, relations) -> GroupQuotient:
    """Z^n modulo the row span of ``relations`` (each row of length n)."""
    rows = [list(r) for r in relations if any(r)]
    for r in rows:
        if len(r) != n:
            raise ValueError(f"relation of length {len(r)} for {n} generators")
    if n == 0:
        return GroupQuotient(FgAbelianGroup(), (), 0)
    if not rows:
        rows = [[0] * n]
    D, _, V = smith_normal_form(rows)
    diag = [D[i][i] if i < len(D) else 0 for i in range(n)]
    free_idx = [i for i, d in enumerate(diag) if d == 0]
    tors_idx = [i for i, d in enumerate(diag) if d > 1]
    tors_idx.sort(key=lambda i: diag[i])
    group = FgAbelianGroup(len(free_idx), tuple(diag[i] for i in tors_idx))
    order = free_idx + tors_idx
    images = []
    for j in range(n):
        img = [V[j][i] for i in order]
        images.append(group.normalize(img))
    return GroupQuotient(group, tuple(images), n)


def subgroup_order(G: FgAbelianGroup, gens) -> int | None:
    """Order of the subgroup of a finite G generated by ``gens`` (coordinates)."""
    if not G.is_finite:
        raise ValueError("subgroup order needs a finite ambient group")
    k = len(G.moduli)
    rels = [[d if i == j else 0 for j in range(k)] for i, d in enumerate(G.moduli)]
    rels += [list(g) for g in gens]
    Q = group_from_presentation(k, rels).group
    return G.order // Q.order


def quotient(G: FgAbelianGroup, gens) -> GroupQuotient:
    """G / <gens> for gens given in G's coordinates."""
    k = len(G.moduli)
    rels = [[d if i == j else 0 for j in range(k)] for i, d in enumerate(G.moduli) if d]
    rels += [list(g) for g in gens]
    return group_from_presentation(k, rels)


_TERM = re.compile(r"\s*Z(?:\s*\^\s*(\d+)|\s*/\s*(-?\d+))?\s*")


class GroupSpecSyntaxError(ValueError):
    def __init__(self, msg, offset):
        super().__init__(f"{msg} at offset {offset}")
        self.offset = offset


def parse_group(s: str) -> tuple[int, list[int]]:
    """Parse ``Z^r``, ``Z/d`` and ``+``-sums into (rank, torsion orders).

    ``0`` denotes the trivial group.  Orders below 2 are rejected.
    """
    if s.strip() == "0":
        return 0, []
    rank, tors = 0, []
    pos = 0
    while True:
        m = _TERM.match(s, pos)
        if not m or m.end() == pos:
            raise GroupSpecSyntaxError("expected Z, Z^r or Z/d", pos)
        if m.group(2) is not None:
            d = int(m.group(2))
            if d < 2:
                raise GroupSpecSyntaxError(f"cyclic order {d} must be >= 2", m.start(2))
            tors.append(d)
        elif m.group(1) is not None:
            rank += int(m.group(1))
        else:
            rank += 1
        pos = m.end()
        if pos == len(s):
            return rank, tors
        if s[pos] != "+":
            raise GroupSpecSyntaxError(f"unexpected {s[pos]!r}", pos)
        pos += 1
