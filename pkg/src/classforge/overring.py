"""Overrings R^W of R = k[E] for finite sets W of primes.

R^W is the overring in which exactly the primes of W become units.  Its
Picard group is computed two ways: as the quotient of E(F_q) by the classes
of W (point arithmetic), and by adding unit relations e_P (P in W) to the
raw relation lattice harvested for Pic(R) (ideal arithmetic).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .algebra.groups import FgAbelianGroup, group_from_presentation, is_isomorphic, quotient, subgroup_order
from .curve_ring import ClosedPoint, class_of
from .elliptic import WeierstrassCurve, group_structure
from .ideal_class import (
    IdealClassGroupResult,
    PicardConfig,
    _in_prime,
    ideal_from_closed_point,
    picard_bruteforce,
)


@dataclass(frozen=True)
class OverringSpec:
    curve: WeierstrassCurve
    W: tuple[ClosedPoint, ...] = ()

    def __post_init__(self):
        W = tuple(self.W)
        if len(set(W)) != len(W):
            raise ValueError("W contains duplicate primes")
        for P in W:
            if P.curve != self.curve:
                raise ValueError(f"{P} is not a closed point of this curve")
        object.__setattr__(self, "W", tuple(sorted(W)))

    @property
    def max_degree(self) -> int:
        return max((P.degree for P in self.W), default=1)


@dataclass
class OverringPicardReport:
    quotient: FgAbelianGroup
    direct: FgAbelianGroup
    isomorphic: bool
    H_order: int
    H_generators: list[tuple[int, ...]]
    order_identity: bool
    kernel_matches: bool

    def to_json(self):
        return {
            "quotient": self.quotient.to_json(),
            "direct": self.direct.to_json(),
            "isomorphic": self.isomorphic,
            "H_order": self.H_order,
            "H_generators": [list(h) for h in self.H_generators],
            "order_identity": self.order_identity,
            "kernel_matches": self.kernel_matches,
        }


def class_coordinates(spec: OverringSpec) -> list[tuple[int, ...]]:
    """Coordinates in E(F_q) of the classes of the primes in W."""
    mw = group_structure(spec.curve)
    return [mw.coords[class_of(spec.curve, P)] for P in spec.W]


def picard_quotient(spec: OverringSpec) -> FgAbelianGroup:
    """E(F_q) / <class_of(P) : P in W>."""
    mw = group_structure(spec.curve)
    return quotient(mw.group, class_coordinates(spec)).group


def H_order(spec: OverringSpec) -> int:
    mw = group_structure(spec.curve)
    return subgroup_order(mw.group, class_coordinates(spec))


@lru_cache(maxsize=64)
def _cached_bruteforce(E, D, B) -> IdealClassGroupResult:
    return picard_bruteforce(E, D, B)


def _harvest(spec, D, B, config):
    D = max(D if D is not None else PicardConfig().degree_bound, spec.max_degree)
    if config is None:
        return _cached_bruteforce(spec.curve, D, B)
    return picard_bruteforce(spec.curve, D, B, config)


def pruned_presentation(spec: OverringSpec, result: IdealClassGroupResult):
    """Raw relations of Pic(R) plus a unit relation for every prime of W."""
    idx = result.index
    n = len(result.generators)
    rows = [list(r) for r in result.relations]
    for P in spec.W:
        rows.append([int(j == idx[P]) for j in range(n)])
    return group_from_presentation(n, rows)


def picard_direct(spec: OverringSpec, D: int | None = None, B: int | None = None, config: PicardConfig | None = None) -> FgAbelianGroup:
    """Pic(R^W) from the raw relation lattice with W's columns killed."""
    result = _harvest(spec, D, B, config)
    return pruned_presentation(spec, result).group


def exactness_witness(spec: OverringSpec, result: IdealClassGroupResult) -> bool:
    """Check the exact sequence 0 -> H -> Pic(R) -> Pic(R^W) -> 0 on the relation data.

    The generator classes give a map psi from the relation presentation of
    Pic(R) to E(F_q).  We check psi kills every relation, is bijective, that
    the kernel of Pic(R) -> Pic(R^W) read off the two Smith forms has the
    order of <Phi(W)>, and that psi carries that kernel onto <Phi(W)>.
    """
    E = spec.curve
    mw = group_structure(E)
    G = mw.group
    gens = result.generators
    images = [mw.coords[class_of(E, P)] for P in gens]

    def psi(vec):
        acc = G.zero()
        for c, img in zip(vec, images):
            if c:
                acc = G.add(acc, tuple(c * v for v in img))
        return acc

    if any(any(psi(r)) for r in result.relations):
        return False
    if result.group.order != len(mw.coords) or subgroup_order(G, images) != G.order:
        return False
    pruned = pruned_presentation(spec, result).group
    kernel_order = result.group.order // pruned.order
    H = [mw.coords[class_of(E, P)] for P in spec.W]
    if kernel_order != subgroup_order(G, H):
        return False
    idx = result.index
    kernel_images = [psi([int(j == idx[P]) for j in range(len(gens))]) for P in spec.W]
    # mutual membership of the two subgroups of E(F_q)
    both = subgroup_order(G, H + kernel_images)
    return both == subgroup_order(G, H) == subgroup_order(G, kernel_images)


def overring_report(spec: OverringSpec, D: int | None = None, B: int | None = None, config: PicardConfig | None = None) -> OverringPicardReport:
    result = _harvest(spec, D, B, config)
    quo = picard_quotient(spec)
    direct = pruned_presentation(spec, result).group
    h = H_order(spec)
    n = len(group_structure(spec.curve).coords)
    return OverringPicardReport(
        quotient=quo,
        direct=direct,
        isomorphic=is_isomorphic(quo, direct),
        H_order=h,
        H_generators=class_coordinates(spec),
        order_identity=quo.order * h == n,
        kernel_matches=exactness_witness(spec, result),
    )


def pushforward_check(spec: OverringSpec, P: ClosedPoint, generators=None) -> bool:
    """P survives in R^W as a prime of its own.

    Its generator column is not deleted, and no prime of W lies inside P,
    so PS meets R in P again (the saturation of P by W-primes is P).
    """
    if P in spec.W:
        raise ValueError(f"{P.to_str()} is in W")
    if generators is not None and P not in generators:
        return False
    Pi = ideal_from_closed_point(spec.curve, P)
    for Q in spec.W:
        if _in_prime(ideal_from_closed_point(spec.curve, Q), Pi):
            return False
    return True


def monotonicity_check(small: OverringSpec, large: OverringSpec) -> bool:
    """W in W' implies |Pic(R^W')| divides |Pic(R^W)|."""
    if not set(small.W) <= set(large.W):
        raise ValueError("first W must be contained in the second")
    a, b = picard_quotient(small).order, picard_quotient(large).order
    return a % b == 0


def surviving_classes_generate(spec: OverringSpec) -> bool:
    """Every nonzero class of Pic(R^W) holds a surviving degree-1 prime.

    Then every subgroup of Pic(R^W) is generated by prime classes.
    """
    E = spec.curve
    mw = group_structure(E)
    Q = quotient(mw.group, class_coordinates(spec))
    removed = set(spec.W)
    from .curve_ring import closed_points_of_degree

    hit = set()
    for P in closed_points_of_degree(E, 1):
        if P not in removed:
            hit.add(Q.project(mw.coords[class_of(E, P)]))
    zero = Q.group.zero()
    need = {tuple(e) for e in Q.group.elements()} - {zero}
    return need <= hit
