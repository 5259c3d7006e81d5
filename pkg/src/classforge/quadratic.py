"""The involution sigma, its fixed subring, and the integral-closure checks.

For W closed under sigma, R^W is a quadratic extension of
S = F_q[x][1/p : p in X], where X collects the x-minimal polynomials of W.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .algebra.poly import FqRational, Poly, factor, is_irreducible, monic_irreducibles
from .curve_ring import RingElement, class_of, closed_points_of_degree, curve_polys, norm, sigma_point
from .curve_ring import sigma as _ring_sigma
from .ideal_class import primes_above
from .overring import OverringSpec


class CharacteristicTwoError(ValueError):
    pass


def _require_odd(E):
    if E.field.char == 2:
        raise CharacteristicTwoError("the quadratic endgame needs odd characteristic")


def sigma(E, f: RingElement) -> RingElement:
    """y -> -y - a1 x - a3, odd characteristic only."""
    _require_odd(E)
    return _ring_sigma(E, f)


def is_sigma_fixed(E, f: RingElement) -> bool:
    return sigma(E, f) == f


def is_sigma_stable(spec: OverringSpec) -> bool:
    W = set(spec.W)
    return all(sigma_point(spec.curve, P) in W for P in spec.W)


@dataclass
class InvariantSubringDescriptor:
    spec: OverringSpec
    X: tuple[Poly, ...]
    fibres_complete: bool
    principal_generators: list[tuple[str, str]] = field(default_factory=list)
    pid_verified: bool = False

    def to_json(self):
        return {
            "X": [p.to_str() for p in self.X],
            "fibres_complete": self.fibres_complete,
            "pid_verified": self.pid_verified,
            "principal_generators": [list(t) for t in self.principal_generators],
        }


def invariant_subring(spec: OverringSpec, check_degree: int = 2) -> InvariantSubringDescriptor:
    """Descriptor of S = (R^W)^sigma = F_q[x][X^-1].

    Every prime of S is p S for a monic irreducible p outside X, so S is a
    PID; this is recorded by listing the generator p of each surviving prime
    of degree <= check_degree and checking it is monic irreducible outside X.
    """
    E = spec.curve
    _require_odd(E)
    if not is_sigma_stable(spec):
        raise ValueError("W is not sigma-stable")
    X = tuple(sorted({P.minpoly for P in spec.W}, key=Poly.sortkey))
    # each fibre over X lies entirely in W, so R^W = R[1/p : p in X]
    W = set(spec.W)
    complete = all(set(primes_above(E, p)) <= W for p in X)
    gens = []
    ok = True
    for d in range(1, check_degree + 1):
        for p in monic_irreducibles(E.field, d):
            if p in X:
                continue
            # p S is a nonzero prime of S generated by the monic irreducible p
            ok &= p.is_monic() and is_irreducible(p)
            gens.append((f"({p.to_str()})", p.to_str()))
    return InvariantSubringDescriptor(spec, X, complete, gens, ok and complete)


def _in_S(r: FqRational, X) -> bool:
    """Rational function in x with denominator supported on X."""
    den = r.den
    for p, _ in factor(den) if den.deg > 0 else []:
        if p not in X:
            return False
    return True


def _trace_norm(E, a: Poly, b: Poly, c: Poly):
    h, g = curve_polys(E)
    tr = FqRational(a + a - b * h, c)
    nm = FqRational(norm(E, RingElement(a, b)) if (a or b) else Poly.zero(E.field), c * c)
    return tr, nm


@dataclass
class IntegralClosureReport:
    checks: list[dict]
    passed: bool

    def to_json(self):
        return {"passed": self.passed, "checks": self.checks}


def integral_closure_certificate(spec: OverringSpec) -> IntegralClosureReport:
    """Trace and norm of the generators 1, y, 1/p, y/p (p in X) lie in S."""
    E = spec.curve
    desc = invariant_subring(spec)
    F = E.field
    one, zero = Poly.one(F), Poly.zero(F)
    items = [("1", one, zero, one), ("y", zero, one, one)]
    for p in desc.X:
        items.append((f"1/({p.to_str()})", one, zero, p))
        items.append((f"y/({p.to_str()})", zero, one, p))
    checks = []
    passed = True
    for name, a, b, c in items:
        tr, nm = _trace_norm(E, a, b, c)
        t_ok, n_ok = _in_S(tr, desc.X), _in_S(nm, desc.X)
        passed &= t_ok and n_ok
        checks.append({"element": name, "trace": repr(tr), "norm": repr(nm), "trace_in_S": t_ok, "norm_in_S": n_ok})
    passed &= desc.fibres_complete
    return IntegralClosureReport(checks, passed)


def inversion_check(E) -> bool:
    """class_of(P) + class_of(sigma P) = O for every degree-1 prime."""
    for P in closed_points_of_degree(E, 1):
        s = E.add(class_of(E, P), class_of(E, sigma_point(E, P)))
        if not s.is_infinity:
            return False
    return True
