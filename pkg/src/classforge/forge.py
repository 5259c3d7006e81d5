"""Realization certificates for finitely generated abelian groups.

For A = Z^r + Z/d_1 + ... + Z/d_t put n = r + t and take the tower level
E_0(K_n) = Z^n.  Killing H = <d_i e_{r+i}> by inverting the primes of the
points d_i Q_{r+i} and their negatives leaves Pic = Z^n / H = A.  The
certificate records this data, recomputes the Smith form, and can carry a
finite-field instance in which every link is computed with ideals.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction

from .algebra.fields import finite_field, prime_power
from .algebra.groups import FgAbelianGroup, group_from_presentation, is_isomorphic, parse_group, quotient
from .algebra.intmat import smith_diagonal
from .curve_ring import class_of, closed_points_of_degree, closed_points_up_to_degree, parse_closed_point, sigma_point
from .elliptic import SingularCurveError, WeierstrassCurve, curve_to_str, e0_curve, group_structure, parse_curve
from .overring import OverringSpec, picard_direct, picard_quotient, surviving_classes_generate
from .quadratic import integral_closure_certificate, invariant_subring, is_sigma_stable
from .tower import e0_descriptor, tower_group

CERTIFICATE_VERSION = "classforge-certificate/1"
CERTIFICATE_FIELDS = (
    "version",
    "base",
    "tower_height",
    "kill_generators",
    "removed_points",
    "sigma_stable",
    "target",
    "axioms",
    "transcript",
)
TRUSTED_AXIOMS = (
    {"statement": "E0(Q) = 0", "citation": "Kolyvagin, Theorem H"},
    {
        "statement": "End(E0) = Z",
        "citation": "E0 has non-integral j-invariant 2^12*3^3/37, hence no complex multiplication",
    },
)
DEFAULT_HEIGHT_BOUND = 64


class CertificateFormatError(ValueError):
    pass


@dataclass(frozen=True)
class GroupSpec:
    rank: int = 0
    torsion: tuple[int, ...] = ()

    def __post_init__(self):
        if self.rank < 0:
            raise ValueError("free rank must be non-negative")
        t = tuple(int(d) for d in self.torsion)
        if any(d < 2 for d in t):
            raise ValueError(f"torsion orders must be at least 2, got {t}")
        object.__setattr__(self, "torsion", t)

    @classmethod
    def parse(cls, text: str) -> "GroupSpec":
        r, tors = parse_group(text)
        return cls(r, tuple(tors))

    @property
    def group(self) -> FgAbelianGroup:
        return FgAbelianGroup.from_orders(self.rank, self.torsion)

    @property
    def invariants(self) -> tuple[int, ...]:
        return self.group.invariants

    @property
    def is_finite(self) -> bool:
        return self.rank == 0

    def __str__(self):
        return str(self.group)


# -- realization over the tower --------------------------------------------------


def _kill_generators(rank: int, invariants) -> list[list[int]]:
    n = rank + len(invariants)
    return [[d if j == rank + i else 0 for j in range(n)] for i, d in enumerate(invariants)]


def _point_name(vec) -> str:
    terms = [f"{c}*Q{i + 1}" for i, c in enumerate(vec) if c]
    return " + ".join(terms) if terms else "O"


def _snf_transcript(n: int, rows) -> dict:
    pres = group_from_presentation(n, rows)
    diag = smith_diagonal(rows) if rows else []
    return {"relation_matrix": [list(r) for r in rows], "smith_diagonal": diag, "quotient": pres.group.to_json()}


def realize(spec: GroupSpec, bound: int = DEFAULT_HEIGHT_BOUND, demo_q_max: int | None = None) -> dict:
    """Certificate realizing spec as Pic of an overring of E_0 over K_n."""
    inv = spec.invariants
    r = spec.rank
    n = r + len(inv)
    if n > bound:
        raise ValueError(f"tower height {n} exceeds the bound {bound}")
    tower = tower_group(e0_descriptor(), n)
    H = _kill_generators(r, inv)
    removed = []
    for v in H:
        removed.append({"name": _point_name(v), "vector": list(v)})
        neg = [-c for c in v]
        removed.append({"name": _point_name(neg), "vector": neg})
    pairs = [[removed[2 * i]["name"], removed[2 * i + 1]["name"]] for i in range(len(H))]
    transcript = {
        "tower_group": tower.to_json(),
        "snf": _snf_transcript(n, H),
        "isomorphic_to_target": True,
        "quadratic": {
            "sigma_orbits": pairs,
            "invariant_subring": "k[x] with the x-coordinates of the removed points inverted",
        },
    }
    cert = {
        "version": CERTIFICATE_VERSION,
        "base": e0_descriptor(),
        "tower_height": n,
        "kill_generators": H,
        "removed_points": removed,
        "sigma_stable": True,
        "target": spec.group.to_json(),
        "axioms": [dict(a) for a in TRUSTED_AXIOMS],
        "transcript": transcript,
    }
    if demo_q_max is not None:
        demo = realize_finite_demo(spec, demo_q_max)
        if demo is not None:
            cert["demo"] = demo.to_json()
    return cert


# -- finite-field instances -----------------------------------------------------


@dataclass
class FiniteDemo:
    curve: WeierstrassCurve
    q: int
    W: tuple
    quotient: FgAbelianGroup
    direct: FgAbelianGroup
    quadratic: dict = field(default_factory=dict)

    def to_json(self):
        return {
            "q": self.q,
            "curve": curve_to_str(self.curve),
            "removed_points": [P.to_str() for P in self.W],
            "group": group_structure(self.curve).group.to_json(),
            "picard_quotient": self.quotient.to_json(),
            "picard_direct": self.direct.to_json(),
            "quadratic": self.quadratic,
        }


def _short_curves(F):
    for A in range(F.q):
        for B in range(F.q):
            try:
                yield WeierstrassCurve(F, F.zero, F.zero, F.zero, A, B)
            except SingularCurveError:
                continue


def _subgroups(G: FgAbelianGroup):
    """Subgroups of a finite group of rank <= 2, each once, as element sets."""
    elems = [tuple(e) for e in G.elements()]
    seen = set()
    for g1, g2 in itertools.combinations_with_replacement(elems, 2):
        span = set()
        for a in range(G.element_order(g1) or 1):
            for b in range(G.element_order(g2) or 1):
                span.add(G.normalize([a * x + b * y for x, y in zip(g1, g2)]))
        key = frozenset(span)
        if key not in seen:
            seen.add(key)
            yield (g1, g2), key


def _quadratic_block(spec: OverringSpec) -> dict:
    desc = invariant_subring(spec)
    ic = integral_closure_certificate(spec)
    return {"subring": desc.to_json(), "integral_closure": ic.to_json()}


def realize_finite_demo(spec: GroupSpec, q_max: int) -> FiniteDemo | None:
    """First (q, curve, W) in lexicographic order with Pic(R^W) = spec.

    q runs over odd prime powers up to q_max and curves over y^2 = x^3 + A x + B.
    W is the set of degree-1 primes whose classes lie in a subgroup H of
    E(F_q) with E(F_q)/H = spec; H = -H makes W sigma-stable.
    """
    if not spec.is_finite or len(spec.invariants) > 2:
        return None
    target = spec.group
    for q in range(3, q_max + 1, 2):
        try:
            prime_power(q)
        except ValueError:
            continue
        F = finite_field(q)
        for E in _short_curves(F):
            mw = group_structure(E)
            G = mw.group
            if G.order % target.order:
                continue
            for gens, H in _subgroups(G):
                if not is_isomorphic(quotient(G, gens).group, target):
                    continue
                W = tuple(P for P in closed_points_of_degree(E, 1) if mw.coords[class_of(E, P)] in H)
                ospec = OverringSpec(E, W)
                quo, direct = picard_quotient(ospec), picard_direct(ospec)
                if is_isomorphic(quo, target) and is_isomorphic(direct, target) and is_sigma_stable(ospec):
                    return FiniteDemo(E, q, ospec.W, quo, direct, _quadratic_block(ospec))
    return None


def replay_demo(block: dict, target: FgAbelianGroup) -> list[tuple[str, bool, str]]:
    """Recompute every link of a demo block; returns named step results."""
    steps = []
    F = finite_field(int(block["q"]))
    E = parse_curve(block["curve"], F)
    W = tuple(parse_closed_point(E, s) for s in block["removed_points"])
    ospec = OverringSpec(E, W)
    G = group_structure(E).group
    steps.append(("demo.group", G.to_json() == block["group"], str(G)))
    quo = picard_quotient(ospec)
    steps.append(("demo.picard_quotient", is_isomorphic(quo, target), str(quo)))
    direct = picard_direct(ospec)
    steps.append(("demo.picard_direct", is_isomorphic(direct, target), str(direct)))
    steps.append(("demo.sigma_stable", is_sigma_stable(ospec), ""))
    if F.char != 2:
        desc = invariant_subring(ospec)
        steps.append(("demo.pid", desc.pid_verified, ",".join(p.to_str() for p in desc.X)))
        ic = integral_closure_certificate(ospec)
        steps.append(("demo.integral_closure", ic.passed, ""))
    return steps


# -- verification -----------------------------------------------------------------


@dataclass
class VerificationReport:
    steps: list[tuple[str, bool, str]]

    @property
    def passed(self) -> bool:
        return all(ok for _, ok, _ in self.steps)

    @property
    def first_failure(self) -> str | None:
        return next((name for name, ok, _ in self.steps if not ok), None)

    def to_json(self):
        return {
            "passed": self.passed,
            "first_failure": self.first_failure,
            "steps": [{"step": n, "ok": ok, "detail": d} for n, ok, d in self.steps],
        }


def _check_format(cert) -> None:
    if not isinstance(cert, dict):
        raise CertificateFormatError("certificate must be a JSON object")
    if cert.get("version") != CERTIFICATE_VERSION:
        raise CertificateFormatError(f"unknown certificate version {cert.get('version')!r}")
    keys = list(cert)
    expected = list(CERTIFICATE_FIELDS) + (["demo"] if "demo" in cert else [])
    if keys != expected:
        raise CertificateFormatError(f"certificate fields {keys} do not match {expected}")


def verify_certificate(cert: dict) -> VerificationReport:
    """Re-derive every machine-checkable claim; stops at the first failure."""
    _check_format(cert)
    steps: list[tuple[str, bool, str]] = []

    def step(name, ok, detail=""):
        steps.append((name, bool(ok), detail))
        return ok

    E0 = e0_curve()
    base = cert["base"]
    coeffs_ok = [Fraction(c) for c in base.get("coefficients", [])] == [E0.a1, E0.a2, E0.a3, E0.a4, E0.a6]
    j = E0.j_invariant()
    if not step("base", coeffs_ok and base.get("j_invariant") == str(j) and j.denominator != 1, str(j)):
        return VerificationReport(steps)

    n = cert["tower_height"]
    H = cert["kill_generators"]
    try:
        target = FgAbelianGroup.from_json(cert["target"])
        tower = tower_group(base, n)
    except (KeyError, TypeError, ValueError) as exc:
        raise CertificateFormatError(str(exc)) from exc
    if not step("tower_height", all(len(v) == n for v in H) and tower.group.rank == n, f"n = {n}"):
        return VerificationReport(steps)

    pres = group_from_presentation(n, H).group
    if not step("snf", is_isomorphic(pres, target), f"Z^{n}/H = {pres}, target {target}"):
        return VerificationReport(steps)

    vecs = [tuple(p["vector"]) for p in cert["removed_points"]]
    closed = set(vecs) == {tuple(-c for c in v) for v in vecs}
    if not step("sigma_stable", closed and cert["sigma_stable"] is True, f"{len(vecs)} removed points"):
        return VerificationReport(steps)
    # W and H generate the same subgroup of Z^n
    same = group_from_presentation(n, list(H) + [list(v) for v in vecs]).group == pres and all(
        group_from_presentation(n, [list(v) for v in vecs] + [list(h)]).group
        == group_from_presentation(n, [list(v) for v in vecs]).group
        for h in H
    )
    if not step("removed_points_generate_H", same):
        return VerificationReport(steps)
    if not step("names", all(p["name"] == _point_name(p["vector"]) for p in cert["removed_points"])):
        return VerificationReport(steps)

    if not step("axioms", cert["axioms"] == [dict(a) for a in TRUSTED_AXIOMS], "two cited facts"):
        return VerificationReport(steps)

    orbits = cert["transcript"].get("quadratic", {}).get("sigma_orbits", [])
    names = {p["name"] for p in cert["removed_points"]}
    paired = {x for pair in orbits for x in pair}
    if not step("quadratic", paired == names and all(len(p) == 2 for p in orbits)):
        return VerificationReport(steps)

    if "demo" in cert:
        for name, ok, detail in replay_demo(cert["demo"], target):
            if not step(name, ok, detail):
                return VerificationReport(steps)
    return VerificationReport(steps)


# -- repleteness ------------------------------------------------------------------


@dataclass
class WeakRepletenessReport:
    passed: bool
    table: list[tuple[str, str]]
    missing: list[str]
    duplicates: list[str]
    overring_ok: bool | None = None

    def to_json(self):
        return {
            "passed": self.passed,
            "table": [list(t) for t in self.table],
            "missing": self.missing,
            "duplicates": self.duplicates,
            "overring_ok": self.overring_ok,
        }


def weak_repleteness_check(E, spec: OverringSpec | None = None) -> WeakRepletenessReport:
    """Degree-1 prime classes are exactly E(F_q) minus O, one prime per class.

    Each subgroup <P> is then generated by the single prime over P.  With an
    overring spec, also check the surviving primes cover every nonzero class
    of Pic(R^W).
    """
    pts = closed_points_of_degree(E, 1)
    classes = [class_of(E, P) for P in pts]
    table = [(P.to_str(), repr(c)) for P, c in zip(pts, classes)]
    mw = group_structure(E)
    nonzero = {P for P in mw.coords if not P.is_infinity}
    seen, dups = set(), []
    for c in classes:
        if c in seen:
            dups.append(repr(c))
        seen.add(c)
    missing = sorted(repr(P) for P in nonzero - seen)
    passed = not missing and not dups and seen == nonzero
    over = None
    if spec is not None:
        over = surviving_classes_generate(spec)
        passed &= over
    return WeakRepletenessReport(passed, table, missing, dups, over)


REPLETE = "replete-with-witnesses"
UNKNOWN = "unknown-at-bound"
NOT_REPLETE = "not-replete"


@dataclass
class RepletenessVerdict:
    verdict: str
    witnesses: dict
    unrepresented: list[str]
    nonsquare_x0: object = None
    trivial_class_witness: str | None = None

    def to_json(self):
        return {
            "verdict": self.verdict,
            "witnesses": self.witnesses,
            "unrepresented": self.unrepresented,
            "nonsquare_x0": self.nonsquare_x0,
            "trivial_class_witness": self.trivial_class_witness,
        }


def nonsquare_witness(E):
    """Least x0 in F_q over which the x-fibre is inert (odd q), else None.

    Completing the square, y is F_q-rational over x0 iff 4 g(x0) + h(x0)^2 is
    a square.
    """
    F = E.field
    if F.char == 2:
        return None
    for x0 in F.elements():
        x2 = F.mul(x0, x0)
        g = F.add(F.add(F.mul(x2, x0), F.mul(E.a2, x2)), F.add(F.mul(E.a4, x0), E.a6))
        h = F.add(F.mul(E.a1, x0), E.a3)
        disc = F.add(F.mul(F.from_int(4), g), F.mul(h, h))
        if not F.is_square(disc):
            return x0
    return None


def repleteness_check(E, D: int, algebraically_closed: bool = False) -> RepletenessVerdict:
    """Find a prime of degree <= D in every class of E(F_q), including O."""
    if algebraically_closed:
        return RepletenessVerdict(NOT_REPLETE, {}, ["O"])
    mw = group_structure(E)
    witnesses = {}
    for P in closed_points_up_to_degree(E, D, max_degree=max(D, 1)):
        c = class_of(E, P)
        witnesses.setdefault(c, P)
    out = {repr(c): P.to_str() for c, P in witnesses.items()}
    missing = sorted(repr(c) for c in mw.coords if c not in witnesses)
    x0 = nonsquare_witness(E)
    trivial = None
    if x0 is not None:
        inert = parse_closed_point(E, f"[x-{x0}; inert]")
        # Frobenius swaps (x0, y) and its negative, so the orbit sums to O
        if class_of(E, inert).is_infinity and sigma_point(E, inert) == inert:
            trivial = inert.to_str()
    verdict = REPLETE if not missing else UNKNOWN
    return RepletenessVerdict(verdict, out, missing, x0, trivial)


__all__ = [
    "CERTIFICATE_VERSION",
    "CertificateFormatError",
    "GroupSpec",
    "realize",
    "FiniteDemo",
    "realize_finite_demo",
    "replay_demo",
    "VerificationReport",
    "verify_certificate",
    "WeakRepletenessReport",
    "weak_repleteness_check",
    "RepletenessVerdict",
    "repleteness_check",
    "nonsquare_witness",
    "REPLETE",
    "UNKNOWN",
    "NOT_REPLETE",
]
