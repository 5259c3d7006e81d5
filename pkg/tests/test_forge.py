import copy
import json

import pytest

from classforge.algebra.groups import is_isomorphic
from classforge.curve_ring import class_of, closed_points_up_to_degree
from classforge.elliptic import group_structure
from classforge.forge import (
    CERTIFICATE_FIELDS,
    CERTIFICATE_VERSION,
    NOT_REPLETE,
    REPLETE,
    TRUSTED_AXIOMS,
    UNKNOWN,
    CertificateFormatError,
    GroupSpec,
    nonsquare_witness,
    realize,
    realize_finite_demo,
    repleteness_check,
    replay_demo,
    verify_certificate,
    weak_repleteness_check,
)
from classforge.overring import OverringSpec
from conftest import SUITE, make_curve, suite_id

GROUPS = ["0", "Z/5", "Z/12", "Z/6+Z/15", "Z^2+Z/2+Z/4", "Z^10"]


@pytest.mark.parametrize("text", GROUPS)
def test_realize_and_verify(text):
    spec = GroupSpec.parse(text)
    cert = realize(spec)
    assert list(cert) == list(CERTIFICATE_FIELDS)
    assert cert["tower_height"] == spec.rank + len(spec.invariants)
    assert len(cert["removed_points"]) == 2 * len(cert["kill_generators"])
    rep = verify_certificate(json.loads(json.dumps(cert)))
    assert rep.passed, rep.to_json()


def test_certificate_shape_for_z6_z15():
    # Z/6 + Z/15 = Z/3 + Z/30, so two generators are killed inside Z^2
    cert = realize(GroupSpec.parse("Z/6+Z/15"))
    assert cert["kill_generators"] == [[3, 0], [0, 30]]
    assert cert["transcript"]["snf"]["smith_diagonal"] == [3, 30]
    assert [p["name"] for p in cert["removed_points"]] == ["3*Q1", "-3*Q1", "30*Q2", "-30*Q2"]


def test_axioms_block_is_exactly_two_citations():
    cert = realize(GroupSpec(1))
    assert cert["axioms"] == [dict(a) for a in TRUSTED_AXIOMS]
    assert len(cert["axioms"]) == 2


def test_wrong_kill_matrix_fails_at_snf():
    cert = realize(GroupSpec(0, (4,)))
    cert["kill_generators"] = [[3]]
    rep = verify_certificate(cert)
    assert not rep.passed and rep.first_failure == "snf"


@pytest.mark.parametrize(
    "mutate,step",
    [
        (lambda c: c["removed_points"].pop(), "sigma_stable"),
        (lambda c: c["removed_points"][0].update(name="Q7"), "names"),
        (lambda c: c["axioms"].append({"statement": "x", "citation": "y"}), "axioms"),
        (lambda c: c["base"].update(j_invariant="0"), "base"),
        (lambda c: c.update(tower_height=4), "tower_height"),
    ],
)
def test_tampering_names_the_failing_step(mutate, step):
    cert = copy.deepcopy(realize(GroupSpec(1, (2, 4))))
    mutate(cert)
    assert verify_certificate(cert).first_failure == step


def test_format_errors():
    cert = realize(GroupSpec(0, (5,)))
    bad = dict(cert, version="classforge-certificate/0")
    with pytest.raises(CertificateFormatError):
        verify_certificate(bad)
    reordered = {k: cert[k] for k in reversed(list(cert))}
    with pytest.raises(CertificateFormatError):
        verify_certificate(reordered)
    with pytest.raises(CertificateFormatError):
        verify_certificate([cert])
    assert cert["version"] == CERTIFICATE_VERSION


def test_group_spec_normalization():
    assert GroupSpec.parse("Z/6+Z/15").invariants == (3, 30)
    assert GroupSpec.parse("Z^2").is_finite is False
    assert GroupSpec.parse("0").group.is_trivial
    with pytest.raises(ValueError):
        GroupSpec(0, (1,))
    with pytest.raises(ValueError):
        GroupSpec(-1)


def test_height_bound():
    with pytest.raises(ValueError):
        realize(GroupSpec(5), bound=4)


@pytest.mark.parametrize("text,q", [("0", 3), ("Z/3", 7), ("Z/2+Z/2", 7), ("Z/5", 5)])
def test_finite_demo(text, q):
    spec = GroupSpec.parse(text)
    demo = realize_finite_demo(spec, q)
    assert demo is not None and demo.q <= q
    assert is_isomorphic(demo.quotient, spec.group) and is_isomorphic(demo.direct, spec.group)
    assert demo.quadratic["subring"]["pid_verified"]
    block = json.loads(json.dumps(demo.to_json()))
    assert all(ok for _, ok, _ in replay_demo(block, spec.group))


def test_demo_for_z12_over_f7():
    spec = GroupSpec(0, (12,))
    demo = realize_finite_demo(spec, 7)
    assert (demo.q, demo.curve.a4, demo.curve.a6) == (7, 3, 1)
    cert = realize(spec, demo_q_max=7)
    rep = verify_certificate(cert)
    assert rep.passed and any(n == "demo.picard_direct" for n, _, _ in rep.steps)


def test_no_demo_for_infinite_or_wide_groups():
    assert realize_finite_demo(GroupSpec(1), 7) is None
    assert realize_finite_demo(GroupSpec(0, (2, 2, 2)), 7) is None


def test_tampered_demo_is_caught():
    cert = realize(GroupSpec(0, (3,)), demo_q_max=7)
    # the demo inverts one 2-torsion prime on a curve with E(F_5) = Z/6
    assert cert["demo"]["removed_points"] == ["(4,0)"]
    cert["demo"]["removed_points"] = []
    assert verify_certificate(cert).first_failure == "demo.picard_quotient"


@pytest.mark.parametrize("row", SUITE, ids=suite_id)
def test_weak_repleteness(row):
    E = make_curve(row[0], row[1])
    rep = weak_repleteness_check(E)
    assert rep.passed and not rep.missing and not rep.duplicates
    assert len(rep.table) == row[2] - 1


def test_weak_repleteness_for_an_overring():
    E = make_curve(7, (0, 0, 0, 6, 0))
    W = tuple(closed_points_up_to_degree(E, 1)[:2])
    assert weak_repleteness_check(E, OverringSpec(E, W)).overring_ok


@pytest.mark.parametrize("row", [r for r in SUITE if r[0] % 2], ids=suite_id)
def test_repleteness_with_nonsquare(row):
    E = make_curve(row[0], row[1])
    x0 = nonsquare_witness(E)
    v = repleteness_check(E, 3)
    if x0 is None:
        return
    assert v.verdict == REPLETE and v.trivial_class_witness is not None
    mw = group_structure(E)
    assert len(v.witnesses) == len(mw.coords)
    for c, P in v.witnesses.items():
        assert repr(class_of(E, next(Q for Q in closed_points_up_to_degree(E, 3) if Q.to_str() == P))) == c


def test_degree_one_alone_misses_the_trivial_class():
    # every degree-1 prime has a nonzero class, so O needs degree >= 2
    E = make_curve(5, (0, 0, 0, 1, 1))
    v = repleteness_check(E, 1)
    assert v.verdict == UNKNOWN and v.unrepresented == ["O"]


def test_algebraically_closed_flag():
    v = repleteness_check(make_curve(5, (0, 0, 0, 1, 1)), 3, algebraically_closed=True)
    assert v.verdict == NOT_REPLETE


def test_nonsquare_witness_definition():
    E = make_curve(7, (0, 0, 0, 1, 3))
    x0 = nonsquare_witness(E)
    F = E.field
    g = F.add(F.add(F.mul(F.mul(x0, x0), x0), x0), 3)
    assert not F.is_square(g)
    assert all(F.is_square(F.add(F.add(F.mul(F.mul(x, x), x), x), 3)) for x in range(x0))
