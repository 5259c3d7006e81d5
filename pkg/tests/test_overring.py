import random

import pytest

from classforge.algebra.groups import FgAbelianGroup, is_isomorphic
from classforge.curve_ring import closed_points_of_degree, closed_points_up_to_degree, parse_closed_point
from classforge.elliptic import group_structure
from classforge.overring import (
    H_order,
    OverringSpec,
    _cached_bruteforce,
    exactness_witness,
    monotonicity_check,
    overring_report,
    picard_direct,
    picard_quotient,
    pushforward_check,
    surviving_classes_generate,
)
from conftest import SMALL, make_curve, suite_id

E5 = make_curve(5, (0, 0, 0, 1, 1))
E7 = make_curve(7, (0, 0, 0, 6, 0))


def test_empty_w_gives_the_full_group():
    spec = OverringSpec(E5)
    assert picard_quotient(spec) == group_structure(E5).group
    assert picard_direct(spec) == group_structure(E5).group


def test_removing_a_generator_kills_a_cyclic_group():
    P = parse_closed_point(E5, "(0,1)")  # class of order 9
    spec = OverringSpec(E5, (P,))
    assert picard_quotient(spec).is_trivial
    assert picard_direct(spec).is_trivial
    assert H_order(spec) == 9


def test_example_from_mixed_degrees():
    W = (closed_points_of_degree(E7, 1)[0], closed_points_of_degree(E7, 2)[0])
    rep = overring_report(OverringSpec(E7, W))
    assert rep.isomorphic and rep.order_identity and rep.kernel_matches


@pytest.mark.parametrize("row", SMALL, ids=suite_id)
def test_random_w_exact_sequence(row):
    E = make_curve(row[0], row[1])
    rng = random.Random(row[0] * 1000 + sum(row[1]))
    pts = closed_points_up_to_degree(E, 2)
    n = len(group_structure(E).coords)
    for _ in range(4):
        W = tuple(rng.sample(pts, rng.randint(0, min(3, len(pts)))))
        spec = OverringSpec(E, W)
        rep = overring_report(spec)
        assert rep.isomorphic
        assert rep.quotient.order * rep.H_order == n
        assert rep.kernel_matches


def test_exactness_witness_rejects_wrong_relations():
    res = _cached_bruteforce(E7, 1, None)
    spec = OverringSpec(E7, (closed_points_of_degree(E7, 1)[0],))
    assert exactness_witness(spec, res)
    from dataclasses import replace

    broken = replace(res, relations=res.relations[:-2] + [[1] + [0] * (len(res.generators) - 1)])
    assert not exactness_witness(spec, broken)


def test_duplicates_and_foreign_points_rejected():
    P = closed_points_of_degree(E5, 1)[0]
    with pytest.raises(ValueError):
        OverringSpec(E5, (P, P))
    with pytest.raises(ValueError):
        OverringSpec(E7, (P,))


def test_pushforward_of_surviving_primes():
    pts = closed_points_of_degree(E7, 1)
    spec = OverringSpec(E7, pts[:2])
    for P in pts[2:]:
        assert pushforward_check(spec, P)
    with pytest.raises(ValueError):
        pushforward_check(spec, pts[0])


def test_monotonicity():
    pts = closed_points_of_degree(E7, 1)
    small, large = OverringSpec(E7, pts[:1]), OverringSpec(E7, pts[:3])
    assert monotonicity_check(small, large)
    with pytest.raises(ValueError):
        monotonicity_check(large, small)


@pytest.mark.parametrize("row", SMALL, ids=suite_id)
def test_surviving_classes_generate_every_subgroup(row):
    E = make_curve(row[0], row[1])
    pts = closed_points_of_degree(E, 1)
    for k in range(min(3, len(pts)) + 1):
        assert surviving_classes_generate(OverringSpec(E, pts[:k]))


def test_quotient_of_two_generator_group():
    # E(F_7) = Z/2 + Z/4 for y^2 = x^3 + 6x; killing a point of order 2 in the
    # big factor leaves a group of order 4
    mw = group_structure(E7)
    Q2 = mw.point_of((0, 2))
    P = next(p for p in closed_points_of_degree(E7, 1) if p.as_point() == Q2)
    spec = OverringSpec(E7, (P,))
    assert is_isomorphic(picard_quotient(spec), FgAbelianGroup(0, (2, 2)))
    assert is_isomorphic(picard_direct(spec), FgAbelianGroup(0, (2, 2)))
