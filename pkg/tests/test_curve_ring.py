import pytest
from hypothesis import given
from hypothesis import strategies as st

from classforge.algebra.poly import Poly
from classforge.curve_ring import (
    RingElement,
    class_of,
    closed_points_of_degree,
    closed_points_up_to_degree,
    norm,
    parse_closed_point,
    pole_order,
    ring_mul,
    sigma,
    sigma_point,
)
from classforge.elliptic import O, group_structure
from conftest import SMALL, SUITE, make_curve, suite_id

CURVES = [make_curve(q, a) for q, a, *_ in SUITE[:9]]


@st.composite
def ring_elements(draw, E=None):
    E = E or draw(st.sampled_from(CURVES))
    q = E.field.q
    a = draw(st.lists(st.integers(0, q - 1), max_size=5))
    b = draw(st.lists(st.integers(0, q - 1), max_size=4))
    return E, RingElement(Poly(E.field, a), Poly(E.field, b))


@given(ring_elements(), st.data())
def test_norm_is_multiplicative(ef, data):
    E, f = ef
    _, g = data.draw(ring_elements(E))
    if f.is_zero() or g.is_zero():
        return
    assert norm(E, ring_mul(E, f, g)) == norm(E, f) * norm(E, g)


@given(ring_elements())
def test_norm_degree_law(ef):
    E, f = ef
    if f.is_zero():
        return
    da = 2 * f.a.deg if f.a else -1
    db = 2 * f.b.deg + 3 if f.b else -1
    assert norm(E, f).deg == max(da, db) == pole_order(f)


@given(ring_elements())
def test_sigma_is_an_involution_preserving_norm(ef):
    E, f = ef
    assert sigma(E, sigma(E, f)) == f
    if not f.is_zero():
        assert norm(E, sigma(E, f)) == norm(E, f)


@pytest.mark.parametrize("row", [r for r in SUITE if r[4] is not None], ids=suite_id)
def test_closed_point_counts_match_quadratic_extension(row):
    q, a, n, _, n2 = row
    E = make_curve(q, a)
    d1, d2 = closed_points_of_degree(E, 1), closed_points_of_degree(E, 2)
    assert len(d1) == n - 1
    assert len(d1) + 2 * len(d2) + 1 == n2


@pytest.mark.parametrize("row", SMALL, ids=suite_id)
def test_classes_of_degree_one_points(row):
    E = make_curve(row[0], row[1])
    pts = closed_points_of_degree(E, 1)
    classes = {class_of(E, P) for P in pts}
    assert O not in classes and len(classes) == len(pts)


@pytest.mark.parametrize("row", SMALL, ids=suite_id)
def test_sigma_point_is_negation_of_class(row):
    E = make_curve(row[0], row[1])
    for P in closed_points_up_to_degree(E, 2):
        assert class_of(E, sigma_point(E, P)) == E.neg(class_of(E, P))


@pytest.mark.parametrize("row", SMALL, ids=suite_id)
def test_text_round_trip(row):
    E = make_curve(row[0], row[1])
    for P in closed_points_up_to_degree(E, 2):
        assert parse_closed_point(E, P.to_str()) == P


def test_closed_point_syntax_examples():
    E = make_curve(5, (0, 0, 0, 1, 1))
    P = parse_closed_point(E, "(0,1)")
    assert P.degree == 1 and class_of(E, P) in group_structure(E).coords
    with pytest.raises(ValueError):
        parse_closed_point(E, "(0,2)")
    with pytest.raises(ValueError):
        parse_closed_point(E, "<0,1>")


def test_degree_bound_is_enforced():
    E = make_curve(5, (0, 0, 0, 1, 1))
    with pytest.raises(ValueError):
        closed_points_up_to_degree(E, 5)
