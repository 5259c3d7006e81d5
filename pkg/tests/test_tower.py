from fractions import Fraction

import pytest

from classforge.algebra.fields import QQ
from classforge.algebra.poly import Poly
from classforge.elliptic import O, e0_curve, enumerate_points
from classforge.tower import (
    DecompositionError,
    TowerBaseError,
    TowerGroupElement,
    compose,
    constant_point,
    decompose,
    e0_descriptor,
    ff_add,
    ff_mul,
    ff_neg,
    function_field,
    generic_point,
    generic_point_has_infinite_order,
    multiplication_x,
    on_curve,
    tower_group,
)
from conftest import make_curve

E0 = e0_curve()
E7 = make_curve(7, (1, 0, 1, 1, 3))
E11 = make_curve(11, (0, 0, 0, 1, 1))


def _qq(*cs):
    return Poly(QQ, [Fraction(c) for c in cs])


def test_generic_point_plus_origin():
    G = generic_point(E0)
    assert ff_add(E0, G, O) == G
    assert on_curve(E0, G)


def test_generic_point_plus_inverse():
    G = generic_point(E0)
    K = function_field(E0)
    inv = type(G)(K.x, K.sub(K.neg(K.y), K.embed(E0.a3)))
    assert ff_add(E0, G, inv) == O


def test_duplication_formula():
    # textbook x(2P) = (x^4 - b4 x^2 - 2 b6 x - b8) / (4x^3 + b2 x^2 + 2 b4 x + b6)
    # with b2 = 0, b4 = -98, b6 = -343, b8 = -2401 for E0, made monic below
    P2 = ff_add(E0, generic_point(E0), generic_point(E0))
    assert P2.x.b.is_zero()
    assert P2.x.a == _qq(Fraction(2401, 4), Fraction(343, 2), Fraction(49, 2), 0, Fraction(1, 4))
    assert P2.x.c == _qq(Fraction(-343, 4), -49, 0, 1)
    assert on_curve(E0, P2)


@pytest.mark.parametrize("m", [1, 2, 3, 4])
def test_degree_law_and_division_polynomials(m):
    P = ff_mul(E0, m, generic_point(E0))
    num, den = multiplication_x(E0, m)
    assert (P.x.a, P.x.c) == (num, den)
    assert (num.deg, den.deg) == (m * m, m * m - 1)
    assert decompose(E0, P, 4) == (O, m)


def test_decompose_negative_multiples():
    P = ff_neg(E0, ff_mul(E0, 2, generic_point(E0)))
    assert decompose(E0, P, 4) == (O, -2)


def test_decompose_bound_exceeded():
    P = ff_mul(E0, 3, generic_point(E0))
    with pytest.raises(DecompositionError):
        decompose(E0, P, 2)


def test_decompose_rejects_off_curve_points():
    K = function_field(E0)
    with pytest.raises(ValueError):
        decompose(E0, type(O)(K.x, K.x), 4)


@pytest.mark.parametrize("E", [E7, E11], ids=["q7", "q11"])
def test_split_exactness_over_finite_fields(E):
    for c in enumerate_points(E)[:6]:
        for m in (-2, 0, 1, 3):
            assert decompose(E, compose(E, c, m), 4) == (c, m)


@pytest.mark.parametrize("E", [E7, E11], ids=["q7", "q11"])
def test_constant_points_agree_with_elliptic_add(E):
    pts = enumerate_points(E)
    for P in pts:
        for Q in pts[:5]:
            assert ff_add(E, constant_point(E, P), constant_point(E, Q)) == constant_point(E, E.add(P, Q))


def test_frobenius_endomorphism_is_detected():
    # the q-power Frobenius (x^q, y^q) is an isogeny of degree q, not a translate of [m]
    K = function_field(E7)
    X = K.pow(K.x, 7)
    Y = K.pow(K.y, 7)
    phi = type(O)(X, Y)
    assert on_curve(E7, phi)
    with pytest.raises(DecompositionError):
        decompose(E7, phi, 4)


def test_generic_point_has_infinite_order():
    assert generic_point_has_infinite_order(E0, 6)


def test_characteristic_two_rejected():
    with pytest.raises(ValueError):
        function_field(make_curve(4, (1, 0, 0, 0, 1)))


def test_tower_group_examples():
    assert tower_group(E0, 0).group.is_trivial
    one = tower_group(e0_descriptor(), 1)
    assert one.group.rank == 1 and one.concrete_generators == [generic_point(E0)]
    assert tower_group(E0, 3).generator_names == ["Q1", "Q2", "Q3"]


def test_tower_requires_e0():
    with pytest.raises(TowerBaseError):
        tower_group(E7, 1)
    with pytest.raises(TowerBaseError):
        tower_group({"field": "Q", "coefficients": [0, 0, 0, 1, 1]}, 1)


def test_tower_embedding_is_compatible():
    a = TowerGroupElement((2, -1))
    b = TowerGroupElement((0, 5))
    assert (a + b).embed() == a.embed() + b.embed()
    assert a.embed(4).coeffs == (2, -1, 0, 0)
    with pytest.raises(ValueError):
        a.embed(1)
    with pytest.raises(ValueError):
        TowerGroupElement((1,), constant=enumerate_points(E7)[1])


def test_level_one_element_is_concrete():
    assert TowerGroupElement((2,)).to_point() == ff_mul(E0, 2, generic_point(E0))
    with pytest.raises(ValueError):
        TowerGroupElement((1, 1)).to_point()
