import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from classforge.algebra.groups import is_isomorphic
from classforge.algebra.poly import Poly, monic_irreducibles
from classforge.curve_ring import (
    RingElement,
    class_of,
    closed_points_of_degree,
    closed_points_up_to_degree,
    norm,
    sigma_point,
)
from classforge.elliptic import group_structure
from classforge.harvest import count_candidates, smooth_elements, smooth_relations
from classforge.ideal_class import (
    BudgetExhausted,
    CurveRequiredError,
    FactorizationDegreeError,
    FractionalIdeal,
    PicardConfig,
    factor_ideal,
    fibre_type,
    ideal_from_closed_point,
    ideal_inverse,
    ideal_mul,
    is_principal,
    picard_bruteforce,
    primes_above,
    principal_ideal,
    product_of_primes,
    relation_vector,
    unit_ideal,
)
from conftest import SMALL, make_curve, suite_id

E5 = make_curve(5, (0, 0, 0, 1, 1))
E7 = make_curve(7, (0, 0, 0, 6, 0))
E9 = make_curve(9, (0, 0, 0, 1, 0))
LONG = make_curve(5, (1, 2, 3, 4, 0))
CURVES = [E5, E7, E9, LONG]


# over F_2 and F_3 every fibre of a norm of degree <= 5 fits the field tables
TINY = [make_curve(2, (0, 0, 1, 1, 0)), make_curve(3, (0, 0, 0, 2, 1)), make_curve(3, (1, 0, 1, 2, 0))]


@st.composite
def tiny_elements(draw):
    E = draw(st.sampled_from(TINY))
    q = E.field.q
    a = draw(st.lists(st.integers(0, q - 1), max_size=3))
    b = draw(st.lists(st.integers(0, q - 1), max_size=2))
    f = RingElement(Poly(E.field, a), Poly(E.field, b))
    if f.is_zero():
        f = RingElement(Poly.x(E.field), Poly.one(E.field))
    return E, f


@st.composite
def smooth_samples(draw):
    E = draw(st.sampled_from(CURVES))
    n = draw(st.integers(2, 6))
    elems = _smooth(E, n)
    return E, elems[draw(st.integers(0, len(elems) - 1))]


_SMOOTH = {}


def _smooth(E, n):
    key = (E, n)
    if key not in _SMOOTH:
        _SMOOTH[key] = list(itertools.islice(smooth_elements(E, n, 2), 400))
    return _SMOOTH[key]


def _round_trip(E, f):
    I = principal_ideal(E, f)
    fac = factor_ideal(E, I)
    assert product_of_primes(E, fac) == I
    assert sum(P.degree * k for P, k in fac) == I.norm().deg
    g = is_principal(E, I)
    assert g is not None and principal_ideal(E, g) == I


@given(tiny_elements())
def test_unique_factorization_round_trip_small_fields(ef):
    _round_trip(*ef)


@given(smooth_samples())
def test_unique_factorization_round_trip_smooth(ef):
    _round_trip(*ef)


def test_oversized_fibre_is_reported():
    F = E7.field
    f = RingElement(Poly(F, (4, 5, 0, 2)), Poly.zero(F))
    with pytest.raises(FactorizationDegreeError):
        factor_ideal(E7, principal_ideal(E7, f))


@pytest.mark.parametrize("E", CURVES, ids=lambda E: f"q{E.field.q}")
def test_degree_one_primes_are_not_principal(E):
    # a degree-1 prime has norm degree 1, and no element has pole order 1
    for P in closed_points_of_degree(E, 1):
        assert is_principal(E, ideal_from_closed_point(E, P)) is None


@pytest.mark.parametrize("E", CURVES, ids=lambda E: f"q{E.field.q}")
def test_fibre_product_is_generated_by_the_minimal_polynomial(E):
    for P in closed_points_up_to_degree(E, 2):
        p = P.minpoly
        kind = fibre_type(E, p)
        Pi = ideal_from_closed_point(E, P)
        if kind == "split":
            I = ideal_mul(Pi, ideal_from_closed_point(E, sigma_point(E, P)))
        elif kind == "ramified":
            I = ideal_mul(Pi, Pi)
        else:
            I = Pi
        gen = RingElement(p, Poly.zero(E.field))
        assert I == principal_ideal(E, gen)
        assert is_principal(E, I) == gen


@pytest.mark.parametrize("E", CURVES, ids=lambda E: f"q{E.field.q}")
def test_inverse_of_prime(E):
    for P in closed_points_up_to_degree(E, 2)[:10]:
        Pi = ideal_from_closed_point(E, P)
        assert ideal_mul(Pi, ideal_inverse(Pi)) == unit_ideal(E)


@pytest.mark.parametrize("E", CURVES, ids=lambda E: f"q{E.field.q}")
def test_fibres_partition_degrees(E):
    for d in (1, 2):
        for p in monic_irreducibles(E.field, d):
            primes = primes_above(E, p)
            kind = fibre_type(E, p)
            total = sum(P.degree for P in primes)
            ramified = kind == "ramified"
            assert total == (d if ramified else 2 * d)
            assert len(primes) == (2 if kind == "split" else 1)


def test_ideal_must_be_closed_under_y():
    F = E5.field
    with pytest.raises(ValueError):
        FractionalIdeal(E5, Poly.x(F), Poly.zero(F), Poly.one(F))


@pytest.mark.parametrize(
    "E,n,D",
    [(E, n, D) for E in (E5, make_curve(3, (0, 0, 0, 1, 1)), LONG, make_curve(4, (1, 0, 0, 0, 1))) for n in (4, 5, 6) for D in (1, 2)],
    ids=lambda v: f"q{v.field.q}" if hasattr(v, "field") else str(v),
)
def test_bulk_relations_match_generic_factorization(E, n, D):
    gens = closed_points_up_to_degree(E, D)
    index = {P: i for i, P in enumerate(gens)}
    bulk = list(smooth_relations(E, n, D, index))
    generic = [relation_vector(E, f, index, D) for f in smooth_elements(E, n, D)]
    assert [list(v) if v is not None else None for v in bulk] == generic


def test_smooth_elements_respect_norm_degree():
    for f in itertools.islice(smooth_elements(E7, 5, 1), 50):
        assert norm(E7, f).deg == 5


def test_candidate_count_formula():
    assert count_candidates(5, 4) == 5**3
    assert count_candidates(7, 5) == 7**4


@pytest.mark.parametrize("row", SMALL, ids=suite_id)
def test_picard_matches_points_at_degree_two(row):
    E = make_curve(row[0], row[1])
    res = picard_bruteforce(E, D=2)
    assert is_isomorphic(res.group, group_structure(E).group)
    assert res.stable


def test_generator_classes_follow_point_classes():
    res = picard_bruteforce(E7)
    mw = group_structure(E7)
    # psi: prime class -> point class is a homomorphism with the same kernel
    for P, Q in itertools.combinations(res.generators, 2):
        lhs = res.presentation.group.add(res.dlog(P), res.dlog(Q)) == res.presentation.group.zero()
        rhs = E7.add(class_of(E7, P), class_of(E7, Q)).is_infinity
        assert lhs == rhs
    assert res.group.order == len(mw.coords)


def test_curve_required():
    with pytest.raises(CurveRequiredError):
        picard_bruteforce(E5.field)


def test_budget_exhaustion():
    with pytest.raises(BudgetExhausted):
        picard_bruteforce(E9, config=PicardConfig(max_candidates=100))
    with pytest.raises(BudgetExhausted):
        picard_bruteforce(E9, config=PicardConfig(max_norm_degree=4))
