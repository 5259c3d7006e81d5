import random
from fractions import Fraction

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from classforge.algebra.fields import QQ, FieldError, extension, finite_field, prime_power
from classforge.algebra.groups import FgAbelianGroup, GroupSpecSyntaxError, group_from_presentation, parse_group
from classforge.algebra.intmat import smith_diagonal, smith_normal_form
from classforge.algebra.linalg import nullspace
from classforge.algebra.poly import Poly, factor, gcd, is_irreducible, monic_irreducibles, xgcd

ORDERS = [2, 3, 4, 5, 7, 8, 9, 25, 27]


@st.composite
def field_triples(draw):
    q = draw(st.sampled_from(ORDERS))
    F = finite_field(q)
    e = st.integers(0, q - 1)
    return F, draw(e), draw(e), draw(e)


@given(field_triples())
def test_field_axioms(t):
    F, a, b, c = t
    assert F.add(a, b) == F.add(b, a)
    assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))
    assert F.add(a, F.neg(a)) == F.zero
    if a:
        assert F.mul(a, F.inv(a)) == F.one


@pytest.mark.parametrize("q", ORDERS)
def test_multiplicative_group_is_cyclic_of_order_q_minus_1(q):
    F = finite_field(q)
    assert all(F.pow(a, q - 1) == F.one for a in range(1, q))
    assert any(len({F.pow(a, k) for k in range(q - 1)}) == q - 1 for a in range(1, q))


def test_from_code_negation_and_prime_reduction():
    F = finite_field(9)
    assert F.from_code(-4) == F.neg(4)
    assert finite_field(7).from_code(10) == 3


@pytest.mark.parametrize("q", [1, 6, 12, 2**17])
def test_bad_field_orders(q):
    with pytest.raises((FieldError, ValueError)):
        finite_field(q)


def test_prime_power():
    assert prime_power(27) == (3, 3)
    assert prime_power(13) == (13, 1)


def test_extension_embedding_is_a_ring_map():
    F = finite_field(3)
    ext = extension(F, 2)
    L = ext.field
    for a in range(3):
        for b in range(3):
            assert ext.embed[F.mul(a, b)] == L.mul(ext.embed[a], ext.embed[b])
            assert ext.embed[F.add(a, b)] == L.add(ext.embed[a], ext.embed[b])
    # Frobenius fixes exactly the image of F_3
    fixed = {a for a in range(L.q) if ext.frobenius(a) == a}
    assert fixed == set(ext.embed)


@st.composite
def polys(draw, q=5, max_deg=6):
    F = finite_field(q)
    cs = draw(st.lists(st.integers(0, q - 1), max_size=max_deg + 1))
    return Poly(F, cs)


@given(polys(), polys())
def test_divmod_identity(a, b):
    if not b:
        return
    qt, r = divmod(a, b)
    assert qt * b + r == a
    assert r.deg < b.deg


@given(polys(), polys())
def test_xgcd_bezout(a, b):
    g, s, t = xgcd(a, b)
    assert s * a + t * b == g
    if a or b:
        assert g == gcd(a, b)


@given(polys(q=7, max_deg=8))
def test_factor_reconstructs(f):
    if f.deg < 1:
        return
    prod = Poly.one(f.field)
    for p, k in factor(f):
        assert p.is_monic() and is_irreducible(p)
        prod = prod * p**k
    assert prod == f.monic()


def _necklace(q, d):
    # number of monic irreducibles of degree d, by Moebius inversion
    return sum(sympy.mobius(d // e) * q**e for e in sympy.divisors(d)) // d


@pytest.mark.parametrize("q,d", [(2, 4), (3, 3), (4, 2), (5, 2), (9, 2)])
def test_irreducible_counts(q, d):
    assert len(monic_irreducibles(finite_field(q), d)) == _necklace(q, d)


def test_qq_gcd_matches_sympy():
    x = sympy.Symbol("x")
    rng = random.Random(3)
    for _ in range(20):
        a = [Fraction(rng.randint(-9, 9), rng.randint(1, 5)) for _ in range(5)]
        b = [Fraction(rng.randint(-9, 9), rng.randint(1, 5)) for _ in range(4)]
        c = [Fraction(rng.randint(-9, 9), 1) for _ in range(3)] + [Fraction(1)]
        A, B, C = Poly(QQ, a), Poly(QQ, b), Poly(QQ, c)
        g = gcd(A * C, B * C)
        ref = sympy.Poly(list(reversed([sympy.Rational(v.numerator, v.denominator) for v in (A * C).coeffs])), x).gcd(
            sympy.Poly(list(reversed([sympy.Rational(v.numerator, v.denominator) for v in (B * C).coeffs])), x)
        )
        assert g.deg == ref.degree() and g.is_monic()
        assert C.divides(g)


def test_nullspace_over_prime_field():
    F = finite_field(5)
    rows = [[1, 2, 3], [0, 1, 4]]
    ker = nullspace(F, rows, 3)
    assert len(ker) == 1
    v = ker[0]
    assert all(sum(F.mul(r, c) for r, c in zip(row, v)) % 5 == 0 for row in rows)


@st.composite
def int_matrices(draw):
    m = draw(st.integers(1, 4))
    n = draw(st.integers(1, 4))
    return [[draw(st.integers(-12, 12)) for _ in range(n)] for _ in range(m)]


@given(int_matrices())
def test_snf_is_idempotent_and_a_chain(M):
    D, U, V = smith_normal_form(M)
    diag = smith_diagonal(M)
    assert all(b % a == 0 for a, b in zip(diag, diag[1:]) if a)
    assert smith_diagonal(D) == diag
    assert sympy.Matrix(U) * sympy.Matrix(M) * sympy.Matrix(V) == sympy.Matrix(D)


def test_snf_against_sympy():
    from sympy.matrices.normalforms import smith_normal_form as sympy_snf

    rng = random.Random(11)
    for _ in range(20):
        M = [[rng.randint(-9, 9) for _ in range(3)] for _ in range(3)]
        ref = sympy_snf(sympy.Matrix(M), domain=sympy.ZZ)
        ours = smith_diagonal(M)
        assert [abs(int(ref[i, i])) for i in range(3)] == [abs(d) for d in ours]


def test_group_from_presentation_examples():
    assert group_from_presentation(4, [[0, 0, 2, 0], [0, 0, 0, 4]]).group == FgAbelianGroup(2, (2, 4))
    assert group_from_presentation(2, [[6, 0], [0, 15]]).group == FgAbelianGroup(0, (3, 30))
    assert group_from_presentation(1, [[3]]).group == FgAbelianGroup(0, (3,))


@pytest.mark.parametrize(
    "text,expected",
    [("Z/6", (0, [6])), ("Z^2+Z/4+Z/2", (2, [4, 2])), ("0", (0, [])), ("Z+Z", (2, []))],
)
def test_parse_group(text, expected):
    assert parse_group(text) == expected


@pytest.mark.parametrize("text,offset", [("Z/1", 2), ("Z/6+", 4), ("Q", 0)])
def test_parse_group_errors_report_offset(text, offset):
    with pytest.raises(GroupSpecSyntaxError) as exc:
        parse_group(text)
    assert exc.value.offset == offset


def test_from_orders_normalizes_non_chains():
    assert FgAbelianGroup.from_orders(0, [4, 2]) == FgAbelianGroup(0, (2, 4))
    assert FgAbelianGroup.from_orders(1, [6, 15]) == FgAbelianGroup(1, (3, 30))
    with pytest.raises(ValueError):
        FgAbelianGroup(0, (4, 6))
