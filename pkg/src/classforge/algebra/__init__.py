"""Exact arithmetic substrate: finite fields, polynomials, integer matrices, groups."""

from .fields import GF, QQ, Extension, FieldError, FqElement, extension, finite_field, prime_power
from .groups import (
    FgAbelianGroup,
    GroupQuotient,
    GroupSpecSyntaxError,
    group_from_presentation,
    is_isomorphic,
    parse_group,
    quotient,
    subgroup_order,
)
from .intmat import RowLattice, determinant, smith_diagonal, smith_normal_form
from .poly import FqRational, Poly, SingularMatrixError, factor, gcd, hermite_form, is_irreducible, monic_irreducibles, xgcd

FqPoly = Poly
