"""Exact arithmetic substrate: Q, number fields, polynomials, series."""

from .fields import QQ
from .linalg import det, integer_kernel, nullspace, rank, rref, saturate, solve
from .numberfield import (
    AlgebraicNumber,
    Embedding,
    NumberField,
    extend,
    factor_over,
    factor_rational,
    roots_in_field,
    splitting_extension,
    sqrt_in_field,
)
from .poly import (
    DegenerateInput,
    UPoly,
    discriminant,
    poly_gcd,
    resultant,
    squarefree_factor,
)
from .ratfunc import RationalFunction, RationalFunctionField
from .series import PrecisionExhausted, PuiseuxSeries

__all__ = [
    "QQ", "AlgebraicNumber", "Embedding", "NumberField", "UPoly", "RationalFunction",
    "RationalFunctionField", "PuiseuxSeries", "PrecisionExhausted", "DegenerateInput",
    "det", "integer_kernel", "nullspace", "rank", "rref", "saturate", "solve",
    "extend", "factor_over", "factor_rational", "roots_in_field", "splitting_extension",
    "sqrt_in_field", "discriminant", "poly_gcd", "resultant", "squarefree_factor",
]
