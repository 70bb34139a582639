"""The rational field and the small protocol every coefficient field follows.

A *field object* exposes ``zero``, ``one``, ``__call__`` (conversion),
``degree`` (absolute degree over Q), ``coords`` / ``from_coords`` and
``is_qq``.  Elements are plain Python numbers for Q (``Fraction``) and
:class:`~algint.arith.numberfield.AlgebraicNumber` for proper extensions.
"""

from __future__ import annotations

from fractions import Fraction


class RationalField:
    """Q, with elements represented by :class:`fractions.Fraction`."""

    _instance = None
    degree = 1
    is_qq = True
    name = "QQ"

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    @property
    def zero(self) -> Fraction:
        return Fraction(0)

    @property
    def one(self) -> Fraction:
        return Fraction(1)

    @property
    def gen(self) -> Fraction:
        return Fraction(1)

    def __call__(self, value) -> Fraction:
        if isinstance(value, Fraction):
            return value
        if isinstance(value, (int, str)):
            return Fraction(value)
        if getattr(value, "field", None) is not None and value.field.degree == 1:
            return value.coords[0]
        raise TypeError(f"cannot convert {value!r} to a rational")

    def coords(self, value) -> tuple:
        return (value,)

    def from_coords(self, coords) -> Fraction:
        (c,) = coords
        return Fraction(c)

    def contains(self, value) -> bool:
        return isinstance(value, (int, Fraction))

    def __repr__(self) -> str:
        return "QQ"

    def __eq__(self, other) -> bool:
        return isinstance(other, RationalField)

    def __hash__(self) -> int:
        return hash("QQ")

    def __reduce__(self):
        return (RationalField, ())


QQ = RationalField()


def is_zero(value) -> bool:
    return not value
