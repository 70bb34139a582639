"""Supported smooth projective curves: the line and y^2 = P(x), P squarefree."""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from enum import Enum

from .arith import QQ, Embedding, UPoly
from .arith.poly import is_squarefree


class SingularModel(ValueError):
    """y^2 = P(x) with P not squarefree."""


class UnsupportedCurveClass(ValueError):
    """A plane model outside the line / hyperelliptic families."""


class CurveKind(Enum):
    LINE = "line"
    HYPERELLIPTIC = "hyperelliptic"


@dataclass(frozen=True, eq=False)
class Curve:
    kind: CurveKind
    poly: UPoly | None
    field: object = QQ
    genus: int = 0
    xname: str = "x"
    yname: str = "y"
    _cache: dict = dc_field(default_factory=dict, repr=False, compare=False)

    @property
    def is_line(self) -> bool:
        return self.kind is CurveKind.LINE

    @property
    def degree(self) -> int:
        """Degree of P (0 for the line)."""
        return self.poly.degree if self.poly is not None else 0

    @property
    def odd(self) -> bool:
        return self.degree % 2 == 1

    def key(self) -> tuple:
        if self.is_line:
            return ("line", self.field)
        return ("hyp", self.field, self.poly.coeffs)

    def same_model(self, other: "Curve") -> bool:
        return self.key() == other.key()

    def __eq__(self, other) -> bool:
        return isinstance(other, Curve) and self.key() == other.key() and (
            self.xname, self.yname) == (other.xname, other.yname)

    def __hash__(self) -> int:
        return hash(self.key())

    def base_change(self, emb: Embedding) -> "Curve":
        if emb.is_identity():
            return self
        key = ("bc", emb.dst, getattr(emb, "gen_image", None))
        if key in self._cache:
            return self._cache[key]
        poly = emb.poly(self.poly) if self.poly is not None else None
        out = Curve(self.kind, poly, emb.dst, self.genus, self.xname, self.yname)
        self._cache[key] = out
        return out

    def equation(self) -> str:
        if self.is_line:
            return f"line({self.xname})"
        return f"{self.yname}^2 = {self.poly.to_str(self.xname)}"

    def __repr__(self) -> str:
        return f"Curve({self.equation()}, genus={self.genus})"


def make_line(field=QQ, xname: str = "x") -> Curve:
    return Curve(CurveKind.LINE, None, field, 0, xname, "y")


def make_curve(poly: UPoly | None, field=None, xname: str = "x", yname: str = "y") -> Curve:
    """Validated curve: the line when ``poly`` is None, else y^2 = poly."""
    if poly is None:
        return make_line(field or QQ, xname)
    field = field or poly.field
    poly = poly.map_coeffs(field, field)
    if poly.degree < 3:
        raise UnsupportedCurveClass(
            f"y^2 = P(x) needs deg P >= 3 (got {poly.degree}); rational models are given as 'line'"
        )
    if not is_squarefree(poly):
        raise SingularModel(f"{poly.to_str(xname)} is not squarefree")
    genus = (poly.degree - 1) // 2
    return Curve(CurveKind.HYPERELLIPTIC, poly, field, genus, xname, yname)
