"""Divisors and moduli on a supported curve."""

from __future__ import annotations

from .places import Place


class Divisor:
    """Finite formal sum of places with integer coefficients."""

    __slots__ = ("_d",)

    def __init__(self, coeffs: dict | None = None):
        self._d = {p: int(n) for p, n in (coeffs or {}).items() if n}

    def __getitem__(self, p: Place) -> int:
        return self._d.get(p, 0)

    def items(self):
        return sorted(self._d.items(), key=lambda kv: kv[0].sort_key())

    @property
    def support(self) -> list[Place]:
        return [p for p, _ in self.items()]

    @property
    def degree(self) -> int:
        return sum(n * p.degree for p, n in self._d.items())

    def __add__(self, other: "Divisor") -> "Divisor":
        out = dict(self._d)
        for p, n in other._d.items():
            out[p] = out.get(p, 0) + n
        return type(self)._plain(out)

    def __neg__(self) -> "Divisor":
        return Divisor({p: -n for p, n in self._d.items()})

    def __sub__(self, other: "Divisor") -> "Divisor":
        return self + (-other)

    def __mul__(self, k: int) -> "Divisor":
        return Divisor({p: k * n for p, n in self._d.items()})

    __rmul__ = __mul__

    @staticmethod
    def _plain(d) -> "Divisor":
        return Divisor(d)

    def is_effective(self) -> bool:
        return all(n > 0 for n in self._d.values())

    def positive_part(self) -> "Divisor":
        return Divisor({p: n for p, n in self._d.items() if n > 0})

    def negative_part(self) -> "Divisor":
        return Divisor({p: -n for p, n in self._d.items() if n < 0})

    def pointwise_max(self, other: "Divisor") -> "Divisor":
        keys = set(self._d) | set(other._d)
        return Divisor({p: max(self[p], other[p]) for p in keys})

    def __eq__(self, other) -> bool:
        return isinstance(other, Divisor) and self._d == other._d

    def __hash__(self) -> int:
        return hash(frozenset(self._d.items()))

    def __len__(self) -> int:
        return len(self._d)

    def __bool__(self) -> bool:
        return bool(self._d)

    def to_str(self) -> str:
        if not self._d:
            return "0"
        parts = []
        for p, n in self.items():
            parts.append(f"{n}*{p.label()}" if n != 1 else p.label())
        return " + ".join(parts)

    def __repr__(self) -> str:
        return f"Divisor({self.to_str()})"


class Modulus(Divisor):
    """Effective divisor with every multiplicity at least one."""

    __slots__ = ()

    def __init__(self, coeffs: dict | None = None):
        super().__init__(coeffs)
        bad = [p for p, n in self._d.items() if n < 1]
        if bad:
            raise ValueError(f"modulus multiplicities must be positive (at {bad[0].label()})")

    @classmethod
    def from_places(cls, places, n: int = 1) -> "Modulus":
        return cls({p: n for p in places})

    def reduced(self) -> Divisor:
        """m minus its support: the pole bound for primitives of forms in Omega(m)."""
        return Divisor({p: n - 1 for p, n in self._d.items()})
