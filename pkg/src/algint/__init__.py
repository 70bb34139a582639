"""Decision engine for integrability of algebraic differentials in terms of a
given set of curves with differentials."""

__version__ = "0.1.0"
