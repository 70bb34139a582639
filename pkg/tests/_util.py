"""Shared constructors: build curves, functions and forms from text."""

from algint.arith import QQ
from algint.cli.parser import ff_from_text, parse_curve, parse_form


def curve(text, K=QQ):
    return parse_curve(text, K)


def fn(text, C):
    return ff_from_text(text, C)


def form(text, C):
    return parse_form(text, C)
