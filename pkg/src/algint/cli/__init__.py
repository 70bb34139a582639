"""Command-line interface.

Exit codes: 0 YES / success, 1 NO (or a rejected certificate), 2 NO_UP_TO_BUDGET
(or a budget-exhausted Mordell-Weil run), 3 input error, 4 internal inconsistency.
"""

from __future__ import annotations

import argparse
import logging
import os
import re
import sys
from fractions import Fraction

from ..arith import QQ, PrecisionExhausted
from ..decision import Answer, InternalInconsistency, decide
from ..differentials import is_exact
from ..trace import FibralComponent, UnsupportedCorrespondence
from .document import Rejected, parse_document, to_json, to_text, verify_document
from .parser import ParseError, parse_curve, parse_field, parse_form, parse_problem_file

EXIT_YES, EXIT_NO, EXIT_BUDGET, EXIT_INPUT, EXIT_INCONSISTENT = 0, 1, 2, 3, 4
_ANSWER_EXIT = {Answer.YES: EXIT_YES, Answer.NO: EXIT_NO, Answer.NO_UP_TO_BUDGET: EXIT_BUDGET}

log = logging.getLogger("algint")


def _default_digits() -> int:
    try:
        return max(30, int(os.environ.get("ALGINT_DIGITS", "50")))
    except ValueError:
        return 50


def _inline_form(text: str, field_text: str | None):
    """'<expr> d<x> on <curve>' with an optional field polynomial."""
    K = parse_field(field_text, 1, "<field>") if field_text else QQ
    if " on " not in text:
        raise ParseError("expected '<form> on <curve>'", 1, 1, "<argument>")
    ftext, ctext = text.rsplit(" on ", 1)
    C = parse_curve(ctext, K, 1, len(ftext) + 5, "<argument>")
    return parse_form(ftext, C, 1, 1, "<argument>")


def cmd_decide(args, out) -> int:
    pf = parse_problem_file(args.file)
    pb = pf.problem()
    if args.digits:
        pb.budgets.digits = args.digits
    pb.numeric_check = not args.no_check
    v = decide(pb)
    text = to_json(v) if args.json else to_text(v)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        out.write(text)
    return _ANSWER_EXIT[v.answer]


def cmd_verify(args, out) -> int:
    pf = parse_problem_file(args.file)
    try:
        with open(args.cert, encoding="utf-8") as fh:
            tree = parse_document(fh.read(), args.cert)
    except UnicodeDecodeError:
        raise ParseError("certificate is not UTF-8", 1, 1, args.cert) from None
    try:
        answer = verify_document(pf, tree)
    except Rejected as exc:
        out.write(f"rejected: {exc}\n")
        return EXIT_NO
    out.write(f"accepted: {answer}\n")
    return EXIT_YES


def cmd_exact(args, out) -> int:
    w = _inline_form(args.form, args.field)
    r = is_exact(w)
    if r.exact:
        out.write(f"exact: primitive {r.primitive.to_str()}\n")
        return EXIT_YES
    out.write(f"inexact: witness {r.witness_kind}")
    if r.witness_place is not None:
        out.write(f" at {r.witness_place.label()} value {_s(r.witness_value)}")
    for k in sorted(r.details):
        out.write(f"; {k}={r.details[k]}")
    out.write("\n")
    return EXIT_NO


def _s(c) -> str:
    return c.to_str() if hasattr(c, "to_str") else str(c)


def cmd_residues(args, out) -> int:
    w = _inline_form(args.form, args.field)
    res = w.residue_divisor()
    out.write(f"kind: {w.kind().value}\n")
    out.write(f"poles: {w.pole_divisor().to_str()}\n")
    for p in sorted(res, key=lambda q: q.sort_key()):
        tag = f" in residue field {_s(p.L)}" if p.degree > 1 else ""
        out.write(f"residue at {p.label()}: {_s(res[p])}{tag}\n")
    if not res:
        out.write("no residues\n")
    return EXIT_YES


def cmd_trace(args, out) -> int:
    pf = parse_problem_file(args.file)
    if args.form not in pf.forms:
        raise ParseError(f"unknown form {args.form!r}", 1, 1, args.file)
    if args.corr not in pf.correspondences:
        raise ParseError(f"unknown correspondence {args.corr!r}", 1, 1, args.file)
    _, w = pf.forms[args.form]
    Z = pf.correspondences[args.corr]
    if Z.left.same_model(w.curve):
        img = Z.trace_image(w)
    elif Z.right.same_model(w.curve):
        img = Z.reversed().trace_image(w)
    else:
        raise ParseError(f"{args.corr} does not touch the curve of {args.form}", 1, 1, args.file)
    out.write(f"{img.to_str()}\n")
    return EXIT_YES


def cmd_periods(args, out) -> int:
    import mpmath

    from ..numeric import periods

    w = _inline_form(args.form, args.field)
    digits = args.digits or _default_digits()
    vals = periods(w, digits)
    with mpmath.workdps(digits):  # chop rounds to the ambient precision
        for i, p in enumerate(vals, 1):
            p = mpmath.chop(p, tol=mpmath.mpf(10) ** (-digits // 2))
            out.write(f"cycle {i}: {mpmath.nstr(p, min(digits, 30))}\n")
    return EXIT_YES


_POINT = re.compile(r"\(\s*([-+]?\d+(?:/\d+)?)\s*,\s*([-+]?\d+(?:/\d+)?)\s*\)")


def cmd_mw(args, out) -> int:
    from ..mordell_weil import mw_kernel, torsion_structure, torsion_subgroup, weierstrass_model

    C = parse_curve(args.curve, QQ, 1, 1, "<argument>")
    if C.is_line or C.genus != 1 or C.degree != 3:
        raise ParseError("mw needs a cubic model y^2 = P(x) of genus 1 over Q", 1, 1, "<argument>")
    E, to_E = weierstrass_model(C)
    pts = []
    text = args.points or ""
    for m in _POINT.finditer(text):
        x, y = Fraction(m.group(1)), Fraction(m.group(2))
        if C.poly(x) != y * y:
            raise ParseError(f"({x}, {y}) is not on {C.equation()}", 1, m.start() + 1, "<points>")
        pts.append(to_E(x, y))
    leftover = _POINT.sub("", text).replace(",", " ").strip()
    if leftover:
        raise ParseError(f"cannot read points near {leftover[:20]!r}", 1, 1, "<points>")
    T = torsion_subgroup(E)
    out.write(f"model: {E}\n")
    out.write(f"torsion: {torsion_structure(T)} ({len(T)} points)\n")
    if not pts:
        return EXIT_YES
    r = mw_kernel(pts, args.budget)
    out.write(f"status: {r.status}\n")
    for v in r.kernel_basis:
        out.write(f"kernel: {v}\n")
    for k in sorted(r.proof_data):
        out.write(f"proof {k}: {r.proof_data[k]}\n")
    return EXIT_YES if r.complete else EXIT_BUDGET


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="algint", description="Integrability of algebraic differentials.")
    ap.add_argument("-v", "--verbose", action="store_true")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("decide", help="decide a problem file and print a verdict document")
    p.add_argument("file")
    p.add_argument("--json", action="store_true", help="JSON instead of key-value text")
    p.add_argument("--out", help="write the document here")
    p.add_argument("--digits", type=int, help="numeric cross-check precision")
    p.add_argument("--no-check", action="store_true", help="skip the numeric cross-check")
    p.set_defaults(fn=cmd_decide)

    p = sub.add_parser("verify", help="replay a verdict document against its problem file")
    p.add_argument("file")
    p.add_argument("cert")
    p.set_defaults(fn=cmd_verify)

    for name, fn, hlp in (("exact", cmd_exact, "exactness test"),
                          ("residues", cmd_residues, "poles and residues"),
                          ("periods", cmd_periods, "numeric periods over branch-point cycles")):
        p = sub.add_parser(name, help=hlp)
        p.add_argument("form", help="'<expr> d<x> on <curve>', e.g. '2*x dx on line'")
        p.add_argument("--field", help="minimal polynomial of the generator a")
        if name == "periods":
            p.add_argument("--digits", type=int)
        p.set_defaults(fn=fn)

    p = sub.add_parser("trace", help="trace-image of a form along a correspondence")
    p.add_argument("file")
    p.add_argument("--corr", required=True)
    p.add_argument("--form", required=True)
    p.set_defaults(fn=cmd_trace)

    p = sub.add_parser("mw", help="torsion and Mordell-Weil kernel of rational points")
    p.add_argument("curve", help="e.g. 'y^2 = x^3 + 1'")
    p.add_argument("--points", help="e.g. '(2,3) (0,1)'")
    p.add_argument("--budget", type=int, default=10**6)
    p.set_defaults(fn=cmd_mw)
    return ap


def run(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_YES
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING)
    try:
        return args.fn(args, out)
    except ParseError as exc:
        err.write(f"error: {exc}\n")
        return EXIT_INPUT
    except OSError as exc:
        err.write(f"error: {exc}\n")
        return EXIT_INPUT
    except (UnsupportedCorrespondence, FibralComponent) as exc:
        err.write(f"error: unsupported input: {exc}\n")
        return EXIT_INPUT
    except InternalInconsistency as exc:
        err.write(f"internal inconsistency: {exc}\n")
        return EXIT_INCONSISTENT
    except PrecisionExhausted as exc:
        err.write(f"error: series precision exhausted: {exc}\n")
        return EXIT_BUDGET


def main() -> None:
    sys.exit(run())


__all__ = ["run", "main", "build_parser"]
