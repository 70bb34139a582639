"""Problem files and the small expression language used inside them.

Grammar (standard precedence, ``^`` binds tightest and takes an integer):

    expr   := term (('+' | '-') term)*
    term   := unary (('*' | '/') unary)*
    unary  := '-' unary | power
    power  := atom ('^' ['-'] INT)?
    atom   := NUMBER | NAME | NAME '.' NAME | '(' expr ')'

A form is an expression followed by the trailing token ``d<x>``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction

from ..arith import QQ, UPoly
from ..arith.numberfield import NotIrreducible, NumberField
from ..curve import SingularModel, UnsupportedCurveClass, make_curve, make_line
from ..decision import Budgets, Mode, Problem
from ..differentials import Differential
from ..function_field import FFElement
from ..trace import Correspondence, CurveMap, FibralComponent

MAX_EXPONENT = 64
MAX_DEGREE = 16
MAX_DIGITS = 40


class ParseError(ValueError):
    def __init__(self, msg: str, line: int = 0, col: int = 0, source: str = "<input>"):
        self.msg, self.line, self.col, self.source = msg, line, col, source
        super().__init__(f"{source}:{line}:{col}: {msg}")


# tokens and syntax tree -------------------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(\d+(?:\.\d+)?)|([A-Za-z_][A-Za-z_0-9]*)|(\S))")


@dataclass
class Tok:
    kind: str   # num | name | op | end
    text: str
    col: int


def tokenize(text: str, line: int = 1, col0: int = 1, source: str = "<input>") -> list[Tok]:
    out = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            break
        if m.group(1):
            out.append(Tok("num", m.group(1), col0 + m.start(1)))
        elif m.group(2):
            out.append(Tok("name", m.group(2), col0 + m.start(2)))
        elif m.group(3):
            ch = m.group(3)
            if ch not in "+-*/^().":
                raise ParseError(f"unexpected character {ch!r}", line, col0 + m.start(3), source)
            out.append(Tok("op", ch, col0 + m.start(3)))
        pos = m.end()
    out.append(Tok("end", "", col0 + len(text)))
    return out


@dataclass
class Node:
    kind: str            # num | var | neg | add | sub | mul | div | pow
    col: int
    value: object = None
    args: tuple = ()


class _Parser:
    def __init__(self, toks, line, source):
        self.toks, self.i, self.line, self.source = toks, 0, line, source

    def peek(self) -> Tok:
        return self.toks[self.i]

    def take(self) -> Tok:
        t = self.toks[self.i]
        self.i += 1
        return t

    def error(self, msg, tok=None):
        tok = tok or self.peek()
        raise ParseError(msg, self.line, tok.col, self.source)

    def expr(self) -> Node:
        node = self.term()
        while self.peek().kind == "op" and self.peek().text in "+-":
            t = self.take()
            node = Node("add" if t.text == "+" else "sub", t.col, args=(node, self.term()))
        return node

    def term(self) -> Node:
        node = self.unary()
        while self.peek().kind == "op" and self.peek().text in "*/":
            t = self.take()
            node = Node("mul" if t.text == "*" else "div", t.col, args=(node, self.unary()))
        return node

    def unary(self) -> Node:
        if self.peek().kind == "op" and self.peek().text == "-":
            t = self.take()
            return Node("neg", t.col, args=(self.unary(),))
        if self.peek().kind == "op" and self.peek().text == "+":
            self.take()
            return self.unary()
        return self.power()

    def power(self) -> Node:
        base = self.atom()
        if self.peek().kind == "op" and self.peek().text == "^":
            t = self.take()
            sign = 1
            if self.peek().kind == "op" and self.peek().text == "-":
                self.take()
                sign = -1
            e = self.take()
            if e.kind != "num" or "." in e.text:
                self.error("exponent must be an integer", e)
            n = sign * int(e.text)
            if abs(n) > MAX_EXPONENT:
                self.error(f"exponent {n} exceeds {MAX_EXPONENT}", e)
            return Node("pow", t.col, n, (base,))
        return base

    def atom(self) -> Node:
        t = self.take()
        if t.kind == "num":
            if len(t.text) > MAX_DIGITS:
                self.error("number literal too long", t)
            return Node("num", t.col, Fraction(t.text))
        if t.kind == "name":
            if t.text == "sqrt":
                self.error("sqrt is not allowed; declare the radical as a curve", t)
            name = t.text
            if self.peek().kind == "op" and self.peek().text == ".":
                self.take()
                n2 = self.take()
                if n2.kind != "name":
                    self.error("expected a coordinate name after '.'", n2)
                name = f"{name}.{n2.text}"
            return Node("var", t.col, name)
        if t.kind == "op" and t.text == "(":
            node = self.expr()
            c = self.take()
            if not (c.kind == "op" and c.text == ")"):
                self.error("expected ')'", c)
            return node
        self.error("unexpected end of expression" if t.kind == "end" else f"unexpected {t.text!r}", t)


def parse_expr(text: str, line: int = 1, col0: int = 1, source: str = "<input>") -> Node:
    p = _Parser(tokenize(text, line, col0, source), line, source)
    if p.peek().kind == "end":
        p.error("empty expression")
    node = p.expr()
    if p.peek().kind != "end":
        p.error(f"unexpected {p.peek().text!r}")
    return node


def names_in(node: Node) -> set:
    if node.kind == "var":
        return {node.value}
    out = set()
    for a in node.args:
        out |= names_in(a)
    return out


class Evaluator:
    """Evaluates syntax trees into a ring given a name environment and a constant embedding."""

    def __init__(self, env: dict, const, line: int = 0, source: str = "<input>", divide=None):
        self.env, self.const, self.line, self.source = env, const, line, source
        self.divide = divide

    def __call__(self, node: Node):
        k = node.kind
        try:
            if k == "num":
                return self.const(node.value)
            if k == "var":
                if node.value not in self.env:
                    raise ParseError(f"unknown identifier {node.value!r}", self.line, node.col, self.source)
                return self.env[node.value]
            if k == "neg":
                return -self(node.args[0])
            a = self(node.args[0])
            if k == "pow":
                if node.value < 0:
                    return self._div(self.const(Fraction(1)), a ** (-node.value), node)
                return a ** node.value
            b = self(node.args[1])
            if k == "add":
                return a + b
            if k == "sub":
                return a - b
            if k == "mul":
                return a * b
            return self._div(a, b, node)
        except ZeroDivisionError:
            raise ParseError("division by zero", self.line, node.col, self.source) from None

    def _div(self, a, b, node):
        if self.divide is not None:
            return self.divide(a, b, node)
        if not b:
            raise ZeroDivisionError
        return a / b


# field, curves, forms ----------------------------------------------------------------------------


def poly_from_node(node: Node, var: str, K, line: int, source: str, gen_name: str = "a") -> UPoly:
    env = {var: UPoly.x(K)}
    if not K.is_qq:
        env[gen_name] = UPoly.const(K, K.gen)

    def div(a, b, n):
        if b.degree != 0:
            raise ParseError("polynomial expected: division by a non-constant", line, n.col, source)
        if not b:
            raise ZeroDivisionError
        return a * (K.one / b.coeffs[0])

    return Evaluator(env, lambda c: UPoly.const(K, c), line, source, div)(node)


def parse_field(text: str, line: int = 1, source: str = "<input>"):
    body = text
    m = re.match(r"^(.*?)=\s*0\s*$", body)
    if m:
        body = m.group(1)
    if ":" in body:
        body = body.split(":", 1)[1]
    node = parse_expr(body, line, 1, source)
    names = names_in(node) - {"a"}
    if names:
        raise ParseError(f"field polynomial must be in 'a', found {sorted(names)}", line, node.col, source)
    p = poly_from_node(node, "a", QQ, line, source)
    if p.degree < 1:
        raise ParseError("field polynomial must be non-constant", line, 1, source)
    if p.degree == 1:
        return QQ
    try:
        return NumberField(p.monic(), "a")
    except (NotIrreducible, ValueError) as exc:
        raise ParseError(f"field polynomial rejected: {exc}", line, 1, source) from None


_LINE_RE = re.compile(r"^\s*line\s*(?:\(\s*([A-Za-z_][A-Za-z_0-9]*)\s*\))?\s*$")


def parse_curve(text: str, K, line: int = 1, col0: int = 1, source: str = "<input>"):
    m = _LINE_RE.match(text)
    if m:
        return make_line(K, m.group(1) or "x")
    if "=" not in text:
        raise ParseError("curve must be 'line', 'line(t)' or 'y^2 = P(x)'", line, col0, source)
    lhs, rhs = text.split("=", 1)
    lm = re.match(r"^\s*([A-Za-z_][A-Za-z_0-9]*)\s*\^\s*2\s*$", lhs)
    if not lm:
        raise ParseError("left side must be <name>^2", line, col0, source)
    yname = lm.group(1)
    rcol = col0 + len(lhs) + 1
    node = parse_expr(rhs, line, rcol, source)
    names = names_in(node) - ({"a"} if not K.is_qq else set())
    if yname in names:
        raise ParseError(
            f"general plane models are not supported; {yname} may only appear as {yname}^2",
            line, rcol, source)
    if len(names) > 1:
        raise ParseError(f"curve polynomial must use one variable, found {sorted(names)}", line, rcol, source)
    xname = names.pop() if names else "x"
    if xname == yname:
        raise ParseError("x and y names must differ", line, rcol, source)
    P = poly_from_node(node, xname, K, line, source)
    if P.degree > MAX_DEGREE:
        raise ParseError(f"degree {P.degree} exceeds {MAX_DEGREE}", line, rcol, source)
    try:
        return make_curve(P, K, xname, yname)
    except (SingularModel, UnsupportedCurveClass, ValueError) as exc:
        raise ParseError(str(exc), line, rcol, source) from None


def curve_env(C, K, prefix: str | None = None) -> dict:
    env = {}
    names = [C.xname] + ([] if C.is_line else [C.yname])
    vals = [FFElement.x(C)] + ([] if C.is_line else [FFElement.y(C)])
    for n, v in zip(names, vals):
        env[n] = v
        if prefix:
            env[f"{prefix}.{n}"] = v
    if not K.is_qq:
        env["a"] = FFElement.const(C, K.gen)
    return env


def ff_from_text(text: str, C, line: int = 1, col0: int = 1, source: str = "<input>", name=None):
    node = parse_expr(text, line, col0, source)
    K = C.field
    ev = Evaluator(curve_env(C, K, name), lambda c: FFElement.const(C, c), line, source)
    return ev(node)


_FORM_TAIL = re.compile(r"\bd\s*([A-Za-z_][A-Za-z_0-9]*)\s*$")


def parse_form(text: str, C, line: int = 1, col0: int = 1, source: str = "<input>", name=None) -> Differential:
    m = _FORM_TAIL.search(text)
    if not m:
        raise ParseError(f"form must end with d{C.xname}", line, col0 + len(text), source)
    if m.group(1) != C.xname:
        raise ParseError(f"form must be written against d{C.xname}, found d{m.group(1)}",
                         line, col0 + m.start(), source)
    body = text[: m.start()].strip()
    if body.endswith("*"):
        body = body[:-1]
    if not body:
        body = "1"
    f = ff_from_text(body, C, line, col0, source, name)
    return Differential(C, f)


# problem files ----------------------------------------------------------------------------------


@dataclass
class ProblemFile:
    field: object
    curves: dict = field(default_factory=dict)
    forms: dict = field(default_factory=dict)          # name -> (curve name, Differential)
    correspondences: dict = field(default_factory=dict)
    query: dict = field(default_factory=dict)
    source: str = "<input>"

    def problem(self) -> Problem:
        q = self.query
        tname = q["target"]
        _, w0 = self.forms[tname]
        allowed = [(n, self.forms[n][1]) for n in q["allowed"]]
        b = Budgets()
        for key, attr in (("mw_budget", "mw_ops"), ("quotient_degree", "quotient_degree"),
                          ("digits", "digits"), ("k_max", "k_max"), ("paths", "check_paths"),
                          ("seed", "seed")):
            if key in q:
                setattr(b, attr, q[key])
        return Problem(w0, allowed, list(self.correspondences.values()), q["mode"],
                       q.get("assert_complete", False), b, tname)


_SECTIONS = ("field", "curves", "forms", "correspondences", "query")
_NAME = r"[A-Za-z_][A-Za-z_0-9]*"


def parse_problem_text(text: str, source: str = "<input>") -> ProblemFile:
    sections: dict = {s: [] for s in _SECTIONS}
    current = None
    for ln, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].rstrip()
        if not line.strip():
            continue
        m = re.match(r"^\s*\[(\w+)\]\s*$", line)
        if m:
            if m.group(1) not in sections:
                raise ParseError(f"unknown section [{m.group(1)}]", ln, line.index("[") + 1, source)
            current = m.group(1)
            continue
        if current is None:
            raise ParseError("content before the first section header", ln, 1, source)
        sections[current].append((ln, line))
    K = QQ
    if sections["field"]:
        if len(sections["field"]) > 1:
            raise ParseError("[field] takes a single polynomial", sections["field"][1][0], 1, source)
        ln, line = sections["field"][0]
        K = parse_field(line, ln, source)
    pf = ProblemFile(K, source=source)
    for ln, line in sections["curves"]:
        m = re.match(rf"^\s*({_NAME})\s*:(.*)$", line)
        if not m:
            raise ParseError("expected '<name>: <curve>'", ln, 1, source)
        name = m.group(1)
        if name in pf.curves:
            raise ParseError(f"curve {name} declared twice", ln, m.start(1) + 1, source)
        pf.curves[name] = parse_curve(m.group(2), K, ln, m.start(2) + 1, source)
    for ln, line in sections["forms"]:
        m = re.match(rf"^\s*({_NAME})\s+on\s+({_NAME})\s*=(.*)$", line)
        if not m:
            raise ParseError("expected '<name> on <curve> = <expr> d<x>'", ln, 1, source)
        name, cname = m.group(1), m.group(2)
        if cname not in pf.curves:
            raise ParseError(f"unknown curve {cname!r}", ln, m.start(2) + 1, source)
        if name in pf.forms:
            raise ParseError(f"form {name} declared twice", ln, m.start(1) + 1, source)
        pf.forms[name] = (cname, parse_form(m.group(3), pf.curves[cname], ln, m.start(3) + 1, source, cname))
    for ln, line in sections["correspondences"]:
        m = re.match(rf"^\s*({_NAME})\s*:\s*({_NAME})\s*~\s*({_NAME})\s*\{{(.*)\}}\s*$", line)
        if not m:
            raise ParseError("expected '<name>: <curve> ~ <curve> { rel, rel }'", ln, 1, source)
        name, ln_, rn_ = m.group(1), m.group(2), m.group(3)
        for cn, g in ((ln_, 2), (rn_, 3)):
            if cn not in pf.curves:
                raise ParseError(f"unknown curve {cn!r}", ln, m.start(g) + 1, source)
        pf.correspondences[name] = parse_correspondence(
            name, pf.curves[ln_], ln_, pf.curves[rn_], rn_, m.group(4), ln, m.start(4) + 1, source)
    pf.query = parse_query(sections["query"], pf, source)
    return pf


def parse_problem_file(path: str) -> ProblemFile:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except UnicodeDecodeError as exc:
        raise ParseError(f"not UTF-8: {exc.reason}", 1, 1, path) from None
    return parse_problem_text(text, path)


def _split_top(text: str, col0: int):
    """Split on commas outside parentheses; yields (piece, column)."""
    depth, start = 0, 0
    for i, ch in enumerate(text + ","):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif ch == "," and depth == 0:
            yield text[start:i], col0 + start
            start = i + 1


def _flatten(node: Node, sign: int = 1):
    if node.kind == "add":
        yield from _flatten(node.args[0], sign)
        yield from _flatten(node.args[1], sign)
    elif node.kind == "sub":
        yield from _flatten(node.args[0], sign)
        yield from _flatten(node.args[1], -sign)
    elif node.kind == "neg":
        yield from _flatten(node.args[0], -sign)
    else:
        yield sign, node


def _as_coordinate(node: Node, names: dict):
    """(coordinate, constant) when node is c*z, z*c or z for a coordinate z."""
    if node.kind == "var" and node.value in names:
        return names[node.value], Fraction(1)
    if node.kind == "mul":
        a, b = node.args
        if a.kind == "num" and b.kind == "var" and b.value in names:
            return names[b.value], a.value
        if b.kind == "num" and a.kind == "var" and a.value in names:
            return names[a.value], b.value
    return None


def _coord_names(C, cname: str, other) -> dict:
    out = {}
    coords = ["x"] + ([] if C.is_line else ["y"])
    for role in coords:
        n = C.xname if role == "x" else C.yname
        out[f"{cname}.{n}"] = role
        clash = other is not None and n in (other.xname, None if other.is_line else other.yname)
        if not clash:
            out[n] = role
    return out


def _solve_relations(rels, A, an, B, bn, line, source):
    """Try to read the relations as B's coordinates expressed on A."""
    names_b = _coord_names(B, bn, A if not A.same_model(B) or an != bn else None)
    names_a = set(_coord_names(A, an, B).keys())
    found = {}
    for node in rels:
        terms = list(_flatten(node))
        hits = [(i, _as_coordinate(t, names_b)) for i, (s, t) in enumerate(terms)]
        hits = [(i, h) for i, h in hits if h is not None]
        if len(hits) != 1:
            continue
        i, (role, c) = hits[0]
        rest = [terms[j] for j in range(len(terms)) if j != i]
        if any(names_in(t) & set(names_b) for _, t in rest):
            continue
        if any(names_in(t) - names_a - {"a"} for _, t in rest):
            continue
        if role in found or c == 0:
            continue
        sign = terms[i][0]
        found[role] = (sign * c, rest)
    needed = ["x"] + ([] if B.is_line else ["y"])
    if not all(r in found for r in needed):
        return None
    env = curve_env(A, A.field, an)
    ev = Evaluator(env, lambda c: FFElement.const(A, c), line, source)
    coords = {}
    for role in needed:
        c, rest = found[role]
        acc = FFElement.const(A, 0)
        for s, t in rest:
            acc = acc + ev(t) * s
        coords[role] = acc * (Fraction(-1) / c)
    return coords


def parse_correspondence(name, L, lname, R, rname, body, line, col0, source) -> Correspondence:
    rels = []
    for piece, col in _split_top(body, col0):
        if piece.strip():
            rels.append(parse_expr(piece, line, col, source))
    if not rels:
        raise ParseError("empty relation list", line, col0, source)
    try:
        coords = _solve_relations(rels, L, lname, R, rname, line, source)
        if coords is not None:
            phi = CurveMap(L, R, coords["x"], coords.get("y"))
            return Correspondence(L, R, phi, "pushforward", name)
        coords = _solve_relations(rels, R, rname, L, lname, line, source)
        if coords is not None:
            phi = CurveMap(R, L, coords["x"], coords.get("y"))
            return Correspondence(L, R, phi, "pullback", name)
    except FibralComponent as exc:
        raise ParseError(f"fibral component: {exc}", line, col0, source) from None
    except ValueError as exc:
        if isinstance(exc, ParseError):
            raise
        raise ParseError(f"relations do not define a map: {exc}", line, col0, source) from None
    raise ParseError(
        "relations must give one curve's coordinates as functions of the other's "
        "(graph of a map); general correspondences are not supported",
        line, col0, source)


_DECIDE = re.compile(rf"^\s*decide\s+({_NAME})\s+in\s*\{{([^}}]*)\}}(.*)$")
_INT_KEYS = {"mw_budget": (1, 10**8), "quotient_degree": (1, 12), "digits": (30, 200),
             "k_max": (1, 24), "paths": (1, 20), "seed": (0, 2**31)}


def parse_query(lines, pf: ProblemFile, source) -> dict:
    q: dict = {}
    for ln, line in lines:
        m = _DECIDE.match(line)
        if m:
            if "target" in q:
                raise ParseError("only one decide line is allowed", ln, 1, source)
            t = m.group(1)
            if t not in pf.forms:
                raise ParseError(f"unknown form {t!r}", ln, m.start(1) + 1, source)
            allowed = []
            for piece, col in _split_top(m.group(2), m.start(2) + 1):
                nm = piece.strip()
                if not nm:
                    continue
                if nm not in pf.forms:
                    raise ParseError(f"unknown form {nm!r}", ln, col, source)
                allowed.append(nm)
            q["target"], q["allowed"] = t, allowed
            q["mode"] = Mode.GENERAL
            for opt in m.group(3).split():
                _query_option(q, opt, ln, line.find(opt) + 1, source)
            continue
        norm = re.sub(r"\s*=\s*", "=", line)
        for opt in norm.split():
            _query_option(q, opt, ln, line.find(opt.split("=")[0]) + 1, source)
    if "target" not in q:
        raise ParseError("missing 'decide <form> in {...}' line", (lines[-1][0] if lines else 1), 1, source)
    return q


def _query_option(q, opt, ln, col, source):
    if opt in ("assert_complete", "assert_complete=true"):
        q["assert_complete"] = True
        return
    if opt == "assert_complete=false":
        q["assert_complete"] = False
        return
    if "=" not in opt:
        raise ParseError(f"unknown query option {opt!r}", ln, col, source)
    key, val = opt.split("=", 1)
    if key == "mode":
        try:
            q["mode"] = Mode(val)
        except ValueError:
            raise ParseError(f"mode must be general, elliptic or log, not {val!r}", ln, col, source) from None
        return
    if key in _INT_KEYS:
        lo, hi = _INT_KEYS[key]
        if not re.fullmatch(r"\d+", val) or not lo <= int(val) <= hi:
            raise ParseError(f"{key} must be an integer in [{lo}, {hi}]", ln, col, source)
        q[key] = int(val)
        return
    raise ParseError(f"unknown query option {key!r}", ln, col, source)
