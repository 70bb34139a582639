"""Verdict documents: canonical key-value text (and JSON), plus independent replay.

Text form: one ``key: value`` per line, nested maps indented by two spaces,
lists written as ``- item`` lines.  Keys are sorted at every level, so the
encoding of a verdict is byte-deterministic.  ``replay_hash`` is the SHA-256
of the document body (everything except the hash line itself).
"""

from __future__ import annotations

import hashlib
import json
from fractions import Fraction

from ..arith import QQ
from ..arith.numberfield import AlgebraicNumber, Embedding, NumberField
from ..decision import Answer, Correspondence, CurveMap, Verdict, _oriented
from ..differentials import Differential, dlog
from .parser import Evaluator, ParseError, ff_from_text, parse_curve, parse_expr, parse_form, poly_from_node

FORMAT = "algint-verdict/1"


def _num(c) -> str:
    if isinstance(c, AlgebraicNumber):
        if c.is_rational():
            return str(c.coords[0])
        return c.to_str("a")
    return str(Fraction(c))


def _clean(s: str) -> str:
    return " ".join(str(s).split())


def verdict_tree(v: Verdict) -> dict:
    pb = v.problem
    tree = {
        "format": FORMAT,
        "answer": v.answer.value,
        "problem": {
            "target": pb.target_name,
            "allowed": [n for n, _ in pb.allowed],
            "mode": pb.mode.value,
            "assert_complete": "true" if pb.assert_complete else "false",
            "target_curve": pb.target.curve.equation(),
        },
        "evidence": {k: _clean(val) for k, val in v.evidence.items()},
        "qualifications": [_clean(q) for q in v.qualifications],
    }
    if v.certificate is not None:
        tree["certificate"] = certificate_tree(v.certificate)
    if v.cross_check is not None:
        tree["cross_check"] = {k: _clean(val) for k, val in v.cross_check.items()}
    return tree


def certificate_tree(cert) -> dict:
    F = cert.field
    emb = cert.embedding
    fld = {"minpoly": "Q" if F.is_qq else F.minpoly.to_str("a")}
    if emb is not None and not emb.src.is_qq and not emb.is_identity():
        fld["base_generator"] = _num(emb.gen_image)
    terms = {}
    for i, t in enumerate(cert.terms, 1):
        d = {"coefficient": _num(t.coefficient), "kind": t.kind, "origin": t.origin,
             "form": _clean(t.form.to_str())}
        if t.kind == "dlog":
            d["function"] = _clean(t.function.to_str())
        elif t.origin == "quotient":
            phi = t.corr.map
            d["curve"] = phi.target.equation()
            d["map_x"] = _clean(phi.u.to_str())
            d["map_y"] = _clean(phi.v.to_str())
            d["source_form"] = _clean(t.source.to_str())
        else:
            d["source"] = t.source_name
            d["correspondence"] = t.corr.name
            d["map"] = _clean(t.corr.describe())
        terms[f"t{i:02d}"] = d
    g = cert.gamma
    return {
        "field": fld,
        "terms": terms,
        "gamma": _clean(g.to_str()),
        "gamma_minpoly": _clean(_minpoly_str(g)),
    }


def _minpoly_str(g) -> str:
    cs = g.minimal_polynomial()
    x = g.curve.xname
    parts = []
    for k in range(len(cs) - 1, -1, -1):
        c = cs[k]
        if not c:
            continue
        cs_ = c.to_str(x)
        parts.append(f"({cs_})*T^{k}" if k else f"({cs_})")
    return " + ".join(parts) if parts else "0"


# text encoding -------------------------------------------------------------------------------------


def _emit(tree, indent, out):
    pad = "  " * indent
    for key in sorted(tree):
        val = tree[key]
        if isinstance(val, dict):
            out.append(f"{pad}{key}:")
            _emit(val, indent + 1, out)
        elif isinstance(val, list):
            out.append(f"{pad}{key}:")
            for item in val:
                out.append(f"{pad}  - {item}")
        else:
            out.append(f"{pad}{key}: {val if val != '' else chr(34) * 2}")


def body_text(tree: dict) -> str:
    body = {k: v for k, v in tree.items() if k != "replay_hash"}
    out: list[str] = []
    _emit(body, 0, out)
    return "\n".join(out) + "\n"


def replay_hash(tree: dict) -> str:
    return hashlib.sha256(body_text(tree).encode("utf-8")).hexdigest()


def to_text(v: Verdict) -> str:
    tree = verdict_tree(v)
    body = body_text(tree)
    return body + f"replay_hash: {hashlib.sha256(body.encode('utf-8')).hexdigest()}\n"


def to_json(v: Verdict) -> str:
    tree = verdict_tree(v)
    tree["replay_hash"] = replay_hash(tree)
    return json.dumps(tree, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def parse_document(text: str, source: str = "<verdict>") -> dict:
    """Inverse of the text (or JSON) encoding."""
    if text.lstrip().startswith("{"):
        try:
            tree = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ParseError(f"bad JSON: {exc.msg}", exc.lineno, exc.colno, source) from None
        if not isinstance(tree, dict):
            raise ParseError("document must be a mapping", 1, 1, source)
        return tree
    lines = text.splitlines()
    root: dict = {}
    stack: list = [(-1, root)]
    for i, raw in enumerate(lines):
        if not raw.strip():
            continue
        ln = i + 1
        spaces = len(raw) - len(raw.lstrip(" "))
        if spaces % 2:
            raise ParseError("odd indentation", ln, 1, source)
        indent = spaces // 2
        line = raw.strip()
        while stack[-1][0] >= indent:
            stack.pop()
        parent = stack[-1][1]
        if line.startswith("- "):
            if not isinstance(parent, list):
                raise ParseError("list item outside a list", ln, spaces + 1, source)
            parent.append(line[2:])
            continue
        if isinstance(parent, list):
            raise ParseError("mapping entry inside a list", ln, spaces + 1, source)
        key, sep, val = line.partition(":")
        if not sep or not key.strip():
            raise ParseError("expected 'key: value'", ln, spaces + 1, source)
        key, val = key.strip(), val.strip()
        if val:
            parent[key] = "" if val == '""' else val
            continue
        nxt = next((l for l in lines[i + 1:] if l.strip()), "")
        deeper = (len(nxt) - len(nxt.lstrip(" "))) // 2 > indent
        container: object = [] if deeper and nxt.strip().startswith("- ") else {}
        parent[key] = container
        stack.append((indent, container))
    return root


# independent verification -------------------------------------------------------------------------------


class Rejected(ValueError):
    pass


def verify_document(pf, tree: dict) -> str:
    """Check the hash and replay the certificate against the problem file.

    Returns the answer string; raises Rejected on any mismatch.
    """
    if tree.get("format") != FORMAT:
        raise Rejected(f"unknown format {tree.get('format')!r}")
    h = tree.get("replay_hash")
    if h != replay_hash(tree):
        raise Rejected("replay hash mismatch")
    answer = tree.get("answer")
    if answer not in {a.value for a in Answer}:
        raise Rejected(f"unknown answer {answer!r}")
    prob = tree.get("problem", {})
    tname = prob.get("target")
    if tname not in pf.forms:
        raise Rejected(f"target {tname!r} is not a form of the problem file")
    if answer == Answer.NO.value and not tree.get("evidence", {}).get("completeness"):
        raise Rejected("NO without a completeness justification")
    if answer != Answer.YES.value:
        return answer
    cert = tree.get("certificate")
    if not isinstance(cert, dict):
        raise Rejected("YES without a certificate")
    _replay(pf, tname, cert)
    return answer


def _field_from(cert, K):
    fld = cert.get("field", {})
    mp = fld.get("minpoly", "Q")
    if mp == "Q":
        return QQ, Embedding.identity(K)
    node = parse_expr(mp, 1, 1, "<certificate>")
    F = NumberField(poly_from_node(node, "a", QQ, 1, "<certificate>").monic(), "a")
    if K.is_qq:
        return F, Embedding(QQ, F)
    img = _const(fld.get("base_generator", "a"), F)
    if K.minpoly.map_coeffs(lambda c: F(c), F)(img):
        raise Rejected("base generator image is not a root of the base field polynomial")
    return F, Embedding(K, F, img)


def _const(text: str, F):
    node = parse_expr(text, 1, 1, "<certificate>")
    env = {} if F.is_qq else {"a": F.gen}
    const = (lambda c: Fraction(c)) if F.is_qq else (lambda c: F(c))
    return Evaluator(env, const, 1, "<certificate>")(node)


def _replay(pf, tname, cert):
    cname, w0 = pf.forms[tname]
    X0 = w0.curve
    F, emb = _field_from(cert, X0.field)
    w0F = w0.base_change(emb)
    XF = w0F.curve
    total = Differential.zero(XF)
    terms = cert.get("terms", {})
    if not isinstance(terms, dict):
        raise Rejected("terms must be a mapping")
    for key in sorted(terms):
        t = terms[key]
        c = _const(t["coefficient"], F)
        kind = t.get("kind")
        if kind == "dlog":
            f = ff_from_text(t["function"], XF, 1, 1, "<certificate>")
            T = dlog(f)
        elif t.get("origin") == "quotient":
            E = parse_curve(t["curve"], F, 1, 1, "<certificate>")
            u = ff_from_text(t["map_x"], XF, 1, 1, "<certificate>")
            v = ff_from_text(t["map_y"], XF, 1, 1, "<certificate>")
            src = parse_form(t["source_form"], E, 1, 1, "<certificate>")
            T = CurveMap(XF, E, u, v).pullback(src)
        else:
            sname, zname = t.get("source"), t.get("correspondence")
            if sname not in pf.forms:
                raise Rejected(f"unknown source form {sname!r}")
            w = pf.forms[sname][1]
            if zname == "id":
                if not w.curve.same_model(X0):
                    raise Rejected("identity term on a different curve")
                Z = Correspondence(X0, X0, CurveMap.identity(X0), "pullback", "id")
            else:
                if zname not in pf.correspondences:
                    raise Rejected(f"unknown correspondence {zname!r}")
                Z = _oriented(pf.correspondences[zname], w.curve, X0)
                if Z is None:
                    raise Rejected(f"{zname} does not connect {sname} to the target")
            if "map" in t and _clean(Z.describe()) != t["map"]:
                raise Rejected(f"{key}: map does not match correspondence {zname}")
            T = Z.trace_image(w).base_change(emb)
        total = total + T.scale(c)
    gamma = ff_from_text(cert.get("gamma", "0"), XF, 1, 1, "<certificate>")
    if w0F - total - Differential.exact(gamma):
        raise Rejected("certificate identity does not hold")
