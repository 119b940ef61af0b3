"""Canonical textual form for exact sets and points, with a round-trip parser.

Linear sets:  q{D: (0,1) u {1/2}; N: (0,1)}     field{Q2: [0,r2)}    m1{M1: ...}
Field points: a+b*r2+c*r3+d*r6 with zero terms dropped, e.g.  1/2+r2
Sequence pts: <2,1|0>  (prefix entries, then the constant tail)
Prefix sets:  seq{(0:*;.)} + {<1|0>} - {<0|0>}  (trie: * in, . out, (key:sub,...;default))
Sums:         sum{0: q{...}; 1: q{...}}         Duplicates: dup{1: q{...}; 2: q{...}}
"""

from __future__ import annotations

from fractions import Fraction

from .points import NEG_INF, POS_INF, FieldPoint, SeqPoint, Tagged, _Inf
from . import linear as L
from . import prefix as P


# ---------------------------------------------------------------------------
# points

def serialize_point(p) -> str:
    if isinstance(p, _Inf):
        return "+inf" if p.sign > 0 else "-inf"
    if isinstance(p, Fraction):
        return str(p)
    if isinstance(p, FieldPoint):
        terms = []
        for coef, unit in ((p.a, ""), (p.b, "r2"), (p.c, "r3"), (p.d, "r6")):
            if coef == 0:
                continue
            if not unit:
                terms.append(str(coef))
            elif coef == 1:
                terms.append(unit)
            elif coef == -1:
                terms.append(f"-{unit}")
            else:
                terms.append(f"{coef}*{unit}")
        out = terms[0]
        for t in terms[1:]:
            out += t if t.startswith("-") else "+" + t
        return out
    if isinstance(p, SeqPoint):
        return f"<{','.join(map(str, p.prefix))}|{p.tail}>"
    if isinstance(p, Tagged):
        return f"{p.tag}@{serialize_point(p.point)}"
    raise TypeError(f"cannot serialize point {p!r}")


def parse_point(text: str):
    text = text.strip()
    if text == "+inf":
        return POS_INF
    if text == "-inf":
        return NEG_INF
    if text.startswith("<"):
        body, tail = text[1:-1].split("|")
        prefix = tuple(int(x) for x in body.split(",") if x.strip() != "")
        return SeqPoint(prefix, int(tail))
    if "@" in text:
        tag, rest = text.split("@", 1)
        return Tagged(int(tag), parse_point(rest))
    if "r2" in text or "r3" in text or "r6" in text:
        return _parse_field(text)
    return Fraction(text)


def _parse_field(text: str):
    from .points import fieldpoint
    coefs = {"": Fraction(0), "r2": Fraction(0), "r3": Fraction(0), "r6": Fraction(0)}
    # split into signed terms
    terms, cur = [], ""
    for ch in text:
        if ch in "+-" and cur and cur[-1] not in "+-*/":
            terms.append(cur)
            cur = ch
        else:
            cur += ch
    terms.append(cur)
    for t in terms:
        t = t.strip()
        unit = ""
        for u in ("r2", "r3", "r6"):
            if t.endswith(u):
                unit = u
                t = t[: -len(u)]
                break
        t = t.rstrip("*")
        if t in ("", "+"):
            c = Fraction(1)
        elif t == "-":
            c = Fraction(-1)
        else:
            c = Fraction(t)
        coefs[unit] += c
    return fieldpoint(coefs[""], coefs["r2"], coefs["r3"], coefs["r6"])


# ---------------------------------------------------------------------------
# sets

def serialize_set(s) -> str:
    from .spaces import SumSet, DupSet

    if isinstance(s, L.LinearSet):
        if not s.parts:
            return f"{s.line.name}{{}}"
        body = "; ".join(f"{name}: {_ser_part(part)}" for name, part in s.parts.items())
        return f"{s.line.name}{{{body}}}"
    if isinstance(s, P.PrefixSet):
        out = f"{s.carrier.name}{{{_ser_trie(s.trie)}}}"
        if s.added:
            out += " + {" + ", ".join(sorted(serialize_point(p) for p in s.added)) + "}"
        if s.removed:
            out += " - {" + ", ".join(sorted(serialize_point(p) for p in s.removed)) + "}"
        return out
    if isinstance(s, SumSet):
        body = "; ".join(f"{t}: {serialize_set(c)}" for t, c in s.comps.items())
        return f"sum{{{body}}}"
    if isinstance(s, DupSet):
        return f"dup{{1: {serialize_set(s.l1)}; 2: {serialize_set(s.l2)}}}"
    if hasattr(s, "exact") and s.exact is not None:
        return serialize_set(s.exact)
    if hasattr(s, "desc"):
        return f"probe:{s.desc}"
    raise TypeError(f"cannot serialize {s!r}")


def _ser_part(part: L.Part) -> str:
    pieces = []
    for lo, li, hi, hi_i in part.intervals:
        lb = "[" if li else "("
        rb = "]" if hi_i else ")"
        pieces.append(f"{lb}{serialize_point(lo)},{serialize_point(hi)}{rb}")
    if part.points:
        pieces.append("{" + ", ".join(serialize_point(p) for p in part.points) + "}")
    return " u ".join(pieces) if pieces else "{}"


def _ser_trie(t) -> str:
    if isinstance(t, bool):
        return "*" if t else "."
    inner = ",".join(f"{k}:{_ser_trie(c)}" for k, c in t[1])
    return f"({inner};{'*' if t[2] else '.'})"


def parse_set(text: str, space=None):
    text = text.strip()
    for name in ("sum", "dup"):
        if text.startswith(name + "{"):
            return _parse_composite(name, text, space)
    if text.startswith("seq{") or text.startswith("sigma"):
        return _parse_prefix(text, space)
    brace = text.index("{")
    line_name = text[:brace]
    line = L.LINES[line_name]
    body = text[brace + 1:text.rindex("}")].strip()
    raw = {}
    if body:
        for chunk in _split_top(body, ";"):
            atom, _, rest = chunk.partition(":")
            raw[atom.strip()] = _parse_part(rest.strip())
    return L.make_linear(line, raw)


def _split_top(text: str, sep: str):
    out, depth, cur = [], 0, ""
    for ch in text:
        if ch in "([{<":
            depth += 1
        elif ch in ")]}>":
            depth -= 1
        if ch == sep and depth == 0:
            out.append(cur)
            cur = ""
        else:
            cur += ch
    if cur.strip():
        out.append(cur)
    return out


def _parse_part(text: str):
    intervals, points = [], []
    for piece in text.split(" u "):
        piece = piece.strip()
        if not piece or piece == "{}":
            continue
        if piece.startswith("{"):
            for pt in _split_top(piece[1:-1], ","):
                points.append(parse_point(pt))
            continue
        li = piece[0] == "["
        hi_i = piece[-1] == "]"
        lo_s, hi_s = _split_top(piece[1:-1], ",")
        intervals.append((parse_point(lo_s), li, parse_point(hi_s), hi_i))
    return (intervals, points)


def _parse_prefix(text: str, space):
    carrier = P.SeqCarrier() if space is None else space.carrier
    added, removed = frozenset(), frozenset()
    main = text
    if " - {" in main:
        main, _, rest = main.partition(" - {")
        removed = frozenset(parse_point(p) for p in _split_top(rest.rstrip("}"), ","))
    if " + {" in main:
        main, _, rest = main.partition(" + {")
        added = frozenset(parse_point(p) for p in _split_top(rest.rstrip(" }").rstrip("}"), ","))
    body = main[main.index("{") + 1:main.rindex("}")]
    trie, rest = _parse_trie(body)
    return P.PrefixSet(carrier, trie, added, removed)


def _parse_trie(text: str):
    text = text.strip()
    if text[0] == "*":
        return True, text[1:]
    if text[0] == ".":
        return False, text[1:]
    assert text[0] == "("
    text = text[1:]
    children = {}
    while text[0] != ";":
        key, _, text = text.partition(":")
        child, text = _parse_trie(text)
        children[int(key)] = child
        if text[0] == ",":
            text = text[1:]
    default = text[1] == "*"
    assert text[2] == ")"
    return P.t_node(children, default), text[3:]


def _parse_composite(kind: str, text: str, space):
    from .spaces import SumSet, DupSet

    body = text[len(kind) + 1:text.rindex("}")]
    comps = {}
    for chunk in _split_top(body, ";"):
        tag, _, rest = chunk.partition(":")
        sub = None if space is None else (
            space.comps[int(tag)] if kind == "sum" else space.base)
        comps[int(tag)] = parse_set(rest.strip(), sub)
    if kind == "sum":
        return SumSet(comps)
    return DupSet(comps.get(1) or _empty_like(comps[2]),
                  comps.get(2) or _empty_like(comps[1]))


def _empty_like(s: L.LinearSet) -> L.LinearSet:
    return L.empty_set(s.line)
