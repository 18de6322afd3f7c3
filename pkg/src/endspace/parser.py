"""Recursive-descent parser and printer for the surface/end-term DSL.

    surface genus=inf ends=line(sum(cantor g, cantor), g, g)

Parsing is two-phase: syntax first (``ParseError`` with 1-based line and
column), then validity (``ValidityError`` carrying a source span per
violation).
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Any

from .ordinal import ONE, ZERO, Ord, OrdinalError, add
from .terms import (
    INF,
    Bloom,
    Cacc,
    Cantor,
    Fan,
    GenusSpec,
    Iter,
    Line,
    Omega,
    OrdSpace,
    Pt,
    Sum,
    Surface,
    Term,
    TermError,
    check_surface,
    has_genus_end,
    schema_flag,
)


@dataclass(frozen=True)
class SourceSpan:
    start: int
    end: int


class ParseError(ValueError):
    def __init__(self, message: str, text: str, offset: int):
        self.message = message
        self.offset = max(0, min(offset, len(text)))
        self.line = text.count("\n", 0, self.offset) + 1
        self.col = self.offset - (text.rfind("\n", 0, self.offset) + 1) + 1
        self.span = SourceSpan(self.offset, self.offset)
        super().__init__(f"{self.line}:{self.col}: {message}")


class ValidityError(TermError):
    """Semantic violations, each with the span of the offending node."""

    def __init__(self, violations, spans):
        super().__init__(violations)
        self.spans = [spans.get(p) for p, _ in self.violations]


_TOKEN = re.compile(r"\s+|#[^\n]*|(?P<num>\d+)|(?P<word>[A-Za-z_]+)|(?P<sym>[(),=^*+!])")


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    toks = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos]!r}", text, pos)
        kind = m.lastgroup
        if kind:
            toks.append((kind, m.group(kind), pos))
        pos = m.end()
    toks.append(("eof", "", len(text)))
    return toks


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0
        self.spans: dict[str, SourceSpan] = {}

    # token helpers
    def peek(self, k: int = 0):
        return self.toks[min(self.i + k, len(self.toks) - 1)]

    def at(self, value: str) -> bool:
        return self.peek()[1] == value and self.peek()[0] != "eof"

    def next(self):
        tok = self.toks[self.i]
        if tok[0] != "eof":
            self.i += 1
        return tok

    def error(self, msg: str, tok=None):
        tok = tok or self.peek()
        raise ParseError(msg, self.text, tok[2])

    def expect(self, value: str):
        tok = self.peek()
        if tok[1] != value or tok[0] == "eof":
            self.error(f"expected {value!r}, found {tok[1] or 'end of input'!r}")
        return self.next()

    def nat(self) -> int:
        tok = self.peek()
        if tok[0] != "num":
            self.error(f"expected a natural number, found {tok[1] or 'end of input'!r}")
        self.next()
        return int(tok[1])

    def end(self):
        if self.peek()[0] != "eof":
            self.error(f"unexpected trailing input {self.peek()[1]!r}")

    # grammar
    def surface(self) -> Surface:
        self.expect("surface")
        self.expect("genus")
        self.expect("=")
        if self.at("inf"):
            self.next()
            genus: int | float = INF
        else:
            genus = self.nat()
        self.expect("ends")
        self.expect("=")
        ends = self.term("/")
        self.end()
        return Surface(genus, ends)

    def flag(self) -> bool:
        if self.at("!"):
            self.next()
            self.expect("g")
            return False
        self.expect("g")
        return True

    def at_flag(self) -> bool:
        return self.at("g") or self.at("!")

    def term(self, path: str) -> Term:
        start = self.peek()
        kind, word, pos = start
        if kind != "word":
            self.error(f"expected a term, found {word or 'end of input'!r}")
        self.next()
        if word in ("pt", "cantor"):
            g = self.flag() if self.at_flag() else False
            node: Term = Pt(g) if word == "pt" else Cantor(g)
        elif word == "sum":
            self.expect("(")
            kids = [self.term(f"{path.rstrip('/')}/0")]
            while self.at(","):
                self.next()
                kids.append(self.term(f"{path.rstrip('/')}/{len(kids)}"))
            self.expect(")")
            node = Sum(kids)
        elif word in ("omega", "cacc"):
            self.expect("(")
            child = self.term(f"{path.rstrip('/')}/child")
            g = has_genus_end(child)
            if self.at(","):
                self.next()
                g = self.flag()
            self.expect(")")
            node = Omega(child, g) if word == "omega" else Cacc(child, g)
        elif word == "line":
            self.expect("(")
            child = self.term(f"{path.rstrip('/')}/child")
            g1 = g2 = has_genus_end(child)
            if self.at(","):
                self.next()
                g1 = self.flag()
                self.expect(",")
                g2 = self.flag()
            self.expect(")")
            node = Line(child, g1, g2)
        elif word == "ord":
            self.expect("(")
            alpha = self.ordinal()
            self.expect(",")
            n = self.nat()
            gs = GenusSpec.none()
            if self.at(","):
                self.next()
                gs = self.gspec()
            self.expect(")")
            node = OrdSpace(alpha, n, gs)
        elif word == "fan":
            node = self.fan(path)
        else:
            self.error(f"unknown constructor {word!r}", start)
        self.spans[path] = SourceSpan(pos, self.toks[self.i - 1][2] + len(self.toks[self.i - 1][1]))
        return node

    def fan(self, path: str) -> Fan:
        self.expect("(")
        kind, word, _ = self.peek()
        if word not in ("iter", "bloom") or kind != "word":
            self.error("expected 'iter(' or 'bloom(' schema")
        self.next()
        self.expect("(")
        base = self.term(f"{path.rstrip('/')}/base")
        if word == "iter":
            schema: Iter | Bloom = Iter(base)
        else:
            z = has_genus_end(base)
            if self.at(","):
                self.next()
                z = self.flag()
            schema = Bloom(base, z)
        self.expect(")")
        self.expect(",")
        forced = schema_flag(schema)
        if self.at("one"):
            self.next()
            tops: tuple = (self.flag(),) if self.at_flag() else (forced,)
        elif self.at("two"):
            self.next()
            if self.at_flag():
                tops = (self.flag(), self.flag())
            else:
                tops = (forced, forced)
        else:
            self.error("expected 'one' or 'two'")
        repeated = False
        if self.at(","):
            self.next()
            self.expect("repeated")
            repeated = True
        self.expect(")")
        return Fan(schema, tops, repeated)

    def gspec(self) -> GenusSpec:
        if self.at("none"):
            self.next()
            return GenusSpec.none()
        if self.at("all"):
            self.next()
            return GenusSpec.all()
        self.expect("ge")
        self.expect("(")
        beta = self.ordinal()
        self.expect(")")
        return GenusSpec.at_least(beta)

    def ordinal(self) -> Ord:
        tok = self.peek()
        try:
            total = self.oterm()
            while self.at("+"):
                self.next()
                total = add(total, self.oterm())
            return total
        except OrdinalError as exc:
            raise ParseError(str(exc), self.text, tok[2]) from None

    def oterm(self) -> Ord:
        if self.peek()[0] == "num":
            value = Ord.of(self.nat())
            base_exp, coeff = (ZERO, int(value)) if value else (None, 0)
        else:
            base_exp, coeff = self.power(), 1
        while self.at("*"):
            self.next()
            coeff *= self.nat()
        if base_exp is None or coeff == 0:
            return ZERO
        return Ord(((base_exp, coeff),))

    def power(self) -> Ord:
        # returns the exponent of a 'w' atom
        if not self.at("w"):
            self.error("expected an ordinal")
        self.next()
        if not self.at("^"):
            return ONE
        self.next()
        if self.peek()[0] == "num":
            return Ord.of(self.nat())
        if self.at("("):
            self.next()
            e = self.ordinal()
            self.expect(")")
            return e
        return Ord(((self.power(), 1),))


def _check_spans(p: _Parser, violations):
    if violations:
        raise ValidityError(violations, p.spans)


def parse_term(text: str, validate: bool = True) -> Term:
    from .terms import validate as _validate

    p = _Parser(text)
    t = p.term("/")
    p.end()
    if validate:
        _check_spans(p, _validate(t))
    return t


def parse_surface(text: str, validate: bool = True) -> Surface:
    p = _Parser(text)
    s = p.surface()
    if validate:
        bad = check_surface(s)
        if bad:
            spans = dict(p.spans)
            spans.setdefault("genus", SourceSpan(0, len(text)))
            raise ValidityError(bad, spans)
    return s


def parse_ordinal(text: str) -> Ord:
    p = _Parser(text)
    o = p.ordinal()
    p.end()
    return o


def parse_any(text: str) -> Surface | Term:
    """Parse a surface if the text starts with ``surface``, else a bare term."""
    stripped = re.sub(r"#[^\n]*", "", text).strip()
    return parse_surface(text) if stripped.startswith("surface") else parse_term(text)


# printing


def _flag(g: bool) -> str:
    return "g" if g else "!g"


def print_term(t: Term) -> str:
    if isinstance(t, Pt):
        return "pt g" if t.g else "pt"
    if isinstance(t, Cantor):
        return "cantor g" if t.g else "cantor"
    if isinstance(t, Sum):
        return "sum(" + ", ".join(print_term(c) for c in t.children) + ")"
    if isinstance(t, (Omega, Cacc)):
        name = "omega" if isinstance(t, Omega) else "cacc"
        inner = print_term(t.child)
        if t.g != has_genus_end(t.child):
            return f"{name}({inner}, {_flag(t.g)})"
        return f"{name}({inner})"
    if isinstance(t, Line):
        return f"line({print_term(t.child)}, {_flag(t.g1)}, {_flag(t.g2)})"
    if isinstance(t, OrdSpace):
        return f"ord({t.alpha},{t.n},{t.gs})"
    if isinstance(t, Fan):
        s = t.schema
        if isinstance(s, Iter):
            head = f"iter({print_term(s.base)})"
        elif s.zflag != has_genus_end(s.base):
            head = f"bloom({print_term(s.base)}, {_flag(s.zflag)})"
        else:
            head = f"bloom({print_term(s.base)})"
        forced = schema_flag(s)
        word = "one" if len(t.tops) == 1 else "two"
        if all(f == forced for f in t.tops):
            acc = word
        else:
            acc = word + " " + " ".join(_flag(f) for f in t.tops)
        tail = ", repeated" if t.repeated else ""
        return f"fan({head}, {acc}{tail})"
    raise TypeError(f"not a term: {t!r}")


def print_surface(s: Surface) -> str:
    genus = "inf" if s.genus == INF else str(s.genus)
    return f"surface genus={genus} ends={print_term(s.ends)}"


# structured serialization


def to_dict(x: Surface | Term) -> dict[str, Any]:
    if isinstance(x, Surface):
        return {"genus": "inf" if x.genus == INF else x.genus, "ends": to_dict(x.ends)}
    t = x
    if isinstance(t, (Pt, Cantor)):
        return {"kind": "pt" if isinstance(t, Pt) else "cantor", "g": t.g}
    if isinstance(t, Sum):
        return {"kind": "sum", "children": [to_dict(c) for c in t.children]}
    if isinstance(t, (Omega, Cacc)):
        return {"kind": "omega" if isinstance(t, Omega) else "cacc", "child": to_dict(t.child), "g": t.g}
    if isinstance(t, Line):
        return {"kind": "line", "child": to_dict(t.child), "g1": t.g1, "g2": t.g2}
    if isinstance(t, OrdSpace):
        return {"kind": "ord", "alpha": str(t.alpha), "n": t.n, "gspec": str(t.gs)}
    if isinstance(t, Fan):
        s = t.schema
        sd: dict[str, Any] = {"kind": "iter" if isinstance(s, Iter) else "bloom", "base": to_dict(s.base)}
        if isinstance(s, Bloom):
            sd["zflag"] = s.zflag
        return {"kind": "fan", "schema": sd, "tops": list(t.tops), "repeated": t.repeated}
    raise TypeError(f"not a term: {t!r}")


def from_dict(d: dict[str, Any]) -> Surface | Term:
    if "ends" in d:
        genus = INF if d["genus"] == "inf" else int(d["genus"])
        return Surface(genus, from_dict(d["ends"]))
    kind = d["kind"]
    if kind == "pt":
        return Pt(bool(d["g"]))
    if kind == "cantor":
        return Cantor(bool(d["g"]))
    if kind == "sum":
        return Sum(from_dict(c) for c in d["children"])
    if kind == "omega":
        return Omega(from_dict(d["child"]), bool(d["g"]))
    if kind == "cacc":
        return Cacc(from_dict(d["child"]), bool(d["g"]))
    if kind == "line":
        return Line(from_dict(d["child"]), bool(d["g1"]), bool(d["g2"]))
    if kind == "ord":
        gs = _Parser(d["gspec"]).gspec()
        return OrdSpace(parse_ordinal(d["alpha"]), int(d["n"]), gs)
    if kind == "fan":
        sd = d["schema"]
        base = from_dict(sd["base"])
        schema = Iter(base) if sd["kind"] == "iter" else Bloom(base, bool(sd["zflag"]))
        return Fan(schema, tuple(bool(f) for f in d["tops"]), bool(d["repeated"]))
    raise ValueError(f"unknown term kind {kind!r}")
