"""Manchester-syntax lexer, recursive-descent parser and renderer.

Covers the frame subset used by the SDE ontology files: Prefix, Ontology,
Import, Class, ObjectProperty, AnnotationProperty, Individual plus the
DisjointClasses / EquivalentClasses misc frames.
"""
from __future__ import annotations

import re
from dataclasses import dataclass

from .model import (
    BOTTOM, DEFAULT_PREFIXES, OWL, TOP, And, AnnotationAssertion, Bottom,
    ClassAssertion, Concept, Declaration, DisjointClasses, Domain,
    EquivalentClasses, EquivalentProperties, Exact, HasValue, Import,
    InverseProperties, Max, Min, Named, Not, OneOf, Only, Ontology, Or,
    PropertyAssertion, Range, RoleExpr, Some, SubClassOf, SubPropertyOf, Top,
    TransitiveProperty,
)

CONCEPT_KEYWORDS = {"and", "or", "not", "some", "only", "min", "max", "exactly", "value", "inverse", "that"}
FRAME_KEYWORDS = {
    "Prefix:", "Ontology:", "Import:", "Class:", "ObjectProperty:", "AnnotationProperty:",
    "Individual:", "DataProperty:", "Datatype:", "DisjointClasses:", "EquivalentClasses:",
    "SubClassOf:", "EquivalentTo:", "DisjointWith:", "Annotations:", "SubPropertyOf:",
    "InverseOf:", "Characteristics:", "Domain:", "Range:", "Types:", "Facts:",
    "SameAs:", "DifferentFrom:", "DisjointUnionOf:", "HasKey:", "SubPropertyChain:",
}
KEYWORDS = CONCEPT_KEYWORDS | FRAME_KEYWORDS
RESTRICTION_KEYWORDS = {"some", "only", "value", "min", "max", "exactly"}
PUNCTUATION = set("(){}[],")

_WS = re.compile(r"[ \t\r\n\f\v﻿]+")
_IDENT = re.compile(r"[^\s'\"(){}\[\],<>#:\d][^\s'\"(){}\[\],<>#:]*|[A-Za-z_]")
_INT = re.compile(r"\d+")


class SyntaxProblem(Exception):
    """Base for lexical and grammatical errors; carries a 1-based location."""

    def __init__(self, message: str, line: int, column: int, path: str | None = None):
        self.message = message
        self.line = line
        self.column = column
        self.path = path
        super().__init__(self.location() + ": " + message)

    def location(self) -> str:
        where = f"{self.line}:{self.column}"
        return f"{self.path}:{where}" if self.path else where

    def with_path(self, path):
        return type(self)(self.message, self.line, self.column, path, *self._extra())

    def _extra(self):
        return ()


class LexError(SyntaxProblem):
    pass


class ParseError(SyntaxProblem):
    def __init__(self, message, line, column, path=None, expected=()):
        self.expected = tuple(sorted(expected))
        if self.expected:
            message = f"{message} (expected one of: {', '.join(self.expected)})"
        super().__init__(message, line, column, path)

    def with_path(self, path):
        err = ParseError(self.message, self.line, self.column, path)
        err.expected = self.expected
        return err


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    line: int
    column: int
    start: int = 0
    end: int = 0

    def __repr__(self):
        return f"Token({self.kind}, {self.text!r}, {self.line}:{self.column})"


def tokenize(text: str) -> list:
    """Split ``text`` into tokens, comments included.

    ``text[tok.start:tok.end]`` is the exact source slice of each token, so
    whitespace gaps plus those slices rebuild the input.
    """
    tokens = []
    pos, line, col = 0, 1, 1
    n = len(text)

    def advance(upto):
        nonlocal pos, line, col
        chunk = text[pos:upto]
        newlines = chunk.count("\n")
        if newlines:
            line += newlines
            col = len(chunk) - chunk.rfind("\n")
        else:
            col += len(chunk)
        pos = upto

    while pos < n:
        m = _WS.match(text, pos)
        if m:
            advance(m.end())
            continue
        ch = text[pos]
        start, sl, sc = pos, line, col
        if ch == "#":
            end = text.find("\n", pos)
            end = n if end < 0 else end
            tokens.append(Token("comment", text[pos:end], sl, sc, start, end))
            advance(end)
        elif ch == "'":
            end = text.find("'", pos + 1)
            nl = text.find("\n", pos + 1)
            if end < 0 or (0 <= nl < end):
                raise LexError("unterminated quoted name", sl, sc)
            tokens.append(Token("quotedName", text[pos + 1:end], sl, sc, start, end + 1))
            advance(end + 1)
        elif ch == '"':
            i = pos + 1
            buf = []
            while True:
                if i >= n:
                    raise LexError("unterminated string literal", sl, sc)
                c = text[i]
                if c == "\\" and i + 1 < n:
                    buf.append(text[i + 1])
                    i += 2
                    continue
                if c == '"':
                    break
                buf.append(c)
                i += 1
            tokens.append(Token("stringLiteral", "".join(buf), sl, sc, start, i + 1))
            advance(i + 1)
        elif ch == "<":
            end = text.find(">", pos + 1)
            if end < 0 or any(c.isspace() for c in text[pos + 1:end]):
                raise LexError("unterminated IRI", sl, sc)
            tokens.append(Token("fullIRI", text[pos + 1:end], sl, sc, start, end + 1))
            advance(end + 1)
        elif ch in PUNCTUATION:
            tokens.append(Token("punctuation", ch, sl, sc, start, pos + 1))
            advance(pos + 1)
        elif ch.isdigit():
            m = _INT.match(text, pos)
            tokens.append(Token("integer", m.group(), sl, sc, start, m.end()))
            advance(m.end())
        elif ch == ":" or _IDENT.match(text, pos):
            m = _IDENT.match(text, pos)
            end = m.end() if m and ch != ":" else pos
            word = text[pos:end]
            if end < n and text[end] == ":":
                if word + ":" in FRAME_KEYWORDS:
                    tokens.append(Token("keyword", word + ":", sl, sc, start, end + 1))
                    advance(end + 1)
                    continue
                # prefixed name, possibly with an empty prefix or local part
                m2 = re.compile(r"[^\s'\"(){}\[\],<>#]*").match(text, end + 1)
                full = text[pos:m2.end()]
                tokens.append(Token("prefixedName", full, sl, sc, start, m2.end()))
                advance(m2.end())
                continue
            kind = "keyword" if word in CONCEPT_KEYWORDS else "simpleName"
            tokens.append(Token(kind, word, sl, sc, start, end))
            advance(end)
        else:
            raise LexError(f"unexpected character {ch!r}", sl, sc)
    return tokens


# -- parser ---------------------------------------------------------------

class _Parser:
    def __init__(self, text: str, prefixes: dict | None = None):
        toks = [t for t in tokenize(text) if t.kind != "comment"]
        self.tokens = toks
        self.i = 0
        self.prefixes = dict(DEFAULT_PREFIXES)
        if prefixes:
            self.prefixes.update(prefixes)
        # end-of-input errors point at the final character of the text
        before = text[:-1] if text else ""
        line = before.count("\n") + 1
        col = len(before) - before.rfind("\n") if text else 1
        self._eof = Token("eof", "", line, col)

    # token helpers
    def peek(self, k=0) -> Token:
        j = self.i + k
        return self.tokens[j] if j < len(self.tokens) else self._eof

    def next(self) -> Token:
        tok = self.peek()
        self.i += 1
        return tok

    def at(self, kind, text=None, k=0) -> bool:
        tok = self.peek(k)
        return tok.kind == kind and (text is None or tok.text == text)

    def at_kw(self, *words) -> bool:
        tok = self.peek()
        return tok.kind == "keyword" and tok.text in words

    def error(self, message, expected=(), tok=None):
        tok = tok or self.peek()
        return ParseError(message, tok.line, tok.column, expected=expected)

    def expect(self, kind, text=None, what=None):
        tok = self.peek()
        if tok.kind != kind or (text is not None and tok.text != text):
            shown = tok.text if tok.kind != "eof" else "end of input"
            raise self.error(f"unexpected {shown!r}", expected=[what or text or kind])
        return self.next()

    def at_name(self, k=0) -> bool:
        return self.peek(k).kind in ("simpleName", "quotedName", "prefixedName", "fullIRI")

    # names
    def expand(self, tok: Token) -> str:
        if tok.kind == "prefixedName":
            pfx, _, local = tok.text.partition(":")
            ns = self.prefixes.get(pfx + ":")
            if ns is None:
                raise self.error(f"undeclared prefix {pfx + ':'!r}", tok=tok)
            return ns + local
        return tok.text

    def name(self, what="name") -> str:
        if not self.at_name():
            tok = self.peek()
            shown = tok.text if tok.kind != "eof" else "end of input"
            raise self.error(f"unexpected {shown!r}", expected=[what])
        return self.expand(self.next())

    def individual(self) -> str:
        return self.name("individual name")

    # class expressions
    def description(self) -> Concept:
        parts = [self.conjunction()]
        while self.at_kw("or"):
            self.next()
            parts.append(self.conjunction())
        return parts[0] if len(parts) == 1 else Or(parts)

    def conjunction(self) -> Concept:
        parts = [self.primary()]
        while self.at_kw("and", "that"):
            self.next()
            parts.append(self.primary())
        return parts[0] if len(parts) == 1 else And(parts)

    def role_expr(self) -> RoleExpr:
        inverted = False
        while self.at_kw("inverse"):
            self.next()
            inverted = not inverted
        if self.at("punctuation", "("):
            self.next()
            r = self.role_expr()
            self.expect("punctuation", ")")
            return RoleExpr(r.name, r.inverted != inverted)
        tok = self.peek()
        name = self.name("property name")
        if name.startswith(OWL) and name[len(OWL):] in ("Thing", "Nothing"):
            raise self.error("class used where a property is expected", tok=tok)
        return RoleExpr(name, inverted)

    def _cardinality(self) -> int:
        tok = self.expect("integer", what="non-negative integer")
        return int(tok.text)

    def _reject_qualifier(self):
        if self.at_name() or self.at("punctuation", "(") or self.at("punctuation", "{") or self.at_kw("not"):
            raise self.error(
                "qualified cardinality restrictions are outside the supported "
                "SHIN tier; use an unqualified restriction such as 'r min 2'")

    def _reject_datatype(self, filler_tok: Token, filler: Concept):
        if isinstance(filler, Named) and filler.name.startswith(
                ("http://www.w3.org/2001/XMLSchema#",)):
            raise ParseError("datatype restrictions are not supported in class expressions",
                             filler_tok.line, filler_tok.column)

    def restriction(self) -> Concept:
        r = self.role_expr()
        tok = self.peek()
        if tok.kind != "keyword" or tok.text not in RESTRICTION_KEYWORDS:
            raise self.error(f"unexpected {tok.text or 'end of input'!r}",
                             expected=sorted(RESTRICTION_KEYWORDS))
        kw = self.next().text
        if kw in ("some", "only"):
            ftok = self.peek()
            filler = self.primary()
            self._reject_datatype(ftok, filler)
            return Some(r, filler) if kw == "some" else Only(r, filler)
        if kw == "value":
            if self.at("stringLiteral") or self.at("integer"):
                raise self.error("literal values (datatype reasoning) are not supported in class expressions")
            return HasValue(r, self.individual())
        n = self._cardinality()
        self._reject_qualifier()
        return {"min": Min, "max": Max, "exactly": Exact}[kw](n, r)

    def primary(self) -> Concept:
        tok = self.peek()
        if self.at_kw("not"):
            self.next()
            return Not(self.primary())
        if self.at_kw("min", "max", "exactly"):
            kw = self.next().text
            n = self._cardinality()
            r = self.role_expr()
            self._reject_qualifier()
            return {"min": Min, "max": Max, "exactly": Exact}[kw](n, r)
        if self.at_kw("inverse"):
            return self.restriction()
        if self.at("punctuation", "("):
            self.next()
            c = self.description()
            self.expect("punctuation", ")")
            return c
        if self.at("punctuation", "{"):
            self.next()
            names = [self.individual()]
            while self.at("punctuation", ","):
                self.next()
                names.append(self.individual())
            self.expect("punctuation", "}")
            return OneOf(names)
        if self.at_name():
            nxt = self.peek(1)
            if nxt.kind == "keyword" and nxt.text in RESTRICTION_KEYWORDS:
                return self.restriction()
            name = self.expand(self.next())
            if name == OWL + "Thing":
                return TOP
            if name == OWL + "Nothing":
                return BOTTOM
            return Named(name)
        if tok.kind in ("stringLiteral", "integer"):
            raise self.error("literals (datatype reasoning) are not supported in class expressions")
        shown = tok.text if tok.kind != "eof" else "end of input"
        raise self.error(f"unexpected {shown!r}",
                         expected=["class name", "'('", "'not'", "'{'", "property name"])

    # frames
    def description_list(self) -> list:
        items = [self.description()]
        while self.at("punctuation", ","):
            self.next()
            items.append(self.description())
        return items

    def role_list(self) -> list:
        items = [self.role_expr()]
        while self.at("punctuation", ","):
            self.next()
            items.append(self.role_expr())
        return items

    def annotation_value(self) -> str:
        tok = self.peek()
        if tok.kind == "stringLiteral":
            self.next()
            # language tags and datatype suffixes are accepted and dropped
            nxt = self.peek()
            if nxt.start == tok.end and nxt.text.startswith(("@", "^^")):
                self.next()
            return tok.text
        if tok.kind == "integer":
            self.next()
            return tok.text
        return self.name("annotation value")

    def annotation_list(self) -> list:
        out = []
        while True:
            if self.at_kw("Annotations:"):
                # nested annotations on annotations are skipped
                self.next()
                self.annotation_list()
            ptok = self.peek()
            prop = self.name("annotation property")
            value = self.annotation_value()
            out.append((prop, value, ptok.line))
            if not self.at("punctuation", ","):
                return out
            self.next()


SECTION_START = {"Class:", "ObjectProperty:", "AnnotationProperty:", "Individual:",
                 "DataProperty:", "Datatype:", "DisjointClasses:", "EquivalentClasses:",
                 "Import:", "Ontology:", "Prefix:"}


def parse_ontology(text: str, path: str | None = None) -> Ontology:
    """Parse a whole ``.omn`` document into an :class:`Ontology`."""
    try:
        return _OntologyParser(text).run(path)
    except (LexError, ParseError) as err:
        if path and err.path is None:
            raise err.with_path(path) from None
        raise


class _OntologyParser(_Parser):
    def run(self, path):
        onto = Ontology(path=path)
        self.onto = onto
        while self.at_kw("Prefix:"):
            self.next()
            tok = self.peek()
            if tok.kind == "prefixedName" and tok.text.endswith(":") and tok.text.count(":") == 1:
                pfx = self.next().text
            else:
                raise self.error("malformed prefix declaration", expected=["prefix name ending in ':'"])
            iri = self.expect("fullIRI", what="<IRI>").text
            self.prefixes[pfx] = iri
            onto.prefixes[pfx] = iri
        if self.at_kw("Ontology:"):
            self.next()
            if self.at("fullIRI"):
                onto.iri = self.next().text
                if self.at("fullIRI"):
                    self.next()  # version IRI
        while self.peek().kind != "eof":
            tok = self.peek()
            if tok.kind != "keyword" or tok.text not in SECTION_START | {"Annotations:"}:
                raise self.error(f"unexpected {tok.text!r}", expected=sorted(SECTION_START))
            self.frame()
        return onto

    def emit(self, axiom, line):
        self.onto.axioms.append(axiom)
        self.onto.lines.append(line)

    def frame(self):
        tok = self.next()
        kw = tok.text
        line = tok.line
        if kw == "Import:":
            self.emit(Import(self.expect("fullIRI", what="<IRI>").text), line)
        elif kw == "Annotations:":
            for prop, value, _ in self.annotation_list():
                self.onto.annotations.append((prop, value))
        elif kw == "Class:":
            self.class_frame(line)
        elif kw == "ObjectProperty:":
            self.property_frame(line)
        elif kw == "AnnotationProperty:":
            name = self.name("annotation property name")
            self.emit(Declaration("AnnotationProperty", name), line)
            while self.at_kw("Annotations:", "SubPropertyOf:", "Domain:", "Range:"):
                ck = self.next().text
                if ck == "Annotations:":
                    self._annotations_for(name)
                else:
                    self.role_list() if ck == "SubPropertyOf:" else self.name()
        elif kw == "Individual:":
            self.individual_frame(line)
        elif kw in ("DisjointClasses:", "EquivalentClasses:"):
            members = self.description_list()
            if len(members) < 2:
                raise self.error(f"{kw} needs at least two class expressions", tok=tok)
            cls = DisjointClasses if kw == "DisjointClasses:" else EquivalentClasses
            self.emit(cls(members), line)
        elif kw in ("DataProperty:", "Datatype:"):
            raise ParseError(f"{kw} frames are outside the supported tier (no datatype reasoning)",
                             tok.line, tok.column)
        else:
            raise ParseError(f"unexpected {kw!r}", tok.line, tok.column, expected=sorted(SECTION_START))

    def _annotations_for(self, subject):
        for prop, value, line in self.annotation_list():
            self.emit(AnnotationAssertion(subject, prop, value), line)

    def _skip_axiom_annotations(self):
        if self.at_kw("Annotations:"):
            self.next()
            self.annotation_list()

    def _clause_items(self, parse_item):
        items = []
        while True:
            self._skip_axiom_annotations()
            tok = self.peek()
            items.append((parse_item(), tok.line))
            if not self.at("punctuation", ","):
                return items
            self.next()

    def class_frame(self, line):
        name = self.name("class name")
        if name in (OWL + "Thing", OWL + "Nothing"):
            cls = TOP if name.endswith("Thing") else BOTTOM
        else:
            cls = Named(name)
        self.emit(Declaration("Class", name), line)
        clauses = ("SubClassOf:", "EquivalentTo:", "DisjointWith:", "Annotations:",
                   "DisjointUnionOf:", "HasKey:")
        while self.at_kw(*clauses):
            ck = self.next()
            if ck.text == "Annotations:":
                self._annotations_for(name)
            elif ck.text == "SubClassOf:":
                for d, ln in self._clause_items(self.description):
                    self.emit(SubClassOf(cls, d), ln)
            elif ck.text == "EquivalentTo:":
                for d, ln in self._clause_items(self.description):
                    self.emit(EquivalentClasses((cls, d)), ln)
            elif ck.text == "DisjointWith:":
                for d, ln in self._clause_items(self.description):
                    self.emit(DisjointClasses((cls, d)), ln)
            else:
                raise ParseError(f"{ck.text} is not supported", ck.line, ck.column)

    def property_frame(self, line):
        name = self.name("property name")
        r = RoleExpr(name)
        self.emit(Declaration("ObjectProperty", name), line)
        clauses = ("SubPropertyOf:", "InverseOf:", "Characteristics:", "Domain:", "Range:",
                   "EquivalentTo:", "Annotations:", "DisjointWith:", "SubPropertyChain:")
        while self.at_kw(*clauses):
            ck = self.next()
            if ck.text == "Annotations:":
                self._annotations_for(name)
            elif ck.text == "SubPropertyOf:":
                for s, ln in self._clause_items(self.role_expr):
                    self.emit(SubPropertyOf(r, s), ln)
            elif ck.text == "EquivalentTo:":
                for s, ln in self._clause_items(self.role_expr):
                    self.emit(EquivalentProperties((r, s)), ln)
            elif ck.text == "InverseOf:":
                for s, ln in self._clause_items(self.role_expr):
                    self.emit(InverseProperties(r, s), ln)
            elif ck.text == "Domain:":
                for d, ln in self._clause_items(self.description):
                    self.emit(Domain(r, d), ln)
            elif ck.text == "Range:":
                for d, ln in self._clause_items(self.description):
                    self.emit(Range(r, d), ln)
            elif ck.text == "Characteristics:":
                for c, ln in self._clause_items(lambda: self.expect("simpleName", what="characteristic")):
                    if c.text != "Transitive":
                        raise ParseError(
                            f"characteristic {c.text!r} is not supported (only Transitive)",
                            c.line, c.column, expected=["Transitive"])
                    self.emit(TransitiveProperty(r), ln)
            else:
                raise ParseError(f"{ck.text} is not supported", ck.line, ck.column)

    def individual_frame(self, line):
        name = self.individual()
        self.emit(Declaration("NamedIndividual", name), line)
        while self.at_kw("Types:", "Facts:", "Annotations:", "SameAs:", "DifferentFrom:"):
            ck = self.next()
            if ck.text == "Annotations:":
                self._annotations_for(name)
            elif ck.text == "Types:":
                for d, ln in self._clause_items(self.description):
                    self.emit(ClassAssertion(name, d), ln)
            elif ck.text == "Facts:":
                def fact():
                    if self.at_kw("not"):
                        raise self.error("negative property assertions are not supported")
                    r = self.role_expr()
                    if self.at("stringLiteral") or self.at("integer"):
                        raise self.error("data property assertions are not supported")
                    return r, self.individual()
                for (r, obj), ln in self._clause_items(fact):
                    self.emit(PropertyAssertion(name, r, obj), ln)
            else:
                raise ParseError(f"{ck.text} is not supported (no nominal reasoning)", ck.line, ck.column)


def parse_concept(text: str, prefixes: dict | None = None) -> Concept:
    """Parse a single class expression such as ``A and (r some B)``."""
    p = _Parser(text, prefixes)
    c = p.description()
    if p.peek().kind != "eof":
        tok = p.peek()
        raise p.error(f"unexpected {tok.text!r} after class expression",
                      expected=["'and'", "'or'", "end of input"])
    return c


# -- rendering ------------------------------------------------------------

_SIMPLE_OK = re.compile(r"[A-Za-z_][A-Za-z0-9_\-.]*\Z")


def render_name(name: str, prefixes: dict | None = None) -> str:
    table = dict(DEFAULT_PREFIXES)
    if prefixes:
        table.update(prefixes)
    for pfx, ns in sorted(table.items(), key=lambda kv: -len(kv[1])):
        if name.startswith(ns) and _SIMPLE_OK.match(name[len(ns):] or "_"):
            return pfx + name[len(ns):]
    if _SIMPLE_OK.match(name) and name not in KEYWORDS and not name.endswith("."):
        return name
    if "'" not in name and name and not any(c in name for c in "\n\r"):
        if "://" in name or name.startswith("urn:"):
            return f"<{name}>"
        return f"'{name}'"
    return f"<{name}>"


def render_role(r: RoleExpr, prefixes=None) -> str:
    base = render_name(r.name, prefixes)
    return f"inverse {base}" if r.inverted else base


def _atomic(c: Concept) -> bool:
    return isinstance(c, (Named, Top, Bottom, OneOf))


def render_concept(c: Concept, prefixes=None) -> str:
    def wrap(x):
        s = render_concept(x, prefixes)
        return s if _atomic(x) else f"({s})"

    if isinstance(c, Top):
        return "owl:Thing"
    if isinstance(c, Bottom):
        return "owl:Nothing"
    if isinstance(c, Named):
        return render_name(c.name, prefixes)
    if isinstance(c, And):
        return " and ".join(wrap(o) for o in c.operands)
    if isinstance(c, Or):
        return " or ".join(wrap(o) for o in c.operands)
    if isinstance(c, Not):
        return f"not {wrap(c.operand)}"
    if isinstance(c, Some):
        return f"{render_role(c.role, prefixes)} some {wrap(c.filler)}"
    if isinstance(c, Only):
        return f"{render_role(c.role, prefixes)} only {wrap(c.filler)}"
    if isinstance(c, (Min, Max, Exact)):
        kw = {Min: "min", Max: "max", Exact: "exactly"}[type(c)]
        return f"{render_role(c.role, prefixes)} {kw} {c.n}"
    if isinstance(c, OneOf):
        return "{" + ", ".join(render_name(i, prefixes) for i in c.individuals) + "}"
    if isinstance(c, HasValue):
        return f"{render_role(c.role, prefixes)} value {render_name(c.individual, prefixes)}"
    raise TypeError(f"not a class expression: {c!r}")


def _quote_literal(value: str) -> str:
    return '"' + value.replace("\\", "\\\\").replace('"', '\\"') + '"'


def render_axiom(ax, prefixes=None) -> str:
    """One axiom as a self-contained frame (used by manifests and reports)."""
    rc = lambda c: render_concept(c, prefixes)  # noqa: E731
    rn = lambda n: render_name(n, prefixes)  # noqa: E731
    rr = lambda r: render_role(r, prefixes)  # noqa: E731
    if isinstance(ax, Declaration):
        kw = {"NamedIndividual": "Individual"}.get(ax.kind, ax.kind)
        return f"{kw}: {rn(ax.name)}"
    if isinstance(ax, SubClassOf):
        if not isinstance(ax.sub, Named):
            raise ValueError("only named subclasses have a frame rendering")
        return f"Class: {rn(ax.sub.name)} SubClassOf: {rc(ax.sup)}"
    if isinstance(ax, (EquivalentClasses, DisjointClasses)):
        kw = "EquivalentClasses" if isinstance(ax, EquivalentClasses) else "DisjointClasses"
        first = ax.members[0]
        if isinstance(first, Named) and len(ax.members) == 2:
            clause = "EquivalentTo" if kw == "EquivalentClasses" else "DisjointWith"
            return f"Class: {rn(first.name)} {clause}: {rc(ax.members[1])}"
        return f"{kw}: " + ", ".join(rc(m) for m in ax.members)
    if isinstance(ax, SubPropertyOf):
        return f"ObjectProperty: {rr(ax.sub)} SubPropertyOf: {rr(ax.sup)}"
    if isinstance(ax, EquivalentProperties):
        return f"ObjectProperty: {rr(ax.members[0])} EquivalentTo: " + ", ".join(rr(m) for m in ax.members[1:])
    if isinstance(ax, InverseProperties):
        return f"ObjectProperty: {rr(ax.first)} InverseOf: {rr(ax.second)}"
    if isinstance(ax, TransitiveProperty):
        return f"ObjectProperty: {rr(ax.role)} Characteristics: Transitive"
    if isinstance(ax, Domain):
        return f"ObjectProperty: {rr(ax.role)} Domain: {rc(ax.concept)}"
    if isinstance(ax, Range):
        return f"ObjectProperty: {rr(ax.role)} Range: {rc(ax.concept)}"
    if isinstance(ax, ClassAssertion):
        return f"Individual: {rn(ax.individual)} Types: {rc(ax.concept)}"
    if isinstance(ax, PropertyAssertion):
        return f"Individual: {rn(ax.subject)} Facts: {rr(ax.role)} {rn(ax.object)}"
    if isinstance(ax, AnnotationAssertion):
        return f"Class: {rn(ax.subject)} Annotations: {rn(ax.property)} {_quote_literal(ax.value)}"
    if isinstance(ax, Import):
        return f"Import: <{ax.iri}>"
    raise TypeError(f"not an axiom: {ax!r}")


def render_ontology(onto: Ontology) -> str:
    """Render an ontology so that it re-parses to the same axiom list.

    Each axiom becomes its own frame; annotation assertions are attached to
    a frame of the subject's declared kind so no spurious declarations
    appear on re-parse.
    """
    pf = onto.prefixes
    out = []
    for pfx, iri in onto.prefixes.items():
        out.append(f"Prefix: {pfx} <{iri}>")
    out.append(f"Ontology: <{onto.iri}>" if onto.iri else "Ontology:")
    for prop, value in onto.annotations:
        out.append(f"Annotations: {render_name(prop, pf)} {_quote_literal(value)}")
    # Frames emit Declarations, so group each declaration with the axioms
    # it produced and re-emit them as one frame.
    i = 0
    axioms = onto.axioms
    while i < len(axioms):
        ax = axioms[i]
        if isinstance(ax, Declaration):
            j = i + 1
            body = []
            while j < len(axioms) and _belongs_to(ax, axioms[j]):
                body.append(_clause(ax, axioms[j], pf))
                j += 1
            kw = {"NamedIndividual": "Individual"}.get(ax.kind, ax.kind)
            out.append(f"{kw}: {render_name(ax.name, pf)}" + "".join("\n    " + b for b in body))
            i = j
        else:
            out.append(_standalone(ax, pf))
            i += 1
    return "\n".join(out) + "\n"


def _frame_subject(decl):
    if decl.kind == "Class":
        if decl.name == OWL + "Thing":
            return TOP
        if decl.name == OWL + "Nothing":
            return BOTTOM
        return Named(decl.name)
    if decl.kind == "ObjectProperty":
        return RoleExpr(decl.name)
    return decl.name


def _belongs_to(decl, ax) -> bool:
    subj = _frame_subject(decl)
    if isinstance(ax, AnnotationAssertion):
        return ax.subject == decl.name
    if decl.kind == "Class":
        if isinstance(ax, SubClassOf):
            return ax.sub == subj
        if isinstance(ax, (EquivalentClasses, DisjointClasses)):
            return len(ax.members) == 2 and ax.members[0] == subj
    if decl.kind == "ObjectProperty":
        if isinstance(ax, SubPropertyOf):
            return ax.sub == subj
        if isinstance(ax, (EquivalentProperties,)):
            return len(ax.members) == 2 and ax.members[0] == subj
        if isinstance(ax, InverseProperties):
            return ax.first == subj
        if isinstance(ax, (TransitiveProperty, Domain, Range)):
            return ax.role == subj
    if decl.kind == "NamedIndividual":
        if isinstance(ax, ClassAssertion):
            return ax.individual == decl.name
        if isinstance(ax, PropertyAssertion):
            return ax.subject == decl.name
    return False


def _clause(decl, ax, pf) -> str:
    rc = lambda c: render_concept(c, pf)  # noqa: E731
    rr = lambda r: render_role(r, pf)  # noqa: E731
    if isinstance(ax, AnnotationAssertion):
        return f"Annotations: {render_name(ax.property, pf)} {_quote_literal(ax.value)}"
    if isinstance(ax, SubClassOf):
        return f"SubClassOf: {rc(ax.sup)}"
    if isinstance(ax, EquivalentClasses):
        return f"EquivalentTo: {rc(ax.members[1])}"
    if isinstance(ax, DisjointClasses):
        return f"DisjointWith: {rc(ax.members[1])}"
    if isinstance(ax, SubPropertyOf):
        return f"SubPropertyOf: {rr(ax.sup)}"
    if isinstance(ax, EquivalentProperties):
        return f"EquivalentTo: {rr(ax.members[1])}"
    if isinstance(ax, InverseProperties):
        return f"InverseOf: {rr(ax.second)}"
    if isinstance(ax, TransitiveProperty):
        return "Characteristics: Transitive"
    if isinstance(ax, Domain):
        return f"Domain: {rc(ax.concept)}"
    if isinstance(ax, Range):
        return f"Range: {rc(ax.concept)}"
    if isinstance(ax, ClassAssertion):
        return f"Types: {rc(ax.concept)}"
    if isinstance(ax, PropertyAssertion):
        return f"Facts: {rr(ax.role)} {render_name(ax.object, pf)}"
    raise TypeError(ax)


def _standalone(ax, pf) -> str:
    if isinstance(ax, Import):
        return f"Import: <{ax.iri}>"
    if isinstance(ax, (EquivalentClasses, DisjointClasses)):
        kw = "EquivalentClasses" if isinstance(ax, EquivalentClasses) else "DisjointClasses"
        return f"{kw}: " + ", ".join(render_concept(m, pf) for m in ax.members)
    raise ValueError(
        f"{type(ax).__name__} outside a frame has no Manchester rendering: {ax!r}")


def render(node, prefixes=None) -> str:
    """Render an :class:`Ontology` or a class expression back to text."""
    if isinstance(node, Ontology):
        return render_ontology(node)
    if isinstance(node, Concept):
        return render_concept(node, prefixes)
    return render_axiom(node, prefixes)
