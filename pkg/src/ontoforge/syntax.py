"""Functional-style text syntax: recursive-descent parser and canonical writer.

The grammar is a small subset of OWL 2 functional syntax plus the
``ComplementClasses(C D)`` extension::

    document   := prefix* 'Ontology' '(' IRI import* axiom* ')'
    prefix     := 'Prefix' '(' NAME? ':=' IRI ')'
    import     := 'Import' '(' iri ')'
    iri        := '<' ... '>' | CURIE
    literal    := '"' text '"' ( '^^' iri )?

``#`` starts a comment that runs to the end of the line.
"""
from __future__ import annotations

import bisect
import re
from dataclasses import dataclass

from .errors import ModelError, ParseError, UnboundPrefix
from .model import (
    XSD_STRING,
    AnnotationAssertion,
    Axiom,
    Characteristic,
    ClassAssertion,
    ComplementClasses,
    DataPropertyAssertion,
    DataPropertyDomain,
    DataPropertyRange,
    Declaration,
    DisjointClasses,
    EntityKind,
    Iri,
    Literal,
    ObjectPropertyAssertion,
    ObjectPropertyDomain,
    ObjectPropertyRange,
    Ontology,
    PrefixMap,
    PropertyCharacteristic,
    SubClassOf,
)

_TOKEN = re.compile(
    r"""
     (?P<ws>[ \t\r\n]+)
    |(?P<comment>\#[^\n]*)
    |(?P<lparen>\()
    |(?P<rparen>\))
    |(?P<iri><[^<>"\s]*>)
    |(?P<string>"(?:[^"\\]|\\.)*")
    |(?P<dtmark>\^\^)
    |(?P<prefixdecl>(?:[A-Za-z][A-Za-z0-9_-]*)?:=)
    |(?P<curie>(?:[A-Za-z][A-Za-z0-9_-]*)?:[A-Za-z0-9_.\-]*)
    |(?P<word>[A-Za-z]+)
    """,
    re.VERBOSE | re.DOTALL,
)


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    offset: int


def tokenize(text: str) -> tuple[list[Token], "_Positions"]:
    pos = _Positions(text)
    tokens = []
    i = 0
    while i < len(text):
        m = _TOKEN.match(text, i)
        if m is None:
            line, col = pos.at(i)
            if text[i] == '"':
                raise ParseError(line, col, "unterminated string literal", text[i:i + 20])
            if text[i] == "<":
                raise ParseError(line, col, "malformed IRI reference", text[i:i + 20].split("\n")[0])
            raise ParseError(line, col, "unexpected character", text[i])
        kind = m.lastgroup
        if kind not in ("ws", "comment"):
            tokens.append(Token(kind, m.group(), i))
        i = m.end()
    tokens.append(Token("eof", "", len(text)))
    return tokens, pos


class _Positions:
    def __init__(self, text: str):
        self.starts = [0] + [m.end() for m in re.finditer("\n", text)]

    def at(self, offset: int) -> tuple[int, int]:
        idx = bisect.bisect_right(self.starts, offset) - 1
        return idx + 1, offset - self.starts[idx] + 1


_DECLARATION_KINDS = {k.value: k for k in EntityKind}
_CHARACTERISTIC_KEYWORDS = {f"{c.value}ObjectProperty": c for c in Characteristic}
_KEYWORD_FOR_CHARACTERISTIC = {c: kw for kw, c in _CHARACTERISTIC_KEYWORDS.items()}

# keyword -> (argument shape, constructor). Shapes: i = iri, L = literal,
# V = literal or iri, + = two or more iris.
_AXIOMS = {
    "SubClassOf": ("ii", SubClassOf),
    "DisjointClasses": ("+", DisjointClasses),
    "ComplementClasses": ("ii", ComplementClasses),
    "ObjectPropertyDomain": ("ii", ObjectPropertyDomain),
    "ObjectPropertyRange": ("ii", ObjectPropertyRange),
    "DataPropertyDomain": ("ii", DataPropertyDomain),
    "DataPropertyRange": ("ii", DataPropertyRange),
    "ClassAssertion": ("ii", ClassAssertion),
    "ObjectPropertyAssertion": ("iii", ObjectPropertyAssertion),
    "DataPropertyAssertion": ("iiL", DataPropertyAssertion),
    "AnnotationAssertion": ("iiV", AnnotationAssertion),
}


class _Parser:
    def __init__(self, text: str):
        self.tokens, self.positions = tokenize(text)
        self.i = 0
        self.prefixes = PrefixMap()

    def error(self, tok: Token, message: str):
        line, col = self.positions.at(tok.offset)
        return ParseError(line, col, message, tok.text)

    def peek(self) -> Token:
        return self.tokens[self.i]

    def next(self) -> Token:
        tok = self.tokens[self.i]
        if tok.kind != "eof":
            self.i += 1
        return tok

    def expect(self, kind: str, what: str) -> Token:
        tok = self.next()
        if tok.kind != kind:
            raise self.error(tok, f"expected {what}, found {_describe(tok)}")
        return tok

    def expect_word(self, word: str) -> Token:
        tok = self.next()
        if tok.kind != "word" or tok.text != word:
            raise self.error(tok, f"expected {word!r}, found {_describe(tok)}")
        return tok

    def full_iri(self, tok: Token) -> Iri:
        try:
            return Iri(tok.text[1:-1])
        except ModelError as exc:
            raise self.error(tok, str(exc)) from None

    def iri(self) -> Iri:
        tok = self.next()
        if tok.kind == "iri":
            return self.full_iri(tok)
        if tok.kind == "curie":
            try:
                return self.prefixes.expand(tok.text)
            except UnboundPrefix as exc:
                raise self.error(tok, f"unbound prefix {exc.prefix!r}") from None
            except ModelError as exc:
                raise self.error(tok, str(exc)) from None
        raise self.error(tok, f"expected an IRI or CURIE, found {_describe(tok)}")

    def literal(self) -> Literal:
        tok = self.expect("string", "a quoted literal")
        lexical = self.unescape(tok)
        datatype = XSD_STRING
        if self.peek().kind == "dtmark":
            self.next()
            datatype = self.iri()
        return Literal(lexical, datatype)

    def unescape(self, tok: Token) -> str:
        body = tok.text[1:-1]
        out = []
        i = 0
        while i < len(body):
            ch = body[i]
            if ch == "\\":
                nxt = body[i + 1]
                if nxt not in '"\\':
                    line, col = self.positions.at(tok.offset + 1 + i)
                    raise ParseError(line, col, f"unsupported escape \\{nxt}", tok.text)
                out.append(nxt)
                i += 2
            else:
                out.append(ch)
                i += 1
        return "".join(out)

    def parse(self) -> Ontology:
        while self.peek().kind == "word" and self.peek().text == "Prefix":
            self.prefix_decl()
        self.expect_word("Ontology")
        self.expect("lparen", "'('")
        iri_tok = self.expect("iri", "the ontology IRI in angle brackets")
        onto = Ontology(self.full_iri(iri_tok), self.prefixes)
        while self.peek().kind == "word" and self.peek().text == "Import":
            self.next()
            self.expect("lparen", "'('")
            onto.add_import(self.iri())
            self.expect("rparen", "')'")
        while self.peek().kind == "word":
            kw = self.peek()
            ax = self.axiom()
            try:
                onto.add_axiom(ax)
            except ModelError as exc:
                raise self.error(kw, str(exc)) from None
        self.expect("rparen", "')' closing Ontology(")
        tok = self.peek()
        if tok.kind != "eof":
            raise self.error(tok, "unexpected content after the ontology")
        return onto

    def prefix_decl(self):
        self.next()
        self.expect("lparen", "'('")
        name_tok = self.expect("prefixdecl", "'name:='")
        ns = self.full_iri(self.expect("iri", "a namespace IRI"))
        self.expect("rparen", "')'")
        try:
            self.prefixes.bind(name_tok.text[:-2], ns)
        except ModelError as exc:
            raise self.error(name_tok, str(exc)) from None

    def axiom(self) -> Axiom:
        kw = self.next()
        name = kw.text
        self.expect("lparen", f"'(' after {name}")
        try:
            if name == "Declaration":
                kind_tok = self.expect("word", "an entity kind")
                kind = _DECLARATION_KINDS.get(kind_tok.text)
                if kind is None:
                    raise self.error(kind_tok, f"unknown entity kind {kind_tok.text!r}")
                self.expect("lparen", "'('")
                ax = Declaration(kind, self.iri())
                self.expect("rparen", "')'")
            elif name in _CHARACTERISTIC_KEYWORDS:
                ax = PropertyCharacteristic(self.iri(), _CHARACTERISTIC_KEYWORDS[name])
            elif name in _AXIOMS:
                shape, ctor = _AXIOMS[name]
                ax = ctor(*self.arguments(shape, name, kw))
            else:
                raise self.error(kw, f"unknown axiom keyword {name!r}")
        except ModelError as exc:
            raise self.error(kw, str(exc)) from None
        self.expect("rparen", f"')' closing {name}(")
        return ax

    def arguments(self, shape: str, name: str, kw: Token) -> list:
        if shape == "+":
            members = []
            while self.peek().kind in ("iri", "curie"):
                members.append(self.iri())
            if len(members) < 2:
                raise self.error(kw, f"{name} needs at least two classes")
            return [members]
        args = []
        for code in shape:
            if code == "i":
                args.append(self.iri())
            elif code == "L":
                args.append(self.literal())
            elif self.peek().kind == "string":
                args.append(self.literal())
            else:
                args.append(self.iri())
        return args


def _describe(tok: Token) -> str:
    return "end of input" if tok.kind == "eof" else repr(tok.text)


def parse_functional(text: str) -> Ontology:
    """Parse one ontology document; raises ParseError on the first problem."""
    return _Parser(text).parse()


def _escape(text: str) -> str:
    return text.replace("\\", "\\\\").replace('"', '\\"')


class _Writer:
    def __init__(self, prefixes: PrefixMap):
        self.prefixes = prefixes

    def iri(self, iri: Iri) -> str:
        curie = self.prefixes.abbreviate(iri)
        return curie if curie is not None else f"<{iri.value}>"

    def literal(self, lit: Literal) -> str:
        out = f'"{_escape(lit.lexical)}"'
        if lit.datatype != XSD_STRING:
            out += "^^" + self.iri(lit.datatype)
        return out

    def value(self, v) -> str:
        return self.literal(v) if isinstance(v, Literal) else self.iri(v)

    def axiom(self, ax: Axiom) -> str:
        w = self.iri
        if isinstance(ax, Declaration):
            return f"Declaration({ax.kind.value}({w(ax.entity)}))"
        if isinstance(ax, DisjointClasses):
            return f"DisjointClasses({' '.join(w(m) for m in ax.members)})"
        if isinstance(ax, PropertyCharacteristic):
            return f"{_KEYWORD_FOR_CHARACTERISTIC[ax.ch]}({w(ax.p)})"
        if isinstance(ax, DataPropertyAssertion):
            return f"DataPropertyAssertion({w(ax.p)} {w(ax.subj)} {self.literal(ax.value)})"
        if isinstance(ax, AnnotationAssertion):
            return f"AnnotationAssertion({w(ax.ap)} {w(ax.subject)} {self.value(ax.value)})"
        args = " ".join(w(i) for i in ax.references())
        return f"{type(ax).__name__}({args})"


def serialize_functional(o: Ontology, inferred=frozenset()) -> str:
    """Canonical text form of ``o``.

    Layout: sorted ``Prefix`` lines, ``Ontology(<iri>``, imports in list
    order, one axiom per line in canonical order, ``)`` and a final newline.
    Axioms in ``inferred`` get a trailing ``# inferred`` comment.
    """
    writer = _Writer(o.prefixes)
    lines = [f"Prefix({name}:=<{o.prefixes[name].value}>)" for name in sorted(o.prefixes)]
    lines.append(f"Ontology(<{o.iri.value}>")
    lines.extend(f"Import({writer.iri(imp)})" for imp in o.imports)
    for ax in o.sorted_axioms():
        line = writer.axiom(ax)
        if ax in inferred:
            line += "  # inferred"
        lines.append(line)
    lines.append(")")
    return "\n".join(lines) + "\n"
