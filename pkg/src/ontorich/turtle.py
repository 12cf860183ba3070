"""Turtle reader/writer for the subset the workbench needs.

Supported syntax: @prefix/@base directives, absolute IRIs in angle
brackets, prefixed names, blank node labels, string/integer/decimal/
boolean literals with optional ^^datatype or @lang, predicate lists ';',
object lists ',', the 'a' keyword and '#' comments.

Serialization is deterministic: triples come out in lexicographic
subject/predicate/object order, one statement per line, absolute IRIs.
"""

from __future__ import annotations

import re

from .errors import ParseError, UnknownPrefix
from .model import XSD, BlankNode, Graph, Iri, Literal, Triple

_TOKEN_RE = re.compile(
    r"""
      (?P<ws>\s+)
    | (?P<comment>\#[^\n]*)
    | (?P<iriref><[^<>"{}|^`\\\s]*>)
    | (?P<string>"(?:[^"\\\n]|\\.)*"|'(?:[^'\\\n]|\\.)*')
    | (?P<langtag>@[a-zA-Z]+(?:-[a-zA-Z0-9]+)*)
    | (?P<dcarets>\^\^)
    | (?P<blank>_:[A-Za-z0-9][A-Za-z0-9_.\-]*)
    | (?P<number>[+-]?[0-9]+\.[0-9]+|[+-]?\.[0-9]+|[+-]?[0-9]+)
    | (?P<pname>[A-Za-z][A-Za-z0-9_\-]*?:[A-Za-z0-9_][A-Za-z0-9_.\-]*|[A-Za-z][A-Za-z0-9_\-]*?:|:[A-Za-z0-9_][A-Za-z0-9_.\-]*|:)
    | (?P<keyword>\b(?:a|true|false)\b)
    | (?P<punct>[.;,\[\]])
    """,
    re.VERBOSE,
)

_STRING_ESCAPES = {
    "n": "\n", "t": "\t", "r": "\r", "b": "\b", "f": "\f",
    '"': '"', "'": "'", "\\": "\\",
}

_INTEGER_RE = re.compile(r"^[+-]?[0-9]+$")
_DECIMAL_RE = re.compile(r"^[+-]?[0-9]*\.[0-9]+$")


class _Token:
    __slots__ = ("kind", "text", "pos")

    def __init__(self, kind, text, pos):
        self.kind = kind
        self.text = text
        self.pos = pos


def _line_col(text: str, pos: int):
    line = text.count("\n", 0, pos) + 1
    last_nl = text.rfind("\n", 0, pos)
    return line, pos - last_nl


def _unescape(raw: str, text: str, pos: int) -> str:
    out = []
    i = 0
    while i < len(raw):
        c = raw[i]
        if c != "\\":
            out.append(c)
            i += 1
            continue
        if i + 1 >= len(raw):
            line, col = _line_col(text, pos)
            raise ParseError(line, col, "dangling escape in string")
        e = raw[i + 1]
        if e in _STRING_ESCAPES:
            out.append(_STRING_ESCAPES[e])
            i += 2
        elif e == "u":
            out.append(chr(int(raw[i + 2:i + 6], 16)))
            i += 6
        elif e == "U":
            out.append(chr(int(raw[i + 2:i + 10], 16)))
            i += 10
        else:
            line, col = _line_col(text, pos)
            raise ParseError(line, col, f"bad string escape '\\{e}'")
    return "".join(out)


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = self._tokenize(text)
        self.i = 0
        self.graph = Graph()
        self.base = ""

    def _tokenize(self, text):
        tokens = []
        pos = 0
        n = len(text)
        while pos < n:
            m = _TOKEN_RE.match(text, pos)
            if m is None:
                line, col = _line_col(text, pos)
                raise ParseError(line, col, f"unexpected character {text[pos]!r}")
            kind = m.lastgroup
            text_tok = m.group()
            end = m.end()
            # a trailing '.' on a name is the statement terminator, not
            # part of the name
            if kind in ("pname", "blank") and text_tok.endswith("."):
                text_tok = text_tok.rstrip(".")
                end -= len(m.group()) - len(text_tok)
            if kind not in ("ws", "comment"):
                tokens.append(_Token(kind, text_tok, pos))
            pos = end
        return tokens

    def _fail(self, pos, message):
        line, col = _line_col(self.text, pos)
        raise ParseError(line, col, message)

    def _peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else None

    def _next(self, expect=None):
        tok = self._peek()
        if tok is None:
            self._fail(len(self.text), "unexpected end of input")
        if expect is not None and (tok.kind, tok.text) != expect and tok.kind != expect:
            self._fail(tok.pos, f"expected {expect}, got {tok.text!r}")
        self.i += 1
        return tok

    def parse(self) -> Graph:
        while self._peek() is not None:
            tok = self._peek()
            if tok.kind == "langtag" and tok.text in ("@prefix", "@base"):
                self._directive()
            else:
                self._triples()
        return self.graph

    def _directive(self):
        tok = self._next()
        if tok.text == "@prefix":
            name = self._next()
            if name.kind != "pname" or not name.text.endswith(":"):
                self._fail(name.pos, "expected prefix name ending in ':'")
            iri = self._next()
            if iri.kind != "iriref":
                self._fail(iri.pos, "expected IRI after prefix name")
            self.graph.prefixes[name.text[:-1]] = self._resolve(iri.text[1:-1], iri.pos)
        else:
            iri = self._next()
            if iri.kind != "iriref":
                self._fail(iri.pos, "expected IRI after @base")
            self.base = self._resolve(iri.text[1:-1], iri.pos)
        end = self._next()
        if end.text != ".":
            self._fail(end.pos, "expected '.' after directive")

    def _resolve(self, value, pos):
        if ":" not in value:
            if not self.base:
                self._fail(pos, f"relative IRI {value!r} without @base")
            value = self.base + value
        if any(c.isspace() for c in value) or not value:
            self._fail(pos, f"malformed IRI {value!r}")
        return value

    def _triples(self):
        subj = self._subject()
        while True:
            pred = self._predicate()
            while True:
                obj = self._object()
                self.graph.add(Triple(subj, pred, obj))
                nxt = self._next()
                if nxt.text == ",":
                    continue
                break
            if nxt.text == ";":
                # allow trailing ';' before '.'
                if self._peek() is not None and self._peek().text in (".",):
                    nxt = self._next()
                    break
                continue
            break
        if nxt.text != ".":
            self._fail(nxt.pos, f"expected '.', ';' or ',', got {nxt.text!r}")

    def _subject(self):
        tok = self._next()
        term = self._term(tok, allow_literal=False)
        return term

    def _predicate(self):
        tok = self._next()
        if tok.kind == "keyword" and tok.text == "a":
            return Iri("http://www.w3.org/1999/02/22-rdf-syntax-ns#type")
        term = self._term(tok, allow_literal=False)
        if isinstance(term, BlankNode):
            self._fail(tok.pos, "blank node cannot be a predicate")
        return term

    def _object(self):
        tok = self._next()
        return self._term(tok, allow_literal=True)

    def _term(self, tok, allow_literal):
        if tok.kind == "iriref":
            return Iri(self._resolve(_unescape(tok.text[1:-1], self.text, tok.pos), tok.pos))
        if tok.kind == "pname":
            prefix, _, local = tok.text.partition(":")
            if prefix not in self.graph.prefixes:
                line, col = _line_col(self.text, tok.pos)
                raise UnknownPrefix(line, col, prefix)
            return Iri(self.graph.prefixes[prefix] + local)
        if tok.kind == "blank":
            return BlankNode(tok.text[2:])
        if not allow_literal:
            self._fail(tok.pos, f"expected IRI or blank node, got {tok.text!r}")
        if tok.kind == "string":
            value = _unescape(tok.text[1:-1], self.text, tok.pos)
            nxt = self._peek()
            if nxt is not None and nxt.kind == "langtag":
                self._next()
                return Literal(value, language=nxt.text[1:])
            if nxt is not None and nxt.kind == "dcarets":
                self._next()
                dtok = self._next()
                dtype = self._term(dtok, allow_literal=False)
                if not isinstance(dtype, Iri):
                    self._fail(dtok.pos, "datatype must be an IRI")
                return Literal(value, datatype=dtype)
            return Literal(value)
        if tok.kind == "number":
            if _INTEGER_RE.match(tok.text):
                return Literal(tok.text, datatype=Iri(XSD + "integer"))
            return Literal(tok.text, datatype=Iri(XSD + "decimal"))
        if tok.kind == "keyword" and tok.text in ("true", "false"):
            return Literal(tok.text, datatype=Iri(XSD + "boolean"))
        self._fail(tok.pos, f"expected term, got {tok.text!r}")


def parse_turtle(text: str) -> Graph:
    """Parse a Turtle document into a Graph with absolute IRIs."""
    return _Parser(text).parse()


def _escape_string(s: str) -> str:
    return (
        s.replace("\\", "\\\\")
        .replace('"', '\\"')
        .replace("\n", "\\n")
        .replace("\r", "\\r")
        .replace("\t", "\\t")
    )


def _format_term(term) -> str:
    if isinstance(term, Iri):
        return f"<{term.value}>"
    if isinstance(term, BlankNode):
        return f"_:{term.label}"
    out = f'"{_escape_string(term.lexical)}"'
    if term.language:
        return out + "@" + term.language
    if term.datatype:
        return out + f"^^<{term.datatype.value}>"
    return out


def serialize_turtle(graph: Graph) -> str:
    """Write a Graph as Turtle; parsing the result recovers the triple set."""
    lines = []
    for t in graph.sorted_triples():
        lines.append(f"{_format_term(t.subject)} {_format_term(t.predicate)} {_format_term(t.object)} .")
    return "\n".join(lines) + ("\n" if lines else "")
