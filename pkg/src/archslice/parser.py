"""Recursive-descent parser and canonical renderer for ``.wrt`` files.

Grammar (whitespace-insensitive, ``--`` starts a comment)::

    spec       := "Configuration" IDENT typeDecl* ["Instances" instance*]
                  ["Attachments" attachment*] "End" IDENT "."
    typeDecl   := "Component" IDENT portDecl+ "Computation" "=" process
                | "Connector" IDENT roleDecl+ "Glue" "=" process
    portDecl   := "Port" IDENT "=" process
    roleDecl   := "Role" IDENT "=" process
    process    := seq ("[]" seq)*
    seq        := term ("->" term)*
    term       := "(" process ")" | "STOP" | event | IDENT
    event      := (IDENT ".")? IDENT ("!" IDENT? | "?" IDENT)?
    instance   := IDENT ":" IDENT
    attachment := IDENT "." IDENT "as" IDENT "." IDENT

A bare name in the last position of a sequence that equals the process
being defined is a recursion reference (``Computation`` and ``Glue`` are
the names of the two body processes). Any other trailing event gets an
implicit ``STOP`` so that every sequence ends in a terminator.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass

from .model import (
    COMPUTATION,
    GLUE,
    Attachment,
    Choice,
    ComponentType,
    Configuration,
    ConnectorType,
    Direction,
    Endpoint,
    Event,
    Instance,
    Interface,
    Prefix,
    Ref,
    SourceSpan,
    Specification,
    STOP,
    Stop,
)

KEYWORDS = frozenset({
    "Configuration", "Component", "Port", "Computation", "Connector", "Role",
    "Glue", "Instances", "Attachments", "End", "STOP",
})

_TOKEN_RE = re.compile(r"""
    (?P<ws>[ \t\r\f\v]+)
  | (?P<nl>\n)
  | (?P<comment>--[^\n]*)
  | (?P<ident>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<punct>->|\[\]|[().!?=:])
""", re.VERBOSE)


@dataclass(frozen=True)
class Token:
    kind: str  # "ident", "keyword", "punct" or "eof"
    text: str
    span: SourceSpan

    def describe(self) -> str:
        return "end of input" if self.kind == "eof" else f"'{self.text}'"


class ParseError(Exception):
    def __init__(self, span: SourceSpan, expected: str, found: str):
        self.span = span
        self.expected = expected
        self.found = found
        super().__init__(f"{span.line}:{span.column}: expected {expected}, found {found}")


def tokenize(text: str) -> list:
    tokens = []
    pos, line, line_start = 0, 1, 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        col = pos - line_start + 1
        if m is None:
            raise ParseError(SourceSpan(line, col), "a token", repr(text[pos]))
        kind = m.lastgroup
        lexeme = m.group()
        if kind == "nl":
            line += 1
            line_start = m.end()
        elif kind == "ident":
            tok_kind = "keyword" if lexeme in KEYWORDS else "ident"
            tokens.append(Token(tok_kind, lexeme, SourceSpan(line, col, len(lexeme))))
        elif kind == "punct":
            tokens.append(Token("punct", lexeme, SourceSpan(line, col, len(lexeme))))
        pos = m.end()
    tokens.append(Token("eof", "", SourceSpan(line, pos - line_start + 1)))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.tokens = tokenize(text)
        self.pos = 0

    @property
    def tok(self) -> Token:
        return self.tokens[self.pos]

    def peek(self, offset: int = 1) -> Token:
        return self.tokens[min(self.pos + offset, len(self.tokens) - 1)]

    def fail(self, expected: str):
        raise ParseError(self.tok.span, expected, self.tok.describe())

    def at(self, text: str) -> bool:
        return self.tok.kind in ("keyword", "punct") and self.tok.text == text

    def expect(self, text: str) -> Token:
        if not self.at(text):
            self.fail(f"'{text}'")
        tok = self.tok
        self.pos += 1
        return tok

    def ident(self) -> Token:
        if self.tok.kind != "ident":
            self.fail("identifier")
        tok = self.tok
        self.pos += 1
        return tok

    # -- document structure -------------------------------------------------

    def specification(self) -> Specification:
        self.expect("Configuration")
        name = self.ident().text
        components, connectors = [], []
        while True:
            if self.at("Component"):
                components.append(self.component())
            elif self.at("Connector"):
                connectors.append(self.connector())
            else:
                break
        instances, attachments = [], []
        expected = "'Component', 'Connector', 'Instances', 'Attachments' or 'End'"
        if self.at("Instances"):
            self.pos += 1
            expected = "instance, 'Attachments' or 'End'"
            while self.tok.kind == "ident":
                tok = self.ident()
                self.expect(":")
                instances.append(Instance(tok.text, self.ident().text, tok.span))
        if self.at("Attachments"):
            self.pos += 1
            expected = "attachment or 'End'"
            while self.tok.kind == "ident":
                attachments.append(self.attachment())
        if not self.at("End"):
            self.fail(expected)
        self.pos += 1
        end = self.ident()
        if end.text != name:
            raise ParseError(end.span, f"'{name}'", end.describe())
        self.expect(".")
        if self.tok.kind != "eof":
            self.fail("end of input")
        return Specification(name, tuple(components), tuple(connectors),
                             Configuration(tuple(instances), tuple(attachments)))

    def _type_decl(self, elem_kw: str, body_kw: str):
        start = self.tok.span
        self.pos += 1
        name = self.ident().text
        elements = []
        while self.at(elem_kw):
            self.pos += 1
            tok = self.ident()
            self.expect("=")
            elements.append(Interface(tok.text, self.process(tok.text), tok.span))
        if not elements:
            self.fail(f"'{elem_kw}'")
        if not self.at(body_kw):
            self.fail(f"'{elem_kw}' or '{body_kw}'")
        self.pos += 1
        self.expect("=")
        return name, tuple(elements), self.process(body_kw), start

    def component(self) -> ComponentType:
        name, ports, body, span = self._type_decl("Port", COMPUTATION)
        return ComponentType(name, ports, body, span)

    def connector(self) -> ConnectorType:
        name, roles, body, span = self._type_decl("Role", GLUE)
        return ConnectorType(name, roles, body, span)

    def attachment(self) -> Attachment:
        first = self.tok
        port = Endpoint(self.ident().text, (self.expect("."), self.ident())[1].text)
        if not (self.tok.kind == "ident" and self.tok.text == "as"):
            self.fail("'as'")
        self.pos += 1
        role = Endpoint(self.ident().text, (self.expect("."), self.ident())[1].text)
        return Attachment(port, role, first.span)

    # -- processes ----------------------------------------------------------

    def process(self, owner: str):
        branches = [self.seq(owner)]
        while self.at("[]"):
            self.pos += 1
            branches.append(self.seq(owner))
        return branches[0] if len(branches) == 1 else Choice(tuple(branches))

    def seq(self, owner: str):
        events = []
        while True:
            term = self.term(owner)
            if not isinstance(term, Event):
                if self.at("->"):
                    self.fail("'[]', ')' or end of process")
                tail = term
                break
            if not self.at("->"):
                tail = STOP
                events.append(term)
                break
            self.pos += 1
            events.append(term)
        for ev in reversed(events):
            tail = Prefix(ev, tail)
        return tail

    def term(self, owner: str):
        tok = self.tok
        if self.at("("):
            self.pos += 1
            inner = self.process(owner)
            self.expect(")")
            return inner
        if self.at("STOP"):
            self.pos += 1
            return Stop()
        if tok.kind == "keyword" and tok.text == owner and owner in (COMPUTATION, GLUE):
            self.pos += 1
            return Ref(owner)
        if tok.kind != "ident":
            self.fail("event, '(' or 'STOP'")
        return self.event(owner)

    def event(self, owner: str):
        first = self.ident()
        qualifier = None
        name = first.text
        if self.at(".") and self.peek().kind == "ident":
            self.pos += 1
            qualifier, name = name, self.ident().text
        if self.at("!"):
            self.pos += 1
            data = self.ident().text if self.tok.kind == "ident" else None
            return Event(name, Direction.INITIATED, data, qualifier)
        if self.at("?"):
            self.pos += 1
            return Event(name, Direction.OBSERVED, self.ident().text, qualifier)
        if qualifier is None and name == owner and not self.at("->"):
            return Ref(name)
        return Event(name, Direction.OBSERVED, None, qualifier)


def parse(text: str) -> Specification:
    """Parse ``.wrt`` source text; raises ParseError on the first violation."""
    return _Parser(text).specification()


# -- rendering --------------------------------------------------------------

INDENT = "  "


def render_process(proc) -> str:
    if isinstance(proc, Choice):
        return " [] ".join(
            f"({render_process(b)})" if isinstance(b, Choice) else render_process(b)
            for b in proc.branches)
    parts = []
    while isinstance(proc, Prefix):
        parts.append(str(proc.event))
        proc = proc.rest
    if isinstance(proc, Choice):
        parts.append(f"({render_process(proc)})")
    elif isinstance(proc, Ref):
        parts.append(proc.name)
    else:
        parts.append("STOP")
    return " -> ".join(parts)


def render(spec: Specification) -> str:
    """Canonical text for ``spec``; ``parse(render(s)) == s`` for valid specs."""
    lines = [f"Configuration {spec.name}"]
    for decl in spec.components + spec.connectors:
        head, elem_kw = (("Component", "Port") if isinstance(decl, ComponentType)
                         else ("Connector", "Role"))
        lines.append(f"{INDENT}{head} {decl.name}")
        for elem in decl.elements:
            lines.append(f"{INDENT * 2}{elem_kw} {elem.name} = {render_process(elem.behavior)}")
        lines.append(f"{INDENT * 2}{decl.body_name} = {render_process(decl.body)}")
    lines.append("Instances")
    lines.extend(f"{INDENT}{inst}" for inst in spec.configuration.instances)
    lines.append("Attachments")
    lines.extend(f"{INDENT}{att}" for att in spec.configuration.attachments)
    lines.append(f"End {spec.name}.")
    return "\n".join(lines) + "\n"


def spec_to_json(spec: Specification) -> str:
    """JSON view of a specification; processes appear in canonical text form."""

    def decl_record(decl, key):
        return {
            "name": decl.name,
            key: [{"name": e.name, "behavior": render_process(e.behavior)}
                  for e in decl.elements],
            decl.body_name.lower(): render_process(decl.body),
        }

    doc = {
        "name": spec.name,
        "components": [decl_record(d, "ports") for d in spec.components],
        "connectors": [decl_record(d, "roles") for d in spec.connectors],
        "instances": [{"name": i.name, "type": i.type_name}
                      for i in spec.configuration.instances],
        "attachments": [{"port": str(a.port), "role": str(a.role)}
                        for a in spec.configuration.attachments],
    }
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"
