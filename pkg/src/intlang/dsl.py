"""Concrete syntax for interactions (``.isd`` documents) and traces.

Grammar (whitespace-insensitive)::

    doc    := header? expr
    header := "lifelines" ident+ ";" "messages" ident+ ";"
    expr   := "0" | action | binop "(" expr ("," expr)+ ")" | loopop "(" expr ")"
    binop  := "strict" | "seq" | "par" | "alt"
    loopop := "loopX" | "loopH" | "loopS" | "loopP"
    action := ident ("!" | "?") ident

N-ary operator calls nest to the right: ``seq(a,b,c)`` is ``seq(a,seq(b,c))``.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import NamedTuple

from .core import (
    BINARY_TAGS,
    EMPTY,
    Act,
    Action,
    Interaction,
    Loop,
    LoopKind,
    Signature,
    Trace,
    render_trace,
)

LOOP_TAGS = {f"loop{k.value}": k for k in LoopKind}


class ParseError(Exception):
    def __init__(self, line: int, column: int, message: str, expected: list[str] | None = None):
        self.line = line
        self.column = column
        self.message = message
        self.expected = list(expected or [])
        super().__init__(str(self))

    def __str__(self):
        text = f"{self.line}:{self.column}: {self.message}"
        if self.expected:
            text += f" (expected {' or '.join(self.expected)})"
        return text


class Token(NamedTuple):
    kind: str  # ident, zero, punct, eof
    text: str
    offset: int


_TOKEN_RE = re.compile(
    r"(?P<ws>\s+)|(?P<ident>[A-Za-z][A-Za-z0-9_]*)|(?P<zero>0)|(?P<punct>[(),;!?])"
)


def _position(text: str, offset: int) -> tuple[int, int]:
    line = text.count("\n", 0, offset) + 1
    column = offset - (text.rfind("\n", 0, offset) + 1) + 1
    return line, column


def _describe(tok: Token) -> str:
    return "end of input" if tok.kind == "eof" else repr(tok.text)


def tokenize(text: str) -> list[Token]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise ParseError(*_position(text, pos), f"unexpected character {text[pos]!r}")
        if m.lastgroup != "ws":
            tokens.append(Token(m.lastgroup, m.group(), pos))
        pos = m.end()
    tokens.append(Token("eof", "", len(text)))
    return tokens


@dataclass(frozen=True)
class SourceDocument:
    interaction: Interaction
    signature: Signature
    explicit_header: bool = field(default=False)


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = tokenize(text)
        self.pos = 0
        self.sig: Signature | None = None

    @property
    def tok(self) -> Token:
        return self.tokens[self.pos]

    def error(self, message: str, expected: list[str], tok: Token | None = None) -> ParseError:
        tok = tok or self.tok
        return ParseError(*_position(self.text, tok.offset), message, expected)

    def expect_punct(self, char: str) -> Token:
        tok = self.tok
        if tok.kind == "punct" and tok.text == char:
            self.pos += 1
            return tok
        raise self.error(f"unexpected {_describe(tok)}", [repr(char)])

    def ident(self, what: str) -> Token:
        tok = self.tok
        if tok.kind != "ident":
            raise self.error(f"unexpected {_describe(tok)}", [what])
        self.pos += 1
        return tok

    def document(self) -> SourceDocument:
        if self.tok.kind == "ident" and self.tok.text == "lifelines" and self._next_is_ident():
            self.sig = self.header()
        body = self.expr()
        if self.tok.kind != "eof":
            raise self.error(f"unexpected {_describe(self.tok)}", ["end of input"])
        if self.sig is None:
            return SourceDocument(body, Signature.infer(body), False)
        return SourceDocument(body, self.sig, True)

    def _next_is_ident(self) -> bool:
        return self.tokens[self.pos + 1].kind == "ident"

    def _ident_list(self, keyword: str) -> tuple[str, ...]:
        kw = self.ident(repr(keyword))
        if kw.text != keyword:
            raise self.error(f"unexpected {kw.text!r}", [repr(keyword)], kw)
        names = [self.ident("identifier").text]
        while self.tok.kind == "ident":
            names.append(self.ident("identifier").text)
        if len(set(names)) != len(names):
            raise self.error(f"duplicate identifier in {keyword}", [])
        self.expect_punct(";")
        return tuple(names)

    def header(self) -> Signature:
        lifelines = self._ident_list("lifelines")
        messages = self._ident_list("messages")
        return Signature(lifelines, messages)

    def expr(self) -> Interaction:
        tok = self.tok
        if tok.kind == "zero":
            self.pos += 1
            return EMPTY
        if tok.kind != "ident":
            raise self.error(f"unexpected {_describe(tok)}", ["'0'", "action", "operator"])
        nxt = self.tokens[self.pos + 1]
        if nxt.kind == "punct" and nxt.text in "!?":
            self.pos += 2
            message = self.ident("message identifier")
            action = Action(tok.text, nxt.text, message.text)
            if self.sig is not None and not self.sig.admits(action):
                raise self.error(f"action {action} is not declared in the header", [], tok)
            return Act(action)
        if tok.text in BINARY_TAGS:
            self.pos += 1
            self.expect_punct("(")
            operands = [self.expr()]
            while not (self.tok.kind == "punct" and self.tok.text == ")"):
                if self.tok.kind == "punct" and self.tok.text == ",":
                    self.pos += 1
                    operands.append(self.expr())
                else:
                    raise self.error(f"unexpected {_describe(self.tok)}", ["')'", "','"])
            if len(operands) < 2:
                raise self.error(f"{tok.text} needs at least two operands", ["','"])
            self.pos += 1
            cls = BINARY_TAGS[tok.text]
            node = operands[-1]
            for operand in reversed(operands[:-1]):
                node = cls(operand, node)
            return node
        if tok.text in LOOP_TAGS:
            self.pos += 1
            self.expect_punct("(")
            body = self.expr()
            self.expect_punct(")")
            return Loop(LOOP_TAGS[tok.text], body)
        raise self.error(
            f"unknown operator {tok.text!r}" if nxt.text == "(" else f"incomplete action {tok.text!r}",
            ["'!'", "'?'"] if nxt.text != "(" else sorted(BINARY_TAGS) + sorted(LOOP_TAGS),
            tok if nxt.text == "(" else nxt,
        )


def parse_document(text: str) -> SourceDocument:
    return _Parser(text).document()


def parse_interaction(text: str) -> tuple[Interaction, Signature]:
    doc = parse_document(text)
    return doc.interaction, doc.signature


def render_interaction(i: Interaction) -> str:
    return str(i)


def render_document(doc: SourceDocument) -> str:
    body = render_interaction(doc.interaction)
    if not doc.explicit_header:
        return body
    sig = doc.signature
    return f"lifelines {' '.join(sig.lifelines)};\nmessages {' '.join(sig.messages)};\n{body}"


_ACTION_RE = re.compile(r"([A-Za-z][A-Za-z0-9_]*)([!?])([A-Za-z][A-Za-z0-9_]*)\Z")


def parse_trace(text: str, line: int = 1) -> Trace:
    """Parse ``a1.a2...`` or the literal ``eps``."""
    stripped = text.strip()
    lead = len(text) - len(text.lstrip())
    if stripped == "eps":
        return ()
    if not stripped:
        raise ParseError(line, 1, "empty trace (write 'eps' for the empty trace)", ["action", "'eps'"])
    actions = []
    offset = lead
    for chunk in stripped.split("."):
        m = _ACTION_RE.match(chunk)
        if m is None:
            raise ParseError(line, offset + 1, f"malformed action {chunk!r}", ["lifeline!message", "lifeline?message"])
        actions.append(Action(m.group(1), m.group(2), m.group(3)))
        offset += len(chunk) + 1
    return tuple(actions)


__all__ = [
    "ParseError",
    "SourceDocument",
    "parse_document",
    "parse_interaction",
    "parse_trace",
    "render_document",
    "render_interaction",
    "render_trace",
    "tokenize",
]
