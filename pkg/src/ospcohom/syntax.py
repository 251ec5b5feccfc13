"""Tokenizer and rational-number helpers shared by the text formats."""

from __future__ import annotations

import re
from fractions import Fraction
from typing import List, NamedTuple, Optional


class ParseError(ValueError):
    """Raised on malformed input; carries the offending token and offset."""

    def __init__(self, message: str, token: str = "", position: int = -1):
        self.token = token
        self.position = position
        where = f" at position {position}" if position >= 0 else ""
        tok = f" (token {token!r})" if token else ""
        super().__init__(f"{message}{tok}{where}")


class Token(NamedTuple):
    kind: str
    text: str
    pos: int


_TOKEN_RE = re.compile(
    r"\s*(?:(?P<int>\d+)|(?P<name>[A-Za-z_]+)|(?P<op>[-+*/^()]))"
)


def tokenize(text: str) -> List[Token]:
    tokens = []
    pos = 0
    n = len(text)
    while pos < n:
        if text[pos].isspace():
            pos += 1
            continue
        m = _TOKEN_RE.match(text, pos)
        if m is None or m.end() == pos:
            raise ParseError("unexpected character", text[pos], pos)
        start = m.start(m.lastgroup)
        kind = m.lastgroup
        tokens.append(Token(kind, m.group(kind), start))
        pos = m.end()
    tokens.append(Token("end", "", n))
    return tokens


class TokenStream:
    def __init__(self, text: str):
        self.text = text
        self.tokens = tokenize(text)
        self.i = 0

    def peek(self, offset: int = 0) -> Token:
        return self.tokens[min(self.i + offset, len(self.tokens) - 1)]

    def next(self) -> Token:
        tok = self.tokens[self.i]
        if tok.kind != "end":
            self.i += 1
        return tok

    def accept(self, text: str) -> Optional[Token]:
        tok = self.peek()
        if tok.text == text and tok.kind != "end":
            self.i += 1
            return tok
        return None

    def expect(self, text: str) -> Token:
        tok = self.peek()
        if tok.text != text or tok.kind == "end":
            raise ParseError(f"expected {text!r}", tok.text or "<end>", tok.pos)
        self.i += 1
        return tok

    def expect_int(self) -> int:
        tok = self.peek()
        if tok.kind != "int":
            raise ParseError("expected an integer", tok.text or "<end>", tok.pos)
        self.i += 1
        return int(tok.text)

    def at_end(self) -> bool:
        return self.peek().kind == "end"

    def fail(self, message: str):
        tok = self.peek()
        raise ParseError(message, tok.text or "<end>", tok.pos)


_RAT_RE = re.compile(r"^\s*([+-]?)(\d+)(?:/(\d+))?\s*$")


def parse_rat(text: str) -> Fraction:
    """Parse ``p`` or ``p/q`` with optional sign. Floats are rejected."""
    m = _RAT_RE.match(text)
    if m is None:
        bad = next((i for i, ch in enumerate(text) if not (ch.isdigit() or ch in "+-/ ")), -1)
        if bad < 0:
            bad = 0
        raise ParseError("not an exact rational (expected p or p/q)", text, bad)
    sign, num, den = m.groups()
    if den is not None and int(den) == 0:
        raise ParseError("zero denominator", text, text.index("/") + 1)
    value = Fraction(int(num), int(den) if den else 1)
    return -value if sign == "-" else value


def format_rat(value: Fraction) -> str:
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"
