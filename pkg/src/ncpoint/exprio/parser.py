"""Recursive-descent parser for the series description language.

Grammar::

    program  := {decl | defn}
    decl     := ("const" | "var") ident {ident} ";"
    defn     := ident "=" expr ";"
    expr     := ["+" | "-"] term {("+" | "-") term} ["+" "O" "(" "deg" ">" integer ")"]
    term     := factor {factor}                  juxtaposition is the product
    factor   := primary {"^" natural}
    primary  := rational | ident | "(" expr ")" | "inv1m" "(" expr ")"
    rational := natural ["/" positive]

``inv1m(g)`` is ``(1 - g)^{-1}`` truncated at the program order.  The
optional ``O(deg>n)`` tail marks the expression as known only up to
variable degree ``n``.  ``#`` starts a comment.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from ..core import CONSTANT, VARIABLE, Context, Series, Symbol, geometric_inverse, truncate
from ..errors import ParseError, ReservedIdentifierError, UndeclaredIdentifierError

KEYWORDS = frozenset({"const", "var", "inv1m"})

_TOKEN_RE = re.compile(
    r"(?P<ws>[ \t\r\n]+)|(?P<comment>\#[^\n]*)|(?P<num>[0-9]+)"
    r"|(?P<ident>[A-Za-z_][A-Za-z0-9_]*)|(?P<op>[;=+\-()^/>])"
)


@dataclass(frozen=True)
class Token:
    kind: str  # "num", "ident", "op", "eof"
    text: str
    line: int
    column: int


def tokenize(text: str) -> list[Token]:
    tokens = []
    pos, line, line_start = 0, 1, 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        col = pos - line_start + 1
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", line, col)
        kind = m.lastgroup
        chunk = m.group()
        if kind == "ident":
            if chunk.startswith("__"):
                raise ReservedIdentifierError(f"identifier {chunk!r} uses the reserved '__' prefix", line, col)
            if chunk.startswith("_"):
                raise ParseError(f"identifiers must start with a letter: {chunk!r}", line, col)
        if kind not in ("ws", "comment"):
            tokens.append(Token(kind, chunk, line, col))
        newlines = chunk.count("\n")
        if newlines:
            line += newlines
            line_start = pos + chunk.rfind("\n") + 1
        pos = m.end()
    col = pos - line_start + 1
    tokens.append(Token("eof", "", line, col))
    return tokens


class _Parser:
    def __init__(self, text: str, context: Context, order: int, names: dict[str, Series] | None = None):
        self.tokens = tokenize(text)
        self.pos = 0
        self.context = context
        self.order = order
        self.names: dict[str, Series] = dict(names or {})

    # -- token helpers ----------------------------------------------------

    def peek(self, offset: int = 0) -> Token:
        return self.tokens[min(self.pos + offset, len(self.tokens) - 1)]

    def advance(self) -> Token:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def at(self, text: str, offset: int = 0) -> bool:
        tok = self.peek(offset)
        return tok.kind in ("op", "ident") and tok.text == text

    def expect(self, text: str) -> Token:
        tok = self.peek()
        if tok.text != text or tok.kind == "eof":
            self.fail(f"expected {text!r}, found {tok.text or 'end of input'!r}", tok)
        return self.advance()

    def fail(self, message: str, tok: Token | None = None):
        tok = tok or self.peek()
        raise ParseError(message, tok.line, tok.column)

    def expect_ident(self) -> Token:
        tok = self.peek()
        if tok.kind != "ident":
            self.fail(f"expected identifier, found {tok.text or 'end of input'!r}", tok)
        if tok.text in KEYWORDS:
            self.fail(f"{tok.text!r} is a keyword", tok)
        return self.advance()

    def natural(self) -> int:
        tok = self.peek()
        if tok.kind != "num":
            self.fail(f"expected a natural number, found {tok.text or 'end of input'!r}", tok)
        return int(self.advance().text)

    # -- grammar ----------------------------------------------------------

    def program(self) -> tuple[Context, dict[str, Series]]:
        while self.peek().kind != "eof":
            tok = self.peek()
            if tok.kind == "ident" and tok.text in ("const", "var"):
                self.declaration()
            elif tok.kind == "ident" and self.at("=", 1):
                self.definition()
            else:
                self.fail(f"expected a declaration or definition, found {tok.text!r}", tok)
        final = {name: f.with_context(self.context) for name, f in self.names.items()}
        return self.context, final

    def declaration(self):
        kind = CONSTANT if self.advance().text == "const" else VARIABLE
        declared = False
        while not self.at(";"):
            tok = self.expect_ident()
            if tok.text in self.context or tok.text in self.names:
                self.fail(f"{tok.text!r} is already defined", tok)
            self.context = self.context.extend(Symbol(tok.text, kind))
            declared = True
        if not declared:
            self.fail("empty declaration")
        self.expect(";")

    def definition(self):
        tok = self.expect_ident()
        if tok.text in self.context:
            self.fail(f"{tok.text!r} is a declared symbol and cannot be defined", tok)
        if tok.text in self.names:
            self.fail(f"{tok.text!r} is already defined", tok)
        self.expect("=")
        value = self.expr()
        self.expect(";")
        self.names[tok.text] = value

    def _at_order_marker(self) -> bool:
        return self.at("+") and self.at("O", 1) and self.at("(", 2) and self.at("deg", 3) and self.at(">", 4)

    def expr(self) -> Series:
        negate = False
        if self.at("-"):
            self.advance()
            negate = True
        elif self.at("+"):
            self.advance()
        acc = self.term()
        if negate:
            acc = -acc
        while self.at("+") or self.at("-"):
            if self._at_order_marker():
                for _ in range(5):
                    self.advance()
                sign = 1
                if self.at("-"):
                    self.advance()
                    sign = -1
                n = sign * self.natural()
                if n < -1:
                    self.fail("order marker must be at least -1")
                self.expect(")")
                acc = truncate(acc, n)
                break
            op = self.advance().text
            rhs = self.term()
            acc = acc + rhs if op == "+" else acc - rhs
        return acc

    def _starts_factor(self) -> bool:
        tok = self.peek()
        if tok.kind == "num":
            return True
        if tok.kind == "ident":
            return tok.text not in ("const", "var") and not self.at("=", 1)
        return self.at("(")

    def term(self) -> Series:
        acc = self.factor()
        while self._starts_factor():
            acc = acc * self.factor()
        return acc

    def factor(self) -> Series:
        base = self.primary()
        while self.at("^"):
            self.advance()
            base = base ** self.natural()
        return base

    def primary(self) -> Series:
        tok = self.peek()
        if tok.kind == "num":
            num = int(self.advance().text)
            if self.at("/"):
                self.advance()
                den_tok = self.peek()
                den = self.natural()
                if den == 0:
                    self.fail("zero denominator", den_tok)
                return Series.scalar(self.context, Fraction(num, den))
            return Series.scalar(self.context, num)
        if self.at("("):
            self.advance()
            inner = self.expr()
            self.expect(")")
            return inner
        if tok.kind == "ident" and tok.text == "inv1m":
            self.advance()
            self.expect("(")
            inner = self.expr()
            self.expect(")")
            return geometric_inverse(inner, self.order)
        if tok.kind == "ident":
            self.advance()
            if tok.text in self.names:
                return self.names[tok.text]
            if tok.text in self.context:
                return Series.symbol(self.context, tok.text)
            if tok.text in KEYWORDS:
                self.fail(f"unexpected keyword {tok.text!r}", tok)
            raise UndeclaredIdentifierError(f"undeclared identifier {tok.text!r}", tok.line, tok.column)
        self.fail(f"unexpected {tok.text or 'end of input'!r}", tok)


def parse_program(text: str, order: int = 6) -> tuple[Context, dict[str, Series]]:
    """Parse declarations and definitions; ``order`` bounds ``inv1m`` expansions."""
    return _Parser(text, Context(), order).program()


def parse_series(text: str, context: Context, order: int = 6, names: dict[str, Series] | None = None) -> Series:
    """Parse a single expression over an existing context."""
    p = _Parser(text, context, order, names)
    value = p.expr()
    if p.peek().kind != "eof":
        p.fail(f"unexpected {p.peek().text!r} after expression")
    return value
