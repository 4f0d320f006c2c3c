"""Recursive-descent parser for the polynomial expression grammar.

    expr   := term (('+' | '-') term)*
    term   := factor ('*' factor)*
    factor := base ('^' uint)?
    base   := uint | ident | '(' expr ')'

Two convenience extensions beyond the core grammar, so rendered output
always re-parses: an optional sign in front of the first term, and a
rational literal `uint/uint` in base position.
"""

from __future__ import annotations

from fractions import Fraction
from typing import NamedTuple

from .errors import (
    CoefficientOverflow,
    ExponentOverflow,
    LengthMismatch,
    PolySyntaxError,
    UnknownVariable,
)
from .polyring import MAX_EXPONENT, FieldSpec, Polynomial, RingPresentation

MAX_LITERAL = 2**63  # prime-field integer literals must stay below this

_PUNCT = set("+-*^()/[],=")


class Token(NamedTuple):
    kind: str  # "int", "ident", "eof" or the punctuation character itself
    value: object
    line: int
    column: int


def tokenize(text: str) -> list[Token]:
    tokens = []
    line, col = 1, 1
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch == "\n":
            line += 1
            col = 1
            i += 1
            continue
        if ch in " \t\r":
            i += 1
            col += 1
            continue
        start_col = col
        if ch.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            tokens.append(Token("int", int(text[i:j]), line, start_col))
            col += j - i
            i = j
            continue
        if ch.isalpha():
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            tokens.append(Token("ident", text[i:j], line, start_col))
            col += j - i
            i = j
            continue
        if ch in _PUNCT:
            tokens.append(Token(ch, ch, line, start_col))
            i += 1
            col += 1
            continue
        raise PolySyntaxError(
            f"unexpected character {ch!r}", line=line, column=start_col
        )
    tokens.append(Token("eof", None, line, col))
    return tokens


class _Parser:
    def __init__(self, tokens: list[Token], ring: RingPresentation):
        self.tokens = tokens
        self.pos = 0
        self.ring = ring

    def peek(self) -> Token:
        return self.tokens[self.pos]

    def advance(self) -> Token:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect(self, kind: str) -> Token:
        tok = self.peek()
        if tok.kind != kind:
            raise PolySyntaxError(
                f"expected {kind!r}, found {tok.value!r}" if tok.kind != "eof"
                else f"expected {kind!r}, found end of input",
                line=tok.line, column=tok.column,
            )
        return self.advance()

    def fail(self, message: str):
        tok = self.peek()
        raise PolySyntaxError(message, line=tok.line, column=tok.column)

    # -- grammar ----------------------------------------------------------

    def expr(self) -> Polynomial:
        negate = False
        if self.peek().kind in ("+", "-"):
            negate = self.advance().kind == "-"
        poly = self.term()
        if negate:
            poly = -poly
        while self.peek().kind in ("+", "-"):
            op = self.advance().kind
            rhs = self.term()
            poly = poly + rhs if op == "+" else poly - rhs
        return poly

    def term(self) -> Polynomial:
        poly = self.factor()
        while self.peek().kind == "*":
            self.advance()
            poly = poly * self.factor()
        return poly

    def factor(self) -> Polynomial:
        base = self.base()
        if self.peek().kind == "^":
            self.advance()
            tok = self.expect("int")
            if tok.value > MAX_EXPONENT:
                raise ExponentOverflow(
                    f"exponent {tok.value} exceeds {MAX_EXPONENT}"
                )
            base = base ** tok.value
        return base

    def base(self) -> Polynomial:
        tok = self.peek()
        if tok.kind == "int":
            self.advance()
            num = tok.value
            self._check_literal(num, tok)
            if self.peek().kind == "/":
                self.advance()
                dtok = self.expect("int")
                return self._rational(num, dtok)
            return self.ring.const(num)
        if tok.kind == "ident":
            self.advance()
            if tok.value not in self.ring._var_index:
                raise UnknownVariable(tok.value, line=tok.line,
                                      column=tok.column)
            return self.ring.var(tok.value)
        if tok.kind == "(":
            self.advance()
            poly = self.expr()
            self.expect(")")
            return poly
        self.fail(
            f"expected a term, found {tok.value!r}" if tok.kind != "eof"
            else "expected a term, found end of input"
        )

    # -- literals ----------------------------------------------------------

    def _check_literal(self, num: int, tok: Token):
        if self.ring.field.char and num >= MAX_LITERAL:
            raise CoefficientOverflow(
                f"integer literal {num} exceeds {MAX_LITERAL - 1}",
                line=tok.line, column=tok.column,
            )

    def _rational(self, num: int, dtok: Token) -> Polynomial:
        den = dtok.value
        self._check_literal(den, dtok)
        if den == 0:
            raise PolySyntaxError(
                "zero denominator", line=dtok.line, column=dtok.column
            )
        field = self.ring.field
        if field.char == 0:
            return self.ring.const(Fraction(num, den))
        if den % field.char == 0:
            raise PolySyntaxError(
                f"denominator {den} vanishes in characteristic {field.char}",
                line=dtok.line, column=dtok.column,
            )
        c = field.div(field.from_int(num), field.from_int(den))
        return Polynomial(self.ring, {(0,) * self.ring.nvars: c})


def parse_poly(text: str, ring: RingPresentation) -> Polynomial:
    """Parse one polynomial expression; the whole text must be consumed."""
    parser = _Parser(tokenize(text), ring)
    poly = parser.expr()
    tok = parser.peek()
    if tok.kind != "eof":
        raise PolySyntaxError(
            f"unexpected {tok.value!r} after expression",
            line=tok.line, column=tok.column,
        )
    return poly


def parse_poly_list(text: str, ring: RingPresentation) -> list[Polynomial]:
    """Parse a comma-separated list of expressions."""
    parser = _Parser(tokenize(text), ring)
    polys = [parser.expr()]
    while parser.peek().kind == ",":
        parser.advance()
        polys.append(parser.expr())
    tok = parser.peek()
    if tok.kind != "eof":
        raise PolySyntaxError(
            f"unexpected {tok.value!r} after expression list",
            line=tok.line, column=tok.column,
        )
    return polys


def parse_matrix(text: str, ring: RingPresentation) -> list[list[Polynomial]]:
    """Parse `[[expr, ...], ...]`; rows must all have the same width."""
    parser = _Parser(tokenize(text), ring)
    parser.expect("[")
    rows = [_parse_row(parser)]
    while parser.peek().kind == ",":
        parser.advance()
        rows.append(_parse_row(parser))
    parser.expect("]")
    tok = parser.peek()
    if tok.kind != "eof":
        raise PolySyntaxError(
            f"unexpected {tok.value!r} after matrix",
            line=tok.line, column=tok.column,
        )
    width = len(rows[0])
    if any(len(r) != width for r in rows):
        raise LengthMismatch("matrix rows of unequal width")
    return rows


def _parse_row(parser: _Parser) -> list[Polynomial]:
    parser.expect("[")
    row = [parser.expr()]
    while parser.peek().kind == ",":
        parser.advance()
        row.append(parser.expr())
    parser.expect("]")
    return row


def make_ring(char: int, variables, quotient_texts=(), name="R") -> RingPresentation:
    """Build a quotient-ring presentation from textual data.

    char 0 gives rational coefficients, a prime p gives integers mod p.
    """
    field = FieldSpec.rationals() if char == 0 else FieldSpec.prime_field(char)
    ambient = RingPresentation(tuple(variables), field, (), name=name)
    gens = [parse_poly(t, ambient) for t in quotient_texts]
    return ambient.quotient_by(gens, name=name)
