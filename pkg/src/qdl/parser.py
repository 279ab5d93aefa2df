"""Recursive-descent parser for polynomial expressions.

Grammar::

    expr   := term (('+' | '-') term)*
    term   := factor ('*'? factor)*
    factor := base ('^' uint)?
    base   := rational | 'i' | 'x' | 'y' | 't' | '(' expr ')' | '-' factor
    rational := uint ('/' uint)?

Juxtaposition multiplies, so ``2xy`` and ``(1/2)x y`` are accepted.  Every
letter is its own token, which is why ``xy`` reads as ``x*y``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .algebra import GERM_VARIABLES, VARIABLES, GaussRational, MPoly
from .exceptions import LimitError, ParseError

MAX_BYTES = 64 * 1024
MAX_EXPONENT = 64
MAX_HEIGHT = 64
MAX_DEGREE = 4096


# --------------------------------------------------------------------------
# AST

@dataclass(frozen=True)
class Number:
    value: Fraction


@dataclass(frozen=True)
class Imag:
    pass


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class Add:
    left: object
    right: object


@dataclass(frozen=True)
class Sub:
    left: object
    right: object


@dataclass(frozen=True)
class Mul:
    left: object
    right: object


@dataclass(frozen=True)
class Pow:
    base: object
    exponent: int


@dataclass(frozen=True)
class Neg:
    operand: object


@dataclass(frozen=True)
class Paren:
    inner: object


def height(node) -> int:
    if isinstance(node, (Number, Imag, Var)):
        return 1
    if isinstance(node, (Add, Sub, Mul)):
        return 1 + max(height(node.left), height(node.right))
    if isinstance(node, Pow):
        return 1 + height(node.base)
    if isinstance(node, Neg):
        return 1 + height(node.operand)
    return 1 + height(node.inner)


# --------------------------------------------------------------------------
# lexer

@dataclass(frozen=True)
class Token:
    kind: str  # "int", "var", "i", an operator character, or "end"
    text: str
    line: int
    column: int


_OPERATORS = set("+-*/^()")


def tokenize(text: str) -> list:
    tokens = []
    line, col = 1, 1
    k = 0
    n = len(text)
    while k < n:
        ch = text[k]
        if ch == "\n":
            line, col = line + 1, 1
            k += 1
            continue
        if ch in " \t\r":
            k += 1
            col += 1
            continue
        if ch.isdigit() and ch.isascii():
            j = k
            while j < n and text[j].isdigit() and text[j].isascii():
                j += 1
            tokens.append(Token("int", text[k:j], line, col))
            col += j - k
            k = j
            continue
        if ch in VARIABLES:
            tokens.append(Token("var", ch, line, col))
        elif ch == "i":
            tokens.append(Token("i", ch, line, col))
        elif ch in _OPERATORS:
            tokens.append(Token(ch, ch, line, col))
        else:
            raise ParseError(f"unexpected character {ch!r}", line, col,
                             ("number", "i", "x", "y", "t", "(", "-"))
        k += 1
        col += 1
    tokens.append(Token("end", "", line, col))
    return tokens


# --------------------------------------------------------------------------
# parser

_BASE_START = ("int", "var", "i", "(")
_EXPECT_BASE = ("number", "i", "x", "y", "t", "(", "-")


class _Parser:
    def __init__(self, tokens):
        self.tokens = tokens
        self.pos = 0
        self.depth = 0

    def peek(self) -> Token:
        return self.tokens[self.pos]

    def advance(self) -> Token:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def fail(self, expected, tok: Token | None = None):
        tok = tok or self.peek()
        what = "end of input" if tok.kind == "end" else repr(tok.text)
        raise ParseError(f"unexpected {what}", tok.line, tok.column, expected)

    def enter(self):
        self.depth += 1
        if self.depth > MAX_HEIGHT:
            tok = self.peek()
            raise LimitError(f"expression nested deeper than {MAX_HEIGHT} at line {tok.line}, "
                             f"column {tok.column}")

    def parse(self):
        node = self.expr()
        if self.peek().kind != "end":
            self.fail(("+", "-", "*", "^", "end of input") + _EXPECT_BASE[:-1])
        return node

    def expr(self):
        self.enter()
        node = self.term()
        while self.peek().kind in ("+", "-"):
            op = self.advance().kind
            right = self.term()
            node = Add(node, right) if op == "+" else Sub(node, right)
        self.depth -= 1
        return node

    def term(self):
        node = self.factor()
        while True:
            kind = self.peek().kind
            if kind == "*":
                self.advance()
                node = Mul(node, self.factor())
            elif kind in _BASE_START:
                node = Mul(node, self.factor())
            else:
                return node

    def factor(self):
        self.enter()
        node = self.base()
        if self.peek().kind == "^":
            self.advance()
            tok = self.peek()
            if tok.kind != "int":
                self.fail(("non-negative integer",))
            self.advance()
            e = int(tok.text)
            if e > MAX_EXPONENT:
                raise LimitError(f"exponent {e} exceeds the limit {MAX_EXPONENT} at line "
                                 f"{tok.line}, column {tok.column}")
            node = Pow(node, e)
        self.depth -= 1
        return node

    def base(self):
        tok = self.peek()
        if tok.kind == "int":
            self.advance()
            value = Fraction(int(tok.text))
            if self.peek().kind == "/":
                self.advance()
                den = self.peek()
                if den.kind != "int":
                    self.fail(("positive integer",))
                self.advance()
                if int(den.text) == 0:
                    raise ParseError("zero denominator", den.line, den.column, ("positive integer",))
                value = Fraction(int(tok.text), int(den.text))
            return Number(value)
        if tok.kind == "i":
            self.advance()
            return Imag()
        if tok.kind == "var":
            self.advance()
            return Var(tok.text)
        if tok.kind == "(":
            self.advance()
            inner = self.expr()
            if self.peek().kind != ")":
                self.fail((")", "+", "-", "*", "^") + _EXPECT_BASE[:-1])
            self.advance()
            return Paren(inner)
        if tok.kind == "-":
            self.advance()
            self.enter()
            node = Neg(self.factor())
            self.depth -= 1
            return node
        self.fail(_EXPECT_BASE)


def parse_ast(text) -> object:
    if isinstance(text, bytes):
        if len(text) > MAX_BYTES:
            raise LimitError(f"input longer than {MAX_BYTES} bytes")
        try:
            text = text.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise ParseError("input is not valid UTF-8", 1, exc.start + 1, ()) from exc
    elif len(text.encode("utf-8")) > MAX_BYTES:
        raise LimitError(f"input longer than {MAX_BYTES} bytes")
    return _Parser(tokenize(text)).parse()


# --------------------------------------------------------------------------
# evaluation

def degree_bound(node) -> int:
    if isinstance(node, (Number, Imag)):
        return 0
    if isinstance(node, Var):
        return 1
    if isinstance(node, (Add, Sub)):
        return max(degree_bound(node.left), degree_bound(node.right))
    if isinstance(node, Mul):
        return degree_bound(node.left) + degree_bound(node.right)
    if isinstance(node, Pow):
        return node.exponent * degree_bound(node.base)
    if isinstance(node, Neg):
        return degree_bound(node.operand)
    return degree_bound(node.inner)


def to_poly(node, variables=VARIABLES) -> MPoly:
    if isinstance(node, Number):
        return MPoly.constant(node.value, variables)
    if isinstance(node, Imag):
        return MPoly.constant(GaussRational(0, 1), variables)
    if isinstance(node, Var):
        return MPoly.var(node.name, variables)
    if isinstance(node, Add):
        return to_poly(node.left, variables) + to_poly(node.right, variables)
    if isinstance(node, Sub):
        return to_poly(node.left, variables) - to_poly(node.right, variables)
    if isinstance(node, Mul):
        return to_poly(node.left, variables) * to_poly(node.right, variables)
    if isinstance(node, Pow):
        return to_poly(node.base, variables) ** node.exponent
    if isinstance(node, Neg):
        return -to_poly(node.operand, variables)
    return to_poly(node.inner, variables)


def parse_poly(text) -> MPoly:
    """Parse and expand; the context is ``(x, y)`` unless ``t`` occurs."""
    ast = parse_ast(text)
    if degree_bound(ast) > MAX_DEGREE:
        raise LimitError(f"expanded degree could exceed {MAX_DEGREE}")
    poly = to_poly(ast)
    if "t" in poly.used_variables():
        return poly
    return poly.restrict(GERM_VARIABLES)
