"""Expression language for polynomials on the command line.

Grammar::

    expr     := term (('+' | '-') term)*
    term     := unary ('*' unary)*
    unary    := ('-' | '+') unary | power
    power    := atom ('^' exponent)?
    exponent := INT | '(' INT ')'
    atom     := INT | INT '/' INT | 'i' | z<k> | zb<k> | x<k> | y<k> | '(' expr ')'

``a/b`` is a literal, not a division operator.  Printing a polynomial with
``str`` produces text this parser reads back to the same polynomial.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import NamedTuple

from .errors import ParseError
from .gaussian import GaussianRational, I
from .polynomial import Polynomial, real_variable, substitute_real_coords

__all__ = ["Token", "tokenize", "parse_ast", "parse_expression", "parse_real", "max_index"]

_TOKEN = re.compile(
    r"(?P<num>\d+(?:/\d+)?)|(?P<var>zb|z|x|y)(?P<idx>\d+)|(?P<unit>i)(?![A-Za-z0-9])|(?P<op>[-+*^()])"
)


class Token(NamedTuple):
    kind: str  # num, var, unit, op, end
    value: object
    pos: int


def tokenize(text: str) -> list[Token]:
    tokens = []
    pos = 0
    while pos < len(text):
        if text[pos].isspace():
            pos += 1
            continue
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos]!r}", pos)
        if m.group("num"):
            num, _, den = m.group("num").partition("/")
            if den and int(den) == 0:
                raise ParseError("zero denominator", pos)
            tokens.append(Token("num", Fraction(int(num), int(den or 1)), pos))
        elif m.group("var"):
            index = int(m.group("idx"))
            if index == 0:
                raise ParseError("variable indices start at 1", pos)
            tokens.append(Token("var", (m.group("var"), index), pos))
        elif m.group("unit"):
            tokens.append(Token("unit", None, pos))
        else:
            tokens.append(Token("op", m.group("op"), pos))
        pos = m.end()
    tokens.append(Token("end", None, len(text)))
    return tokens


class _Parser:
    """Recursive descent producing a small tuple AST."""

    def __init__(self, text: str):
        self.tokens = tokenize(text)
        self.i = 0

    def peek(self) -> Token:
        return self.tokens[self.i]

    def take(self) -> Token:
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect_op(self, op: str) -> Token:
        tok = self.take()
        if tok.kind != "op" or tok.value != op:
            raise ParseError(f"expected {op!r}", tok.pos)
        return tok

    def parse(self):
        if self.peek().kind == "end":
            raise ParseError("empty expression", 0)
        node = self.expr()
        tok = self.peek()
        if tok.kind != "end":
            raise ParseError("unexpected token", tok.pos)
        return node

    def expr(self):
        node = self.term()
        while self.peek().kind == "op" and self.peek().value in "+-":
            op = self.take().value
            node = ("add" if op == "+" else "sub", node, self.term())
        return node

    def term(self):
        node = self.unary()
        while self.peek().kind == "op" and self.peek().value == "*":
            self.take()
            node = ("mul", node, self.unary())
        return node

    def unary(self):
        tok = self.peek()
        if tok.kind == "op" and tok.value in "+-":
            self.take()
            operand = self.unary()
            return ("neg", operand) if tok.value == "-" else operand
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek().kind == "op" and self.peek().value == "^":
            self.take()
            return ("pow", base, self.exponent())
        return base

    def exponent(self) -> int:
        tok = self.take()
        if tok.kind == "op" and tok.value == "(":
            value = self._int_literal(self.take())
            self.expect_op(")")
            return value
        return self._int_literal(tok)

    @staticmethod
    def _int_literal(tok: Token) -> int:
        if tok.kind != "num" or tok.value.denominator != 1:
            raise ParseError("exponent must be a nonnegative integer literal", tok.pos)
        return int(tok.value)

    def atom(self):
        tok = self.take()
        if tok.kind == "num":
            return ("num", tok.value)
        if tok.kind == "unit":
            return ("unit",)
        if tok.kind == "var":
            name, index = tok.value
            return ("var", name, index, tok.pos)
        if tok.kind == "op" and tok.value == "(":
            node = self.expr()
            self.expect_op(")")
            return node
        raise ParseError("expected a number, variable or '('", tok.pos)


def parse_ast(text: str):
    return _Parser(text).parse()


def _variables(node):
    if node[0] == "var":
        yield node
    elif node[0] in ("add", "sub", "mul"):
        yield from _variables(node[1])
        yield from _variables(node[2])
    elif node[0] in ("neg", "pow"):
        yield from _variables(node[1])


def max_index(text: str) -> int:
    """Largest variable index in ``text`` (0 for constants)."""
    return max((v[2] for v in _variables(parse_ast(text))), default=0)


def _build(node, leaf):
    kind = node[0]
    if kind == "var":
        return leaf(node)
    if kind == "num":
        return leaf(("const", GaussianRational(node[1])))
    if kind == "unit":
        return leaf(("const", I))
    if kind == "neg":
        return -_build(node[1], leaf)
    if kind == "pow":
        return _build(node[1], leaf) ** node[2]
    left, right = _build(node[1], leaf), _build(node[2], leaf)
    if kind == "add":
        return left + right
    if kind == "sub":
        return left - right
    return left * right


def _dimension(ast, n: int | None) -> int:
    variables = list(_variables(ast))
    inferred = max((v[2] for v in variables), default=1)
    if n is None:
        return inferred
    for _, _, index, pos in variables:
        if index > n:
            raise ParseError(f"variable index {index} exceeds n = {n}", pos)
    return n


def parse_expression(text: str, n: int | None = None, real_coords: bool = False) -> Polynomial:
    """Polynomial in z, zb; with ``real_coords`` x<k>, y<k> are also allowed."""
    ast = parse_ast(text)
    dim = _dimension(ast, n)

    def leaf(node):
        if node[0] == "const":
            return Polynomial.constant(node[1], dim)
        _, name, index, pos = node
        if name == "z":
            return Polynomial.z(index, dim)
        if name == "zb":
            return Polynomial.zbar(index, dim)
        if not real_coords:
            raise ParseError(f"real coordinate {name}{index} needs real coordinates enabled", pos)
        return substitute_real_coords(real_variable(name, index, dim), dim)

    return _build(ast, leaf)


def parse_real(text: str, n: int | None = None) -> Polynomial:
    """Polynomial over the real-coordinate ring (x_1..x_n, y_1..y_n), dimension 2n."""
    ast = parse_ast(text)
    dim = _dimension(ast, n)

    def leaf(node):
        if node[0] == "const":
            return Polynomial.constant(node[1], 2 * dim)
        _, name, index, pos = node
        if name not in ("x", "y"):
            raise ParseError(f"only x<k> and y<k> are allowed here, got {name}{index}", pos)
        return real_variable(name, index, dim)

    return _build(ast, leaf)
