"""Parser for the polynomial expression grammar used in configs and reports.

    expr   := term (('+' | '-') term)*
    term   := unary (('*' | '/') unary)*
    unary  := ('+' | '-') unary | power
    power  := atom ('^' '-'? INTEGER)?
    atom   := NUMBER | NAME | '(' expr ')'

Expressions parse to a small AST that can be evaluated either as a
bivariate polynomial (division by constants only) or inside the function
field (any nonzero divisor).
"""

from __future__ import annotations

import re
from fractions import Fraction

from .errors import ParseError
from .funcfield import BiPoly, CurvePoly, FFElem
from .scalars import UniPoly

_TOKENS = re.compile(r"\s*(?:(\d+(?:\.\d+)?)|([A-Za-z_][A-Za-z_0-9]*)|(\*\*|[-+*/^()]))")


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    out = []
    pos = 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKENS.match(text, pos)
        if not m:
            col = pos + len(text[pos:]) - len(text[pos:].lstrip())
            raise ParseError(f"unexpected character {text[col]!r}", 1, col + 1)
        col = m.start(m.lastindex) + 1
        if m.group(1):
            out.append(("num", m.group(1), col))
        elif m.group(2):
            out.append(("name", m.group(2), col))
        else:
            op = "^" if m.group(3) == "**" else m.group(3)
            out.append(("op", op, col))
        pos = m.end()
    out.append(("end", "", len(text) + 1))
    return out


class _Parser:
    def __init__(self, text: str, variables: tuple[str, ...]):
        self.tokens = _tokenize(text)
        self.i = 0
        self.variables = variables

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def fail(self, msg, tok=None):
        tok = tok or self.peek()
        raise ParseError(msg, 1, tok[2])

    def expr(self):
        node = self.term()
        while self.peek()[0] == "op" and self.peek()[1] in "+-":
            op = self.take()[1]
            node = (op, node, self.term())
        return node

    def term(self):
        node = self.unary()
        while self.peek()[0] == "op" and self.peek()[1] in "*/":
            op = self.take()[1]
            node = (op, node, self.unary())
        return node

    def unary(self):
        tok = self.peek()
        if tok[0] == "op" and tok[1] in "+-":
            self.take()
            inner = self.unary()
            return ("neg", inner) if tok[1] == "-" else inner
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek() == ("op", "^", self.peek()[2]):
            self.take()
            sign = 1
            if self.peek()[0] == "op" and self.peek()[1] == "-":
                self.take()
                sign = -1
            tok = self.take()
            if tok[0] != "num" or not tok[1].isdigit():
                self.fail("exponent must be an integer", tok)
            return ("pow", base, sign * int(tok[1]))
        return base

    def atom(self):
        tok = self.take()
        if tok[0] == "num":
            return ("const", Fraction(tok[1]))
        if tok[0] == "name":
            if tok[1] not in self.variables:
                self.fail(f"unknown variable {tok[1]!r} (expected one of {', '.join(self.variables)})", tok)
            return ("var", tok[1])
        if tok == ("op", "(", tok[2]):
            node = self.expr()
            close = self.take()
            if close[:2] != ("op", ")"):
                self.fail("expected ')'", close)
            return node
        self.fail(f"unexpected {tok[1] or 'end of input'!r}", tok)

    def parse(self):
        node = self.expr()
        if self.peek()[0] != "end":
            self.fail(f"unexpected {self.peek()[1]!r}")
        return node


def parse_expr(text: str, variables: tuple[str, ...]):
    return _Parser(text, variables).parse()


def _evaluate(node, env: dict, const, divide, power):
    kind = node[0]
    if kind == "const":
        return const(node[1])
    if kind == "var":
        return env[node[1]]
    if kind == "neg":
        return -_evaluate(node[1], env, const, divide, power)
    if kind == "pow":
        return power(_evaluate(node[1], env, const, divide, power), node[2])
    lhs = _evaluate(node[1], env, const, divide, power)
    rhs = _evaluate(node[2], env, const, divide, power)
    if kind == "+":
        return lhs + rhs
    if kind == "-":
        return lhs - rhs
    if kind == "*":
        return lhs * rhs
    return divide(lhs, rhs)


def _bipoly_divide(lhs: BiPoly, rhs: BiPoly) -> BiPoly:
    if rhs.is_zero():
        raise ParseError("division by zero")
    if set(rhs.terms) != {(0, 0)}:
        raise ParseError("polynomials may only be divided by constants")
    return lhs * (1 / rhs.terms[(0, 0)])


def _bipoly_power(base: BiPoly, n: int) -> BiPoly:
    if n < 0:
        if set(base.terms) == {(0, 0)}:
            return BiPoly.const(base.terms[(0, 0)] ** n)
        raise ParseError("negative powers need a field; not allowed in polynomials")
    return base**n


def parse_bipoly(text: str, names: tuple[str, str]) -> BiPoly:
    """Parse ``text`` as a polynomial in the two coordinate names."""
    ast = parse_expr(text, names)
    env = {names[0]: BiPoly.x(), names[1]: BiPoly.y()}
    return _evaluate(ast, env, BiPoly.const, _bipoly_divide, _bipoly_power)


def parse_unipoly(text: str, name: str) -> UniPoly:
    p = parse_bipoly(text, (name, "\0unused"))
    if p.deg_y > 0:
        raise ParseError(f"expected a polynomial in {name} only")
    return p.y_coeffs()[0] if p.terms else UniPoly()


def parse_ff(text: str, curve: CurvePoly) -> FFElem:
    """Parse ``text`` as an element of the function field of ``curve``."""
    ast = parse_expr(text, curve.names)
    env = {curve.names[0]: curve.x(), curve.names[1]: curve.y()}

    def divide(lhs, rhs):
        if rhs.is_zero():
            raise ParseError("division by an element that vanishes on the curve")
        return lhs / rhs

    return _evaluate(ast, env, curve.const, divide, lambda b, n: b**n)
