"""
Recursive-descent parser for the expression grammar.

    expr   := term (("+"|"-") term)*
    term   := unary (("*"|"/") unary)*
    unary  := "-" unary | factor
    factor := base ("^" int)?
    base   := rat | "x" | "(" expr ")" | fn "(" expr ")"
    fn     := "sin" | "cos" | "exp" | "ln" | "sqrt" | "abs"
    rat    := int ("/" posint)?

Whitespace is insignificant. Exponents may carry a minus sign.
"""

import logging
import re
from fractions import Fraction
from typing import FrozenSet, List, NamedTuple

from nonstd.errors import ExprSyntaxError
from nonstd.expr.nodes import FUNCTIONS, Add, Const, Div, Expr, Mul, PowInt, Sub, Var

logger = logging.getLogger(__name__)

_TOKEN_RE = re.compile(r'\s*(?:(?P<num>\d+)|(?P<name>[A-Za-z_]+)|(?P<op>[-+*/^()])|(?P<bad>\S))')

_BASE_START = frozenset({"number", "x", "(", "-"} | set(FUNCTIONS))


class Token(NamedTuple):
    kind: str
    text: str
    offset: int


def tokenize(src: str) -> List[Token]:
    tokens = []
    position = 0
    while True:
        match = _TOKEN_RE.match(src, position)
        if not match:
            break
        kind = match.lastgroup
        text = match.group(kind)
        offset = match.start(kind)
        if kind == 'bad':
            raise ExprSyntaxError(f"unexpected character '{text}'", offset, _BASE_START)
        tokens.append(Token(kind, text, offset))
        position = match.end()
    tokens.append(Token('end', '', len(src)))
    return tokens


class Parser:
    """Single-use parser over a token list."""

    def __init__(self, src: str):
        self.src = src
        self.tokens = tokenize(src)
        self.index = 0

    @property
    def current(self) -> Token:
        return self.tokens[self.index]

    def peek(self, ahead: int = 1) -> Token:
        return self.tokens[min(self.index + ahead, len(self.tokens) - 1)]

    def advance(self) -> Token:
        token = self.current
        self.index += 1
        return token

    def fail(self, expected: FrozenSet[str]):
        token = self.current
        found = "end of input" if token.kind == 'end' else f"'{token.text}'"
        raise ExprSyntaxError(f"unexpected {found}", token.offset, expected)

    def expect_op(self, symbol: str):
        if self.current.kind == 'op' and self.current.text == symbol:
            return self.advance()
        self.fail(frozenset({symbol}))

    def parse(self) -> Expr:
        node = self.expr()
        if self.current.kind != 'end':
            self.fail(frozenset({"+", "-", "*", "/", "^", "end of input"}))
        return node

    def expr(self) -> Expr:
        node = self.term()
        while self.current.kind == 'op' and self.current.text in '+-':
            op = self.advance().text
            right = self.term()
            node = Add(node, right) if op == '+' else Sub(node, right)
        return node

    def term(self) -> Expr:
        node = self.unary()
        while self.current.kind == 'op' and self.current.text in '*/':
            op = self.advance().text
            right = self.unary()
            node = Mul(node, right) if op == '*' else Div(node, right)
        return node

    def unary(self) -> Expr:
        if self.current.kind == 'op' and self.current.text == '-':
            self.advance()
            operand = self.unary()
            if isinstance(operand, Const):
                return Const(-operand.value)
            return Mul(Const(Fraction(-1)), operand)
        return self.factor()

    def factor(self) -> Expr:
        node = self.base()
        if self.current.kind == 'op' and self.current.text == '^':
            self.advance()
            negative = False
            if self.current.kind == 'op' and self.current.text == '-':
                self.advance()
                negative = True
            if self.current.kind != 'num':
                self.fail(frozenset({"integer"}))
            exponent = int(self.advance().text)
            node = PowInt(node, -exponent if negative else exponent)
        return node

    def base(self) -> Expr:
        token = self.current
        if token.kind == 'num':
            self.advance()
            numerator = int(token.text)
            # int "/" posint is a literal, anything else after "/" is a division
            if self.current.kind == 'op' and self.current.text == '/' \
                    and self.peek().kind == 'num' and int(self.peek().text) > 0:
                self.advance()
                denominator = int(self.advance().text)
                return Const(Fraction(numerator, denominator))
            return Const(Fraction(numerator))
        if token.kind == 'name':
            if token.text == 'x':
                self.advance()
                return Var()
            if token.text in FUNCTIONS:
                self.advance()
                self.expect_op('(')
                arg = self.expr()
                self.expect_op(')')
                return FUNCTIONS[token.text](arg)
            raise ExprSyntaxError(f"unknown name '{token.text}'", token.offset, _BASE_START - {"-"})
        if token.kind == 'op' and token.text == '(':
            self.advance()
            node = self.expr()
            self.expect_op(')')
            return node
        self.fail(_BASE_START)


def parse(src: str) -> Expr:
    """
    Parse an expression in the variable x.

    Args:
        src (str): Source text

    Returns:
        Expr: The syntax tree

    Raises:
        ExprSyntaxError: With the offset of the offending token and the expected set
    """
    node = Parser(src).parse()
    logger.debug(f"Parsed '{src}' as {node}")
    return node
