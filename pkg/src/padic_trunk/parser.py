"""Parse human-written polynomial expressions into Polynomial values.

Grammar (whitespace-insensitive; the variable matches case-insensitively
and U+2212 is accepted as a minus sign)::

    expr     := term (("+" | "-") term)*
    term     := factor (("*" factor) | factor)*      # adjacency multiplies
    factor   := "-" factor | power
    power    := atom ("^" exponent)*
    exponent := ["-"] integer                        # negative is rejected
    atom     := integer | variable | "(" expr ")"

Precedence: ^ binds tighter than unary minus, which binds tighter than
*, which binds tighter than binary + and -.  So "-X^2" is -(X^2) and
"-3X" is (-3)*X.
"""

from __future__ import annotations

from .polynomial import Polynomial

#: Largest accepted exponent literal, and largest expanded power degree.
MAX_EXPONENT = 10_000


class ParseError(ValueError):
    """Syntax error carrying a 0-based character position."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


# AST nodes are tagged tuples:
#   ("int", value)  ("var",)  ("neg", a)  ("add", a, b)  ("sub", a, b)
#   ("mul", a, b)   ("pow", a, exponent, position)


def _tokenize(text: str) -> list[tuple[str, object, int]]:
    tokens: list[tuple[str, object, int]] = []
    i = 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch == "−":  # unicode minus
            ch = "-"
        if ch in "+-*^()":
            tokens.append(("op", ch, i))
            i += 1
            continue
        if ch.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            tokens.append(("int", int(text[i:j]), i))
            i = j
            continue
        if ch.isalpha() or ch == "_":
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            tokens.append(("name", text[i:j], i))
            i = j
            continue
        raise ParseError(f"unexpected character {ch!r}", i)
    tokens.append(("end", None, n))
    return tokens


class _Parser:
    def __init__(self, text: str, variable: str):
        self.tokens = _tokenize(text)
        self.pos = 0
        self.variable = variable.lower()

    def peek(self) -> tuple[str, object, int]:
        return self.tokens[self.pos]

    def advance(self) -> tuple[str, object, int]:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def parse(self):
        node = self.expr()
        kind, value, at = self.peek()
        if kind != "end":
            if kind == "op" and value == ")":
                raise ParseError("unbalanced parenthesis", at)
            raise ParseError(f"unexpected token {value!r}", at)
        return node

    def expr(self):
        node = self.term()
        while True:
            kind, value, _ = self.peek()
            if kind == "op" and value in ("+", "-"):
                self.advance()
                rhs = self.term()
                node = ("add" if value == "+" else "sub", node, rhs)
            else:
                return node

    def term(self):
        node = self.factor()
        while True:
            kind, value, _ = self.peek()
            if kind == "op" and value == "*":
                self.advance()
                node = ("mul", node, self.factor())
            elif kind in ("int", "name") or (kind == "op" and value == "("):
                # implicit multiplication: "3X", "(X+1)(X+2)", "2(X-1)"
                node = ("mul", node, self.factor())
            else:
                return node

    def factor(self):
        kind, value, _ = self.peek()
        if kind == "op" and value == "-":
            self.advance()
            return ("neg", self.factor())
        return self.power()

    def power(self):
        node = self.atom()
        while True:
            kind, value, at = self.peek()
            if kind == "op" and value == "^":
                self.advance()
                node = ("pow", node, self.exponent(), at)
            else:
                return node

    def exponent(self) -> int:
        kind, value, at = self.peek()
        negative = False
        if kind == "op" and value == "-":
            negative = True
            self.advance()
            kind, value, at = self.peek()
        if kind != "int":
            raise ParseError("exponent must be an integer literal", at)
        self.advance()
        if negative:
            raise ParseError("negative exponent not allowed", at)
        if value > MAX_EXPONENT:
            raise ParseError(f"exponent exceeds bound {MAX_EXPONENT}", at)
        return value

    def atom(self):
        kind, value, at = self.advance()
        if kind == "int":
            return ("int", value)
        if kind == "name":
            if value.lower() != self.variable:
                raise ParseError(f"unknown identifier {value!r}", at)
            return ("var",)
        if kind == "op" and value == "(":
            node = self.expr()
            kind, value, at = self.advance()
            if kind != "op" or value != ")":
                raise ParseError("unbalanced parenthesis", at)
            return node
        raise ParseError(f"unexpected token {value!r}", at)


def parse_ast(text: str, variable: str = "X"):
    """Parse an expression into its AST without expanding it."""
    return _Parser(text, variable).parse()


def ast_to_polynomial(node) -> Polynomial:
    """Expand an AST into a canonical Polynomial by exact arithmetic."""
    tag = node[0]
    if tag == "int":
        return Polynomial((node[1],))
    if tag == "var":
        return Polynomial((0, 1))
    if tag == "neg":
        return -ast_to_polynomial(node[1])
    if tag in ("add", "sub", "mul"):
        a = ast_to_polynomial(node[1])
        b = ast_to_polynomial(node[2])
        if tag == "add":
            return a + b
        if tag == "sub":
            return a - b
        return a * b
    if tag == "pow":
        base = ast_to_polynomial(node[1])
        exp = node[2]
        if not base.is_zero and base.degree * exp > MAX_EXPONENT:
            raise ParseError(f"expanded power degree exceeds bound {MAX_EXPONENT}", node[3])
        return base ** exp
    raise ValueError(f"unknown AST node {tag!r}")


def ast_evaluate(node, x: int) -> int:
    """Evaluate the unexpanded AST at an integer (for cross-checks)."""
    tag = node[0]
    if tag == "int":
        return node[1]
    if tag == "var":
        return x
    if tag == "neg":
        return -ast_evaluate(node[1], x)
    if tag == "add":
        return ast_evaluate(node[1], x) + ast_evaluate(node[2], x)
    if tag == "sub":
        return ast_evaluate(node[1], x) - ast_evaluate(node[2], x)
    if tag == "mul":
        return ast_evaluate(node[1], x) * ast_evaluate(node[2], x)
    if tag == "pow":
        return ast_evaluate(node[1], x) ** node[2]
    raise ValueError(f"unknown AST node {tag!r}")


def parse(text: str, variable: str = "X") -> Polynomial:
    """Parse an expression like ``(X^2+3)*(X^2+3*X+9)`` into a Polynomial."""
    return ast_to_polynomial(parse_ast(text, variable))
