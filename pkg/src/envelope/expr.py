"""Small recursive-descent parser for CLI element expressions.

Grammar::

    expr   := term (('+' | '-') term)*
    term   := unary (('*' | '/') unary)*
    unary  := '-' unary | power
    power  := atom ('^' INT)?
    atom   := NUMBER | NAME | NAME '(' [expr (',' expr)*] ')' | '(' expr ')'

Evaluation is delegated to a :class:`Context`, so the same syntax drives every
CLI mode.  Division is only allowed by rational scalars.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Mapping

from .errors import ExpressionError

_TOKEN = re.compile(r"\s*(?:(\d+(?:\.\d+)?)|([A-Za-z_][A-Za-z0-9_']*)|(\S))")


def tokenize(text: str) -> list:
    out = []
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:  # pragma: no cover - the pattern matches any non-space character
            raise ExpressionError(f"cannot tokenize at {text[pos:]!r}")
        num, name, sym = m.groups()
        if num is not None:
            out.append(("num", Fraction(num)))
        elif name is not None:
            out.append(("name", name))
        else:
            if sym not in "+-*/^(),":
                raise ExpressionError(f"unexpected character {sym!r}")
            out.append(("sym", sym))
        pos = m.end()
    return out


@dataclass(frozen=True)
class Node:
    kind: str  # num, name, call, neg, add, sub, mul, div, pow
    value: object = None
    args: tuple = ()


class _Parser:
    def __init__(self, tokens: list):
        self.tokens = tokens
        self.i = 0

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else (None, None)

    def take(self, sym=None):
        tok = self.peek()
        if sym is not None and tok != ("sym", sym):
            found = tok[1] if tok[0] else "end of input"
            raise ExpressionError(f"expected {sym!r}, found {found!r}")
        self.i += 1
        return tok

    def expr(self) -> Node:
        node = self.term()
        while self.peek() in (("sym", "+"), ("sym", "-")):
            op = self.take()[1]
            node = Node("add" if op == "+" else "sub", args=(node, self.term()))
        return node

    def term(self) -> Node:
        node = self.unary()
        while self.peek() in (("sym", "*"), ("sym", "/")):
            op = self.take()[1]
            node = Node("mul" if op == "*" else "div", args=(node, self.unary()))
        return node

    def unary(self) -> Node:
        if self.peek() == ("sym", "-"):
            self.take()
            return Node("neg", args=(self.unary(),))
        if self.peek() == ("sym", "+"):
            self.take()
            return self.unary()
        return self.power()

    def power(self) -> Node:
        node = self.atom()
        if self.peek() == ("sym", "^"):
            self.take()
            kind, val = self.take()
            if kind != "num" or val.denominator != 1 or val < 0:
                raise ExpressionError("exponent must be a non-negative integer")
            node = Node("pow", int(val), (node,))
        return node

    def atom(self) -> Node:
        kind, val = self.peek()
        if kind == "num":
            self.take()
            return Node("num", val)
        if kind == "name":
            self.take()
            if self.peek() == ("sym", "("):
                self.take()
                args = []
                if self.peek() != ("sym", ")"):
                    args.append(self.expr())
                    while self.peek() == ("sym", ","):
                        self.take()
                        args.append(self.expr())
                self.take(")")
                return Node("call", val, tuple(args))
            return Node("name", val)
        if (kind, val) == ("sym", "("):
            self.take()
            node = self.expr()
            self.take(")")
            return node
        raise ExpressionError(f"unexpected {val!r}" if kind else "unexpected end of input")


def parse(text: str) -> Node:
    p = _Parser(tokenize(text))
    if not p.tokens:
        raise ExpressionError("empty expression")
    node = p.expr()
    if p.i != len(p.tokens):
        raise ExpressionError(f"trailing input starting at {p.tokens[p.i][1]!r}")
    return node


class Context:
    """Name and function bindings for evaluation."""

    def __init__(self, names: Mapping[str, object], functions: Mapping[str, Callable]):
        self.names = dict(names)
        self.functions = dict(functions)

    def lookup(self, name: str):
        if name not in self.names:
            raise ExpressionError(f"unknown symbol {name!r}")
        return self.names[name]

    def call(self, name: str, args: list):
        if name not in self.functions:
            raise ExpressionError(f"function {name!r} is not available in this mode")
        try:
            return self.functions[name](*args)
        except TypeError as exc:
            raise ExpressionError(f"bad arguments to {name}(): {exc}") from None


def evaluate(node: Node, ctx: Context):
    k = node.kind
    if k == "num":
        return node.value
    if k == "name":
        return ctx.lookup(node.value)
    if k == "call":
        return ctx.call(node.value, [evaluate(a, ctx) for a in node.args])
    if k == "neg":
        return -evaluate(node.args[0], ctx)
    if k == "pow":
        return evaluate(node.args[0], ctx) ** node.value
    a, b = (evaluate(x, ctx) for x in node.args)
    if k == "add":
        return a + b
    if k == "sub":
        return a - b
    if k == "mul":
        return a * b
    if k == "div":
        if not isinstance(b, Fraction):
            raise ExpressionError("division is only by rational scalars")
        if not b:
            raise ExpressionError("division by zero")
        return a * (1 / b) if not isinstance(a, Fraction) else a / b
    raise ExpressionError(f"unknown node {k}")  # pragma: no cover


def evaluate_text(text: str, ctx: Context):
    return evaluate(parse(text), ctx)
