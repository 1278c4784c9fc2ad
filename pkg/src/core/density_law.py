"""Point-count laws f(n) written as small arithmetic expressions.

Grammar::

    expr   := term ('+' term)*
    term   := factor ('*' factor)*
    factor := atom ('^' factor)?
    atom   := NUMBER | 'n' | 'log' '(' expr ')' | '(' expr ')'

``log`` is the natural logarithm and ``^`` is right-associative.
The point count is the ceiling of the value.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from typing import Union

from core.errors import DensityLawError

_TOKEN = re.compile(r"\s*(?:(\d+(?:\.\d*)?(?:[eE][+-]?\d+)?|\.\d+(?:[eE][+-]?\d+)?)|(log)|(n)|([+*^()]))")

Node = Union[float, str, tuple]


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    stripped = text.rstrip()
    while pos < len(stripped):
        m = _TOKEN.match(stripped, pos)
        if not m:
            raise DensityLawError(f"unexpected character {stripped[pos:].lstrip()[:1]!r} at {pos} in {text!r}")
        number, log, var, op = m.groups()
        if number is not None:
            tokens.append(("num", number, m.start(1)))
        elif log is not None:
            tokens.append(("log", log, m.start(2)))
        elif var is not None:
            tokens.append(("n", var, m.start(3)))
        else:
            tokens.append(("op", op, m.start(4)))
        pos = m.end()
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0

    def _peek(self, value: str) -> bool:
        return self.i < len(self.tokens) and self.tokens[self.i][1] == value

    def _expect(self, value: str) -> None:
        if not self._peek(value):
            where = self.tokens[self.i][2] if self.i < len(self.tokens) else len(self.text)
            raise DensityLawError(f"expected {value!r} at {where} in {self.text!r}")
        self.i += 1

    def parse(self) -> Node:
        if not self.tokens:
            raise DensityLawError("empty density law")
        node = self.expr()
        if self.i != len(self.tokens):
            raise DensityLawError(f"unexpected {self.tokens[self.i][1]!r} at {self.tokens[self.i][2]} in {self.text!r}")
        return node

    def expr(self) -> Node:
        node = self.term()
        while self._peek("+"):
            self.i += 1
            node = ("+", node, self.term())
        return node

    def term(self) -> Node:
        node = self.factor()
        while self._peek("*"):
            self.i += 1
            node = ("*", node, self.factor())
        return node

    def factor(self) -> Node:
        base = self.atom()
        if self._peek("^"):
            self.i += 1
            return ("^", base, self.factor())
        return base

    def atom(self) -> Node:
        if self.i >= len(self.tokens):
            raise DensityLawError(f"unexpected end of {self.text!r}")
        kind, value, _ = self.tokens[self.i]
        if kind == "num":
            self.i += 1
            return float(value)
        if kind == "n":
            self.i += 1
            return "n"
        if kind == "log":
            self.i += 1
            self._expect("(")
            inner = self.expr()
            self._expect(")")
            return ("log", inner)
        if value == "(":
            self.i += 1
            inner = self.expr()
            self._expect(")")
            return inner
        raise DensityLawError(f"unexpected {value!r} at {self.tokens[self.i][2]} in {self.text!r}")


def _evaluate(node: Node, n: float) -> float:
    if isinstance(node, float):
        return node
    if node == "n":
        return n
    op = node[0]
    if op == "log":
        arg = _evaluate(node[1], n)
        if arg <= 0:
            raise DensityLawError(f"log of non-positive value {arg}")
        return math.log(arg)
    a, b = _evaluate(node[1], n), _evaluate(node[2], n)
    if op == "+":
        return a + b
    if op == "*":
        return a * b
    try:
        return math.pow(a, b)
    except (OverflowError, ValueError) as e:
        raise DensityLawError(f"cannot raise {a} to {b}: {e}") from e


@dataclass(frozen=True)
class DensityLaw:
    text: str
    tree: Node

    def evaluate(self, n: float) -> float:
        value = _evaluate(self.tree, float(n))
        if not math.isfinite(value):
            raise DensityLawError(f"{self.text!r} is not finite at n={n}")
        return value

    def point_count(self, n: float) -> int:
        value = self.evaluate(n)
        if value < 0:
            raise DensityLawError(f"{self.text!r} is negative at n={n}")
        return int(math.ceil(value))

    def __str__(self) -> str:
        return self.text


def parse_density_law(text: str) -> DensityLaw:
    """Parse *text*; raises DensityLawError when it is not in the grammar."""
    if not isinstance(text, str):
        raise DensityLawError(f"density law must be a string, got {type(text).__name__}")
    return DensityLaw(text=text.strip(), tree=_Parser(text).parse())


DEFAULT_LAW = "8*n^2*log(n)"
