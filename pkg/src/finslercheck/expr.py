"""Expressions in ``r`` and ``s`` for the free radial functions of the family.

Grammar (``^`` binds tighter than unary minus, which binds tighter than ``*``)::

    expr    := term (('+' | '-') term)*
    term    := unary (('*' | '/') unary)*
    unary   := '-' unary | power
    power   := atom ['^' ['-'] INT]
    atom    := NUMBER | 'r' | 's' | FUNC '(' expr ')' | '(' expr ')'
    FUNC    := 'sqrt' | 'exp'

Exponents are integer literals only; fractional powers go through ``sqrt``.
Evaluation works on floats and on :class:`~finslercheck.jets.Jet` values alike.
"""
from __future__ import annotations

import math
import re
from dataclasses import dataclass
from typing import Union

from . import jets
from .errors import DomainError, ExprSyntaxError, UnknownIdentifier

VARIABLES = ("r", "s")
FUNCTIONS = ("sqrt", "exp")


@dataclass(frozen=True)
class Num:
    value: float


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class Neg:
    operand: "Node"


@dataclass(frozen=True)
class BinOp:
    op: str
    left: "Node"
    right: "Node"


@dataclass(frozen=True)
class Pow:
    base: "Node"
    exponent: int


@dataclass(frozen=True)
class Call:
    func: str
    arg: "Node"


Node = Union[Num, Var, Neg, BinOp, Pow, Call]

_TOKEN = re.compile(
    r"\s*(?:(?P<num>(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)|(?P<name>[A-Za-z_]\w*)|(?P<op>[-+*/^()]))"
)


def _tokenize(src: str):
    pos = 0
    toks = []
    while True:
        m = _TOKEN.match(src, pos)
        if m is None:
            rest = len(src) - len(src[pos:].lstrip())
            if rest == len(src):
                break
            raise ExprSyntaxError(f"unexpected character {src[rest]!r}", rest)
        kind = m.lastgroup
        toks.append((kind, m.group(kind), m.start(kind)))
        pos = m.end()
    toks.append(("end", "", len(src)))
    return toks


class _Parser:
    def __init__(self, src: str):
        self.toks = _tokenize(src)
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def take(self):
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def expect(self, text):
        kind, val, off = self.take()
        if val != text or kind != "op":
            found = "end of input" if kind == "end" else repr(val)
            raise ExprSyntaxError(f"expected {text!r}, found {found}", off)

    def parse(self):
        node = self.expr()
        kind, val, off = self.peek()
        if kind != "end":
            raise ExprSyntaxError(f"unexpected {val!r}", off)
        return node

    def expr(self):
        node = self.term()
        while self.peek()[1] in ("+", "-") and self.peek()[0] == "op":
            op = self.take()[1]
            node = BinOp(op, node, self.term())
        return node

    def term(self):
        node = self.unary()
        while self.peek()[1] in ("*", "/") and self.peek()[0] == "op":
            op = self.take()[1]
            node = BinOp(op, node, self.unary())
        return node

    def unary(self):
        if self.peek()[:2] == ("op", "-"):
            self.take()
            return Neg(self.unary())
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek()[:2] != ("op", "^"):
            return base
        self.take()
        sign = 1
        if self.peek()[:2] == ("op", "-"):
            self.take()
            sign = -1
        kind, val, off = self.take()
        if kind != "num" or not re.fullmatch(r"\d+", val):
            raise ExprSyntaxError("exponent must be an integer literal", off)
        if self.peek()[:2] == ("op", "^"):
            raise ExprSyntaxError("chained exponent; add parentheses", self.peek()[2])
        return Pow(base, sign * int(val))

    def atom(self):
        kind, val, off = self.take()
        if kind == "num":
            return Num(float(val))
        if kind == "name":
            if val in FUNCTIONS:
                self.expect("(")
                arg = self.expr()
                self.expect(")")
                return Call(val, arg)
            if val in VARIABLES:
                return Var(val)
            raise UnknownIdentifier(val, off)
        if (kind, val) == ("op", "("):
            node = self.expr()
            self.expect(")")
            return node
        found = "end of input" if kind == "end" else repr(val)
        raise ExprSyntaxError(f"unexpected {found}", off)


def parse(src: str) -> Node:
    if not src or not src.strip():
        raise ExprSyntaxError("empty expression", 0)
    return _Parser(src).parse()


_PREC = {"+": 1, "-": 1, "*": 2, "/": 2}


def _prec(node: Node) -> int:
    if isinstance(node, BinOp):
        return _PREC[node.op]
    if isinstance(node, Neg):
        return 3
    if isinstance(node, Pow):
        return 4
    return 5


def to_source(node: Node) -> str:
    """Canonical text; ``parse(to_source(n)) == n`` for every AST ``n``."""
    if isinstance(node, Num):
        return repr(float(node.value))
    if isinstance(node, Var):
        return node.name
    if isinstance(node, Call):
        return f"{node.func}({to_source(node.arg)})"
    if isinstance(node, Neg):
        inner = to_source(node.operand)
        return "-" + (inner if _prec(node.operand) >= 3 else f"({inner})")
    if isinstance(node, Pow):
        base = to_source(node.base)
        if _prec(node.base) < 5:
            base = f"({base})"
        return f"{base}^{node.exponent}"
    p = _PREC[node.op]
    left = to_source(node.left)
    right = to_source(node.right)
    if _prec(node.left) < p:
        left = f"({left})"
    if _prec(node.right) <= p:
        right = f"({right})"
    return f"{left} {node.op} {right}"


def variables(node: Node) -> set[str]:
    if isinstance(node, Var):
        return {node.name}
    if isinstance(node, Num):
        return set()
    if isinstance(node, (Neg, Call)):
        return variables(node.operand if isinstance(node, Neg) else node.arg)
    if isinstance(node, Pow):
        return variables(node.base)
    return variables(node.left) | variables(node.right)


def _is_zero(v) -> bool:
    return jets.value(v) == 0.0


def eval_expr(node: Node, r=None, s=None):
    """Evaluate on floats or jets. Domain failures raise :class:`DomainError`."""
    try:
        out = _eval(node, {"r": r, "s": s})
    except (OverflowError, ZeroDivisionError) as exc:
        raise DomainError(str(exc)) from exc
    if not math.isfinite(jets.value(out)):
        raise DomainError("non-finite value")
    return out


def _eval(node, env):
    if isinstance(node, Num):
        return node.value
    if isinstance(node, Var):
        v = env[node.name]
        if v is None:
            raise DomainError(f"no value bound for {node.name!r}")
        return v
    if isinstance(node, Neg):
        return -_eval(node.operand, env)
    if isinstance(node, Call):
        arg = _eval(node.arg, env)
        if node.func == "sqrt":
            return jets.sqrt(arg)
        try:
            return jets.exp(arg)
        except OverflowError as exc:
            raise DomainError("exp overflow") from exc
    if isinstance(node, Pow):
        base = _eval(node.base, env)
        if node.exponent < 0:
            if _is_zero(base):
                raise DomainError("division by zero in negative power")
            if not isinstance(base, jets.Jet):
                return 1.0 / base ** (-node.exponent)
        return base ** node.exponent
    left = _eval(node.left, env)
    right = _eval(node.right, env)
    if node.op == "+":
        return left + right
    if node.op == "-":
        return left - right
    if node.op == "*":
        return left * right
    if _is_zero(right):
        raise DomainError("division by zero")
    return left / right


class RadialExpr:
    """A parsed expression together with its source text."""

    __slots__ = ("source", "node")

    def __init__(self, source: str | float | int):
        self.source = str(source)
        self.node = parse(self.source)

    def __call__(self, r=None, s=None):
        return eval_expr(self.node, r, s)

    @property
    def variables(self) -> set[str]:
        return variables(self.node)

    def __repr__(self):
        return f"RadialExpr({self.source!r})"

    def __eq__(self, other):
        return isinstance(other, RadialExpr) and self.node == other.node

    def __hash__(self):
        return hash(self.node)
