"""One-variable expressions with exact first derivatives.

Grammar, loosest to tightest binding::

    expr   := term (('+' | '-') term)*
    term   := unary (('*' | '/') unary)*
    unary  := '-' unary | '+' unary | power
    power  := atom ('^' unary)?          # right associative
    atom   := number | name | name '(' expr (',' expr)* ')' | '(' expr ')'

``-x^2`` therefore reads as ``-(x^2)`` and ``2^-1`` as ``2^(-1)``.
Evaluation runs forward-mode dual numbers through the tree so that the
value and the derivative with respect to the free variable come out
together.
"""
from __future__ import annotations

import math
import re
from dataclasses import dataclass
from typing import Iterable, Mapping, Union

__all__ = [
    "Const", "Var", "Param", "Neg", "BinOp", "Call", "Node",
    "Dual", "ExprSyntaxError", "ExprDomainError", "ExprError",
    "Expression", "parse", "eval_with_derivative", "to_text",
]

FUNCTIONS = {"exp": 1, "log": 1, "sqrt": 1, "abs": 1, "sin": 1, "cos": 1, "pow": 2}


class ExprError(ValueError):
    pass


class ExprSyntaxError(ExprError):
    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} at offset {offset}")
        self.offset = offset


class ExprDomainError(ExprError):
    def __init__(self, message: str, subexpr: "Node"):
        super().__init__(f"{message} in '{to_text(subexpr)}'")
        self.subexpr = subexpr


# -- AST -----------------------------------------------------------------

@dataclass(frozen=True)
class Const:
    value: float


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class Param:
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
class Call:
    name: str
    args: tuple


Node = Union[Const, Var, Param, Neg, BinOp, Call]


# -- tokenizer -----------------------------------------------------------

_TOKEN = re.compile(
    r"\s*(?:(?P<num>(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)"
    r"|(?P<name>[A-Za-z_][A-Za-z_0-9]*)"
    r"|(?P<op>\*\*|[-+*/^(),]))"
)


def _tokenize(text: str):
    pos = 0
    tokens = []
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if m is None or m.end() == pos:
            start = pos + (len(text[pos:]) - len(text[pos:].lstrip()))
            raise ExprSyntaxError(f"unexpected character {text[start]!r}", start)
        kind = m.lastgroup
        start = m.start(kind)
        value = m.group(kind)
        if value == "**":
            value = "^"
        tokens.append((kind, value, start))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str, variable: str):
        self.text = text
        self.variable = variable
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect(self, value):
        kind, v, off = self.take()
        if v != value or kind == "end":
            found = "end of input" if kind == "end" else repr(v)
            raise ExprSyntaxError(f"expected {value!r}, found {found}", off)

    def parse(self) -> Node:
        node = self.expr()
        kind, v, off = self.peek()
        if kind != "end":
            raise ExprSyntaxError(f"unexpected {v!r}", off)
        return node

    def expr(self) -> Node:
        node = self.term()
        while self.peek()[1] in ("+", "-") and self.peek()[0] == "op":
            op = self.take()[1]
            node = BinOp(op, node, self.term())
        return node

    def term(self) -> Node:
        node = self.unary()
        while self.peek()[1] in ("*", "/") and self.peek()[0] == "op":
            op = self.take()[1]
            node = BinOp(op, node, self.unary())
        return node

    def unary(self) -> Node:
        kind, v, _ = self.peek()
        if kind == "op" and v == "-":
            self.take()
            return Neg(self.unary())
        if kind == "op" and v == "+":
            self.take()
            return self.unary()
        return self.power()

    def power(self) -> Node:
        base = self.atom()
        if self.peek()[0] == "op" and self.peek()[1] == "^":
            self.take()
            return BinOp("^", base, self.unary())
        return base

    def atom(self) -> Node:
        kind, v, off = self.take()
        if kind == "num":
            return Const(float(v))
        if kind == "name":
            if self.peek()[1] == "(" and self.peek()[0] == "op":
                if v not in FUNCTIONS:
                    raise ExprSyntaxError(f"unknown function {v!r}", off)
                self.take()
                args = [self.expr()]
                while self.peek()[1] == ",":
                    self.take()
                    args.append(self.expr())
                self.expect(")")
                if len(args) != FUNCTIONS[v]:
                    raise ExprSyntaxError(f"{v} takes {FUNCTIONS[v]} argument(s), got {len(args)}", off)
                return Call(v, tuple(args))
            if v in FUNCTIONS:
                raise ExprSyntaxError(f"function {v!r} used without arguments", off)
            return Var(v) if v == self.variable else Param(v)
        if kind == "op" and v == "(":
            node = self.expr()
            self.expect(")")
            return node
        found = "end of input" if kind == "end" else repr(v)
        raise ExprSyntaxError(f"unexpected {found}", off)


def _walk(node: Node) -> Iterable[Node]:
    yield node
    if isinstance(node, Neg):
        yield from _walk(node.operand)
    elif isinstance(node, BinOp):
        yield from _walk(node.left)
        yield from _walk(node.right)
    elif isinstance(node, Call):
        for arg in node.args:
            yield from _walk(arg)


def parameters(node: Node) -> frozenset:
    return frozenset(n.name for n in _walk(node) if isinstance(n, Param))


def parse(text: str, variable: str, params: Iterable[str] | None = None) -> Node:
    """Parse ``text`` with ``variable`` as the free variable.

    Every other identifier becomes a named parameter. When ``params`` is
    given, an identifier outside ``params`` is a second free variable and
    is rejected.
    """
    if not text or not text.strip():
        raise ExprSyntaxError("empty expression", 0)
    node = _Parser(text, variable).parse()
    if params is not None:
        extra = sorted(parameters(node) - set(params))
        if extra:
            raise ExprError(
                f"multiple free variables: {variable!r} and {', '.join(map(repr, extra))}"
            )
    return node


# -- printing ------------------------------------------------------------

def to_text(node: Node) -> str:
    """Fully parenthesised text that parses back to the same tree."""
    if isinstance(node, Const):
        return repr(float(node.value))
    if isinstance(node, (Var, Param)):
        return node.name
    if isinstance(node, Neg):
        return f"(-{to_text(node.operand)})"
    if isinstance(node, BinOp):
        return f"({to_text(node.left)} {node.op} {to_text(node.right)})"
    return f"{node.name}({', '.join(to_text(a) for a in node.args)})"


# -- dual numbers --------------------------------------------------------

class Dual:
    """Value and first derivative carried through arithmetic."""

    __slots__ = ("value", "deriv")

    def __init__(self, value: float, deriv: float = 0.0):
        self.value = float(value)
        self.deriv = float(deriv)

    def __repr__(self):
        return f"Dual({self.value!r}, {self.deriv!r})"

    @staticmethod
    def lift(other) -> "Dual":
        return other if isinstance(other, Dual) else Dual(other, 0.0)

    def __add__(self, other):
        o = Dual.lift(other)
        return Dual(self.value + o.value, self.deriv + o.deriv)

    __radd__ = __add__

    def __sub__(self, other):
        o = Dual.lift(other)
        return Dual(self.value - o.value, self.deriv - o.deriv)

    def __rsub__(self, other):
        return Dual.lift(other) - self

    def __mul__(self, other):
        o = Dual.lift(other)
        return Dual(self.value * o.value, self.value * o.deriv + self.deriv * o.value)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = Dual.lift(other)
        if o.value == 0.0:
            raise ZeroDivisionError("division by zero")
        return Dual(self.value / o.value, (self.deriv * o.value - self.value * o.deriv) / (o.value * o.value))

    def __rtruediv__(self, other):
        return Dual.lift(other) / self

    def __neg__(self):
        return Dual(-self.value, -self.deriv)

    def __pow__(self, other):
        o = Dual.lift(other)
        a, b = self.value, o.value
        if o.deriv == 0.0 and b.is_integer():
            if a == 0.0 and b < 0:
                raise ZeroDivisionError("zero to a negative power")
            n = int(b)
            if n == 0:
                return Dual(1.0, 0.0)
            return Dual(a ** n, n * a ** (n - 1) * self.deriv)
        if a < 0.0:
            raise ValueError("negative base with non-integer exponent")
        if a == 0.0:
            if b <= 0.0 or o.deriv != 0.0:
                raise ValueError("zero base with non-positive or variable exponent")
            slope = b * a ** (b - 1.0) * self.deriv if b >= 1.0 else (0.0 if self.deriv == 0.0 else math.inf)
            return Dual(0.0, slope)
        val = a ** b
        return Dual(val, val * (o.deriv * math.log(a) + b * self.deriv / a))

    def exp(self):
        v = math.exp(self.value)
        return Dual(v, v * self.deriv)

    def log(self):
        if self.value <= 0.0:
            raise ValueError("log of non-positive value")
        return Dual(math.log(self.value), self.deriv / self.value)

    def sqrt(self):
        if self.value < 0.0:
            raise ValueError("sqrt of negative value")
        r = math.sqrt(self.value)
        if r == 0.0:
            return Dual(0.0, 0.0 if self.deriv == 0.0 else math.inf)
        return Dual(r, 0.5 * self.deriv / r)

    def __abs__(self):
        # abs'(0) is taken as 0
        s = (self.value > 0) - (self.value < 0)
        return Dual(abs(self.value), s * self.deriv)

    def sin(self):
        return Dual(math.sin(self.value), math.cos(self.value) * self.deriv)

    def cos(self):
        return Dual(math.cos(self.value), -math.sin(self.value) * self.deriv)


_UNARY = {
    "exp": Dual.exp,
    "log": Dual.log,
    "sqrt": Dual.sqrt,
    "abs": Dual.__abs__,
    "sin": Dual.sin,
    "cos": Dual.cos,
}


def _eval(node: Node, at: Dual, params: Mapping[str, float]) -> Dual:
    if isinstance(node, Const):
        return Dual(node.value)
    if isinstance(node, Var):
        return at
    if isinstance(node, Param):
        try:
            return Dual(params[node.name])
        except KeyError:
            raise ExprError(f"parameter {node.name!r} is not bound") from None
    if isinstance(node, Neg):
        return -_eval(node.operand, at, params)
    if isinstance(node, BinOp):
        left = _eval(node.left, at, params)
        right = _eval(node.right, at, params)
        try:
            if node.op == "+":
                return left + right
            if node.op == "-":
                return left - right
            if node.op == "*":
                return left * right
            if node.op == "/":
                return left / right
            return left ** right
        except (ValueError, ZeroDivisionError, OverflowError) as exc:
            raise ExprDomainError(str(exc), node) from None
    args = [_eval(a, at, params) for a in node.args]
    try:
        if node.name == "pow":
            return args[0] ** args[1]
        return _UNARY[node.name](args[0])
    except (ValueError, ZeroDivisionError, OverflowError) as exc:
        raise ExprDomainError(str(exc), node) from None


def eval_with_derivative(expr: Node, at: float, params: Mapping[str, float] | None = None) -> tuple[float, float]:
    """Return ``(f(at), f'(at))``."""
    d = _eval(expr, Dual(at, 1.0), params or {})
    return d.value, d.deriv


class Expression:
    """A parsed expression with its parameter values bound."""

    def __init__(self, text: str, variable: str, params: Mapping[str, float] | None = None):
        self.text = text
        self.variable = variable
        self.params = dict(params or {})
        self.node = parse(text, variable)
        missing = sorted(parameters(self.node) - set(self.params))
        if missing:
            raise ExprError(f"unbound parameter(s) {', '.join(missing)} in {text!r}")

    def __call__(self, at: float) -> tuple[float, float]:
        return eval_with_derivative(self.node, at, self.params)

    def __repr__(self):
        return f"Expression({self.text!r}, {self.variable!r})"
