"""Polynomial expressions: ``2*x^2*y - 3*y*d(x) + 1/2``.

A tiny recursive-descent parser producing an immutable tree, a renderer
that round-trips, and ``evaluate`` which folds the tree through any backend
providing ``const / var / add / mul / neg / power / call``.
"""

import re
from dataclasses import dataclass
from fractions import Fraction


class ExprError(ValueError):
    def __init__(self, message, pos=None):
        super().__init__(message)
        self.pos = pos


@dataclass(frozen=True)
class Num:
    value: Fraction


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class Neg:
    arg: object


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
class Div:
    left: object
    right: object


@dataclass(frozen=True)
class Pow:
    base: object
    exp: int


@dataclass(frozen=True)
class Call:
    name: str
    args: tuple


_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\S))")


def tokenize(text):
    out = []
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            break
        num, name, op = m.groups()
        start = m.start(m.lastindex)
        if num is not None:
            out.append(("num", num, start))
        elif name is not None:
            out.append(("name", name, start))
        else:
            if op not in "+-*/^(),":
                raise ExprError(f"unexpected character {op!r}", start)
            out.append(("op", op, start))
        pos = m.end()
    out.append(("end", "", len(text)))
    return out


class _Parser:
    def __init__(self, text):
        self.toks = tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def take(self, kind=None, value=None):
        tok = self.toks[self.i]
        if (kind and tok[0] != kind) or (value and tok[1] != value):
            want = value or kind
            got = tok[1] or "end of input"
            raise ExprError(f"expected {want!r}, got {got!r}", tok[2])
        self.i += 1
        return tok

    def at(self, value):
        tok = self.peek()
        return tok[0] == "op" and tok[1] == value

    def expr(self):
        node = self.term()
        while self.at("+") or self.at("-"):
            op = self.take()[1]
            rhs = self.term()
            node = Add(node, rhs) if op == "+" else Sub(node, rhs)
        return node

    def term(self):
        node = self.unary()
        while self.at("*") or self.at("/"):
            op = self.take()[1]
            rhs = self.unary()
            node = Mul(node, rhs) if op == "*" else Div(node, rhs)
        return node

    def unary(self):
        if self.at("-"):
            self.take()
            return Neg(self.unary())
        if self.at("+"):
            self.take()
            return self.unary()
        return self.power()

    def power(self):
        base = self.atom()
        if self.at("^"):
            self.take()
            tok = self.take("num")
            return Pow(base, int(tok[1]))
        return base

    def atom(self):
        tok = self.peek()
        if tok[0] == "num":
            self.take()
            return Num(Fraction(int(tok[1])))
        if tok[0] == "name":
            self.take()
            if self.at("("):
                self.take()
                args = [self.expr()]
                while self.at(","):
                    self.take()
                    args.append(self.expr())
                self.take("op", ")")
                return Call(tok[1], tuple(args))
            return Var(tok[1])
        if self.at("("):
            self.take()
            node = self.expr()
            self.take("op", ")")
            return node
        raise ExprError(f"unexpected {tok[1] or 'end of input'!r}", tok[2])


def parse(text):
    p = _Parser(text)
    node = p.expr()
    tok = p.peek()
    if tok[0] != "end":
        raise ExprError(f"unexpected {tok[1]!r}", tok[2])
    return node


_PREC = {Add: 1, Sub: 1, Mul: 2, Div: 2, Neg: 3, Pow: 4}


def render(node):
    """Canonical text for a tree; ``parse(render(t)) == t``."""
    if isinstance(node, Num):
        v = node.value
        return str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"
    if isinstance(node, Var):
        return node.name
    if isinstance(node, Call):
        return f"{node.name}({', '.join(render(a) for a in node.args)})"
    if isinstance(node, Pow):
        return f"{_wrap(node.base, 5)}^{node.exp}"
    if isinstance(node, Neg):
        return f"-{_wrap(node.arg, 4)}"
    sym = {Add: "+", Sub: "-", Mul: "*", Div: "/"}[type(node)]
    prec = _PREC[type(node)]
    spaced = f" {sym} " if prec == 1 else sym
    return f"{_wrap(node.left, prec)}{spaced}{_wrap(node.right, prec + 1)}"


def _wrap(node, prec):
    text = render(node)
    if isinstance(node, Num) and node.value.denominator != 1 and prec > 2:
        return f"({text})"
    if type(node) in _PREC and _PREC[type(node)] < prec:
        return f"({text})"
    return text


def evaluate(node, backend):
    if isinstance(node, Num):
        return backend.const(node.value)
    if isinstance(node, Var):
        return backend.var(node.name)
    if isinstance(node, Neg):
        return backend.neg(evaluate(node.arg, backend))
    if isinstance(node, Add):
        return backend.add(evaluate(node.left, backend), evaluate(node.right, backend))
    if isinstance(node, Sub):
        return backend.add(evaluate(node.left, backend),
                           backend.neg(evaluate(node.right, backend)))
    if isinstance(node, Mul):
        return backend.mul(evaluate(node.left, backend), evaluate(node.right, backend))
    if isinstance(node, Div):
        denom = _constant(node.right)
        if denom is None:
            raise ExprError("can only divide by a number")
        return backend.mul(evaluate(node.left, backend), backend.const(1 / denom))
    if isinstance(node, Pow):
        return backend.power(evaluate(node.base, backend), node.exp)
    if isinstance(node, Call):
        return backend.call(node.name, [evaluate(a, backend) for a in node.args])
    raise ExprError(f"bad node {node!r}")


def _constant(node):
    if isinstance(node, Num):
        return node.value
    if isinstance(node, Neg):
        c = _constant(node.arg)
        return None if c is None else -c
    return None


class PolyBackend:
    """Evaluate to polynomials: dict exponent-tuple -> Fraction."""

    def __init__(self, var_names):
        self.vars = list(var_names)
        self.n = len(self.vars)

    def const(self, c):
        return {(0,) * self.n: Fraction(c)} if c else {}

    def var(self, name):
        if name not in self.vars:
            raise ExprError(f"unknown variable {name!r}")
        e = [0] * self.n
        e[self.vars.index(name)] = 1
        return {tuple(e): Fraction(1)}

    def add(self, a, b):
        out = dict(a)
        for k, v in b.items():
            s = out.get(k, 0) + v
            if s:
                out[k] = s
            else:
                out.pop(k, None)
        return out

    def neg(self, a):
        return {k: -v for k, v in a.items()}

    def mul(self, a, b):
        out = {}
        for k1, v1 in a.items():
            for k2, v2 in b.items():
                k = tuple(x + y for x, y in zip(k1, k2))
                s = out.get(k, 0) + v1 * v2
                if s:
                    out[k] = s
                else:
                    out.pop(k, None)
        return out

    def power(self, a, n):
        out = self.const(1)
        for _ in range(n):
            out = self.mul(out, a)
        return out

    def call(self, name, args):
        raise ExprError(f"unknown function {name!r}")


def parse_poly(text, var_names):
    return evaluate(parse(text), PolyBackend(var_names))


def monomial_label(var_names, exps):
    parts = []
    for v, e in zip(var_names, exps):
        if e == 1:
            parts.append(v)
        elif e:
            parts.append(f"{v}^{e}")
    return "*".join(parts) if parts else "1"
