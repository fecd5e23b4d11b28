"""Parsing and evaluation of scalar nonlinearities g(t, x).

Problems carry their nonlinearity as expression text, so problem files are
pure data. The grammar is a small arithmetic language over the two free
variables ``t`` and ``x``:

* binary operators ``+ - * / ^`` with the usual precedence; ``^`` binds
  tightest and is right-associative, unary minus sits between ``^`` and
  ``* /``;
* calls ``sin cos tan tanh atan exp ln abs sign`` (unary), ``min max``
  (binary), plus the built-in test nonlinearity ``logfade`` (see below);
* the constant ``pi``; numbers in the usual decimal/scientific forms.

ASTs are immutable after parsing and evaluation is pure, so parsed
expressions can be shared freely between threads.

``logfade(x)`` is a ready-made slowly-fading nonlinearity: k(x)*x +
0.1*|x|^0.5 + 0.1 where k is -1/ln(-x) for x <= -e, x/e in between, and
1/ln(x) for x >= e. The factor k tends to zero at +-infinity, which makes
the whole expression grow slower than any linear function while not being
dominated by any sublinear power bound.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

_FUNCTIONS = {
    "sin": 1,
    "cos": 1,
    "tan": 1,
    "tanh": 1,
    "atan": 1,
    "exp": 1,
    "ln": 1,
    "abs": 1,
    "sign": 1,
    "logfade": 1,
    "min": 2,
    "max": 2,
}

_VARIABLES = ("t", "x")

LOGFADE_M1 = 0.1
LOGFADE_M2 = 0.1
LOGFADE_BETA = 0.5


class ExprError(ValueError):
    """Problem with the expression text; carries the byte offset."""

    def __init__(self, message: str, pos: int):
        super().__init__(f"{message} (at offset {pos})")
        self.pos = pos


class DomainError(ArithmeticError):
    """Evaluation hit a point outside a function's domain (ln<=0, x/0, ...)."""


# -- AST ---------------------------------------------------------------


@dataclass(frozen=True)
class Num:
    value: float


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class Neg:
    arg: "Node"


@dataclass(frozen=True)
class Bin:
    op: str
    left: "Node"
    right: "Node"


@dataclass(frozen=True)
class Call:
    fn: str
    args: tuple


Node = Num | Var | Neg | Bin | Call


# -- tokenizer / parser ------------------------------------------------


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch.isdigit() or (ch == "." and i + 1 < n and text[i + 1].isdigit()):
            j = i
            while j < n and (text[j].isdigit() or text[j] == "."):
                j += 1
            if j < n and text[j] in "eE":
                k = j + 1
                if k < n and text[k] in "+-":
                    k += 1
                if k < n and text[k].isdigit():
                    j = k
                    while j < n and text[j].isdigit():
                        j += 1
            tokens.append(("num", text[i:j], i))
            i = j
            continue
        if ch.isalpha() or ch == "_":
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            tokens.append(("name", text[i:j], i))
            i = j
            continue
        if ch in "+-*/^(),":
            tokens.append(("op", ch, i))
            i += 1
            continue
        raise ExprError(f"unexpected character {ch!r}", i)
    tokens.append(("end", "", n))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = _tokenize(text)
        self.pos = 0

    def peek(self):
        return self.tokens[self.pos]

    def next(self):
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect(self, value: str):
        kind, val, at = self.next()
        if kind != "op" or val != value:
            raise ExprError(f"expected {value!r}, found {val!r}" if val else f"expected {value!r}", at)

    def parse(self) -> Node:
        node = self.sum()
        kind, val, at = self.peek()
        if kind != "end":
            raise ExprError(f"unexpected trailing {val!r}", at)
        return node

    def sum(self) -> Node:
        node = self.term()
        while True:
            kind, val, _ = self.peek()
            if kind == "op" and val in "+-":
                self.next()
                node = Bin(val, node, self.term())
            else:
                return node

    def term(self) -> Node:
        node = self.unary()
        while True:
            kind, val, _ = self.peek()
            if kind == "op" and val in "*/":
                self.next()
                node = Bin(val, node, self.unary())
            else:
                return node

    def unary(self) -> Node:
        kind, val, _ = self.peek()
        if kind == "op" and val == "-":
            self.next()
            return Neg(self.unary())
        return self.power()

    def power(self) -> Node:
        base = self.atom()
        kind, val, _ = self.peek()
        if kind == "op" and val == "^":
            self.next()
            # right-associative; the exponent may carry its own unary minus
            return Bin("^", base, self.unary())
        return base

    def atom(self) -> Node:
        kind, val, at = self.next()
        if kind == "num":
            try:
                return Num(float(val))
            except ValueError:
                raise ExprError(f"bad number literal {val!r}", at) from None
        if kind == "name":
            if val == "pi":
                return Num(math.pi)
            if val in _VARIABLES:
                return Var(val)
            if val in _FUNCTIONS:
                self.expect("(")
                args = [self.sum()]
                while True:
                    k2, v2, a2 = self.next()
                    if k2 == "op" and v2 == ",":
                        args.append(self.sum())
                    elif k2 == "op" and v2 == ")":
                        break
                    else:
                        raise ExprError("expected ',' or ')' in call", a2)
                if len(args) != _FUNCTIONS[val]:
                    raise ExprError(
                        f"{val} takes {_FUNCTIONS[val]} argument(s), got {len(args)}", at
                    )
                return Call(val, tuple(args))
            raise ExprError(f"unknown identifier {val!r}", at)
        if kind == "op" and val == "(":
            node = self.sum()
            self.expect(")")
            return node
        raise ExprError(f"unexpected {val!r}" if val else "unexpected end of input", at)


def parse(text: str) -> Node:
    """Parse expression text into an immutable AST.

    Raises ExprError (with byte offset) on syntax problems, unknown
    identifiers, or calls with the wrong number of arguments.
    """
    return _Parser(text).parse()


# -- printing ----------------------------------------------------------

_PREC = {"+": 1, "-": 1, "*": 2, "/": 2, "neg": 3, "^": 4}


def to_text(node: Node) -> str:
    """Render an AST back to parseable text (parse(to_text(a)) == a)."""
    return _render(node, 0)


def _render(node: Node, ctx: int) -> str:
    if isinstance(node, Num):
        if node.value == math.pi:
            return "pi"
        s = repr(node.value)
        return f"({s})" if s.startswith("-") and ctx >= 3 else s
    if isinstance(node, Var):
        return node.name
    if isinstance(node, Neg):
        inner = f"-{_render(node.arg, _PREC['neg'])}"
        return f"({inner})" if ctx > _PREC["neg"] else inner
    if isinstance(node, Call):
        return f"{node.fn}({', '.join(_render(a, 0) for a in node.args)})"
    p = _PREC[node.op]
    # left operand needs parens at equal precedence only for '^' (right-assoc)
    left = _render(node.left, p + 1 if node.op == "^" else p)
    right = _render(node.right, p if node.op == "^" else p + 1)
    out = f"{left} {node.op} {right}" if node.op in "+-" else f"{left}{node.op}{right}"
    return f"({out})" if p < ctx else out


# -- evaluation --------------------------------------------------------


def _logfade_k(x):
    x = np.asarray(x, dtype=float)
    out = x / math.e
    hi = x >= math.e
    out = np.where(hi, 1.0 / np.log(np.where(hi, x, math.e)), out)
    lo = x <= -math.e
    out = np.where(lo, -1.0 / np.log(np.where(lo, -x, math.e)), out)
    return out


def _logfade(x):
    x = np.asarray(x, dtype=float)
    return _logfade_k(x) * x + LOGFADE_M1 * np.abs(x) ** LOGFADE_BETA + LOGFADE_M2


def _ev(node: Node, t, x):
    if isinstance(node, Num):
        return node.value
    if isinstance(node, Var):
        return t if node.name == "t" else x
    if isinstance(node, Neg):
        return -_ev(node.arg, t, x)
    if isinstance(node, Bin):
        a = _ev(node.left, t, x)
        if node.op == "+":
            return a + _ev(node.right, t, x)
        if node.op == "-":
            return a - _ev(node.right, t, x)
        if node.op == "*":
            return a * _ev(node.right, t, x)
        if node.op == "/":
            b = _ev(node.right, t, x)
            if np.any(np.asarray(b) == 0.0):
                raise DomainError("division by zero")
            return a / b
        # '^'
        b = _ev(node.right, t, x)
        a_arr, b_arr = np.asarray(a, dtype=float), np.asarray(b, dtype=float)
        if np.any((a_arr < 0.0) & (b_arr != np.floor(b_arr))):
            raise DomainError("negative base with non-integer exponent")
        if np.any((a_arr == 0.0) & (b_arr < 0.0)):
            raise DomainError("zero raised to a negative power")
        # numpy pow overflows to inf (caught by the final finiteness check)
        # where the scalar builtin would raise OverflowError
        return np.power(a_arr, b_arr)
    # calls
    a = _ev(node.args[0], t, x)
    fn = node.fn
    if fn == "ln":
        if np.any(np.asarray(a) <= 0.0):
            raise DomainError("ln of a non-positive value")
        return np.log(a)
    if fn == "abs":
        return np.abs(a)
    if fn == "sign":
        return np.sign(a)
    if fn == "logfade":
        return _logfade(a)
    if fn == "min":
        return np.minimum(a, _ev(node.args[1], t, x))
    if fn == "max":
        return np.maximum(a, _ev(node.args[1], t, x))
    return getattr(np, fn)(a)


def evaluate(node: Node, t, x) -> float | np.ndarray:
    """Evaluate an AST at time index t and state x.

    Both arguments may be scalars or broadcastable numpy arrays; the result
    matches the broadcast shape (a plain float for scalar inputs). Domain
    violations and non-finite results raise DomainError rather than leaking
    NaN/inf into callers.
    """
    with np.errstate(all="ignore"):
        out = _ev(node, np.asarray(t, dtype=float) if np.ndim(t) else float(t),
                  np.asarray(x, dtype=float) if np.ndim(x) else float(x))
    arr = np.asarray(out, dtype=float)
    if not np.all(np.isfinite(arr)):
        raise DomainError("evaluation produced a non-finite value")
    shape = np.broadcast_shapes(np.shape(t), np.shape(x))
    if shape == ():
        return float(arr)
    # constant subtrees evaluate to scalars; hand callers the full grid shape
    return np.ascontiguousarray(np.broadcast_to(arr, shape), dtype=float)
