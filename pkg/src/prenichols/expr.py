"""Expression language for elements of T(V).

Grammar (whitespace is ignored)::

    expr   := term (("+" | "-") term)*
    term   := unary (("*" | "/") unary)*
    unary  := "-" unary | power
    power  := atom ("^" integer)?
    atom   := "x" digits            iterated word, x123 = [x1,[x2,x3]_c]_c
            | "[" expr "," expr "]" braided commutator
            | "(" expr ")"
            | integer | "z(" n "," k ")" | "q(" i "," j ")" | "qt(" i "," j ")"

Each digit after ``x`` names one generator, so ranks up to 9 are supported.
``z(n,k)`` is the root of unity exp(2 pi i k / n); ``q(i,j)`` and ``qt(i,j)``
are the braiding entry q_ij and its symmetrization.  Division is only allowed
by scalars.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .scalar import Cyclotomic

__all__ = ["ExprError", "ExprSyntaxError", "UnknownGenerator", "parse", "evaluate_free", "evaluate", "FreeBackend", "Node"]


class ExprError(ValueError):
    pass


class ExprSyntaxError(ExprError):
    def __init__(self, message: str, text: str, pos: int):
        super().__init__(f"{message} at position {pos}: {text[:pos]}<<here>>{text[pos:]}")
        self.pos = pos


class UnknownGenerator(ExprError):
    pass


@dataclass(frozen=True)
class Node:
    op: str
    args: tuple

    def __str__(self) -> str:
        return to_text(self)


Value = Union[int, Fraction]

_TOKEN = re.compile(r"\s*(?:(qt|q|z)\(|(x\d+)|(\d+)|(.))")


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    text_len = len(text)
    while pos < text_len:
        m = _TOKEN.match(text, pos)
        if m is None:
            break
        start = m.start(m.lastindex)
        if m.group(1):
            tokens.append(("func", m.group(1), start))
        elif m.group(2):
            tokens.append(("gen", m.group(2)[1:], start))
        elif m.group(3):
            tokens.append(("int", m.group(3), start))
        else:
            ch = m.group(4)
            if ch not in "+-*/^[],()":
                raise ExprSyntaxError(f"unexpected character {ch!r}", text, start)
            tokens.append(("op", ch, start))
        pos = m.end()
        # trailing whitespace only
        if text[pos:].strip() == "":
            break
    tokens.append(("end", "", text_len))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self) -> tuple[str, str, int]:
        return self.tokens[self.i]

    def take(self) -> tuple[str, str, int]:
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect(self, value: str) -> None:
        kind, val, pos = self.take()
        if kind != "op" or val != value:
            shown = val or "end of input"
            raise ExprSyntaxError(f"expected {value!r}, found {shown!r}", self.text, pos)

    def error(self, msg: str) -> ExprSyntaxError:
        return ExprSyntaxError(msg, self.text, self.peek()[2])

    def parse(self) -> Node:
        if self.peek()[0] == "end":
            raise self.error("empty expression")
        node = self.expr()
        if self.peek()[0] != "end":
            raise self.error(f"unexpected {self.peek()[1]!r}")
        return node

    def expr(self) -> Node:
        node = self.term()
        while self.peek()[:2] in (("op", "+"), ("op", "-")):
            op = self.take()[1]
            rhs = self.term()
            node = Node("add", (node, rhs)) if op == "+" else Node("add", (node, Node("neg", (rhs,))))
        return node

    def term(self) -> Node:
        node = self.unary()
        while self.peek()[:2] in (("op", "*"), ("op", "/")):
            op = self.take()[1]
            rhs = self.unary()
            node = Node("mul" if op == "*" else "div", (node, rhs))
        return node

    def unary(self) -> Node:
        if self.peek()[:2] == ("op", "-"):
            self.take()
            return Node("neg", (self.unary(),))
        return self.power()

    def power(self) -> Node:
        node = self.atom()
        if self.peek()[:2] == ("op", "^"):
            self.take()
            neg = False
            if self.peek()[:2] == ("op", "-"):
                self.take()
                neg = True
            kind, val, _ = self.peek()
            if kind != "int":
                raise self.error("expected an integer exponent")
            self.take()
            node = Node("pow", (node, -int(val) if neg else int(val)))
        return node

    def _int(self) -> int:
        neg = False
        if self.peek()[:2] == ("op", "-"):
            self.take()
            neg = True
        kind, val, _ = self.peek()
        if kind != "int":
            raise self.error("expected an integer")
        self.take()
        return -int(val) if neg else int(val)

    def atom(self) -> Node:
        kind, val, pos = self.peek()
        if kind == "gen":
            self.take()
            idx = tuple(int(ch) - 1 for ch in val)
            if any(i < 0 for i in idx):
                raise UnknownGenerator(f"generator index 0 in x{val} at position {pos}")
            return Node("gen", idx)
        if kind == "int":
            self.take()
            return Node("num", (Fraction(int(val)),))
        if kind == "func":
            self.take()
            a = self._int()
            self.expect(",")
            b = self._int()
            self.expect(")")
            if val == "z":
                if a < 1:
                    raise ExprSyntaxError("root order must be positive", self.text, pos)
                return Node("zeta", (a, b))
            if a < 1 or b < 1:
                raise UnknownGenerator(f"braiding index out of range in {val}({a},{b}) at position {pos}")
            return Node(val, (a - 1, b - 1))
        if kind == "op" and val == "[":
            self.take()
            left = self.expr()
            self.expect(",")
            right = self.expr()
            self.expect("]")
            return Node("bracket", (left, right))
        if kind == "op" and val == "(":
            self.take()
            inner = self.expr()
            self.expect(")")
            return inner
        shown = val or "end of input"
        raise ExprSyntaxError(f"unexpected {shown!r}", self.text, pos)


def parse(text: str) -> Node:
    """Parse an expression into an AST; raises ExprSyntaxError with a position."""
    return _Parser(text).parse()


def max_generator(node: Node) -> int:
    """Largest 0-based generator or braiding index referenced, or -1."""
    if node.op == "gen":
        return max(node.args)
    if node.op in ("q", "qt"):
        return max(node.args)
    best = -1
    for a in node.args:
        if isinstance(a, Node):
            best = max(best, max_generator(a))
    return best


def to_text(node: Node) -> str:
    op, args = node.op, node.args
    if op == "gen":
        return "x" + "".join(str(i + 1) for i in args)
    if op == "num":
        return str(args[0])
    if op == "zeta":
        return f"z({args[0]},{args[1]})"
    if op in ("q", "qt"):
        return f"{op}({args[0] + 1},{args[1] + 1})"
    if op == "bracket":
        return f"[{to_text(args[0])},{to_text(args[1])}]"
    if op == "add":
        return f"({to_text(args[0])} + {to_text(args[1])})"
    if op == "neg":
        return f"-({to_text(args[0])})"
    if op == "mul":
        return f"({to_text(args[0])})*({to_text(args[1])})"
    if op == "div":
        return f"({to_text(args[0])})/({to_text(args[1])})"
    if op == "pow":
        return f"({to_text(args[0])})^{args[1]}"
    raise ValueError(op)  # pragma: no cover


class FreeBackend:
    """Evaluation of expressions in the free algebra itself."""

    def __init__(self, algebra):
        self.algebra = algebra
        self.rank = algebra.rank
        self.braiding = algebra.braiding

    def scalar(self, c):
        from .freealg import FreeElement

        return FreeElement.scalar(self.rank, c)

    def gen(self, indices):
        return self.algebra.iterated(indices)

    def mul(self, a, b):
        return a * b

    def bracket(self, a, b):
        return self.algebra.bracket(a, b)


def evaluate(node: Node, backend):
    """Evaluate an AST with a backend providing scalar, gen, mul and bracket.

    Backend elements must support +, unary minus, ``scale`` and expose their
    coefficients as a ``terms`` mapping keyed by words.
    """
    rank = backend.rank
    if max_generator(node) >= rank:
        raise UnknownGenerator(f"expression uses an index beyond rank {rank}: {to_text(node)}")

    def scalar_of(el, what: str) -> Cyclotomic:
        if any(w for w in el.terms):
            raise ExprError(f"{what} must be a scalar")
        return el.terms.get((), Cyclotomic.zero())

    def ev(n: Node):
        op, args = n.op, n.args
        if op == "gen":
            return backend.gen(args)
        if op == "num":
            return backend.scalar(args[0])
        if op == "zeta":
            return backend.scalar(Cyclotomic.root(*args))
        if op == "q":
            return backend.scalar(backend.braiding.entry(*args))
        if op == "qt":
            return backend.scalar(backend.braiding.qt(*args))
        if op == "bracket":
            return backend.bracket(ev(args[0]), ev(args[1]))
        if op == "add":
            return ev(args[0]) + ev(args[1])
        if op == "neg":
            return -ev(args[0])
        if op == "mul":
            return backend.mul(ev(args[0]), ev(args[1]))
        if op == "div":
            den = scalar_of(ev(args[1]), "divisor")
            if den.is_zero():
                raise ExprError("division by zero")
            return ev(args[0]).scale(den.inverse())
        if op == "pow":
            base, e = ev(args[0]), args[1]
            if e < 0:
                c = scalar_of(base, "base of a negative power")
                if c.is_zero():
                    raise ExprError("division by zero")
                return backend.scalar(c**e)
            out = backend.scalar(1)
            for _ in range(e):
                out = backend.mul(out, base)
            return out
        raise ValueError(op)  # pragma: no cover

    return ev(node)


def evaluate_free(node: Node, algebra):
    """Evaluate an AST in the free algebra of ``algebra`` (a FreeAlgebra)."""
    return evaluate(node, FreeBackend(algebra))
