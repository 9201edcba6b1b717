"""Free-vector-lattice expressions: AST, text grammar, printer, evaluator.

Grammar (whitespace insensitive)::

    expr   := join
    join   := meet { "\\/" meet }
    meet   := sum { "/\\" sum }
    sum    := term { ("+" | "-") term }
    term   := [ rational "*" ] atom
    atom   := vector | "(" expr ")" | "-" atom
    vector := "[" rational { "," rational } "]"

Label expressions (``a \\/ (b /\\ c)``) use bare identifiers in place of
vectors; see :func:`parse_set_expr`.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Union

from .errors import DimensionMismatch, ExprSyntaxError
from .vectors import Vector, dot, format_vector


@dataclass(frozen=True)
class Gen:
    vector: Vector


@dataclass(frozen=True)
class Label:
    """Generator named by a set element rather than by coordinates."""
    name: str


@dataclass(frozen=True)
class Add:
    left: "LatticeExpr"
    right: "LatticeExpr"


@dataclass(frozen=True)
class Scale:
    factor: Fraction
    operand: "LatticeExpr"


@dataclass(frozen=True)
class Join:
    left: "LatticeExpr"
    right: "LatticeExpr"


@dataclass(frozen=True)
class Meet:
    left: "LatticeExpr"
    right: "LatticeExpr"


LatticeExpr = Union[Gen, Label, Add, Scale, Join, Meet]


def expr_dim(e: LatticeExpr) -> Optional[int]:
    """Common generator length, or None for an expression without vectors."""
    dims = {len(leaf.vector) for leaf in leaves(e) if isinstance(leaf, Gen)}
    if len(dims) > 1:
        raise DimensionMismatch(f"generators of mixed lengths {sorted(dims)}")
    return dims.pop() if dims else None


def leaves(e: LatticeExpr):
    stack = [e]
    while stack:
        node = stack.pop()
        if isinstance(node, (Gen, Label)):
            yield node
        elif isinstance(node, Scale):
            stack.append(node.operand)
        else:
            stack.append(node.right)
            stack.append(node.left)


def node_count(e: LatticeExpr) -> int:
    if isinstance(e, (Gen, Label)):
        return 1
    if isinstance(e, Scale):
        return 1 + node_count(e.operand)
    return 1 + node_count(e.left) + node_count(e.right)


# ---------------------------------------------------------------- lexing

_TOKEN_RE = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<join>\\/)
  | (?P<meet>/\\)
  | (?P<num>\d+)
  | (?P<ident>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<op>[-+*/,\[\]()])
    """,
    re.VERBOSE,
)


@dataclass(frozen=True)
class _Token:
    kind: str  # 'num', 'ident', or the literal operator text
    text: str
    pos: int


def _tokenize(text: str) -> List[_Token]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise ExprSyntaxError(f"unexpected character {text[pos]!r}", pos)
        kind = m.lastgroup
        if kind != "ws":
            value = m.group()
            tokens.append(_Token(value if kind in ("op", "join", "meet") else kind, value, pos))
        pos = m.end()
    tokens.append(_Token("eof", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str, dim: Optional[int], labels: bool):
        self.tokens = _tokenize(text)
        self.i = 0
        self.dim = dim
        self.labels = labels

    @property
    def peek(self) -> _Token:
        return self.tokens[self.i]

    def lookahead(self, k: int) -> _Token:
        return self.tokens[min(self.i + k, len(self.tokens) - 1)]

    def advance(self) -> _Token:
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect(self, kind: str) -> _Token:
        tok = self.peek
        if tok.kind != kind:
            self.fail([repr(kind)])
        return self.advance()

    def fail(self, expected):
        tok = self.peek
        found = "end of input" if tok.kind == "eof" else repr(tok.text)
        raise ExprSyntaxError(f"unexpected {found}", tok.pos, expected)

    def parse(self) -> LatticeExpr:
        e = self.join()
        if self.peek.kind != "eof":
            self.fail(["'\\/'", "'/\\'", "'+'", "'-'", "end of input"])
        return e

    def join(self):
        e = self.meet()
        while self.peek.kind == "\\/":
            self.advance()
            e = Join(e, self.meet())
        return e

    def meet(self):
        e = self.sum()
        while self.peek.kind == "/\\":
            self.advance()
            e = Meet(e, self.sum())
        return e

    def sum(self):
        e = self.term()
        while self.peek.kind in ("+", "-"):
            op = self.advance().kind
            rhs = self.term()
            e = Add(e, rhs if op == "+" else Scale(Fraction(-1), rhs))
        return e

    def _scalar_prefix_len(self) -> int:
        """Number of tokens in a ``rational "*"`` prefix at the cursor, or 0."""
        k = 0
        if self.lookahead(k).kind == "-":
            k += 1
        if self.lookahead(k).kind != "num":
            return 0
        k += 1
        if self.lookahead(k).kind == "/" and self.lookahead(k + 1).kind == "num":
            k += 2
        return k + 1 if self.lookahead(k).kind == "*" else 0

    def term(self):
        if self._scalar_prefix_len():
            factor = self.rational()
            self.expect("*")
            return Scale(factor, self.atom())
        if self.peek.kind == "num":
            # a bare number is only legal as a scalar prefix
            self.rational()
            self.fail(["'*'"])
        return self.atom()

    def atom(self):
        tok = self.peek
        if tok.kind == "[":
            if self.labels:
                self.fail(["identifier", "'('", "'-'"])
            return Gen(self.vector())
        if tok.kind == "ident":
            if not self.labels:
                self.fail(["'['", "'('", "'-'"])
            self.advance()
            return Label(tok.text)
        if tok.kind == "(":
            self.advance()
            e = self.join()
            self.expect(")")
            return e
        if tok.kind == "-":
            self.advance()
            return Scale(Fraction(-1), self.atom())
        self.fail(["identifier" if self.labels else "'['", "'('", "'-'"])

    def rational(self) -> Fraction:
        sign = 1
        if self.peek.kind == "-":
            self.advance()
            sign = -1
        num = int(self.expect("num").text)
        den = 1
        if self.peek.kind == "/":
            self.advance()
            tok = self.expect("num")
            den = int(tok.text)
            if den == 0:
                raise ExprSyntaxError("zero denominator", tok.pos)
        return sign * Fraction(num, den)

    def vector(self) -> Vector:
        start = self.expect("[")
        coords = [self.rational()]
        while self.peek.kind == ",":
            self.advance()
            coords.append(self.rational())
        self.expect("]")
        if self.dim is not None and len(coords) != self.dim:
            raise DimensionMismatch(
                f"vector at position {start.pos} has length {len(coords)}, expected {self.dim}")
        return tuple(coords)


def parse_expr(text: str, dim: Optional[int] = None) -> LatticeExpr:
    """Parse vector-generator expression text.

    With ``dim`` given every vector literal must have that length; without it
    the literals must merely agree with each other.
    """
    e = _Parser(text, dim, labels=False).parse()
    expr_dim(e)
    return e


def parse_set_expr(text: str) -> LatticeExpr:
    """Parse an expression whose generators are bare identifiers."""
    return _Parser(text, None, labels=True).parse()


def parse_vector(text: str, dim: Optional[int] = None) -> Vector:
    p = _Parser(text, dim, labels=False)
    v = p.vector()
    if p.peek.kind != "eof":
        p.fail(["end of input"])
    return v


def parse_vector_list(text: str) -> List[Vector]:
    """Parse ``[[1,0],[-1,1/2]]`` into a list of vectors of equal length."""
    p = _Parser(text, None, labels=False)
    p.expect("[")
    out = [p.vector()]
    while p.peek.kind == ",":
        p.advance()
        out.append(p.vector())
    p.expect("]")
    if p.peek.kind != "eof":
        p.fail(["end of input"])
    if len({len(v) for v in out}) > 1:
        raise DimensionMismatch("vectors of different lengths")
    return out


# ---------------------------------------------------------------- printing

_JOIN, _MEET, _SUM, _TERM, _ATOM = range(5)


def _level(e: LatticeExpr) -> int:
    if isinstance(e, Join):
        return _JOIN
    if isinstance(e, Meet):
        return _MEET
    if isinstance(e, Add):
        return _SUM
    if isinstance(e, Scale):
        return _TERM
    return _ATOM


def _wrap(e: LatticeExpr, need_paren: bool) -> str:
    s = format_expr(e)
    return f"({s})" if need_paren else s


def format_expr(e: LatticeExpr) -> str:
    """Print ``e`` so that :func:`parse_expr` gives back the same tree.

    Binary operators are left-associative, so a right operand at the same
    precedence level is parenthesized.
    """
    if isinstance(e, Gen):
        return format_vector(e.vector)
    if isinstance(e, Label):
        return e.name
    if isinstance(e, Scale):
        return f"{e.factor} * {_wrap(e.operand, _level(e.operand) != _ATOM)}"
    level = _level(e)
    op = {_JOIN: "\\/", _MEET: "/\\", _SUM: "+"}[level]
    left = _wrap(e.left, _level(e.left) < level)
    right = _wrap(e.right, _level(e.right) <= level)
    return f"{left} {op} {right}"


# ---------------------------------------------------------------- evaluation

def eval_expr(e: LatticeExpr, x: Vector) -> Fraction:
    """Evaluate ``e`` pointwise at ``x`` without normalizing.

    Generators pair with ``x`` by the dot product; join and meet are max
    and min.
    """
    if isinstance(e, Gen):
        if len(e.vector) != len(x):
            raise DimensionMismatch(
                f"point has length {len(x)}, generator has length {len(e.vector)}")
        return dot(e.vector, x)
    if isinstance(e, Scale):
        return e.factor * eval_expr(e.operand, x)
    if isinstance(e, Add):
        return eval_expr(e.left, x) + eval_expr(e.right, x)
    if isinstance(e, Join):
        return max(eval_expr(e.left, x), eval_expr(e.right, x))
    if isinstance(e, Meet):
        return min(eval_expr(e.left, x), eval_expr(e.right, x))
    if isinstance(e, Label):
        raise TypeError(f"label {e.name!r} has no coordinates; realize the set expression first")
    raise TypeError(f"not a lattice expression: {e!r}")


def absolute(e: LatticeExpr) -> LatticeExpr:
    """``|e| = e \\/ (-e)``."""
    return Join(e, Scale(Fraction(-1), e))
