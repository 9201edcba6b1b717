"""Exact sup-seminorm of a normal form over a polyhedral ball of functionals.

For a single block the supremum of ``min_{v in B} <v, x>`` over the ball is
one LP (maximize t with t <= <v, x>); the supremum of a join is the largest
block value, and ``sup |f| = max(sup f, sup -f)``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Optional, Sequence, Tuple

from .errors import DimensionMismatch, MalformedBall
from .normal_form import NormalForm, nf_eval
from .order import nf_is_zero
from .rational_lp import Constraint, LinearProgram, Objective, lp_solve
from .vectors import Vector, add, dot, neg, rank, rational, scale, zero


@dataclass(frozen=True)
class PolyhedralBall:
    """Either a symmetric vertex list (``vertices``) or half-spaces
    ``<coeffs, x> <= rhs`` with every rhs positive (``halfspaces``)."""

    vertices: Optional[Tuple[Vector, ...]] = None
    halfspaces: Optional[Tuple[Tuple[Vector, Fraction], ...]] = None

    def __post_init__(self):
        if (self.vertices is None) == (self.halfspaces is None):
            raise MalformedBall("give exactly one of vertices or halfspaces")
        if self.vertices is not None:
            verts = tuple(tuple(rational(c) for c in v) for v in self.vertices)
            if not verts:
                raise MalformedBall("empty vertex list")
            if len({len(v) for v in verts}) != 1:
                raise MalformedBall("vertices of different lengths")
            vs = set(verts)
            if any(neg(v) not in vs for v in verts):
                raise MalformedBall("vertex list is not closed under negation")
            object.__setattr__(self, "vertices", verts)
        else:
            hs = tuple((tuple(rational(c) for c in a), rational(b)) for a, b in self.halfspaces)
            if not hs:
                raise MalformedBall("empty half-space list")
            if len({len(a) for a, _ in hs}) != 1:
                raise MalformedBall("half-spaces of different lengths")
            if any(b <= 0 for _, b in hs):
                raise MalformedBall("origin must be strictly inside every half-space")
            object.__setattr__(self, "halfspaces", hs)

    @property
    def dim(self) -> int:
        if self.vertices is not None:
            return len(self.vertices[0])
        return len(self.halfspaces[0][0])

    def spans(self) -> bool:
        if self.vertices is not None:
            return rank(self.vertices) == self.dim
        return True  # bounded H-balls are full-dimensional around 0

    def contains(self, x: Vector) -> bool:
        if self.halfspaces is not None:
            return all(sum(a * c for a, c in zip(h, x)) <= b for h, b in self.halfspaces)
        k = len(self.vertices)
        rows = [Constraint(tuple(v[i] for v in self.vertices), "=", x[i]) for i in range(self.dim)]
        rows.append(Constraint((Fraction(1),) * k, "=", 1))
        return lp_solve(LinearProgram(k, rows, nonneg=range(k))).is_feasible

    @classmethod
    def from_json(cls, text: str) -> "PolyhedralBall":
        obj = json.loads(text)
        if "vrep" in obj:
            return cls(vertices=tuple(_strs(v) for v in obj["vrep"]))
        if "hrep" in obj:
            return cls(halfspaces=tuple((_strs(h["coeffs"]), _str(h["rhs"])) for h in obj["hrep"]))
        raise MalformedBall("ball JSON needs a 'vrep' or 'hrep' key")

    def to_json(self) -> str:
        if self.vertices is not None:
            return json.dumps({"vrep": [[str(c) for c in v] for v in self.vertices]})
        return json.dumps({"hrep": [{"coeffs": [str(c) for c in a], "rhs": str(b)}
                                    for a, b in self.halfspaces]})


def _str(c):
    if not isinstance(c, str):
        raise MalformedBall("rationals must be encoded as strings")
    return rational(c)


def _strs(v):
    return tuple(_str(c) for c in v)


def unit_cube(n: int) -> PolyhedralBall:
    """The sup-norm unit ball as its 2^n vertices."""
    one = Fraction(1)
    return PolyhedralBall(vertices=tuple(product((-one, one), repeat=n)))


def cross_polytope(n: int) -> PolyhedralBall:
    """The 1-norm unit ball, vertices ``+-e_i``."""
    verts = []
    for i in range(n):
        for s in (1, -1):
            verts.append(tuple(Fraction(s if k == i else 0) for k in range(n)))
    return PolyhedralBall(vertices=tuple(verts))


def unit_cube_hrep(n: int) -> PolyhedralBall:
    hs = []
    for i in range(n):
        for s in (1, -1):
            hs.append((tuple(Fraction(s if k == i else 0) for k in range(n)), Fraction(1)))
    return PolyhedralBall(halfspaces=tuple(hs))


def _block_lp(block: Sequence[Vector], ball: PolyhedralBall) -> Tuple[Fraction, Vector]:
    """Optimal value and an optimal point of ``max_{x in ball} min_{v in block} <v, x>``."""
    n = ball.dim
    if ball.vertices is not None:
        # variables: convex weights mu (nonneg), then t (free)
        verts = ball.vertices
        k = len(verts)
        rows = [Constraint((Fraction(1),) * k + (Fraction(0),), "=", 1)]
        for v in block:
            # t - sum_k mu_k <v, w_k> <= 0
            coeffs = tuple(-dot(v, w) for w in verts)
            rows.append(Constraint(coeffs + (Fraction(1),), "<=", 0))
        obj = Objective("max", (Fraction(0),) * k + (Fraction(1),))
        p = LinearProgram(k + 1, rows, obj, nonneg=range(k))
    else:
        # variables: x (free), then t (free)
        rows = [Constraint(a + (Fraction(0),), "<=", b) for a, b in ball.halfspaces]
        for v in block:
            rows.append(Constraint(tuple(-c for c in v) + (Fraction(1),), "<=", 0))
        obj = Objective("max", (Fraction(0),) * n + (Fraction(1),))
        p = LinearProgram(n + 1, rows, obj)
    out = lp_solve(p)
    if out.status == "unbounded":
        raise MalformedBall("ball is unbounded")
    if out.status != "optimal":  # pragma: no cover - the ball contains 0, so the LP is feasible
        raise MalformedBall(f"block LP ended {out.status}")
    if ball.vertices is not None:
        x = zero(n)
        for mu, w in zip(out.witness, ball.vertices):
            if mu:
                x = add(x, scale(mu, w))
    else:
        x = tuple(out.witness[:n])
    return out.value, x


def block_sup(block: Sequence[Vector], ball: PolyhedralBall) -> Fraction:
    """``max_{x in ball} min_{v in block} <v, x>``."""
    return _block_lp(block, ball)[0]


def sup_of(f: NormalForm, ball: PolyhedralBall) -> Fraction:
    """``sup_{x in ball} f(x)``.

    Blocks are visited in decreasing order of a cheap upper bound (the
    smallest single-vector supremum in the block) and the scan stops once
    that bound cannot beat the best block found.
    """
    if f.dim != ball.dim:
        raise DimensionMismatch(f"normal form of dim {f.dim}, ball of dim {ball.dim}")
    single = {}
    for b in f.blocks:
        for v in b:
            if v not in single:
                single[v] = block_sup((v,), ball)
    bounds = sorted(((min(single[v] for v in b), b) for b in f.blocks),
                    key=lambda item: item[0], reverse=True)
    best = None
    for ub, b in bounds:
        if best is not None and ub <= best:
            break
        val = block_sup(b, ball) if len(b) > 1 else ub
        best = val if best is None else max(best, val)
    return best


def sup_of_negation(f: NormalForm, ball: PolyhedralBall) -> Fraction:
    """``sup_{x in ball} -f(x)`` without building the normal form of ``-f``.

    ``-f`` is the join, over choices of one vector from each block of f, of
    ``min -<w, x>``.  Only the set S of chosen vectors matters, and a block
    that already meets S adds nothing, so the search runs over sets hitting
    every block.  The LP over a partial S bounds all its extensions from
    above, and ``-f`` at that LP's optimum is attained, which gives the
    branch-and-bound.
    """
    if f.dim != ball.dim:
        raise DimensionMismatch(f"normal form of dim {f.dim}, ball of dim {ball.dim}")
    blocks = [frozenset(b) for b in f.blocks]
    best = None
    seen = set()
    stack = [frozenset()]
    while stack:
        chosen = stack.pop()
        if chosen in seen:
            continue
        seen.add(chosen)
        x = None
        if chosen:
            bound, x = _block_lp([neg(w) for w in sorted(chosen)], ball)
            if best is not None and bound <= best:
                continue
            val = -nf_eval(f, x)
            best = val if best is None else max(best, val)
            if val >= bound:
                continue
        open_blocks = [b for b in blocks if not (b & chosen)]
        if x is None:
            j = min(open_blocks, key=lambda b: (len(b), sorted(b)))
            order = sorted(j)
        else:
            # most violated block at x; explore its most promising vector first
            j = min(open_blocks, key=lambda b: (max(-dot(w, x) for w in b), sorted(b)))
            order = sorted(j, key=lambda w: (-dot(w, x), w))
        for w in order:
            stack.append(chosen | {w})
    return best


def sup_on_ball(f: NormalForm, ball: PolyhedralBall) -> Fraction:
    """``sup_{x in ball} |f(x)|``, exactly."""
    return max(sup_of(f, ball), sup_of_negation(f, ball))


def norm_faithful_check(f: NormalForm, ball: PolyhedralBall) -> bool:
    """Does "sup-seminorm vanishes" agree with "f is the zero element"?"""
    return (sup_on_ball(f, ball) == 0) == nf_is_zero(f)
