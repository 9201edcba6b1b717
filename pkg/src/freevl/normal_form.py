"""Join-of-meets normal forms and the lattice algebra on them.

A :class:`NormalForm` with blocks ``B_1, ..., B_N`` denotes the function

    x  ->  max_j  min_{v in B_j}  <v, x>

Every lattice expression over vector generators has such a form; the
operations below build it bottom-up.  Nothing here calls the LP layer
except :func:`nf_prune`.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from itertools import product
from typing import Iterable, Tuple

from .errors import DimensionMismatch
from .exprs import Add, Gen, Join, Label, LatticeExpr, Meet, Scale, expr_dim
from .vectors import Vector, add, check_dim, dot, rational, scale, zero

Block = Tuple[Vector, ...]


@dataclass(frozen=True)
class NormalForm:
    dim: int
    blocks: Tuple[Block, ...]

    def __post_init__(self):
        if not self.blocks or any(not b for b in self.blocks):
            raise ValueError("a normal form needs at least one block and no empty blocks")
        for b in self.blocks:
            for v in b:
                check_dim(v, self.dim)

    @classmethod
    def from_blocks(cls, dim: int, blocks: Iterable[Iterable]) -> "NormalForm":
        """Canonicalize: sort and deduplicate vectors within blocks, then blocks."""
        canon = set()
        for b in blocks:
            vs = tuple(sorted({tuple(rational(c) for c in v) for v in b}))
            canon.add(vs)
        return cls(dim, tuple(sorted(canon)))

    @classmethod
    def zero(cls, dim: int) -> "NormalForm":
        return cls(dim, ((zero(dim),),))

    @classmethod
    def generator(cls, v: Vector) -> "NormalForm":
        return cls(len(v), ((tuple(v),),))

    def __call__(self, x: Vector) -> Fraction:
        return nf_eval(self, x)

    def __or__(self, other):
        return nf_join(self, other)

    def __and__(self, other):
        return nf_meet(self, other)

    def __add__(self, other):
        return nf_add(self, other)

    def __neg__(self):
        return nf_scale(Fraction(-1), self)

    def __sub__(self, other):
        return nf_add(self, nf_scale(Fraction(-1), other))

    def __rmul__(self, c):
        return nf_scale(rational(c), self)

    def __len__(self):
        return len(self.blocks)

    def to_json_obj(self) -> dict:
        return {
            "dim": self.dim,
            "blocks": [[[str(c) for c in v] for v in b] for b in self.blocks],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj(), separators=(",", ":"))

    @classmethod
    def from_json_obj(cls, obj: dict) -> "NormalForm":
        dim = obj["dim"]
        if not isinstance(dim, int) or dim < 0:
            raise ValueError(f"bad dim {dim!r}")
        for b in obj["blocks"]:
            for v in b:
                if any(not isinstance(c, str) for c in v):
                    raise ValueError("rationals must be encoded as strings")
        return cls.from_blocks(dim, obj["blocks"])

    @classmethod
    def from_json(cls, text: str) -> "NormalForm":
        return cls.from_json_obj(json.loads(text))


def _same_dim(f: NormalForm, g: NormalForm) -> None:
    if f.dim != g.dim:
        raise DimensionMismatch(f"normal forms of dimensions {f.dim} and {g.dim}")


def nf_join(f: NormalForm, g: NormalForm) -> NormalForm:
    _same_dim(f, g)
    return NormalForm.from_blocks(f.dim, f.blocks + g.blocks)


def nf_meet(f: NormalForm, g: NormalForm) -> NormalForm:
    # (V_j A_j) /\ (V_k B_k) = V_{j,k} (A_j /\ B_k) by distributivity
    _same_dim(f, g)
    return NormalForm.from_blocks(f.dim, (b + c for b in f.blocks for c in g.blocks))


def nf_add(f: NormalForm, g: NormalForm) -> NormalForm:
    _same_dim(f, g)
    return NormalForm.from_blocks(
        f.dim,
        ([add(u, w) for u in b for w in c] for b in f.blocks for c in g.blocks),
    )


def nf_scale(c, f: NormalForm) -> NormalForm:
    """Multiply by a rational; a negative factor swaps join and meet.

    ``-(V_j A_j B_ji) = A_j V_i (-B_ji)``, redistributed into one block per
    choice of a vector from every original block.
    """
    c = rational(c)
    if c == 0:
        return NormalForm.zero(f.dim)
    if c > 0:
        return NormalForm.from_blocks(f.dim, ([scale(c, v) for v in b] for b in f.blocks))
    dual = (NormalForm.from_blocks(f.dim, ([scale(c, v)] for v in b)) for b in f.blocks)
    return reduce(nf_meet, dual)


def nf_eval(f: NormalForm, x: Vector) -> Fraction:
    check_dim(x, f.dim, "point")
    return max(min(dot(v, x) for v in b) for b in f.blocks)


def normalize(e: LatticeExpr) -> NormalForm:
    """Join-of-meets form of ``e``, computed bottom-up without pruning.

    Scalars are pushed down to the generators first, so no intermediate
    form ever has to be dualized by a negative factor.
    """
    dim = expr_dim(e)
    if dim is None:
        raise TypeError("expression has no vector generators; realize labels first")
    return _normalize(push_scalars(e))


def push_scalars(e: LatticeExpr, factor: Fraction = Fraction(1)) -> LatticeExpr:
    """Equivalent expression with every Scale folded into a generator.

    Uses c(x + y) = cx + cy and, for c < 0, c(x join y) = cx meet cy.
    A zero factor turns the subtree into the zero generator.
    """
    if isinstance(e, Gen):
        return Gen(scale(factor, e.vector)) if factor != 1 else e
    if isinstance(e, Label):
        return e if factor == 1 else Scale(factor, e)
    if isinstance(e, Scale):
        return push_scalars(e.operand, factor * e.factor)
    if factor == 0:
        return Gen(zero(expr_dim(e)))
    left, right = push_scalars(e.left, factor), push_scalars(e.right, factor)
    if isinstance(e, Add):
        return Add(left, right)
    flip = factor < 0
    if isinstance(e, Join):
        return Meet(left, right) if flip else Join(left, right)
    if isinstance(e, Meet):
        return Join(left, right) if flip else Meet(left, right)
    raise TypeError(f"not a lattice expression: {e!r}")


def _normalize(e: LatticeExpr) -> NormalForm:
    if isinstance(e, Gen):
        return NormalForm.generator(e.vector)
    if isinstance(e, Scale):
        return nf_scale(e.factor, _normalize(e.operand))
    if isinstance(e, Join):
        return nf_join(_normalize(e.left), _normalize(e.right))
    if isinstance(e, Meet):
        return nf_meet(_normalize(e.left), _normalize(e.right))
    if isinstance(e, Add):
        return nf_add(_normalize(e.left), _normalize(e.right))
    if isinstance(e, Label):
        raise TypeError(f"label {e.name!r} has no coordinates; realize the set expression first")
    raise TypeError(f"not a lattice expression: {e!r}")


def block_bound(e: LatticeExpr) -> int:
    """Upper bound on ``len(normalize(e))`` for the strategy used by normalize.

    After scalars are pushed to the leaves, joins add block counts while
    meets and sums multiply them.
    """
    return _block_bound(push_scalars(e))


def _block_bound(e) -> int:
    if isinstance(e, (Gen, Label, Scale)):
        return 1
    left, right = _block_bound(e.left), _block_bound(e.right)
    return left + right if isinstance(e, Join) else left * right


def nf_prune(f: NormalForm) -> NormalForm:
    """Drop blocks whose meet is dominated by the join of the remaining blocks.

    Blocks are visited in canonical order; each test is an exact LP decision.
    """
    from .order import nf_leq

    kept = list(f.blocks)
    i = 0
    while i < len(kept) and len(kept) > 1:
        rest = kept[:i] + kept[i + 1:]
        if nf_leq(NormalForm(f.dim, (kept[i],)), NormalForm(f.dim, tuple(rest))):
            kept = rest
        else:
            i += 1
    return NormalForm(f.dim, tuple(kept))


def as_expr(f: NormalForm) -> LatticeExpr:
    """Rebuild a lattice expression denoting the same function."""
    def meet_of(b):
        return reduce(Meet, (Gen(v) for v in b))
    return reduce(Join, (meet_of(b) for b in f.blocks))
