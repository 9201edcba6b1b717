"""Lattice homomorphisms out of the free vector lattice.

A linear map on generators extends uniquely to a lattice homomorphism; here
the extension is computed by structural recursion in one of three targets:
the scalars, Q^m with the coordinatewise order, or another free lattice.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from typing import Sequence, Tuple, Union

from .errors import DimensionMismatch, NotSeparating
from .exprs import Add, Gen, Join, Label, LatticeExpr, Meet, Scale, expr_dim
from .freeset import FinSupportFn, from_coords, to_coords
from .normal_form import NormalForm, nf_add, nf_eval, nf_join, nf_meet, nf_scale
from .vectors import Vector, check_dim, dot, rank, rational, solve_combination


@dataclass(frozen=True)
class Scalars:
    pass


@dataclass(frozen=True)
class CoordinateLattice:
    m: int


@dataclass(frozen=True)
class FreeLattice:
    dim: int


TargetLattice = Union[Scalars, CoordinateLattice, FreeLattice]


def parse_target(tag: str) -> TargetLattice:
    """``"scalars"``, ``"coord:m"`` or ``"free:n"``."""
    kind, _, arg = tag.partition(":")
    if kind == "scalars" and not arg:
        return Scalars()
    if kind in ("coord", "free") and arg.isdigit() and int(arg) > 0:
        return CoordinateLattice(int(arg)) if kind == "coord" else FreeLattice(int(arg))
    raise ValueError(f"bad target tag {tag!r}")


def target_tag(t: TargetLattice) -> str:
    if isinstance(t, Scalars):
        return "scalars"
    if isinstance(t, CoordinateLattice):
        return f"coord:{t.m}"
    return f"free:{t.dim}"


@dataclass(frozen=True)
class LinearMapSpec:
    """A linear map out of Q^n.

    ``rows`` is the matrix for the scalar and coordinate targets (one row for
    scalars).  For a free-lattice target ``images`` lists the image of each
    standard basis vector.
    """

    rows: Tuple[Vector, ...] = ()
    images: Tuple[NormalForm, ...] = ()

    @classmethod
    def from_rows(cls, rows) -> "LinearMapSpec":
        return cls(rows=tuple(tuple(rational(c) for c in r) for r in rows))

    @classmethod
    def from_images(cls, images: Sequence[NormalForm]) -> "LinearMapSpec":
        images = tuple(images)
        if len({f.dim for f in images}) > 1:
            raise DimensionMismatch("free-lattice images must share a dimension")
        return cls(images=images)

    @classmethod
    def from_json(cls, text: str) -> "LinearMapSpec":
        obj = json.loads(text)
        if "images" in obj:
            return cls.from_images([NormalForm.from_json_obj(o) for o in obj["images"]])
        if any(not isinstance(c, str) for r in obj["rows"] for c in r):
            raise ValueError("rationals must be encoded as strings")
        return cls.from_rows(obj["rows"])

    def to_json(self) -> str:
        if self.images:
            return json.dumps({"images": [f.to_json_obj() for f in self.images]})
        return json.dumps({"rows": [[str(c) for c in r] for r in self.rows]})

    @property
    def source_dim(self) -> int:
        if self.images:
            return len(self.images)
        return len(self.rows[0]) if self.rows else 0

    def apply(self, v: Vector, target: TargetLattice):
        """phi(v) as a value of ``target``."""
        check_dim(v, self.source_dim, "generator")
        if isinstance(target, FreeLattice):
            if not self.images or self.images[0].dim != target.dim:
                raise DimensionMismatch(f"map does not land in free lattice of dim {target.dim}")
            terms = [nf_scale(c, img) for c, img in zip(v, self.images)]
            return reduce(nf_add, terms, NormalForm.zero(target.dim))
        if self.images:
            raise DimensionMismatch("free-lattice images given for a non-free target")
        image = tuple(dot(r, v) for r in self.rows)
        if isinstance(target, Scalars):
            if len(self.rows) != 1:
                raise DimensionMismatch("a scalar-valued map has exactly one row")
            return image[0]
        if len(self.rows) != target.m:
            raise DimensionMismatch(f"map has {len(self.rows)} rows, target has {target.m}")
        return image


def _ops(target: TargetLattice):
    if isinstance(target, Scalars):
        return (lambda a, b: a + b, lambda c, a: c * a, max, min)
    if isinstance(target, CoordinateLattice):
        return (
            lambda a, b: tuple(x + y for x, y in zip(a, b)),
            lambda c, a: tuple(c * x for x in a),
            lambda a, b: tuple(max(x, y) for x, y in zip(a, b)),
            lambda a, b: tuple(min(x, y) for x, y in zip(a, b)),
        )
    return nf_add, nf_scale, nf_join, nf_meet


def target_ops(target: TargetLattice):
    """(add, scale, join, meet) of the target lattice."""
    return _ops(target)


def factor_map(phi: LinearMapSpec, target: TargetLattice, e: LatticeExpr):
    """The lattice homomorphism extending ``phi``, applied to ``e``."""
    add, mul, join, meet = _ops(target)

    def go(node):
        if isinstance(node, Gen):
            return phi.apply(node.vector, target)
        if isinstance(node, Scale):
            return mul(node.factor, go(node.operand))
        if isinstance(node, Add):
            return add(go(node.left), go(node.right))
        if isinstance(node, Join):
            return join(go(node.left), go(node.right))
        if isinstance(node, Meet):
            return meet(go(node.left), go(node.right))
        if isinstance(node, Label):
            raise TypeError(f"label {node.name!r} has no coordinates")
        raise TypeError(f"not a lattice expression: {node!r}")

    return go(e)


def psi_embed(v: Vector) -> NormalForm:
    """The canonical generator: the linear function ``x -> <v, x>``."""
    return NormalForm.generator(tuple(rational(c) for c in v))


class RestrictedFunction:
    """A normal form seen as a function on the span of some functionals.

    Evaluation takes coefficients with respect to ``span``.
    """

    def __init__(self, f: NormalForm, span: Sequence[Vector]):
        self.f = f
        self.span = tuple(tuple(rational(c) for c in s) for s in span)

    def point(self, coeffs: Sequence) -> Vector:
        coeffs = [rational(c) for c in coeffs]
        if len(coeffs) != len(self.span):
            raise DimensionMismatch(f"need {len(self.span)} coefficients, got {len(coeffs)}")
        x = [Fraction(0)] * self.f.dim
        for c, s in zip(coeffs, self.span):
            for i, a in enumerate(s):
                x[i] += c * a
        return tuple(x)

    def __call__(self, coeffs: Sequence) -> Fraction:
        return nf_eval(self.f, self.point(coeffs))

    def coordinates(self, x: Vector):
        """Coefficients expressing ``x`` over the span, or None if outside it."""
        check_dim(x, self.f.dim, "point")
        return solve_combination(self.span, x)


def restrict_dual(f: NormalForm, span: Sequence[Vector]) -> RestrictedFunction:
    """Restrict ``f`` to the functionals spanned by ``span``.

    Raises NotSeparating when they fail to separate the points of Q^n, since
    equality decisions on the restriction would then be unsound.
    """
    for s in span:
        check_dim(s, f.dim, "span vector")
    r = rank([tuple(rational(c) for c in s) for s in span])
    if r < f.dim:
        raise NotSeparating(f"span has rank {r} < {f.dim}")
    return RestrictedFunction(f, span)


def compose_free(s_size: int, e: LatticeExpr) -> NormalForm:
    """Normal form of ``e`` obtained through the set-indexed model.

    Each generator is first read as a finitely supported function on
    ``{0, ..., s_size - 1}`` (a combination of deltas), then embedded as the
    linear function it induces by pairing.  The result must agree with
    ``normalize(e)``.
    """
    dim = expr_dim(e)
    if dim is not None and dim != s_size:
        raise DimensionMismatch(f"generators have length {dim}, set has {s_size} elements")
    labels = [str(i) for i in range(s_size)]

    def embed(v: Vector) -> NormalForm:
        fn: FinSupportFn = from_coords(labels, v)
        return psi_embed(to_coords(labels, fn))

    def go(node):
        if isinstance(node, Gen):
            return embed(node.vector)
        if isinstance(node, Scale):
            return nf_scale(node.factor, go(node.operand))
        if isinstance(node, Add):
            return nf_add(go(node.left), go(node.right))
        if isinstance(node, Join):
            return nf_join(go(node.left), go(node.right))
        if isinstance(node, Meet):
            return nf_meet(go(node.left), go(node.right))
        raise TypeError(f"not a coordinate lattice expression: {node!r}")

    return go(e)
