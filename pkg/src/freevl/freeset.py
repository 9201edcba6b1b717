"""Free vector lattice over a finite set of labels.

Finitely supported functions on the label set play two roles: they are the
free vector space over the set (spanned by the deltas), and, through the
pairing ``sum_s f(s) g(s)``, they are a separating family of functionals on
it.  Coordinatization orders labels lexicographically.

Only finite label sets are represented.  An expression mentions finitely
many labels, so truncating to those labels loses nothing for it.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, Iterable, Mapping, Sequence

from .errors import UnknownLabel
from .exprs import Gen, Label, LatticeExpr, Scale, leaves, parse_set_expr
from .normal_form import NormalForm, nf_eval, normalize
from .vectors import Vector, rational


class FinSupportFn(Mapping):
    """A rational-valued function on labels with finite support.

    Zero values are never stored.  Looking up a label outside the support
    gives 0, as for any function on the whole set.
    """

    __slots__ = ("_values",)

    def __init__(self, values: Mapping[str, object] = ()):
        vals = dict(values)
        self._values: Dict[str, Fraction] = {
            k: rational(v) for k, v in sorted(vals.items()) if rational(v) != 0
        }

    def __getitem__(self, s):
        return self._values.get(s, Fraction(0))

    def __call__(self, s):
        return self[s]

    def __iter__(self):
        return iter(self._values)

    def __len__(self):
        return len(self._values)

    @property
    def support(self):
        return frozenset(self._values)

    def __eq__(self, other):
        if isinstance(other, FinSupportFn):
            return self._values == other._values
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self._values.items()))

    def __add__(self, other):
        out = dict(self._values)
        for k, v in other._values.items():
            out[k] = out.get(k, Fraction(0)) + v
        return FinSupportFn(out)

    def __neg__(self):
        return FinSupportFn({k: -v for k, v in self._values.items()})

    def __sub__(self, other):
        return self + (-other)

    def __rmul__(self, c):
        c = rational(c)
        return FinSupportFn({k: c * v for k, v in self._values.items()})

    def __repr__(self):
        body = ", ".join(f"{k}: {v}" for k, v in self._values.items())
        return f"FinSupportFn({{{body}}})"


def delta(s: str) -> FinSupportFn:
    return FinSupportFn({s: 1})


def pairing(f: FinSupportFn, g: FinSupportFn) -> Fraction:
    """``sum_s f(s) g(s)``; only common support contributes."""
    return sum((v * g[s] for s, v in f.items() if s in g.support), Fraction(0))


def coordinate_labels(labels: Iterable[str]) -> list:
    return sorted(set(labels))


def to_coords(labels: Sequence[str], f: FinSupportFn) -> Vector:
    """Coordinates of ``f`` in the delta basis indexed by ``labels``."""
    extra = f.support - set(labels)
    if extra:
        raise UnknownLabel(f"labels outside the set: {sorted(extra)}")
    return tuple(pairing(delta(s), f) for s in labels)


def from_coords(labels: Sequence[str], v: Vector) -> FinSupportFn:
    total = FinSupportFn()
    for s, c in zip(labels, v):
        total = total + c * delta(s)
    return total


def coordinatize(labels: Sequence[str], e: LatticeExpr) -> LatticeExpr:
    """Replace each label leaf by the coordinates of its delta."""
    index = set(labels)

    def go(node):
        if isinstance(node, Label):
            if node.name not in index:
                raise UnknownLabel(f"unknown label {node.name!r}")
            return Gen(to_coords(labels, delta(node.name)))
        if isinstance(node, Gen):
            return node
        if isinstance(node, Scale):
            return Scale(node.factor, go(node.operand))
        return type(node)(go(node.left), go(node.right))

    return go(e)


def realize_over_set(labels: Iterable[str], e) -> NormalForm:
    """Normal form of a label expression over the finite set ``labels``.

    ``e`` may be an AST with :class:`Label` leaves or expression text.
    Evaluation points of the result are finitely supported functions on the
    set, in coordinates.
    """
    labels = coordinate_labels(labels)
    if not labels:
        raise ValueError("the label set must be nonempty")
    if isinstance(e, str):
        e = parse_set_expr(e)
    return normalize(coordinatize(labels, e))


def labels_in(e: LatticeExpr) -> list:
    return coordinate_labels(leaf.name for leaf in leaves(e) if isinstance(leaf, Label))


def eval_at_function(f: NormalForm, labels: Sequence[str], point: FinSupportFn) -> Fraction:
    """Evaluate a realized normal form at a finitely supported function."""
    return nf_eval(f, to_coords(labels, point))
