"""Order decisions in the free vector lattice.

Everything reduces to one primitive: a finite meet of linear generators is
``<= 0`` everywhere iff ``0`` lies in the convex hull of the generators.
The hull test is an exact LP; when it fails, the LP
``<v_i, x> >= 1 for all i`` supplies a point where the meet is positive.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, Tuple

from .errors import DimensionMismatch, ResourceLimit
from .normal_form import NormalForm, nf_add, nf_eval, nf_scale
from .rational_lp import Constraint, LinearProgram, Objective, lp_solve
from .vectors import Vector, dot, max_abs, rational, scale, sub

ARCHIMEDEAN_CAP = 10 ** 6


@dataclass(frozen=True)
class HullResult:
    """Outcome of :func:`hull_contains_zero` with its certificate.

    ``weights`` (convex, mapping the vectors to 0) is set when the hull
    contains the origin; otherwise ``separator`` satisfies
    ``<v, separator> >= 1`` for every vector.
    """

    contains_zero: bool
    weights: Optional[Tuple[Fraction, ...]] = None
    separator: Optional[Vector] = None

    def __bool__(self):
        return self.contains_zero


def hull_contains_zero(vectors: Sequence[Vector]) -> HullResult:
    vectors = [tuple(rational(c) for c in v) for v in vectors]
    if not vectors:
        raise ValueError("need at least one vector")
    n = len(vectors[0])
    if any(len(v) != n for v in vectors):
        raise DimensionMismatch("vectors of different lengths")
    k = len(vectors)

    rows = [Constraint(tuple(v[i] for v in vectors), "=", 0) for i in range(n)]
    rows.append(Constraint((Fraction(1),) * k, "=", 1))
    out = lp_solve(LinearProgram(k, rows, nonneg=range(k)))
    if out.is_feasible:
        return HullResult(True, weights=out.witness)

    sep = lp_solve(LinearProgram(n, [Constraint(v, ">=", 1) for v in vectors]))
    if not sep.is_feasible:  # pragma: no cover - would contradict Gordan's alternative
        raise AssertionError("neither convex weights nor a separator exist")
    return HullResult(False, separator=sep.witness)


def meet_leq_zero(vectors: Sequence[Vector]) -> bool:
    """Is ``min_i <v_i, x> <= 0`` for every x?"""
    return hull_contains_zero(vectors).contains_zero


def _difference(f: NormalForm, g: NormalForm) -> NormalForm:
    if f.dim != g.dim:
        raise DimensionMismatch(f"normal forms of dimensions {f.dim} and {g.dim}")
    return nf_add(f, nf_scale(Fraction(-1), g))


def _min_dot(block, x):
    return min(dot(v, x) for v in block)


class _BlockSearch:
    """Is ``meet(B) <= g``?  Equivalently: does every block of ``meet(B) - g``
    contain 0 in its hull?

    The blocks of ``meet(B) - g`` are ``{v - w_j : v in B, j}``, one per choice
    of ``w_j`` from each block ``C_j`` of g.  They are enumerated depth-first,
    one block of g at a time.  A partial choice whose vectors already have 0 in
    their hull is abandoned, since every completion contains it.  At each node
    the block of g with the fewest live choices is branched on next.
    """

    def __init__(self, block, g: NormalForm):
        self.block = block
        self.g = g
        self.cache = {}

    def feasible(self, vectors, x):
        """Separator for ``vectors`` (all products >= 1), or None if 0 is in the hull."""
        if x is not None:
            m = min(dot(h, x) for h in vectors)
            if m > 0:
                return scale(1 / m, x)
        key = frozenset(vectors)
        if key not in self.cache:
            res = hull_contains_zero(sorted(key))
            self.cache[key] = None if res else res.separator
        return self.cache[key]

    def counterexample(self):
        return self._search(frozenset(), None, tuple(range(len(self.g.blocks))))

    def _search(self, chosen, x, remaining):
        if x is not None:
            gap = _min_dot(self.block, x) - nf_eval(self.g, x)
            if gap > 0:
                return scale(1 / gap, x)
        if not remaining:  # pragma: no cover - a feasible leaf always has a positive gap
            return None
        best = None
        for j in remaining:
            children = []
            for w in self.g.blocks[j]:
                if w in self.block:
                    continue  # contributes the zero vector
                new = chosen | {sub(v, w) for v in self.block}
                sep = self.feasible(new, x)
                if sep is not None:
                    children.append((new, sep))
            if best is None or len(children) < len(best[1]):
                best = (j, children)
                if not children:
                    return None
        j, children = best
        rest = tuple(k for k in remaining if k != j)
        for new, sep in children:
            found = self._search(new, sep, rest)
            if found is not None:
                return found
        return None


def _materialized_counterexample(f: NormalForm, g: NormalForm) -> Optional[Vector]:
    # reference route: build every block of f - g explicitly
    for block in _difference(f, g).blocks:
        res = hull_contains_zero(block)
        if not res:
            return res.separator
    return None


def _block_check(args):
    block, g = args
    return _BlockSearch(block, g).counterexample()


def leq_counterexample(f: NormalForm, g: NormalForm, jobs: int = 1) -> Optional[Vector]:
    """None when ``f <= g``; otherwise a point x with ``f(x) >= g(x) + 1``.

    ``f <= g`` iff the meet of every block of f is below g.  The first
    failing block of f in canonical order decides, so the answer does not
    depend on ``jobs``.
    """
    if f.dim != g.dim:
        raise DimensionMismatch(f"normal forms of dimensions {f.dim} and {g.dim}")
    tasks = [(block, g) for block in f.blocks]
    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(jobs) as pool:
            for x in pool.map(_block_check, tasks):
                if x is not None:
                    return x
        return None
    for task in tasks:
        x = _block_check(task)
        if x is not None:
            return x
    return None


def nf_leq(f: NormalForm, g: NormalForm, jobs: int = 1) -> bool:
    # a join is <= 0 iff every joinand is
    return leq_counterexample(f, g, jobs) is None


def nf_eq(f: NormalForm, g: NormalForm, jobs: int = 1) -> bool:
    return nf_leq(f, g, jobs) and nf_leq(g, f, jobs)


def nf_is_zero(f: NormalForm, jobs: int = 1) -> bool:
    return nf_eq(f, NormalForm.zero(f.dim), jobs)


def separating_witness(f: NormalForm, g: NormalForm, jobs: int = 1) -> Optional[Vector]:
    """A point of the unit sup-norm ball where f and g differ, or None if f = g."""
    x = leq_counterexample(f, g, jobs)
    if x is None:
        x = leq_counterexample(g, f, jobs)
    if x is None:
        return None
    return scale(1 / max_abs(x), x)


def archimedean_witness(f: NormalForm, g: NormalForm, cap: int = ARCHIMEDEAN_CAP) -> Optional[int]:
    """Least n >= 1 with ``n f`` not below ``g``; None when ``f <= 0``.

    The n with ``n f <= g`` form an interval (pointwise they are
    intersections of half-lines), so doubling followed by bisection finds the
    boundary.
    """
    if f.dim != g.dim:
        raise DimensionMismatch(f"normal forms of dimensions {f.dim} and {g.dim}")
    if nf_leq(f, NormalForm.zero(f.dim)):
        return None

    def holds(n):
        return nf_leq(nf_scale(n, f), g)

    if not holds(1):
        return 1
    lo, hi = 1, 2
    while holds(hi):
        if hi > cap:
            raise ResourceLimit(f"no Archimedean witness below {cap}")
        lo, hi = hi, hi * 2
    # holds(lo) and not holds(hi)
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if holds(mid):
            lo = mid
        else:
            hi = mid
    return hi


def leq_gap(f: NormalForm, g: NormalForm, x: Vector) -> Fraction:
    """``f(x) - g(x)``; convenience for checking counterexamples."""
    return nf_eval(f, x) - nf_eval(g, x)
