"""Exact rational linear programming.

``lp_solve`` is a dense two-phase tableau simplex with Bland's rule over
:class:`fractions.Fraction`.  Variables are free unless listed in
``LinearProgram.nonneg``; free variables are split into differences of
nonnegative columns.  Every outcome carries a certificate that
:func:`check_outcome` re-verifies by substitution:

* feasible / optimal: a witness point
* unbounded: a witness point plus an improving recession ray
* infeasible: Farkas multipliers, one per constraint

``fm_feasible`` and ``fm_decide_strict`` decide feasibility by
Fourier-Motzkin elimination instead; they accept strict inequalities and
share no code with the simplex.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

from .errors import DimensionMismatch, ResourceLimit
from .vectors import Vector, dot, rational

RELATIONS = ("<=", "=", ">=", "<", ">")
STRICT = ("<", ">")
_ZERO = Fraction(0)
_ONE = Fraction(1)


@dataclass(frozen=True)
class Constraint:
    coeffs: Vector
    relation: str
    rhs: Fraction

    def __post_init__(self):
        if self.relation not in RELATIONS:
            raise ValueError(f"unknown relation {self.relation!r}")
        object.__setattr__(self, "coeffs", tuple(rational(c) for c in self.coeffs))
        object.__setattr__(self, "rhs", rational(self.rhs))

    def holds(self, x: Vector) -> bool:
        lhs = dot(self.coeffs, x)
        return {
            "<=": lhs <= self.rhs,
            "=": lhs == self.rhs,
            ">=": lhs >= self.rhs,
            "<": lhs < self.rhs,
            ">": lhs > self.rhs,
        }[self.relation]


@dataclass(frozen=True)
class Objective:
    direction: str  # "max" or "min"
    coeffs: Vector

    def __post_init__(self):
        if self.direction not in ("max", "min"):
            raise ValueError(f"objective direction must be 'max' or 'min', got {self.direction!r}")
        object.__setattr__(self, "coeffs", tuple(rational(c) for c in self.coeffs))


@dataclass(frozen=True)
class LinearProgram:
    num_vars: int
    constraints: Tuple[Constraint, ...] = ()
    objective: Optional[Objective] = None
    nonneg: FrozenSet[int] = field(default_factory=frozenset)

    def __post_init__(self):
        object.__setattr__(self, "constraints", tuple(self.constraints))
        object.__setattr__(self, "nonneg", frozenset(self.nonneg))
        for c in self.constraints:
            if len(c.coeffs) != self.num_vars:
                raise DimensionMismatch(
                    f"constraint has {len(c.coeffs)} coefficients, expected {self.num_vars}")
        if self.objective is not None and len(self.objective.coeffs) != self.num_vars:
            raise DimensionMismatch("objective length differs from num_vars")
        if any(not 0 <= j < self.num_vars for j in self.nonneg):
            raise ValueError("nonneg index out of range")

    @property
    def has_strict(self) -> bool:
        return any(c.relation in STRICT for c in self.constraints)


@dataclass(frozen=True)
class LPOutcome:
    status: str  # "feasible" | "infeasible" | "optimal" | "unbounded"
    witness: Optional[Vector] = None
    value: Optional[Fraction] = None
    ray: Optional[Vector] = None
    farkas: Optional[Tuple[Fraction, ...]] = None

    @property
    def is_feasible(self) -> bool:
        return self.status != "infeasible"


# ---------------------------------------------------------------- simplex


class _Tableau:
    """Rows ``A y = b`` with ``y >= 0`` plus a reduced-cost row.

    ``rows[i]`` holds the coefficients followed by the right-hand side;
    ``z`` holds reduced costs followed by minus the objective value.
    """

    def __init__(self, rows: List[List[Fraction]], basis: List[int], ncols: int):
        self.rows = rows
        self.basis = basis
        self.ncols = ncols
        self.z: List[Fraction] = [_ZERO] * (ncols + 1)

    def set_costs(self, costs: Sequence[Fraction]) -> None:
        z = list(costs) + [_ZERO]
        for i, row in enumerate(self.rows):
            cb = costs[self.basis[i]]
            if cb:
                for j, a in enumerate(row):
                    if a:
                        z[j] -= cb * a
        self.z = z

    def pivot(self, r: int, c: int) -> None:
        prow = self.rows[r]
        inv = _ONE / prow[c]
        prow = [a * inv for a in prow]
        self.rows[r] = prow
        nz = [(j, a) for j, a in enumerate(prow) if a]
        for i, row in enumerate(self.rows):
            if i != r and row[c]:
                f = row[c]
                for j, a in nz:
                    row[j] -= f * a
        f = self.z[c]
        if f:
            for j, a in nz:
                self.z[j] -= f * a
        self.basis[r] = c

    def run(self, allowed: int) -> Optional[int]:
        """Minimize with Bland's rule over columns ``< allowed``.

        Returns None at optimality, or the entering column of an unbounded
        direction.
        """
        while True:
            enter = next((j for j in range(allowed) if self.z[j] < 0), None)
            if enter is None:
                return None
            best = None
            for i, row in enumerate(self.rows):
                a = row[enter]
                if a > 0:
                    key = (row[-1] / a, self.basis[i])
                    if best is None or key < best[0]:
                        best = (key, i)
            if best is None:
                return enter
            self.pivot(best[1], enter)

    def point(self) -> List[Fraction]:
        y = [_ZERO] * self.ncols
        for i, b in enumerate(self.basis):
            y[b] = self.rows[i][-1]
        return y


def lp_solve(p: LinearProgram) -> LPOutcome:
    """Solve ``p`` exactly.

    Without an objective the outcome is ``feasible`` or ``infeasible``.
    Deterministic: the same program always yields the same outcome.
    """
    if p.has_strict:
        raise ValueError("strict relations are only supported by the Fourier-Motzkin oracle")

    # column layout: one column per nonnegative variable, two per free one
    colmap: List[Tuple[int, int]] = []  # (variable, sign)
    for j in range(p.num_vars):
        colmap.append((j, 1))
        if j not in p.nonneg:
            colmap.append((j, -1))
    nstruct = len(colmap)
    slack_of: Dict[int, int] = {}
    for i, c in enumerate(p.constraints):
        if c.relation != "=":
            slack_of[i] = nstruct + len(slack_of)
    nreal = nstruct + len(slack_of)
    m = len(p.constraints)
    ncols = nreal + m  # one artificial per row

    rows = []
    signs = []
    for i, c in enumerate(p.constraints):
        row = [c.coeffs[var] * s for var, s in colmap]
        row += [_ZERO] * (len(slack_of) + m)
        if i in slack_of:
            row[slack_of[i]] = _ONE if c.relation == "<=" else -_ONE
        rhs = c.rhs
        sigma = 1
        if rhs < 0:
            sigma = -1
            row = [-a for a in row]
            rhs = -rhs
        row[nreal + i] = _ONE
        row.append(rhs)
        rows.append(row)
        signs.append(sigma)

    t = _Tableau(rows, [nreal + i for i in range(m)], ncols)
    t.set_costs([_ZERO] * nreal + [_ONE] * m)
    t.run(ncols)
    if -t.z[-1] > 0:
        # duals of the phase-one optimum: reduced cost of artificial i is 1 - pi_i
        farkas = tuple(signs[i] * (_ONE - t.z[nreal + i]) for i in range(m))
        return LPOutcome("infeasible", farkas=farkas)

    # drive artificials out of the basis; drop rows that are redundant
    r = 0
    while r < len(t.rows):
        if t.basis[r] >= nreal:
            c = next((j for j in range(nreal) if t.rows[r][j] != 0), None)
            if c is None:
                del t.rows[r]
                del t.basis[r]
                continue
            t.pivot(r, c)
        r += 1

    def to_x(y):
        x = [_ZERO] * p.num_vars
        for k, (var, s) in enumerate(colmap):
            if y[k]:
                x[var] += s * y[k]
        return tuple(x)

    if p.objective is None:
        return LPOutcome("feasible", witness=to_x(t.point()))

    sense = -1 if p.objective.direction == "max" else 1
    costs = [sense * p.objective.coeffs[var] * s for var, s in colmap]
    costs += [_ZERO] * (ncols - nstruct)
    t.set_costs(costs)
    enter = t.run(nreal)
    witness = to_x(t.point())
    if enter is not None:
        d = [_ZERO] * ncols
        d[enter] = _ONE
        for i, b in enumerate(t.basis):
            d[b] = -t.rows[i][enter]
        return LPOutcome("unbounded", witness=witness, ray=to_x(d))
    return LPOutcome("optimal", witness=witness, value=dot(p.objective.coeffs, witness))


def check_outcome(p: LinearProgram, out: LPOutcome) -> bool:
    """Re-verify every certificate in ``out`` against ``p`` by substitution."""
    n = p.num_vars

    def feasible_point(x):
        return (x is not None and len(x) == n
                and all(c.holds(x) for c in p.constraints)
                and all(x[j] >= 0 for j in p.nonneg))

    if out.status == "infeasible":
        mu = out.farkas
        if mu is None or len(mu) != len(p.constraints):
            return False
        for mi, c in zip(mu, p.constraints):
            if c.relation == "<=" and mi > 0 or c.relation == ">=" and mi < 0:
                return False
        combo = [sum((mi * c.coeffs[j] for mi, c in zip(mu, p.constraints)), _ZERO)
                 for j in range(n)]
        for j, a in enumerate(combo):
            if j in p.nonneg:
                if a > 0:
                    return False
            elif a != 0:
                return False
        return sum((mi * c.rhs for mi, c in zip(mu, p.constraints)), _ZERO) > 0

    if not feasible_point(out.witness):
        return False
    if out.status == "feasible":
        return p.objective is None
    if p.objective is None:
        return False
    if out.status == "optimal":
        return out.value == dot(p.objective.coeffs, out.witness)
    if out.status == "unbounded":
        d = out.ray
        if d is None or len(d) != n:
            return False
        for c in p.constraints:
            ad = dot(c.coeffs, d)
            if (c.relation == "<=" and ad > 0 or c.relation == ">=" and ad < 0
                    or c.relation == "=" and ad != 0):
                return False
        if any(d[j] < 0 for j in p.nonneg):
            return False
        gain = dot(p.objective.coeffs, d)
        return gain > 0 if p.objective.direction == "max" else gain < 0
    return False


# ---------------------------------------------------------------- Fourier-Motzkin

DEFAULT_FM_CAP = 20000


def _fm_normalize(a: Tuple[Fraction, ...], b: Fraction):
    lead = next((abs(x) for x in a if x), None)
    if lead is None or lead == 1:
        return a, b
    return tuple(x / lead for x in a), b / lead


def fm_feasible(p: LinearProgram, cap: int = DEFAULT_FM_CAP) -> bool:
    """Decide feasibility of ``p`` (objective ignored) by variable elimination.

    Equalities are solved for one variable and substituted away first; the
    remaining inequalities are eliminated one variable at a time, always
    picking the variable that creates the fewest new rows.  Strict relations
    are allowed.  Raises ResourceLimit when a step would exceed ``cap`` rows.
    """
    n = p.num_vars
    eqs = []
    ineqs = []  # (a, b, strict) meaning a.x <= b, or a.x < b when strict
    for c in p.constraints:
        a, b = c.coeffs, c.rhs
        if c.relation == "=":
            eqs.append((list(a), b))
        elif c.relation in ("<=", "<"):
            ineqs.append((list(a), b, c.relation == "<"))
        else:
            ineqs.append(([-x for x in a], -b, c.relation == ">"))
    for j in p.nonneg:
        ineqs.append(([-_ONE if k == j else _ZERO for k in range(n)], _ZERO, False))

    while eqs:
        a, b = eqs.pop()
        k = next((i for i, x in enumerate(a) if x), None)
        if k is None:
            if b != 0:
                return False
            continue

        def subst(row, rb):
            f = row[k] / a[k]
            if f:
                row = [x - f * y for x, y in zip(row, a)]
                rb = rb - f * b
            return row[:k] + row[k + 1:], rb

        eqs = [subst(r, rb) for r, rb in eqs]
        ineqs = [subst(r, rb) + (s,) for r, rb, s in ineqs]

    # keyed by direction so only the tightest bound per direction survives
    system: Dict[Tuple[Fraction, ...], Tuple[Fraction, bool]] = {}

    def put(target, a, b, strict):
        if not any(a):
            return b > 0 or (b == 0 and not strict)
        a, b = _fm_normalize(tuple(a), b)
        old = target.get(a)
        if old is None or b < old[0] or (b == old[0] and strict and not old[1]):
            target[a] = (b, strict)
        return True

    for a, b, s in ineqs:
        if not put(system, a, b, s):
            return False

    while system:
        width = len(next(iter(system)))
        counts = []
        for k in range(width):
            up = sum(1 for a in system if a[k] > 0)
            lo = sum(1 for a in system if a[k] < 0)
            counts.append((up * lo - up - lo, k))
        k = min(counts)[1]
        upper, lower, rest = [], [], []
        for a, (b, s) in system.items():
            (upper if a[k] > 0 else lower if a[k] < 0 else rest).append((a, b, s))
        size = len(rest) + len(upper) * len(lower)
        if size > cap:
            raise ResourceLimit(f"Fourier-Motzkin would create {size} inequalities (cap {cap})")
        nxt: Dict[Tuple[Fraction, ...], Tuple[Fraction, bool]] = {}
        for a, b, s in rest:
            put(nxt, a[:k] + a[k + 1:], b, s)
        for au, bu, su in upper:
            for al, bl, sl in lower:
                fu, fl = -al[k], au[k]
                a = tuple(fu * x + fl * y for x, y in zip(au, al))
                if not put(nxt, a[:k] + a[k + 1:], fu * bu + fl * bl, su or sl):
                    return False
        system = nxt
    return True


def fm_decide_strict(vectors: Sequence[Vector], cap: int = DEFAULT_FM_CAP) -> bool:
    """True iff some x has ``<v, x> > 0`` for every v in ``vectors``."""
    vectors = [tuple(rational(c) for c in v) for v in vectors]
    if not vectors:
        return True
    n = len(vectors[0])
    if any(len(v) != n for v in vectors):
        raise DimensionMismatch("vectors of different lengths")
    p = LinearProgram(n, [Constraint(v, ">", 0) for v in vectors])
    return fm_feasible(p, cap)
