"""Dense exact rational vectors.

A vector is a plain tuple of :class:`fractions.Fraction`; these helpers keep
arithmetic exact and check lengths.
"""

import re
from fractions import Fraction
from typing import Iterable, Sequence, Tuple

from .errors import DimensionMismatch

Vector = Tuple[Fraction, ...]

_RATIONAL_RE = re.compile(r"^-?\d+(/\d+)?$")


def rational(value) -> Fraction:
    """Coerce ``value`` to a Fraction.

    Strings must look like ``p`` or ``p/q``; decimals and floats are refused
    so nothing inexact can sneak in.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        text = value.strip()
        if not _RATIONAL_RE.match(text):
            raise ValueError(f"not an exact rational literal: {value!r}")
        result = Fraction(text)
        return result
    raise TypeError(f"cannot convert {type(value).__name__} to an exact rational")


def format_rational(q: Fraction) -> str:
    return str(q)


def vec(*coords) -> Vector:
    """Build a vector from numbers or rational strings.

    ``vec(1, 0)`` and ``vec([1, 0])`` are equivalent.
    """
    if len(coords) == 1 and isinstance(coords[0], (list, tuple)):
        coords = coords[0]
    return tuple(rational(c) for c in coords)


def zero(dim: int) -> Vector:
    return (Fraction(0),) * dim


def basis(dim: int, i: int) -> Vector:
    return tuple(Fraction(1 if k == i else 0) for k in range(dim))


def check_dim(v: Sequence, dim: int, what: str = "vector") -> None:
    if len(v) != dim:
        raise DimensionMismatch(f"{what} has length {len(v)}, expected {dim}")


def dot(u: Vector, v: Vector) -> Fraction:
    if len(u) != len(v):
        raise DimensionMismatch(f"cannot pair vectors of lengths {len(u)} and {len(v)}")
    return sum((a * b for a, b in zip(u, v)), Fraction(0))


def add(u: Vector, v: Vector) -> Vector:
    if len(u) != len(v):
        raise DimensionMismatch(f"cannot add vectors of lengths {len(u)} and {len(v)}")
    return tuple(a + b for a, b in zip(u, v))


def sub(u: Vector, v: Vector) -> Vector:
    if len(u) != len(v):
        raise DimensionMismatch(f"cannot subtract vectors of lengths {len(u)} and {len(v)}")
    return tuple(a - b for a, b in zip(u, v))


def scale(c: Fraction, v: Vector) -> Vector:
    return tuple(c * a for a in v)


def neg(v: Vector) -> Vector:
    return tuple(-a for a in v)


def max_abs(v: Vector) -> Fraction:
    return max((abs(a) for a in v), default=Fraction(0))


def format_vector(v: Iterable[Fraction]) -> str:
    return "[" + ",".join(str(a) for a in v) + "]"


def rank(rows: Sequence[Vector]) -> int:
    """Rank by exact Gaussian elimination."""
    m = [list(r) for r in rows]
    if not m:
        return 0
    ncols = len(m[0])
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c] / m[r][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        r += 1
        if r == len(m):
            break
    return r


def solve_combination(columns: Sequence[Vector], target: Vector):
    """Find coefficients c with sum(c[k] * columns[k]) == target, or None.

    Free variables are set to zero, so the answer is deterministic.
    """
    n = len(target)
    k = len(columns)
    # augmented matrix, one row per coordinate
    m = [[columns[j][i] for j in range(k)] + [target[i]] for i in range(n)]
    pivots = []
    r = 0
    for c in range(k):
        p = next((i for i in range(r, n) if m[i][c] != 0), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        inv = 1 / m[r][c]
        m[r] = [a * inv for a in m[r]]
        for i in range(n):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == n:
            break
    for i in range(r, n):
        if m[i][k] != 0:
            return None
    coeffs = [Fraction(0)] * k
    for row, c in enumerate(pivots):
        coeffs[c] = m[row][k]
    return tuple(coeffs)
