from fractions import Fraction

import pytest

from freevl.errors import DimensionMismatch
from freevl.vectors import dot, rank, rational, solve_combination, vec


def test_rational_accepts_exact_literals_only():
    assert rational("-3/6") == Fraction(-1, 2)
    assert rational(4) == 4
    for bad in ("1.5", "1e3", "", "1/"):
        with pytest.raises(ValueError):
            rational(bad)
    with pytest.raises(TypeError):
        rational(0.5)


def test_rational_is_stored_reduced():
    q = rational("-6/4")
    assert (q.numerator, q.denominator) == (-3, 2)


def test_dot_checks_lengths():
    assert dot(vec(1, 2), vec(3, 4)) == 11
    with pytest.raises(DimensionMismatch):
        dot(vec(1), vec(1, 2))


@pytest.mark.parametrize("rows, expected", [
    ([vec(1, 0), vec(0, 1)], 2),
    ([vec(1, 0)], 1),
    ([vec(1, 1), vec(1, -1)], 2),
    ([vec(1, 2), vec(2, 4)], 1),
    ([vec(0, 0)], 0),
])
def test_rank(rows, expected):
    assert rank(rows) == expected


def test_solve_combination():
    cols = [vec(1, 1), vec(1, -1)]
    c = solve_combination(cols, vec(3, 1))
    assert c == (2, 1)
    assert solve_combination([vec(1, 0)], vec(0, 1)) is None
