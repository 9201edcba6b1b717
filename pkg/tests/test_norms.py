import random
from fractions import Fraction

import pytest

from freevl.errors import DimensionMismatch, MalformedBall
from freevl.exprs import parse_expr
from freevl.normal_form import NormalForm, nf_add, nf_join, nf_scale, normalize
from freevl.norms import (
    PolyhedralBall, cross_polytope, norm_faithful_check, sup_of, sup_of_negation, sup_on_ball,
    unit_cube, unit_cube_hrep,
)
from freevl.order import nf_is_zero, nf_leq
from freevl.vectors import vec

import gen


def nf(text):
    return normalize(parse_expr(text))


def cube_halfspaces(n):
    return unit_cube_hrep(n).halfspaces


def cross_halfspaces(n):
    from itertools import product
    return tuple((s, Fraction(1)) for s in product((Fraction(-1), Fraction(1)), repeat=n))


def test_examples():
    segment = PolyhedralBall(vertices=(vec(-1), vec(1)))
    assert sup_on_ball(nf(r"[1] \/ -[1]"), segment) == 1
    assert sup_on_ball(nf("[1,0] + [0,1]"), unit_cube(2)) == 2
    f = nf(r"[1,0] /\ [0,1]")
    assert sup_on_ball(f, unit_cube(2)) == 1
    assert sup_on_ball(f, unit_cube(2)) == gen.brute_sup_abs(f, cube_halfspaces(2))


def test_vrep_and_hrep_agree():
    rng = random.Random(60)
    for _ in range(40):
        dim = rng.randint(1, 3)
        f = gen.rand_nf(rng, dim, 2, 2)
        assert sup_on_ball(f, unit_cube(dim)) == sup_on_ball(f, unit_cube_hrep(dim))
        assert sup_on_ball(f, cross_polytope(dim)) == sup_on_ball(
            f, PolyhedralBall(halfspaces=cross_halfspaces(dim)))


def test_against_vertex_enumeration_oracle():
    rng = random.Random(61)
    for _ in range(60):
        dim = rng.randint(1, 3)
        f = gen.rand_nf(rng, dim, 2, 3)
        assert sup_on_ball(f, unit_cube(dim)) == gen.brute_sup_abs(f, cube_halfspaces(dim))
        assert sup_on_ball(f, cross_polytope(dim)) == gen.brute_sup_abs(f, cross_halfspaces(dim))


def test_faithfulness_examples():
    assert norm_faithful_check(NormalForm.zero(2), unit_cube(2))
    assert sup_on_ball(NormalForm.zero(2), unit_cube(2)) == 0
    assert norm_faithful_check(nf("[1,0]"), unit_cube(2))
    assert sup_on_ball(nf("[1,0]"), unit_cube(2)) == 1


def test_norm_axioms():
    rng = random.Random(62)
    ball = unit_cube(2)
    for _ in range(40):
        f, g = gen.rand_nf(rng, 2, 2, 2), gen.rand_nf(rng, 2, 2, 2)
        lam = gen.rand_rational(rng)
        assert sup_on_ball(nf_scale(lam, f), ball) == abs(lam) * sup_on_ball(f, ball)
        assert sup_on_ball(nf_add(f, g), ball) <= sup_on_ball(f, ball) + sup_on_ball(g, ball)
        assert (sup_on_ball(f, ball) == 0) == nf_is_zero(f)


def test_lattice_seminorm_monotone():
    rng = random.Random(63)
    ball = cross_polytope(2)
    absval = lambda f: nf_join(f, nf_scale(-1, f))  # noqa: E731
    hits = 0
    for _ in range(80):
        f, g = gen.rand_nf(rng, 2, 2, 2), gen.rand_nf(rng, 2, 2, 2)
        if nf_leq(absval(f), absval(g)):
            hits += 1
            assert sup_on_ball(f, ball) <= sup_on_ball(g, ball)
    assert hits > 0


def test_monotone_in_ball():
    rng = random.Random(64)
    small = cross_polytope(2)
    big = unit_cube(2)
    assert all(big.contains(v) for v in small.vertices)
    for _ in range(30):
        f = gen.rand_nf(rng, 2)
        assert sup_on_ball(f, small) <= sup_on_ball(f, big)


def test_ball_validation():
    with pytest.raises(MalformedBall):
        PolyhedralBall(vertices=(vec(1, 0), vec(0, 1)))
    with pytest.raises(MalformedBall):
        PolyhedralBall(vertices=())
    with pytest.raises(MalformedBall):
        PolyhedralBall(halfspaces=((vec(1, 0), Fraction(0)),))
    with pytest.raises(MalformedBall):
        sup_on_ball(nf("[1,0]"), PolyhedralBall(halfspaces=((vec(1, 0), Fraction(1)),)))
    with pytest.raises(DimensionMismatch):
        sup_on_ball(nf("[1,0]"), unit_cube(3))


def test_ball_json():
    for ball in (unit_cube(2), unit_cube_hrep(2)):
        assert PolyhedralBall.from_json(ball.to_json()) == ball
    with pytest.raises(MalformedBall):
        PolyhedralBall.from_json('{"vrep": [[1], [-1]]}')


def test_negation_search_matches_dualized_form():
    # sup of -f computed lazily against the explicit normal form of -f
    rng = random.Random(808)
    for _ in range(60):
        dim = rng.randint(1, 3)
        f = gen.rand_nf(rng, dim, 3, 3)
        for ball in (unit_cube(dim), cross_polytope(dim), unit_cube_hrep(dim)):
            assert sup_of_negation(f, ball) == sup_of(nf_scale(Fraction(-1), f), ball)
