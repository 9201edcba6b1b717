import random
from fractions import Fraction

import pytest
from hypothesis import given, settings

from freevl.errors import DimensionMismatch
from freevl.exprs import Gen, Join, Scale, parse_expr
from freevl.normal_form import NormalForm, nf_add, nf_eval, nf_join, nf_scale, normalize
from freevl.order import (
    archimedean_witness, hull_contains_zero, leq_counterexample, meet_leq_zero, nf_eq, nf_is_zero,
    nf_leq, separating_witness,
)
from freevl.rational_lp import fm_decide_strict
from freevl.vectors import dot, max_abs, vec, zero

import gen

e1, e2 = vec(1, 0), vec(0, 1)


def nf(text, dim=2):
    return normalize(parse_expr(text, dim))


def absval(f):
    return nf_join(f, nf_scale(-1, f))


def check_hull_certificate(vectors, res):
    if res.contains_zero:
        w = res.weights
        assert all(x >= 0 for x in w) and sum(w) == 1
        assert all(sum(wi * v[i] for wi, v in zip(w, vectors)) == 0 for i in range(len(vectors[0])))
    else:
        assert all(dot(v, res.separator) >= 1 for v in vectors)


def test_hull_examples():
    r = hull_contains_zero([e1, vec(-1, 0)])
    assert r.contains_zero and r.weights == (Fraction(1, 2), Fraction(1, 2))
    r = hull_contains_zero([e1, e2])
    assert not r.contains_zero
    check_hull_certificate([e1, e2], r)
    r = hull_contains_zero([e1, vec(-1, 1), vec(0, -1)])
    assert r.contains_zero and r.weights == (Fraction(1, 3),) * 3


def test_hull_input_checks():
    with pytest.raises(ValueError):
        hull_contains_zero([])
    with pytest.raises(DimensionMismatch):
        hull_contains_zero([vec(1), vec(1, 2)])


def test_meet_leq_zero_examples():
    assert meet_leq_zero([e1, vec(-1, 0)])
    assert not meet_leq_zero([e1, e2])
    assert meet_leq_zero([zero(2)])


def test_gordan_alternative_against_fourier_motzkin():
    rng = random.Random(30)
    for _ in range(200):
        n, k = rng.randint(1, 4), rng.randint(1, 6)
        vs = [gen.rand_vector(rng, n) for _ in range(k)]
        res = hull_contains_zero(vs)
        check_hull_certificate(vs, res)
        assert res.contains_zero == (not fm_decide_strict(vs))


def test_leq_examples():
    a = nf("[1,0]")
    assert nf_leq(nf(r"[1,0] /\ [0,1]"), a)
    assert not nf_leq(nf(r"[1,0] \/ [0,1]"), a)
    f = nf(r"[1,2] /\ [-1,1] + [0,1]")
    assert nf_leq(f, absval(f))


def test_eq_examples():
    assert nf_eq(nf(r"([1,0] \/ [0,1]) + ([1,0] /\ [0,1])"), nf("[1,0] + [0,1]"))
    assert not nf_eq(nf("[1,0]"), nf("[0,1]"))


def test_is_zero_examples():
    assert nf_is_zero(NormalForm.zero(2))
    assert not nf_is_zero(NormalForm.generator(vec(1, -2)))
    assert not nf_is_zero(nf(r"[1,0] \/ -[1,0]"))
    assert nf_is_zero(nf(r"([1,0] \/ [0,1]) + ([1,0] /\ [0,1]) - [1,0] - [0,1]"))


def test_archimedean_examples():
    a = nf("[1,0]")
    assert archimedean_witness(a, a) == 2
    assert archimedean_witness(absval(a), nf_scale(5, absval(a))) == 6
    assert archimedean_witness(nf_scale(-1, absval(a)), a) is None
    # -x1 is positive at (-1, 0), so it is not below 0 and 1 already fails
    assert archimedean_witness(nf("[-1,0]"), a) == 1


def test_archimedean_when_one_already_fails():
    assert archimedean_witness(nf("[1,0]"), nf("[0,1]")) == 1


def test_separating_witness_examples():
    x = separating_witness(nf("[1,0]"), NormalForm.zero(2))
    assert x == vec(1, 0)
    f = nf(r"[1,0] \/ [0,1]")
    assert separating_witness(f, f) is None
    g = nf("[1,0]")
    x = separating_witness(f, g)
    assert max_abs(x) <= 1 and nf_eval(f, x) != nf_eval(g, x)


def test_counterexample_gap_is_at_least_one():
    rng = random.Random(31)
    for _ in range(80):
        f, g = gen.rand_nf(rng, 2), gen.rand_nf(rng, 2)
        x = leq_counterexample(f, g)
        if x is not None:
            assert nf_eval(f, x) - nf_eval(g, x) >= 1


def test_soundness_and_completeness_of_leq():
    rng = random.Random(32)
    for _ in range(120):
        dim = rng.randint(1, 3)
        f = normalize(gen.rand_expr(rng, dim, 6))
        g = normalize(gen.rand_expr(rng, dim, 6))
        if nf_leq(f, g):
            for _ in range(100):
                x = gen.rand_point(rng, dim)
                assert nf_eval(f, x) <= nf_eval(g, x)
        else:
            x = leq_counterexample(f, g)
            assert nf_eval(f, x) > nf_eval(g, x)


@settings(max_examples=40, deadline=None)
@given(gen.normal_forms(2, 2, 2), gen.normal_forms(2, 2, 2), gen.normal_forms(2, 2, 2))
def test_partial_order_laws(f, g, h):
    assert nf_leq(f, f)
    if nf_leq(f, g) and nf_leq(g, h):
        assert nf_leq(f, h)
    if nf_leq(f, g) and nf_leq(g, f):
        assert nf_eq(f, g)
    assert nf_leq(f, nf_join(f, g))


@settings(max_examples=40, deadline=None)
@given(gen.normal_forms(2, 2, 2), gen.normal_forms(2, 2, 2), gen.rationals.filter(lambda q: q > 0))
def test_scale_invariance(f, g, lam):
    assert nf_leq(f, g) == nf_leq(nf_scale(lam, f), nf_scale(lam, g))


def test_archimedean_boundary_property():
    rng = random.Random(33)
    checked = 0
    while checked < 30:
        f, g = gen.rand_nf(rng, 2, 2, 2), gen.rand_nf(rng, 2, 2, 2)
        n = archimedean_witness(f, g)
        if n is None:
            assert nf_leq(f, NormalForm.zero(2))
            continue
        checked += 1
        assert not nf_leq(nf_scale(n, f), g)
        if n > 1:
            assert nf_leq(nf_scale(n - 1, f), g)


def test_decisions_are_deterministic_with_jobs():
    f, g = nf(r"[1,0] \/ [0,1] \/ [1,1]"), nf(r"[1,0] /\ [2,1]")
    assert leq_counterexample(f, g) == leq_counterexample(f, g, jobs=2)


def test_pruned_search_matches_materialized_difference():
    # the lazy block search must agree with building every block of f - g
    from freevl.order import _materialized_counterexample
    rng = random.Random(77)
    outcomes = set()
    for _ in range(60):
        dim = rng.choice([1, 2, 3])
        f = gen.rand_nf(rng, dim, 3, 2)
        g = gen.rand_nf(rng, dim, 3, 3)
        if rng.random() < 0.5:
            g = nf_add(nf_join(g, f), nf_scale(Fraction(0), g))
        lazy = leq_counterexample(f, g)
        ref = _materialized_counterexample(f, g)
        assert (lazy is None) == (ref is None)
        if lazy is not None:
            assert nf_eval(f, lazy) >= nf_eval(g, lazy) + 1
        outcomes.add(lazy is None)
    assert outcomes == {True, False}
