"""Seeded random generators and hypothesis strategies shared by the tests."""

from fractions import Fraction
from itertools import combinations

from hypothesis import strategies as st

from freevl.exprs import Add, Gen, Join, Label, Meet, Scale
from freevl.normal_form import NormalForm
from freevl.vectors import solve_combination


def rand_rational(rng, bound=5, maxden=4):
    den = rng.randint(1, maxden)
    return Fraction(rng.randint(-bound * den, bound * den), den)


def rand_vector(rng, n, bound=5, maxden=4):
    return tuple(rand_rational(rng, bound, maxden) for _ in range(n))


def rand_int_vector(rng, n, bound=3):
    return tuple(Fraction(rng.randint(-bound, bound)) for _ in range(n))


def rand_point(rng, n):
    return rand_vector(rng, n, bound=10, maxden=5)


def rand_expr(rng, dim, max_nodes=10, leaf=None):
    """Random AST with at most ``max_nodes`` nodes."""
    leaf = leaf or (lambda: Gen(rand_int_vector(rng, dim)))
    budget = rng.randint(1, max_nodes)
    return _grow(rng, budget, leaf)


def _grow(rng, budget, leaf):
    if budget <= 1:
        return leaf()
    if budget == 2 or rng.random() < 0.15:
        factor = Fraction(rng.choice([-2, -1, -1, 1, 2, 3]), rng.choice([1, 1, 2]))
        return Scale(factor, _grow(rng, budget - 1, leaf))
    left = rng.randint(1, budget - 2)
    op = rng.choice([Add, Join, Meet, Join, Meet])
    return op(_grow(rng, left, leaf), _grow(rng, budget - 1 - left, leaf))


def rand_label_expr(rng, labels, max_nodes=8):
    return rand_expr(rng, 0, max_nodes, leaf=lambda: Label(rng.choice(labels)))


def rand_nf(rng, dim, max_blocks=3, max_block=3, bound=3):
    blocks = [[rand_int_vector(rng, dim, bound) for _ in range(rng.randint(1, max_block))]
              for _ in range(rng.randint(1, max_blocks))]
    return NormalForm.from_blocks(dim, blocks)


# ---------------------------------------------------------------- hypothesis

rationals = st.builds(
    Fraction, st.integers(-6, 6), st.integers(1, 4))


def vectors(dim):
    return st.tuples(*[rationals] * dim)


def exprs(dim, max_leaves=6):
    return st.recursive(
        st.builds(Gen, vectors(dim)),
        lambda inner: st.one_of(
            st.builds(Add, inner, inner),
            st.builds(Join, inner, inner),
            st.builds(Meet, inner, inner),
            st.builds(Scale, rationals, inner),
        ),
        max_leaves=max_leaves,
    )


def normal_forms(dim, max_blocks=3, max_block=3):
    block = st.lists(vectors(dim), min_size=1, max_size=max_block)
    return st.lists(block, min_size=1, max_size=max_blocks).map(
        lambda bs: NormalForm.from_blocks(dim, bs))


# ---------------------------------------------------------------- brute-force oracles

def brute_sup_abs(f, box_halfspaces):
    """Exact ``max |f|`` over a bounded polytope, by enumerating vertices of
    the polytope refined by every switching hyperplane ``<v - w, x> = 0``.

    A piecewise-linear function is linear on each cell of that refinement,
    so its maximum sits at one of these points.  Uses only Gaussian
    elimination, no LP.
    """
    n = f.dim
    vecs = sorted({v for b in f.blocks for v in b})
    planes = [(a, b) for a, b in box_halfspaces]
    for v, w in combinations(vecs, 2):
        d = tuple(p - q for p, q in zip(v, w))
        if any(d):
            planes.append((d, Fraction(0)))
    best = Fraction(0)
    for chosen in combinations(planes, n):
        cols = [tuple(h[0][i] for h in chosen) for i in range(n)]
        x = solve_combination(cols, tuple(h[1] for h in chosen))
        if x is None:
            continue
        # solve_combination zero-fills free variables; accept only exact solutions
        if any(sum(a * c for a, c in zip(h[0], x)) != h[1] for h in chosen):
            continue
        if all(sum(a * c for a, c in zip(h, x)) <= r for h, r in box_halfspaces):
            val = max(min(sum(a * c for a, c in zip(v, x)) for v in b) for b in f.blocks)
            best = max(best, abs(val))
    return best
