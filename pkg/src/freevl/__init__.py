"""Exact computations in free vector lattices over Q^n.

Elements are lattice expressions in vector generators.  They are realized as
positively homogeneous piecewise-linear functions ``x -> max_j min_i <v_ji, x>``
and compared with exact rational linear programming.
"""

from .errors import (
    DimensionMismatch,
    ExprSyntaxError,
    FreeVLError,
    MalformedBall,
    NotSeparating,
    ResourceLimit,
    UnknownLabel,
)
from .exprs import (
    Add, Gen, Join, Label, LatticeExpr, Meet, Scale,
    absolute, eval_expr, format_expr, parse_expr, parse_set_expr,
)
from .freeset import FinSupportFn, delta, pairing, realize_over_set
from .hom import (
    CoordinateLattice, FreeLattice, LinearMapSpec, Scalars,
    compose_free, factor_map, psi_embed, restrict_dual,
)
from .normal_form import (
    NormalForm, nf_add, nf_eval, nf_join, nf_meet, nf_prune, nf_scale, normalize,
)
from .norms import PolyhedralBall, cross_polytope, norm_faithful_check, sup_on_ball, unit_cube
from .order import (
    archimedean_witness, hull_contains_zero, meet_leq_zero, nf_eq, nf_is_zero, nf_leq,
    separating_witness,
)
from .rational_lp import Constraint, LinearProgram, LPOutcome, Objective, fm_decide_strict, lp_solve
from .vectors import vec

__version__ = "0.1.0"
