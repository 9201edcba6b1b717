"""``freevl`` command-line front end.

Verdicts are printed, never encoded in the exit status: 0 means the
computation finished, 2 a parse or usage error, 3 a dimension error.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import List, Optional

from . import hom, norms, order
from .errors import DimensionMismatch, FreeVLError
from .exprs import eval_expr, parse_expr, parse_set_expr, parse_vector, parse_vector_list
from .freeset import labels_in, realize_over_set
from .normal_form import NormalForm, nf_eval, nf_prune, normalize
from .vectors import format_vector

EXIT_USAGE = 2
EXIT_DIMENSION = 3


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(message)


def _bool(b: bool) -> str:
    return "true" if b else "false"


def _vec_json(v):
    return [str(c) for c in v]


class _Runner:
    def __init__(self, args, out):
        self.args = args
        self.out = out

    def emit(self, plain: str, obj=None):
        if self.args.json and obj is not None:
            print(json.dumps(obj), file=self.out)
        else:
            print(plain, file=self.out)

    def nf(self, text: str) -> NormalForm:
        f = normalize(parse_expr(text, self.args.dim))
        return nf_prune(f) if self.args.prune else f

    def pair(self):
        f, g = self.nf(self.args.f), self.nf(self.args.g)
        if f.dim != g.dim:
            raise DimensionMismatch(f"operands have dimensions {f.dim} and {g.dim}")
        return f, g

    def cmd_normalize(self):
        f = self.nf(self.args.expr)
        self.emit(f.to_json(), f.to_json_obj())

    def cmd_eval(self):
        e = parse_expr(self.args.expr, self.args.dim)
        x = parse_vector(self.args.at, self.args.dim)
        value = eval_expr(e, x)
        self.emit(str(value), {"value": str(value)})

    def _verdict(self, holds: bool, f, g, witness):
        obj = {"result": holds}
        extra = None
        if self.args.witness and witness is not None:
            extra = {"witness": _vec_json(witness),
                     "lhs": str(nf_eval(f, witness)), "rhs": str(nf_eval(g, witness))}
            obj.update(extra)
        if self.args.json:
            print(json.dumps(obj), file=self.out)
            return
        print(_bool(holds), file=self.out)
        if extra is not None:
            print(json.dumps(extra), file=self.out)

    def cmd_leq(self):
        f, g = self.pair()
        x = order.leq_counterexample(f, g, self.args.jobs)
        self._verdict(x is None, f, g, x)

    def cmd_eq(self):
        f, g = self.pair()
        x = order.separating_witness(f, g, self.args.jobs)
        self._verdict(x is None, f, g, x)

    def cmd_zero(self):
        f = self.nf(self.args.expr)
        z = NormalForm.zero(f.dim)
        x = order.separating_witness(f, z, self.args.jobs)
        self._verdict(x is None, f, z, x)

    def cmd_hull(self):
        res = order.hull_contains_zero(parse_vector_list(self.args.vectors))
        if res.contains_zero:
            obj = {"contains_zero": True, "weights": _vec_json(res.weights)}
        else:
            obj = {"contains_zero": False, "separator": _vec_json(res.separator)}
        print(json.dumps(obj), file=self.out)

    def cmd_supnorm(self):
        f = self.nf(self.args.expr)
        spec = self.args.ball
        if spec in ("cube", "cross"):
            ball = norms.unit_cube(f.dim) if spec == "cube" else norms.cross_polytope(f.dim)
        else:
            ball = norms.PolyhedralBall.from_json(spec)
        value = norms.sup_on_ball(f, ball)
        self.emit(str(value), {"value": str(value)})

    def cmd_factor(self):
        target = hom.parse_target(self.args.target)
        phi = hom.LinearMapSpec.from_json(self.args.map)
        value = hom.factor_map(phi, target, parse_expr(self.args.expr, self.args.dim))
        if isinstance(target, hom.Scalars):
            self.emit(str(value), {"value": str(value)})
        elif isinstance(target, hom.CoordinateLattice):
            self.emit(format_vector(value), {"value": _vec_json(value)})
        else:
            f = nf_prune(value) if self.args.prune else value
            self.emit(f.to_json(), f.to_json_obj())

    def cmd_set_normalize(self):
        e = parse_set_expr(self.args.expr)
        labels = self.args.labels.split(",") if self.args.labels else labels_in(e)
        f = realize_over_set(labels, e)
        if self.args.prune:
            f = nf_prune(f)
        self.emit(f.to_json(), {"labels": sorted(set(labels)), "normal_form": f.to_json_obj()})

    def cmd_archimedean(self):
        f, g = self.pair()
        n = order.archimedean_witness(f, g)
        self.emit("none" if n is None else str(n), {"n": n})

    def cmd_separate(self):
        f, g = self.pair()
        x = order.separating_witness(f, g, self.args.jobs)
        if x is None:
            self.emit("none", {"witness": None})
        else:
            self.emit(format_vector(x), {"witness": _vec_json(x)})


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("-d", "--dim", type=int, default=None,
                        help="length of every vector literal")
    common.add_argument("--json", action="store_true", help="machine-readable JSON output")
    common.add_argument("--witness", action="store_true",
                        help="print a certificate point for negative verdicts")
    common.add_argument("--prune", action="store_true",
                        help="drop dominated blocks from normal forms")
    common.add_argument("--jobs", type=int, default=1, help="worker processes for LP checks")

    parser = _Parser(prog="freevl", description=__doc__.splitlines()[0], parents=[common])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, help, *positional):
        p = sub.add_parser(name, help=help, parents=[common])
        for arg in positional:
            p.add_argument(arg)
        return p

    add("normalize", "print the join-of-meets normal form as JSON", "expr")
    add("eval", "evaluate at a point", "expr").add_argument("--at", required=True)
    add("leq", "decide f <= g", "f", "g")
    add("eq", "decide f = g", "f", "g")
    add("zero", "decide f = 0", "expr")
    add("hull", "is 0 in the convex hull of the vectors?", "vectors")
    add("supnorm", "sup of |f| over a polyhedral ball", "expr").add_argument(
        "--ball", default="cube", help="'cube', 'cross', or ball JSON")
    p = add("factor", "apply the lattice homomorphism extending a linear map", "expr")
    p.add_argument("--target", required=True, help="scalars | coord:m | free:n")
    p.add_argument("--map", required=True, help='{"rows": [...]} or {"images": [...]}')
    add("set-normalize", "normal form of an expression over set labels", "expr").add_argument(
        "--labels", default=None, help="comma-separated label set (default: labels used)")
    add("archimedean", "least n with n f not below g", "f", "g")
    add("separate", "a unit-cube point where f and g differ", "f", "g")
    return parser


def run(argv: Optional[List[str]] = None, out=None) -> int:
    out = sys.stdout if out is None else out
    try:
        args = build_parser().parse_args(argv)
    except _UsageError as exc:
        print(f"freevl: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    runner = _Runner(args, out)
    try:
        getattr(runner, "cmd_" + args.command.replace("-", "_"))()
    except DimensionMismatch as exc:
        print(f"freevl: dimension error: {exc}", file=sys.stderr)
        return EXIT_DIMENSION
    except (FreeVLError, ValueError, KeyError, TypeError) as exc:
        # includes UnknownLabel, malformed JSON and bad rationals
        print(f"freevl: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    return 0


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
