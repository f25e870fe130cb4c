"""``modframe`` command line tool.

Exit codes: 0 success (a negative verdict is still a success), 1 failed
selftest, 2 unreadable input, 3 dimension mismatch, 4 violated precondition.
JSON goes to stdout, diagnostics to stderr.
"""

from __future__ import annotations

import argparse
import sys

import numpy as np

from . import approximation, duality, extension, frames, nonunital_model, sampling
from . import documents as docs
from .documents import DocumentError
from .errors import ExistenceFailure, PreconditionError, ShapeError
from .tolerances import frame_tolerance_from_env

EXIT_OK, EXIT_SELFTEST, EXIT_PARSE, EXIT_SHAPE, EXIT_PRECONDITION = 0, 1, 2, 3, 4


def _emit(obj):
    sys.stdout.write(docs.dumps(obj) + "\n")


def _frame(path):
    return docs.parse_frame(docs.load(path))


def cmd_analyze(args):
    _emit(frames.analyze(_frame(args.path), args.tol).as_dict())


def cmd_dual(args):
    f = _frame(args.path)
    frames._require_frame(f, args.tol)
    if args.param:
        g = duality.dual_from_parameter(f, docs.parse_operator(docs.load(args.param)))
    else:
        g = frames.canonical_dual(f)
    _emit(docs.frame_document(g))


def cmd_parseval_dual(args):
    _emit(docs.frame_document(duality.parseval_dual(_frame(args.path), args.tol)))


def cmd_unique_dual(args):
    f = _frame(args.path)
    frames._require_frame(f, args.tol)
    rep = duality.unique_dual_report(f)
    out = {"unique": rep.unique}
    if rep.unique:
        out.update(
            orthonormality_residual=rep.orthonormality_residual,
            gram_invertible=rep.gram_invertible,
            unitary_residual=rep.unitary_residual,
        )
    _emit(out)


def cmd_approx(args):
    f = _frame(args.path)
    frames._require_frame(f, args.tol)
    res = approximation.best_parseval(f) if args.mode == "parseval" else approximation.best_tight(f)
    out = res.as_dict()
    out["approx"] = docs.frame_document(res.approx)
    _emit(out)


def cmd_perturb(args):
    f, g = _frame(args.path_a), _frame(args.path_b)
    frames._require_frame(f, args.tol)
    _emit(approximation.perturb_check(f, g).as_dict())


def cmd_extend(args):
    f = _frame(args.path)
    if args.target == "frame":
        res = extension.extend_to_frame(f)
    else:
        res = extension.extend_to_parseval(f, args.tol)
    _emit(
        {
            "added": len(res.added),
            "A": res.lower,
            "B": res.upper,
            "input_B": res.input_upper,
            "residual": res.residual,
            "combined": docs.frame_document(res.combined),
        }
    )


def cmd_nonunital(args):
    vs = docs.parse_tail_system(docs.load(args.path))
    if args.action == "classify":
        _emit(nonunital_model.classify_finite_system(vs).as_dict())
    else:
        done = nonunital_model.outer_parseval_complete(vs)
        out = docs.tail_document(done)
        out["verdict"] = nonunital_model.classify_finite_system(done).as_dict()
        _emit(out)


def _selftest_checks(seed: int, trials: int) -> dict:
    rng = np.random.default_rng(seed)
    shapes = ([1], [2], [1, 2])
    ok = {"reconstruction": True, "bounds": True, "parseval_theta": True, "dual_parametrization": True,
          "extension": True, "nonunital_strict": True}
    for t in range(trials):
        shape = shapes[t % len(shapes)]
        m = int(rng.integers(1, 3))
        f = sampling.random_frame(rng, shape, m, m + int(rng.integers(0, 3)))
        x = sampling.random_vector(rng, shape, m)
        y = frames.reconstruct(f, frames.canonical_dual(f), x)
        ok["reconstruction"] &= (y - x).norm() <= 1e-9
        lo, hi = frames.optimal_bounds(f)
        lo2, hi2 = frames.bounds_from_norms(f)
        ok["bounds"] &= abs(lo - lo2) <= 1e-9 and abs(hi - hi2) <= 1e-9
        p = sampling.random_parseval(rng, shape, m, m + 1)
        ok["parseval_theta"] &= frames.is_parseval_by_theta(p) and frames.analyze(p).is_parseval
        param = sampling.random_operator(rng, shape, len(f), m)
        ok["dual_parametrization"] &= duality.is_dual(f, duality.dual_from_parameter(f, param)).ok
        b = sampling.random_bessel_unit(rng, shape, m, int(rng.integers(1, 4)))
        ok["extension"] &= extension.extend_to_parseval(b).residual <= 1e-8
        vs = sampling.random_tail_system(rng)
        v = nonunital_model.classify_finite_system(vs)
        ok["nonunital_strict"] &= v.strict_check == (v.lower > 0.0)
    return {k: bool(v) for k, v in ok.items()}


def cmd_selftest(args):
    checks = _selftest_checks(args.seed, args.trials)
    passed = all(checks.values())
    _emit({"seed": args.seed, "trials": args.trials, "checks": checks, "ok": passed})
    return EXIT_OK if passed else EXIT_SELFTEST


def _positive_float(text):
    value = float(text)
    if not value > 0.0:
        raise argparse.ArgumentTypeError("tolerance must be positive")
    return value


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--tol", type=_positive_float, default=None,
                        help="frame decision tolerance (default: $MODFRAME_TOL or 1e-8)")

    parser = argparse.ArgumentParser(prog="modframe", description="Frames in Hilbert C*-modules over finite-dimensional algebras.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", parents=[common], help="optimal frame bounds and type")
    p.add_argument("path")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("dual", parents=[common], help="canonical dual, or the dual for a parameter operator")
    p.add_argument("path")
    p.add_argument("--param", metavar="L.json", help="operator document for L: A^m -> A^N")
    p.set_defaults(func=cmd_dual)

    p = sub.add_parser("parseval-dual", parents=[common], help="a Parseval dual, if one exists")
    p.add_argument("path")
    p.set_defaults(func=cmd_parseval_dual)

    p = sub.add_parser("unique-dual", parents=[common], help="is the canonical dual the only dual")
    p.add_argument("path")
    p.set_defaults(func=cmd_unique_dual)

    p = sub.add_parser("approx", parents=[common], help="nearest Parseval or tight frame")
    p.add_argument("path")
    p.add_argument("--mode", choices=("parseval", "tight"), default="parseval")
    p.set_defaults(func=cmd_approx)

    p = sub.add_parser("perturb", parents=[common], help="perturbation verdict for B relative to A")
    p.add_argument("path_a")
    p.add_argument("path_b")
    p.set_defaults(func=cmd_perturb)

    p = sub.add_parser("extend", parents=[common], help="finite extension to a frame or a Parseval frame")
    p.add_argument("path")
    p.add_argument("--target", choices=("frame", "parseval"), default="parseval")
    p.set_defaults(func=cmd_extend)

    p = sub.add_parser("nonunital", parents=[common], help="sequence-algebra model: classify or complete")
    p.add_argument("path")
    p.add_argument("--action", choices=("classify", "complete"), default="classify")
    p.set_defaults(func=cmd_nonunital)

    p = sub.add_parser("selftest", parents=[common], help="randomised property checks")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--trials", type=int, default=20)
    p.set_defaults(func=cmd_selftest)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.tol is None:
            args.tol = frame_tolerance_from_env()
    except ValueError as exc:
        print(f"modframe: {exc}", file=sys.stderr)
        return EXIT_PARSE
    try:
        code = args.func(args)
    except DocumentError as exc:
        print(f"modframe: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except ShapeError as exc:
        print(f"modframe: dimension error: {exc}", file=sys.stderr)
        return EXIT_SHAPE
    except PreconditionError as exc:
        if isinstance(exc, ExistenceFailure):
            _emit({"error": type(exc).__name__, "reason": exc.reason})
        print(f"modframe: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    return EXIT_OK if code is None else code


if __name__ == "__main__":
    sys.exit(main())
