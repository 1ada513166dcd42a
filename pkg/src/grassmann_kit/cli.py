"""Command-line interface: ``grassmann-kit <command> [options]``.

Exit codes: 0 success, 1 usage or invalid input, 2 numerical domain error,
3 I/O error. Errors are reported as one JSON object on stderr.
"""

import argparse
import json
import sys

import numpy as np

from . import grassmann, projector
from .exceptions import DomainError, GrassmannError, IllPosedError, RankDeficiencyError
from .experiment import METHODS, ExperimentConfig, records_to_csv, records_to_json, run_experiment
from .io import format_matrix, read_matrix, write_matrix
from .selftest import run_selftest
from .stiefel import random_stiefel

EXIT_OK, EXIT_USAGE, EXIT_DOMAIN, EXIT_IO = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _matrix_json(M):
    return [[float(x) for x in row] for row in np.atleast_2d(M)]


def _emit(payload, out=None):
    text = json.dumps(payload, indent=2) + "\n"
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _meta(command, U, **extra):
    meta = {"command": command, "n": int(U.shape[0]), "p": int(U.shape[1])}
    meta.update(extra)
    return meta


def cmd_gen(args):
    if args.count < 1:
        raise UsageError("--count must be at least 1")
    rng = np.random.default_rng(args.seed)
    mats = [random_stiefel(args.n, args.p, rng) for _ in range(args.count)]
    if args.out is None:
        sys.stdout.write("".join(format_matrix(M) for M in mats))
        return
    if args.count == 1:
        write_matrix(args.out, mats[0])
        return
    stem, dot, ext = args.out.rpartition(".")
    for k, M in enumerate(mats):
        path = f"{stem}_{k}.{ext}" if dot else f"{args.out}_{k}"
        write_matrix(path, M)


def cmd_exp(args):
    U, D = read_matrix(args.U), read_matrix(args.D)
    Y = grassmann.exp(U, D, args.t)
    _emit({**_meta("exp", U, t=args.t), "result": _matrix_json(Y)}, args.out)


def cmd_log(args):
    U, Y = read_matrix(args.U), read_matrix(args.Y)
    payload = _meta("log", U, method=args.method, cut_tol=grassmann.CUT_TOL)
    payload["cut_locus"] = grassmann.in_cut_locus(U, Y)
    if args.method == "projector":
        # n x n route; refuses cut points with a domain error
        Delta = projector.log_projector(projector.from_onb(U), projector.from_onb(Y))
        payload["result"] = _matrix_json(Delta @ U)
    else:
        D, Ystar = grassmann.log_extended(U, Y)
        payload["result"] = _matrix_json(D)
        payload["ystar"] = _matrix_json(Ystar)
    _emit(payload, args.out)


def cmd_dist(args):
    U, Y = read_matrix(args.U), read_matrix(args.Y)
    d = grassmann.distance(U, Y, method=args.method)
    _emit({**_meta("dist", U, method=args.method), "result": d}, args.out)


def cmd_angles(args):
    U, Y = read_matrix(args.U), read_matrix(args.Y)
    theta = grassmann.principal_angles(U, Y)
    _emit({**_meta("angles", U), "result": [float(x) for x in theta]}, args.out)


def cmd_transport(args):
    U = read_matrix(args.U)
    G, D = read_matrix(args.Gamma), read_matrix(args.Delta)
    T = grassmann.parallel_transport(U, G, D, args.t)
    Y = grassmann.exp(U, G, args.t)
    payload = {**_meta("transport", U, t=args.t), "result": _matrix_json(T), "base": _matrix_json(Y)}
    _emit(payload, args.out)


def cmd_curvature(args):
    U = read_matrix(args.U)
    D1, D2 = read_matrix(args.D1), read_matrix(args.D2)
    K = grassmann.sectional_curvature(U, D1, D2)
    _emit({**_meta("curvature", U, plane_tol=grassmann.PLANE_TOL), "result": K}, args.out)


def cmd_fig3(args):
    config = ExperimentConfig(
        n=args.n,
        p=args.p,
        tau_min=args.tau_min,
        tau_max=args.tau_max,
        tau_steps=args.tau_steps,
        trials=args.trials,
        seed=args.seed,
        method=args.method,
    )
    records = run_experiment(config)
    text = records_to_csv(records) if args.format == "csv" else records_to_json(records, config)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_selftest(args):
    report = run_selftest(args.level)
    sys.stdout.write(report.format() + "\n")
    return EXIT_OK if report.passed else EXIT_DOMAIN


def build_parser():
    parser = _Parser(prog="grassmann-kit", description="Grassmann manifold computations.")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True

    p = sub.add_parser("gen", help="random Stiefel representatives")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--count", type=int, default=1)
    p.add_argument("--out", help="output file (suffixed _k when --count > 1); stdout if omitted")
    p.set_defaults(func=cmd_gen)

    def query(name, files, func, help, t=False):
        q = sub.add_parser(name, help=help)
        for f in files:
            q.add_argument(f, help=f"matrix file for {f}")
        if t:
            q.add_argument("--t", type=float, default=1.0)
        q.add_argument("--out", help="write JSON here instead of stdout")
        q.set_defaults(func=func)
        return q

    query("exp", ["U", "D"], cmd_exp, "geodesic endpoint exp_U(t D)", t=True)
    q = query("log", ["U", "Y"], cmd_log, "horizontal lift of the logarithm")
    q.add_argument("--method", choices=["extended", "projector"], default="extended")
    q = query("dist", ["U", "Y"], cmd_dist, "geodesic distance")
    q.add_argument("--method", choices=["accurate", "arccos"], default="accurate")
    query("angles", ["U", "Y"], cmd_angles, "principal angles (ascending)")
    query("transport", ["U", "Gamma", "Delta"], cmd_transport, "parallel transport", t=True)
    query("curvature", ["U", "D1", "D2"], cmd_curvature, "sectional curvature")

    p = sub.add_parser("fig3", help="log accuracy near the cut locus")
    p.add_argument("--n", type=int, default=100)
    p.add_argument("--p", type=int, default=20)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--tau-min", type=float, default=1e-16)
    p.add_argument("--tau-max", type=float, default=1.0)
    p.add_argument("--tau-steps", type=int, default=60)
    p.add_argument("--trials", type=int, default=10)
    p.add_argument("--method", choices=("all",) + METHODS, default="all")
    p.add_argument("--format", choices=["csv", "json"], default="csv")
    p.add_argument("--out")
    p.set_defaults(func=cmd_fig3)

    p = sub.add_parser("selftest", help="run the built-in invariant suites")
    p.add_argument("--level", choices=["quick", "full"], default="quick")
    p.set_defaults(func=cmd_selftest)
    return parser


def _fail(code, kind, message):
    sys.stderr.write(json.dumps({"error": kind, "message": message, "exit_code": code}) + "\n")
    return code


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        rc = args.func(args)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        return _fail(EXIT_USAGE, "UsageError", str(exc))
    except (DomainError, IllPosedError, RankDeficiencyError) as exc:
        return _fail(EXIT_DOMAIN, type(exc).__name__, str(exc))
    except GrassmannError as exc:
        return _fail(EXIT_USAGE, type(exc).__name__, str(exc))
    except OSError as exc:
        return _fail(EXIT_IO, "IOError", f"{getattr(exc, 'filename', None) or ''}: {exc.strerror or exc}")
    return rc or EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
