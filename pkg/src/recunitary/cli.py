"""Command-line interface.

Exit codes: 0 ok, 1 I/O failure, 2 malformed input or flags, 3 verification
failure, 4 non-finite numeric input.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys

from . import cxcore
from .decompose import INPUT_TOL, canonicalize, decompose_raw
from .errors import NonFiniteError, NotUnitaryError, UnitaryError
from .formats import (
    dump_json,
    matrix_to_dict,
    params_to_dict,
    raw_to_dict,
    read_matrix,
    read_params,
)
from .gauge import compose_parameters
from .toolkit import FitConfig, fit, sample_parameters, verify

logger = logging.getLogger("recunitary")

EXIT_OK = 0
EXIT_IO = 1
EXIT_MALFORMED = 2
EXIT_VERIFY = 3
EXIT_NUMERIC = 4


def cmd_compose(args) -> int:
    p = read_params(args.params)
    x = compose_parameters(p)
    dump_json(args.matrix, matrix_to_dict(x))
    print(f"unitarity deviation: {cxcore.unitarity_deviation(x):.3e}", file=sys.stderr)
    return EXIT_OK


def cmd_decompose(args) -> int:
    x = read_matrix(args.matrix)
    try:
        raw = decompose_raw(x, tolerance=args.tolerance)
    except NotUnitaryError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VERIFY
    doc = raw_to_dict(raw) if args.raw else params_to_dict(canonicalize(raw))
    dump_json(args.params, doc)
    return EXIT_OK


def cmd_sample(args) -> int:
    if args.n < 1:
        print(f"error: --n must be at least 1, got {args.n}", file=sys.stderr)
        return EXIT_MALFORMED
    p = sample_parameters(args.n, args.seed)
    dump_json(args.params, params_to_dict(p))
    if args.matrix_out:
        dump_json(args.matrix_out, matrix_to_dict(compose_parameters(p)))
    return EXIT_OK


def cmd_verify(args) -> int:
    report = verify(read_matrix(args.matrix), args.tolerance)
    print(json.dumps(report.to_dict()))
    return EXIT_OK if report.passed else EXIT_VERIFY


def cmd_fit(args) -> int:
    target = read_matrix(args.matrix)
    config = FitConfig(
        max_iterations=args.max_iterations,
        gradient_step=args.gradient_step,
        learning_rate=args.learning_rate,
        convergence_tol=args.convergence_tol,
        seed_count=args.restarts,
        rng_seed=args.seed,
    )
    p, distance = fit(target, config)
    dump_json(args.params, params_to_dict(p))
    print(json.dumps({"distance": distance}))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    defaults = FitConfig()
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--tolerance", type=float, default=INPUT_TOL,
                        help="unitarity tolerance (default: %(default)g)")
    common.add_argument("--seed", type=int, default=0, help="random seed (default: 0)")
    common.add_argument("-v", "--verbose", action="store_true")

    parser = argparse.ArgumentParser(
        prog="recunitary",
        description="Compose, decompose, sample, verify and fit recursively parameterised unitary matrices.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("compose", parents=[common], help="parameter file -> matrix file")
    p.add_argument("params")
    p.add_argument("matrix")
    p.set_defaults(func=cmd_compose)

    p = sub.add_parser("decompose", parents=[common], help="matrix file -> parameter file")
    p.add_argument("matrix")
    p.add_argument("params")
    p.add_argument("--raw", action="store_true", help="write the peel output before gauge fixing")
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("sample", parents=[common], help="write a random parameter file")
    p.add_argument("params")
    p.add_argument("--n", type=int, required=True, help="matrix dimension")
    p.add_argument("--matrix-out", help="also write the composed matrix here")
    p.set_defaults(func=cmd_sample)

    p = sub.add_parser("verify", parents=[common], help="check a matrix file for unitarity")
    p.add_argument("matrix")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("fit", parents=[common], help="fit parameters to any square matrix")
    p.add_argument("matrix")
    p.add_argument("params")
    p.add_argument("--max-iterations", type=int, default=defaults.max_iterations)
    p.add_argument("--gradient-step", type=float, default=defaults.gradient_step)
    p.add_argument("--learning-rate", type=float, default=defaults.learning_rate)
    p.add_argument("--convergence-tol", type=float, default=defaults.convergence_tol)
    p.add_argument("--restarts", type=int, default=defaults.seed_count)
    p.set_defaults(func=cmd_fit)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.WARNING,
        format="%(levelname)s: %(message)s",
        stream=sys.stderr,
    )
    try:
        return args.func(args)
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except NonFiniteError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except NotUnitaryError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VERIFY
    except UnitaryError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_MALFORMED


if __name__ == "__main__":
    sys.exit(main())
