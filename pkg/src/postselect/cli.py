"""Command-line front end.

Subcommands read and write the JSON formats of :mod:`postselect.formats`:

* ``realize``: operator matrix -> realization (unitary, scale, gsp).
* ``suite-classify``: single-qubit suite -> trichotomy verdict.
* ``suite-exact``: suite -> exact realizer when one exists.
* ``suite-fit``: suite -> best exactly realizable approximation.
* ``mc-scaling``: measure-scaling experiment -> report JSON + CSV.
* ``channel``: realization unitary -> two-branch Kraus channel.
* ``cross-ratio``: four sphere points -> cross-ratio value.

Exit codes: 0 success; 1 I/O or parse failure; 2 domain error, with a
machine-readable {"error": code, "detail": text} on standard output;
64 usage errors (including unknown subcommands and missing seeds).
``--output -`` writes to standard output; otherwise the default output
path derives from the input stem.  Randomized subcommands take their
seed from ``--seed``, falling back to the POSTSELECT_SEED environment
variable, and are bit-reproducible given the seed.
"""

import argparse
import os
import pathlib
import sys

from . import formats
from .channel import build_kraus
from .errors import FormatError, PostselectError
from .projective import cross_ratio
from .realize import exact_realize
from .suites import FitOptions, classify_single_qubit, exact_realize_suite, \
    fit_suite
from .montecarlo import run_scaling_experiment

USAGE_EXIT = 64


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"{self.prog}: error: {message}\n")
        raise SystemExit(USAGE_EXIT)


class _Usage(Exception):
    """Bad option values detected after parsing."""


def _read_json(path):
    with open(path, "r", encoding="utf-8") as fh:
        return formats.loads(fh.read())


def _emit(text, output):
    if output == "-":
        sys.stdout.write(text + "\n")
    else:
        with open(output, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")


def _default_output(input_path, suffix):
    p = pathlib.Path(input_path)
    return str(p.with_name(f"{p.stem}.{suffix}.json"))


def _resolve_seed(args):
    if args.seed is not None:
        return args.seed
    env = os.environ.get("POSTSELECT_SEED")
    if env is not None:
        try:
            return int(env)
        except ValueError:
            raise _Usage(f"POSTSELECT_SEED must be an integer, got {env!r}")
    raise _Usage("a seed is required: pass --seed or set POSTSELECT_SEED")


def _cmd_realize(args):
    doc = _read_json(args.input)
    operator = formats.matrix_from_json(doc)
    result = exact_realize(operator, optimal=not args.literal)
    out = args.output or _default_output(args.input, "dilation")
    _emit(formats.dumps(formats.dilation_to_json(result)), out)
    return 0


def _cmd_suite_classify(args):
    sigma = formats.suite_from_json(_read_json(args.input))
    verdict = classify_single_qubit(sigma)
    out = args.output or _default_output(args.input, "verdict")
    _emit(formats.dumps({"verdict": verdict.value}), out)
    return 0


def _cmd_suite_exact(args):
    sigma = formats.suite_from_json(_read_json(args.input))
    realizer = exact_realize_suite(sigma)
    doc = {
        "realizable": realizer is not None,
        "L": None if realizer is None else formats.matrix_to_json(realizer),
    }
    out = args.output or _default_output(args.input, "exact")
    _emit(formats.dumps(doc), out)
    return 0


def _cmd_suite_fit(args):
    if args.restarts < 1 or args.max_iters < 1:
        raise _Usage("--restarts and --max-iters must be positive")
    sigma = formats.suite_from_json(_read_json(args.input))
    opts = FitOptions(restarts=args.restarts, max_iters=args.max_iters,
                      seed=_resolve_seed(args))
    result = fit_suite(sigma, opts)
    out = args.output or _default_output(args.input, "fit")
    _emit(formats.dumps(formats.fit_to_json(result)), out)
    return 0


def _cmd_mc_scaling(args):
    try:
        grid = [float(tok) for tok in args.eps.split(",") if tok]
    except ValueError:
        raise _Usage(f"--eps must be a comma-separated float list, "
                     f"got {args.eps!r}")
    if len(grid) < 3:
        raise _Usage("--eps needs at least three grid values")
    if any(not e > 0 for e in grid):
        raise _Usage("--eps values must be positive")
    if args.samples < 1:
        raise _Usage("--samples must be positive")
    if args.restarts < 1 or args.max_iters < 1:
        raise _Usage("--restarts and --max-iters must be positive")
    report = run_scaling_experiment(args.n, args.ell, grid, args.samples,
                                    _resolve_seed(args),
                                    restarts=args.restarts,
                                    max_iters=args.max_iters)
    _emit(formats.dumps(formats.scaling_to_json(report)), args.output)
    csv_path = args.csv
    if csv_path is None and args.output != "-":
        csv_path = str(pathlib.Path(args.output).with_suffix(".csv"))
    if csv_path is not None:
        with open(csv_path, "w", encoding="utf-8") as fh:
            fh.write(formats.scaling_to_csv(report))
    return 0


def _cmd_channel(args):
    doc = _read_json(args.input)
    unitary = formats.dilation_unitary_from_json(doc)
    chan = build_kraus(unitary)
    out = args.output or _default_output(args.input, "channel")
    _emit(formats.dumps(formats.channel_to_json(chan)), out)
    return 0


def _cmd_cross_ratio(args):
    doc = _read_json(args.input)
    if not isinstance(doc, dict) or "points" not in doc:
        raise FormatError("cross-ratio input needs a points list")
    points = doc["points"]
    if not isinstance(points, list) or len(points) != 4:
        raise FormatError("cross-ratio needs exactly four points")
    tetrad = [formats.sphere_point_from_json(entry) for entry in points]
    value = cross_ratio(*tetrad)
    out_doc = formats.riemann_to_json(value)
    out_doc["value"] = formats.riemann_to_value_json(value)
    out = args.output or _default_output(args.input, "cross")
    _emit(formats.dumps(out_doc), out)
    return 0


def _add_io(sub, default_help):
    sub.add_argument("--input", required=True, help="input JSON path")
    sub.add_argument("--output", default=None,
                     help=f"output path, - for stdout (default: "
                          f"{default_help})")


def build_parser():
    parser = _Parser(prog="postselect",
                     description="Post-selected unitary realizations and "
                                 "projective-linear suite fitting")
    commands = parser.add_subparsers(dest="command", metavar="subcommand")
    commands.required = True

    p = commands.add_parser("realize", parents=[], add_help=True,
                            help="realize an operator by a one-ancilla "
                                 "unitary")
    _add_io(p, "<input stem>.dilation.json")
    group = p.add_mutually_exclusive_group()
    group.add_argument("--optimal", action="store_true", default=False,
                       help="rescale for maximal guaranteed success "
                            "probability (default)")
    group.add_argument("--literal", action="store_true", default=False,
                       help="realize the operator itself when weakly "
                            "contracting")
    p.set_defaults(func=_cmd_realize)

    p = commands.add_parser("suite-classify",
                            help="single-qubit trichotomy verdict")
    _add_io(p, "<input stem>.verdict.json")
    p.set_defaults(func=_cmd_suite_classify)

    p = commands.add_parser("suite-exact",
                            help="exact realizer of a suite when one exists")
    _add_io(p, "<input stem>.exact.json")
    p.set_defaults(func=_cmd_suite_exact)

    p = commands.add_parser("suite-fit",
                            help="fit a suite by exactly realizable suites")
    _add_io(p, "<input stem>.fit.json")
    p.add_argument("--restarts", type=int, default=20)
    p.add_argument("--max-iters", type=int, default=500)
    p.add_argument("--seed", type=int, default=None,
                   help="fit seed (or POSTSELECT_SEED)")
    p.set_defaults(func=_cmd_suite_fit)

    p = commands.add_parser("mc-scaling",
                            help="measure-scaling Monte-Carlo experiment")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--ell", type=int, required=True)
    p.add_argument("--eps", required=True,
                   help="comma-separated grid, e.g. 0.05,0.1,0.2")
    p.add_argument("--samples", type=int, required=True)
    p.add_argument("--seed", type=int, default=None,
                   help="experiment seed (or POSTSELECT_SEED)")
    p.add_argument("--restarts", type=int, default=5)
    p.add_argument("--max-iters", type=int, default=500)
    p.add_argument("--output", default="scaling.json",
                   help="report path, - for stdout")
    p.add_argument("--csv", default=None,
                   help="fraction table path (default: output stem .csv)")
    p.set_defaults(func=_cmd_mc_scaling)

    p = commands.add_parser("channel",
                            help="two-branch Kraus channel of a realization "
                                 "unitary")
    _add_io(p, "<input stem>.channel.json")
    p.set_defaults(func=_cmd_channel)

    p = commands.add_parser("cross-ratio",
                            help="cross-ratio of four sphere points")
    _add_io(p, "<input stem>.cross.json")
    p.set_defaults(func=_cmd_cross_ratio)
    return parser


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if exc.code is not None else 0
    try:
        return args.func(args)
    except _Usage as exc:
        sys.stderr.write(f"postselect: error: {exc}\n")
        return USAGE_EXIT
    except PostselectError as exc:
        sys.stdout.write(
            formats.dumps({"error": exc.code, "detail": str(exc)}) + "\n")
        return 2
    except FormatError as exc:
        sys.stderr.write(f"postselect: parse error: {exc}\n")
        return 1
    except OSError as exc:
        sys.stderr.write(f"postselect: {exc}\n")
        return 1


if __name__ == "__main__":
    sys.exit(main())
