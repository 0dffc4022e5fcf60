"""Command-line interface.

Subcommands: gen, cut, partition, verify, measure-cut, render.
Exit codes: 0 success/verified, 1 verification failure, 2 input error,
3 cut not found / solver did not converge.
"""
from __future__ import annotations

import argparse
import sys

from . import formats
from .cuts import CutNotFound, hamburger_cut
from .generate import random_instance
from .measures import ConvergenceFailure, solve_hamburger, verify_measure_cut
from .partition import rainbow_partition, verify_partition
from .render import render_figure, save_svg

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_INPUT_ERROR = 2
EXIT_NOT_FOUND = 3


def _cmd_gen(args) -> int:
    sizes = None
    if args.sizes:
        try:
            sizes = tuple(int(s) for s in args.sizes.split(","))
        except ValueError:
            print(f"error: bad --sizes value {args.sizes!r}", file=sys.stderr)
            return EXIT_INPUT_ERROR
    inst = random_instance(args.d, args.n, sizes, args.seed)
    text = formats.dump_json(formats.instance_to_json(inst), args.out)
    if args.out is None:
        print(text)
    return EXIT_OK


def _cmd_cut(args) -> int:
    inst = formats.instance_from_json(formats.load_json_exact(args.instance))
    cut = hamburger_cut(inst, validate=True)
    text = formats.dump_json(formats.cut_to_json(cut), args.out)
    if args.out is None:
        print(text)
    return EXIT_OK


def _cmd_partition(args) -> int:
    inst = formats.instance_from_json(formats.load_json_exact(args.instance))
    result = rainbow_partition(inst)
    text = formats.dump_json(formats.partition_to_json(result), args.out)
    if args.out is None:
        print(text)
    return EXIT_OK


def _cmd_verify(args) -> int:
    inst = formats.instance_from_json(formats.load_json_exact(args.instance))
    result = formats.partition_from_json(formats.load_json_exact(args.partition))
    if result.d != inst.d:
        print(f"error: partition is {result.d}-dimensional, instance {inst.d}", file=sys.stderr)
        return EXIT_INPUT_ERROR
    report = verify_partition(inst, result)
    if report.ok:
        print(f"OK: {len(result.simplices)} disjoint rainbow simplices")
        return EXIT_OK
    for failure in report.failures:
        print(f"FAIL: {failure}")
    return EXIT_VERIFY_FAILED


def _cmd_measure_cut(args) -> int:
    model = formats.measure_model_from_json(formats.load_json_float(args.measure))
    solution = solve_hamburger(model, tol=args.tol, rng_seed=args.seed)
    report = verify_measure_cut(model, solution.u, tol=args.tol, mc_seed=args.seed)
    spec = solution.target
    doc = {
        "u": solution.u.tolist(),
        "masses": solution.masses.tolist(),
        "residual": solution.residual,
        "omega": spec.omega.tolist(),
        "bound": spec.bound,
        "target": {
            "t": spec.t,
            "order": list(spec.order),
            "a": spec.a.tolist(),
            "c": spec.c.tolist(),
            "projection_basis": solution.projection.tolist(),
        },
        "report": {
            "balanced_minus": report.balanced_minus,
            "balanced_plus": report.balanced_plus,
            "bound_minus_ok": report.bound_minus_ok,
            "bound_plus_ok": report.bound_plus_ok,
            "antipodal_ok": report.antipodal_ok,
            "monte_carlo_ok": report.mc_ok,
            "monte_carlo_prng": None if report.mc_detail is None else report.mc_detail.algorithm,
            "ok": report.ok,
        },
    }
    text = formats.dump_json(doc, args.out)
    if args.out is None:
        print(text)
    return EXIT_OK if report.ok else EXIT_VERIFY_FAILED


def _cmd_render(args) -> int:
    inst = formats.instance_from_json(formats.load_json_exact(args.instance))
    partition = None
    cut = None
    if args.partition:
        partition = formats.partition_from_json(formats.load_json_exact(args.partition))
    if args.cut:
        cut = formats.cut_from_json(formats.load_json_exact(args.cut))
    fig = render_figure(inst, partition=partition, cut=cut)
    save_svg(fig, args.out)
    print(f"wrote {args.out}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hamcut",
        description="Hamburger cuts and rainbow-simplex partitions of colored point sets.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="generate a random instance in general position")
    p.add_argument("--d", type=int, required=True, help="dimension (>= 2)")
    p.add_argument("--n", type=int, required=True, help="number of simplices (dn points)")
    p.add_argument("--sizes", help="comma-separated class sizes (default: near-even)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", help="output file (default: stdout)")
    p.set_defaults(func=_cmd_gen)

    p = sub.add_parser("cut", help="compute a hamburger cut of an instance")
    p.add_argument("instance", help="instance JSON file")
    p.add_argument("--out", help="output file (default: stdout)")
    p.set_defaults(func=_cmd_cut)

    p = sub.add_parser("partition", help="compute a rainbow-simplex partition")
    p.add_argument("instance", help="instance JSON file")
    p.add_argument("--out", help="output file (default: stdout)")
    p.set_defaults(func=_cmd_partition)

    p = sub.add_parser("verify", help="verify a partition against an instance")
    p.add_argument("instance", help="instance JSON file")
    p.add_argument("partition", help="partition JSON file")
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("measure-cut", help="solve the continuous mass-partition problem")
    p.add_argument("measure", help="measure model JSON file")
    p.add_argument("--tol", type=float, default=1e-6)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", help="output file (default: stdout)")
    p.set_defaults(func=_cmd_measure_cut)

    p = sub.add_parser("render", help="render a planar instance to SVG")
    p.add_argument("instance", help="instance JSON file")
    p.add_argument("--partition", help="partition JSON overlay")
    p.add_argument("--cut", help="cut JSON overlay")
    p.add_argument("--out", default="hamcut.svg", help="output SVG file")
    p.set_defaults(func=_cmd_render)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (formats.FormatError, FileNotFoundError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT_ERROR
    except (CutNotFound, ConvergenceFailure) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NOT_FOUND


if __name__ == "__main__":
    sys.exit(main())
