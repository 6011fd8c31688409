"""Command-line interface.

Exit codes: 0 success / bound holds, 1 bad input or flags, 2 local hypothesis
fails, 3 depth bound misconfigured.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import io
from .arrangement import depth
from .cover import greedy_cover
from .density import (
    LAMBDA_SLACK,
    DepthBoundError,
    check_hypothesis,
    default_depth_bound,
    global_ratio,
    make_certificate,
)
from .generators import RandomSpec, gen_counterexample, gen_hypercube_tight, gen_pentagon_tight, gen_random
from .geometry import Kind, NormBody, TolerancePolicy

EXIT_OK, EXIT_USAGE, EXIT_HYPOTHESIS, EXIT_BOUND = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _read_instance(path):
    try:
        if path == "-":
            return io.loads(sys.stdin.read())
        return io.load(path)
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc}") from None
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _emit(doc):
    json.dump(doc, sys.stdout, indent=1)
    sys.stdout.write("\n")


def _tol(args) -> TolerancePolicy:
    try:
        return TolerancePolicy(args.tol_abs, args.tol_rel)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def build_report(inst, depth_bound, tol):
    """Return ``(report_dict, exit_code, hypothesis, certificate)``."""
    hyp = check_hypothesis(inst, tol)
    ratio = global_ratio(inst)
    bound = inst.lam / depth_bound
    report = {
        "hypothesis": {
            "all_satisfied": hyp.all_satisfied,
            "members": [{"index": i, "red": r, "blue": b, "satisfied": ok}
                        for i, (r, b, ok) in enumerate(hyp.per_member)],
        },
        "certificate": None,
        "global_ratio": ratio,
        "bound": bound,
        "verdict": None,
    }
    cert = None
    if not hyp.all_satisfied:
        report["verdict"] = "hypothesis_fails"
        code = EXIT_HYPOTHESIS
    else:
        try:
            cert = make_certificate(inst, depth_bound, tol)
        except DepthBoundError as exc:
            report["verdict"] = "bound_misconfigured"
            report["error"] = str(exc)
            return report, EXIT_BOUND, hyp, None
        report["certificate"] = cert.to_json()
        holds = ratio >= bound - LAMBDA_SLACK
        report["verdict"] = "bound_holds" if holds else "bound_violated"
        code = EXIT_OK if holds else EXIT_BOUND
    return report, code, hyp, cert


def write_table(path, hyp, cert):
    chosen = set(cert.selected_indices) if cert else set()
    with open(path, "w") as fh:
        fh.write("index\tred\tblue\tsatisfied\tselected\n")
        for i, (r, b, ok) in enumerate(hyp.per_member):
            fh.write(f"{i}\t{r}\t{b}\t{int(ok)}\t{int(i in chosen)}\n")


def cmd_verify(args) -> int:
    inst = _read_instance(args.input)
    tol = _tol(args)
    if args.depth_bound == "auto":
        bound = default_depth_bound(inst.body)
    else:
        try:
            bound = int(args.depth_bound)
        except ValueError:
            raise UsageError(f"--depth-bound must be 'auto' or an integer, got {args.depth_bound!r}") from None
        if bound < 1:
            raise UsageError("--depth-bound must be positive")
    report, code, hyp, cert = build_report(inst, bound, tol)
    _emit(report)
    if args.table:
        write_table(args.table, hyp, cert)
    if args.figure:
        from .plotting import save_report_figure

        save_report_figure(args.figure, inst, hyp, cert)
    return code


def _body_from_flags(args, dim=2):
    if getattr(args, "sides", None):
        if dim != 2:
            raise UsageError("--sides needs --dim 2")
        try:
            return NormBody.regular_polygon(args.sides)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
    return NormBody(Kind(args.norm), dim)


def cmd_generate(args) -> int:
    try:
        if args.what == "pentagon":
            inst = gen_pentagon_tight()
        elif args.what == "hypercube":
            inst = gen_hypercube_tight(args.d)
        elif args.what == "counterexample":
            inst, witnesses = gen_counterexample(_body_from_flags(args), args.lam, args.eps, args.n)
            if args.witnesses:
                with open(args.witnesses, "w") as fh:
                    json.dump([{"point": list(w.center), "radius": w.ratio} for w in witnesses], fh)
                    fh.write("\n")
        else:
            body = _body_from_flags(args, args.dim)
            spec = RandomSpec(seed=args.seed, n_red=args.n, dim=args.dim, kind=body.kind,
                              radius_range=(args.radius_lo, args.radius_hi), box_side=args.box,
                              lam=args.lam, vertices=body.vertices)
            inst = gen_random(spec)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    sys.stdout.write(io.dumps(inst, indent=1) + "\n")
    return EXIT_OK


def cmd_cover(args) -> int:
    inst = _read_instance(args.input)
    if args.svg and inst.dim != 2:
        raise UsageError("--svg requires a planar instance (dim 2)")
    result = greedy_cover(inst.family, _tol(args))
    _emit(result.to_json())
    if args.svg:
        from .svg import render_svg

        with open(args.svg, "w") as fh:
            fh.write(render_svg(inst, result.selected_indices))
    return EXIT_OK


def _parse_probe(text, dim):
    try:
        coords = [float(c) for c in text.split(",")]
    except ValueError:
        raise UsageError(f"malformed probe {text!r}: expected comma-separated numbers") from None
    if len(coords) != dim:
        raise UsageError(f"probe has {len(coords)} coordinates, instance has dim {dim}")
    return coords


def cmd_depth(args) -> int:
    inst = _read_instance(args.input)
    probe = _parse_probe(args.probe, inst.dim)
    try:
        rep = depth(inst.family, probe, _tol(args))
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    _emit({"probe": list(rep.probe), "depth": rep.depth, "containing_indices": list(rep.containing_indices)})
    return EXIT_OK


def _add_tol(p):
    p.add_argument("--tol-abs", type=float, default=1e-9, help="absolute containment slack")
    p.add_argument("--tol-rel", type=float, default=1e-9, help="relative containment slack")


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="minkarr", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", help="check the local hypothesis and certify the global bound")
    p.add_argument("input", help="instance JSON file, or - for stdin")
    p.add_argument("--depth-bound", default="auto", help="'auto' or a positive integer")
    p.add_argument("--figure", help="also write a matplotlib figure (png/pdf/svg by extension)")
    p.add_argument("--table", help="also write per-member counts as tab-separated values")
    _add_tol(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("generate", help="write a generated instance to stdout")
    gsub = p.add_subparsers(dest="what", required=True)
    gsub.add_parser("pentagon")
    g = gsub.add_parser("hypercube")
    g.add_argument("--d", type=int, required=True)
    g = gsub.add_parser("counterexample")
    g.add_argument("--lambda", dest="lam", type=float, required=True)
    g.add_argument("--eps", type=float, required=True)
    g.add_argument("--n", type=int, required=True)
    g.add_argument("--norm", choices=["euclidean", "linf"], default="euclidean")
    g.add_argument("--sides", type=int, help="use a regular polygon with this many sides")
    g.add_argument("--witnesses", help="write the witness translates as JSON to this path")
    g = gsub.add_parser("random")
    g.add_argument("--seed", type=int, required=True)
    g.add_argument("--n", type=int, required=True)
    g.add_argument("--dim", type=int, default=2)
    g.add_argument("--norm", choices=["euclidean", "linf"], default="euclidean")
    g.add_argument("--sides", type=int, help="use a regular polygon with this many sides")
    g.add_argument("--radius-lo", type=float, default=0.5)
    g.add_argument("--radius-hi", type=float, default=2.0)
    g.add_argument("--box", type=float, default=10.0)
    g.add_argument("--lambda", dest="lam", type=float, default=1.0)
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("cover", help="greedy strict subfamily covering the red points")
    p.add_argument("input")
    p.add_argument("--svg", help="write an SVG drawing (planar instances only)")
    _add_tol(p)
    p.set_defaults(func=cmd_cover)

    p = sub.add_parser("depth", help="count red homothets containing a probe point")
    p.add_argument("input")
    p.add_argument("--probe", required=True, help="comma-separated coordinates, e.g. --probe=0,0")
    _add_tol(p)
    p.set_defaults(func=cmd_depth)
    return parser


def main(argv=None) -> int:
    parser = make_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"minkarr: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
