"""Command-line front end.

One subcommand per capability: ``pn`` and ``cn`` print polynomials,
``verify`` runs the structural identity checks, ``soddy-gen`` expands one
parameter tuple end to end, ``soddy-scan`` audits a parameter lattice,
``graham`` emits integer curvature quadruples, ``pyth`` enumerates
generalized Pythagorean triples, and ``flower check``/``flower render``
validate and draw a configuration given by radii.

Conventions: results go to stdout (or ``--out``), diagnostics to stderr.
Exit code 0 means success, 1 means a verification-style command found a
failure, 2 means the invocation itself was bad (unknown flags, out-of-range
sizes, malformed rationals).  Numeric inputs are exact rational strings
like ``23/2``; floats appear only in tolerances and reports.
FLOWERLAB_THREADS caps the worker count of the scan.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from fractions import Fraction

from . import discrepancy, flowerpoly, geometry, pythag, soddy
from .flowerpoly import DEFAULT_MAX_N, FlowerPolySet, SizeLimitError
from .ratpoly import parse_rational


class UsageError(Exception):
    pass


def _parse_radii(values: list[str]) -> list[Fraction]:
    try:
        radii = [parse_rational(v) for v in values]
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    if any(r <= 0 for r in radii):
        raise UsageError("radii must be strictly positive")
    return radii


def _emit(text: str, out_path: str | None, stdout) -> None:
    if out_path and out_path != "-":
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        stdout.write(text)


def _json_text(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


# -- subcommand handlers -----------------------------------------------------


def _cmd_pn(args, stdout, stderr) -> int:
    try:
        if args.route == "product":
            pn = flowerpoly.flower_poly_from_product(args.n)
        else:
            pn = flowerpoly.flower_poly(args.n, args.max_n)
    except (SizeLimitError, ValueError) as exc:
        raise UsageError(str(exc)) from exc
    if args.format == "text":
        _emit(pn.pretty() + "\n", args.out, stdout)
    else:
        bundle = FlowerPolySet(args.n, pn, provenance={"pn": args.route})
        _emit(_json_text(bundle.to_obj()), args.out, stdout)
    return 0


def _cmd_cn(args, stdout, stderr) -> int:
    try:
        pn = flowerpoly.flower_poly(args.n, args.max_n)
        cn = flowerpoly.closure_product_poly(args.n)
    except (SizeLimitError, ValueError) as exc:
        raise UsageError(str(exc)) from exc
    if args.format == "text":
        _emit(cn.pretty() + "\n", args.out, stdout)
    else:
        bundle = FlowerPolySet(
            args.n, pn, cn, provenance={"pn": "recursive", "cn": "definitional"}
        )
        _emit(_json_text(bundle.to_obj()), args.out, stdout)
    return 0


def _default_composition(n: int):
    if n == 3:
        return (2, 1)
    if n == 4:
        return (2, 2)
    if n == 5:
        return (2, 1, 2)
    return None


def _cmd_verify(args, stdout, stderr) -> int:
    n = args.n
    which = {
        "square": args.square,
        "symmetry": args.symmetry,
        "specialization": args.specialization,
        "recursion": args.recursion,
        "monic": args.monic,
    }
    if args.all or not any(which.values()):
        which = {k: True for k in which}
    if n < 2 or n > args.max_n:
        raise UsageError(f"verify supports n in 2..{args.max_n}, got {n}")

    reports: list[flowerpoly.CheckReport] = []
    skipped: list[str] = []
    if which["square"]:
        if 2 <= n <= 5:
            reports.append(flowerpoly.verify_square(n))
        else:
            skipped.append(f"square (needs n <= 5, got {n})")
    if which["symmetry"]:
        if n >= 3:
            import itertools
            import random

            if n <= 4:
                perms = list(itertools.permutations(range(n)))
            else:
                rng = random.Random(0)
                perms = rng.sample(list(itertools.permutations(range(n))), 40)
            reports.append(flowerpoly.verify_symmetry(n, perms))
        else:
            skipped.append("symmetry (the two-variable case is asymmetric by design)")
    if which["specialization"]:
        if 3 <= n <= 6:
            for i in range(n):
                reports.append(flowerpoly.verify_specialization(n, i))
        else:
            skipped.append(f"specialization (needs 3 <= n <= 6, got {n})")
    if which["recursion"]:
        comp = _default_composition(n)
        if comp:
            reports.append(flowerpoly.verify_general_recursion(n, comp))
        else:
            skipped.append(f"recursion (no default composition for n={n})")
    if which["monic"]:
        reports.append(flowerpoly.verify_monic(n))

    for msg in skipped:
        stderr.write(f"skipped: {msg}\n")
    ok = all(r.ok for r in reports)
    if args.format == "json":
        payload = [
            {"check": r.name, "n": r.n, "ok": r.ok, "detail": r.detail} for r in reports
        ]
        _emit(_json_text(payload), args.out, stdout)
    else:
        lines = []
        for r in reports:
            status = "ok" if r.ok else "FAIL"
            detail = f" ({r.detail})" if r.detail else ""
            lines.append(f"{status} {r.name} n={r.n}{detail}\n")
        _emit("".join(lines), args.out, stdout)
    return 0 if ok else 1


def _cmd_soddy_gen(args, stdout, stderr) -> int:
    m1, n1, m2, n2 = args.params
    try:
        params = soddy.SoddyParams(m1, n1, m2, n2)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    cosines = soddy.cosines_from_params(params)
    constraints = soddy.constraint_report(params)
    solved = soddy.solve_radii(cosines, tol=args.tol)
    ratios = soddy.graham_inverse(params)
    sines = [soddy.rational_sine(x) for x in cosines.as_tuple()]
    scaled = None
    if solved.valid_flowers:
        flower = solved.valid_flowers[0]
        scaled = soddy.integer_scale(flower.center, flower.petals).to_obj()
    payload = {
        "params": list(params.as_tuple()),
        "cosines": cosines.to_obj(),
        "sines": [None if s is None else str(s) for s in sines],
        "constraints": constraints.to_obj(),
        "solve": solved.to_obj(),
        "integer_scaled": scaled,
        "curvature_ratios": ratios.to_obj(),
    }
    if args.format == "text":
        lines = [
            f"params: {params.as_tuple()}",
            f"cosines: {', '.join(cosines.to_obj())}",
            f"constraints hold: {constraints.all_hold}",
            f"valid flowers: {[f.to_obj() for f in solved.valid_flowers]}",
        ]
        _emit("\n".join(lines) + "\n", args.out, stdout)
    else:
        _emit(_json_text(payload), args.out, stdout)
    return 0


def _cmd_soddy_scan(args, stdout, stderr) -> int:
    if args.bound < 1 or args.bound > 64:
        raise UsageError(f"scan bound must be in 1..64, got {args.bound}")
    result = soddy.scan_lattice(args.bound, workers=args.workers)
    if args.format == "csv":
        buf = []
        writer = csv.writer(_ListWriter(buf))
        writer.writerow(soddy.ScanRecord.CSV_FIELDS)
        for rec in result.records:
            writer.writerow(rec.csv_row())
        _emit("".join(buf), args.out, stdout)
    else:
        _emit(_json_text(result.to_obj()), args.out, stdout)
    stderr.write(f"scan summary: {json.dumps(result.summary)}\n")
    return 0


class _ListWriter:
    def __init__(self, sink: list):
        self.sink = sink

    def write(self, text: str) -> None:
        self.sink.append(text)


def _cmd_graham(args, stdout, stderr) -> int:
    if args.bound < 1:
        raise UsageError("bound must be at least 1")
    records = soddy.graham_quadruples(args.bound)
    if args.format == "csv":
        buf = []
        writer = csv.writer(_ListWriter(buf))
        writer.writerow(["x", "m", "d1", "d2", "b1", "b2", "b3", "b4", "degenerate"])
        for rec in records:
            writer.writerow(
                [rec.params.x, rec.params.m, rec.params.d1, rec.params.d2,
                 *rec.quad.to_obj(), int(rec.degenerate)]
            )
        _emit("".join(buf), args.out, stdout)
    else:
        lines = [json.dumps(rec.to_obj()) + "\n" for rec in records]
        _emit("".join(lines), args.out, stdout)
    return 0


def _cmd_pyth(args, stdout, stderr) -> int:
    try:
        if args.brute_force:
            triples = sorted(pythag.brute_force_triples(args.beta, args.bound))
            lines = [
                json.dumps({"beta": args.beta, "x": x, "y": y, "z": z}) + "\n"
                for x, y, z in triples
            ]
        else:
            solutions = pythag.generate_triples(args.beta, args.bound)
            lines = [json.dumps(s.to_obj()) + "\n" for s in solutions]
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    _emit("".join(lines), args.out, stdout)
    return 0


def _flower_config(args) -> geometry.FlowerConfig:
    radii = _parse_radii(args.radii)
    if len(radii) < 4:
        raise UsageError("need a center radius and at least three petal radii")
    try:
        return geometry.FlowerConfig(radii[0], tuple(radii[1:]))
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def _cmd_flower_check(args, stdout, stderr) -> int:
    config = _flower_config(args)
    try:
        report = geometry.validate_flower(config, tol=args.tol)
    except SizeLimitError as exc:
        raise UsageError(str(exc)) from exc
    if args.format == "text":
        verdict = "valid" if report.valid else "invalid: " + "; ".join(report.reasons)
        _emit(verdict + "\n", args.out, stdout)
    else:
        _emit(_json_text(report.to_obj()), args.out, stdout)
    return 0 if report.valid else 1


def _cmd_flower_render(args, stdout, stderr) -> int:
    config = _flower_config(args)
    try:
        placements = geometry.layout(config, tol=args.tol)
    except (ValueError, SizeLimitError) as exc:
        raise UsageError(str(exc)) from exc
    svg = geometry.render_svg(placements)
    _emit(svg, args.out, stdout)
    return 0


def _cmd_discrepancy(args, stdout, stderr) -> int:
    payload = {
        "radius_example": discrepancy.radius_example_report(tol=args.tol),
        "radius_expansion": discrepancy.radius_expansion_report(),
    }
    _emit(_json_text(payload), args.out, stdout)
    ok = (
        payload["radius_example"]["internal_agreement"]["all"]
        and payload["radius_expansion"]["computed_symmetric"]
        and payload["radius_expansion"]["constant_coefficient_ok"]
    )
    return 0 if ok else 1


# -- parser ---------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="flowerlab",
        description="Exact arithmetic for coin-graph flowers and tangent circles.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, fmt=("json", "text")):
        p.add_argument("--format", choices=fmt, default=fmt[0])
        p.add_argument("--out", help="write output to this file instead of stdout")

    p = sub.add_parser("pn", help="print the n-petal flower polynomial")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--max-n", type=int, default=DEFAULT_MAX_N,
                   help="size ceiling override")
    p.add_argument("--route", choices=("recursive", "product"), default="recursive",
                   help="construction route (product is gated to n <= 5)")
    common(p)
    p.set_defaults(func=_cmd_pn)

    p = sub.add_parser("cn", help="print the closure polynomial (square of pn)")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--max-n", type=int, default=DEFAULT_MAX_N)
    common(p)
    p.set_defaults(func=_cmd_cn)

    p = sub.add_parser("verify", help="run structural identity checks")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--max-n", type=int, default=DEFAULT_MAX_N)
    p.add_argument("--all", action="store_true")
    p.add_argument("--square", action="store_true")
    p.add_argument("--symmetry", action="store_true")
    p.add_argument("--specialization", action="store_true")
    p.add_argument("--recursion", action="store_true")
    p.add_argument("--monic", action="store_true")
    common(p, fmt=("text", "json"))
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("soddy-gen", help="expand one parameter tuple")
    p.add_argument("--params", type=int, nargs=4, required=True,
                   metavar=("M1", "N1", "M2", "N2"))
    p.add_argument("--tol", type=float, default=1e-9)
    common(p)
    p.set_defaults(func=_cmd_soddy_gen)

    p = sub.add_parser("soddy-scan", help="audit the parameter lattice")
    p.add_argument("--bound", type=int, required=True)
    p.add_argument("--workers", type=int, default=None,
                   help="worker processes (default: FLOWERLAB_THREADS or 1)")
    common(p, fmt=("json", "csv"))
    p.set_defaults(func=_cmd_soddy_scan)

    p = sub.add_parser("graham", help="integer curvature quadruples")
    p.add_argument("--bound", type=int, required=True)
    common(p, fmt=("json", "csv"))
    p.set_defaults(func=_cmd_graham)

    p = sub.add_parser("pyth", help="primitive solutions of x^2 + beta*y^2 = z^2")
    p.add_argument("--beta", type=int, required=True)
    p.add_argument("--bound", type=int, required=True)
    p.add_argument("--brute-force", action="store_true")
    common(p)
    p.set_defaults(func=_cmd_pyth)

    p = sub.add_parser("flower", help="validate or render a flower from radii")
    fsub = p.add_subparsers(dest="flower_command", required=True)

    pc = fsub.add_parser("check", help="validate a configuration")
    pc.add_argument("radii", nargs="+",
                    help="center radius then petal radii, integers or p/q")
    pc.add_argument("--tol", type=float, default=1e-9)
    common(pc)
    pc.set_defaults(func=_cmd_flower_check)

    pr = fsub.add_parser("render", help="write an SVG drawing")
    pr.add_argument("radii", nargs="+")
    pr.add_argument("--tol", type=float, default=1e-9)
    pr.add_argument("--out", required=True, help="output SVG path ('-' for stdout)")
    pr.set_defaults(func=_cmd_flower_render, format="svg")

    p = sub.add_parser("discrepancy",
                       help="recompute the recorded reference comparisons")
    p.add_argument("--tol", type=float, default=1e-9)
    common(p)
    p.set_defaults(func=_cmd_discrepancy)

    return parser


def run(argv, stdout=None, stderr=None) -> int:
    stdout = stdout if stdout is not None else sys.stdout
    stderr = stderr if stderr is not None else sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse prints its own message; normalize --help (exit 0) and
        # usage errors (exit 2).
        return int(exc.code or 0)
    try:
        return args.func(args, stdout, stderr)
    except UsageError as exc:
        stderr.write(f"error: {exc}\n")
        return 2
    except BrokenPipeError:  # pragma: no cover
        return 0


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
