"""Command line interface: ``reebcone <command> ...`` (or ``python -m reebcone``).

Exit codes: 0 ok, 1 invalid input or failed check, 2 Reeb vector outside
the Reeb cone, 3 non-generic evaluation failure, 4 optimizer non-convergence.
"""
from __future__ import annotations

import argparse
import csv
import json
import math
import sys
import warnings
from fractions import Fraction

from . import _exact as ex
from . import catalog
from .cone import reeb_cone_contains, validate_good_cone
from .errors import (InvalidCone, NonConvergence, NotInReebCone, ReebConeError)
from .fixed_locus import dataset_from_cone, dataset_from_json
from .localize import FUNCTIONALS, directional_derivative, evaluate
from .optimize import build_slice, minimize, probe_boundary, subcone_chord
from .verify import verify_cone

EXIT_OK, EXIT_INPUT, EXIT_OUTSIDE, EXIT_LIMIT, EXIT_NONCONV = 0, 1, 2, 3, 4


class CliError(Exception):
    def __init__(self, message, code=EXIT_INPUT):
        super().__init__(message)
        self.code = code


def _dec(x):
    return format(x, ".17g")


def load_cone(source):
    """``catalog:NAME`` or a path to a cone JSON file."""
    if source.startswith("catalog:"):
        try:
            entry = catalog.get(source.split(":", 1)[1])
        except (KeyError, ValueError) as err:
            raise CliError(str(err)) from err
        return entry.cone, entry
    try:
        with open(source) as fh:
            data = json.load(fh)
    except json.JSONDecodeError as err:
        raise CliError(f"{source}: malformed JSON at line {err.lineno}, column {err.colno}: {err.msg}") from err
    except OSError as err:
        raise CliError(f"{source}: {err.strerror}") from err
    try:
        normals = data["normals"]
        k = data.get("rank")
        return validate_good_cone(normals, k, data.get("name", "")), None
    except (KeyError, TypeError) as err:
        raise CliError(f"{source}: cone JSON needs 'rank' and 'normals' ({err})") from err
    except InvalidCone as err:
        raise CliError(f"{source}: {err}") from err


def load_dataset(path):
    try:
        with open(path) as fh:
            return dataset_from_json(fh.read())
    except json.JSONDecodeError as err:
        raise CliError(f"{path}: malformed JSON at line {err.lineno}, column {err.colno}: {err.msg}") from err
    except OSError as err:
        raise CliError(f"{path}: {err.strerror}") from err
    except ReebConeError as err:
        raise CliError(f"{path}: {err}") from err


def _source(args):
    """(cone or None, dataset)."""
    if bool(args.cone) == bool(args.dataset):
        raise CliError("give exactly one of --cone or --dataset")
    if args.cone:
        cone, _ = load_cone(args.cone)
        return cone, dataset_from_cone(cone)
    return None, load_dataset(args.dataset)


def _vector(text, k, what):
    try:
        v = ex.parse_vector(text)
    except (ValueError, ZeroDivisionError) as err:
        raise CliError(f"cannot parse {what} {text!r}: {err}") from err
    if len(v) != k:
        raise CliError(f"{what} needs {k} components, got {len(v)}")
    return v


def _in_reeb_cone(cone, D, b):
    if cone is not None:
        return reeb_cone_contains(cone, b)
    return all(ex.dot(z.weights[0], b) > 0 for z in D.components)


# ---------------------------------------------------------------- commands

def cmd_validate(args, out):
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        cone, _ = load_cone(args.cone)
    for w in caught:
        print(f"warning: {w.message}", file=sys.stderr)
    report = {"name": cone.name, "rank": cone.rank, "normals": [list(u) for u in cone.normals],
              "labels": list(cone.labels), "rays": [list(r) for r in cone.rays], "good": True}
    print(json.dumps(report), file=out)
    return EXIT_OK


def cmd_eval(args, out):
    cone, D = _source(args)
    b = _vector(args.reeb, D.rank, "Reeb vector")
    if not _in_reeb_cone(cone, D, b):
        raise CliError(f"b = {args.reeb} is outside the Reeb cone", EXIT_OUTSIDE)
    try:
        val, used_limit = evaluate(args.functional, D, b)
    except ReebConeError as err:
        raise CliError(f"evaluation failed: {err}", EXIT_LIMIT) from err
    print(str(val), file=out)
    if not args.exact:
        print(_dec(val.float), file=out)
    if used_limit:
        print("note: b is not generic for the weights; value obtained as an exact limit", file=out)
    return EXIT_OK


def cmd_minimize(args, out):
    cone, D = _source(args)
    zeta = _vector(args.zeta, D.rank, "zeta") if args.zeta else None
    problem = build_slice(cone if cone is not None else D, zeta=zeta, target=args.functional,
                          starts=args.starts, seed=args.seed, tol=args.tol)
    try:
        report = minimize(problem)
    except NonConvergence as err:
        raise CliError(str(err), EXIT_NONCONV) from err
    d = report.to_dict()
    if not args.trace:
        d.pop("trace")
    print(json.dumps(d, indent=2), file=out)
    return EXIT_OK


def _plane(args, cone, D):
    if args.span:
        parts = args.span.split(";")
        if len(parts) != 2:
            raise CliError("--span needs two vectors separated by ';'")
        return tuple(_vector(p, D.rank, "span vector") for p in parts)
    if cone is None:
        raise CliError("--plane needs --cone; use --span with a dataset")
    try:
        i, j = (int(x) for x in args.plane.split(","))
    except ValueError as err:
        raise CliError(f"--plane expects two facet indices 'i,j': {err}") from err
    m = len(cone.normals)
    if not (1 <= i <= m and 1 <= j <= m) or i == j:
        raise CliError(f"--plane indices must be distinct and in 1..{m}")
    center = build_slice(cone).center
    return tuple(tuple(c + x for c, x in zip(center, cone.primitive_normals[a - 1]))
                 for a in (i, j))


def cmd_scan(args, out):
    cone, D = _source(args)
    if not (args.plane or args.span):
        raise CliError("give --plane i,j or --span 'b1;b2'")
    b1, b2 = _plane(args, cone, D)
    try:
        R1, R2 = subcone_chord(D, b1, b2)
    except ValueError as err:
        raise CliError(str(err)) from err
    d = tuple(y - x for x, y in zip(R1, R2))
    scale = math.pi ** (D.n + 1)
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(["t"] + [f"b{i + 1}" for i in range(D.rank)] + ["V", "S", "H", "dH/dt"])
    for i in range(args.grid):
        t = Fraction(i + 1, args.grid + 1)
        b = tuple(x + t * y for x, y in zip(R1, d))
        try:
            vals = [evaluate(f, D, b)[0].float for f in ("V", "S", "H")]
            dh = float(directional_derivative("H", D, b, d)) * scale
        except ReebConeError as err:
            raise CliError(f"evaluation failed at t={t}: {err}", EXIT_LIMIT) from err
        writer.writerow([_dec(float(t))] + [_dec(float(x)) for x in b]
                        + [_dec(v) for v in vals] + [_dec(dh)])
    return EXIT_OK


def cmd_probe_boundary(args, out):
    cone, D = _source(args)
    problem = build_slice(cone if cone is not None else D,
                          zeta=_vector(args.zeta, D.rank, "zeta") if args.zeta else None)
    target = _vector(args.target, D.rank, "target")
    base = _vector(args.base, D.rank, "base") if args.base else None
    try:
        res = probe_boundary(problem, target, base=base, steps=args.steps,
                             functionals=tuple(args.functionals.split(",")))
    except ValueError as err:
        raise CliError(str(err)) from err
    print(json.dumps(res.to_dict(), indent=2), file=out)
    return EXIT_OK if res.passed else EXIT_INPUT


def cmd_dataset(args, out):
    cone, _ = load_cone(args.cone)
    b_o = _vector(args.bo, cone.rank, "b_o") if args.bo else None
    if b_o is not None and not reeb_cone_contains(cone, b_o):
        raise CliError("b_o is outside the Reeb cone", EXIT_OUTSIDE)
    print(dataset_from_cone(cone, b_o).to_json(indent=2), file=out)
    return EXIT_OK


def cmd_catalog(args, out):
    rows = []
    for name, e in catalog.CATALOG.items():
        rows.append({"name": name, "normals": [list(u) for u in e.normals],
                     "provenance": e.provenance,
                     "anchors": [{"functional": a.functional, "b": list(a.b),
                                  "value": f"{ex.fmt(a.q)} * pi^{len(a.b)}",
                                  "provenance": a.provenance} for a in e.anchors]})
    if args.json:
        print(json.dumps(rows, indent=2), file=out)
    else:
        for r in rows:
            print(f"{r['name']:10s} {r['provenance']}", file=out)
    return EXIT_OK


def cmd_verify(args, out):
    if args.cone == "all":
        targets = [(e.cone, e) for e in catalog.CATALOG.values()]
    else:
        targets = [load_cone(args.cone)]
    failed = 0
    for cone, entry in targets:
        for r in verify_cone(cone, samples=args.samples, seed=args.seed, entry=entry):
            print(r.line(), file=out)
            failed += not r.passed
    return EXIT_OK if failed == 0 else EXIT_INPUT


# ---------------------------------------------------------------- parser

def _add_source(p):
    p.add_argument("--cone", help="catalog:NAME or cone JSON file")
    p.add_argument("--dataset", help="localization dataset JSON file")


def build_parser():
    ap = argparse.ArgumentParser(prog="reebcone", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="check a cone for goodness")
    p.add_argument("cone", help="catalog:NAME or cone JSON file")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("eval", help="evaluate V, S, H or H1 exactly")
    _add_source(p)
    p.add_argument("--reeb", required=True, help='Reeb vector, e.g. "1,3/2"')
    p.add_argument("--functional", choices=FUNCTIONALS, default="V")
    p.add_argument("--exact", action="store_true", help="print only the exact value")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("minimize", help="minimize over a transversal slice")
    _add_source(p)
    p.add_argument("--functional", choices=FUNCTIONALS, default="H")
    p.add_argument("--zeta", help="slice normalization covector")
    p.add_argument("--starts", type=int, default=16)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--tol", type=float, default=1e-10)
    p.add_argument("--trace", action="store_true", help="include per-start trace")
    p.set_defaults(func=cmd_minimize)

    p = sub.add_parser("scan", help="CSV of V, S, H along a 2D subcone")
    _add_source(p)
    p.add_argument("--plane", help="1-based facet indices i,j: span of center+u_i, center+u_j")
    p.add_argument("--span", help='two vectors "b1;b2" spanning the plane')
    p.add_argument("--grid", type=int, default=101)
    p.add_argument("--seed", type=int, default=0, help="accepted for uniformity; scans are deterministic")
    p.set_defaults(func=cmd_scan)

    p = sub.add_parser("probe-boundary", help="blow-up table approaching the slice boundary")
    _add_source(p)
    p.add_argument("--target", required=True, help="point on the boundary of the slice")
    p.add_argument("--base", help="interior base point (default: slice center)")
    p.add_argument("--zeta")
    p.add_argument("--steps", type=int, default=12)
    p.add_argument("--functionals", default="V,S,H")
    p.set_defaults(func=cmd_probe_boundary)

    p = sub.add_parser("dataset", help="export the localization dataset of a cone")
    p.add_argument("--cone", required=True)
    p.add_argument("--bo", help="slicing field (default: sum of primitive normals)")
    p.set_defaults(func=cmd_dataset)

    p = sub.add_parser("catalog", help="list built-in cones")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_catalog)

    p = sub.add_parser("verify", help="run the consistency suites")
    p.add_argument("--cone", default="all", help="catalog:NAME, a JSON file, or 'all'")
    p.add_argument("--samples", type=int, default=20)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_verify)
    return ap


def main(argv=None, out=None):
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    try:
        return args.func(args, out)
    except CliError as err:
        print(f"error: {err}", file=sys.stderr)
        return err.code
    except NotInReebCone as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_OUTSIDE
    except ReebConeError as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
