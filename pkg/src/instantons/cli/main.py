"""Command-line entry point.

Exit codes: 0 success, 2 parse or validation error, 3 unsupported field
tower, 4 non-reduced curve or non-isolated singularity, 5 certification
failure, table mismatch or failed census check.
"""

import argparse
import json
import os
import sys

from ..algebra.bivariate import format_xy
from ..algebra.tower import TowerError
from ..bundle import ExtensionClassError, RawExtensionData, canonicalize, embed_next, from_curve, splits_on_neighborhood
from ..census import census, verify_stratification_bounds
from ..curves import ConsistencyError, SingularityError, curve_invariants
from ..direct_image import BoundViolation, Bounds, CertificationError, height, width
from .cache import ResultCache, cache_key
from .parser import ParseError, parse_bundle_class, parse_curve
from .records import InvariantRecord, format_report

EXIT_OK, EXIT_PARSE, EXIT_TOWER, EXIT_SINGULAR, EXIT_CERT = 0, 2, 3, 4, 5

TABLES = [
    ("I", "x^5*y - y^4", {"delta": 9, "milnor": 17, "tjurina": 17, "width": 10, "height": 6}),
    ("I", "x^8 - x^5*y^2 - x^3*y^2 + y^4", {"delta": 9, "milnor": 17, "tjurina": 15, "width": 8, "height": 6}),
    ("II", "x^2 - y^7", {"delta": 3, "milnor": 6, "tjurina": 6, "width": 3, "height": 5}),
    ("II", "x^3 - y^4", {"delta": 3, "milnor": 6, "tjurina": 6, "width": 6, "height": 6}),
]
TABLE_J = 4


class Context:
    def __init__(self, args):
        self.fmt = args.format
        md = args.max_degree if args.max_degree is not None else os.environ.get("INSTANTON_MAX_DEGREE")
        self.max_degree = int(md) if md not in (None, "") else None
        cdir = args.cache_dir or os.environ.get("INSTANTON_CACHE_DIR")
        self.cache = ResultCache(cdir) if cdir else None

    def bounds(self, j):
        return Bounds.default(j, self.max_degree)

    def cached(self, command, inputs, compute):
        """Return ``(record, hit)``; ``--max-degree`` is not part of the key."""
        if self.cache is None:
            return compute(), False
        key = cache_key(command, inputs)
        data = self.cache.lookup(key)
        if data is not None:
            try:
                return InvariantRecord.from_dict(data), True
            except TypeError:
                self.cache.warn("ignoring malformed cache entry; recomputing")
        rec = compute()
        self.cache.store(key, rec.to_dict())
        return rec, False


def bundle_record(text, j, p, ctx, kind="bundle"):
    b = canonicalize(RawExtensionData(j, p))
    w, h = width(b.j, b.p, ctx.bounds(b.j)), height(b.j, b.p)
    return InvariantRecord(text, b.j, width=w, height=h, charge=w + h, canonical_p=str(b.p), kind=kind)


def curve_record(text, j, ctx):
    g = parse_curve(text)
    b = from_curve(g, j)
    inv = curve_invariants(g)
    w, h = width(b.j, b.p, ctx.bounds(b.j)), height(b.j, b.p)
    return InvariantRecord(
        text, j, inv.delta, inv.milnor, inv.tjurina, w, h, w + h,
        inv.multiplicity, inv.branches, str(b.p), inv.consistent, "curve",
    )


def _positive_j(j):
    if j < 1:
        raise ExtensionClassError("splitting type must be a positive integer")
    return j


def cmd_curve(args, ctx):
    j = _positive_j(args.j)
    g = parse_curve(args.expr)
    rec, hit = ctx.cached("curve", {"curve": format_xy(g), "j": j}, lambda: curve_record(args.expr, j, ctx))
    rec.input = args.expr
    return [rec], hit


def cmd_bundle(args, ctx):
    j = _positive_j(args.j)
    p = parse_bundle_class(args.p)
    canon = canonicalize(RawExtensionData(j, p))
    rec, hit = ctx.cached(
        "bundle", {"p": str(canon.p), "j": j}, lambda: bundle_record(args.p, j, canon.p, ctx)
    )
    rec.input = args.p
    return [rec], hit


def cmd_embed(args, ctx):
    j = _positive_j(args.j)
    p = parse_bundle_class(args.p)
    img = embed_next(canonicalize(RawExtensionData(j, p)))
    if not splits_on_neighborhood(img, 2):
        raise BoundViolation("embedded class does not split on the second neighbourhood")
    rec, hit = ctx.cached(
        "bundle", {"p": str(img.p), "j": img.j}, lambda: bundle_record(str(img.p), img.j, img.p, ctx)
    )
    rec.input, rec.kind = args.p, "embed"
    return [rec], hit


def run_tables(ctx=None):
    """Recompute the reference tables at ``j = 4``; returns ``(records, report lines, ok)``."""
    ctx = ctx or Context(argparse.Namespace(format="text", max_degree=None, cache_dir=None))
    records, lines, ok = [], [], True
    for table, text, expected in TABLES:
        rec = curve_record(text, TABLE_J, ctx)
        records.append(rec)
        for name, want in expected.items():
            got = getattr(rec, name)
            good = got == want
            ok &= good
            lines.append(f"{'PASS' if good else 'FAIL'} table {table} {text!r} {name}: got {got}, expected {want}")
    return records, lines, ok


def cmd_tables(args, ctx):
    records, lines, ok = run_tables(ctx)
    if ctx.fmt == "text":
        sys.stdout.write(format_report(records, "text"))
        sys.stdout.write("\n".join(lines) + "\n")
    else:
        sys.stdout.write(format_report(records, ctx.fmt))
        for line in lines:
            print(line, file=sys.stderr)
    return EXIT_OK if ok else EXIT_CERT


def cmd_census(args, ctx):
    j = _positive_j(args.j)
    rep = census(j, args.samples, args.seed, args.range, exhaustive=args.exhaustive, bounds=ctx.bounds(j))
    ok = verify_stratification_bounds(rep)
    d = rep.as_dict()
    d["verified"] = ok
    if ctx.fmt == "json":
        print(json.dumps(d))
    elif ctx.fmt == "csv":
        print("j,width,height,count")
        for row in d["histogram"]:
            print(f"{j},{row['width']},{row['height']},{row['count']}")
    else:
        print(f"j={j} samples={rep.samples} range={rep.coeff_range} seed={rep.seed}")
        for row in d["histogram"]:
            print(f"  (w,h)=({row['width']},{row['height']})  k={row['width'] + row['height']}  count={row['count']}")
        key, frac = rep.majority()
        print(f"majority {key} fraction {frac:.3f}")
        for probe in d["probes"]:
            print(f"probe {probe['name']}: p={probe['p']} (w,h,k)=({probe['width']},{probe['height']},{probe['charge']}) {'ok' if probe['ok'] else 'FAILED'}")
        for v in rep.violations:
            print(f"violation: {v}")
        print("verified" if ok else "NOT verified")
    return EXIT_OK if ok else EXIT_CERT


def _global_options(parser, suppress):
    default = argparse.SUPPRESS if suppress else None
    parser.add_argument("--format", choices=["json", "csv", "text"], default=argparse.SUPPRESS if suppress else "text")
    parser.add_argument("--cache-dir", default=default)
    parser.add_argument("--max-degree", type=int, default=default,
                        help="cap on every truncation degree of the width computation")


def build_parser():
    parser = argparse.ArgumentParser(prog="instantons", description="Instanton numbers and curve invariants.")
    _global_options(parser, suppress=False)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("bundle", help="instanton numbers of E(j, p)")
    p.add_argument("-j", type=int, required=True)
    p.add_argument("-p", required=True, help="extension class in z, u")
    p.set_defaults(func=cmd_bundle)

    p = sub.add_parser("curve", help="curve invariants and instanton numbers")
    p.add_argument("-j", type=int, default=4)
    p.add_argument("expr")
    p.set_defaults(func=cmd_curve)

    p = sub.add_parser("tables", help="recompute the reference tables")
    p.set_defaults(func=cmd_tables)

    p = sub.add_parser("census", help="sample classes and tally strata")
    p.add_argument("-j", type=int, required=True)
    p.add_argument("--samples", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--range", type=int, default=3)
    p.add_argument("--exhaustive", action="store_true")
    p.set_defaults(func=cmd_census)

    p = sub.add_parser("embed", help="instanton numbers of the image (j+1, z u^2 p)")
    p.add_argument("-j", type=int, required=True)
    p.add_argument("-p", required=True)
    p.set_defaults(func=cmd_embed)

    for sp in sub.choices.values():
        _global_options(sp, suppress=True)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        ctx = Context(args)
        result = args.func(args, ctx)
        if isinstance(result, int):
            return result
        records, hit = result
        if hit:
            print("cache hit", file=sys.stderr)
        sys.stdout.write(format_report(records[0] if len(records) == 1 else records, ctx.fmt))
        return EXIT_OK
    except (ParseError, ExtensionClassError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except TowerError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_TOWER
    except SingularityError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_SINGULAR
    except (CertificationError, BoundViolation, ConsistencyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CERT


if __name__ == "__main__":
    sys.exit(main())
