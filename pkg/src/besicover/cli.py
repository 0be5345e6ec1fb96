"""Command-line front end.

Exit status: 0 on success, 1 when a check fails (invalid metric, violated
bound, failing gallery case), 2 on usage or input errors.  Reports are JSON,
written to ``--json PATH`` or standard output, and are byte-identical for
identical arguments.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys

from . import __version__
from .besicovitch import besicovitch_constant
from .covering import besicovitch_cover, disjoint_rearrangement, equal_radius_cover, localized_cover
from .doubling import doubling_constant
from .errors import BesicoverError, BoundViolated, NotAMetric, SpaceParseError
from .exact import as_rational, format_rational
from .gallery import CASES, run_case
from .generators import parse_gen
from .metric import Ball, Kind, is_ultrametric, validate_metric
from .nets import greedy_maximal_net, is_maximal, verify_net
from .spaceio import dumps_space, load_space

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(message)


def _rationals(text: str) -> list:
    try:
        return [as_rational(t) for t in text.split(",") if t.strip()]
    except (ValueError, TypeError) as exc:
        raise _UsageError(f"bad rational list {text!r}: {exc}") from None


def _points(text: str | None, space) -> list[int]:
    if text is None or text == "all":
        return list(range(space.n))
    out = []
    for tok in text.split(","):
        tok = tok.strip()
        if not tok:
            continue
        if tok.isdigit():
            out.append(int(tok))
        else:
            try:
                out.append(space.index_of(tok))
            except (KeyError, ValueError):
                raise _UsageError(f"unknown point {tok!r}") from None
    if any(not 0 <= p < space.n for p in out):
        raise _UsageError("point index out of range")
    return sorted(set(out))


def _space(args):
    if getattr(args, "gen", None):
        spec = args.gen
        if spec.startswith(("random_ultra", "random_ultrametric")) and spec.count(":") == 1:
            spec += f":{args.seed}"
        try:
            return parse_gen(spec)
        except (ValueError, IndexError) as exc:
            raise _UsageError(f"bad generator {args.gen!r}: {exc}") from None
    path = getattr(args, "space", None) or getattr(args, "file", None)
    if not path:
        raise _UsageError("give a space with --gen SPEC or --space FILE")
    return load_space(path, validate=args.command != "validate")


def _header(space) -> dict:
    return {"tool": "besicover", "version": __version__,
            "space": {"name": space.name, "n": space.n, "content_hash": space.content_hash}}


def _emit(args, report: dict) -> None:
    text = json.dumps(report, indent=2, sort_keys=True) + "\n"
    if getattr(args, "json", None):
        with open(args.json, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# ---------------------------------------------------------------------------
# verbs


def cmd_generate(args) -> int:
    space = _space(args)
    text = dumps_space(space)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_validate(args) -> int:
    space = _space(args)
    v = validate_metric(space)
    rep = _header(space)
    rep.update({"valid": v.valid, "reason": v.reason,
                "witness": list(v.witness) if v.witness else None})
    if v.valid:
        u = is_ultrametric(space)
        rep["ultrametric"] = u.ultra
        rep["diameter"] = format_rational(space.diameter) if not space.squared else None
    else:
        print(f"not a metric: {v.reason} (witness {v.witness})", file=sys.stderr)
    _emit(args, rep)
    return EXIT_OK if v.valid else EXIT_FAIL


def cmd_nets(args) -> int:
    space = _space(args)
    r = as_rational(args.r)
    scope = _points(args.scope, space)
    net = greedy_maximal_net(space, scope, r, args.strict)
    check = verify_net(space, net)
    rep = _header(space)
    rep.update({"net": net.to_dict(), "size": len(net), "valid": check.ok,
                "maximal": is_maximal(space, net)})
    _emit(args, rep)
    return EXIT_OK if check.ok else EXIT_FAIL


def cmd_doubling(args) -> int:
    space = _space(args)
    radii = _rationals(args.radii) if args.radii else None
    d = doubling_constant(space, args.kind, args.method, radii=radii, threads=args.threads)
    w = next(p for p in d.per_ball if p.ball == d.witness_ball)
    rep = _header(space)
    rep.update({"D": d.D, "kind": d.kind.value, "method": d.method,
                "witness": w.to_dict(), "radii_checked": len(d.radii)})
    if args.verbose:
        rep["per_ball"] = [p.to_dict() for p in d.per_ball]
    _emit(args, rep)
    return EXIT_OK


def _cover_family(args, space, A):
    radii = _rationals(args.radii)
    if not radii:
        raise _UsageError("--radii needs at least one radius")
    kind = Kind.coerce(args.kind)
    if len(radii) == 1:
        chosen = radii * len(A)
    elif len(radii) == len(A):
        chosen = radii
    else:
        rng = random.Random(args.seed)
        chosen = [rng.choice(radii) for _ in A]
    return [Ball(a, r, kind) for a, r in zip(A, chosen)]


def cmd_cover(args) -> int:
    space = _space(args)
    A = _points(args.set, space)
    rep = _header(space)
    rep["mode"] = args.mode
    if args.mode == "equal-radius":
        radii = _rationals(args.radii)
        if len(radii) != 1:
            raise _UsageError("equal-radius takes exactly one radius")
        rep.update(equal_radius_cover(space, A, radii[0], args.kind).to_dict())
    elif args.mode == "localized":
        C = _cover_family(args, space, A)
        rep.update(localized_cover(space, A, C, known_D=args.known_D).to_dict())
    else:
        C = _cover_family(args, space, A)
        known_C = args.known_C
        if known_C is None and args.known_D is not None:
            known_C = args.known_D**3
        bc = besicovitch_cover(space, A, C, known_L=args.known_L, known_C=known_C)
        rep["besicovitch"] = bc.to_dict()
        if args.mode == "rearrange":
            dr = disjoint_rearrangement(space, bc.selected, known_L=args.known_L, known_D=args.known_D)
            rep.update(dr.to_dict())
    _emit(args, rep)
    return EXIT_OK


def cmd_besicovitch(args) -> int:
    space = _space(args)
    pool = _rationals(args.pool) if args.pool else None
    b = besicovitch_constant(space, pool, args.kind)
    rep = _header(space)
    rep.update(b.to_dict())
    _emit(args, rep)
    return EXIT_OK


def cmd_gallery(args) -> int:
    cases = sorted(CASES) if args.case == "all" else [args.case]
    reports = [run_case(c, args.N, args.seed).to_dict() for c in cases]
    out = {"tool": "besicover", "version": __version__, "N": args.N, "seed": args.seed,
           "cases": reports, "all_pass": all(r["all_pass"] for r in reports)}
    for r in reports:
        for c in r["checks"]:
            if not c["pass"]:
                print(f"FAIL {r['case_id']}: {c['name']}: {c['detail']}", file=sys.stderr)
    _emit(args, out)
    return EXIT_OK if out["all_pass"] else EXIT_FAIL


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    env_threads = os.environ.get("BESICOVER_THREADS", "1")
    p = _Parser(prog="besicover", description="Exact covering computations on finite metric spaces.")
    p.add_argument("--version", action="version", version=f"besicover {__version__}")
    common = _Parser(add_help=False)
    common.add_argument("--seed", type=int, default=0, help="seed for all randomness (default 0)")
    common.add_argument("--threads", type=int, default=int(env_threads) if env_threads.isdigit() else 1,
                        help="worker threads (default: $BESICOVER_THREADS or 1)")
    common.add_argument("--json", metavar="PATH", help="write the report here instead of stdout")
    src = _Parser(add_help=False)
    g = src.add_mutually_exclusive_group()
    g.add_argument("--gen", metavar="SPEC",
                   help="inline generator: paper_ultra:N, grid_square:N, zero_one:n, "
                        "lattice:DIM:SIDE:NORM, random_ultra:N[:SEED]")
    g.add_argument("--space", metavar="FILE", help="space JSON file")
    kind = _Parser(add_help=False)
    kind.add_argument("--kind", choices=["open", "closed"], default="closed")

    sub = p.add_subparsers(dest="command", metavar="COMMAND")
    sub.required = True

    s = sub.add_parser("generate", parents=[common, src], help="write a generated space as JSON")
    s.add_argument("-o", "--out", metavar="FILE")
    s.set_defaults(func=cmd_generate)

    s = sub.add_parser("validate", parents=[common, src], help="check the metric axioms")
    s.add_argument("file", nargs="?", help="space JSON file (same as --space)")
    s.set_defaults(func=cmd_validate)

    s = sub.add_parser("nets", parents=[common, src], help="greedy maximal r-net")
    s.add_argument("--r", required=True)
    s.add_argument("--strict", action="store_true", help="pairwise d > r instead of d >= r")
    s.add_argument("--scope", help="comma-separated points (indices or labels); default all")
    s.set_defaults(func=cmd_nets)

    s = sub.add_parser("doubling", parents=[common, src, kind], help="doubling constant")
    s.add_argument("--method", choices=["exact", "greedy"], default="exact")
    s.add_argument("--radii", help="restrict to these radii (comma-separated p/q)")
    s.add_argument("--verbose", action="store_true", help="include every ball in the report")
    s.set_defaults(func=cmd_doubling)

    s = sub.add_parser("cover", parents=[common, src, kind], help="covering algorithms")
    s.add_argument("mode", choices=["equal-radius", "localized", "besicovitch", "rearrange"])
    s.add_argument("--set", help="target points (indices or labels); default all")
    s.add_argument("--radii", required=True,
                   help="one radius for every center, one per center, or a pool drawn from with --seed")
    s.add_argument("--known-D", dest="known_D", type=int)
    s.add_argument("--known-L", dest="known_L", type=int)
    s.add_argument("--known-C", dest="known_C", type=int)
    s.set_defaults(func=cmd_cover)

    s = sub.add_parser("besicovitch", parents=[common, src, kind], help="Besicovitch constant")
    s.add_argument("--pool", help="radius pool (comma-separated p/q); default: all critical radii")
    s.set_defaults(func=cmd_besicovitch)

    s = sub.add_parser("gallery", parents=[common], help="run the example gallery")
    s.add_argument("--case", choices=["all", *sorted(CASES)], default="all")
    s.add_argument("--N", type=int, default=16)
    s.set_defaults(func=cmd_gallery)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except _UsageError as exc:
        print(f"besicover: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (SpaceParseError, NotAMetric, OSError) as exc:
        print(f"besicover: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except BoundViolated as exc:
        print(f"besicover: bound violated: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except BesicoverError as exc:
        print(f"besicover: error: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except ValueError as exc:
        print(f"besicover: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
