"""Command-line entry point.

JSON goes to standard output, diagnostics to standard error. Exit status is
0 for an affirmative answer, 1 for a negative one and 2 for any error, in
which case standard output carries a one-line JSON error object.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys

import numpy as np

from . import ame, bounds, codes, latin, rs, search
from .finite_field import make_field

log = logging.getLogger("amemin")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _read_json(path: str):
    if path == "-":
        return json.load(sys.stdin)
    with open(path) as fh:
        return json.load(fh)


def _emit(obj, out: str | None) -> None:
    text = json.dumps(obj) + "\n"
    if out and out != "-":
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _require_in(args):
    if not args.inp:
        raise UsageError("--in is required (use '-' for standard input)")
    return _read_json(args.inp)


# -- subcommands ------------------------------------------------------------------

def cmd_construct(args) -> int:
    what = args.what
    if what == "rs":
        if args.d is None or args.k is None:
            raise UsageError("construct rs needs --d and --k")
        C = rs.rs_code(rs.RsParams(make_field(args.d), args.k, args.extended))
        _emit(C.to_json(), args.out)
        return 0
    if what == "ghz":
        if args.d is None:
            raise UsageError("construct ghz needs --d")
        C = rs.ghz_code(args.n or 3, args.d)
    elif what == "ame":
        if args.d is None:
            raise UsageError("construct ame needs --d")
        if args.n is None:
            C = rs.ame_code_for_prime_power(args.d)
        else:
            C = rs.mds_code_for(args.n, args.d)
            if C is None:
                raise UsageError(f"no algebraic construction for AME({args.n},{args.d})")
    elif what == "random":
        if args.d is None or args.n is None:
            raise UsageError("construct random needs --n and --d")
        rng = np.random.default_rng(args.seed)
        log.info("random uniform-support state, seed %s", args.seed)
        _emit(ame.random_uniform_state(args.n, args.d, rng).to_json(), args.out)
        return 0
    else:
        raise UsageError(f"unknown construction {what!r}")
    payload = C.to_json() if args.as_ == "code" else ame.state_from_code(C).to_json()
    _emit(payload, args.out)
    return 0


def cmd_convert(args) -> int:
    obj = _require_in(args)
    how = args.how
    if how == "code-to-state":
        out = ame.state_from_code(codes.Code.from_json(obj)).to_json()
    elif how == "state-to-code":
        out = ame.code_from_state(ame.AmeState.from_json(obj)).to_json()
    elif how == "code-to-cubes":
        out = latin.code_to_hypercubes(codes.Code.from_json(obj)).to_json()
    elif how == "cubes-to-code":
        out = latin.hypercubes_to_code(latin.HypercubeSet.from_json(obj)).to_json()
    else:
        raise UsageError(f"unknown conversion {how!r}")
    _emit(out, args.out)
    return 0


def cmd_verify(args) -> int:
    obj = _require_in(args)
    what = args.what
    if what == "mds":
        report = codes.is_mds(codes.Code.from_json(obj))
        _emit(report.to_json(), args.out)
        return 0 if report.is_mds else 1
    if what == "ame":
        S = ame.AmeState.from_json(obj)
        v = ame.verify_ame(S, args.method)
        out = v.to_json()
        out["support"] = ame.support(S)
        out["minimal_support"] = ame.is_minimal_support(S)
        _emit(out, args.out)
        return 0 if v.is_ame else 1
    if what == "latin":
        ok = latin.is_latin(latin.LatinHypercube.from_json(obj))
        _emit({"is_latin": ok}, args.out)
        return 0 if ok else 1
    if what == "mols":
        S = latin.HypercubeSet.from_json(obj)
        ok = latin.mols_check(S)
        _emit({"is_mols": ok, "cubes": len(S), "k": S.k, "d": S.d}, args.out)
        return 0 if ok else 1
    raise UsageError(f"unknown check {what!r}")


def cmd_search(args) -> int:
    if args.what == "mate":
        if args.order is None:
            raise UsageError("search mate needs --order")
        cert = search.orthogonal_pair_exists(args.order, args.workers, exhaustive=args.exhaustive)
        payload = cert.to_json()
        if args.certificate:
            with open(args.certificate, "w") as fh:
                json.dump(payload, fh, indent=1)
                fh.write("\n")
            log.info("certificate written to %s", args.certificate)
        _emit(payload, args.out)
        return 0 if cert.verdict == "exists" else 1
    if args.what == "ame-exists":
        if args.n is None or args.d is None:
            raise UsageError("search ame-exists needs --n and --d")
        v = search.ame_minimal_exists(args.n, args.d, args.workers)
        _emit(v.to_json(), args.out)
        if v.exists is None:
            return 2
        return 0 if v.exists else 1
    raise UsageError(f"unknown search {args.what!r}")


def cmd_bounds(args) -> int:
    if args.d is None:
        raise UsageError("bounds needs --d")
    report = bounds.n_report(args.d, args.facts)
    payload = report.to_json(trace=args.trace)
    if args.trace:
        for line in report.trace_lines():
            print(line, file=sys.stderr)
    if args.assume_mds_conjecture:
        fact = bounds.conditional_n_upper_prime_power(args.d, True)
        payload["conditional"] = {"assumes": "general MDS conjecture", "exact": fact.value,
                                  "fact": fact.to_json()}
        if args.trace:
            print("conditional on the general MDS conjecture:", file=sys.stderr)
            for line in fact.trace_lines(1):
                print(line, file=sys.stderr)
    _emit(payload, args.out)
    return 0


# -- parser -------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--in", dest="inp", help="input JSON file, '-' for stdin")
    common.add_argument("--out", help="output file (default stdout)")
    common.add_argument("--d", type=int)
    common.add_argument("--n", type=int)
    common.add_argument("--k", type=int)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--workers", type=int, default=1)
    common.add_argument("-v", "--verbose", action="store_true")

    p = _Parser(prog="amemin", description="Minimal-support AME states, MDS codes and latin hypercubes.")
    sub = p.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True

    c = sub.add_parser("construct", parents=[common], help="build codes and states")
    c.add_argument("what", choices=["rs", "ghz", "ame", "random"])
    c.add_argument("--extended", choices=list(rs.EXTENSIONS), default="single")
    c.add_argument("--as", dest="as_", choices=["state", "code"], default="state")
    c.set_defaults(func=cmd_construct)

    v = sub.add_parser("convert", parents=[common], help="move between states, codes and cubes")
    v.add_argument("how", choices=["code-to-state", "state-to-code", "code-to-cubes", "cubes-to-code"])
    v.set_defaults(func=cmd_convert)

    f = sub.add_parser("verify", parents=[common], help="check a representation")
    f.add_argument("what", choices=["mds", "ame", "latin", "mols"])
    f.add_argument("--method", choices=["comb", "trace"], default="comb")
    f.set_defaults(func=cmd_verify)

    s = sub.add_parser("search", parents=[common], help="exhaustive searches")
    s.add_argument("what", choices=["mate", "ame-exists"])
    s.add_argument("--order", type=int)
    s.add_argument("--certificate", help="write the search certificate here")
    s.add_argument("--exhaustive", action="store_true", help="scan every square even after a hit")
    s.set_defaults(func=cmd_search)

    b = sub.add_parser("bounds", parents=[common], help="report bounds on N(d)")
    b.add_argument("--assume-mds-conjecture", action="store_true")
    b.add_argument("--trace", action="store_true")
    b.add_argument("--facts", help="alternative fact file")
    b.set_defaults(func=cmd_bounds)
    return p


def run(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        logging.basicConfig(level=logging.INFO if args.verbose or args.command == "search" else logging.WARNING,
                            format="%(name)s: %(message)s", stream=sys.stderr)
        return args.func(args)
    except Exception as exc:  # every failure becomes exit 2 with a JSON line
        sys.stdout.write(json.dumps({"error": type(exc).__name__, "message": str(exc)}) + "\n")
        return 2


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
