"""Command-line interface.

Exit codes: 0 success / verdict true, 1 verdict false, 2 usage or guard errors.
"""

from __future__ import annotations

import argparse
import json
import random
import sys

from . import io
from .arith import component_C, diagonal_D, exponent, product
from .canon import are_isomorphic
from .config import DEFAULT_CATALOG_CAP, resolve_guard
from .core import disjoint_sum, is_connected, shuffle, standard
from .errors import CapError, PosetError, PreconditionError, SearchExhausted
from .refinement import SearchBounds, factorizations, lemma_suite, refine
from .retract import find_retraction

EXHAUSTED_NOTE = ("search exhausted within bounds; this is NOT a counterexample: "
                  "a refinement may exist beyond the bounds")


class UsageError(Exception):
    pass


def _emit(args, text):
    if getattr(args, "output", None):
        with open(args.output, "w") as fh:
            fh.write(text if text.endswith("\n") else text + "\n")
    else:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")


def _load(path):
    try:
        return io.load(path)
    except OSError as exc:
        raise UsageError("cannot read %s: %s" % (path, exc))
    except (ValueError, IndexError, KeyError, TypeError) as exc:
        raise UsageError("invalid poset document %s: %s" % (path, exc))


def _b(x):
    return "true" if x else "false"


def cmd_build(args):
    try:
        P = standard(args.kind, args.size)
    except PosetError as exc:
        raise UsageError(str(exc))
    if args.shuffle_seed is not None:
        P, _ = shuffle(P, random.Random(args.shuffle_seed))
    _emit(args, io.dumps(P))
    return 0


def expo_stats(EX):
    nD = len(diagonal_D(EX))
    nC = len(component_C(EX)[1]) if EX.exponent.n else None
    return {"size": EX.poset.n, "connected": is_connected(EX.poset), "D": nD, "C": nC}


def format_stats(st):
    c = "n/a" if st["C"] is None else st["C"]
    return "size=%d connected=%s |D|=%d |C|=%s" % (st["size"], _b(st["connected"]), st["D"], c)


def cmd_expo(args):
    E, X = _load(args.E), _load(args.X)
    EX = exponent(E, X, args.guard)
    out = []
    if args.stats:
        st = expo_stats(EX)
        out.append(json.dumps(st) if args.json else format_stats(st))
    if args.dot:
        out.append(io.to_dot(EX.poset, name="exponent").rstrip("\n"))
    if not out:
        out.append(json.dumps(io.exponent_to_dict(EX)))
    _emit(args, "\n".join(out))
    return 0


def cmd_product(args):
    _emit(args, io.dumps(product(_load(args.P), _load(args.Q), args.guard)))
    return 0


def cmd_sum(args):
    _emit(args, io.dumps(disjoint_sum(_load(args.P), _load(args.Q))))
    return 0


def cmd_iso(args):
    P, Q = _load(args.P), _load(args.Q)
    phi = are_isomorphic(P, Q)
    if args.json:
        _emit(args, json.dumps({"isomorphic": phi is not None,
                                "bijection": list(phi) if phi is not None else None}))
    elif phi is None:
        _emit(args, "not isomorphic")
    else:
        _emit(args, "isomorphic\nbijection " + " ".join("%d->%d" % (i, j) for i, j in enumerate(phi)))
    return 0 if phi is not None else 1


def cmd_retract(args):
    P = _load(args.P)
    try:
        subset = sorted({int(s) for s in args.subset.split(",") if s.strip()})
    except ValueError:
        raise UsageError("--subset must be comma-separated integers")
    if not subset or any(not 0 <= i < P.n for i in subset):
        raise UsageError("--subset must name elements of P")
    r = find_retraction(P, subset, args.guard)
    if args.json:
        _emit(args, json.dumps({"retract": r is not None,
                                "rho": list(r.rho) if r else None, "image": subset}))
    elif r is None:
        _emit(args, "not a retract")
    else:
        _emit(args, "retract\nrho " + " ".join("%d->%d" % (i, j) for i, j in enumerate(r.rho)))
    return 0 if r is not None else 1


def cmd_factor(args):
    P = _load(args.P)
    if P.n == 0:
        raise UsageError("cannot factor the empty poset")
    pairs = factorizations(P, args.cap, guard=args.guard)
    if args.json:
        _emit(args, json.dumps([{"Y": io.poset_to_dict(Y), "Z": io.poset_to_dict(Z)}
                                for Y, Z in pairs]))
    else:
        _emit(args, "\n".join("Y=%s Z=%s" % (io.dumps(Y), io.dumps(Z)) for Y, Z in pairs))
    return 0


def cmd_refine(args):
    A, B, C, D = (_load(p) for p in (args.A, args.B, args.C, args.D))
    bounds = SearchBounds(max_E=args.max_e, max_X=args.max_x, max_Y=args.max_y,
                          max_Z=args.max_z, guard=resolve_guard(args.guard),
                          timeout=args.timeout, widen=args.widen,
                          retract_bound=not args.no_retract_bound, cap=args.cap)
    try:
        w = refine(A, B, C, D, bounds)
    except PreconditionError as exc:
        return _failure(args, "precondition", str(exc))
    except SearchExhausted as exc:
        return _failure(args, "exhausted", "%s\n%s" % (exc, EXHAUSTED_NOTE))
    d = io.witness_to_dict(w)
    if args.json:
        _emit(args, json.dumps(d))
    else:
        lines = ["witness"]
        for k in ("E", "X", "Y", "Z"):
            lines.append("%s %s" % (k, json.dumps(d[k])))
        for k in ("iso_A", "iso_B", "iso_C", "iso_D"):
            lines.append("%s %s" % (k, " ".join(map(str, d[k]))))
        _emit(args, "\n".join(lines))
    return 0


def _failure(args, reason, message):
    if args.json:
        _emit(args, json.dumps({"witness": None, "reason": reason, "message": message}))
    else:
        _emit(args, "no witness: %s\n%s" % (reason, message))
    return 1


def cmd_lemmas(args):
    if args.max_size < 1:
        raise UsageError("--max-size must be >= 1")
    report = lemma_suite(args.max_size, args.guard, cap=args.cap)
    if args.json:
        _emit(args, json.dumps({
            "max_size": report.max_size,
            "counterexamples": report.total_counterexamples,
            "lemmas": {k: {"instances": r.instances, "skipped": r.skipped,
                           "counterexamples": r.counterexamples}
                       for k, r in report.results.items()},
        }))
    else:
        _emit(args, "\n".join(report.lines()))
    return 0 if report.ok else 1


def cmd_render(args):
    P = _load(args.P)
    labels = None
    if args.labels:
        with open(args.P) as fh:
            labels = json.load(fh).get("labels")
    _emit(args, io.to_dot(P, labels))
    return 0


def _positive(s):
    v = int(s)
    if v <= 0:
        raise argparse.ArgumentTypeError("must be positive")
    return v


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--guard", type=_positive, default=None,
                        help="size guard (overrides POSETPOW_GUARD)")
    common.add_argument("--json", action="store_true", help="structured output")
    common.add_argument("-o", "--output", help="write to this path instead of stdout")

    p = argparse.ArgumentParser(prog="posetpow", description="Finite poset arithmetic.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("build", parents=[common], help="emit a standard poset")
    s.add_argument("kind", choices=["chain", "antichain", "crown", "fence", "singleton"])
    s.add_argument("size", nargs="?", type=int)
    s.add_argument("--shuffle-seed", type=int, default=None, help="randomly relabel")
    s.set_defaults(func=cmd_build)

    s = sub.add_parser("expo", parents=[common], help="exponent E^X")
    s.add_argument("E")
    s.add_argument("X")
    s.add_argument("--dot", action="store_true")
    s.add_argument("--stats", action="store_true")
    s.set_defaults(func=cmd_expo)

    for name, func in (("product", cmd_product), ("sum", cmd_sum), ("iso", cmd_iso)):
        s = sub.add_parser(name, parents=[common])
        s.add_argument("P")
        s.add_argument("Q")
        s.set_defaults(func=func)

    s = sub.add_parser("retract", parents=[common], help="search a retraction onto a subset")
    s.add_argument("P")
    s.add_argument("--subset", required=True, help="comma-separated element indices")
    s.set_defaults(func=cmd_retract)

    s = sub.add_parser("factor", parents=[common], help="product factorizations")
    s.add_argument("P")
    s.add_argument("--cap", type=_positive, default=DEFAULT_CATALOG_CAP)
    s.set_defaults(func=cmd_factor)

    s = sub.add_parser("refine", parents=[common], help="search E, X, Y, Z refining A^C = B^D")
    for name in "ABCD":
        s.add_argument(name)
    s.add_argument("--max-z", type=_positive)
    s.add_argument("--max-y", type=_positive)
    s.add_argument("--max-x", type=_positive)
    s.add_argument("--max-e", type=_positive)
    s.add_argument("--widen", action="store_true", help="allow disconnected witnesses")
    s.add_argument("--no-retract-bound", action="store_true",
                   help="do not prune with |E| <= min(|A|, |B|)")
    s.add_argument("--timeout", type=float, default=None, help="seconds")
    s.add_argument("--cap", type=_positive, default=DEFAULT_CATALOG_CAP)
    s.set_defaults(func=cmd_refine)

    s = sub.add_parser("lemmas", parents=[common], help="run the exhaustive lemma suite")
    s.add_argument("--max-size", type=int, default=2)
    s.add_argument("--cap", type=_positive, default=DEFAULT_CATALOG_CAP)
    s.set_defaults(func=cmd_lemmas)

    s = sub.add_parser("render", parents=[common], help="Hasse diagram as DOT")
    s.add_argument("P")
    s.add_argument("--labels", action="store_true", help="use the document's labels")
    s.set_defaults(func=cmd_render)
    return p


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 2
    except CapError as exc:
        print("guard: %s" % exc, file=sys.stderr)
        return 2
    except TimeoutError as exc:
        print("timeout: %s" % exc, file=sys.stderr)
        return 2
    except PosetError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
