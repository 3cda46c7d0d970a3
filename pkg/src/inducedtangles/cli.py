"""Command-line front end.

Subcommands read an instance document from a file or standard input and
write JSON documents or short reports to standard output, so they compose
through pipes::

    inducedtangles generate tau-mk --m 6 --k 3 | inducedtangles decide

Exit status: 0 success or decided, 1 a property check failed (or the
outcome contradicts ``--expect``), 2 malformed input, 3 a resource budget
was exceeded, 4 an internal consistency check failed.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from . import documents as docs
from .core import members
from .duality import dualize
from .errors import InputError, InvariantViolation, ResourceError
from .exactlp import format_rational, parse_rational
from .generators import GENERATORS
from .inducers import Induced, brute_force_set_inducer, decide_induced
from .orientations import (is_consistent, is_F_ell_tangle, is_profile, is_regular,
                           is_tangle, max_F_ell)
from .resilience import LocalWitnessSet, is_locally_induced, resilience

EXIT_OK, EXIT_FAILED, EXIT_INPUT, EXIT_RESOURCE, EXIT_INTERNAL = 0, 1, 2, 3, 4

AXIOMS = ("consistent", "profile", "regular", "tangle", "F-ell")


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None


def _load_instance(path: str, need_orientation: bool = True):
    system, tau, provenance = docs.parse_instance(docs.loads(_read(path)))
    if need_orientation and tau is None:
        raise InputError("the instance has no orientation")
    return system, tau, provenance


def _emit(obj, fmt: str = "json", text: str | None = None) -> None:
    if fmt == "text" and text is not None:
        print(text)
    else:
        sys.stdout.write(docs.dumps(obj) if isinstance(obj, dict) and "format" in obj
                         else json.dumps(obj, sort_keys=True, indent=2) + "\n")


def _side(mask: int) -> list[int]:
    return list(members(mask))


# --- subcommands -------------------------------------------------------------

def cmd_generate(args) -> int:
    family = args.family
    if family == "principal":
        inst = GENERATORS[family](args.n, args.x)
    elif family == "intro":
        inst = GENERATORS[family](args.m)
    elif family == "tau-mk":
        ell = None if args.ell is None else parse_rational(args.ell)
        inst = GENERATORS[family](args.m, args.k, ell=ell, full=args.full)
    elif family in ("thirds", "grid"):
        inst = GENERATORS[family](args.n)
    else:  # argparse restricts choices
        raise InputError(f"unknown family {family!r}")
    _emit(docs.instance_document(inst.system, inst.orientation, inst.provenance))
    return EXIT_OK


def _require(value, flag: str, family: str):
    if value is None:
        raise InputError(f"{family} needs {flag}")


def cmd_verify(args) -> int:
    system, tau, _ = _load_instance(args.input)
    report: dict = {}
    failed = False
    if args.certificate:
        cert = docs.loads(_read(args.certificate))
        ok, reason = docs.verify_certificate_document(cert, system, tau)
        report["certificate"] = {"ok": ok, "reason": reason, "kind": cert.get("kind")}
        failed |= not ok
    axioms = args.axioms.split(",") if args.axioms else ([] if args.certificate else list(AXIOMS[:4]))
    checks = {"consistent": is_consistent, "profile": is_profile,
              "regular": is_regular, "tangle": is_tangle}
    for name in axioms:
        if name == "F-ell":
            if args.ell is None:
                raise InputError("--axioms F-ell needs --ell")
            ell = parse_rational(args.ell)
            ok = is_F_ell_tangle(tau, ell)
            report["F-ell"] = {"ok": ok, "ell": format_rational(ell),
                               "max_ell": max_F_ell(tau)}
        elif name in checks:
            verdict = checks[name](tau)
            entry = {"ok": verdict.ok}
            if not verdict.ok:
                entry["witness"] = [[_side(e.small), _side(e.big)] for e in verdict.witness]
            report[name] = entry
            ok = verdict.ok
        else:
            raise InputError(f"unknown axiom {name!r}; choose from {', '.join(AXIOMS)}")
        failed |= not ok
    lines = []
    for name, entry in report.items():
        line = f"{name}: {'ok' if entry['ok'] else 'FAILED'}"
        if "witness" in entry:
            line += "  witness " + " ".join(f"({a}, {b})" for a, b in entry["witness"])
        if "reason" in entry:
            line += f"  ({entry['reason']})"
        lines.append(line)
    _emit(report, args.format, "\n".join(lines))
    return EXIT_FAILED if failed else EXIT_OK


def cmd_decide(args) -> int:
    _, tau, _ = _load_instance(args.input)
    outcome = decide_induced(tau, use_maximal=not args.all_elements)
    _emit(docs.outcome_certificate(outcome, tau))
    induced = isinstance(outcome, Induced)
    if args.expect == "induced" and not induced:
        return EXIT_FAILED
    if args.expect == "not-induced" and induced:
        return EXIT_FAILED
    return EXIT_OK


def cmd_resilience(args) -> int:
    _, tau, _ = _load_instance(args.input)
    r = resilience(tau, cap=args.cap)
    report = {"resilience": str(r), "kind": r.kind,
              "cover": [[_side(e.small), _side(e.big)] for e in r.cover]}
    _emit(report, args.format, str(r))
    return EXIT_OK


def cmd_locally_induced(args) -> int:
    _, tau, _ = _load_instance(args.input)
    ell = parse_rational(args.ell)
    result = is_locally_induced(tau, args.k, ell)
    if isinstance(result, LocalWitnessSet):
        _emit(docs.local_certificate(result, tau))
        return EXIT_OK
    subset = [tau.system.index(result.maximal[j]) for j in result.subset]
    _emit({"locally_induced": False, "k": args.k, "ell": format_rational(ell),
           "subset": subset, "farkas": [format_rational(Fraction(v)) for v in result.farkas]})
    return EXIT_FAILED if args.expect == "induced" else EXIT_OK


def cmd_dualize(args) -> int:
    _, tau, _ = _load_instance(args.input)
    dual = dualize(tau)
    provenance = {"generator": "dual", "source": docs.instance_digest(tau.system, tau),
                  "injective": dual.injective,
                  "collisions": [list(c) for c in dual.collisions]}
    _emit(docs.instance_document(dual.base, dual.default, provenance))
    return EXIT_OK


def cmd_oracle(args) -> int:
    _, tau, _ = _load_instance(args.input)
    x = brute_force_set_inducer(tau)
    if x is None:
        _emit({"inducing_set": None})
        return EXIT_FAILED if args.expect == "induced" else EXIT_OK
    _emit(docs.set_certificate(x, tau))
    return EXIT_OK


def cmd_reproduce(args) -> int:
    from .reproduce import run
    results = run(args.only)
    if args.format == "json":
        _emit({"criteria": [{"number": r.number, "title": r.title, "passed": r.passed,
                             "details": r.details, "milliseconds": round(r.seconds * 1000)}
                            for r in results]})
    else:
        for r in results:
            print(f"{r.line()}  [{r.seconds:.1f}s]")
            if args.verbose or not r.passed:
                for d in r.details:
                    print(f"      {d}")
    return EXIT_OK if all(r.passed for r in results) else EXIT_FAILED


# --- parser ------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="inducedtangles",
        description="Decide whether orientations of set separations are induced, with certificates.")
    sub = parser.add_subparsers(dest="command", required=True)

    def with_input(p):
        p.add_argument("input", nargs="?", default="-",
                       help="instance document (default: standard input)")
        return p

    def with_format(p):
        p.add_argument("--format", choices=("text", "json"), default="text")
        return p

    g = sub.add_parser("generate", help="emit an instance of one of the example families")
    g.add_argument("family", choices=sorted(GENERATORS))
    g.add_argument("--n", type=int)
    g.add_argument("--x", type=int, default=0)
    g.add_argument("--m", type=int)
    g.add_argument("--k", type=int)
    g.add_argument("--ell", help="copies per k-set for tau-mk (rounded up)")
    g.add_argument("--full", action="store_true",
                   help="tau-mk: materialize every bipartition of order < m")
    g.add_argument("--format", choices=("json",), default="json")
    g.set_defaults(func=cmd_generate)

    v = with_format(with_input(sub.add_parser("verify", help="check axioms or a certificate")))
    v.add_argument("--axioms", help=f"comma-separated subset of {','.join(AXIOMS)}")
    v.add_argument("--ell", help="threshold for the F-ell axiom, e.g. 4 or 9/2")
    v.add_argument("--certificate", help="certificate document to re-verify")
    v.set_defaults(func=cmd_verify)

    d = with_input(sub.add_parser("decide", help="LP decision with a certificate"))
    d.add_argument("--all-elements", action="store_true",
                   help="use every element as an LP column, not only the maximal ones")
    d.add_argument("--expect", choices=("induced", "not-induced"))
    d.add_argument("--format", choices=("json",), default="json")
    d.set_defaults(func=cmd_decide)

    r = with_format(with_input(sub.add_parser("resilience", help="compute the resilience")))
    r.add_argument("--cap", type=int, help="largest cover size searched")
    r.set_defaults(func=cmd_resilience)

    li = with_input(sub.add_parser("locally-induced", help="k-locally ell-induced test"))
    li.add_argument("--k", type=int, required=True)
    li.add_argument("--ell", required=True)
    li.add_argument("--expect", choices=("induced",))
    li.add_argument("--format", choices=("json",), default="json")
    li.set_defaults(func=cmd_locally_induced)

    du = with_input(sub.add_parser("dualize", help="emit the dual system"))
    du.add_argument("--format", choices=("json",), default="json")
    du.set_defaults(func=cmd_dualize)

    o = with_input(sub.add_parser("oracle", help="brute-force search for an inducing set"))
    o.add_argument("--expect", choices=("induced",))
    o.add_argument("--format", choices=("json",), default="json")
    o.set_defaults(func=cmd_oracle)

    rp = with_format(sub.add_parser("reproduce", help="run the acceptance suite"))
    rp.add_argument("--only", type=int, nargs="+", choices=range(1, 11), metavar="N")
    rp.add_argument("-v", "--verbose", action="store_true")
    rp.set_defaults(func=cmd_reproduce)
    return parser


def _check_generate_args(args) -> None:
    need = {"principal": ("n",), "intro": ("m",), "tau-mk": ("m", "k"),
            "thirds": ("n",), "grid": ("n",)}
    for name in need[args.family]:
        _require(getattr(args, name), f"--{name}", args.family)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "generate":
            _check_generate_args(args)
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except ResourceError as exc:
        print(f"resource budget exceeded: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except InvariantViolation as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except BrokenPipeError:
        # the reader went away (e.g. `| head`); silence the flush at exit
        os.dup2(os.open(os.devnull, os.O_WRONLY), sys.stdout.fileno())
        return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
