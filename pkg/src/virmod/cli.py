"""Command-line interface.

Exit status: 0 on success, 1 when a check fails, 2 on usage or input errors.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import List, Optional

from .analysis.certify import CertificationError, HypothesisError, certify_irreducible
from .analysis.classify import specs_isomorphic
from .analysis.rank import rank_invariant
from .core.linalg import determinant
from .core.rational import format_rational, parse_rational
from .core.vandermonde import ConfluentSpec, confluent_det_formula, confluent_vandermonde
from .grammar import ElementSyntaxError, format_element, parse_element
from .specfile import SpecError, load_spec, spec_to_dict
from .suites import DEFAULT_BOUNDS, SUITES, dump_report, make_report, report_ok, result, run_suite
from .tensor import omega_op

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _write_report(path: Optional[str], report: dict) -> None:
    if path:
        Path(path).write_text(dump_report(report))


def _single(args, check: str, instance: dict, status: str, witness=None, spec=None) -> dict:
    header = {"command": args.command}
    if spec is not None:
        header["spec"] = spec_to_dict(spec)
    return make_report(header, [result(check, instance, status, witness)])


def cmd_check(args) -> int:
    spec = load_spec(args.spec)
    bounds = {key: getattr(args, key) for key in DEFAULT_BOUNDS if getattr(args, key) is not None}
    report = run_suite(spec, args.suite, args.seed, bounds)
    for r in report["results"]:
        print(f"{r['status'].upper():7} {r['check']}")
    s = report["summary"]
    print(f"{s['pass']} passed, {s['fail']} failed, {s['unknown']} unknown")
    _write_report(args.report, report)
    return EXIT_OK if report_ok(report) else EXIT_FAIL


def cmd_act(args) -> int:
    spec = load_spec(args.spec)
    f = parse_element(args.element, spec)
    out = spec.act(args.k, f)
    text = format_element(out, spec)
    print(text)
    _write_report(args.report, _single(args, "act", {"k": args.k, "element": args.element}, "pass",
                                       {"result": text}, spec))
    return EXIT_OK


def cmd_omega(args) -> int:
    spec = load_spec(args.spec)
    if args.s < 0:
        raise UsageError("--s must be non-negative")
    f = parse_element(args.element, spec)
    text = format_element(omega_op(args.s, args.l, args.m, f, spec), spec)
    print(text)
    _write_report(args.report, _single(args, "omega", {"s": args.s, "l": args.l, "m": args.m,
                                                       "element": args.element}, "pass", {"result": text}, spec))
    return EXIT_OK


def cmd_rank(args) -> int:
    spec = load_spec(args.spec)
    f = parse_element(args.element, spec)
    if not f:
        raise UsageError("the rank invariant needs a nonzero element")
    if not spec.distinct:
        raise UsageError("the rank invariant needs pairwise distinct lambda and mu")
    rep = rank_invariant(f, spec)
    print(f"rank {rep.value} (K={rep.window[0]}, samples={rep.window[1]}, stabilized={rep.stabilized})")
    _write_report(args.report, _single(args, "rank", {"element": args.element}, "pass" if rep.stabilized else "fail",
                                       {"rank": rep.value, "window": list(rep.window),
                                        "stabilized": rep.stabilized}, spec))
    return EXIT_OK if rep.stabilized else EXIT_FAIL


def cmd_certify(args) -> int:
    spec = load_spec(args.spec)
    f = parse_element(args.element, spec)
    if not f:
        raise UsageError("certification needs a nonzero element")
    inst = {"element": args.element, "degree": args.degree, "level": args.level}
    try:
        cert = certify_irreducible(spec, f, args.degree, args.level)
        cert.replay(spec, f)
    except HypothesisError as exc:
        print(f"hypotheses not met: {exc}")
        _write_report(args.report, _single(args, "certify", inst, "unknown", {"reason": str(exc)}, spec))
        return EXIT_FAIL
    except (CertificationError, AssertionError) as exc:
        print(f"certification failed: {exc}")
        _write_report(args.report, _single(args, "certify", inst, "fail", {"error": str(exc)}, spec))
        return EXIT_FAIL
    vacuum = format_element(cert.vacuum, spec)
    print(f"reduced to {vacuum} in {len(cert.trace) - 1} steps")
    print(f"regenerated {len(cert.spanning)} monomials in {len(cert.generation)} steps; replay exact")
    _write_report(args.report, _single(args, "certify", inst, "pass",
                                       {"vacuum": vacuum, "trace_steps": len(cert.trace),
                                        "generation_steps": len(cert.generation),
                                        "spanned": len(cert.spanning)}, spec))
    return EXIT_OK


def cmd_classify(args) -> int:
    a, b = load_spec(args.spec), load_spec(args.other)
    try:
        verdict = specs_isomorphic(a, b)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    label = {True: "isomorphic", False: "not isomorphic"}.get(verdict.isomorphic, "unknown")
    print(f"{label}: {verdict.reason}")
    witness = {k: list(v) for k, v in verdict.witness.items()} if verdict.witness else None
    if witness:
        print(f"factor matching: {witness}")
    status = "unknown" if verdict.isomorphic == "unknown" else "pass"
    _write_report(args.report, _single(args, "classify", {"other": spec_to_dict(b)}, status,
                                       {"isomorphic": verdict.isomorphic, "reason": verdict.reason,
                                        "permutation": witness}, a))
    return EXIT_OK


def _rational_list(text: str) -> List:
    try:
        return [parse_rational(x) for x in text.split(",") if x.strip()]
    except (TypeError, ValueError) as exc:
        raise UsageError(str(exc)) from None


def cmd_det(args) -> int:
    bases = _rational_list(args.bases)
    try:
        mults = [int(x) for x in args.mults.split(",") if x.strip()]
        cs = ConfluentSpec(bases, mults, args.r)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    closed = confluent_det_formula(cs)
    brute = determinant(confluent_vandermonde(cs))
    ok = closed == brute
    print(f"closed form  {format_rational(closed)}")
    print(f"elimination  {format_rational(brute)}")
    print("equal" if ok else "DIFFERENT")
    _write_report(args.report, _single(args, "det", {"bases": [format_rational(b) for b in cs.bases],
                                                     "multiplicities": list(cs.multiplicities), "r": cs.offset},
                                       "pass" if ok else "fail",
                                       {"closed_form": format_rational(closed), "elimination": format_rational(brute)}))
    return EXIT_OK if ok else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="virmod", description="Exact computations with tensor product "
                                     "Virasoro modules built from Omega modules and a highest-weight-type factor.")
    sub = parser.add_subparsers(dest="command", required=True)

    def with_spec(name: str, help_text: str) -> argparse.ArgumentParser:
        p = sub.add_parser(name, help=help_text)
        p.add_argument("spec", help="JSON spec file")
        p.add_argument("--report", metavar="PATH", help="write a JSON report here")
        return p

    p = with_spec("check", "run verification suites")
    p.add_argument("--suite", default="all", choices=SUITES + ("all",))
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--degree", type=int, help=f"exponent bound (default {DEFAULT_BOUNDS['degree']})")
    p.add_argument("--level", type=int, help=f"V-level bound (default {DEFAULT_BOUNDS['level']})")
    p.add_argument("--k", type=int, help=f"generator index bound (default {DEFAULT_BOUNDS['k']})")
    p.add_argument("--samples", type=int, help=f"random samples per check (default {DEFAULT_BOUNDS['samples']})")
    p.add_argument("--s", type=int, help=f"largest determinant size (default {DEFAULT_BOUNDS['s']})")
    p.set_defaults(func=cmd_check)

    p = with_spec("act", "apply d_k to an element")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--element", required=True)
    p.set_defaults(func=cmd_act)

    p = with_spec("omega", "evaluate the alternating operator omega^(s)_{l,m}")
    p.add_argument("--s", type=int, required=True)
    p.add_argument("--l", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--element", required=True)
    p.set_defaults(func=cmd_omega)

    p = with_spec("rank", "rank of {d_k f : k > K}")
    p.add_argument("--element", required=True)
    p.set_defaults(func=cmd_rank)

    p = with_spec("certify", "irreducibility certificate starting from an element")
    p.add_argument("--element", required=True)
    p.add_argument("--degree", type=int, default=2)
    p.add_argument("--level", type=int, default=1)
    p.set_defaults(func=cmd_certify)

    p = with_spec("classify", "decide isomorphism with another spec")
    p.add_argument("--other", required=True, help="second JSON spec file")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("det", help="confluent Vandermonde determinant, closed form against elimination")
    p.add_argument("--bases", required=True, help="comma-separated rationals")
    p.add_argument("--mults", required=True, help="comma-separated positive integers")
    p.add_argument("--r", type=int, default=0, help="first sample point")
    p.add_argument("--report", metavar="PATH")
    p.set_defaults(func=cmd_det)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (SpecError, ElementSyntaxError, UsageError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
