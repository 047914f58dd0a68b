"""
Command-line front end.

JSON goes to stdout, a one-line human summary to stderr (suppressed by
--quiet). Exit codes: 0 ok, 1 verification failures, 2 bad input,
3 precondition violation, 4 enumeration cap exceeded, 5 realization failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .errors import EnumerationCapError, InvariantError, PreconditionError, RealizationError
from .kl import double_parabolic_kl, get_engine, kl_poly, mu, parabolic_kl
from .multiseg import Multisegment, enumerate_poset
from .param import ParamContext, canonical_baseline, phi, phi_inverse, verify_param_suite
from .polynomial import HalfExpPoly
from .reduce import interval_realization, reduce_to_parabolic, verify_realization_corpus
from .symgroup import GenSet, Permutation, bruhat_leq, longest_element, max_double_coset_element

EXIT_OK, EXIT_FAIL, EXIT_PARSE, EXIT_PRE, EXIT_CAP, EXIT_REALIZE = 0, 1, 2, 3, 4, 5


class InputError(ValueError):
    pass


def _emit(args, payload: dict, summary: str):
    sys.stdout.write(json.dumps(payload, indent=2, ensure_ascii=False) + "\n")
    if not args.quiet:
        sys.stderr.write(summary + "\n")


def _perm(text: str, n: int | None, name: str) -> Permutation:
    try:
        w = Permutation.parse(text)
    except ValueError as exc:
        raise InputError(f"--{name}: {exc}") from None
    if n is not None and w.n != n:
        raise InputError(f"--{name}: {text!r} is not in S_{n}")
    return w


def _genset(n: int, text: str | None, name: str) -> GenSet:
    try:
        return GenSet.parse(n, text)
    except ValueError as exc:
        raise InputError(f"--{name}: {exc}") from None


def _ms(text: str) -> Multisegment:
    try:
        return Multisegment.parse(text)
    except ValueError as exc:
        raise InputError(str(exc)) from None


def _poly_payload(p: HalfExpPoly, m: int) -> dict:
    return {"poly": p.to_json(), "pretty": str(p), "mu": m}


def cmd_kl(args) -> int:
    x = _perm(args.x, args.n, "x")
    n = args.n or x.n
    y = _perm(args.y, n, "y")
    if args.J1 is None and args.J2 is None:
        p, m = kl_poly(x, y), mu(x, y)
        payload = {"n": n, "x": str(x), "y": str(y), **_poly_payload(p, m)}
        _emit(args, payload, f"P_{{{x},{y}}} = {p}")
        return EXIT_OK
    return _double(args, x, y, n, _genset(n, args.J1, "J1"), _genset(n, args.J2, "J2"))


def _double(args, x, y, n, J1, J2) -> int:
    if not bruhat_leq(x, y):
        raise PreconditionError(f"double parabolic KL needs x <= y, got {x}, {y}")
    p = double_parabolic_kl(x, y, J1, J2)
    w1, w2 = max_double_coset_element(x, J1, J2), max_double_coset_element(y, J1, J2)
    payload = {"n": n, "x": str(x), "y": str(y), "J1": J1.to_json(), "J2": J2.to_json(),
               "max_elements": [str(w1), str(w2)], **_poly_payload(p, get_engine(n).mu(w1, w2))}
    _emit(args, payload, f"P^{{{J1}|{J2}}}_{{{x},{y}}} = {p}")
    return EXIT_OK


def cmd_pkl(args) -> int:
    x = _perm(args.x, args.n, "x")
    n = args.n or x.n
    y = _perm(args.y, n, "y")
    if args.J is not None:
        J = _genset(n, args.J, "J")
        p = parabolic_kl(x, y, J)
        wJ = longest_element(J)
        m = get_engine(n).mu(x * wJ, y * wJ)
        payload = {"n": n, "x": str(x), "y": str(y), "J": J.to_json(), **_poly_payload(p, m)}
        _emit(args, payload, f"P^{{{J}}}_{{{x},{y}}} = {p}")
        return EXIT_OK
    return _double(args, x, y, n, _genset(n, args.J1, "J1"), _genset(n, args.J2, "J2"))


def _context(args) -> ParamContext:
    if args.baseline:
        base = _ms(args.baseline)
        n = len(base)
        J1 = _genset(n, args.J1, "J1") if args.J1 is not None else None
        J2 = _genset(n, args.J2, "J2") if args.J2 is not None else None
        return ParamContext.from_baseline(base, J1, J2)
    if args.n is None:
        raise InputError("either --n or --baseline is required")
    return canonical_baseline(args.n, _genset(args.n, args.J1, "J1"), _genset(args.n, args.J2, "J2"))


def cmd_phi(args) -> int:
    ctx = _context(args)
    w = _perm(args.w, ctx.n, "w")
    b = phi(ctx, w)
    payload = {"baseline": str(ctx.baseline), "J1": ctx.J1.to_json(), "J2": ctx.J2.to_json(),
               "w": str(w), "multisegment": str(b)}
    _emit(args, payload, f"phi({w}) = {b}")
    return EXIT_OK


def cmd_phiinv(args) -> int:
    ctx = _context(args)
    b = _ms(args.ms)
    w = phi_inverse(ctx, b)
    payload = {"baseline": str(ctx.baseline), "J1": ctx.J1.to_json(), "J2": ctx.J2.to_json(),
               "multisegment": str(b), "w": str(w)}
    _emit(args, payload, f"phi^-1({b}) = {w}")
    return EXIT_OK


def cmd_poset(args) -> int:
    a = _ms(args.multisegment)
    p = enumerate_poset(a)
    if args.dot:
        Path(args.dot).write_text(p.to_dot(), encoding="utf-8")
    payload = p.to_json()
    payload["minimum"] = str(p.minimum())
    _emit(args, payload, f"S({a}): {len(p)} elements, {len(p.covers)} covers")
    return EXIT_OK


def cmd_reduce(args) -> int:
    a = _ms(args.multisegment)
    if not len(a):
        raise PreconditionError("cannot reduce the empty multisegment")
    try:
        real = interval_realization(a)
    except RealizationError as exc:
        payload = {**reduce_to_parabolic(a).to_json(), "realization_verified": False,
                   "counterexample": exc.counterexample}
        _emit(args, payload, str(exc))
        return EXIT_REALIZE
    payload = {**real.witness.to_json(), "realization_verified": True,
               "interval_size": len(real.poset), "upper_poset_size": len(real.upper)}
    _emit(args, payload, f"{a} -> {real.witness.parabolic} via chain "
                         f"{[str(d) for d in real.witness.chain]}, verified")
    return EXIT_OK


def _span(text: str) -> tuple[int, int]:
    try:
        lo, hi = (int(t) for t in text.split(".."))
    except ValueError:
        raise InputError(f"--span must look like 0..5, got {text!r}") from None
    if lo > hi:
        raise InputError(f"--span is empty: {text!r}")
    return lo, hi


def cmd_verify(args) -> int:
    suites = ["relations", "param", "realization"] if args.suite == "all" else [args.suite]
    reports = []
    for suite in suites:
        if suite == "relations":
            from .kl import verify_relations
            reports.append(verify_relations(args.n))
        elif suite == "param":
            reports.append(verify_param_suite(args.n))
        else:
            lo, hi = _span(args.span)
            reports.append(verify_realization_corpus(args.max_segments, lo, hi, jobs=args.jobs))
    ok = all(r.ok for r in reports)
    payload = {"ok": ok, "reports": [r.to_json() for r in reports]}
    _emit(args, payload, "\n".join(r.summary() for r in reports))
    return EXIT_OK if ok else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="klms", description="Exact Kazhdan-Lusztig polynomials of type A and multisegment posets.",
        epilog="JSON is written to stdout, a short summary to stderr.")
    parser.add_argument("--quiet", action="store_true", help="suppress the human-readable summary")
    # also accepted after the subcommand; SUPPRESS keeps a leading --quiet from being reset
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--quiet", action="store_true", default=argparse.SUPPRESS,
                        help="suppress the human-readable summary")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, **kw):
        return sub.add_parser(name, parents=[common], **kw)

    def perm_pair(p):
        p.add_argument("--n", type=int)
        p.add_argument("--x", required=True, help="one-line notation, e.g. 1234")
        p.add_argument("--y", required=True)
        p.add_argument("--J1", help="generator indices, e.g. 1,3")
        p.add_argument("--J2")

    p = add("kl", help="KL polynomial P_{x,y} (double parabolic with --J1/--J2)")
    perm_pair(p)
    p.set_defaults(func=cmd_kl)

    p = add("pkl", help="parabolic KL polynomial (--J one-sided, or --J1/--J2)")
    perm_pair(p)
    p.add_argument("--J")
    p.set_defaults(func=cmd_pkl)

    def ctx_args(p):
        p.add_argument("--n", type=int)
        p.add_argument("--J1")
        p.add_argument("--J2")
        p.add_argument("--baseline", help="user baseline multisegment")

    p = add("phi", help="multisegment of a double coset representative")
    ctx_args(p)
    p.add_argument("--w", required=True)
    p.set_defaults(func=cmd_phi)

    p = add("phiinv", help="double coset representative of a multisegment")
    ctx_args(p)
    p.add_argument("--ms", required=True)
    p.set_defaults(func=cmd_phiinv)

    p = add("poset", help="enumerate S(a)")
    p.add_argument("multisegment", help='e.g. "2*[0,1]+[1,2]"')
    p.add_argument("--dot", help="write the Hasse diagram to this DOT file")
    p.add_argument("--json", action="store_true", help="JSON output (always on; kept for scripts)")
    p.set_defaults(func=cmd_poset)

    p = add("reduce", help="reduce to parabolic type and realize S(a) as an interval")
    p.add_argument("multisegment")
    p.set_defaults(func=cmd_reduce)

    p = add("verify", help="run a verification suite")
    p.add_argument("--suite", required=True, choices=["relations", "param", "realization", "all"])
    p.add_argument("--n", type=int, default=4)
    p.add_argument("--max-segments", type=int, default=3)
    p.add_argument("--span", default="0..5")
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except InputError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_PARSE
    except (PreconditionError, InvariantError) as exc:
        sys.stderr.write(f"precondition violated: {exc}\n")
        return EXIT_PRE
    except EnumerationCapError as exc:
        sys.stderr.write(f"enumeration cap exceeded: {exc}\n")
        return EXIT_CAP
    except RealizationError as exc:
        sys.stderr.write(f"realization failed: {exc}\n")
        return EXIT_REALIZE


if __name__ == "__main__":
    sys.exit(main())
