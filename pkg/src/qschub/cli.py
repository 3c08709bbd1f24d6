"""Command line driver: compute members, expand, verify, and emit tables.

Exit codes: 0 on success and on verified identities, 1 when a verification
suite finds a falsified identity, 2 on usage errors.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import selftest
from .parabolic import expand_in_parabolic_basis, parabolic_q_double_schubert
from .poly import (
    PolynomialParseError,
    format_polynomial,
    parse_polynomial,
    polynomial_to_json,
)
from .quantum_ring import StructureTable
from .schubert import FAMILY_KINDS, expand_in_schubert_basis, schubert_polynomial
from .weyl import ParabolicContext, format_permutation, length, parse_permutation

FAMILY_FLAGS = tuple(kind.replace("_", "-") for kind in FAMILY_KINDS)

VERIFY_SUITES = {
    "chevalley": "divisor multiplication rule",
    "cauchy": "interpolation sums",
    "quantization": "quantization map",
    "stability": "stability under appended blocks",
    "bijection": "correction sum pairings",
}


class UsageError(Exception):
    pass


def _parse_composition(text: str) -> ParabolicContext:
    try:
        parts = tuple(int(piece) for piece in text.split(","))
        return ParabolicContext(parts)
    except ValueError as exc:
        raise UsageError(f"bad composition {text!r}: {exc}") from None


def _parse_perm(text: str):
    try:
        return parse_permutation(text)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _emit(args, payload_text: str):
    if getattr(args, "out", None):
        with open(args.out, "w", encoding="utf-8") as handle:
            handle.write(payload_text + "\n")
    else:
        print(payload_text)


def _cmd_poly(args) -> int:
    w = _parse_perm(args.w)
    if args.parabolic:
        if args.family is not None:
            raise UsageError("--family does not combine with --parabolic")
        ctx = _parse_composition(args.parabolic)
        try:
            f = parabolic_q_double_schubert(ctx, w)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
    else:
        flag = args.family or "quantum-double"
        if flag not in FAMILY_FLAGS:
            raise UsageError(f"--family must be one of {', '.join(FAMILY_FLAGS)}")
        f = schubert_polynomial(w, flag.replace("-", "_"))
    if args.format == "json":
        _emit(args, json.dumps(polynomial_to_json(f)))
    else:
        _emit(args, format_polynomial(f))
    return 0


def _cmd_expand(args) -> int:
    try:
        f = parse_polynomial(args.poly)
    except PolynomialParseError as exc:
        raise UsageError(str(exc)) from None
    try:
        if args.parabolic:
            if args.family is not None:
                raise UsageError("--family does not combine with --parabolic")
            ctx = _parse_composition(args.parabolic)
            expansion = expand_in_parabolic_basis(f, ctx)
        else:
            flag = args.family or "quantum-double"
            if flag not in FAMILY_FLAGS:
                raise UsageError(f"--family must be one of {', '.join(FAMILY_FLAGS)}")
            expansion = expand_in_schubert_basis(f, flag.replace("-", "_"))
    except UsageError:
        raise
    except (ValueError, RuntimeError) as exc:
        raise UsageError(str(exc)) from None
    items = sorted(expansion.items(), key=lambda kv: (length(kv[0]), kv[0]))
    if args.format == "json":
        payload = [
            {"w": format_permutation(w), "coeff": polynomial_to_json(c)}
            for w, c in items
        ]
        _emit(args, json.dumps(payload))
    else:
        lines = [f"{format_permutation(w)}: {format_polynomial(c)}" for w, c in items]
        _emit(args, "\n".join(lines) if lines else "0")
    return 0


def _check_stability(max_n: int) -> tuple:
    """Members are unchanged by appending a trailing singleton block."""
    count = 0
    for n in range(2, max_n + 1):
        for comp in selftest.compositions(n):
            ctx = ParabolicContext(comp)
            wider = ctx.extend(1)
            for w in ctx.minimal_reps():
                if parabolic_q_double_schubert(
                    wider, w
                ) != parabolic_q_double_schubert(ctx, w):
                    return False, f"extension changes the member at {comp}, {list(w)}"
                count += 1
    return True, f"{count} members stable under extension"


def _cmd_verify(args) -> int:
    max_n = args.max_n
    flavor = args.flavor.replace("-", "_") if args.flavor else None
    if args.suite == "chevalley":
        ok, detail = selftest.check_chevalley(max_n=max_n, flavor=flavor)
    elif args.suite == "cauchy":
        ok, detail = selftest.check_cauchy(max_n=max_n)
    elif args.suite == "quantization":
        ok, detail = selftest.check_quantization(max_n=max_n)
    elif args.suite == "stability":
        ok, detail = _check_stability(max_n)
    else:
        ok, detail = selftest.check_bijections(max_n=max_n)
    status = "verified" if ok else "FALSIFIED"
    print(f"{args.suite} {status}: {detail}")
    return 0 if ok else 1


def _format_table_text(table: StructureTable) -> str:
    lines = []
    for u in table.basis:
        for v in table.basis:
            terms = sorted(
                table.entries[(u, v)].items(), key=lambda kv: (length(kv[0]), kv[0])
            )
            rhs = " + ".join(
                f"({format_polynomial(c)})*{table._format_perm(w)}" for w, c in terms
            )
            lines.append(
                f"{table._format_perm(u)} * {table._format_perm(v)} = {rhs or '0'}"
            )
    return "\n".join(lines)


def _cmd_table(args) -> int:
    if bool(args.n) == bool(args.parabolic):
        raise UsageError("pass exactly one of --n or --parabolic")
    domain = _parse_composition(args.parabolic) if args.parabolic else args.n
    table = StructureTable.build(domain, max_workers=args.workers)
    if args.format == "json":
        _emit(args, table.to_json())
    else:
        _emit(args, _format_table_text(table))
    return 0


def _cmd_selftest(args) -> int:
    return 0 if selftest.run_all() else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qschub",
        description="Exact quantum double Schubert calculus for flag and partial flag varieties.",
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)

    poly = sub.add_parser("poly", help="print one basis member")
    poly.add_argument("--w", required=True, help='permutation, e.g. "[3,1,2]"')
    poly.add_argument("--family", choices=FAMILY_FLAGS, default=None)
    poly.add_argument("--parabolic", help='composition, e.g. "2,1,3"')
    poly.add_argument("--format", choices=("text", "json"), default="text")
    poly.add_argument("--out")
    poly.set_defaults(func=_cmd_poly)

    expand = sub.add_parser("expand", help="expand a polynomial over a basis")
    expand.add_argument("--poly", required=True, help="polynomial text")
    expand.add_argument("--family", choices=FAMILY_FLAGS, default=None)
    expand.add_argument("--parabolic", help='composition, e.g. "2,1,3"')
    expand.add_argument("--format", choices=("text", "json"), default="text")
    expand.add_argument("--out")
    expand.set_defaults(func=_cmd_expand)

    verify = sub.add_parser("verify", help="run a named identity suite")
    verify.add_argument("suite", choices=sorted(VERIFY_SUITES))
    verify.add_argument("--flavor", help="restrict chevalley to one flavor")
    verify.add_argument("--max-n", type=int, default=4, dest="max_n")
    verify.set_defaults(func=_cmd_verify)

    table = sub.add_parser("table", help="structure constants of the finite ring")
    table.add_argument("--n", type=int)
    table.add_argument("--parabolic", help='composition, e.g. "2,1,3"')
    table.add_argument("--format", choices=("text", "json"), default="json")
    table.add_argument("--out")
    table.add_argument("--workers", type=int, default=1)
    table.set_defaults(func=_cmd_table)

    selftest_cmd = sub.add_parser("selftest", help="run every acceptance criterion")
    selftest_cmd.set_defaults(func=_cmd_selftest)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
