"""Command-line front end.

Subcommands: normalize (parse, normalize, print in a chosen basis), table
(emit the structure-constant table as JSON or CSV), verify (run the
cross-validation suite, exit 0 only if everything passes), and the small
lookups dim, minpoly and basis. Exit codes: 0 success, 1 failed check or I/O
error, 2 usage or parse error. Output is deterministic for fixed inputs.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from fractions import Fraction

from . import algebra, oracle
from .algebra import SchurContext, StructureTable
from .elements import Element, Flavor, render_element
from .exprs import ParseError, parse_element, render_plain_terms
from .qpoly import prender


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="schur2",
        description="Exact computations in the rank-two Schur algebra S(2,d).",
    )
    sub = p.add_subparsers(dest="command", required=True)

    n = sub.add_parser("normalize", help="normalize an expression onto the basis")
    n.add_argument("--d", type=int, required=True, metavar="D")
    n.add_argument("--flavor", choices=["fhe", "ehf"], default="fhe")
    n.add_argument(
        "--basis", choices=["kostant", "power", "hbasis"], default="kostant"
    )
    n.add_argument("expr", help="expression in e, f, h, H1, H2, E(m), F(m), binom")

    t = sub.add_parser("table", help="write the structure-constant table")
    t.add_argument("--d", type=int, required=True, metavar="D")
    t.add_argument("--out", required=True, metavar="PATH")
    t.add_argument("--format", dest="fmt", choices=["json", "csv"], default="json")

    v = sub.add_parser("verify", help="run the cross-validation suite")
    v.add_argument("--d", type=int, required=True, metavar="D")
    v.add_argument(
        "--oracle", choices=["tensor", "weight", "both", "auto"], default="auto"
    )
    v.add_argument("--json", action="store_true", help="emit the report as JSON")

    for name, needs_expr in (("dim", False), ("minpoly", True), ("basis", False)):
        s = sub.add_parser(name)
        s.add_argument("--d", type=int, required=True, metavar="D")
        if needs_expr:
            s.add_argument("expr")
    return p


def _table_document(table: StructureTable) -> dict:
    def coeff(q) -> tuple[str, str]:
        q = Fraction(q)
        return str(q.numerator), str(q.denominator)

    products = []
    for i, j in sorted(table.products):
        terms = []
        for k, q in table.products[(i, j)]:
            num, den = coeff(q)
            terms.append({"k": k, "num": num, "den": den})
        products.append({"i": i, "j": j, "terms": terms})
    return {
        "d": table.d,
        "flavor": table.flavor.value,
        "basis": [{"a": a, "b": b, "c": c} for (a, b, c) in table.basis],
        "products": products,
    }


def _cmd_normalize(args: argparse.Namespace) -> int:
    flavor = Flavor(args.flavor)
    ctx = SchurContext(args.d, flavor)
    x = algebra.normalize(parse_element(args.expr, flavor), ctx)
    if args.basis == "kostant":
        print(render_element(x))
    elif args.basis == "power":
        print(render_plain_terms(algebra.to_power_basis(x, ctx), flavor, flavor.main_var))
    else:
        print(render_plain_terms(algebra.to_h_basis(x, ctx), flavor, "h"))
    return 0


def _cmd_table(args: argparse.Namespace) -> int:
    ctx = SchurContext(args.d)
    table = algebra.structure_constants(ctx)
    with open(args.out, "w", encoding="utf-8", newline="") as fh:
        if args.fmt == "json":
            json.dump(_table_document(table), fh, indent=2)
            fh.write("\n")
        else:
            writer = csv.writer(fh, lineterminator="\n")
            writer.writerow(["i", "j", "k", "num", "den"])
            for i, j in sorted(table.products):
                for k, q in table.products[(i, j)]:
                    q = Fraction(q)
                    writer.writerow([i, j, k, str(q.numerator), str(q.denominator)])
    return 0


def _cmd_verify(args: argparse.Namespace) -> int:
    report = oracle.verify_suite(args.d, oracle=args.oracle)
    if args.json:
        print(json.dumps(report.as_dict(), indent=2))
    else:
        for check in report.checks:
            status = "PASS" if check.passed else "FAIL"
            detail = f" ({check.detail})" if check.detail else ""
            print(f"{status} {check.name}{detail}")
        passed = sum(1 for c in report.checks if c.passed)
        print(f"verify d={args.d}: {passed}/{len(report.checks)} checks passed")
    return 0 if report.all_passed else 1


def _cmd_dim(args: argparse.Namespace) -> int:
    SchurContext(args.d)
    print(algebra.dimension(args.d))
    return 0


def _cmd_minpoly(args: argparse.Namespace) -> int:
    ctx = SchurContext(args.d)
    x = parse_element(args.expr, ctx.flavor)
    print(prender(algebra.min_poly(x, ctx)))
    return 0


def _cmd_basis(args: argparse.Namespace) -> int:
    ctx = SchurContext(args.d)
    for mono in algebra.basis(ctx):
        print(render_element(Element.monomial(*mono, ctx.flavor)))
    return 0


_HANDLERS = {
    "normalize": _cmd_normalize,
    "table": _cmd_table,
    "verify": _cmd_verify,
    "dim": _cmd_dim,
    "minpoly": _cmd_minpoly,
    "basis": _cmd_basis,
}


def entry(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return _HANDLERS[args.command](args)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(entry())
