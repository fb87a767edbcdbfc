"""Command-line driver. Every command prints one JSON document on stdout.

Exit codes: 0 solvable / success, 1 unsolvable / not found, 2 unknown,
3 and above for errors (reported as {"error": ...}).
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

from . import acceptance
from .constructions import epsilon_obstruction, minus_one_witness
from .criteria import builtin_descriptors, load_descriptors
from .decider import (
    DEFAULT_BOUND,
    CriterionTrace,
    SearchBounds,
    Status,
    Verdict,
    criterion_trace,
    decide,
    find_witness,
)
from .local import LocalTable, LocalVerdict, local_table
from .pell import fundamental_unit, solve_pm
from .quadfield import field, parse_alpha, render

EXIT_CODES = {Status.SOLVABLE: 0, Status.UNSOLVABLE: 1, Status.UNKNOWN: 2}
EXIT_ERROR = 3
EXIT_INTERNAL = 4


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # argparse would exit 2, which means "unknown" here
        raise UsageError(message)


def verdict_row(v: LocalVerdict) -> dict:
    return {"place": str(v.place), "solvable": v.solvable, "reason": v.reason.value, "valuation": v.valuation}


def criterion_json(trace: CriterionTrace | None) -> dict | None:
    if trace is None:
        return None
    nf = trace.factorization
    return {
        "s1": nf.s1,
        "s2": nf.s2,
        "classes": [{"p": p, "e": e, "class": tag} for p, e, tag in nf.odd_primes],
        "sum": str(trace.sum),
        "accept": trace.accept,
    }


def verdict_json(v: Verdict) -> dict:
    return {
        "field": v.alpha.field.d,
        "alpha": render(v.alpha),
        "status": v.status.value,
        "mode": v.mode.value,
        "local": [verdict_row(lv) for lv in v.local.verdicts],
        "witness": [render(w) for w in v.witness] if v.witness else None,
        "criterion": criterion_json(v.criterion_trace),
    }


def _table_text(table: LocalTable) -> str:
    lines = [f"{'place':<12} {'ok':<5} {'val':>4}  reason"]
    for v in table.verdicts:
        val = "" if v.valuation is None else str(v.valuation)
        lines.append(f"{str(v.place):<12} {str(v.solvable):<5} {val:>4}  {v.reason.value}")
    return "\n".join(lines)


def _descriptors(args):
    desc = builtin_descriptors()
    if getattr(args, "descriptors", None):
        desc.update(load_descriptors(args.descriptors))
    return desc


def cmd_decide(args) -> tuple[dict, int, str | None]:
    alpha = parse_alpha(args.alpha, field(args.d))
    v = decide(alpha, SearchBounds(args.bound), _descriptors(args))
    return verdict_json(v), EXIT_CODES[v.status], _table_text(v.local)


def cmd_local(args):
    alpha = parse_alpha(args.alpha, field(args.d))
    table = local_table(alpha)
    doc = {
        "field": args.d,
        "alpha": render(alpha),
        "all_pass": table.all_pass,
        "local": [verdict_row(v) for v in table.verdicts],
    }
    return doc, 0 if table.all_pass else 1, _table_text(table)


def cmd_pell(args):
    sol = solve_pm(args.D, args.N)
    if sol is None:
        return {"solvable": False}, 1, None
    return {"D": sol.D, "N": sol.N, "x": str(sol.x0), "y": str(sol.y0)}, 0, None


def cmd_unit(args):
    eps = fundamental_unit(field(args.d))
    return {"d": args.d, "unit": render(eps), "norm": eps.norm()}, 0, None


def cmd_minus_one(args):
    res = minus_one_witness(args.p)
    doc = {
        "p": args.p,
        "field": -args.p,
        "witness": [render(w) for w in res.witness] if res.witness else None,
        "obstruction": [str(pl) for pl in res.obstruction],
    }
    return doc, 0 if res.witness else 1, None


def cmd_epsilon(args):
    ob = epsilon_obstruction(args.p)
    aux = ob.auxiliary
    doc = {
        "p": args.p,
        "epsilon": render(ob.epsilon),
        "place": str(ob.failing_place),
        "reason": ob.verdict.reason.value,
        "auxiliary": None
        if aux is None
        else {"epsilon1": render(aux.epsilon1), "A": str(aux.A), "B": str(aux.B)},
    }
    return doc, 0, None


def cmd_witness(args):
    alpha = parse_alpha(args.alpha, field(args.d))
    w = find_witness(alpha, SearchBounds(args.bound))
    doc = {"field": args.d, "alpha": render(alpha), "bound": args.bound, "witness": [render(x) for x in w] if w else None}
    return doc, 0 if w else 2, None


def cmd_criterion(args):
    alpha = parse_alpha(args.alpha, field(args.d))
    desc = _descriptors(args).get(args.d)
    if desc is None:
        raise UsageError(f"no criterion descriptor for d={args.d}")
    trace = criterion_trace(desc, alpha)
    return {"field": args.d, "alpha": render(alpha), "criterion": criterion_json(trace)}, 0 if trace.accept else 1, None


def cmd_selftest(args):
    results = acceptance.run_all()
    doc = {"suites": [{"name": r.name, "pass": r.passed, "detail": r.detail} for r in results]}
    text = "\n".join(r.line() for r in results)
    return doc, 0 if all(r.passed for r in results) else 1, text


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="twosquares", description="Sums of two integral squares in Q(sqrt(+-p)).")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(p, alpha=True, bound=False, desc=False):
        p.add_argument("--d", type=int, required=True, help="field Q(sqrt(d)), d = +-p")
        if alpha:
            p.add_argument("--alpha", required=True, help="element, e.g. '(3+1*sqrt(17))/2'")
        if bound:
            p.add_argument("--bound", type=int, default=DEFAULT_BOUND, help="witness search box half-width")
        if desc:
            p.add_argument("--descriptors", help="JSON file with extra criterion descriptors")
        p.add_argument("--pretty", action="store_true", help="indent JSON and print a table on stderr")

    p = sub.add_parser("decide", help="full verdict for x^2 + y^2 = alpha")
    common(p, bound=True, desc=True)
    p.set_defaults(func=cmd_decide)

    p = sub.add_parser("local", help="per-place local solvability")
    common(p)
    p.set_defaults(func=cmd_local)

    p = sub.add_parser("witness", help="bounded search for an explicit solution")
    common(p, bound=True)
    p.set_defaults(func=cmd_witness)

    p = sub.add_parser("criterion", help="norm factorization and weighted sum")
    common(p, desc=True)
    p.set_defaults(func=cmd_criterion)

    p = sub.add_parser("unit", help="fundamental unit of a real field")
    common(p, alpha=False)
    p.set_defaults(func=cmd_unit)

    p = sub.add_parser("pell", help="solve x^2 - D y^2 = N for N in {+-1, +-2}")
    p.add_argument("--D", type=int, required=True)
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--pretty", action="store_true")
    p.set_defaults(func=cmd_pell)

    for name, func in (("minus-one", cmd_minus_one), ("epsilon-obstruction", cmd_epsilon)):
        p = sub.add_parser(name)
        p.add_argument("--p", type=int, required=True, help="a prime")
        p.add_argument("--pretty", action="store_true")
        p.set_defaults(func=func)

    p = sub.add_parser("selftest", help="run the acceptance battery")
    p.add_argument("--pretty", action="store_true")
    p.set_defaults(func=cmd_selftest)
    return parser


def run(argv: Sequence[str] | None = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    pretty = False
    try:
        args = build_parser().parse_args(argv)
        pretty = args.pretty
        doc, code, text = args.func(args)
    except (UsageError, ValueError, ArithmeticError, OSError, KeyError) as exc:
        doc, code, text = {"error": f"{type(exc).__name__}: {exc}"}, EXIT_ERROR, None
    except Exception as exc:
        doc, code, text = {"error": f"internal {type(exc).__name__}: {exc}"}, EXIT_INTERNAL, None
    json.dump(doc, stdout, indent=2 if pretty else None)
    stdout.write("\n")
    if pretty and text:
        stderr.write(text + "\n")
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
