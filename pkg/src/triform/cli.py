"""Command-line front end.

Verbs:
  analyze       full verdict pipeline for a parameter triple or expression
  sweep         decide every hyperbolic integer triple up to a bound
  series-check  Puiseux leading-term analysis for a coefficient function
  oracle        rational solutions of the associated Riccati equation

Machine-readable output (--json) is a single JSON object per invocation
with fixed field order {input, normalized, triangular, hyperbolic,
kimura, oracle, conclusion, citations}, suitable for golden files.

Exit codes: 0 conclusion reached, 2 input error, 3 internal consistency
failure (a cross-check contradiction, which indicates a bug).
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import List, Optional, Tuple

from . import kimura, puiseux, riccati, schwarzian
from .parser import DivisionByZeroConstant, ExprSyntaxError, parse_ratfunc
from .polynomials import RatFunc
from .scalars import Q, ZeroParameter
from .schwarzian import (
    Moebius,
    NotTriangular,
    SYMBOLIC_INVERSE_SQUARE,
    TriangleParams,
    build_triangular_R,
    moebius_pullback,
    recognize_triangular,
)

NO_ORDER_TWO_SUBVARIETIES = "NoOrderTwoSubvarieties"
ALGEBRAIC_SOLUTION_INDICATED = kimura.ALGEBRAIC_SOLUTION_INDICATED
NOT_TRIANGULAR = "NotTriangular"
INDETERMINATE = "IndeterminateIrrationalParameters"

CITATIONS = {
    "table": (
        "Decision table: Kimura's classification of algebraic solutions of "
        "the hypergeometric-type Riccati equation (Kimura 1969)."
    ),
    "liouvillian": (
        "Rational-solution oracle: the rational branch of Kovacic's "
        "algorithm for Liouvillian solutions of second-order linear "
        "equations (Kovacic 1986)."
    ),
    "conclusion": (
        "No-order-two-subvarieties conclusion: Puiseux-series reduction of "
        "the Schwarzian equation to its associated Riccati equation; the "
        "further step to strong minimality is model-theoretic and is not "
        "re-proved by this tool."
    ),
}


class InputError(ValueError):
    pass


def _witness_json(w) -> Optional[dict]:
    if w is None:
        return None
    if isinstance(w, kimura.LatticeWitness):
        return {
            "condition": 1,
            "row": w.row,
            "permutation": list(w.permutation),
            "signs": list(w.signs),
            "integers": list(w.integers),
        }
    return {"condition": 2, "signs": list(w.signs), "value": w.value}


def _resolve_input(args) -> Tuple[Optional[TriangleParams], RatFunc, dict]:
    """Build (params-if-known, R, input-echo) from --triangle/--expr."""
    if args.triangle is not None:
        try:
            params = TriangleParams.parse(args.triangle)
        except (ValueError, ZeroParameter) as exc:
            raise InputError(f"bad --triangle value: {exc}") from exc
        R = build_triangular_R(params)
        echo = {"triangle": args.triangle}
    elif args.expr is not None:
        try:
            R = parse_ratfunc(args.expr)
        except (ExprSyntaxError, DivisionByZeroConstant, ValueError) as exc:
            raise InputError(f"bad --expr value: {exc}") from exc
        params = None
        echo = {"expr": args.expr}
    else:
        raise InputError("one of --triangle or --expr is required")
    if getattr(args, "moebius", None):
        try:
            m = Moebius.parse(args.moebius)
        except (ValueError, ZeroDivisionError) as exc:
            raise InputError(f"bad --moebius value: {exc}") from exc
        R = moebius_pullback(R, m)
        params = None  # parameters must be re-recognized after the pullback
        echo["moebius"] = args.moebius
    return params, R, echo


def _recognize(R: RatFunc):
    """(triangular-json, params-or-None, symbolic-flag)."""
    try:
        rec = recognize_triangular(R)
    except NotTriangular as exc:
        info = {"recognized": False, "reason": str(exc)}
        if exc.inverse_squares is not None:
            info["inverse_squares"] = [str(q) for q in exc.inverse_squares]
        return info, None, False
    info = {
        "recognized": True,
        "inverse_squares": [str(q) for q in rec.inverse_squares],
        "params_up_to_sign": [str(p) for p in rec.params],
    }
    if rec.has_exact_params:
        return info, rec.triangle_params(), False
    return info, None, True


def cmd_analyze(args, out) -> int:
    params, R, echo = _resolve_input(args)
    doc = {"input": echo, "normalized": R.render("y")}
    if params is None:
        tri_info, params, symbolic = _recognize(R)
    else:
        tri_info, _, symbolic = _recognize(R)
    doc["triangular"] = tri_info

    if params is None:
        doc["hyperbolic"] = None
        doc["kimura"] = None
        doc["oracle"] = None
        doc["conclusion"] = INDETERMINATE if symbolic else NOT_TRIANGULAR
        doc["citations"] = [CITATIONS["table"]]
        _emit(doc, args, out)
        return 0

    doc["hyperbolic"] = params.is_hyperbolic
    verdict = kimura.decide_condition_ric(params)
    doc["kimura"] = {
        "outcome": verdict.outcome,
        "witness": _witness_json(verdict.witness),
    }

    oracle_doc = None
    status = None
    if args.oracle:
        report = riccati.cross_check(params, degree_bound=args.degree_bound)
        status = report.status
        oracle_doc = {
            "solutions": [u.render("y") for u in report.oracle.solutions],
            "searched": len(report.oracle.certificate.combos),
            "consistency": report.status,
            "note": report.note,
        }
    doc["oracle"] = oracle_doc
    doc["conclusion"] = (
        NO_ORDER_TWO_SUBVARIETIES if verdict.holds else ALGEBRAIC_SOLUTION_INDICATED
    )
    doc["citations"] = [CITATIONS["table"], CITATIONS["liouvillian"], CITATIONS["conclusion"]]
    _emit(doc, args, out)
    return 3 if status == riccati.CONTRADICTION else 0


def cmd_sweep(args, out) -> int:
    if args.bound < 2:
        raise InputError("--bound must be at least 2")
    results = _run_sweep(args.bound, args.jobs)
    bad = [(p, v) for p, v in results if not v.holds]
    doc = {
        "input": {"bound": args.bound},
        "normalized": None,
        "triangular": None,
        "hyperbolic": True,
        "kimura": {
            "outcome": kimura.CONDITION_RIC_HOLDS if not bad else ALGEBRAIC_SOLUTION_INDICATED,
            "witness": None,
        },
        "oracle": None,
        "conclusion": (
            f"all {len(results)} hyperbolic triples: ConditionRicHolds"
            if not bad
            else f"{len(bad)} of {len(results)} triples fired a witness"
        ),
        "citations": [CITATIONS["table"], CITATIONS["conclusion"]],
    }
    if args.full:
        doc["table"] = [
            {"triangle": str(p), "outcome": v.outcome} for p, v in results
        ]
    _emit(doc, args, out)
    return 0 if not bad else 3


def _run_sweep(bound: int, jobs: int):
    triples = list(kimura.hyperbolic_integer_triples(bound))
    if jobs <= 1:
        return [(p, kimura.decide_condition_ric(p)) for p in triples]
    from concurrent.futures import ProcessPoolExecutor

    chunk = max(1, len(triples) // (jobs * 8))
    parts = [triples[i : i + chunk] for i in range(0, len(triples), chunk)]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        merged = []
        for block in pool.map(_decide_block, parts):
            merged.extend(block)
    return merged


def _decide_block(triples):
    return [(p, kimura.decide_condition_ric(p)) for p in triples]


def cmd_series_check(args, out) -> int:
    lambda0 = Q(0)
    if args.lambda0 is not None:
        from fractions import Fraction

        try:
            lambda0 = Q(Fraction(args.lambda0))
        except ValueError as exc:
            raise InputError(f"bad --lambda0 value: {exc}") from exc
    if args.triangle is None and args.expr is None:
        if args.lambda0 is None:
            raise InputError("one of --triangle, --expr, or --lambda0 is required")
        R = RatFunc.zero()
        echo = {"lambda0": args.lambda0}
    else:
        _, R, echo = _resolve_input(args)
        if args.lambda0 is not None:
            echo["lambda0"] = args.lambda0

    a0: Optional[RatFunc] = None
    if args.a0 is not None:
        try:
            a0 = parse_ratfunc(args.a0)
        except (ExprSyntaxError, DivisionByZeroConstant, ValueError) as exc:
            raise InputError(f"bad --a0 value: {exc}") from exc
        echo["a0"] = args.a0
    elif lambda0 == 0:
        # try the oracle: a rational Riccati solution u gives a0 = 2u
        found = riccati.rational_solutions(
            riccati.associate_riccati(R), degree_bound=args.degree_bound
        )
        if found.solutions:
            a0 = found.solutions[0].scale(Q(2))

    report = puiseux.leading_constraints(lambda0, a0, R)
    doc = {
        "input": echo,
        "normalized": R.render("y"),
        "triangular": None,
        "hyperbolic": None,
        "kimura": None,
        "oracle": None,
        "conclusion": report.describe(),
        "citations": [CITATIONS["conclusion"]],
        "series": {
            "lambda0": str(report.lambda0),
            "a0": None if report.a0 is None else report.a0.render("y"),
            "obstruction_exponent": (
                None
                if report.obstruction_exponent is None
                else str(report.obstruction_exponent)
            ),
            "satisfied": report.satisfied,
            "truncation": str(args.truncation),
        },
    }
    # demonstrate the residual at the requested truncation when a0 is known
    if a0 is not None and lambda0 == 0:
        U = puiseux.PuiseuxSeries.monomial(a0, Q(0), cutoff=Q(args.truncation))
        E = puiseux.residual(U, R)
        doc["series"]["residual"] = E.render()
    _emit(doc, args, out)
    return 0


def cmd_oracle(args, out) -> int:
    params, R, echo = _resolve_input(args)
    eq = riccati.associate_riccati(R)
    try:
        result = riccati.rational_solutions(eq, degree_bound=args.degree_bound)
    except (riccati.NonRationalPoles, riccati.UnsupportedAtInfinity) as exc:
        raise InputError(str(exc)) from exc
    doc = {
        "input": echo,
        "normalized": R.render("y"),
        "triangular": None,
        "hyperbolic": None,
        "kimura": None,
        "oracle": {
            "equation": eq.render(),
            "solutions": [u.render("y") for u in result.solutions],
            "searched": len(result.certificate.combos),
            "families": list(result.certificate.families),
            "notes": list(result.certificate.notes),
        },
        "conclusion": (
            f"{len(result.solutions)} rational solution(s)"
            if result.solutions
            else "no rational solutions (rational branch exhaustive)"
        ),
        "citations": [CITATIONS["liouvillian"]],
    }
    _emit(doc, args, out)
    return 0


def _emit(doc: dict, args, out) -> None:
    if args.json:
        text = json.dumps(doc, indent=2, sort_keys=False)
    else:
        text = _human(doc)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        print(text, file=out)


def _human(doc: dict) -> str:
    lines = []
    lines.append(f"input:       {doc['input']}")
    if doc.get("normalized"):
        lines.append(f"R(y)       = {doc['normalized']}")
    tri = doc.get("triangular")
    if tri is not None:
        if tri["recognized"]:
            lines.append(
                "triangular:  yes, inverse squares "
                + str(tuple(tri["inverse_squares"]))
                + ", parameters up to sign "
                + str(tuple(tri["params_up_to_sign"]))
            )
        else:
            lines.append(f"triangular:  no ({tri['reason']})")
    if doc.get("hyperbolic") is not None:
        lines.append(f"hyperbolic:  {'yes' if doc['hyperbolic'] else 'no'}")
    kim = doc.get("kimura")
    if kim is not None:
        lines.append(f"kimura:      {kim['outcome']}")
        if kim["witness"] is not None:
            lines.append(f"witness:     {kim['witness']}")
    orc = doc.get("oracle")
    if orc is not None:
        sols = orc.get("solutions", [])
        lines.append(
            f"oracle:      {len(sols)} rational solution(s)"
            + (f": u = {'; u = '.join(sols)}" if sols else "")
        )
        if orc.get("consistency"):
            lines.append(f"consistency: {orc['consistency']} ({orc['note']})")
    ser = doc.get("series")
    if ser is not None:
        lines.append(f"lambda0:     {ser['lambda0']}")
        if ser.get("residual") is not None:
            lines.append(f"residual:    {ser['residual']}")
    lines.append(f"conclusion:  {doc['conclusion']}")
    for row in doc.get("table", []):
        lines.append(f"  {row['triangle']}: {row['outcome']}")
    for c in doc.get("citations", []):
        lines.append(f"             [{c}]")
    return "\n".join(lines)


def _add_common(sub, with_input=True):
    sub.add_argument("--json", action="store_true", help="machine-readable output")
    sub.add_argument("--out", metavar="FILE", default=None, help="write output to FILE")
    sub.add_argument(
        "--degree-bound",
        type=int,
        default=24,
        help="oracle polynomial degree cap (default 24)",
    )
    if with_input:
        sub.add_argument(
            "--triangle", metavar="A,B,C", help="parameters, e.g. 2,3,7 or 1,inf,inf"
        )
        sub.add_argument("--expr", metavar="EXPR", help="coefficient function R(y)")
        sub.add_argument(
            "--moebius",
            metavar="A,B,C,D",
            help="pre-apply the change of variable z = (Ay+B)/(Cy+D)",
        )


def build_arg_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="triform",
        description=(
            "Decide algebraic solvability of the Riccati equation attached "
            "to a triangular Schwarzian equation, and hence the absence of "
            "order-two differential subvarieties."
        ),
    )
    sub = ap.add_subparsers(dest="command", required=True)

    a = sub.add_parser("analyze", help="full verdict pipeline")
    _add_common(a)
    a.add_argument("--oracle", action="store_true", help="also run the rational oracle")
    a.set_defaults(func=cmd_analyze)

    s = sub.add_parser("sweep", help="decide all hyperbolic integer triples")
    _add_common(s, with_input=False)
    s.add_argument("--bound", type=int, default=100, help="largest finite entry")
    s.add_argument("--jobs", type=int, default=1, help="worker processes")
    s.add_argument("--full", action="store_true", help="include the full table")
    s.set_defaults(func=cmd_sweep)

    c = sub.add_parser("series-check", help="Puiseux leading-term analysis")
    _add_common(c)
    c.add_argument("--lambda0", metavar="P/Q", default=None, help="leading exponent")
    c.add_argument("--a0", metavar="EXPR", default=None, help="leading coefficient")
    c.add_argument(
        "--truncation", type=int, default=-5, help="series cutoff exponent (default -5)"
    )
    c.set_defaults(func=cmd_series_check)

    o = sub.add_parser("oracle", help="rational Riccati solutions")
    _add_common(o)
    o.set_defaults(func=cmd_oracle)

    return ap


def main(argv: Optional[List[str]] = None, out=None) -> int:
    out = out if out is not None else sys.stdout
    ap = build_arg_parser()
    args = ap.parse_args(argv)
    try:
        return args.func(args, out)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (ZeroParameter, NotTriangular) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
