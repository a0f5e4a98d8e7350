"""Command-line front end.

Exit codes: 0 when the query is answered true (or the command succeeded),
1 when it is answered false (invalid entailment, rejected proof,
conservativity mismatch, unsound schema), 2 for usage and parse errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import List, Optional, Sequence

from . import conservativity as cons
from .decide import (DEFAULT_MAX_ROWS, RowLimitError, SignatureError, entails,
                     find_valuation, format_truth_table, truth_table)
from .formula import FormulaSyntaxError, parse, to_text
from .hilbert import (ProofFormatError, calculus, default_pool, parse_proof, soundness_sweep,
                      verify_proof)
from .nmatrix import LOGIC_TAGS, LogicId, build, dump_tables

EXIT_TRUE, EXIT_FALSE, EXIT_USAGE = 0, 1, 2

# query -> (requirement on the formula, word when answered true, word when false)
_QUERIES = {
    "valid": (False, "valid", "not valid"),
    "sat": (True, "satisfiable", "unsatisfiable"),
    "refutable": (False, "refutable", "not refutable"),
    "unsat": (True, "unsatisfiable", "satisfiable"),
}


class UsageError(Exception):
    pass


def _logic(args) -> LogicId:
    try:
        lid = LogicId.parse(args.logic)
        return LogicId(lid.tag, args.unrestricted)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _formula(text: str):
    try:
        return parse(text)
    except FormulaSyntaxError as exc:
        raise UsageError(f"cannot parse {text!r}: {exc}") from None


def _witness_text(label: str, valuation) -> str:
    body = ", ".join(f"{k}={v}" for k, v in valuation.as_text().items())
    return f"{label}: {body}"


def _emit(args, text_lines: Sequence[str], payload: dict) -> None:
    if args.format == "json":
        print(json.dumps(payload))
    else:
        for line in text_lines:
            print(line)


def cmd_decide(args) -> int:
    lid = _logic(args)
    f = _formula(args.formula)
    requirement, yes, no = _QUERIES[args.query]
    witness = find_valuation([f], [requirement], build(lid))
    # a witness answers sat/refutable positively and valid/unsat negatively
    answer = (witness is not None) == (args.query in ("sat", "refutable"))
    label = "model" if requirement else "countermodel"
    lines = [yes if answer else no]
    if witness is not None:
        lines.append(_witness_text(label, witness))
    payload = {"logic": lid.cli_tag, "query": args.query, "formula": to_text(f),
               "answer": answer, "verdict": yes if answer else no,
               "witness": json.loads(witness.to_json(f)) if witness else None}
    _emit(args, lines, payload)
    return EXIT_TRUE if answer else EXIT_FALSE


def cmd_table(args) -> int:
    lid = _logic(args)
    f = _formula(args.formula)
    try:
        rows = truth_table(f, build(lid), max_rows=args.max_rows)
    except RowLimitError as exc:
        raise UsageError(f"{exc}; raise --max-rows to allow it") from None
    if args.format == "json":
        for row in rows:
            print(json.dumps({"assignment": row.valuation.as_text(), "designated": row.designated}))
    else:
        sys.stdout.write(format_truth_table(rows, f))
    return EXIT_TRUE


def _premises(text: Optional[str]) -> List:
    if not text:
        return []
    return [_formula(part) for part in text.split(",") if part.strip()]


def cmd_entail(args) -> int:
    lid = _logic(args)
    premises = _premises(args.premises)
    conclusion = _formula(args.formula)
    verdict = entails(premises, conclusion, build(lid))
    lines = [verdict.status]
    if verdict.witness is not None:
        lines.append(_witness_text("countermodel", verdict.witness))
    payload = {"logic": lid.cli_tag, "premises": [to_text(p) for p in premises],
               "conclusion": to_text(conclusion), "verdict": verdict.status,
               "witness": json.loads(verdict.witness.to_json(conclusion)) if verdict.witness else None}
    _emit(args, lines, payload)
    return EXIT_TRUE if verdict.valid else EXIT_FALSE


def cmd_prove(args) -> int:
    lid = _logic(args)
    try:
        with open(args.proof_file, encoding="utf-8") as fh:
            lines = parse_proof(fh.read())
    except OSError as exc:
        raise UsageError(f"cannot read {args.proof_file}: {exc.strerror}") from None
    except (ProofFormatError, FormulaSyntaxError) as exc:
        raise UsageError(str(exc)) from None
    hyps = _premises(args.premises)
    goal = _formula(args.goal) if args.goal else None
    check = verify_proof(calculus(lid), hyps, lines, goal)
    if check.ok:
        shown = to_text(lines[-1].formula) if lines else "(empty proof)"
        text = [f"proof accepted: {shown}"]
    else:
        where = f"line {check.line}" if check.line else "proof"
        text = [f"proof rejected at {where}: {check.reason}"]
    payload = {"logic": lid.cli_tag, "ok": check.ok, "line": check.line, "reason": check.reason}
    _emit(args, text, payload)
    return EXIT_TRUE if check.ok else EXIT_FALSE


def cmd_dump_tables(args) -> int:
    lid = _logic(args)
    tables = dump_tables(build(lid))
    if args.format == "json":
        for conn, text in tables.items():
            print(json.dumps({"connective": conn, "csv": text}))
    else:
        for i, (conn, text) in enumerate(tables.items()):
            if i:
                print()
            print(f"# {conn}")
            sys.stdout.write(text)
    return EXIT_TRUE


def cmd_conserve(args) -> int:
    lid = _logic(args)
    if not lid.is_combined:
        raise UsageError("conserve needs a combined logic (ivfde-*)")
    modal = next(c for c, m in cons.matched_pairs() if m.tag == lid.tag and c.tag != "IDM4")
    components = [LogicId("IDM4"), modal]
    reports = [cons.conservativity_test(c, lid, samples=args.samples, seed=args.seed)
               for c in components]
    if args.format == "json":
        for r in reports:
            print(json.dumps({"component": r.component.cli_tag, "combined": r.combined.cli_tag,
                              "unrestricted": r.combined.unrestricted,
                              "mismatches": json.loads(r.to_json())}))
    else:
        for r in reports:
            print(r.summary())
            for rec in r.mismatches:
                print("  " + json.dumps(rec.as_dict()))
    return EXIT_TRUE if all(r.ok for r in reports) else EXIT_FALSE


def cmd_sweep(args) -> int:
    lid = _logic(args)
    report = soundness_sweep(calculus(lid), default_pool(lid), logic=lid)
    if args.format == "json":
        print(json.dumps({
            "logic": lid.cli_tag, "unrestricted": lid.unrestricted, "instances": report.instances,
            "per_schema": report.per_schema,
            "failures": [{"schema": f.schema, "instance": to_text(f.instance),
                          "countermodel": json.loads(f.countermodel.to_json(f.instance))}
                         for f in report.failures]}))
    else:
        status = "sound" if report.ok else f"{len(report.failures)} failing instances"
        print(f"{lid}: {len(report.per_schema)} schemas, {report.instances} instances, {status}")
        for f in report.failures:
            print(f"  {f.schema}: {to_text(f.instance)}  {_witness_text('countermodel', f.countermodel)}")
    return EXIT_TRUE if report.ok else EXIT_FALSE


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ivfde", description="Decision procedures, tables and proof checking for "
                                  "Ivlev-style modal expansions of four-valued logic.")
    sub = parser.add_subparsers(dest="verb", required=True)

    def common(p, logic_default="ivfde-t"):
        p.add_argument("--logic", default=logic_default,
                       help="one of: " + ", ".join(LOGIC_TAGS.values()))
        p.add_argument("--unrestricted", action="store_true",
                       help="use the eight-valued domain (combined logics only)")
        p.add_argument("--format", choices=("text", "json"), default="text")

    p = sub.add_parser("decide", help="answer a query about one formula")
    common(p)
    p.add_argument("--query", choices=tuple(_QUERIES), default="valid")
    p.add_argument("formula")
    p.set_defaults(func=cmd_decide)

    p = sub.add_parser("table", help="print every valuation of a formula")
    common(p)
    p.add_argument("--max-rows", type=int, default=DEFAULT_MAX_ROWS)
    p.add_argument("formula")
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("entail", help="check premises |= conclusion")
    common(p)
    p.add_argument("--premises", default="", help="comma-separated formulas")
    p.add_argument("formula", help="the conclusion")
    p.set_defaults(func=cmd_entail)

    p = sub.add_parser("prove", help="check a proof file")
    common(p)
    p.add_argument("--premises", default="", help="comma-separated hypotheses")
    p.add_argument("--goal", default=None, help="formula the last line must be")
    p.add_argument("proof_file")
    p.set_defaults(func=cmd_prove)

    p = sub.add_parser("dump-tables", help="print the connective tables as CSV")
    common(p)
    p.set_defaults(func=cmd_dump_tables)

    p = sub.add_parser("conserve", help="compare a combined logic with its components")
    common(p)
    p.add_argument("--seed", type=int, default=cons.DEFAULT_SEED)
    p.add_argument("--samples", type=int, default=1000)
    p.set_defaults(func=cmd_conserve)

    p = sub.add_parser("sweep", help="check every axiom schema over a small pool")
    common(p)
    p.set_defaults(func=cmd_sweep)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else EXIT_TRUE
    try:
        return args.func(args)
    except (UsageError, SignatureError) as exc:
        print(f"ivfde: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
