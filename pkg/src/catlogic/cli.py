"""Command-line entry point.

Exit codes: 0 success/valid/accepted, 1 countermodel/rejected/violation,
2 usage errors (bad flags, unparsable input, budget exceeded).
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Any, TextIO

from .errors import CatLogicError
from .laws import Violation
from .logic import check_proof, check_validity, format_formula, parse_formula, parse_proof
from .logic.semantics import DEFAULT_BUDGET
from .monads import (
    BUILTIN_MONADS,
    FinFn,
    builtin_morphisms,
    check_monad_laws,
    check_monad_morphism,
    enumerate_algebras,
    finset,
    get_monad,
    lift_algebra,
    show,
)
from .omega_sets import build_omega_self, check_all, load_instance
from .order import enumerate_downsets, load_poset
from .presheaf import build_omega, by_largest_member, count_truth_values

JSON_VERSION = 1


class UsageError(Exception):
    pass


class _Output:
    def __init__(self, out: TextIO, as_json: bool):
        self.out = out
        self.as_json = as_json

    def line(self, text: str = "") -> None:
        if not self.as_json:
            print(text, file=self.out)

    def finish(self, ok: bool, result: Any, witness: Any = None) -> int:
        if self.as_json:
            doc = {"v": JSON_VERSION, "ok": ok, "result": result, "witness": witness}
            print(json.dumps(doc, sort_keys=True), file=self.out)
        return 0 if ok else 1


def _jsonable(x: Any) -> Any:
    if isinstance(x, (str, int, float, bool)) or x is None:
        return x
    if isinstance(x, (tuple, list)):
        return [_jsonable(y) for y in x]
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    return show(x)


def _violation_text(v: Violation) -> str:
    return f"{v.law} at {json.dumps(_jsonable(v.witness))}"


# -- topos -------------------------------------------------------------------------


def _cmd_cribles(args, out: _Output) -> int:
    p = load_poset(args.poset)
    omega = build_omega(p)
    if args.at is not None:
        a = p.index(args.at)
    else:
        a = p.top()
        if a is None:
            raise UsageError("poset has no top element; pass --at")
    cribles = list(omega.at[a])
    if args.order == "largest":
        cribles = by_largest_member(p, cribles)
    rendered = [omega.format_crible(c) for c in cribles]
    for r in rendered:
        out.line(r)
    return out.finish(True, rendered)


def _cmd_truth_values(args, out: _Output) -> int:
    n = count_truth_values(load_poset(args.poset))
    out.line(str(n))
    return out.finish(True, n)


# -- logic ---------------------------------------------------------------------------


def _cmd_valid(args, out: _Output) -> int:
    f = parse_formula(args.formula)
    h = enumerate_downsets(load_poset(args.algebra))
    cm = check_validity(f, h, budget=args.budget)
    if cm is None:
        out.line(f"valid: {format_formula(f)}")
        return out.finish(True, "valid")
    assignment = {f"p{k}": h.label(v) for k, v in sorted(cm.assignment.items())}
    out.line(f"countermodel: {cm.describe(h)}")
    return out.finish(False, "countermodel",
                      {"assignment": assignment, "value": h.label(cm.value)})


def _cmd_proof(args, out: _Output) -> int:
    proof = parse_proof(Path(args.file).read_text(encoding="utf-8"))
    rej = check_proof(proof)
    if rej is None:
        last = format_formula(proof.lines[-1][0]) if proof.lines else ""
        out.line(f"accepted ({proof.system.value}): {last}")
        return out.finish(True, "accepted")
    out.line(f"rejected ({proof.system.value}): {rej}")
    return out.finish(False, "rejected", {"line": rej.line, "reason": rej.reason.value})


def _cmd_parse(args, out: _Output) -> int:
    text = format_formula(parse_formula(args.formula))
    out.line(text)
    return out.finish(True, text)


# -- omega -----------------------------------------------------------------------------


def _cmd_omega_check(args, out: _Output) -> int:
    h = enumerate_downsets(load_poset(args.algebra))
    inst = load_instance(h, args.instance) if args.instance else build_omega_self(h)
    results = check_all(inst)
    first = None
    for name, bad in results:
        if bad is None:
            out.line(f"{name}: ok")
        else:
            out.line(f"{name}: FAIL {_violation_text(bad)}")
            first = first or {"check": name, "law": bad.law, "witness": _jsonable(bad.witness)}
    summary = [{"check": name, "ok": bad is None} for name, bad in results]
    return out.finish(first is None, summary, first)


# -- monad -----------------------------------------------------------------------------


def _table_lines(fn: FinFn) -> list[str]:
    return [f"{show(x)} -> {show(fn(x))}" for x in fn.dom]


def _cmd_monad_check(args, out: _Output) -> int:
    t = get_monad(args.monad)
    if not 0 <= args.size <= t.size_bound:
        raise UsageError(f"--size for {t.name} must be in 0..{t.size_bound}")
    bad = check_monad_laws(t, args.size)
    a = finset(args.size)
    unit, mult = _table_lines(t.unit(a)), _table_lines(t.mult(a))
    out.line(f"monad {t.name}, carriers up to {args.size}: "
             + ("laws ok" if bad is None else f"FAIL {_violation_text(bad)}"))
    out.line("unit:")
    for s in unit:
        out.line(f"  {s}")
    out.line("mult:")
    for s in mult:
        out.line(f"  {s}")
    witness = None if bad is None else {"law": bad.law, "witness": _jsonable(bad.witness)}
    return out.finish(bad is None, {"monad": t.name, "size": args.size,
                                    "unit": unit, "mult": mult}, witness)


def _cmd_monad_lift(args, out: _Output) -> int:
    key = (args.source, args.target)
    morphisms = builtin_morphisms()
    if key not in morphisms:
        known = ", ".join(f"{s}->{t}" for s, t in morphisms)
        raise UsageError(f"no builtin morphism {args.source}->{args.target}; known: {known}")
    m = morphisms[key]
    bound = min(m.source.size_bound, m.target.size_bound)
    if not 0 <= args.carrier <= bound:
        raise UsageError(f"--carrier must be in 0..{bound}")
    bad = check_monad_morphism(m, max_size=args.carrier)
    out.line(f"morphism {m.name} ({m.source.name} to {m.target.name}), carriers up to "
             f"{args.carrier}: " + ("laws ok" if bad is None else f"FAIL {_violation_text(bad)}"))
    if bad is not None:
        return out.finish(False, None, {"law": bad.law, "witness": _jsonable(bad.witness)})
    lifted_all = []
    for k, alg in enumerate(enumerate_algebras(m.source, finset(args.carrier),
                                               budget=args.budget)):
        lifted = lift_algebra(m, alg)
        src, dst = _table_lines(alg.table), _table_lines(lifted.table)
        out.line(f"algebra {k}:")
        for s in src:
            out.line(f"  {s}")
        out.line(f"lifted {k}:")
        for s in dst:
            out.line(f"  {s}")
        lifted_all.append({"algebra": src, "lifted": dst})
    return out.finish(True, lifted_all)


# -- parser ----------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS,
                        help="emit one JSON document instead of text")
    common.add_argument("--budget", type=int, default=argparse.SUPPRESS,
                        help=f"search cap for exhaustive enumerations (default {DEFAULT_BUDGET})")

    parser = argparse.ArgumentParser(prog="catlogic", parents=[common],
                                     description="Finite categorical logic workbench.")
    sub = parser.add_subparsers(dest="command", required=True)

    topos = sub.add_parser("topos", help="subobject classifier of presheaves on a poset")
    tsub = topos.add_subparsers(dest="action", required=True)
    p = tsub.add_parser("cribles", parents=[common], help="list the cribles on an element")
    p.add_argument("--poset", required=True, help="file, powerset:N, chain:N, diamond or V")
    p.add_argument("--at", help="element label (default: the top element)")
    p.add_argument("--order", choices=("numeric", "largest"), default="numeric",
                   help="numeric bitset order, or by largest member")
    p.set_defaults(func=_cmd_cribles)
    p = tsub.add_parser("truth-values", parents=[common], help="count global truth values")
    p.add_argument("--poset", required=True)
    p.set_defaults(func=_cmd_truth_values)

    logic = sub.add_parser("logic", help="propositional validity and proof checking")
    lsub = logic.add_subparsers(dest="action", required=True)
    p = lsub.add_parser("valid", parents=[common], help="decide validity in a downset algebra")
    p.add_argument("--formula", required=True)
    p.add_argument("--algebra", required=True, help="poset whose downsets form the algebra")
    p.set_defaults(func=_cmd_valid)
    p = lsub.add_parser("proof", parents=[common], help="check a Hilbert-style proof file")
    p.add_argument("file")
    p.set_defaults(func=_cmd_proof)
    p = lsub.add_parser("parse", parents=[common], help="print a formula in canonical form")
    p.add_argument("--formula", required=True)
    p.set_defaults(func=_cmd_parse)

    omega = sub.add_parser("omega", help="Omega-valued sets")
    osub = omega.add_subparsers(dest="action", required=True)
    p = osub.add_parser("check", parents=[common], help="validate an instance and its properties")
    p.add_argument("--algebra", required=True, help="poset whose downsets form the algebra")
    p.add_argument("--instance", help="JSON table file (default: the algebra acting on itself)")
    p.set_defaults(func=_cmd_omega_check)

    monad = sub.add_parser("monad", help="finite monads and monad morphisms")
    msub = monad.add_subparsers(dest="action", required=True)
    p = msub.add_parser("check", parents=[common], help="check the monad laws")
    p.add_argument("--monad", required=True, choices=sorted(BUILTIN_MONADS))
    p.add_argument("--size", type=int, required=True)
    p.set_defaults(func=_cmd_monad_check)
    p = msub.add_parser("lift", parents=[common], help="lift algebras along a monad morphism")
    p.add_argument("--from", dest="source", required=True, choices=sorted(BUILTIN_MONADS))
    p.add_argument("--to", dest="target", required=True, choices=sorted(BUILTIN_MONADS))
    p.add_argument("--carrier", type=int, required=True)
    p.set_defaults(func=_cmd_monad_lift)
    return parser


def run(argv: list[str] | None = None, out: TextIO | None = None) -> int:
    out = sys.stdout if out is None else out
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code in (0, None) else 2
    args.json = getattr(args, "json", False)
    args.budget = getattr(args, "budget", DEFAULT_BUDGET)
    try:
        return args.func(args, _Output(out, args.json))
    except (UsageError, CatLogicError, OSError, ValueError, KeyError) as exc:
        print(f"catlogic: error: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
