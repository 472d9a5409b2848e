"""Command-line front end.

Exit codes: 0 affirmative, 3 negative verdict, 2 undetermined or inapplicable,
1 error. ``--json`` prints one report object per invocation::

    {command, inputs, result, witness?, checks: [{name, expected, computed, pass, paper_tag}]}

Rationals are rendered as ``"p/q"`` strings; floats never appear.
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Sequence

from . import an, cases, mori, qform
from .errors import K3DreamError

EXIT_OK, EXIT_ERROR, EXIT_UNDETERMINED, EXIT_NEGATIVE = 0, 1, 2, 3


class CliError(Exception):
    """Bad command-line input; reported with exit code 1."""


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on bad usage, which collides with "undetermined"
    def error(self, message):
        raise CliError(message)


def jsonable(x: Any) -> Any:
    if isinstance(x, bool) or x is None or isinstance(x, str):
        return x
    if isinstance(x, Fraction):
        return cases.fmt(x)
    if isinstance(x, int):
        return x
    if isinstance(x, dict):
        return {str(k): jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple, frozenset, set)):
        return [jsonable(v) for v in x]
    if hasattr(x, "value"):
        return x.value
    return str(x)


@dataclass
class Report:
    command: str
    inputs: dict
    result: Any = None
    witness: Any = None
    checks: list[cases.Check] = field(default_factory=list)
    exit_code: int = EXIT_OK
    error: str | None = None
    lines: list[str] = field(default_factory=list)
    show_checks: bool = True

    def check(self, name: str, expected, computed, tag: str = "") -> None:
        self.checks.append(cases.Check.compare(name, expected, computed, tag))

    def to_json(self) -> dict:
        out = {"command": self.command, "inputs": jsonable(self.inputs), "result": jsonable(self.result)}
        if self.witness is not None:
            out["witness"] = jsonable(self.witness)
        out["checks"] = [
            {"name": c.name, "expected": c.expected, "computed": c.computed, "pass": c.passed, "paper_tag": c.paper_tag}
            for c in self.checks
        ]
        if self.error is not None:
            out["error"] = self.error
        return out

    def plain(self) -> str:
        if self.error is not None:
            return f"error: {self.error}"
        lines = list(self.lines) or [f"{self.command}: {cases.fmt(self.result) if not isinstance(self.result, str) else self.result}"]
        if self.witness is not None and not self.lines:
            lines.append(f"witness: {cases.fmt(self.witness)}")
        for c in self.checks if self.show_checks else ():
            mark = "PASS" if c.passed else "FAIL"
            lines.append(f"  [{mark}] {c.name}: expected {c.expected}, computed {c.computed}")
        return "\n".join(lines)


_REQUIRED = {"command", "inputs", "result", "checks"}
_CHECK_KEYS = {"name", "expected", "computed", "pass", "paper_tag"}


def validate_report(obj: dict) -> bool:
    """Schema check plus re-validation of every check's verdict. Raises ValueError."""
    if not isinstance(obj, dict) or not _REQUIRED <= obj.keys():
        raise ValueError(f"report lacks keys {sorted(_REQUIRED - set(obj))}")
    extra = set(obj) - _REQUIRED - {"witness", "error"}
    if extra:
        raise ValueError(f"unexpected report keys {sorted(extra)}")

    def no_floats(x):
        if isinstance(x, float):
            raise ValueError(f"float {x!r} in report")
        if isinstance(x, dict):
            for v in x.values():
                no_floats(v)
        elif isinstance(x, list):
            for v in x:
                no_floats(v)

    no_floats(obj)
    for c in obj["checks"]:
        if set(c) != _CHECK_KEYS:
            raise ValueError(f"malformed check {c!r}")
        if c["pass"] != (c["expected"] == c["computed"]):
            raise ValueError(f"check {c['name']!r} verdict does not match its values")
    return True


# --- parsing helpers -----------------------------------------------------------

def _rational(text: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise CliError(f"not an exact rational: {text!r}") from exc


def _integer(text: str) -> int:
    q = _rational(text)
    if q.denominator != 1:
        raise CliError(f"not an integer: {text!r}")
    return q.numerator


def _int_list(text: str, length: int | None = None) -> list[int]:
    parts = [_integer(p) for p in text.split(",")]
    if length is not None and len(parts) != length:
        raise CliError(f"expected {length} comma-separated integers, got {text!r}")
    return parts


# --- commands --------------------------------------------------------------------

def cmd_mds(args) -> Report:
    g11, g12, g22 = _int_list(args.gram, 3)
    rep = Report("mds", {"gram": [g11, g12, g22]})
    lattice = mori.RankTwoLattice.from_entries(g11, g12, g22)
    verdict = mori.mds_smooth(lattice)
    rep.result = verdict.decision.value
    rep.witness = verdict.witness
    rep.check("d_X", lattice.d, verdict.d)
    if verdict.witness is not None:
        rep.check("witness self-intersection", verdict.self_intersection, lattice.square(verdict.witness))
    rep.exit_code = EXIT_OK if verdict.is_mori_dream else EXIT_NEGATIVE
    rep.lines = [f"{verdict.decision.value} (d_X = {cases.fmt(verdict.d)})", verdict.reason]
    if verdict.witness is not None:
        rep.lines.append(f"witness {verdict.witness} with square {cases.fmt(verdict.self_intersection)}")
    return rep


def cmd_qform(args) -> Report:
    f = qform.QForm(args.a, args.b, args.c)
    inputs = {"form": [f.a, f.b, f.c]}
    sub = args.qsub
    if sub == "disc":
        return Report("qform disc", inputs, f.disc)
    if sub == "cycle":
        cyc = qform.reduced_cycle(f)
        rep = Report("qform cycle", inputs, [list(g) for g in cyc])
        rep.lines = [str(g) for g in cyc]
        return rep
    if sub == "automorph":
        m = qform.fundamental_automorph(f)
        rep = Report("qform automorph", inputs, [list(r) for r in m])
        rep.check("preserves form", [f.a, f.b, f.c], list(qform.transform(f, m)))
        return rep
    if sub == "represent":
        inputs.update(target=args.target, budget=args.budget)
        rep = Report("qform represent", inputs)
        if args.target == -1:
            w = qform.represents_minus_one(f)
            rep.result = [list(w)] if w else []
            rep.exit_code = EXIT_OK if w else EXIT_NEGATIVE
        else:
            sols = qform.represent(f, args.target, args.budget)
            rep.result = [list(s) for s in sols]
            rep.exit_code = EXIT_OK if sols else EXIT_UNDETERMINED
        for s in rep.result:
            rep.check(f"f{tuple(s)}", args.target, f(*s))
        shown = ", ".join(str(tuple(s)) for s in rep.result[:8]) or "none"
        more = len(rep.result) - 8
        rep.lines = [shown + (f", ... ({len(rep.result)} solutions, all verified)" if more > 0 else "")]
        rep.show_checks = len(rep.result) <= 8
        return rep
    if sub == "canonical":
        sol = tuple(_int_list(args.sol, 2)) if args.sol else qform.represents_minus_one(f)
        inputs["sol"] = list(sol) if sol else None
        rep = Report("qform canonical", inputs)
        if sol is None:
            rep.result, rep.exit_code = None, EXIT_NEGATIVE
            rep.lines = ["form does not represent -1"]
            return rep
        g, u = qform.canonicalize_minus2(f, sol)
        rep.result, rep.witness = list(g), [list(r) for r in u]
        rep.check("g(1,0)", -1, g(1, 0))
        rep.lines = [f"{g} via U = {[list(r) for r in u]}"]
        return rep
    raise CliError(f"unknown qform subcommand {sub!r}")


def cmd_an(args) -> Report:
    sub = args.asub
    if sub == "det":
        rep = Report("an det", {"n": args.n}, an.cartan_det(args.n))
        rep.check("n+1", args.n + 1, rep.result)
        return rep
    if sub == "invdiag":
        return Report("an invdiag", {"n": args.n, "i": args.i}, an.inv_diagonal(args.n, args.i))
    if sub == "fracnorm":
        v = an.frac_norm(args.n, args.k)
        rep = Report("an fracnorm", {"n": args.n, "k": args.k}, v.norm, list(v.frac_vector))
        rep.check("closed form", an.closed_form_norm(args.n, args.k), v.norm)
        rep.lines = [cases.fmt(v.norm)]
        return rep
    if sub == "scan":
        rows = an.ambiguity_scan(args.max)
        rep = Report("an scan", {"max": args.max}, [[r.n, r.k, r.k2, r.norm_k, r.norm_k2] for r in rows])
        rep.lines = [f"n={r.n} k={r.k} k'={r.k2}  {cases.fmt(r.norm_k)}  {cases.fmt(r.norm_k2)}" for r in rows]
        rep.lines.append(f"{len(rows)} rows")
        return rep
    if sub == "decide":
        v = an.decide_main_an(args.n, args.curve)
        rep = Report("an decide", {"n": args.n, "curve": args.curve}, v.decision.value)
        if v.obstruction:
            rep.witness = [[r.k, r.k2, r.norm_k, r.norm_k2] for r in v.obstruction]
        rep.exit_code = EXIT_OK if v.decision is an.AnDecision.MORI_DREAM else EXIT_UNDETERMINED
        return rep
    raise CliError(f"unknown an subcommand {sub!r}")


def cmd_case(args) -> Report:
    registry = cases.load_registry()
    if args.all or args.name is None:
        reports = cases.run_all(registry)
        command, inputs = "case --all", {"all": True}
    else:
        reports = [cases.run_case(args.name, registry)]
        command, inputs = "case", {"name": args.name}
    rep = Report(command, inputs)
    for r in reports:
        for c in r.checks:
            rep.checks.append(cases.Check(f"{r.name}: {c.name}", c.expected, c.computed, c.passed, c.paper_tag))
    ok = all(r.passed for r in reports)
    rep.result = {r.name: "pass" if r.passed else "fail" for r in reports}
    rep.exit_code = EXIT_OK if ok else EXIT_ERROR
    total = len(rep.checks)
    failed = sum(not c.passed for c in rep.checks)
    rep.lines = [f"{r.name:12s} {'pass' if r.passed else 'FAIL'}  ({len(r.checks)} checks)  {r.title}" for r in reports]
    rep.lines.append(f"{total - failed}/{total} checks passed")
    if not args.all and args.name is not None:
        rep.lines += [f"  [{'PASS' if c.passed else 'FAIL'}] {c.name}: {c.computed}" for c in reports[0].checks]
    rep.show_checks = False
    return rep


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="k3dream", description="Mori dream tests for rank-two K3 lattices.")
    p.add_argument("--json", action="store_true", help="print a JSON report (accepted anywhere)")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    m = sub.add_parser("mds", help="decide a smooth rank-two lattice g11,g12,g22")
    m.add_argument("gram", help="comma-separated Gram entries, e.g. 4,3,-2")
    m.set_defaults(func=cmd_mds)

    q = sub.add_parser("qform", help="binary quadratic form tools")
    qs = q.add_subparsers(dest="qsub", required=True, parser_class=_Parser)
    for name, text in [
        ("disc", "discriminant b^2 - 4ac"),
        ("cycle", "cycle of reduced forms"),
        ("represent", "solutions of f(x, y) = N"),
        ("automorph", "fundamental automorph"),
        ("canonical", "normal form after representing -1"),
    ]:
        s = qs.add_parser(name, help=text)
        for coef in "abc":
            s.add_argument(coef, type=_integer)
        if name == "represent":
            s.add_argument("--target", type=_integer, required=True)
            s.add_argument("--budget", type=_integer, default=64)
        if name == "canonical":
            s.add_argument("--sol", help="x,y with f(x,y) = -1; searched if omitted")
    q.set_defaults(func=cmd_qform)

    a = sub.add_parser("an", help="A_n chain arithmetic")
    as_ = a.add_subparsers(dest="asub", required=True, parser_class=_Parser)
    s = as_.add_parser("det")
    s.add_argument("n", type=_integer)
    s = as_.add_parser("invdiag")
    s.add_argument("n", type=_integer)
    s.add_argument("i", type=_integer)
    s = as_.add_parser("fracnorm")
    s.add_argument("n", type=_integer)
    s.add_argument("k", type=_integer)
    s = as_.add_parser("scan")
    s.add_argument("--max", type=_integer, default=18)
    s = as_.add_parser("decide")
    s.add_argument("n", type=_integer)
    s.add_argument("--curve", action=argparse.BooleanOptionalAction, default=True,
                   help="an irreducible curve of negative self-intersection exists")
    a.set_defaults(func=cmd_an)

    c = sub.add_parser("case", help="re-verify a registry case")
    c.add_argument("name", nargs="?")
    c.add_argument("--all", action="store_true")
    c.set_defaults(func=cmd_case)

    v = sub.add_parser("verify-paper", help="run every registry case")
    v.set_defaults(func=cmd_case, all=True, name=None)
    return p


def run(argv: Sequence[str] | None = None) -> tuple[Report, bool]:
    """Parse and dispatch; returns the report and whether JSON was requested."""
    argv = list(sys.argv[1:] if argv is None else argv)
    as_json = "--json" in argv
    argv = [a for a in argv if a != "--json"]
    try:
        args = build_parser().parse_args(argv)
        if args.command == "case" and args.name is None and not args.all:
            raise CliError("case needs a NAME or --all")
        return args.func(args), as_json
    except (CliError, K3DreamError, ValueError, ZeroDivisionError) as exc:
        rep = Report(argv[0] if argv else "", {"argv": argv})
        rep.error = f"{type(exc).__name__}: {exc}"
        rep.exit_code = EXIT_ERROR
        return rep, as_json


def main(argv: Sequence[str] | None = None) -> int:
    rep, as_json = run(argv)
    if as_json:
        print(json.dumps(rep.to_json(), indent=2))
    else:
        print(rep.plain(), file=sys.stderr if rep.error else sys.stdout)
    return rep.exit_code


if __name__ == "__main__":
    sys.exit(main())
