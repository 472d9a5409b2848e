"""Intersection numbers on weighted projective spaces and the linear ledger
that turns divisor relations into self-intersections.

Relations are strings ``<lhs> = <rhs>`` over curve symbols (``H``, ``G1``,
``G2``, ...). ``.`` and ``*`` are the intersection product, ``^2`` squares,
numbers are integers or ``p/q``, and a number written in front of a symbol
multiplies it (``12H``). A relation that is linear in the symbols (``12H = G1
+ G2``) is a relation between divisor classes; it is intersected with every
symbol of the problem. A relation of degree two (``H.G1 = 3/5``,
``(G1 + G2)^2 = 6``) is an equation between intersection numbers.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from math import prod
from typing import Iterable, Mapping, Sequence

from .errors import DimensionMismatch, Inconsistent, Underdetermined
from .linalg import rref

Monomial = tuple[str, ...]
Poly = dict[Monomial, Fraction]


def wps_intersection(weights: Sequence[int], degrees: Sequence[int]) -> Fraction:
    """Intersection number of hypersurfaces of the given degrees in P(weights)."""
    if len(degrees) != len(weights) - 1:
        raise DimensionMismatch(f"{len(weights)} weights need {len(weights) - 1} degrees, got {len(degrees)}")
    if any(w <= 0 for w in weights) or any(d <= 0 for d in degrees):
        raise ValueError("weights and degrees must be positive")
    return Fraction(prod(degrees), prod(weights))


def paut_check(dim_linear_system: int, dim_aut: int, rank_exceptional: int) -> bool:
    """``dim L - dim Aut = 18 - rk`` (this equality forces Picard rank two)."""
    if min(dim_linear_system, dim_aut, rank_exceptional) < 0:
        raise ValueError("dimensions must be nonnegative")
    return dim_linear_system - dim_aut == 18 - rank_exceptional


# --- parsing -----------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(\d+(?:/\d+)?)|([A-Za-z][A-Za-z0-9_]*)|(\^|\.|\*|\+|-|\(|\)))")


def _tokenize(text: str) -> list[tuple[str, str]]:
    pos, out = 0, []
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ValueError(f"cannot parse {text[pos:]!r}")
        num, sym, op = m.groups()
        out.append(("num", num) if num else ("sym", sym) if sym else ("op", op))
        pos = m.end()
    return out


def _mul(p: Poly, q: Poly) -> Poly:
    out: Poly = {}
    for m1, c1 in p.items():
        for m2, c2 in q.items():
            m = tuple(sorted(m1 + m2))
            if len(m) > 2:
                raise ValueError("products of more than two curves are meaningless on a surface")
            out[m] = out.get(m, 0) + c1 * c2
    return {m: c for m, c in out.items() if c}


def _add(p: Poly, q: Poly, sign: int = 1) -> Poly:
    out = dict(p)
    for m, c in q.items():
        out[m] = out.get(m, 0) + sign * c
    return {m: c for m, c in out.items() if c}


class _Parser:
    def __init__(self, text: str):
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else (None, None)

    def take(self, value=None):
        tok = self.peek()
        if tok[0] is None or (value is not None and tok[1] != value):
            raise ValueError(f"expected {value!r}, found {tok[1]!r}")
        self.i += 1
        return tok

    def expr(self) -> Poly:
        sign = 1
        if self.peek() in (("op", "-"), ("op", "+")):
            sign = -1 if self.take()[1] == "-" else 1
        p = {m: sign * c for m, c in self.term().items()}
        while self.peek() in (("op", "+"), ("op", "-")):
            s = 1 if self.take()[1] == "+" else -1
            p = _add(p, self.term(), s)
        return p

    def term(self) -> Poly:
        p = self.factor()
        while True:
            kind, val = self.peek()
            if (kind, val) in (("op", "."), ("op", "*")):
                self.take()
            elif not (kind in ("num", "sym") or (kind, val) == ("op", "(")):
                return p
            p = _mul(p, self.factor())

    def factor(self) -> Poly:
        kind, val = self.take()
        if kind == "num":
            p = {(): Fraction(val)}
        elif kind == "sym":
            p = {(val,): Fraction(1)}
        elif val == "(":
            p = self.expr()
            self.take(")")
        else:
            raise ValueError(f"unexpected {val!r}")
        if self.peek() == ("op", "^"):
            self.take()
            exp = int(self.take()[1])
            out: Poly = {(): Fraction(1)}
            for _ in range(exp):
                out = _mul(out, p)
            p = out
        return p


def parse_expression(text: str) -> Poly:
    parser = _Parser(text)
    p = parser.expr()
    if parser.i != len(parser.toks):
        raise ValueError(f"trailing input in {text!r}")
    return p


def parse_relation(text: str) -> Poly:
    """``lhs - rhs`` as a polynomial of degree at most two."""
    if text.count("=") != 1:
        raise ValueError(f"relation needs exactly one '=': {text!r}")
    lhs, rhs = text.split("=")
    return _add(parse_expression(lhs), parse_expression(rhs), -1)


def monomial(text: str) -> Monomial:
    """Canonical key of a single product such as ``"H.G1"`` or ``"G2^2"``."""
    p = parse_expression(text)
    if len(p) != 1:
        raise ValueError(f"{text!r} is not a single product")
    (m, c), = p.items()
    if len(m) != 2 or c != 1:
        raise ValueError(f"{text!r} is not a product of two curves")
    return m


def monomial_name(m: Monomial) -> str:
    return f"{m[0]}^2" if m[0] == m[1] else f"{m[0]}.{m[1]}"


# --- ledger --------------------------------------------------------------------

@dataclass
class LedgerProblem:
    """Unknown intersection numbers, known ones, and relations tying them together."""

    unknowns: list[str]
    relations: list[str] = field(default_factory=list)
    knowns: Mapping[str, Fraction] = field(default_factory=dict)

    def equations(self) -> list[Poly]:
        polys = [parse_relation(r) for r in self.relations]
        polys += [_add({monomial(k): Fraction(1)}, {(): Fraction(v)}, -1) for k, v in self.knowns.items()]
        symbols = sorted({s for p in polys for m in p for s in m} | {s for u in self.unknowns for s in monomial(u)})
        eqs = []
        for p in polys:
            degrees = {len(m) for m in p}
            if not degrees:
                continue
            if degrees == {1}:
                eqs.extend(_mul(p, {(s,): Fraction(1)}) for s in symbols)
            elif 1 in degrees:
                raise ValueError("relation mixes divisor classes and numbers")
            else:
                eqs.append(p)
        return eqs


def evaluate(poly: Poly, values: Mapping[Monomial, Fraction]) -> Fraction:
    return sum((c * (values[m] if m else 1) for m, c in poly.items()), Fraction(0))


def _determined(eqs: list[Poly]) -> dict[Monomial, Fraction]:
    variables = sorted({m for e in eqs for m in e if m})
    index = {m: j for j, m in enumerate(variables)}
    rows = []
    for e in eqs:
        row = [Fraction(0)] * (len(variables) + 1)
        for m, c in e.items():
            if m:
                row[index[m]] += c
            else:
                row[-1] -= c
        rows.append(row)
    if not rows:
        return {}
    r, pivots = rref(rows)
    if len(variables) in pivots:
        raise Inconsistent("relations are inconsistent")
    free = [j for j in range(len(variables)) if j not in pivots]
    solved = {}
    for i, j in enumerate(pivots):
        if all(r[i][f] == 0 for f in free):
            solved[variables[j]] = r[i][-1]
    for e in eqs:
        if all(m in solved for m in e if m):
            assert evaluate(e, solved) == 0
    return solved


def ledger_values(problem: LedgerProblem) -> dict[Monomial, Fraction]:
    """Every intersection number the relations determine, keyed by monomial."""
    return _determined(problem.equations())


def ledger_solve(problem: LedgerProblem) -> dict[str, Fraction]:
    """Values of the requested unknowns; every fully determined relation is re-checked.

    Returns a dict keyed by canonical monomial names (``"G1^2"``, ``"G1.G2"``).
    Raises Inconsistent when the relations contradict each other and
    Underdetermined when some requested unknown is not pinned down.
    """
    solved = ledger_values(problem)
    out = {}
    for name in problem.unknowns:
        m = monomial(name)
        if m not in solved:
            raise Underdetermined(f"{monomial_name(m)} is not determined by the relations")
        out[monomial_name(m)] = solved[m]
    return out


def parse_rational(text) -> Fraction:
    if isinstance(text, (int, Fraction)):
        return Fraction(text)
    return Fraction(str(text).strip())


def rationals(values: Iterable) -> list[Fraction]:
    return [parse_rational(v) for v in values]
